"""Matrix elements and assembly of the flattened two-ring Hamiltonian.

In the product plane-wave basis the kinetic part is diagonal,

    <kl| T |mn> = (m^2 / (2 r1^2) + n^2 / (2 r2^2)) delta_km delta_ln,

and any interaction V(phi1 - phi2) contributes only through its cosine
Fourier coefficients

    V_p = (1 / 2 pi) * integral_0^{2 pi} cos(p w) V(w) dw,

because integrating the slow angle out enforces total angular momentum
conservation: <kl| V |mn> = V_{m-k} when (m - k) + (n - l) = 0 and is zero
otherwise. Both supported potentials are even in w, so every V_p is real
and the assembled matrix is real symmetric.

Coulomb coefficients are evaluated with the periodic trapezoid rule, which
converges geometrically for the smooth periodic integrand 1/d as long as
r1 < r2, with the node count doubled until two refinements agree. Harmonic
coefficients are closed-form: V_0 = (omega^2 / 2)(r1^2 + r2^2) and
V_1 = -(omega^2 / 2) r1 r2, all higher ones vanish.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import IO, Iterable

import numpy as np

from .model import (
    COULOMB,
    HARMONIC,
    BasisSpec,
    Interaction,
    ModePair,
    RingGeometry,
    distance,
    index_of,
)


class SingularIntegrandError(ValueError):
    """Raised when the Coulomb integrand is singular (r1 == r2)."""


class QuadratureConvergenceError(RuntimeError):
    """Raised when node doubling fails to reach the requested tolerance."""

    def __init__(self, message: str, achieved: float, estimate: np.ndarray):
        super().__init__(message)
        self.achieved = achieved
        self.estimate = estimate


@dataclass(frozen=True)
class QuadratureSpec:
    """Periodic-trapezoid settings: start at ``points`` nodes, double until
    successive estimates differ by at most ``tol``, give up beyond
    ``max_points``."""

    points: int = 256
    tol: float = 1e-12
    max_points: int = 1 << 20

    def __post_init__(self) -> None:
        if self.points < 4 or self.points % 2 != 0:
            raise ValueError(f"points must be even and >= 4, got {self.points}")
        if not self.tol > 0.0:
            raise ValueError("tolerance must be positive")
        if self.max_points < 2 * self.points:
            raise ValueError("max_points must allow at least one refinement")


def coulomb_fourier_fixed(geometry: RingGeometry, p: int, points: int) -> float:
    """Trapezoid estimate of V_p for 1/d at a fixed node count, no refinement."""
    if geometry.r1 == geometry.r2:
        raise SingularIntegrandError(
            f"coulomb integrand 1/d is singular for equal radii r1 = r2 = {geometry.r1}"
        )
    w = 2.0 * np.pi * np.arange(points) / points
    return float(np.mean(np.cos(p * w) / distance(geometry, w)))


def _coulomb_vector(geometry: RingGeometry, p_max: int, points: int) -> np.ndarray:
    w = 2.0 * np.pi * np.arange(points) / points
    f = 1.0 / distance(geometry, w)
    ps = np.arange(p_max + 1)
    return np.cos(np.outer(ps, w)) @ f / points


@lru_cache(maxsize=None)
def _coulomb_table(geometry: RingGeometry, p_max: int, quad: QuadratureSpec) -> np.ndarray:
    """Converged V_0..V_{p_max} for 1/d; cached so assembly reuses one table."""
    if geometry.r1 == geometry.r2:
        raise SingularIntegrandError(
            f"coulomb integrand 1/d is singular for equal radii r1 = r2 = {geometry.r1}"
        )
    points = quad.points
    previous = _coulomb_vector(geometry, p_max, points)
    while 2 * points <= quad.max_points:
        points *= 2
        current = _coulomb_vector(geometry, p_max, points)
        achieved = float(np.max(np.abs(current - previous)))
        if achieved <= quad.tol:
            current.setflags(write=False)
            return current
        previous = current
    raise QuadratureConvergenceError(
        f"coulomb quadrature stalled at {achieved:.3e} (> {quad.tol:.1e}) "
        f"with {points} nodes",
        achieved=achieved,
        estimate=previous,
    )


def coulomb_fourier(geometry: RingGeometry, p: int, quad: QuadratureSpec = QuadratureSpec()) -> float:
    """Converged Coulomb coefficient V_p; even in p, positive, decreasing in |p|."""
    return float(_coulomb_table(geometry, abs(p), quad)[abs(p)])


def potential_fourier(
    geometry: RingGeometry,
    interaction: Interaction,
    p_max: int,
    quad: QuadratureSpec = QuadratureSpec(),
) -> np.ndarray:
    """Coefficients V_0..V_{p_max} of the interaction potential.

    Single source for both the two-ring assembly and the one-dimensional
    relative-angle solvers.
    """
    if interaction.kind == COULOMB:
        return _coulomb_table(geometry, p_max, quad)
    out = np.zeros(p_max + 1)
    w2 = interaction.omega * interaction.omega
    out[0] = 0.5 * w2 * (geometry.r1**2 + geometry.r2**2)
    if p_max >= 1:
        out[1] = -0.5 * w2 * geometry.r1 * geometry.r2
    out.setflags(write=False)
    return out


def kinetic_element(geometry: RingGeometry, mode: ModePair) -> float:
    """Diagonal kinetic energy m^2/(2 r1^2) + n^2/(2 r2^2)."""
    return mode.m**2 / (2.0 * geometry.r1**2) + mode.n**2 / (2.0 * geometry.r2**2)


def interaction_element(
    interaction: Interaction,
    geometry: RingGeometry,
    bra: ModePair,
    ket: ModePair,
    quad: QuadratureSpec = QuadratureSpec(),
) -> float:
    """<bra| V |ket>; zero unless total angular momentum is conserved."""
    p = ket.m - bra.m
    if p + (ket.n - bra.n) != 0:
        return 0.0
    if interaction.kind == COULOMB:
        return coulomb_fourier(geometry, p, quad)
    w2 = interaction.omega * interaction.omega
    if p == 0:
        return 0.5 * w2 * (geometry.r1**2 + geometry.r2**2)
    if abs(p) == 1:
        return -0.5 * w2 * geometry.r1 * geometry.r2
    return 0.0


@dataclass(frozen=True)
class HermitianMatrix:
    """Dense real-symmetric flattened Hamiltonian over a basis."""

    entries: np.ndarray
    basis: BasisSpec

    def __post_init__(self) -> None:
        e = self.entries
        if e.ndim != 2 or e.shape[0] != e.shape[1] or e.shape[0] != self.basis.dim:
            raise ValueError(f"expected a {self.basis.dim}x{self.basis.dim} matrix, got {e.shape}")
        if not np.array_equal(e, e.T):
            raise ValueError("matrix entries are not exactly symmetric")
        if not np.all(np.isfinite(e)):
            raise ValueError("matrix entries must be finite")
        e.setflags(write=False)

    @property
    def dim(self) -> int:
        return self.basis.dim


def assemble(
    basis: BasisSpec,
    geometry: RingGeometry,
    interaction: Interaction,
    quad: QuadratureSpec = QuadratureSpec(),
) -> HermitianMatrix:
    """Assemble the full (N+1)^2 x (N+1)^2 symmetric matrix.

    Rows and columns follow the flat index map; every off-diagonal pair is
    written with the same V_|p| lookup, so symmetry is exact. For the
    harmonic interaction the constant (omega^2/2)(r1^2 + r2^2) stays on the
    diagonal and eigenvalues are physical energies with no offset.
    """
    n = basis.n_trunc
    v = potential_fourier(geometry, interaction, n, quad)
    a = np.zeros((basis.dim, basis.dim))
    for mode in basis.modes():
        i = index_of(mode, basis) - 1
        a[i, i] = kinetic_element(geometry, mode) + v[0]
        for p in range(-n, n + 1):
            if p == 0:
                continue
            other = ModePair(mode.m - p, mode.n + p)
            if basis.contains(other):
                a[i, index_of(other, basis) - 1] = v[abs(p)]
    return HermitianMatrix(a, basis)


def momentum_blocks(basis: BasisSpec) -> dict[int, tuple[int, ...]]:
    """Partition 1-based flat indices by conserved total momentum s = m + n.

    Returns 2N+1 disjoint groups, s = -N .. N; the s = 0 group has N+1
    members. Both interactions couple only within a group.
    """
    groups: dict[int, list[int]] = {s: [] for s in range(-basis.n_trunc, basis.n_trunc + 1)}
    for mode in basis.modes():
        groups[mode.m + mode.n].append(index_of(mode, basis))
    return {s: tuple(ix) for s, ix in groups.items()}


def sector_block(
    basis: BasisSpec,
    geometry: RingGeometry,
    interaction: Interaction,
    quad: QuadratureSpec = QuadratureSpec(),
    total_momentum: int = 0,
) -> tuple[list[ModePair], np.ndarray]:
    """Dense block of one total-momentum sector, a fast path equivalent to
    slicing the full assembly with :func:`momentum_blocks`."""
    s = total_momentum
    if not -basis.n_trunc <= s <= basis.n_trunc:
        raise ValueError(f"sector {s} outside -{basis.n_trunc}..{basis.n_trunc}")
    half = basis.half
    modes = [ModePair(m, s - m) for m in range(max(-half, s - half), min(half, s + half) + 1)]
    v = potential_fourier(geometry, interaction, basis.n_trunc, quad)
    block = np.empty((len(modes), len(modes)))
    for i, mi in enumerate(modes):
        for j, mj in enumerate(modes):
            block[i, j] = v[abs(mi.m - mj.m)]
        block[i, i] += kinetic_element(geometry, mi)
    return modes, block


def dump_matrix(matrix: HermitianMatrix, destination: str | IO[str]) -> None:
    """Write one whitespace-separated row per line, 17 significant digits."""
    rows: Iterable[str] = (" ".join(f"{x:.17g}" for x in row) for row in matrix.entries)
    if isinstance(destination, str):
        with open(destination, "w") as handle:
            handle.write("\n".join(rows) + "\n")
    else:
        destination.write("\n".join(rows) + "\n")
