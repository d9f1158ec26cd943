"""Independent reference solutions for the relative-angle problem.

States with zero total angular momentum depend only on w = phi1 - phi2 and
satisfy the periodic one-dimensional equation

    -(1 / (2 sigma^2)) chi''(w) + V(w) chi(w) = E chi(w),
    1 / sigma^2 = 1 / r1^2 + 1 / r2^2,

which this module discretizes in the Fourier basis e^{i p w}, p = -M .. M.
That discretization coincides, entry for entry, with the zero-momentum
block of the flattened two-ring matrix, so it serves as a brute-force
oracle for the full solver.

For the harmonic interaction the same equation in the half angle v = w / 2
is Mathieu's equation y'' + (a - 2 q cos 2v) y = 0 with

    q = -4 r1 r2 omega^2 sigma^2,
    a = 8 sigma^2 (E - (omega^2 / 2)(r1^2 + r2^2)),

and 2 pi-periodicity in w admits exactly the pi-periodic-in-v solutions:
cosine-elliptic branches with characteristic values a_0, a_2, a_4, ... and
sine-elliptic branches with b_2, b_4, ... Characteristic values are
computed as eigenvalues of the symmetric truncated three-term recurrence
matrices

    even:  diag (0, 4, 16, ..., (2m)^2),  off-diagonal (sqrt(2) q, q, q, ...)
    odd:   diag (4, 16, ..., (2m)^2),     off-diagonal (q, q, ...)

where the sqrt(2) entry restores symmetry after rescaling the constant
cosine mode. Even-order characteristic values are even functions of q; the
eigenvectors are not, so recurrence matrices always carry the signed q.

The quasi-exactly solvable Coulomb configuration, whose ground energy is
the rational number 28/507 at radii fixed by closed-form radicals, is
exposed as a ready-made benchmark case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np

from .eigen import eigensolve
from .hamiltonian import QuadratureSpec, kinetic_element, potential_fourier
from .model import Interaction, ModePair, RingGeometry

Branch = Literal["even", "odd"]

_CHAR_TOL = 1e-12
_MAX_TRUNCATION = 4096


@dataclass(frozen=True)
class MathieuQuery:
    """A characteristic-value request: branch, even order and parameter q.

    ``truncation`` is the starting Fourier mode count of the recurrence
    matrix; it is doubled until the characteristic value settles.
    """

    q: float
    branch: Branch
    order: int
    truncation: int = 64

    def __post_init__(self) -> None:
        if self.branch not in ("even", "odd"):
            raise ValueError(f"branch must be 'even' or 'odd', got {self.branch!r}")
        if self.order < 0 or self.order % 2 != 0:
            raise ValueError(f"order must be a nonnegative even integer, got {self.order}")
        if self.branch == "odd" and self.order == 0:
            raise ValueError("the odd branch starts at order 2; order 0 does not exist")
        if self.truncation < self.order // 2 + 20:
            raise ValueError(f"truncation {self.truncation} too small for order {self.order}")


@dataclass(frozen=True)
class CaseSpec:
    """A named geometry/interaction pair, optionally with a known energy."""

    geometry: RingGeometry
    interaction: Interaction
    exact_energy: float | None
    label: str


@dataclass(frozen=True)
class Profile:
    """Samples of a relative-angle wave function on an increasing grid."""

    omega: np.ndarray
    values: np.ndarray
    label: str

    def __post_init__(self) -> None:
        if self.omega.ndim != 1 or self.omega.shape != self.values.shape:
            raise ValueError("omega and values must be 1-d arrays of equal length")
        if np.any(np.diff(self.omega) <= 0):
            raise ValueError("omega grid must be strictly increasing")
        if not np.all(np.isfinite(self.values)):
            raise ValueError("profile values must be finite")
        self.omega.setflags(write=False)
        self.values.setflags(write=False)


def _recurrence_matrix(q: float, branch: Branch, size: int) -> np.ndarray:
    if branch == "even":
        diag = (2.0 * np.arange(size)) ** 2
        off = np.full(size - 1, q)
        off[0] = math.sqrt(2.0) * q
    else:
        diag = (2.0 * np.arange(1, size + 1)) ** 2
        off = np.full(size - 1, q)
    return np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)


def _charpair(q: float, branch: Branch, order: int, size: int) -> tuple[float, np.ndarray]:
    index = order // 2 if branch == "even" else order // 2 - 1
    pairs = eigensolve(_recurrence_matrix(q, branch, size), index + 1)
    return float(pairs.values[index]), pairs.vectors[:, index]


def _converged_system(query: MathieuQuery) -> tuple[float, np.ndarray]:
    size = query.truncation
    value, _ = _charpair(query.q, query.branch, query.order, size)
    while size <= _MAX_TRUNCATION:
        size *= 2
        refined, vector = _charpair(query.q, query.branch, query.order, size)
        if abs(refined - value) < _CHAR_TOL * max(1.0, abs(refined)):
            return refined, vector
        value = refined
    raise RuntimeError(
        f"characteristic value did not settle below {_CHAR_TOL:g} at truncation {size}"
    )


def mathieu_char(query: MathieuQuery) -> float:
    """Characteristic value a_order(q) (even branch) or b_order(q) (odd)."""
    value, _ = _converged_system(query)
    return value


def mathieu_profile(query: MathieuQuery, grid: np.ndarray) -> Profile:
    """Evaluate the periodic Mathieu eigenfunction on ``grid`` (in w).

    The function is reconstructed from the recurrence eigenvector as a
    cosine series sum_m c_m cos(m w) (even branch, with the constant mode
    rescaled back by 1/sqrt(2)) or a sine series sum_m c_m sin(m w) (odd
    branch, vanishing at w = 0 and w = pi). The result is normalized so
    the largest-magnitude sample equals +1.
    """
    grid = np.asarray(grid, dtype=float)
    _, vector = _converged_system(query)
    if query.branch == "even":
        coeffs = vector.copy()
        coeffs[0] /= math.sqrt(2.0)
        modes = np.arange(len(coeffs))
        values = np.cos(np.outer(grid, modes)) @ coeffs
    else:
        modes = np.arange(1, len(vector) + 1)
        values = np.sin(np.outer(grid, modes)) @ vector
    peak = values[np.argmax(np.abs(values))]
    if peak == 0.0:
        raise RuntimeError("profile vanished on the whole grid")
    label = f"mathieu-{query.branch}-{query.order}"
    return Profile(omega=grid.copy(), values=values / peak, label=label)


def harmonic_energy(
    geometry: RingGeometry,
    omega_strength: float,
    branch: Branch,
    level_index: int = 0,
) -> float:
    """Quantized harmonic energy (omega^2/2)(r1^2 + r2^2) + lambda / (8 sigma^2).

    ``lambda`` is the level_index-th characteristic value of the requested
    branch at q = -4 r1 r2 omega^2 sigma^2; the odd branch starts at b_2.
    """
    if omega_strength <= 0.0:
        raise ValueError("omega_strength must be positive")
    if level_index < 0:
        raise ValueError("level_index must be nonnegative")
    sigma_sq = geometry.sigma_sq
    q = -4.0 * geometry.r1 * geometry.r2 * omega_strength**2 * sigma_sq
    order = 2 * level_index if branch == "even" else 2 * (level_index + 1)
    lam = mathieu_char(MathieuQuery(q=q, branch=branch, order=order))
    constant = 0.5 * omega_strength**2 * (geometry.r1**2 + geometry.r2**2)
    return constant + lam / (8.0 * sigma_sq)


def relative_matrix(
    geometry: RingGeometry,
    interaction: Interaction,
    quad: QuadratureSpec = QuadratureSpec(),
    m_modes: int = 64,
) -> np.ndarray:
    """Relative-angle Hamiltonian in the e^{i p w} basis, p = -M .. M.

    Identical, entry for entry, to the zero-momentum block of the flattened
    two-ring matrix assembled with n_trunc = 2 M.
    """
    if m_modes < 8:
        raise ValueError(f"m_modes must be at least 8, got {m_modes}")
    v = potential_fourier(geometry, interaction, 2 * m_modes, quad)
    ps = np.arange(-m_modes, m_modes + 1)
    h = v[np.abs(ps[:, None] - ps[None, :])].astype(float)
    h[np.diag_indices_from(h)] += [kinetic_element(geometry, ModePair(p, -p)) for p in ps]
    return h


def _parity_blocks(
    geometry: RingGeometry,
    interaction: Interaction,
    quad: QuadratureSpec,
    m_modes: int,
) -> tuple[np.ndarray, np.ndarray]:
    """Even (cosine) and odd (sine) blocks of the relative Hamiltonian.

    The potential is even in w, so parity is conserved and the blocks carry
    V_{|p-p'|} +/- V_{p+p'} with the constant mode rescaled by sqrt(2) in
    the even block.
    """
    v = potential_fourier(geometry, interaction, 2 * m_modes, quad)
    kin = np.array([kinetic_element(geometry, ModePair(p, -p)) for p in range(m_modes + 1)])
    ps = np.arange(1, m_modes + 1)
    even = np.empty((m_modes + 1, m_modes + 1))
    even[0, 0] = kin[0] + v[0]
    even[0, 1:] = even[1:, 0] = math.sqrt(2.0) * v[ps]
    even[1:, 1:] = v[np.abs(ps[:, None] - ps[None, :])] + v[ps[:, None] + ps[None, :]]
    even[1:, 1:][np.diag_indices(m_modes)] += kin[1:]
    odd = v[np.abs(ps[:, None] - ps[None, :])] - v[ps[:, None] + ps[None, :]]
    odd[np.diag_indices(m_modes)] += kin[1:]
    return even, odd


def relative_spectrum(
    geometry: RingGeometry,
    interaction: Interaction,
    quad: QuadratureSpec = QuadratureSpec(),
    m_modes: int = 64,
) -> list[tuple[float, str]]:
    """Ascending eigenvalues of the zero-momentum relative problem.

    Each energy is labeled "even" (cosine-series eigenvector) or "odd"
    (sine-series); the union of the two parity blocks is the spectrum of
    :func:`relative_matrix`.
    """
    if m_modes < 8:
        raise ValueError(f"m_modes must be at least 8, got {m_modes}")
    even, odd = _parity_blocks(geometry, interaction, quad, m_modes)
    levels = [(float(e), "even") for e in np.linalg.eigvalsh(even)]
    levels += [(float(e), "odd") for e in np.linalg.eigvalsh(odd)]
    return sorted(levels)


def sector_spectrum(
    geometry: RingGeometry,
    interaction: Interaction,
    quad: QuadratureSpec = QuadratureSpec(),
    m_modes: int = 64,
    total_momentum: int = 0,
) -> np.ndarray:
    """Ascending spectrum of one total-momentum sector at large mode count.

    Generalizes the relative problem to total momentum s: the kinetic term
    becomes p^2/(2 r1^2) + (s - p)^2/(2 r2^2) while the potential part is
    unchanged. Used as an oracle for excited levels outside the s = 0
    sector.
    """
    if m_modes < 8:
        raise ValueError(f"m_modes must be at least 8, got {m_modes}")
    v = potential_fourier(geometry, interaction, 2 * m_modes, quad)
    ps = np.arange(-m_modes, m_modes + 1)
    h = v[np.abs(ps[:, None] - ps[None, :])].astype(float)
    h[np.diag_indices_from(h)] += [
        kinetic_element(geometry, ModePair(p, total_momentum - p)) for p in ps
    ]
    return np.linalg.eigvalsh(h)


def quasi_exact_coulomb_case() -> CaseSpec:
    """The quasi-exactly solvable Coulomb configuration.

    Radii are evaluated from their closed forms
    r1 = (13/7) sqrt(3 (13 - sqrt(78))), r2 = (13/7) sqrt(3 (13 + sqrt(78)))
    and the exact ground energy is 28/507.
    """
    root = math.sqrt(78.0)
    r1 = (13.0 / 7.0) * math.sqrt(3.0 * (13.0 - root))
    r2 = (13.0 / 7.0) * math.sqrt(3.0 * (13.0 + root))
    return CaseSpec(
        geometry=RingGeometry(r1, r2),
        interaction=Interaction.coulomb(),
        exact_energy=28.0 / 507.0,
        label="coulomb-quasi-exact",
    )


def harmonic_benchmark_case() -> CaseSpec:
    """Unit harmonic benchmark: r1 = 1, r2 = 2, omega = 1."""
    return CaseSpec(
        geometry=RingGeometry(1.0, 2.0),
        interaction=Interaction.harmonic(1.0),
        exact_energy=None,
        label="harmonic-unit",
    )
