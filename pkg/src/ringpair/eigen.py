"""Real-symmetric eigensolver and extraction of coefficient tables.

The heavy lifting is delegated to LAPACK through ``numpy.linalg.eigh``;
this wrapper enforces the contracts the rest of the package relies on:
symmetric input, ascending eigenvalues, orthonormal vectors with a
deterministic sign, and a residual bound checked after every solve.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .hamiltonian import HermitianMatrix, QuadratureSpec, assemble, sector_block
from .model import BasisSpec, Interaction, ModePair, RingGeometry, mode_of

_SYMMETRY_RTOL = 1e-12
_RESIDUAL_RTOL = 1e-9
_ORTHO_TOL = 1e-10


@dataclass(frozen=True)
class EigenPairs:
    """Lowest eigenvalues (ascending) with orthonormal column eigenvectors."""

    values: np.ndarray
    vectors: np.ndarray
    dim: int


@dataclass(frozen=True)
class EigenState:
    """One normalized eigenstate mapped back to mode-pair coefficients.

    The coefficient of the mode pair (k, l) multiplies
    exp(i k phi1) exp(i l phi2) / (2 pi sqrt(r1 r2)); coefficients are real
    and the largest-magnitude one is made positive.
    """

    energy: float
    coeffs: dict[ModePair, float] = field(repr=False)
    basis: BasisSpec
    geometry: RingGeometry
    interaction: Interaction

    def coefficient(self, m: int, n: int) -> float:
        return self.coeffs[ModePair(m, n)]

    def zero_sector(self) -> list[tuple[int, float]]:
        """Pairs (k, c_{k,-k}) for k = -N/2 .. N/2, the relative-angle series."""
        return [(k, self.coeffs[ModePair(k, -k)]) for k in range(-self.basis.half, self.basis.half + 1)]


def _fix_sign(vector: np.ndarray) -> np.ndarray:
    threshold = 1e-12 * np.max(np.abs(vector))
    for x in vector:
        if abs(x) > threshold:
            return vector if x > 0 else -vector
    return vector


def eigensolve(matrix: HermitianMatrix | np.ndarray, k: int) -> EigenPairs:
    """Lowest ``k`` eigenpairs of a symmetric matrix.

    Raises ValueError for non-symmetric input or out-of-range ``k`` and
    RuntimeError if the backend fails to converge or the solution violates
    the residual/orthonormality contract.
    """
    a = matrix.entries if isinstance(matrix, HermitianMatrix) else np.asarray(matrix, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    dim = a.shape[0]
    if not 1 <= k <= dim:
        raise ValueError(f"k={k} outside 1..{dim}")
    scale = float(np.max(np.abs(a))) or 1.0
    if float(np.max(np.abs(a - a.T))) > _SYMMETRY_RTOL * scale:
        raise ValueError("input matrix is not symmetric")
    try:
        values, vectors = np.linalg.eigh(a)
    except np.linalg.LinAlgError as exc:
        raise RuntimeError(f"symmetric eigensolver failed to converge: {exc}") from exc
    values, vectors = values[:k].copy(), vectors[:, :k].copy()
    for j in range(k):
        vectors[:, j] = _fix_sign(vectors[:, j])
    norm = float(max(abs(values[0]), abs(values[-1]), np.max(np.abs(a))))
    residual = np.linalg.norm(a @ vectors - vectors * values, axis=0)
    if np.any(residual > _RESIDUAL_RTOL * max(norm, 1.0)):
        raise RuntimeError(f"eigenpair residual {residual.max():.3e} exceeds bound")
    gram = vectors.T @ vectors
    if np.max(np.abs(gram - np.eye(k))) > _ORTHO_TOL:
        raise RuntimeError("eigenvectors lost orthonormality")
    return EigenPairs(values=values, vectors=vectors, dim=dim)


def _to_state(
    energy: float,
    vector: np.ndarray,
    basis: BasisSpec,
    geometry: RingGeometry,
    interaction: Interaction,
) -> EigenState:
    peak = int(np.argmax(np.abs(vector)))
    if vector[peak] < 0:
        vector = -vector
    coeffs = {mode_of(i + 1, basis): float(vector[i]) for i in range(basis.dim)}
    return EigenState(
        energy=float(energy),
        coeffs=coeffs,
        basis=basis,
        geometry=geometry,
        interaction=interaction,
    )


def ground_state(
    basis: BasisSpec,
    geometry: RingGeometry,
    interaction: Interaction,
    quad: QuadratureSpec = QuadratureSpec(),
) -> EigenState:
    """Assemble, diagonalize and return the lowest-energy state."""
    return excited_states(basis, geometry, interaction, quad, count=1)[0]


def excited_states(
    basis: BasisSpec,
    geometry: RingGeometry,
    interaction: Interaction,
    quad: QuadratureSpec = QuadratureSpec(),
    count: int = 1,
) -> list[EigenState]:
    """The ``count`` lowest states, each normalized and sign-fixed."""
    matrix = assemble(basis, geometry, interaction, quad)
    pairs = eigensolve(matrix, count)
    return [
        _to_state(pairs.values[j], pairs.vectors[:, j].copy(), basis, geometry, interaction)
        for j in range(count)
    ]


def spectrum(
    basis: BasisSpec,
    geometry: RingGeometry,
    interaction: Interaction,
    quad: QuadratureSpec = QuadratureSpec(),
    count: int | None = None,
) -> np.ndarray:
    """Lowest ``count`` eigenvalues of the dense assembly (all if None)."""
    matrix = assemble(basis, geometry, interaction, quad)
    return eigensolve(matrix, count or matrix.dim).values


def spectrum_by_sectors(
    basis: BasisSpec,
    geometry: RingGeometry,
    interaction: Interaction,
    quad: QuadratureSpec = QuadratureSpec(),
) -> np.ndarray:
    """Full spectrum from per-sector blocks, sorted ascending.

    Must agree with :func:`spectrum`; total momentum is conserved, so the
    dense matrix is block-diagonal under the sector partition.
    """
    values = []
    for s in range(-basis.n_trunc, basis.n_trunc + 1):
        _, block = sector_block(basis, geometry, interaction, quad, total_momentum=s)
        values.append(np.linalg.eigvalsh(block))
    return np.sort(np.concatenate(values))
