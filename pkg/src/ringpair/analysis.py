"""Profiles, node counting, convergence sweeps and comparison reports.

Solutions supported on the zero-momentum sector reduce to a function of the
angle difference, psi(w) = sum_k c_{k,-k} e^{i k w}; this module evaluates
that series, counts its sign changes and packages numeric-versus-reference
comparisons.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .eigen import EigenState, ground_state
from .hamiltonian import QuadratureSpec
from .model import BasisSpec, ModePair
from .reference import CaseSpec, Profile

OFF_SECTOR_TOL = 1e-8
_REALIZE_TOL = 1e-10


class NotSeparableError(ValueError):
    """Raised when a state carries weight outside the k + l = 0 sector."""


class DegenerateProfileError(ValueError):
    """Raised when a profile is zero everywhere at the working tolerance."""


def periodic_grid(points: int) -> np.ndarray:
    """Equispaced grid 2 pi j / points, j = 0 .. points-1, covering [0, 2 pi)."""
    if points < 2:
        raise ValueError("need at least two grid points")
    return 2.0 * np.pi * np.arange(points) / points


def _series_profile(coeffs: Mapping[int, float], grid: np.ndarray, label: str) -> Profile:
    """Evaluate sum_k c_k e^{i k w}, rotate a definite-parity result real,
    normalize the peak sample to +1."""
    grid = np.asarray(grid, dtype=float)
    ks = np.array(sorted(coeffs))
    cs = np.array([coeffs[k] for k in ks])
    values = np.exp(1j * np.outer(grid, ks)) @ cs
    peak = values[np.argmax(np.abs(values))]
    if abs(peak) == 0.0:
        raise DegenerateProfileError("relative series vanished on the whole grid")
    values = values * (abs(peak) / peak)
    if np.max(np.abs(values.imag)) > _REALIZE_TOL * abs(peak):
        raise NotSeparableError("relative series is not real up to a global phase")
    return Profile(omega=grid.copy(), values=values.real / abs(peak), label=label)


def relative_profile(solution: EigenState, grid: np.ndarray) -> Profile:
    """Relative-angle profile of a zero-momentum-supported state.

    Requires the off-sector weight sum_{k+l != 0} |c_{k,l}|^2 to be below
    1e-8; the result is real valued and normalized to unit peak.
    """
    off = sum(c * c for (m, n), c in solution.coeffs.items() if m + n != 0)
    if off >= OFF_SECTOR_TOL:
        raise NotSeparableError(
            f"state has off-sector weight {off:.3e}, not a function of phi1 - phi2"
        )
    series = {k: c for k, c in solution.zero_sector()}
    return _series_profile(series, grid, label="numeric-ground")


def profile_from_pair_coeffs(
    coeffs: Mapping[ModePair, float] | Mapping[tuple[int, int], float],
    grid: np.ndarray,
    label: str = "reference",
) -> Profile:
    """Profile of an explicit zero-sector coefficient table {(k, -k): c}."""
    series: dict[int, float] = {}
    for (m, n), c in coeffs.items():
        if m + n != 0:
            raise NotSeparableError(f"coefficient table contains off-sector mode ({m}, {n})")
        series[m] = float(c)
    return _series_profile(series, grid, label=label)


def count_nodes(profile: Profile, rel_tol: float = 1e-6) -> int:
    """Count sign changes around the period, one per crossing.

    Samples with magnitude below rel_tol times the peak are treated as
    lying on a node; runs of them collapse into a single crossing when the
    sign flips across the run. The count is invariant under rescaling.
    """
    if len(profile.omega) < 128:
        raise ValueError("node counting needs at least 128 samples")
    span = float(profile.omega[-1] - profile.omega[0])
    if span < 2.0 * np.pi * (1.0 - 2.0 / len(profile.omega)):
        raise ValueError("node counting needs a grid covering the full period")
    peak = float(np.max(np.abs(profile.values)))
    if peak == 0.0:
        raise DegenerateProfileError("cannot count nodes of an identically zero profile")
    significant = profile.values[np.abs(profile.values) > rel_tol * peak]
    if significant.size == 0:
        raise DegenerateProfileError("profile is zero everywhere at the given tolerance")
    signs = np.sign(significant)
    return int(np.sum(signs != np.roll(signs, 1)))


@dataclass(frozen=True)
class ConvergenceRow:
    n_trunc: int
    energy: float
    delta_prev: float
    wall_time: float


@dataclass(frozen=True)
class ReferenceSolution:
    """An external benchmark: an energy, optionally a profile or coefficients."""

    energy: float
    profile: Profile | None = None
    coeffs: Mapping[ModePair, float] | None = None
    label: str = "reference"


@dataclass(frozen=True)
class ComparisonReport:
    numeric_energy: float
    reference_energy: float
    abs_error: float
    coeff_max_dev: float | None
    node_count_numeric: int
    node_count_reference: int | None


def convergence_sweep(
    case: CaseSpec,
    n_list: Sequence[int],
    quad: QuadratureSpec = QuadratureSpec(),
) -> list[ConvergenceRow]:
    """Ground energy for each truncation order in ``n_list`` (even, nondecreasing).

    Energies are nonincreasing along the sweep: the truncated subspaces are
    nested, so each enlargement can only lower the variational minimum.
    """
    if any(n % 2 != 0 or n < 0 for n in n_list):
        raise ValueError("truncation orders must be even and nonnegative")
    if any(b < a for a, b in zip(n_list, n_list[1:])):
        raise ValueError("truncation orders must be nondecreasing")
    rows: list[ConvergenceRow] = []
    previous = math.nan
    for n in n_list:
        start = time.perf_counter()
        energy = ground_state(BasisSpec(n), case.geometry, case.interaction, quad).energy
        elapsed = time.perf_counter() - start
        rows.append(
            ConvergenceRow(
                n_trunc=n,
                energy=energy,
                delta_prev=energy - previous,
                wall_time=elapsed,
            )
        )
        previous = energy
    return rows


def compare(
    solution: EigenState,
    reference: CaseSpec | ReferenceSolution,
    grid_points: int = 512,
    node_rel_tol: float = 1e-6,
) -> ComparisonReport:
    """Side-by-side report of a numeric state against a reference.

    A CaseSpec reference contributes only its exact energy; a
    ReferenceSolution may add a profile (node counted directly) or a
    coefficient table (profile synthesized from it, plus the maximum
    coefficient deviation).
    """
    if isinstance(reference, CaseSpec):
        if reference.exact_energy is None:
            raise ValueError(f"case {reference.label!r} carries no reference energy")
        ref_energy, ref_profile, ref_coeffs = reference.exact_energy, None, None
    else:
        ref_energy, ref_profile, ref_coeffs = reference.energy, reference.profile, reference.coeffs
    grid = periodic_grid(grid_points)
    numeric_nodes = count_nodes(relative_profile(solution, grid), node_rel_tol)
    if ref_profile is None and ref_coeffs is not None:
        ref_profile = profile_from_pair_coeffs(ref_coeffs, grid)
    reference_nodes = None if ref_profile is None else count_nodes(ref_profile, node_rel_tol)
    coeff_max_dev = None
    if ref_coeffs is not None:
        coeff_max_dev = max(
            abs(solution.coeffs[ModePair(*key)] - float(c)) for key, c in ref_coeffs.items()
        )
    return ComparisonReport(
        numeric_energy=solution.energy,
        reference_energy=float(ref_energy),
        abs_error=abs(solution.energy - float(ref_energy)),
        coeff_max_dev=coeff_max_dev,
        node_count_numeric=numeric_nodes,
        node_count_reference=reference_nodes,
    )
