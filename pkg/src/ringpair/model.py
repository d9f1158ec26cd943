"""Domain model for two particles confined to concentric rings.

A particle of unit mass lives on each ring (inner radius ``r1``, outer
radius ``r2``, atomic units throughout). Both supported interactions
depend only on the angle difference ``w = phi1 - phi2``, which makes the
product plane-wave basis

    exp(i*m*phi1) * exp(i*n*phi2) / (2*pi*sqrt(r1*r2)),   |m|, |n| <= N/2

the natural truncation. This module holds the geometry, the interaction
descriptors, the truncation bookkeeping and the bijection between mode
pairs (m, n) and 1-based flat matrix indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

COULOMB = "coulomb"
HARMONIC = "harmonic"


class ModePair(NamedTuple):
    """Angular momentum quantum numbers (m on ring 1, n on ring 2)."""

    m: int
    n: int


def reduced_radius_sq(r1: float, r2: float) -> float:
    """Reduced squared radius 1 / (1/r1^2 + 1/r2^2), symmetric in r1, r2."""
    return (r1 * r1 * r2 * r2) / (r1 * r1 + r2 * r2)


@dataclass(frozen=True)
class RingGeometry:
    """Two concentric rings with radii ``r1 <= r2`` (both positive)."""

    r1: float
    r2: float

    def __post_init__(self) -> None:
        if not (self.r1 > 0.0 and self.r2 > 0.0):
            raise ValueError(f"radii must be positive, got r1={self.r1}, r2={self.r2}")
        if self.r1 > self.r2:
            raise ValueError(f"inner radius must not exceed outer, got r1={self.r1} > r2={self.r2}")

    @property
    def sigma_sq(self) -> float:
        """Reduced squared radius governing the relative-angle kinetic term."""
        return reduced_radius_sq(self.r1, self.r2)


def distance(geometry: RingGeometry, omega):
    """Inter-particle distance at angle difference ``omega``.

    sqrt(r1^2 + r2^2 - 2*r1*r2*cos(omega)); accepts scalars or arrays and
    is 2*pi-periodic and even in ``omega``. Ranges over [r2-r1, r1+r2].
    """
    r1, r2 = geometry.r1, geometry.r2
    return np.sqrt(r1 * r1 + r2 * r2 - 2.0 * r1 * r2 * np.cos(omega))


@dataclass(frozen=True)
class Interaction:
    """Pair interaction, either bare Coulomb 1/d or a harmonic spring.

    ``omega`` is the spring frequency and is present exactly when
    ``kind == HARMONIC``; the harmonic potential is (omega^2 / 2) * d^2.
    """

    kind: str
    omega: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in (COULOMB, HARMONIC):
            raise ValueError(f"unknown interaction kind {self.kind!r}")
        if self.kind == COULOMB and self.omega is not None:
            raise ValueError("coulomb interaction carries no frequency parameter")
        if self.kind == HARMONIC and not (self.omega is not None and self.omega > 0.0):
            raise ValueError("harmonic interaction requires omega > 0")

    @classmethod
    def coulomb(cls) -> "Interaction":
        return cls(COULOMB)

    @classmethod
    def harmonic(cls, omega: float) -> "Interaction":
        return cls(HARMONIC, omega)

    def potential(self, geometry: RingGeometry, angle_diff):
        """Potential energy at angle difference ``angle_diff`` (scalar or array)."""
        d = distance(geometry, angle_diff)
        if self.kind == COULOMB:
            return 1.0 / d
        return 0.5 * self.omega * self.omega * d * d


@dataclass(frozen=True)
class BasisSpec:
    """Plane-wave truncation: modes m, n = -N/2 .. N/2 with N = ``n_trunc`` even.

    N = 0 is allowed and keeps only the constant mode.
    """

    n_trunc: int

    def __post_init__(self) -> None:
        if self.n_trunc < 0 or self.n_trunc % 2 != 0:
            raise ValueError(f"truncation order must be even and >= 0, got {self.n_trunc}")

    @property
    def half(self) -> int:
        return self.n_trunc // 2

    @property
    def dim(self) -> int:
        """Flattened matrix dimension (N+1)^2."""
        return (self.n_trunc + 1) ** 2

    def contains(self, mode: ModePair) -> bool:
        return abs(mode.m) <= self.half and abs(mode.n) <= self.half

    def modes(self) -> Iterator[ModePair]:
        """All mode pairs in flat-index order (m outer, n inner)."""
        for m in range(-self.half, self.half + 1):
            for n in range(-self.half, self.half + 1):
                yield ModePair(m, n)


def index_of(mode: ModePair, basis: BasisSpec) -> int:
    """Flatten a mode pair to the 1-based index (m + N/2)(N+1) + (n + N/2) + 1."""
    if not basis.contains(mode):
        raise ValueError(f"mode {mode} outside basis with n_trunc={basis.n_trunc}")
    n1 = basis.n_trunc + 1
    return (mode.m + basis.half) * n1 + (mode.n + basis.half) + 1


def mode_of(i: int, basis: BasisSpec) -> ModePair:
    """Invert :func:`index_of`; unique by integer division and remainder."""
    if not 1 <= i <= basis.dim:
        raise ValueError(f"flat index {i} outside 1..{basis.dim}")
    row, col = divmod(i - 1, basis.n_trunc + 1)
    return ModePair(row - basis.half, col - basis.half)
