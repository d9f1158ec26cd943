import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ringpair import (
    BasisSpec,
    Interaction,
    ModePair,
    RingGeometry,
    distance,
    index_of,
    mode_of,
    reduced_radius_sq,
)

radii = st.floats(min_value=0.1, max_value=10.0, allow_nan=False, allow_infinity=False)
angles = st.floats(min_value=-60.0, max_value=60.0, allow_nan=False, allow_infinity=False)
even_orders = st.sampled_from(range(0, 22, 2))


def make_geometry(a: float, b: float) -> RingGeometry:
    return RingGeometry(min(a, b), max(a, b))


class TestRingGeometry:
    def test_rejects_nonpositive_radii(self):
        with pytest.raises(ValueError):
            RingGeometry(0.0, 1.0)
        with pytest.raises(ValueError):
            RingGeometry(1.0, -2.0)

    def test_rejects_inner_larger_than_outer(self):
        with pytest.raises(ValueError):
            RingGeometry(2.0, 1.0)

    def test_equal_radii_allowed(self):
        RingGeometry(1.5, 1.5)

    @given(radii, radii)
    def test_reduced_radius_symmetric(self, a, b):
        assert reduced_radius_sq(a, b) == pytest.approx(reduced_radius_sq(b, a), rel=1e-14)

    @given(radii)
    def test_reduced_radius_equal_rings(self, r):
        assert reduced_radius_sq(r, r) == pytest.approx(r * r / 2.0, rel=1e-14)

    @given(radii, radii)
    def test_sigma_sq_positive(self, a, b):
        assert make_geometry(a, b).sigma_sq > 0.0


class TestDistance:
    def test_aligned(self):
        assert distance(RingGeometry(1.0, 2.0), 0.0) == pytest.approx(1.0)

    def test_antipodal(self):
        assert distance(RingGeometry(1.0, 2.0), math.pi) == pytest.approx(3.0)

    def test_quarter_turn(self):
        assert distance(RingGeometry(1.0, 2.0), math.pi / 2.0) == pytest.approx(math.sqrt(5.0))

    @given(radii, radii, angles)
    def test_even_and_periodic(self, a, b, w):
        # abs slack absorbs sqrt cancellation when the rings nearly touch
        g = make_geometry(a, b)
        assert distance(g, w) == pytest.approx(distance(g, -w), rel=1e-9, abs=1e-7)
        assert distance(g, w) == pytest.approx(distance(g, w + 2.0 * math.pi), rel=1e-9, abs=1e-7)

    @given(radii, radii, angles)
    def test_bounded_by_extremes(self, a, b, w):
        g = make_geometry(a, b)
        d = distance(g, w)
        assert g.r2 - g.r1 - 1e-7 <= d <= g.r1 + g.r2 + 1e-7

    def test_extrema_at_zero_and_pi(self):
        g = RingGeometry(1.0, 2.0)
        w = np.linspace(0.0, 2.0 * math.pi, 721)
        d = distance(g, w)
        assert np.argmin(d) in (0, len(w) - 1)
        assert w[np.argmax(d)] == pytest.approx(math.pi, abs=0.01)


class TestInteraction:
    def test_coulomb_has_no_frequency(self):
        with pytest.raises(ValueError):
            Interaction("coulomb", omega=1.0)

    def test_harmonic_requires_positive_frequency(self):
        with pytest.raises(ValueError):
            Interaction.harmonic(0.0)
        with pytest.raises(ValueError):
            Interaction("harmonic")

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            Interaction("yukawa")

    @given(angles)
    def test_potentials_even_in_angle(self, w):
        g = RingGeometry(1.0, 2.0)
        for inter in (Interaction.coulomb(), Interaction.harmonic(0.7)):
            assert inter.potential(g, w) == pytest.approx(inter.potential(g, -w), rel=1e-12)

    def test_harmonic_value(self):
        g = RingGeometry(1.0, 2.0)
        assert Interaction.harmonic(2.0).potential(g, 0.0) == pytest.approx(2.0)


class TestBasisSpec:
    def test_rejects_odd_or_negative(self):
        with pytest.raises(ValueError):
            BasisSpec(3)
        with pytest.raises(ValueError):
            BasisSpec(-2)

    def test_degenerate_single_mode(self):
        basis = BasisSpec(0)
        assert basis.dim == 1
        assert list(basis.modes()) == [ModePair(0, 0)]

    @given(even_orders)
    def test_dimension(self, n):
        basis = BasisSpec(n)
        assert basis.dim == (n + 1) ** 2
        assert len(list(basis.modes())) == basis.dim


class TestIndexMap:
    def test_lower_corner(self):
        basis = BasisSpec(2)
        assert index_of(ModePair(-1, -1), basis) == 1

    def test_center(self):
        basis = BasisSpec(2)
        assert index_of(ModePair(0, 0), basis) == 5

    def test_upper_corner(self):
        basis = BasisSpec(2)
        assert index_of(ModePair(1, 1), basis) == 9

    def test_inverse_of_corner_and_center(self):
        basis = BasisSpec(2)
        assert mode_of(1, basis) == ModePair(-1, -1)
        assert mode_of(5, basis) == ModePair(0, 0)

    def test_inverse_against_enumeration(self):
        # brute-force oracle: enumerate the grid in flat order and invert
        basis = BasisSpec(4)
        table = {}
        i = 1
        for m in range(-2, 3):
            for n in range(-2, 3):
                table[i] = ModePair(m, n)
                i += 1
        assert mode_of(9, basis) == table[9] == ModePair(-1, 1)
        for j, expected in table.items():
            assert mode_of(j, basis) == expected

    @given(even_orders)
    def test_round_trip_exhaustive(self, n):
        basis = BasisSpec(n)
        seen = set()
        for mode in basis.modes():
            i = index_of(mode, basis)
            assert 1 <= i <= basis.dim
            assert mode_of(i, basis) == mode
            seen.add(i)
        assert seen == set(range(1, basis.dim + 1))

    def test_out_of_range_mode(self):
        with pytest.raises(ValueError):
            index_of(ModePair(2, 0), BasisSpec(2))

    def test_out_of_range_index(self):
        basis = BasisSpec(2)
        for bad in (0, 10, -1):
            with pytest.raises(ValueError):
                mode_of(bad, basis)
