import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from ringpair import (
    BasisSpec,
    DegenerateProfileError,
    Interaction,
    MathieuQuery,
    NotSeparableError,
    Profile,
    ReferenceSolution,
    RingGeometry,
    compare,
    convergence_sweep,
    count_nodes,
    excited_states,
    ground_state,
    harmonic_benchmark_case,
    harmonic_energy,
    mathieu_profile,
    periodic_grid,
    profile_from_pair_coeffs,
    quasi_exact_coulomb_case,
    relative_profile,
)

from golden import COULOMB_COEFFS, EXACT_COULOMB_ENERGY, HARMONIC_COEFFS, ODD_CHAR_Q

G12 = RingGeometry(1.0, 2.0)
HARMONIC = Interaction.harmonic(1.0)


class TestRelativeProfile:
    def test_single_constant_mode(self):
        state = ground_state(BasisSpec(0), G12, HARMONIC)
        profile = relative_profile(state, periodic_grid(256))
        assert np.allclose(profile.values, 1.0, atol=1e-12)

    def test_coulomb_profile_peaks_antipodally(self):
        profile = profile_from_pair_coeffs(COULOMB_COEFFS, periodic_grid(512))
        peak_angle = profile.omega[np.argmax(profile.values)]
        assert peak_angle == pytest.approx(math.pi, abs=2.0 * math.pi / 512 + 1e-12)

    def test_harmonic_profile_nodeless_positive(self):
        profile = profile_from_pair_coeffs(HARMONIC_COEFFS, periodic_grid(512))
        assert np.all(profile.values > 0.0)
        assert count_nodes(profile) == 0

    def test_numeric_profile_real_and_periodic(self):
        state = ground_state(BasisSpec(14), G12, HARMONIC)
        grid = periodic_grid(512)
        profile = relative_profile(state, grid)
        assert np.max(np.abs(profile.values)) == pytest.approx(1.0)
        # the series is a trigonometric polynomial, hence 2 pi periodic
        wrapped = relative_profile(state, grid + 2.0 * math.pi)
        assert np.allclose(profile.values, wrapped.values, atol=1e-10)

    def test_off_sector_state_rejected(self):
        states = excited_states(BasisSpec(8), G12, HARMONIC, count=2)
        with pytest.raises(NotSeparableError):
            relative_profile(states[1], periodic_grid(256))

    def test_off_sector_coeff_table_rejected(self):
        with pytest.raises(NotSeparableError):
            profile_from_pair_coeffs({(1, 0): 1.0}, periodic_grid(256))


class TestCountNodes:
    def test_constant(self):
        grid = periodic_grid(256)
        assert count_nodes(Profile(grid, np.ones(256), "const")) == 0

    def test_sine(self):
        grid = periodic_grid(512)
        assert count_nodes(Profile(grid, np.sin(grid), "sin")) == 2

    def test_double_sine(self):
        grid = periodic_grid(512)
        assert count_nodes(Profile(grid, np.sin(2.0 * grid), "sin2")) == 4

    def test_odd_mathieu_reference(self):
        profile = mathieu_profile(MathieuQuery(q=ODD_CHAR_Q, branch="odd", order=2), periodic_grid(512))
        assert count_nodes(profile) == 2

    @given(st.floats(min_value=1e-6, max_value=1e6), st.booleans())
    def test_scale_invariance(self, scale, flip):
        grid = periodic_grid(512)
        factor = -scale if flip else scale
        assert count_nodes(Profile(grid, factor * np.sin(grid), "scaled")) == 2

    def test_grid_refinement_invariance(self):
        state = ground_state(BasisSpec(14), G12, HARMONIC)
        reference = mathieu_profile(MathieuQuery(q=ODD_CHAR_Q, branch="odd", order=2), periodic_grid(256))
        counts = {count_nodes(relative_profile(state, periodic_grid(n))) for n in (256, 512, 1024)}
        assert counts == {0}
        assert count_nodes(reference) == count_nodes(
            mathieu_profile(MathieuQuery(q=ODD_CHAR_Q, branch="odd", order=2), periodic_grid(1024))
        )

    def test_degenerate_profile(self):
        grid = periodic_grid(256)
        with pytest.raises(DegenerateProfileError):
            count_nodes(Profile(grid, np.zeros(256), "zero"))

    def test_needs_enough_samples(self):
        grid = periodic_grid(64)
        with pytest.raises(ValueError):
            count_nodes(Profile(grid, np.sin(grid), "coarse"))

    def test_needs_full_period(self):
        grid = np.linspace(0.0, math.pi, 256)
        with pytest.raises(ValueError):
            count_nodes(Profile(grid, np.sin(grid), "half"))


class TestConvergenceSweep:
    def test_quasi_exact_sweep(self):
        case = quasi_exact_coulomb_case()
        rows = convergence_sweep(case, [2, 4, 6, 8, 10])
        assert [r.n_trunc for r in rows] == [2, 4, 6, 8, 10]
        assert abs(rows[-1].energy - EXACT_COULOMB_ENERGY) < 1e-5
        for earlier, later in zip(rows, rows[1:]):
            assert later.energy <= earlier.energy + 1e-12
            assert later.delta_prev == later.energy - earlier.energy

    def test_harmonic_sweep_reaches_oracle(self):
        case = harmonic_benchmark_case()
        rows = convergence_sweep(case, list(range(2, 18, 2)))
        oracle = harmonic_energy(case.geometry, case.interaction.omega, "even", 0)
        assert abs(rows[-1].energy - oracle) < 1e-8

    def test_repeated_order_is_deterministic(self):
        case = harmonic_benchmark_case()
        rows = convergence_sweep(case, [4, 4])
        assert rows[0].energy == rows[1].energy

    def test_repeated_sweeps_bitwise_identical(self):
        case = harmonic_benchmark_case()
        first = [r.energy for r in convergence_sweep(case, [2, 4, 6])]
        second = [r.energy for r in convergence_sweep(case, [2, 4, 6])]
        assert first == second

    def test_validation(self):
        case = harmonic_benchmark_case()
        with pytest.raises(ValueError):
            convergence_sweep(case, [2, 3])
        with pytest.raises(ValueError):
            convergence_sweep(case, [4, 2])


class TestCompare:
    def test_quasi_exact_report(self):
        case = quasi_exact_coulomb_case()
        state = ground_state(BasisSpec(10), case.geometry, case.interaction)
        reference = ReferenceSolution(
            energy=case.exact_energy, coeffs=COULOMB_COEFFS, label="closed-form"
        )
        report = compare(state, reference)
        assert report.abs_error < 1e-5
        assert report.coeff_max_dev < 1e-6
        assert report.node_count_numeric == 0
        assert report.node_count_reference == 0

    def test_case_only_reference(self):
        case = quasi_exact_coulomb_case()
        state = ground_state(BasisSpec(10), case.geometry, case.interaction)
        report = compare(state, case)
        assert report.abs_error < 1e-5
        assert report.coeff_max_dev is None
        assert report.node_count_reference is None

    def test_case_without_energy_rejected(self):
        case = harmonic_benchmark_case()
        state = ground_state(BasisSpec(8), case.geometry, case.interaction)
        with pytest.raises(ValueError):
            compare(state, case)

    def test_harmonic_against_odd_branch(self):
        # reproduces the node-count disagreement between the two readings
        case = harmonic_benchmark_case()
        state = ground_state(BasisSpec(14), case.geometry, case.interaction)
        energy = harmonic_energy(case.geometry, case.interaction.omega, "odd", 0)
        profile = mathieu_profile(
            MathieuQuery(q=ODD_CHAR_Q, branch="odd", order=2), periodic_grid(512)
        )
        report = compare(state, ReferenceSolution(energy=energy, profile=profile))
        assert report.node_count_numeric == 0
        assert report.node_count_reference == 2
        assert report.abs_error > 1.0

    def test_harmonic_against_even_branch(self):
        case = harmonic_benchmark_case()
        state = ground_state(BasisSpec(16), case.geometry, case.interaction)
        energy = harmonic_energy(case.geometry, case.interaction.omega, "even", 0)
        profile = mathieu_profile(
            MathieuQuery(q=ODD_CHAR_Q, branch="even", order=0), periodic_grid(512)
        )
        report = compare(state, ReferenceSolution(energy=energy, profile=profile))
        assert report.abs_error < 1e-8
        assert report.node_count_numeric == 0
        assert report.node_count_reference == 0
