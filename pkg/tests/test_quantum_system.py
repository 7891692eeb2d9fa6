import math

import numpy as np
import pytest

from mixedframes import (
    DomainError,
    GaussianComponent,
    GridMismatchError,
    PositionGrid,
    ResourceLimitError,
    act_mixed,
    act_pure,
    coherently_translated,
    convolve,
    density_distance,
    gaussian_wavepacket,
    make_delta,
    make_gaussian,
    mix,
    position_density,
    pure_state,
    purity,
    translate,
    two_gaussian_superposition,
)
from mixedframes import analytic
from mixedframes.group_algebra import antipode, sample_on_grid
from mixedframes.quantum_system import density_mean, density_variance

from conftest import dense_density_matrix


class TestGrid:
    def test_power_of_two_required(self):
        with pytest.raises(ValueError):
            PositionGrid(1000, 40.0)
        with pytest.raises(ValueError):
            PositionGrid(32, 40.0)

    def test_points_span_box(self):
        grid = PositionGrid(256, 16.0)
        x = grid.points()
        assert x[0] == -8.0
        assert x[1] - x[0] == pytest.approx(16.0 / 256)


class TestWavepacket:
    def test_normalization(self, fine_grid):
        psi = gaussian_wavepacket(fine_grid, 0.75)
        assert psi.norm() == pytest.approx(1.0, abs=1e-12)

    def test_peak_density_closed_form(self, fine_grid):
        psi = gaussian_wavepacket(fine_grid, 0.75)
        dens = position_density(pure_state(psi))
        i0 = np.argmin(np.abs(fine_grid.points()))
        assert dens.values[i0] == pytest.approx(0.5319230405352436, abs=1e-9)

    def test_density_variance_is_alpha_squared(self, fine_grid):
        psi = gaussian_wavepacket(fine_grid, 0.75)
        dens = position_density(pure_state(psi))
        assert density_variance(dens) == pytest.approx(0.75**2, abs=1e-9)

    def test_truncation_guard(self):
        grid = PositionGrid(256, 10.0)
        with pytest.raises(DomainError):
            gaussian_wavepacket(grid, 1.3)


class TestTranslate:
    def test_zero_shift_is_identity(self, grid):
        psi = gaussian_wavepacket(grid, 0.75)
        assert np.array_equal(translate(psi, 0.0).amplitudes, psi.amplitudes)

    def test_peak_moves_to_minus_a(self, fine_grid):
        psi = gaussian_wavepacket(fine_grid, 0.75)
        shifted = position_density(pure_state(translate(psi, 2.5)))
        x = fine_grid.points()
        assert x[np.argmax(shifted.values)] == pytest.approx(-2.5, abs=fine_grid.spacing)
        assert np.max(np.abs(shifted.values - analytic.packet_density(x, 0.75, -2.5))) < 1e-12

    def test_round_trip_and_unitarity(self, grid):
        psi = gaussian_wavepacket(grid, 0.6, 1.0)
        back = translate(translate(psi, 1.7), -1.7)
        assert np.max(np.abs(back.amplitudes - psi.amplitudes)) < 1e-12
        assert translate(psi, 1.7).norm() == pytest.approx(1.0, abs=1e-12)

    def test_shift_bound(self, grid):
        psi = gaussian_wavepacket(grid, 0.75)
        with pytest.raises(DomainError):
            translate(psi, 25.0)


class TestActPure:
    def test_preserves_term_count_and_purity(self, grid):
        state = mixture_of_two(grid)
        out = act_pure(1.2, state)
        assert len(out.terms) == len(state.terms)
        assert purity(out) == pytest.approx(purity(state), abs=1e-10)

    def test_additivity(self, grid):
        state = mixture_of_two(grid)
        one = act_pure(0.7, act_pure(0.5, state))
        two = act_pure(1.2, state)
        for (_, p1), (_, p2) in zip(one.terms, two.terms):
            assert np.max(np.abs(p1.amplitudes - p2.amplitudes)) < 1e-12


def mixture_of_two(grid):
    return mix_state(grid, [(0.5, (0.75, -1.0)), (0.5, (0.5, 1.5))])


def mix_state(grid, term_params):
    from mixedframes import PureMixture

    terms = tuple((w, gaussian_wavepacket(grid, a, c)) for w, (a, c) in term_params)
    return PureMixture(grid, terms)


class TestActMixed:
    def test_two_point_matches_manual_mixture(self, grid):
        psi = gaussian_wavepacket(grid, 0.75)
        rho = mix([(0.5, make_delta(0.0)), (0.5, make_delta(2.5))])
        out = act_mixed(rho, pure_state(psi))
        assert len(out.terms) == 2
        manual = 0.5 * np.abs(psi.amplitudes) ** 2 + 0.5 * np.abs(
            translate(psi, 2.5).amplitudes
        ) ** 2
        got = position_density(out).values
        assert np.max(np.abs(got - manual)) < 1e-14

    def test_delta_reduces_to_act_pure(self, grid):
        state = mixture_of_two(grid)
        via_channel = act_mixed(make_delta(-0.8), state)
        direct = act_pure(-0.8, state)
        for (_, p1), (_, p2) in zip(via_channel.terms, direct.terms):
            assert np.max(np.abs(p1.amplitudes - p2.amplitudes)) < 1e-13

    def test_gaussian_smearing_closed_form(self, fine_grid):
        alpha, sigma = 0.75, 1.0
        psi = gaussian_wavepacket(fine_grid, alpha)
        out = position_density(act_mixed(make_gaussian(0.0, sigma**2), pure_state(psi), 64))
        ref = analytic.smeared_mixture_density(fine_grid.points(), alpha, sigma)
        assert np.max(np.abs(out.values - ref)) < 1e-6

    def test_nonzero_center_follows_translate_convention(self, fine_grid):
        # density of the channel output is centered at -a0 for smearing mean a0
        alpha, sigma, a0 = 0.75, 1.0, 0.8
        psi = gaussian_wavepacket(fine_grid, alpha)
        out = position_density(act_mixed(make_gaussian(a0, sigma**2), pure_state(psi), 64))
        ref = analytic.smeared_mixture_density(fine_grid.points(), alpha, sigma, shift=-a0)
        assert np.max(np.abs(out.values - ref)) < 1e-6

    def test_quad_order_floor(self, grid):
        psi = gaussian_wavepacket(grid, 0.75)
        with pytest.raises(DomainError):
            act_mixed(make_gaussian(0.0, 1.0), pure_state(psi), quad_order=8)

    def test_term_cap(self, grid):
        psi = gaussian_wavepacket(grid, 0.75)
        rho = mix([(0.5, make_gaussian(0.0, 1.0)), (0.5, make_gaussian(1.0, 1.0))])
        with pytest.raises(ResourceLimitError):
            act_mixed(rho, pure_state(psi), quad_order=64, term_cap=100)


class TestPositionDensity:
    def test_pure_density(self, grid):
        psi = gaussian_wavepacket(grid, 0.75)
        dens = position_density(pure_state(psi))
        assert np.max(np.abs(dens.values - np.abs(psi.amplitudes) ** 2)) < 1e-15

    def test_half_translation_closed_form(self, fine_grid):
        alpha, a2 = 0.75, 2.5
        psi = gaussian_wavepacket(fine_grid, alpha)
        rho = mix([(0.5, make_delta(0.0)), (0.5, make_delta(-a2))])
        dens = position_density(act_mixed(rho, pure_state(psi)))
        ref = analytic.two_point_mixed_density(fine_grid.points(), alpha, a2)
        assert np.max(np.abs(dens.values - ref)) < 1e-12

    def test_smeared_variance(self, fine_grid):
        alpha, sigma = 0.75, 1.0
        psi = gaussian_wavepacket(fine_grid, alpha)
        dens = position_density(act_mixed(make_gaussian(0.0, sigma**2), pure_state(psi), 64))
        assert density_variance(dens) == pytest.approx(sigma**2 + alpha**2, abs=1e-6)


class TestPurity:
    def test_single_term_is_pure(self, grid):
        assert purity(pure_state(gaussian_wavepacket(grid, 0.75))) == pytest.approx(1.0, abs=1e-12)

    def test_orthogonal_half_mixture(self, grid):
        far = mix_state(grid, [(0.5, (0.3, -6.0)), (0.5, (0.3, 6.0))])
        assert purity(far) == pytest.approx(0.5, abs=1e-12)

    def test_half_translation_value(self, fine_grid):
        alpha, a2 = 0.75, 2.5
        psi = gaussian_wavepacket(fine_grid, alpha)
        rho = mix([(0.5, make_delta(0.0)), (0.5, make_delta(a2))])
        value = purity(act_mixed(rho, pure_state(psi)))
        expected = 0.5 + 0.5 * math.exp(-(a2**2) / (4 * alpha**2))
        assert value == pytest.approx(expected, abs=1e-10)
        assert value == pytest.approx(0.5310882620110582, abs=1e-10)

    def test_matches_dense_oracle(self):
        grid = PositionGrid(256, 40.0)
        rng = np.random.default_rng(5)
        for _ in range(5):
            term_params = [
                (w, (float(rng.uniform(0.3, 1.0)), float(rng.uniform(-3, 3))))
                for w in (0.2, 0.3, 0.5)
            ]
            state = mix_state(grid, term_params)
            dense = dense_density_matrix(state)
            oracle = float(np.real(np.trace(dense @ dense)))
            assert purity(state) == pytest.approx(oracle, abs=1e-10)

    def test_non_increasing_under_channel(self, grid):
        rng = np.random.default_rng(6)
        state = mixture_of_two(grid)
        for _ in range(10):
            rho = mix([(0.5, make_delta(float(rng.uniform(-3, 3)))), (0.5, make_gaussian(0.0, 0.5))])
            assert purity(act_mixed(rho, state, 24)) <= purity(state) + 1e-9


class TestSuperposition:
    def test_coincident_sum_is_single_gaussian(self, fine_grid):
        psi = two_gaussian_superposition(fine_grid, 0.75, 0.0, +1)
        ref = gaussian_wavepacket(fine_grid, 0.75)
        assert np.max(np.abs(np.abs(psi.amplitudes) - np.abs(ref.amplitudes))) < 1e-12

    def test_sum_density_closed_form(self, fine_grid):
        psi = two_gaussian_superposition(fine_grid, 0.75, 2.5, +1)
        dens = position_density(pure_state(psi))
        ref = analytic.superposition_density(fine_grid.points(), 0.75, 2.5, +1)
        assert np.max(np.abs(dens.values - ref)) < 1e-7

    def test_difference_density_closed_form_and_node(self, fine_grid):
        psi = two_gaussian_superposition(fine_grid, 0.75, 2.5, -1)
        dens = position_density(pure_state(psi))
        ref = analytic.superposition_density(fine_grid.points(), 0.75, 2.5, -1)
        assert np.max(np.abs(dens.values - ref)) < 1e-7
        i_mid = np.argmin(np.abs(fine_grid.points() - 1.25))
        assert dens.values[i_mid] < 1e-10

    def test_difference_normalization_constant(self, fine_grid):
        # the correct normalization denominator carries (1 - overlap), not (1 + overlap)
        alpha, a2 = 0.75, 2.5
        x = fine_grid.points()
        g0 = np.exp(-(x**2) / (4 * alpha**2))
        g2 = np.exp(-((x - a2) ** 2) / (4 * alpha**2))
        overlap = math.exp(-(a2**2) / (8 * alpha**2))
        correct = (g2 - g0) ** 2 / (2 * math.sqrt(2 * math.pi) * alpha * (1 - overlap))
        wrong = (g2 - g0) ** 2 / (2 * math.sqrt(2 * math.pi) * alpha * (1 + overlap))
        assert float(np.trapezoid(correct, x)) == pytest.approx(1.0, abs=1e-9)
        assert float(np.trapezoid(wrong, x)) == pytest.approx((1 - overlap) / (1 + overlap), abs=1e-9)
        dens = position_density(pure_state(two_gaussian_superposition(fine_grid, alpha, a2, -1)))
        assert np.max(np.abs(dens.values - correct)) < 1e-7

    def test_zero_function_rejected(self, grid):
        with pytest.raises(DomainError):
            two_gaussian_superposition(grid, 0.75, 0.0, -1)


class TestCoherentlyTranslated:
    def test_sharp_limit_matches_translate(self, fine_grid):
        psi = gaussian_wavepacket(fine_grid, 0.75)
        smeared = coherently_translated(GaussianComponent(1.5, 1e-8), psi)
        sharp = translate(psi, 1.5)
        assert np.max(np.abs(smeared.amplitudes - sharp.amplitudes)) < 1e-6

    def test_density_closed_form(self, fine_grid):
        alpha, sigma = 0.75, 1.0
        psi = gaussian_wavepacket(fine_grid, alpha)
        out = coherently_translated(GaussianComponent(0.0, sigma**2), psi, 64)
        dens = position_density(pure_state(out))
        ref = analytic.smeared_pure_density(fine_grid.points(), alpha, sigma)
        assert np.max(np.abs(dens.values - ref)) < 1e-6

    def test_more_localized_than_channel_output(self, fine_grid):
        for sigma in (0.5, 1.0, 2.0):
            alpha = 0.75
            psi = gaussian_wavepacket(fine_grid, alpha)
            mixed = position_density(act_mixed(make_gaussian(0.0, sigma**2), pure_state(psi), 64))
            pure = position_density(
                pure_state(coherently_translated(GaussianComponent(0.0, sigma**2), psi, 64))
            )
            assert density_variance(pure) < density_variance(mixed)
            assert density_variance(mixed) == pytest.approx(sigma**2 + alpha**2, abs=1e-6)
            assert density_variance(pure) == pytest.approx(
                (sigma**2 + 2 * alpha**2) / 2, abs=1e-6
            )


class TestDensityDistance:
    def test_zero_for_identical(self, grid):
        dens = position_density(pure_state(gaussian_wavepacket(grid, 0.75)))
        assert density_distance(dens, dens) == (0.0, 0.0)

    def test_midpoint_gap_between_mixed_and_pure(self, fine_grid):
        alpha, a2 = 0.75, 2.5
        psi = gaussian_wavepacket(fine_grid, alpha)
        rho = mix([(0.5, make_delta(0.0)), (0.5, make_delta(-a2))])
        mixed = position_density(act_mixed(rho, pure_state(psi)))
        pure = position_density(pure_state(two_gaussian_superposition(fine_grid, alpha, a2, +1)))
        sup, l1 = density_distance(mixed, pure)
        i_mid = np.argmin(np.abs(fine_grid.points() - a2 / 2))
        assert pure.values[i_mid] - mixed.values[i_mid] > 0.05
        assert sup > 0.0
        assert l1 <= 2.0

    def test_grid_mismatch(self, grid, fine_grid):
        d1 = position_density(pure_state(gaussian_wavepacket(grid, 0.75)))
        d2 = position_density(pure_state(gaussian_wavepacket(fine_grid, 0.75)))
        with pytest.raises(GridMismatchError):
            density_distance(d1, d2)


class TestChannelInvariants:
    def test_density_equals_reflected_convolution(self, grid):
        psi = gaussian_wavepacket(grid, 0.8, 0.3)
        base = position_density(pure_state(psi)).values
        step = grid.spacing
        rho = mix([(0.25, make_delta(16 * step)), (0.75, make_gaussian(-0.4, 0.36))])
        channel = position_density(act_mixed(rho, pure_state(psi), 64)).values
        kernel = sample_on_grid(antipode(rho), grid.points())
        oracle = np.real(np.fft.ifft(np.fft.fft(base) * np.fft.fft(np.fft.ifftshift(kernel)))) * step
        assert np.max(np.abs(channel - oracle)) < 1e-6

    def test_composition_matches_convolution(self, grid):
        psi = gaussian_wavepacket(grid, 0.7)
        r1 = mix([(0.4, make_delta(0.6)), (0.6, make_gaussian(-0.3, 0.25))])
        r2 = mix([(0.5, make_delta(-1.1)), (0.5, make_gaussian(0.8, 0.16))])
        sequential = position_density(
            act_mixed(r1, act_mixed(r2, pure_state(psi), 48), 48, term_cap=8192)
        )
        combined = position_density(
            act_mixed(convolve(r1, r2), pure_state(psi), 48, term_cap=8192)
        )
        sup, _ = density_distance(sequential, combined)
        assert sup < 1e-6

    def test_mean_shift_convention(self, fine_grid):
        # translating by rho with mean mu moves the density mean to -mu
        psi = gaussian_wavepacket(fine_grid, 0.75)
        out = position_density(act_mixed(make_gaussian(1.2, 0.25), pure_state(psi), 64))
        assert density_mean(out) == pytest.approx(-1.2, abs=1e-8)


class TestCsvExports:
    def test_density_export_round_trips(self, grid):
        from mixedframes.quantum_system import position_density_csv

        dens = position_density(pure_state(gaussian_wavepacket(grid, 0.75)))
        lines = position_density_csv(dens).splitlines()
        assert lines[0] == "x,density"
        assert len(lines) == grid.n_points + 1
        x, value = (float(tok) for tok in lines[1].split(","))
        assert x == grid.points()[0]
        assert value == dens.values[0]

    def test_wavefunction_export_shape(self, grid):
        from mixedframes.quantum_system import wavefunction_csv

        psi = translate(gaussian_wavepacket(grid, 0.75), 0.3)
        lines = wavefunction_csv(psi).splitlines()
        assert lines[0] == "x,re,im"
        _, re, im = (float(tok) for tok in lines[512].split(","))
        assert complex(re, im) == psi.amplitudes[511]
