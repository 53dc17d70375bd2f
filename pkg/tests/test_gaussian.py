import mpmath
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_physical
from memchan.channel import InputStrategy, NoiseModel, Pattern, input_covariance, noise_covariance
from memchan.errors import DomainError, UnphysicalStateError, ValidationError
from memchan.gaussian import (
    beamsplitter_matrix,
    beamsplitter_transform,
    entropy,
    g_entropy,
    is_physical,
    symplectic_eigenvalues_raw,
    symplectic_spectrum_biquadratic,
    symplectic_spectrum_general,
)

# 40-digit mpmath evaluation of (x+1)log2(x+1) - x log2 x
G_ONE_THIRD = 1.081704165945510485
G_FOUR_THIRDS = 2.298865650746586736


def g_mp(x):
    mpmath.mp.dps = 40
    x = mpmath.mpf(x)
    if x == 0:
        return mpmath.mpf(0)
    return (x + 1) * mpmath.log(x + 1, 2) - x * mpmath.log(x, 2)


class TestGEntropy:
    def test_zero(self):
        assert g_entropy(0.0) == 0.0

    def test_one_is_two_bits(self):
        assert g_entropy(1.0) == pytest.approx(2.0, abs=1e-15)

    @pytest.mark.parametrize("x, expected", [(1 / 3, G_ONE_THIRD), (4 / 3, G_FOUR_THIRDS)])
    def test_frozen_values(self, x, expected):
        assert g_entropy(x) == pytest.approx(expected, rel=1e-14)

    @pytest.mark.parametrize("x", [1e-9, 1e-3, 0.25, 1.0, 7.5, 1e3, 1e6])
    def test_matches_high_precision(self, x):
        assert g_entropy(x) == pytest.approx(float(g_mp(x)), rel=1e-13)

    def test_below_cutoff_is_zero(self):
        assert g_entropy(1e-13) == 0.0

    def test_vectorized(self):
        out = g_entropy(np.array([0.0, 1.0, 1 / 3]))
        np.testing.assert_allclose(out, [0.0, 2.0, G_ONE_THIRD], rtol=1e-14)

    @pytest.mark.parametrize("bad", [-1e-3, np.nan, np.inf])
    def test_domain_errors(self, bad):
        with pytest.raises(DomainError):
            g_entropy(bad)

    @given(st.floats(1e-6, 1e3), st.floats(1e-3, 0.5))
    def test_increasing_and_concave(self, x, rel):
        h = rel * x
        left, mid, right = g_entropy(x - h), g_entropy(x), g_entropy(x + h)
        assert left < mid < right
        assert (right - 2 * mid + left) <= 1e-12 * max(1.0, mid)


class TestSpectra:
    def test_vacuum(self):
        gamma = 0.5 * np.eye(4)
        np.testing.assert_allclose(symplectic_spectrum_biquadratic(gamma), [0.5, 0.5])
        np.testing.assert_allclose(symplectic_spectrum_general(gamma), [0.5, 0.5])

    def test_single_mode_coherent(self):
        np.testing.assert_allclose(symplectic_spectrum_general(0.5 * np.eye(2)), [0.5])

    def test_single_mode_thermal_output(self):
        np.testing.assert_allclose(
            symplectic_spectrum_general((0.5 + 1 / 3) * np.eye(2)), [0.5 + 1 / 3], rtol=1e-14
        )

    @pytest.mark.parametrize("eta", [0.0, 0.19, 0.5, 1.0])
    @pytest.mark.parametrize("nbar", [0.01, 1.0, 100.0])
    def test_tmsv_is_pure(self, eta, nbar):
        gamma = input_covariance(InputStrategy(eta, 0.0, nbar))
        np.testing.assert_allclose(symplectic_spectrum_biquadratic(gamma), [0.5, 0.5], atol=1e-10)
        np.testing.assert_allclose(symplectic_spectrum_general(gamma), [0.5, 0.5], atol=1e-10)

    def test_output_state_example(self):
        eta, nbar, N, x = 0.19, 1.0, 1 / 3, 0.7
        c = np.sqrt(eta * nbar * (1 + eta * nbar))
        u, v = 0.5 + eta * nbar + N, c + x * N
        expected = np.sqrt(u * u - v * v)
        gamma = input_covariance(InputStrategy(eta, 0.0, nbar)) + noise_covariance(NoiseModel(N, x))
        np.testing.assert_allclose(symplectic_spectrum_biquadratic(gamma), [expected] * 2, rtol=1e-12)
        np.testing.assert_allclose(symplectic_spectrum_general(gamma), [expected] * 2, rtol=1e-12)

    @pytest.mark.parametrize("s", [1, 2, 3, 4])
    def test_general_recovers_constructed_spectrum(self, rng, s):
        for _ in range(50):
            gamma, nu = random_physical(rng, s)
            np.testing.assert_allclose(symplectic_spectrum_general(gamma), nu, rtol=1e-10)

    def test_biquadratic_recovers_constructed_spectrum(self, rng):
        for _ in range(200):
            gamma, nu = random_physical(rng, 2)
            np.testing.assert_allclose(symplectic_spectrum_biquadratic(gamma), nu, rtol=1e-10)

    def test_raw_eigenvalues_pair_up(self, rng):
        for _ in range(100):
            gamma, _ = random_physical(rng, 2)
            raw = symplectic_eigenvalues_raw(gamma)
            np.testing.assert_allclose(raw, -raw[::-1], atol=1e-10)

    def test_stacked_input(self, rng):
        pairs = [random_physical(rng, 2) for _ in range(10)]
        stack = np.stack([g for g, _ in pairs])
        np.testing.assert_allclose(
            symplectic_spectrum_general(stack), np.stack([nu for _, nu in pairs]), rtol=1e-10
        )

    def test_nonsymmetric_rejected(self):
        gamma = 0.5 * np.eye(4)
        gamma[0, 1] = 0.1
        with pytest.raises(ValidationError):
            symplectic_spectrum_general(gamma)

    @pytest.mark.parametrize("shape", [(3, 3), (4, 2), (6, 6)])
    def test_biquadratic_shape_errors(self, shape):
        with pytest.raises(ValidationError):
            symplectic_spectrum_biquadratic(np.eye(*shape))

    def test_biquadratic_negative_discriminant(self):
        # Δ = 0 and det γ = 1 give a discriminant of -4
        gamma = np.diag([1.0, -1.0, 1.0, -1.0])
        with pytest.raises(UnphysicalStateError):
            symplectic_spectrum_biquadratic(gamma)


class TestEntropy:
    def test_vacuum(self):
        assert entropy(0.5 * np.eye(2)) == 0.0

    def test_thermal(self):
        assert entropy((0.5 + 1 / 3) * np.eye(2)) == pytest.approx(G_ONE_THIRD, rel=1e-13)

    def test_tmsv_zero(self):
        assert abs(entropy(input_covariance(InputStrategy(0.6, 0.0, 2.0)))) < 1e-9

    def test_product_is_additive(self):
        gamma = np.diag([0.5 + 1 / 3] * 2 + [0.5 + 4 / 3] * 2)
        assert entropy(gamma) == pytest.approx(G_ONE_THIRD + G_FOUR_THIRDS, rel=1e-13)

    def test_unphysical_rejected(self):
        with pytest.raises(UnphysicalStateError):
            entropy(0.3 * np.eye(2))

    def test_is_physical(self):
        assert is_physical(0.5 * np.eye(4))
        assert not is_physical(0.4 * np.eye(4))


class TestBeamsplitter:
    def test_matrix_is_orthogonal_involution(self):
        bs = beamsplitter_matrix()
        np.testing.assert_allclose(bs @ bs.T, np.eye(4), atol=1e-15)
        np.testing.assert_allclose(bs @ bs, np.eye(4), atol=1e-15)

    def test_matrix_is_symplectic(self):
        bs = beamsplitter_matrix()
        omega = np.kron(np.eye(2), [[0.0, 1.0], [-1.0, 0.0]])
        np.testing.assert_allclose(bs @ omega @ bs.T, omega, atol=1e-15)

    def test_phase_sensitive_noise(self):
        N, x = 0.4, 0.7
        out = beamsplitter_transform(noise_covariance(NoiseModel(N, x, Pattern.PHASE_SENSITIVE)))
        np.testing.assert_allclose(
            out, np.diag([N * (1 - x), N * (1 + x), N * (1 + x), N * (1 - x)]), atol=1e-15
        )

    def test_symmetric_noise(self):
        N, x = 0.4, 0.7
        out = beamsplitter_transform(noise_covariance(NoiseModel(N, x, Pattern.SYMMETRIC)))
        np.testing.assert_allclose(
            out, np.diag([N * (1 - x), N * (1 - x), N * (1 + x), N * (1 + x)]), atol=1e-15
        )

    def test_isotropic_invariant(self):
        np.testing.assert_allclose(beamsplitter_transform(2.5 * np.eye(4)), 2.5 * np.eye(4), atol=1e-15)

    def test_preserves_spectrum_and_entropy(self, rng):
        for _ in range(200):
            gamma, _ = random_physical(rng, 2)
            rotated = beamsplitter_transform(gamma)
            np.testing.assert_allclose(
                symplectic_spectrum_general(rotated), symplectic_spectrum_general(gamma), rtol=1e-10
            )
            assert entropy(rotated) == pytest.approx(entropy(gamma), abs=1e-10)

    def test_wrong_dimension(self):
        with pytest.raises(ValidationError):
            beamsplitter_transform(np.eye(2))


@settings(max_examples=200, deadline=None)
@given(
    st.floats(0.5, 5.0),
    st.floats(0.5, 5.0),
    st.floats(-1.5, 1.5),
    st.floats(-1.5, 1.5),
)
def test_biquadratic_matches_general_on_correlated_thermal(nu1, nu2, r1, r2):
    # two thermal modes, locally squeezed, then mixed on the beam splitter
    sq = np.diag([np.exp(r1), np.exp(-r1), np.exp(r2), np.exp(-r2)])
    bs = beamsplitter_matrix()
    S = bs @ sq
    gamma = S @ np.diag([nu1, nu1, nu2, nu2]) @ S.T
    gamma = (gamma + gamma.T) / 2
    np.testing.assert_allclose(
        symplectic_spectrum_biquadratic(gamma), sorted([nu1, nu2], reverse=True), rtol=1e-9
    )
    np.testing.assert_allclose(
        symplectic_spectrum_general(gamma), symplectic_spectrum_biquadratic(gamma), rtol=1e-9
    )
