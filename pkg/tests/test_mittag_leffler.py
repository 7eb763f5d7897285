import math

import mpmath as mp
import numpy as np
import pytest
from scipy.special import erfc

from abcfde import MlParams, ml_one, ml_prabhakar, ml_two, pochhammer
from abcfde.errors import NonConvergence


def mp_series(alpha, beta, rho, z, terms=500):
    """Independent extended-precision oracle: direct partial sum."""
    with mp.workdps(50):
        s = mp.mpf(0)
        for k in range(terms):
            s += (
                mp.rf(rho, k)
                / mp.gamma(alpha * k + beta)
                * mp.power(z, k)
                / mp.factorial(k)
            )
        return float(s)


class TestPochhammer:
    def test_k_zero_is_one(self):
        assert pochhammer(2.5, 0) == 1.0

    def test_rising_factorial(self):
        assert pochhammer(3.0, 4) == 360.0  # 3*4*5*6

    def test_one_gives_factorial(self):
        assert pochhammer(1.0, 6) == 720.0

    def test_negative_k_rejected(self):
        with pytest.raises(ValueError):
            pochhammer(1.0, -1)

    def test_overflow_permitted(self):
        assert pochhammer(1e300, 3) == math.inf


class TestPrabhakar:
    def test_z_zero(self):
        assert ml_prabhakar(0.7, 1.3, 1.0, 0.0) == pytest.approx(
            1.0 / math.gamma(1.3), abs=1e-15
        )

    def test_collapses_to_exp_times(self):
        # E^2_{1,1}(z) = e^z (1 + z); partial-sum oracle at z = 1
        oracle = mp_series(1.0, 1.0, 2.0, 1.0, terms=200)
        assert oracle == pytest.approx(2.0 * math.e, abs=1e-13)
        assert ml_prabhakar(1.0, 1.0, 2.0, 1.0) == pytest.approx(oracle, abs=1e-12)

    def test_half_order_erfc_identity(self):
        # E_{1/2}(z) = exp(z^2) erfc(-z), evaluated independently
        expected = math.e * erfc(1.0)
        assert ml_prabhakar(0.5, 1.0, 1.0, -1.0) == pytest.approx(expected, abs=1e-12)

    def test_invalid_params(self):
        for alpha, beta, rho in [(0.0, 1.0, 1.0), (1.0, 0.0, 1.0), (1.0, 1.0, -1.0)]:
            with pytest.raises(ValueError):
                ml_prabhakar(alpha, beta, rho, 0.5)

    def test_rho_zero_is_constant(self):
        assert ml_prabhakar(0.5, 1.5, 0.0, 3.0) == pytest.approx(
            1.0 / math.gamma(1.5), abs=1e-15
        )

    def test_large_argument_raises(self):
        with pytest.raises(NonConvergence):
            ml_prabhakar(0.5, 1.0, 1.0, 101.0)


class TestTwoParameter:
    def test_exp_minus_one(self):
        assert ml_two(1.0, 2.0, 1.0) == pytest.approx(math.e - 1.0, abs=1e-13)

    def test_cosine_zero(self):
        x = math.pi / 2.0
        assert ml_two(2.0, 1.0, -(x**2)) == pytest.approx(0.0, abs=1e-10)

    def test_leading_term(self):
        assert ml_two(0.9, 1.1, 0.0) == pytest.approx(1.0 / math.gamma(1.1), abs=1e-15)


class TestOneParameter:
    def test_exponential(self):
        assert ml_one(1.0, 1.0) == pytest.approx(math.e, abs=1e-13)

    def test_at_zero(self):
        assert ml_one(0.5, 0.0) == 1.0

    def test_against_extended_precision(self):
        oracle = mp_series(0.6, 1.0, 1.0, -2.0)
        value = ml_one(0.6, -2.0)
        assert 0.0 < value < 1.0
        assert value == pytest.approx(oracle, abs=1e-12)


class TestProperties:
    ALPHAS = [0.3, 0.7, 1.1, 1.5, 1.9]
    BETAS = [0.3, 0.7, 1.1, 1.5, 1.9]
    ZS = [-5.0, -2.0, -0.5, 0.0, 0.5, 2.0, 5.0]

    def test_reduction_chain(self):
        for a in self.ALPHAS:
            for b in self.BETAS:
                for z in self.ZS:
                    assert abs(ml_prabhakar(a, b, 1.0, z) - ml_two(a, b, z)) <= 1e-12
            for z in self.ZS:
                assert abs(ml_two(a, 1.0, z) - ml_one(a, z)) <= 1e-12

    def test_recurrence(self):
        # E_{a,b}(z) = z E_{a,a+b}(z) + 1/Gamma(b)
        for a in self.ALPHAS:
            for b in self.BETAS:
                for z in self.ZS:
                    lhs = ml_two(a, b, z)
                    rhs = z * ml_two(a, a + b, z) + 1.0 / math.gamma(b)
                    # values reach ~1e92 at small alpha and z = 5, so the
                    # tolerance has to be relative there
                    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-10)

    def test_exponential_case(self):
        for z in np.linspace(-10.0, 10.0, 21):
            assert abs(ml_one(1.0, z) - math.exp(z)) <= 1e-11

    def test_complete_monotonicity_proxy(self):
        # the series needs ~|z|^(1/alpha) terms, so the sampled range
        # shrinks with alpha
        for a, tmax in [(0.3, 2.0), (0.5, 8.0), (0.8, 15.0), (1.0, 20.0)]:
            ts = np.linspace(0.0, tmax, 81)
            vals = [ml_one(a, -t) for t in ts]
            assert all(v > 0.0 for v in vals)
            assert all(v1 <= v0 + 1e-13 for v0, v1 in zip(vals, vals[1:]))


def test_params_object_evaluates():
    p = MlParams(alpha=1.0)
    assert p(1.0) == pytest.approx(math.e, abs=1e-13)
