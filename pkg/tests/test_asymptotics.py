import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from hermite_renyi.asymptotics import (
    AsymptoticPrediction, Caveat, PoleError, Regime, RegimeTag, c_constant, classify_regime, degree_of,
    moment_index, orthogonal_log_shift, predict_moment, predict_renyi,
)
from hermite_renyi.hermite import Normalization
from hermite_renyi.quadrature import DivergenceError

ON, OG = Normalization.ORTHONORMAL, Normalization.ORTHOGONAL
N6 = 10**6


def lead(n, p, norm=ON, constants="default"):
    return predict_moment(n, p, norm, constants).log_leading


class TestRegime:
    @pytest.mark.parametrize("p, tag", [
        (0.5, RegimeTag.SUBCRITICAL), (2 - 2e-9, RegimeTag.SUBCRITICAL), (2 - 5e-10, RegimeTag.CRITICAL),
        (2.0, RegimeTag.CRITICAL), (2 + 5e-10, RegimeTag.CRITICAL), (2 + 2e-9, RegimeTag.SUPERCRITICAL),
    ])
    def test_classification(self, p, tag):
        assert classify_regime(p).tag is tag

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            classify_regime(0.0)

    def test_caveat_tied_to_critical(self):
        with pytest.raises(ValueError):
            AsymptoticPrediction(0.0, Regime(RegimeTag.SUBCRITICAL, 1.5), ON, Caveat.UNKNOWN_ADDITIVE_O1)
        with pytest.raises(ValueError):
            AsymptoticPrediction(0.0, Regime(RegimeTag.CRITICAL, 2.0), ON, Caveat.EXACT_CONSTANT)
        assert predict_moment(100, 2.0).caveat is Caveat.UNKNOWN_ADDITIVE_O1
        assert predict_moment(100, 1.5).caveat is Caveat.EXACT_CONSTANT


class TestCConstant:
    def test_p_one(self):
        assert abs(c_constant(1.0).value - 1.0) <= 1e-11

    def test_p_half(self):
        # the quoted 1.21720 is rounded; the value is 1.2171885
        assert abs(c_constant(0.5).value - 1.21720) <= 2e-5

    @given(st.floats(0.01, 1.999))
    def test_against_mpmath(self, p):
        ref = (mpmath.mpf(2) / mpmath.pi) ** p * mpmath.gamma(p + 0.5) / mpmath.gamma(p + 1) \
            * mpmath.gamma(1 - p / 2) / mpmath.gamma(1.5 - p / 2)
        c = c_constant(p)
        assert abs(c.value / float(ref) - 1) <= 1e-11
        assert abs(c.value - float(ref)) <= c.abs_error_bound + 1e-16 * c.value

    def test_near_pole(self):
        assert 20 < c_constant(1.99).value < math.inf
        with pytest.raises(PoleError):
            c_constant(2.0)
        with pytest.raises(PoleError):
            c_constant(3.0)
        with pytest.raises(ValueError):
            c_constant(0.0)


class TestPredictMoment:
    def test_subcritical_example(self):
        assert abs(lead(100, 0.5) - math.log(1.21720 * 200 ** 0.25)) <= 1e-4

    def test_index_helpers(self):
        assert moment_index(0) == 1 and degree_of(moment_index(41)) == 41

    def test_rejects_bad_n(self):
        with pytest.raises(ValueError):
            predict_moment(1, 0.5)
        with pytest.raises(ValueError):
            predict_moment(10, 0.5, constants="other")

    def test_normalization_consistency_large_n(self):
        diff = lead(N6, 0.5, OG) - orthogonal_log_shift(N6, 0.5) - lead(N6, 0.5, ON)
        assert abs(diff) <= 1e-3

    @pytest.mark.parametrize("p", [0.5, 3.0])
    def test_normalization_coherence(self, p):
        ns = [10, 30, 100, 300, 1000]
        rem = [abs(lead(n, p, OG) - orthogonal_log_shift(n, p) - lead(n, p, ON)) for n in ns]
        assert all(b < a for a, b in zip(rem, rem[1:]))

    def test_supercritical_guard(self):
        with pytest.raises(DivergenceError):
            predict_moment(100, 2.005)

    def test_subcritical_blowup_is_logarithmic(self):
        # c_p ~ 1 / (2 - p): the distance to the critical term grows like ln(1/delta)
        crit = lead(N6, 2.0)
        v = [lead(N6, 2 - d) - crit + math.log(d) for d in (1e-3, 1e-4, 1e-5)]
        assert abs(v[1] - v[0]) < 0.01 and abs(v[2] - v[1]) < 0.002

    @pytest.mark.xfail(strict=True, reason="sub-critical minus critical grows like ln(1/delta)")
    def test_branches_approach_critical(self):
        crit = lead(N6, 2.0)
        gaps = [abs(lead(N6, 2 - d) - crit) for d in (1e-2, 1e-3, 1e-4)]
        assert gaps[0] > gaps[1] > gaps[2]

    @pytest.mark.xfail(strict=True, raises=DivergenceError,
                       reason="p = 2 + 1e-3 lies inside the C_p pole guard")
    def test_gap_minus_lnln_stable(self):
        g = [abs(lead(N6, 2 - d) - lead(N6, 2 + d)) - math.log(math.log(N6)) for d in (1e-2, 1e-3, 1e-4)]
        assert max(g) - min(g) < 0.1

    def test_rederived_branches_meet(self):
        """With the rederived super-critical prefactor the two branches share
        the 1/|p - 2| blow-up and their mismatch vanishes linearly."""
        mism = [abs(lead(N6, 2 - d) - lead(N6, 2 + d, constants="rederived")) for d in (0.05, 0.02, 0.011)]
        assert mism[0] > mism[1] > mism[2]
        assert all(m / d < 15 for m, d in zip(mism, (0.05, 0.02, 0.011)))
        default = abs(lead(N6, 2 - 0.011) - lead(N6, 2.011))
        assert default > 0.5

    def test_critical_n_exponent(self):
        a, b = lead(10**8, 2.0), lead(10**10, 2.0)
        slope = (b - a) / math.log(100)
        expected = -0.5 + (math.log(math.log(1e10)) - math.log(math.log(1e8))) / math.log(100)
        assert abs(slope - expected) <= 1e-12


class TestPredictRenyi:
    def test_large_n_example(self):
        r = predict_renyi(10**12, 1.5)
        assert abs(r - 13.92) < 0.005
        assert abs(r - (0.5 * math.log(2e12) - 2 * math.log(c_constant(1.5).value))) <= 1e-9

    def test_p3_slope(self):
        a, b = predict_renyi(10**6, 3.0), predict_renyi(10**9, 3.0)
        assert abs((b - a) / math.log(1e3) - 1 / 3) <= 1e-12

    def test_ordering(self):
        n = 10**10
        assert predict_renyi(n, 1.5) > predict_renyi(n, 2.0) > predict_renyi(n, 3.0)

    @pytest.mark.parametrize("p", [1.5, 2.0, 3.0])
    def test_monotone(self, p):
        ns = np.unique(np.round(np.logspace(2, 12, 80)).astype(np.int64))
        r = [predict_renyi(int(n), p) for n in ns]
        assert all(b > a for a, b in zip(r, r[1:]))

    def test_shannon_rejected(self):
        with pytest.raises(ValueError):
            predict_renyi(100, 1.0)
