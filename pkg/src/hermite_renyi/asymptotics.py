"""Large-n predictors for entropic moments of Hermite densities.

Predictor index convention: ``predict_moment(n, ...)`` describes the density
of the degree ``n - 1`` polynomial.  Use :func:`moment_index` and
:func:`degree_of` to convert.

Two sets of prefactors are available.  ``"default"`` uses

    p < 2:  c_p (2n)^((1-p)/2)
    p = 2:  2 pi^-2 (2n)^(-1/2) ln n
    p > 2:  2 C_p (2 pi)^(-p) (2n)^(-(p+1)/6)

(orthonormal form).  ``"rederived"`` keeps the p < 2 branch and replaces the
other two by pi^-2 (2n)^(-1/2) ln n and C_p pi^-p (2n)^(-(p+1)/6), which is
what integrating the turning-point Airy layer at both x = +-sqrt(2n) gives;
these are the prefactors the quadrature converges to.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .hermite import Normalization, log_hermite_norm
from .quadrature import DivergenceError, airy_constant
from .special import CertifiedValue, ln_gamma

__all__ = [
    "RegimeTag",
    "Regime",
    "Caveat",
    "AsymptoticPrediction",
    "PoleError",
    "CONSTANT_SETS",
    "c_constant",
    "classify_regime",
    "predict_moment",
    "predict_renyi",
    "moment_index",
    "degree_of",
    "orthogonal_log_shift",
]

REGIME_WIDTH = 1e-9
CONSTANT_SETS = ("default", "rederived")
_LN2 = math.log(2.0)
_LNPI = math.log(math.pi)


class PoleError(ValueError):
    """c_p is infinite at p = 2 (and undefined beyond)."""


class RegimeTag(str, enum.Enum):
    SUBCRITICAL = "subcritical"
    CRITICAL = "critical"
    SUPERCRITICAL = "supercritical"


class Caveat(str, enum.Enum):
    EXACT_CONSTANT = "exact-constant"
    UNKNOWN_ADDITIVE_O1 = "unknown-additive-O(1)"


@dataclass(frozen=True)
class Regime:
    tag: RegimeTag
    p: float


def classify_regime(p: float) -> Regime:
    if not p > 0:
        raise ValueError(f"p must be positive, got {p!r}")
    if abs(p - 2.0) <= REGIME_WIDTH:
        return Regime(RegimeTag.CRITICAL, p)
    return Regime(RegimeTag.SUBCRITICAL if p < 2.0 else RegimeTag.SUPERCRITICAL, p)


@dataclass(frozen=True)
class AsymptoticPrediction:
    log_leading: float
    regime: Regime
    normalization: Normalization
    caveat: Caveat
    constant_rel_error: float = 0.0

    def __post_init__(self):
        critical = self.regime.tag is RegimeTag.CRITICAL
        if critical != (self.caveat is Caveat.UNKNOWN_ADDITIVE_O1):
            raise ValueError("the O(1) caveat applies exactly to the critical regime")


def moment_index(degree: int) -> int:
    """Predictor index for a given polynomial degree."""
    return int(degree) + 1


def degree_of(n: int) -> int:
    """Polynomial degree described by predictor index n."""
    return int(n) - 1


def c_constant(p: float) -> CertifiedValue:
    """(2/pi)^p Gamma(p+1/2)/Gamma(p+1) * Gamma(1-p/2)/Gamma(3/2-p/2), 0 < p < 2."""
    if not p > 0:
        raise ValueError(f"c_p needs p > 0, got {p!r}")
    if p >= 2.0:
        raise PoleError(f"c_p has a pole at p = 2 (got p = {p})")
    parts = (ln_gamma(p + 0.5), ln_gamma(p + 1.0), ln_gamma(1.0 - 0.5 * p), ln_gamma(1.5 - 0.5 * p))
    log_c = p * math.log(2.0 / math.pi) + parts[0].value - parts[1].value + parts[2].value - parts[3].value
    log_err = sum(g.abs_error_bound for g in parts) + 4e-16 * (1.0 + abs(log_c))
    value = math.exp(log_c)
    return CertifiedValue(value, value * math.expm1(log_err))


def _log_c(p):
    c = c_constant(p)
    return math.log(c.value), c.abs_error_bound / c.value


def predict_moment(n: int, p: float, normalization=Normalization.ORTHONORMAL,
                   constants: str = "default", tol: float = 1e-10) -> AsymptoticPrediction:
    """Leading large-n term of log W_p for the density of degree n - 1."""
    if int(n) != n or n < 2:
        raise ValueError(f"predictor index n must be an integer >= 2, got {n!r}")
    if constants not in CONSTANT_SETS:
        raise ValueError(f"constants must be one of {CONSTANT_SETS}, got {constants!r}")
    normalization = Normalization(normalization)
    regime = classify_regime(p)
    n = int(n)
    l2n = math.log(2.0 * n)
    orthogonal = normalization is Normalization.ORTHOGONAL
    rel = 0.0
    if regime.tag is RegimeTag.SUBCRITICAL:
        log_c, rel = _log_c(p)
        if orthogonal:
            val = log_c + p * _LNPI + (p * (n - 1) + 0.5) * l2n - p * n
        else:
            val = log_c + 0.5 * (1.0 - p) * l2n
        caveat = Caveat.EXACT_CONSTANT
    elif regime.tag is RegimeTag.CRITICAL:
        lead = _LN2 if constants == "default" else 0.0
        if orthogonal:
            val = lead + (2.0 * n - 1.5) * l2n - 2.0 * n + math.log(math.log(n))
        else:
            val = lead - 2.0 * _LNPI - 0.5 * l2n + math.log(math.log(n))
        caveat = Caveat.UNKNOWN_ADDITIVE_O1
    else:
        if p <= 2.01:
            raise DivergenceError(f"C_p is not resolved for p <= 2.01 (got p = {p})")
        cp = airy_constant(float(p), tol)
        log_cp = math.log(cp.value)
        rel = cp.abs_error_bound / cp.value
        shift = 0.0 if constants == "default" else (p - 1.0) * _LN2
        if orthogonal:
            val = _LN2 + log_cp - p * _LN2 + (p * (n - 2.0 / 3.0) - 1.0 / 6.0) * l2n - p * n
        else:
            val = _LN2 + log_cp - p * math.log(2.0 * math.pi) - (p + 1.0) / 6.0 * l2n
        val += shift
        caveat = Caveat.EXACT_CONSTANT
    return AsymptoticPrediction(val, regime, normalization, caveat, rel)


def predict_renyi(n: int, p: float, normalization=Normalization.ORTHONORMAL,
                  constants: str = "default", tol: float = 1e-10) -> float:
    """R_p = log W_p / (1 - p) from the leading term."""
    if abs(p - 1.0) <= 1e-9:
        raise ValueError("p = 1 (Shannon limit) is not supported")
    pred = predict_moment(n, p, normalization, constants, tol)
    return pred.log_leading / (1.0 - p)


def orthogonal_log_shift(n: int, p: float) -> float:
    """p ln h_{n-1}: the log gap between the two normalisations."""
    return p * log_hermite_norm(n - 1)
