"""Log-gamma and the Airy function Ai on the real line.

Both routines return a :class:`CertifiedValue` carrying a conservative
absolute error bound (truncation magnitude times a safety factor of 10).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from decimal import Decimal, localcontext

import numpy as np

__all__ = [
    "CertifiedValue",
    "DomainError",
    "ln_gamma",
    "airy_ai",
    "airy_ai_array",
    "airy_ai_series",
    "airy_ai_asymptotic",
    "AIRY_MAX_ABS_X",
    "AIRY_SERIES_CUTOFF",
]

SAFETY = 10.0
EPS = np.finfo(float).eps

AIRY_MAX_ABS_X = 1.0e3
AIRY_SERIES_CUTOFF = 8.0
_SERIES_DIGITS = 60

# Ai(0) = 3^(-2/3)/Gamma(2/3) and -Ai'(0) = 3^(-1/3)/Gamma(1/3)
_AI0 = "0.355028053887817239260063186004183176397979174199177240583327"
_MAI1 = "0.258819403792806798405183560189203963479091138354934582210002"

# B_2k / (2k (2k - 1)) for k = 1..8
_STIRLING = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360360.0,
    1.0 / 156.0,
    -3617.0 / 122400.0,
)
_STIRLING_NEXT = 43867.0 / 244188.0
_STIRLING_MIN_X = 10.0
_HALF_LN_2PI = 0.5 * math.log(2.0 * math.pi)


class DomainError(ValueError):
    """Argument outside the supported domain of a special function."""


@dataclass(frozen=True)
class CertifiedValue:
    value: float
    abs_error_bound: float

    def __post_init__(self):
        if not (math.isfinite(self.abs_error_bound) and self.abs_error_bound >= 0.0):
            raise ValueError(f"invalid error bound {self.abs_error_bound!r}")

    def __float__(self):
        return float(self.value)


def _stirling(x):
    x2 = x * x
    s = 0.0
    xp = x
    for c in _STIRLING:
        s += c / xp
        xp *= x2
    val = (x - 0.5) * math.log(x) - x + _HALF_LN_2PI + s
    trunc = _STIRLING_NEXT / xp
    rounding = 4.0 * EPS * (abs((x - 0.5) * math.log(x)) + x)
    return val, SAFETY * (trunc + rounding)


def ln_gamma(x: float) -> CertifiedValue:
    """Natural log of Gamma(x) for real x > 0.

    Stirling's series with eight Bernoulli corrections for x >= 10; smaller
    arguments are shifted upward with Gamma(x + 1) = x Gamma(x).
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"ln_gamma requires finite x > 0, got {x!r}")
    if x >= _STIRLING_MIN_X:
        val, err = _stirling(x)
        return CertifiedValue(val, float(err))
    shift = math.ceil(_STIRLING_MIN_X - x)
    prod = 1.0
    for j in range(shift):
        prod *= x + j
    big, err = _stirling(x + shift)
    log_prod = math.log(prod)
    err += SAFETY * EPS * (shift * abs(log_prod) + abs(big))
    return CertifiedValue(big - log_prod, float(err))


def _check_airy_domain(x):
    if not math.isfinite(x) or abs(x) > AIRY_MAX_ABS_X:
        raise DomainError(
            f"airy_ai supports x in [-{AIRY_MAX_ABS_X:g}, {AIRY_MAX_ABS_X:g}], got {x!r}")


def airy_ai_series(x: float) -> CertifiedValue:
    """Maclaurin series of Ai summed in 60-digit decimal arithmetic.

    Ai(x) = Ai(0) f(x) + Ai'(0) g(x) with
    f = sum 3^k (1/3)_k x^(3k)/(3k)!, g = sum 3^k (2/3)_k x^(3k+1)/(3k+1)!.
    The extended precision absorbs the cancellation between f and g, which
    reaches e^(2/3 |x|^(3/2)) at the ends of the series range.
    """
    x = float(x)
    _check_airy_domain(x)
    with localcontext() as ctx:
        ctx.prec = _SERIES_DIGITS
        dx = Decimal(x)
        x3 = dx * dx * dx
        c1 = Decimal(_AI0)
        c2 = Decimal(_MAI1)
        a = c1
        b = -c2 * dx
        total = a + b
        biggest = abs(a) + abs(b)
        tiny = Decimal(10) ** (-_SERIES_DIGITS)
        k = 0
        while True:
            k += 1
            a = a * x3 / ((3 * k - 1) * (3 * k))
            b = b * x3 / ((3 * k) * (3 * k + 1))
            step = a + b
            total += step
            mag = abs(a) + abs(b)
            if mag > biggest:
                biggest = mag
            # terms shrink monotonically once 3k exceeds |x|^(3/2)
            if k > 3 and mag <= tiny * (abs(total) + tiny) and 9 * k * k > abs(x3):
                break
        value = float(total)
        rounding = float(biggest) * 10.0 ** (5 - _SERIES_DIGITS)
        err = SAFETY * (float(mag) + rounding) + EPS * abs(value)
    return CertifiedValue(value, float(err))


def _asymptotic_terms(zeta, kmax=200):
    """u_k / zeta^k truncated just before the smallest term."""
    terms = [1.0]
    prev = 1.0
    for k in range(1, kmax):
        t = prev * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k * zeta)
        if t >= prev:
            break
        terms.append(t)
        prev = t
    return terms, prev


def airy_ai_asymptotic(x: float) -> CertifiedValue:
    """Large-|x| expansions of Ai, truncated at the smallest term.

    For x > 0 the exponentially decaying form is used; for x < 0 the
    sine/cosine form with the two alternating subseries.  The error bound
    for x < 0 is scaled by the envelope pi^(-1/2) |x|^(-1/4).
    """
    x = float(x)
    _check_airy_domain(x)
    if x == 0.0:
        raise DomainError("asymptotic expansion of Ai is not defined at x = 0")
    ax = abs(x)
    zeta = 2.0 / 3.0 * ax ** 1.5
    terms, smallest = _asymptotic_terms(zeta)
    if x > 0:
        s = 0.0
        for k, t in enumerate(terms):
            s += -t if k % 2 else t
        pref = math.exp(-zeta) / (2.0 * math.sqrt(math.pi) * ax ** 0.25)
        value = pref * s
        err = SAFETY * pref * (smallest + 4.0 * EPS * (1.0 + zeta))
        # deep decay: the true value sits below the smallest subnormal
        return CertifiedValue(value, max(float(err), math.ulp(0.0)))
    even = 0.0
    odd = 0.0
    for k, t in enumerate(terms):
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            odd += sign * t
        else:
            even += sign * t
    phase = zeta - math.pi / 4.0
    env = 1.0 / (math.sqrt(math.pi) * ax ** 0.25)
    value = env * (math.cos(phase) * even + math.sin(phase) * odd)
    # phase rounding grows with zeta
    err = SAFETY * env * (smallest + 4.0 * EPS * (1.0 + zeta))
    return CertifiedValue(value, float(err))


def airy_ai(x: float) -> CertifiedValue:
    """Airy function Ai(x) for real x in [-1000, 1000]."""
    x = float(x)
    _check_airy_domain(x)
    if abs(x) <= AIRY_SERIES_CUTOFF:
        return airy_ai_series(x)
    return airy_ai_asymptotic(x)


def _asymptotic_array(x):
    """Vectorised asymptotic branch for |x| > cutoff (no error bounds)."""
    ax = np.abs(x)
    zeta = 2.0 / 3.0 * ax ** 1.5
    neg = x < 0
    even = np.ones_like(x)
    odd = np.zeros_like(x)
    alt = np.ones_like(x)  # for x > 0: plain alternating sum
    alt_sum = np.ones_like(x)
    prev = np.ones_like(x)
    active = np.ones(x.shape, dtype=bool)
    for k in range(1, 200):
        t = prev * ((6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216.0 * k)) / zeta
        active &= t < prev
        if not active.any():
            break
        tk = np.where(active, t, 0.0)
        alt = -alt
        alt_sum += alt * tk
        sign = -1.0 if (k // 2) % 2 else 1.0
        if k % 2:
            odd += sign * tk
        else:
            even += sign * tk
        prev = np.where(active, t, prev)
    out = np.empty_like(x)
    pos = ~neg
    if pos.any():
        out[pos] = (np.exp(-zeta[pos]) / (2.0 * math.sqrt(math.pi) * ax[pos] ** 0.25)
                    * alt_sum[pos])
    if neg.any():
        ph = zeta[neg] - math.pi / 4.0
        out[neg] = (np.cos(ph) * even[neg] + np.sin(ph) * odd[neg]) / (
            math.sqrt(math.pi) * ax[neg] ** 0.25)
    return out


def airy_ai_array(x) -> np.ndarray:
    """Ai evaluated elementwise; same branches as :func:`airy_ai`."""
    x = np.asarray(x, dtype=float)
    flat = x.ravel()
    if flat.size and (not np.all(np.isfinite(flat)) or np.max(np.abs(flat)) > AIRY_MAX_ABS_X):
        raise DomainError("airy_ai_array argument outside [-1000, 1000]")
    out = np.empty_like(flat)
    near = np.abs(flat) <= AIRY_SERIES_CUTOFF
    for i in np.flatnonzero(near):
        out[i] = airy_ai_series(flat[i]).value
    far = ~near
    if far.any():
        out[far] = _asymptotic_array(flat[far])
    return out.reshape(x.shape)
