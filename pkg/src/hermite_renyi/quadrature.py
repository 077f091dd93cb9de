"""Adaptive panel quadrature of powers of Hermite densities and of Ai^2.

Panels follow the oscillations: the zeros of H_n (from the Jacobi matrix)
are panel ends, each zero-to-zero gap is halved, and near the turning point
x^2 = 2n the width is clamped.  Every panel is integrated with 16-point
Gauss-Legendre and checked against 8-point Gauss-Legendre; panels that
disagree are bisected.  Integrands are handled as logarithms and
exponentiated only after subtracting the per-panel maximum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .hermite import Normalization, Zone, ZoneMap, hermite_zeros, log_abs_psi, log_hermite_norm
from .special import CertifiedValue, airy_ai_array, ln_gamma

__all__ = [
    "ConvergenceError",
    "DivergenceError",
    "LogMoment",
    "PanelPlan",
    "plan_panels",
    "entropic_moment",
    "zone_integrals",
    "airy_constant",
    "airy_power_integral",
    "NODES_PER_PANEL",
    "PANEL_BUDGET",
]

NODES_PER_PANEL = 16
PANEL_BUDGET = 1_000_000
_X16, _W16 = np.polynomial.legendre.leggauss(16)
_X8, _W8 = np.polynomial.legendre.leggauss(8)
_LN2 = math.log(2.0)


class ConvergenceError(RuntimeError):
    """Adaptive refinement exhausted its panel budget."""


class DivergenceError(ValueError):
    """Requested integral diverges (or is too close to a pole to resolve)."""


@dataclass(frozen=True)
class LogMoment:
    """A positive quantity stored as its natural logarithm."""

    log_value: float
    rel_error_estimate: float = 0.0

    def __add__(self, other: "LogMoment") -> "LogMoment":
        if not isinstance(other, LogMoment):
            return NotImplemented
        total = float(np.logaddexp(self.log_value, other.log_value))
        if total == -math.inf:
            return LogMoment(total, 0.0)
        wa = math.exp(self.log_value - total)
        wb = math.exp(other.log_value - total)
        return LogMoment(total, wa * self.rel_error_estimate + wb * other.rel_error_estimate)

    @property
    def value(self) -> float:
        return math.exp(self.log_value)


def _logsumexp(values) -> float:
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return -math.inf
    m = float(np.max(values))
    if m == -math.inf:
        return m
    return m + math.log(float(np.sum(np.exp(values - m))))


@dataclass(frozen=True)
class PanelPlan:
    n: int
    p: float
    cut_off: float
    edges: np.ndarray = field(repr=False, compare=False)
    nodes_per_panel: int = NODES_PER_PANEL
    tail_log_bound: float = -math.inf

    @property
    def panels(self) -> list[tuple[float, float]]:
        return list(zip(self.edges[:-1].tolist(), self.edges[1:].tolist()))

    @property
    def widths(self) -> np.ndarray:
        return np.diff(self.edges)


def _log_density(n, x, normalization):
    lm, _ = log_abs_psi(n, x)
    out = 2.0 * lm
    if normalization is Normalization.ORTHOGONAL:
        out = out + log_hermite_norm(n)
    return out


def _turning_clamp(n, m_cut):
    if n == 0:
        return 0.25
    return (m_cut * n ** (1.0 / 3.0) / math.sqrt(2.0 * n)) / 32.0


def _refine(edges, max_width_fn):
    """Split every panel into equal parts so each obeys max_width_fn."""
    a, b = edges[:-1], edges[1:]
    limit = max_width_fn(a, b)
    pieces = np.maximum(1, np.ceil((b - a) / limit - 1e-9).astype(int))
    out = [edges[:1]]
    for lo, hi, k in zip(a, b, pieces):
        out.append(lo + (hi - lo) * np.arange(1, k + 1) / k)
    res = np.concatenate(out)
    res[-1] = edges[-1]
    return res


def _find_cut_off(n, p, tol, start, log_w_floor):
    """Smallest grid point X > sqrt(2n+1) whose tail bound is below tol.

    Past the turning point psi'/psi <= -sqrt(x^2 - 2n - 1), so the tail of
    rho^p beyond X is at most rho(X)^p / (2p sqrt(X^2 - 2n - 1)).
    """
    turn = math.sqrt(2.0 * n + 1.0)
    lo = max(start, turn)
    step = 0.25 / (1.0 + n) ** (1.0 / 6.0)
    target = math.log(tol) + log_w_floor - math.log(10.0)
    span = 8.0
    while True:
        xs = lo + step * np.arange(1, int(span / step) + 1)
        logrho = 2.0 * log_abs_psi(n, xs)[0]
        gap = np.sqrt(xs * xs - turn * turn)
        bound = p * logrho - np.log(2.0 * p * gap)
        ok = np.flatnonzero(bound <= target)
        if ok.size:
            i = ok[0]
            return float(xs[i]), float(bound[i] - log_w_floor)
        lo = float(xs[-1])
        span *= 2.0
        if lo > turn + 1e4:
            raise ConvergenceError("could not bound the density tail")


def plan_panels(n: int, p: float, tol: float = 1e-10, zone_map: ZoneMap | None = None,
                m_cut: float = 2.0) -> PanelPlan:
    """Panel layout on [0, cut_off] for the integral of rho_n^p."""
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    if not p > 0:
        raise ValueError(f"p must be positive, got {p!r}")
    if not 1e-12 < tol < 1e-2:
        raise ValueError(f"tol must lie in (1e-12, 1e-2), got {tol!r}")
    n = int(n)
    zeros = hermite_zeros(n)
    zeros = zeros[zeros > 1e-12]
    last = float(zeros[-1]) if zeros.size else 0.0
    edges = np.concatenate([[0.0], zeros])
    if edges.size > 1:
        # halve each zero-to-zero gap; midpoints sit near extrema, not zeros
        mids = 0.5 * (edges[:-1] + edges[1:])
        edges = np.sort(np.concatenate([edges, mids]))

    clamp = _turning_clamp(n, m_cut)
    # crude lower estimate of W from the outermost lobes, for the tail target
    lo_probe = max(0.0, last - 6.0 * math.pi / math.sqrt(2.0 * n + 1.0)) if n else 0.0
    probe = np.linspace(lo_probe, math.sqrt(2.0 * n + 1.0) + 1.0, 400)
    lr = 2.0 * log_abs_psi(n, probe)[0]
    log_w_floor = _logsumexp(p * lr) + math.log(probe[1] - probe[0]) - math.log(4.0)
    cut_off, tail_rel = _find_cut_off(n, p, tol, last, log_w_floor)

    tail = np.arange(last, cut_off, clamp)[1:]
    edges = np.concatenate([edges, tail, [cut_off]])
    edges = edges[np.concatenate([[True], np.diff(edges) > 1e-12])]
    edges[-1] = cut_off

    two_n = 2.0 * n
    band = m_cut * n ** (1.0 / 3.0) if n else 0.0

    def max_width(a, b):
        mid2 = a * a
        inner = np.where(two_n - mid2 > band, np.pi / np.sqrt(np.maximum(two_n - mid2, 1e-300)), np.inf)
        # clamp on the turning-point band and beyond
        return np.where(b * b >= two_n - band, clamp, inner)

    edges = _refine(edges, max_width)
    if zone_map is not None:
        extra = zone_map.x_breakpoints()
        extra = extra[(extra > 0) & (extra < cut_off)]
        edges = np.unique(np.concatenate([edges, extra]))
    return PanelPlan(n=n, p=float(p), cut_off=cut_off, edges=edges,
                     tail_log_bound=tail_rel)


def _integrate_panels(log_f, edges, tol, budget=PANEL_BUDGET):
    """Adaptive GL16/GL8 on the given panels.

    Returns (edges_a, edges_b, log_panel_values, log_total, abs_err/total).
    """
    a = np.asarray(edges[:-1], dtype=float)
    b = np.asarray(edges[1:], dtype=float)
    length = float(b[-1] - a[0])
    done_a, done_b, done_v, done_e = [], [], [], []
    log_total_est = None
    used = a.size
    while a.size:
        half = 0.5 * (b - a)
        mid = 0.5 * (b + a)
        nodes = np.concatenate([mid[:, None] + half[:, None] * _X16[None, :],
                                mid[:, None] + half[:, None] * _X8[None, :]], axis=1)
        lf = log_f(nodes.ravel()).reshape(nodes.shape)
        m = np.max(lf, axis=1)
        m_safe = np.where(np.isfinite(m), m, 0.0)
        e = np.exp(lf - m_safe[:, None])
        s16 = e[:, :16] @ _W16
        s8 = e[:, 16:] @ _W8
        with np.errstate(divide="ignore"):
            lv = m_safe + np.log(s16 * half)
            le = m_safe + np.log(np.abs(s16 - s8) * half)
        lv = np.where(np.isfinite(m), lv, -np.inf)
        le = np.where(np.isfinite(m), le, -np.inf)
        if log_total_est is None:
            log_total_est = _logsumexp(lv)
        else:
            log_total_est = float(np.logaddexp(_logsumexp(done_v and np.concatenate(done_v)), _logsumexp(lv)))
        # budget per panel: its own value plus a width share of the total;
        # both parts sum to tol/4 of the total, so the whole stays below tol/2
        allow = math.log(0.25 * tol) + np.logaddexp(lv, log_total_est + np.log((b - a) / length))
        ok = le <= allow
        done_a.append(a[ok]); done_b.append(b[ok]); done_v.append(lv[ok]); done_e.append(le[ok])
        bad = ~ok
        if not bad.any():
            break
        ba, bb = a[bad], b[bad]
        bm = 0.5 * (ba + bb)
        if np.any(bb - ba < 1e-14 * np.maximum(1.0, np.abs(bb))):
            raise ConvergenceError("panel bisection reached machine resolution")
        used += ba.size
        if used > budget:
            raise ConvergenceError(f"adaptive quadrature exceeded {budget} panels")
        a = np.concatenate([ba, bm])
        b = np.concatenate([bm, bb])
    pa = np.concatenate(done_a)
    order = np.argsort(pa, kind="stable")
    pa = pa[order]
    pb = np.concatenate(done_b)[order]
    pv = np.concatenate(done_v)[order]
    pe = np.concatenate(done_e)[order]
    log_total = _logsumexp(pv)
    rel_err = math.exp(_logsumexp(pe) - log_total) if np.isfinite(log_total) else 0.0
    return pa, pb, pv, log_total, rel_err


def _moment_panels(n, p, normalization, tol, zone_map):
    normalization = Normalization(normalization)
    if not 0.1 <= p <= 10.0:
        raise ValueError(f"p must lie in [0.1, 10], got {p!r}")
    if n > 10_000:
        raise ValueError("quadrature supports n <= 10000; use the asymptotic predictors")
    plan = plan_panels(n, p, tol, zone_map=zone_map,
                       m_cut=zone_map.m_cut if zone_map else 2.0)

    def log_f(x):
        return p * _log_density(n, x, normalization)

    pa, pb, pv, log_half, rel = _integrate_panels(log_f, plan.edges, tol)
    rel += math.exp(plan.tail_log_bound)
    return plan, pa, pb, pv, log_half, rel


@lru_cache(maxsize=256)
def _entropic_moment_cached(n, p, normalization, tol):
    _, _, _, _, log_half, rel = _moment_panels(n, p, normalization, tol, None)
    return LogMoment(log_half + _LN2, rel)


def entropic_moment(n: int, p: float, normalization=Normalization.ORTHONORMAL,
                    tol: float = 1e-10) -> LogMoment:
    """log of the integral of rho_n(x)^p over the real line.

    The density is even, so [0, cut_off] is integrated and ln 2 added.
    """
    return _entropic_moment_cached(int(n), float(p), Normalization(normalization), float(tol))


def zone_integrals(n: int, p: float, zone_map: ZoneMap, normalization=Normalization.ORTHOGONAL,
                   tol: float = 1e-10) -> dict[Zone, LogMoment]:
    """Restrictions of the moment integrand to the five zones (both signs of x).

    As with the zone formulas themselves, ``zone_map.n`` indexes the density
    rho_{n-1}, i.e. ``n`` here is one more than the polynomial degree.
    """
    if zone_map.n != n:
        raise ValueError("zone map built for a different n")
    _, pa, pb, pv, _, rel = _moment_panels(n - 1, p, normalization, tol, zone_map)
    mids2 = (0.5 * (pa + pb)) ** 2
    bounds = zone_map.boundaries
    idx = np.searchsorted(np.asarray(bounds[1:5]), mids2, side="right")
    order = (Zone.C, Zone.B1, Zone.B2, Zone.B3, Zone.A)
    return {z: LogMoment(_logsumexp(pv[idx == i]) + _LN2, rel) for i, z in enumerate(order)}


# --- Airy power integrals -------------------------------------------------

def _airy_zero_approx(k):
    """k-th zero of Ai (as a positive number a_k; the zero is at -a_k)."""
    t = 3.0 * np.pi * (4.0 * np.asarray(k, dtype=float) - 1.0) / 8.0
    t2 = t ** -2
    return t ** (2.0 / 3.0) * (1.0 + t2 * (5.0 / 48.0 + t2 * (-5.0 / 36.0
                               + t2 * (77125.0 / 82944.0 + t2 * (-108056875.0 / 6967296.0)))))


def _sin_power_mean(p):
    """Mean of |cos|^(2p) over a period: Gamma(p+1/2) / (sqrt(pi) Gamma(p+1))."""
    return math.exp(ln_gamma(p + 0.5).value - 0.5 * math.log(math.pi) - ln_gamma(p + 1.0).value)


def airy_power_integral(p: float, tol: float = 1e-10) -> CertifiedValue:
    """Integral of Ai(s)^(2p) over the real line, p > 2.

    Quadrature runs from a large Airy zero -a_K up to the point where the
    decaying side is negligible.  Past -a_K, Ai(-s) = M(s) cos theta(s) and
    the oscillatory part integrates to zero at leading order because the
    primitive of cos^(2p) - mean vanishes at zeros of cos; the remaining
    mean part uses M^2 ~ (pi sqrt(s))^-1 (1 + 5/(32 s^3)).
    """
    if not p > 2.0:
        raise DivergenceError(f"integral of Ai^(2p) diverges for p <= 2 (got p={p!r})")
    half = 0.5 * p
    # leftover oscillatory term is O(a^(-p/2 - 2))
    a_target = min(900.0, max(40.0, (10.0 / tol) ** (1.0 / (half + 2.0))))
    k_max = int(math.ceil((2.0 / 3.0) * a_target ** 1.5 / math.pi + 0.25)) + 1
    zeros = _airy_zero_approx(np.arange(1, k_max + 1))
    a_k = float(zeros[-1])

    right = 2.0
    while True:
        lv = 2.0 * p * math.log(max(airy_ai_array(np.array([right]))[0], 1e-300))
        if lv - math.log(2.0 * p * math.sqrt(right)) < math.log(tol) - 10.0:
            break
        right += 0.5
    left_edges = -zeros[::-1]
    mids = 0.5 * (left_edges[:-1] + left_edges[1:])
    edges = np.sort(np.concatenate([left_edges, mids, -zeros[:1] / 2.0,
                                    np.arange(0.0, right + 0.25, 0.5)]))

    def log_f(s):
        ai = airy_ai_array(s)
        with np.errstate(divide="ignore"):
            return 2.0 * p * np.log(np.abs(ai))

    _, _, _, log_body, rel = _integrate_panels(log_f, edges, 0.1 * tol)
    body = math.exp(log_body)
    mean = _sin_power_mean(p)
    c5 = 5.0 * p / 32.0
    tail = mean * math.pi ** -p * (a_k ** (1.0 - half) / (half - 1.0)
                                   + c5 * a_k ** (-2.0 - half) / (half + 2.0))
    resid = math.pi ** -p * a_k ** (-2.0 - half)
    value = body + tail
    err = 10.0 * (rel * body + resid)
    return CertifiedValue(value, err)


_AIRY_SCALE = 2.0 * math.pi * 2.0 ** (-1.0 / 3.0)


@lru_cache(maxsize=128)
def airy_constant(p: float, tol: float = 1e-10) -> CertifiedValue:
    """C_p = integral of [2 pi 2^(-1/3) Ai^2(-2^(1/3) z / 2)]^p dz, p > 2.01.

    Substituting s = -2^(-2/3) z gives C_p = (2 pi 2^(-1/3))^p 2^(2/3) J_p with
    J_p the integral of Ai^(2p).
    """
    p = float(p)
    if p <= 2.01:
        raise DivergenceError(
            f"C_p diverges at the pole p = 2; p = {p} is within the 2.01 guard")
    j = airy_power_integral(p, tol)
    factor = _AIRY_SCALE ** p * 2.0 ** (2.0 / 3.0)
    return CertifiedValue(factor * j.value, factor * j.abs_error_bound)
