"""Renyi entropies and spreading lengths of harmonic-oscillator states.

The oscillator density of level n is psi_n(x)^2, i.e. the orthonormal
Hermite density of degree n.  Up to ``crossover`` the moment is computed by
quadrature; above it the leading asymptotic term is used.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

from .asymptotics import Caveat, classify_regime, moment_index, predict_moment, RegimeTag
from .hermite import Normalization
from .quadrature import LogMoment, entropic_moment
from .special import ln_gamma

__all__ = [
    "Method",
    "EntropyReport",
    "DEFAULT_CROSSOVER",
    "oscillator_moment",
    "orthogonal_to_oscillator",
    "renyi_entropy",
]

DEFAULT_CROSSOVER = 2000


class Method(str, enum.Enum):
    QUADRATURE = "quadrature"
    ASYMPTOTIC = "asymptotic"


@dataclass(frozen=True)
class EntropyReport:
    n: int
    p: float
    W_log: float
    renyi: float
    spreading_length_log: float
    method: Method
    caveat: Caveat
    error_estimate: float

    def as_dict(self) -> dict:
        d = asdict(self)
        d["method"] = self.method.value
        d["caveat"] = self.caveat.value
        return d


def orthogonal_to_oscillator(log_w: float, n: int, p: float) -> float:
    """log W_p[psi_n^2] from log W_p[e^(-x^2) H_n^2]: subtract p (ln sqrt(pi) + ln n! + n ln 2)."""
    return log_w - p * (0.5 * math.log(math.pi) + ln_gamma(n + 1.0).value + n * math.log(2.0))


def _pick_method(n, backend, crossover):
    if backend is None:
        return Method.QUADRATURE if n <= crossover else Method.ASYMPTOTIC
    return Method(backend)


def oscillator_moment(n: int, p: float, tol: float = 1e-10, backend=None,
                      crossover: int = DEFAULT_CROSSOVER, constants: str = "default"
                      ) -> tuple[LogMoment, Method, Caveat]:
    """log W_p of the level-n oscillator density, with the backend used."""
    if int(n) != n or n < 0:
        raise ValueError(f"n must be a non-negative integer, got {n!r}")
    if not p > 0:
        raise ValueError(f"p must be positive, got {p!r}")
    method = _pick_method(int(n), backend, crossover)
    if method is Method.QUADRATURE:
        return entropic_moment(int(n), p, Normalization.ORTHONORMAL, tol), method, Caveat.EXACT_CONSTANT
    pred = predict_moment(moment_index(n), p, Normalization.ORTHONORMAL, constants, tol)
    return LogMoment(pred.log_leading, pred.constant_rel_error), method, pred.caveat


def renyi_entropy(n: int, p: float, tol: float = 1e-10, backend=None,
                  crossover: int = DEFAULT_CROSSOVER, constants: str = "default") -> EntropyReport:
    """Renyi entropy R_p = ln W_p / (1 - p) of oscillator level n.

    For the asymptotic backend ``error_estimate`` covers only the numerical
    error of the constants; the o(1) remainder is not included.
    """
    if abs(p - 1.0) <= 1e-6:
        raise ValueError("p = 1 (Shannon entropy) is not supported")
    moment, method, caveat = oscillator_moment(n, p, tol, backend, crossover, constants)
    renyi = moment.log_value / (1.0 - p)
    err = moment.rel_error_estimate / abs(1.0 - p)
    return EntropyReport(int(n), float(p), moment.log_value, renyi, renyi, method, caveat, err)
