"""Renyi entropies of Hermite densities: log-safe Hermite evaluation,
entropic-moment quadrature, Plancherel-Rotach asymptotics and the
constants c_p and C_p."""

from .asymptotics import (AsymptoticPrediction, Caveat, PoleError, Regime, RegimeTag, c_constant,
                          classify_regime, predict_moment, predict_renyi)
from .entropy import EntropyReport, Method, renyi_entropy
from .hermite import (Normalization, WeightedHermiteValue, Zone, ZoneMap, classify_zone, density,
                      eval_asymptotic, eval_weighted, hermite_zeros)
from .quadrature import (ConvergenceError, DivergenceError, LogMoment, PanelPlan, airy_constant,
                         entropic_moment, plan_panels, zone_integrals)
from .special import CertifiedValue, DomainError, airy_ai, ln_gamma

__version__ = "0.1.0"

__all__ = [
    "AsymptoticPrediction", "Caveat", "CertifiedValue", "ConvergenceError", "DivergenceError",
    "DomainError", "EntropyReport", "LogMoment", "Method", "Normalization", "PanelPlan", "PoleError",
    "Regime", "RegimeTag", "WeightedHermiteValue", "Zone", "ZoneMap", "airy_ai", "airy_constant",
    "c_constant", "classify_regime", "classify_zone", "density", "entropic_moment",
    "eval_asymptotic", "eval_weighted", "hermite_zeros", "ln_gamma", "plan_panels",
    "predict_moment", "predict_renyi", "renyi_entropy", "zone_integrals",
]
