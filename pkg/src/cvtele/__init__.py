"""Continuous-variable teleportation with Gaussian and non-Gaussian entangled resources."""

__version__ = "0.1.0"

from .errors import (ConfigError, ConvergenceError, CVTeleError, DegeneratePlanError,
                     DomainError)
from .params import InputFamily, InputSpec, ResourceFamily, ResourceSpec, SqueezeParam
from .teleport import FidelityResult, fidelity, fidelity_quadrature
from .optimizer import (OptimizationResult, delta_closed_form, optimize_delta,
                        relative_fidelity, sweep)
from .metrics import (MetricReport, entanglement_entropy, metric_report, non_gaussianity,
                      tb_relative_non_gaussianity, vacuum_affinity)
from .genplanner import PumpPlan, simulate_cascade, solve_pump_amplitudes

__all__ = [
    "ConfigError", "ConvergenceError", "CVTeleError", "DegeneratePlanError", "DomainError",
    "InputFamily", "InputSpec", "ResourceFamily", "ResourceSpec", "SqueezeParam",
    "FidelityResult", "fidelity", "fidelity_quadrature",
    "OptimizationResult", "delta_closed_form", "optimize_delta", "relative_fidelity", "sweep",
    "MetricReport", "entanglement_entropy", "metric_report", "non_gaussianity",
    "tb_relative_non_gaussianity", "vacuum_affinity",
    "PumpPlan", "simulate_cascade", "solve_pump_amplitudes",
]
