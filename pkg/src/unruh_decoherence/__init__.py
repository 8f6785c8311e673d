"""Decoherence of Unruh-degraded entanglement between an inertial and an accelerated observer."""

from .channels import (
    ChannelKind,
    KrausChannel,
    Scenario,
    apply,
    apply_both,
    apply_single,
    make_channel,
)
from .entanglement import (
    AnalyticCase,
    concurrence,
    concurrence_analytic,
    concurrence_numeric,
    cross_validate,
    spin_flip,
)
from .linalg import EigenSpectrum, SpectrumViolation, eigenvalues_product, partial_trace
from .state import (
    AccelerationSpec,
    DensityMatrix,
    build_shared_state,
    build_three_mode_state,
    r_from_acceleration,
)
from .sweep import SweepConfig, emit_figure, find_esd, run_sweep, run_verify

__all__ = [
    "AccelerationSpec", "AnalyticCase", "ChannelKind", "DensityMatrix", "EigenSpectrum",
    "KrausChannel", "Scenario", "SpectrumViolation", "SweepConfig", "apply", "apply_both",
    "apply_single", "build_shared_state", "build_three_mode_state", "concurrence",
    "concurrence_analytic", "concurrence_numeric", "cross_validate", "eigenvalues_product",
    "emit_figure", "find_esd", "make_channel", "partial_trace", "r_from_acceleration",
    "run_sweep", "run_verify", "spin_flip",
]
