"""Attenuated-wave models, spectral Green-function synthesis, and numerical
causality certification."""

__version__ = "0.1.0"

from .certify import (
    CausalityReport,
    HalfPlaneScan,
    Verdict,
    certify,
    cr_residual,
    default_scan,
    front_speed_margin,
    growth_scan,
)
from .dispersion import (
    ModelKind,
    ModelSpec,
    alpha_star,
    attenuation,
    dispersion_residual,
    phase_speed,
    wavenumber,
)
from .grids import (
    FrequencyGrid,
    TimeSignal,
    precursor_energy,
    spectrum_to_time,
    time_to_spectrum,
)
from .kernels import (
    SpectralMultiplier,
    apply_multiplier,
    frac_deriv,
    gaussian_regularizer,
    k_star,
    kernel_time_domain,
    l_half,
    szabo_multiplier,
    t_half,
)
from .kk import hilbert_transform, kk_phase_speed, kk_residual
from .solve import (
    CauchyData,
    PointSourceSum,
    SourceTerm,
    cauchy_source,
    superpose,
    verify_cauchy,
)
from .synth import GreenField, assemble_green, front_speed_estimate, synth_shell

__all__ = [
    "CausalityReport",
    "CauchyData",
    "FrequencyGrid",
    "GreenField",
    "HalfPlaneScan",
    "ModelKind",
    "ModelSpec",
    "PointSourceSum",
    "SourceTerm",
    "SpectralMultiplier",
    "TimeSignal",
    "Verdict",
    "alpha_star",
    "apply_multiplier",
    "assemble_green",
    "attenuation",
    "cauchy_source",
    "certify",
    "cr_residual",
    "default_scan",
    "dispersion_residual",
    "frac_deriv",
    "front_speed_estimate",
    "front_speed_margin",
    "gaussian_regularizer",
    "growth_scan",
    "hilbert_transform",
    "k_star",
    "kernel_time_domain",
    "kk_phase_speed",
    "kk_residual",
    "l_half",
    "phase_speed",
    "precursor_energy",
    "spectrum_to_time",
    "superpose",
    "synth_shell",
    "szabo_multiplier",
    "t_half",
    "time_to_spectrum",
    "verify_cauchy",
    "wavenumber",
]
