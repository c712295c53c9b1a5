"""Closed-form non-classical properties of a driven radiation mode, with a
truncated-Fock-space oracle for independent verification."""

from .algebra import (
    DisentangledForm,
    EvolutionMatrix,
    disentangle_thermal,
    disentangle_unitary,
    evolution_matrix,
)
from .params import (
    DegenerateSpectrum,
    DerivedParams,
    ModelParams,
    NonPositiveFrequency,
    NonPositiveTemperature,
    ValidatedParams,
    derive,
    validate,
)
from .squeezing import (
    MissingMoments,
    MomentSet,
    SqueezingReport,
    ZeroCommutatorExpectation,
    commutator_expectation,
    quadrature_variance,
    squeezing_report,
)
from .thermal import (
    CriticalTemps,
    GaussianWitness,
    ThermalCumulants,
    ThermalSqueezing,
    critical_temperatures,
    cumulants,
    mandel_excess,
    mean_photon_number,
    moments_from_cumulants,
    thermal_squeezing,
    witness_matrix,
)
from .unitary import (
    KernelCoeffs,
    PFunctionVerdict,
    coherent_kernel,
    d1_unitary,
    heisenberg_mean,
    kernel_coefficients,
    p_function_witness_unitary,
    unitary_moment_set,
)

__version__ = "0.1.0"

__all__ = [
    "CriticalTemps",
    "DegenerateSpectrum",
    "DerivedParams",
    "DisentangledForm",
    "EvolutionMatrix",
    "GaussianWitness",
    "KernelCoeffs",
    "MissingMoments",
    "ModelParams",
    "MomentSet",
    "NonPositiveFrequency",
    "NonPositiveTemperature",
    "PFunctionVerdict",
    "SqueezingReport",
    "ThermalCumulants",
    "ThermalSqueezing",
    "ValidatedParams",
    "ZeroCommutatorExpectation",
    "coherent_kernel",
    "commutator_expectation",
    "critical_temperatures",
    "cumulants",
    "d1_unitary",
    "derive",
    "disentangle_thermal",
    "disentangle_unitary",
    "evolution_matrix",
    "heisenberg_mean",
    "kernel_coefficients",
    "mandel_excess",
    "mean_photon_number",
    "moments_from_cumulants",
    "p_function_witness_unitary",
    "quadrature_variance",
    "squeezing_report",
    "thermal_squeezing",
    "unitary_moment_set",
    "validate",
    "witness_matrix",
]
