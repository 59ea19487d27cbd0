"""Kinetic skin effect in a Maxwellian plasma half-space.

Electric field and electron distribution for an anomalous-skin-effect
boundary problem with specular reflection, solved by expansion over the
eigenfunctions of the dispersion relation: a discrete part from the zero
pairs of the dispersion function and a continuous part from its branch
cut along the real axis.

The public surface mirrors the solution pipeline:

    params        parameter bundles (alpha, Omega) <-> (omega1, nu1)
    dispersion    the dispersion function off and on the real axis
    spectrum      zero pairs, domain classification, domain boundary
    factorization half-space Riemann problem factor X(z)
    solution      field profile, distribution function, impedance
    quadrature    the adaptive integrator these modules share

The command line front end lives in plasmaskin.cli; figure-bundle
presets in plasmaskin.figures.
"""

from ._version import __version__
from .errors import (BranchError, ConvergenceError, CountMismatchError,
                     DomainEvaluationError, PlasmaSkinError, ValidationError)
from .params import (FrequencyPair, PhysicalScales, PlasmaParams,
                     frequencies_from_params, params_from_alpha_omega,
                     params_from_frequencies)
from .quadrature import (DEFAULT_CONFIG, QuadratureConfig, QuadratureResult,
                         integrate_adaptive, integrate_principal_value,
                         integrate_semi_infinite)
from .dispersion import (BoundaryValues, DispersionSample, eval_boundary,
                         eval_lambda, eval_lambda_imag_axis,
                         eval_lambda_prime, sample_dispersion)
from .spectrum import (BoundaryPlane, Classification, DomainBoundary,
                       DomainKind, SpectrumInfo, classify_domain,
                       count_zero_pairs, find_zeros, trace_domain_boundary)
from .factorization import (FactorizationContext, build_factorization,
                            check_factorization, eval_G, eval_V, eval_X,
                            eval_X1, zero_from_factorization)
from .solution import (DistributionSlice, FieldProfile, ImpedanceResult,
                       SolutionCoefficients, coefficients, compute_I,
                       default_x_grid, distribution_boundary,
                       distribution_profile, field_profile, impedance)

__all__ = [
    "__version__",
    # errors
    "PlasmaSkinError", "ValidationError", "ConvergenceError",
    "CountMismatchError", "BranchError", "DomainEvaluationError",
    # params
    "PlasmaParams", "FrequencyPair", "PhysicalScales",
    "params_from_alpha_omega", "params_from_frequencies",
    "frequencies_from_params",
    # quadrature
    "QuadratureConfig", "QuadratureResult", "DEFAULT_CONFIG",
    "integrate_adaptive", "integrate_semi_infinite",
    "integrate_principal_value",
    # dispersion
    "DispersionSample", "BoundaryValues", "eval_lambda", "eval_lambda_prime",
    "eval_lambda_imag_axis", "eval_boundary", "sample_dispersion",
    # spectrum
    "Classification", "DomainKind", "BoundaryPlane", "SpectrumInfo",
    "DomainBoundary", "count_zero_pairs", "find_zeros", "classify_domain",
    "trace_domain_boundary",
    # factorization
    "FactorizationContext", "build_factorization", "eval_G", "eval_V",
    "eval_X", "eval_X1", "check_factorization", "zero_from_factorization",
    # solution
    "SolutionCoefficients", "FieldProfile", "DistributionSlice",
    "ImpedanceResult", "compute_I", "coefficients", "default_x_grid",
    "field_profile", "distribution_boundary", "distribution_profile",
    "impedance",
]
