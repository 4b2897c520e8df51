"""Discord consumption and the advantage of coherent decoding.

Gaussian covariance-matrix tools, closed-form information rates of the
continuous-variable protocol, an experimental-imperfection model, a Monte
Carlo simulator and a finite-dimensional bound verifier.
"""
from .errors import (
    DegenerateDataError,
    DomainError,
    MalformedInputError,
    NumericalError,
    OutOfModelError,
)
from .gaussian import (
    ModeTransform,
    apply_transform,
    conditional_covariance,
    partial_trace,
    ppt_separability_test,
    symplectic_eigenvalues,
    validate_physical,
)
from .imperfections import ImperfectionConfig, assemble_C0, model_rates, propagate_setup
from .info import (
    classical_correlation_heterodyne,
    g,
    gaussian_discord,
    gaussian_discord_symmetric,
    gaussian_entropy,
    gaussian_mutual_information,
)
from .protocol import (
    ProtocolPoint,
    coherent_limit,
    encode_signal,
    evaluate_point,
    incoherent_limit,
    practical_rates,
    resource_state,
)

__version__ = "0.1.0"
