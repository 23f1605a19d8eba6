"""Closed-form Gaussian ergotropy for bosonic quadratic Hamiltonians."""

from .channels import (
    GaussianChannel,
    amplifier,
    apply,
    attenuator,
    identity_channel,
    min_output_energy,
    optimal_input_state,
    validate_channel,
)
from .ergotropy import (
    ErgotropyReport,
    GaussianUnitaryDescriptor,
    delta_tot,
    entropic_nongaussianity_mu,
    gaussian_ergotropy,
    gaussian_passive_energy,
    gaussian_passive_state,
    n_copy_gaussian_ergotropy,
    optimal_gaussian_unitary,
    total_ergotropy,
    totb_lower_bound_check,
)
from .errors import (
    GaussianErgotropyError,
    InvalidArgumentError,
    InvalidChannelError,
    NumericalFailureError,
    TruncationError,
    UnsupportedInputError,
)
from .states import (
    PURE_STATE_BETA,
    GaussianState,
    QuadraticHamiltonian,
    StateMoments,
    energy,
    gaussian_entropy,
    gaussianification,
    intrinsic_beta,
    tensor,
    thermal_state,
)
from .symplectic import (
    WilliamsonResult,
    direct_sum,
    is_symplectic,
    random_symplectic,
    symplectic_eigenvalues,
    symplectic_form,
    williamson,
    xpxp_to_xxpp_permutation,
)

__version__ = "0.1.0"
