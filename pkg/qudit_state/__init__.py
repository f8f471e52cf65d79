# Qudit State Module
# Chain geometry, dense statevectors and local observables
from .chain import ChainConfig, LocalBasisLabel, StateVector
from .errors import CertificateFailure, DomainError, ResourceLimitError
from .operators import charge_operator, shift_operator, spin_z_eigenvalue, spin_z_operator
from .states import (
    central_sites,
    charge_expectation,
    haar_random_state,
    inner_product,
    local_vector,
    overlap_modulus,
    product_state,
    project_local_zero,
    random_x_labels,
    site_distribution,
    x_eigenstate,
    with_zero_region,
    z_basis_state,
)
