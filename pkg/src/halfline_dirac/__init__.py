"""Half-line Dirac operators with mixed boundary conditions.

Closed-form resolvent kernels and their sharp uniform bounds, stability
certificates for matrix potential perturbations, bound states of point
interactions, and the quantitative non-relativistic limit toward the Robin
Laplacian.
"""

from .core import (
    Mat2,
    RegionTag,
    SpectralEdgeError,
    SpectralParams,
    classify,
    k_of,
    op_norm,
    q_of,
    zeta_of,
)
from .kernels import (
    Branch,
    CParams,
    KernelEval,
    apply_resolvent,
    c_coefficients,
    eta_alpha,
    halfline_kernel,
    halfline_kernel_c,
    halfline_kernel_product_form,
    psi_phi_W,
    robin_kernels,
    whole_line_kernel,
)
from .bounds import (
    ScanGrid,
    ScanReport,
    chi,
    chi11,
    edge_limits,
    resolvent_identity_residual,
    scan_verify,
    sup_bound_11,
    sup_bound_full,
)
from .potentials import (
    ExpDecay,
    GaussianBump11,
    QuadGrid,
    SampledPotential,
    default_grid_for,
    load_csv,
    make_graded_grid,
    make_grid,
    pointwise_norm,
    weighted_l1,
)
from .certify import (
    Certificate,
    certificate_alt,
    certificate_c,
    certificate_nonrel,
    certificate_sufcon,
    kernel_L,
    kernels_L1_L2_Linf,
    nystrom_norm,
    split_check,
)
from .delta import (
    DeltaConfig,
    EigenResult,
    certificate_delta,
    eigen_curve,
    implicit_rhs,
    interface_residual,
    optimality_check,
    solve_eigenvalue,
    t_star,
    t_zero,
)
from .nonrel import (
    ConvergenceRow,
    beta_of,
    boundary_hs_distance,
    boundary_hs_distance_quadrature,
    certificate_limit_table,
    convergence_table,
    eta_gap,
    full_hs_distance,
    xi_of,
)

__version__ = "0.1.0"
