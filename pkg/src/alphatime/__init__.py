"""Numerical laboratory for alpha-time processes and their PDEs."""
from .composition import CompositionSpec, u_ictbap, u_mc, u_quadrature
from .densities import (
    QuadratureError,
    stable_density,
    stable_density_even_deriv_at_zero,
    subordinator_density,
    weighted_kernel_integral,
)
from .exit_time import BallDomain, exit_oracle, exit_time_mc, getoor_conditional_mean
from .finite_diff import FDStencil, StencilError, fd_derivative, fd_time_derivative
from .montecarlo import Estimate, mc_estimate
from .residuals import (
    ResidualReport,
    check_btp,
    check_thm_alpha,
    check_thm_cauchy,
    check_thm_eps,
    check_thm_fk,
    check_thm_ictbap,
)
from .sampling import AlphaIndex, RngStream, sample_path, sample_subordinator, sample_symmetric_stable
from .semigroups import ConstantPotential, GaussianBump, PlaneWave, heat_semigroup_apply, mc_semigroup
from .skbm import SpectralCoefficients, SpectralDomain, q_apply, skbm_mc, skbm_pde_residual

__version__ = "0.1.0"
