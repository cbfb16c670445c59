"""Ground states of a spin-boson NMR Hamiltonian and the spatial tail of
their photon number density.

The package discretizes the transverse photon field on a momentum quadrature
grid, assembles H(g) = dGamma(omega) (x) I + sum Bext.sigma + g H_int on a
truncated Fock (x) spin space, computes the lowest eigenpair, evaluates
photon amplitudes through the pull-through identity, and measures the
|x|^-5 spatial decay of the photon density together with its v x S limit.
"""

__version__ = "0.1.0"

from .asymptotics import (AsymptoticsReport, a_hat, a_hat_bruteforce, b_field,
                          decay_report, kappa_contour_oracle, operator_filter,
                          predicted_limit, projection_limit_check,
                          radial_integral_contour, radial_kernel,
                          sphere_integral_quadrature, sphere_integral_reference)
from .config import RunConfig, load_config, parse_config_text
from .errors import (AssemblyError, ConfigurationError,
                     DegenerateGroundStateError, DomainError, NumericalError,
                     PhotontailError, SolverError)
from .fock import (FockBasis, SparseHermitianOperator, annihilation_matrix,
                   build_fock_basis, d_gamma, ladder, number_operator,
                   segal_field)
from .groundstate import GroundState, ground_state
from .hamiltonian import AssembledModel, ModelConfig, assemble
from .modes import (CutoffFunction, ModeGrid, build_mode_grid, embed_field,
                    field_coefficient, sphere_rule, transverse_project)
from .pullthrough import (AmplitudeVector, SpectralSurrogate, amplitude_bound,
                          number_check, photon_amplitude, pullthrough_residual,
                          resolvent_apply, surrogate_from_model)
from .solvers import ShiftedHermitianSolver
from .spin import SpinOperator, sigma_op, total_spin

__all__ = [name for name in dir() if not name.startswith("_")]
