"""Kernel evaluators for the Heisenberg-group sub-Laplacian.

Evaluates the fundamental solution three independent ways (closed form,
semi-infinite integral representation, and the zeta -> 0 resolvent
limit) and machine-verifies the identity chain connecting them. The hot
quadrature kernels run from a compiled extension when available, with a
pure-Python fallback built from the same source (see heiskern.backend).
"""

from .backend import backend_name
from .errors import (CubatureBudgetError, DecayHintViolatedError,
                     DimensionMismatchError, DomainError, HeiskernError,
                     NonFiniteIntegrandError, OverflowRangeError, PoleError,
                     QuadratureNonConvergenceError, ResolutionBudgetError,
                     SeriesNonConvergenceError, SingularityError,
                     UnsupportedRepresentationError)
from .heisenberg import (GaussianTestFunction, HeisenbergPoint, PairGeometry,
                         SecondPartials, TestFunction, apply_sublaplacian,
                         check_derivatives, format_z, identity, inverse,
                         koranyi_gauge4, multiply, pair_geometry, parse_z)
from .kernels import (DEFAULT_KERNEL_CONFIG, KernelQuery, folland_closed,
                      folland_constant, folland_integral, green_r0,
                      green_r0_closed, resolvent)
from .numerics import (DEFAULT_CONFIG, QuadratureConfig, QuadratureResult,
                       gamma, integrate_adaptive, integrate_semi_infinite)
from .special import (PsiEvalMode, gamma_psi_product, gauss_2f1, kummer_m,
                      legendre_p, tricomi_psi)
from .verify import (VerificationReport, check_arc_identity,
                     check_cos_power_legendre, check_distributional,
                     check_duplication, check_gegenbauer,
                     check_green_ratio, check_integral_vs_closed,
                     check_laplace_cosine, check_resolvent_limit,
                     check_t_integral_form, reports_to_csv, reports_to_text,
                     run_suite, write_reports_csv)

__version__ = "0.1.0"
