"""Indefinite integration matrices on Gauss nodes and the solvers built on
them: transform inversion, one-sided convolution, Picard initial-value
iteration, and half-line integral equations, plus the quadrature oracle and
identity-verification suite used to check them.
"""

from .basis import (ExtrapolationWarning, IntervalMap, QuadratureBasis,
                    WeightFamily, barycentric_weights, build_basis,
                    interpolate, lagrange_cardinal, legendre_coefficients,
                    orthonormal_table, recurrence_coefficients)
from .convolve import (ControlResult, ControlSpec, ConvolutionProblem,
                       control_demo, control_inverse, control_response,
                       convolve, damped_bessel_symbol)
from .errors import (IllConditionedError, NonContractionError, NumericalError,
                     OracleError, PoleEvaluationError, QuadratureAccuracyError,
                     SingularDesignError)
from .intmat import (EigenFactorization, IntegrationMatrices, ScaledMatrix,
                     ScalarSymbol, apply_real, build_integration_matrices,
                     eigen_factorize, matrix_apply, matrix_function, scale)
from .invert import (InversionProblem, fourier_demo, fourier_invert,
                     laplace_demo, laplace_invert)
from .ode import (ChainResult, OdeProblem, PicardResult, hermite_refine,
                  picard_solve, restart_extend, tangent_demo)
from .oracle import (QuadratureRequest, adaptive_integrate, bessel_j0,
                     direct_convolution, load_fixtures, reference_run)
from .report import SolveReport, format_float
from .verify import (ChainReport, ConjectureReport, HalfLineReport,
                     IdentityReport, NormBoundReport, RangeSample,
                     check_derivative_range, check_norm_bound,
                     check_positivity_identity, check_half_line_pairing,
                     check_integral_chain, conjecture_scan,
                     numerical_range_sample, verify_suite)
from .wiener_hopf import (WienerHopfProblem, WienerHopfResult, exp_kernel_demo,
                          truncated_exp_kernel_symbols)
from .wiener_hopf import solve as wiener_hopf_solve

__version__ = "0.1.0"
