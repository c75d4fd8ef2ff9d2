"""Means defined by the roots of differences of Taylor polynomials."""

from .config import DEFAULT, Tolerances
from .errors import (DomainError, EndpointRoot, ExcludedExponent, MismatchError, NoConvergence,
                     NotDivisible, PreconditionError, QuadratureError, SignChange, SignViolation,
                     TaylorMeanError, UnpairedRoot, ZeroPolynomial)
from .functions import (CustomOracle, Exp, FunctionSpec, Log, MomentIntegrals, Power,
                        center_of_mass, kth_derivative, moment_integrals, parse_spec)
from .lab import (Laurent, PowerCase, VWPair, abcd_power, derivative_table_check, l_poly_check,
                  lemma5_sum, lemma6_root_count, q_factor, reflection_check, s_factor,
                  theorem1_verify, v1_double_sum_check, vw_build)
from .means import (GCubic, MeanResult, compute_mean, g_cubic, g_integral_form,
                    real_parts_average_check, remainder_residual, solve_r3_pair, stolarsky_mean,
                    taylor_diff, taylor_poly, theorem2_bounds, unique_real_mean)
from .poly import (Polynomial, SignSequence, cubic_discriminant, descartes_sign_changes,
                   differentiate, divide_out_root_power, evaluate, fourier_budan_bound)
from .roots import RootSet, all_roots, pair_conjugates, real_roots_in
from .sweep import SweepReport, conjecture_sweep, nonreal_nodes_demo

__version__ = "0.1.0"
