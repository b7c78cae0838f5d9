"""Canonical duality for ``f = q0 + V(q(x))`` with quadratic ``q`` and convex ``V``.

The complementary function, the dual function and its critical points, and
verdicts on whether a critical pair is a min-max, double-min or double-max
pair or provably not an extremum.
"""
from .canonical import CanonicalFunction, Kind, Smoothness
from .complementary import (
    critical_pair_residual,
    f_grad,
    f_hess,
    f_value,
    in_X0,
    is_critical_pair,
    xi_grad_sigma,
    xi_grad_x,
    xi_hess_xx,
    xi_value,
)
from .cone import ConeProblem, check_j_lkkt, check_j_lkkt_max, dl_value, equality_duality
from .dual import (
    DualPoint,
    RegionLabel,
    classify_sigma,
    d_grad,
    d_hess,
    d_value,
    newton_critical_point,
    solve_x_of_sigma,
)
from .estimator import TrialityAnalyzer
from .exceptions import CDTError, NewtonFailure, PreconditionFailed
from .io import dump_problem, load_problem, problem_from_dict, problem_to_dict
from .quadratic import ProblemInstance, QuadraticForm, assemble, eval_q, eval_q0, lagrangian
from .spectral import SpectralSummary, kernel_image_flags, spectral_summary
from .triality import Branch, TrialityReport, Verdict, analyze_pair, factorize, verdict_negdef, verdict_psd

__version__ = "0.1.0"
