"""Verdicts for critical pairs of the complementary function.

Two regimes are covered:

* ``A(sigma) >= 0``: min-max duality, ``f(x) = Xi(x, sigma) = D(sigma)`` with x a
  global minimizer of f and sigma a global maximizer of D over S_col+.
* ``A(sigma) < 0`` with V twice differentiable Legendre type: write
  ``-A(sigma) = E^T E`` and ``hess V(q(x)) = F^T F``, set ``d_i = E^{-T}(A_i x - b_i)``,
  ``J = [d_1 ... d_m]`` and ``H = J F^T``. Then
  ``hess f(x) = E^T (H H^T - I) E`` and ``hess D(sigma) = F^{-1}(H^T H - I) F^{-T}``,
  so the local nature of x and sigma is read off the spectra of ``H H^T`` and ``H^T H``
  relative to 1.

Justification tags used in reports:

============================  ==============================================================
``min_max_duality``           A(sigma) psd: x global min of f, sigma global max of D on S_col+
``double_max``                ``||H v|| < 1`` on the unit sphere: both are strict local maxima
``primal_strict_min``         ``||H^T u|| > 1``: x strict local min of f
``dual_strict_min``           ``||H v|| > 1``: sigma strict local min of D
``double_min_square``         m = n, ``{A_i x - b_i}`` a basis and ``||H v|| > 1``: both strict minima
``primal_no_extremum_m_lt_n`` sigma strict local min and m < n: x is not a local extremum
``dual_no_extremum_m_gt_n``   x strict local min and m > n: sigma is not a local extremum
``straddles_one``             spectrum on both sides of 1: saddle by second-order conditions
``nonsingular_primal_hessian`` det hess f(x) != 0: x local max iff sigma local max (and min, m = n)
``in_band``                   an eigenvalue lies within the decision band around 1
``cone_max_certificate``      cone indicator, A(sigma) nsd, sign-flipped KKT: x global max of q_0
``sublinear_dual_convexity``  cone indicator: D convex on S_col-, sigma interior critical
============================  ==============================================================
"""
import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import cholesky, solve_triangular

from . import tolerances as tol
from .canonical import Kind, Smoothness
from .complementary import critical_pair_residual, f_hess, f_value, xi_value
from .dual import classify_sigma, d_grad, d_value
from .exceptions import (
    BoundaryOrOutsideDomain,
    NotCritical,
    NotGammaSC2,
    NotNegativeDefinite,
    PreconditionFailed,
)
from .quadratic import assemble, eval_q, q_jacobian
from .spectral import spectral_summary

BASIS_RTOL = 1e-8


class Verdict(str, enum.Enum):
    GLOBAL_MIN = "GlobalMin"
    UNIQUE_GLOBAL_MIN = "UniqueGlobalMin"
    GLOBAL_MAX = "GlobalMax"
    LOCAL_STRICT_MAX = "LocalStrictMax"
    LOCAL_STRICT_MIN = "LocalStrictMin"
    NOT_LOCAL_EXTREMUM = "NotLocalExtremum"
    INCONCLUSIVE_NECESSARY_ONLY = "InconclusiveNecessaryOnly"
    INDETERMINATE = "Indeterminate"


class Branch(str, enum.Enum):
    MIN_MAX_PSD = "MinMax_PSD"
    MIN_MAX_PD = "MinMax_PD"
    SADDLE_NEG_DEF = "SaddleNegDef"
    CONE_MAX = "ConeMax"
    NOT_APPLICABLE = "NotApplicable"


@dataclass(frozen=True)
class TrialityFactorization:
    E: np.ndarray
    F: np.ndarray
    J: np.ndarray  # column i is d_i
    H: np.ndarray
    spectra: object
    x: np.ndarray
    sigma: np.ndarray

    @property
    def d(self):
        return [self.J[:, i] for i in range(self.J.shape[1])]


@dataclass
class TrialityReport:
    x: np.ndarray
    sigma: np.ndarray
    region: object
    branch: Branch
    x_verdict: Verdict
    sigma_verdict: Verdict
    tags: list = field(default_factory=list)
    numbers: dict = field(default_factory=dict)
    nonsingular_f_hess: bool = None
    spectra: object = None

    @property
    def justification(self):
        return {"tags": list(self.tags), **self.numbers}

    def to_dict(self):
        return {
            "x": np.asarray(self.x).tolist(),
            "sigma": np.asarray(self.sigma).tolist(),
            "region": self.region.to_dict(),
            "branch": self.branch.value,
            "x_verdict": self.x_verdict.value,
            "sigma_verdict": self.sigma_verdict.value,
            "justification": self.justification,
            "nonsingular_f_hess": self.nonsingular_f_hess,
            "spectral": None if self.spectra is None else self.spectra.to_dict(),
        }


def _residuals_or_raise(p, x, sigma, tol_critical, exc=PreconditionFailed):
    try:
        r_x, r_s = critical_pair_residual(p, x, sigma)
    except BoundaryOrOutsideDomain as e:
        if exc is PreconditionFailed:
            raise PreconditionFailed("sigma not in int dom V*", str(e)) from e
        raise exc(f"sigma not in int dom V*: {e}") from e
    if r_x > tol_critical or r_s > tol_critical:
        detail = f"r_x={r_x:.3e}, r_sigma={r_s:.3e}"
        if exc is PreconditionFailed:
            raise PreconditionFailed("pair is not critical", detail)
        raise exc(detail)
    return r_x, r_s


def _primal_hessian_nonsingular(p, x, band=tol.BAND):
    if not p.v.is_smooth:
        return None
    w = np.linalg.eigvalsh(f_hess(p, x))
    return bool(np.min(np.abs(w)) > band * max(1.0, float(np.max(np.abs(w)))))


def verdict_psd(p, x, sigma, tol_critical=tol.TOL_CRITICAL, tol_psd=tol.TOL_PSD, tol_chain=1e-8):
    """Min-max verdict for a critical pair with ``A(sigma) >= 0``.

    Raises:
        PreconditionFailed: sigma outside dom V*, the pair is not critical,
            or A(sigma) is not positive semidefinite. ``exc.clause`` says which.
    """
    x = p.check_x(x)
    sigma = p.check_sigma(sigma)
    if not p.v.in_dom_conj(sigma):
        raise PreconditionFailed("sigma not in dom V*")
    r_x, r_s = _residuals_or_raise(p, x, sigma, tol_critical)
    region = classify_sigma(p, sigma, tol_psd)
    if not region.in_Ycol_plus:
        raise PreconditionFailed(
            "A(sigma) is not positive semidefinite", f"lambda_min={region.eigen_extremes[0]:.3e}"
        )
    fx, xi, dv = f_value(p, x), xi_value(p, x, sigma), d_value(p, sigma, tol_psd)
    gap = max(abs(fx - xi), abs(xi - dv), abs(fx - dv))
    if not gap <= tol_chain * (1.0 + abs(fx)):
        raise PreconditionFailed("f(x) = Xi(x, sigma) = D(sigma) fails", f"gap={gap:.3e}")
    unique = region.in_Yplus
    return TrialityReport(
        x=x,
        sigma=sigma,
        region=region,
        branch=Branch.MIN_MAX_PD if unique else Branch.MIN_MAX_PSD,
        x_verdict=Verdict.UNIQUE_GLOBAL_MIN if unique else Verdict.GLOBAL_MIN,
        sigma_verdict=Verdict.GLOBAL_MAX,
        tags=["min_max_duality"],
        numbers={"f": fx, "xi": xi, "D": dv, "r_x": r_x, "r_sigma": r_s},
        nonsingular_f_hess=_primal_hessian_nonsingular(p, x),
    )


def factorize(p, x, sigma, tol_critical=tol.TOL_CRITICAL, tol_psd=tol.TOL_PSD):
    """Factor ``-A(sigma) = E^T E``, ``hess V(q(x)) = F^T F`` and build ``H = J F^T``."""
    x = p.check_x(x)
    sigma = p.check_sigma(sigma)
    if p.v.smoothness_class is not Smoothness.GAMMA_SC2:
        raise NotGammaSC2(f"kind {p.v.kind.value}")
    _residuals_or_raise(p, x, sigma, tol_critical, exc=NotCritical)
    region = classify_sigma(p, sigma, tol_psd)
    if not region.in_Yminus or region.boundary:
        raise NotNegativeDefinite(f"eigenvalues of A(sigma) in {region.eigen_extremes}")
    A, _, _ = assemble(p, sigma)
    try:
        L = cholesky(-A, lower=True)
        LF = cholesky(p.v.hess(eval_q(p, x)), lower=True)
    except np.linalg.LinAlgError as e:
        raise NotNegativeDefinite(str(e)) from e
    J = solve_triangular(L, q_jacobian(p, x).T, lower=True)
    H = J @ LF
    return TrialityFactorization(L.T, LF.T, J, H, spectral_summary(H), x, sigma)


def _classify(strict_max, strict_min, not_max, not_min):
    if strict_max:
        return Verdict.LOCAL_STRICT_MAX
    if strict_min:
        return Verdict.LOCAL_STRICT_MIN
    if not_max and not_min:
        return Verdict.NOT_LOCAL_EXTREMUM
    if not_max or not_min:
        return Verdict.INCONCLUSIVE_NECESSARY_ONLY
    return Verdict.INDETERMINATE


def verdict_negdef(p, x, sigma, band=tol.BAND, tol_critical=tol.TOL_CRITICAL, tol_psd=tol.TOL_PSD):
    """Local verdicts for a critical pair with ``A(sigma) < 0`` from the spectra of H.

    Eigenvalues within ``band`` of 1 make the affected verdict Indeterminate
    (or InconclusiveNecessaryOnly when one extremum type is still excluded).
    """
    fz = factorize(p, x, sigma, tol_critical, tol_psd)
    s = fz.spectra
    n, m = fz.H.shape
    lo, hi = 1.0 - band, 1.0 + band
    # alpha = lambda_max(Q) = lambda_max(R)
    x_v = _classify(s.alpha < lo, s.lambda_min_Q > hi, s.alpha > hi, s.lambda_min_Q < lo)
    s_v = _classify(s.beta < lo, s.lambda_min_R > hi, s.beta > hi, s.lambda_min_R < lo)

    G = q_jacobian(p, fz.x)
    sv = np.linalg.svd(G, compute_uv=False)
    basis = m == n and sv[-1] > BASIS_RTOL * sv[0]
    nonsingular = bool(np.min(np.abs(s.eig_Q - 1.0)) > band)

    tags = []
    if x_v is Verdict.LOCAL_STRICT_MAX and s_v is Verdict.LOCAL_STRICT_MAX:
        tags.append("double_max")
    if x_v is Verdict.LOCAL_STRICT_MIN:
        tags.append("primal_strict_min")
    if s_v is Verdict.LOCAL_STRICT_MIN:
        tags.append("dual_strict_min")
    if basis and x_v is Verdict.LOCAL_STRICT_MIN and s_v is Verdict.LOCAL_STRICT_MIN:
        tags.append("double_min_square")
    if m < n and s_v is Verdict.LOCAL_STRICT_MIN:
        tags.append("primal_no_extremum_m_lt_n")
    if m > n and x_v is Verdict.LOCAL_STRICT_MIN:
        tags.append("dual_no_extremum_m_gt_n")
    if Verdict.NOT_LOCAL_EXTREMUM in (x_v, s_v) and not {
        "primal_no_extremum_m_lt_n",
        "dual_no_extremum_m_gt_n",
    } & set(tags):
        tags.append("straddles_one")
    if nonsingular:
        tags.append("nonsingular_primal_hessian")
    if Verdict.INDETERMINATE in (x_v, s_v) or Verdict.INCONCLUSIVE_NECESSARY_ONLY in (x_v, s_v):
        tags.append("in_band")

    return TrialityReport(
        x=fz.x,
        sigma=fz.sigma,
        region=classify_sigma(p, fz.sigma, tol_psd),
        branch=Branch.SADDLE_NEG_DEF,
        x_verdict=x_v,
        sigma_verdict=s_v,
        tags=tags,
        numbers={
            "alpha": s.alpha,
            "beta": s.beta,
            "lambda_min_HHt": s.lambda_min_Q,
            "lambda_min_HtH": s.lambda_min_R,
            "band": band,
            "basis": bool(basis),
            "f": f_value(p, fz.x),
            "D": d_value(p, fz.sigma, tol_psd),
        },
        nonsingular_f_hess=nonsingular,
        spectra=s,
    )


def _cone_max_report(p, x, sigma, tol_critical, tol_psd):
    from .cone import ConeProblem, check_j_lkkt_max

    region = classify_sigma(p, sigma, tol_psd)
    cert = check_j_lkkt_max(ConeProblem(p), x, sigma, tol_critical=tol_critical, tol_psd=tol_psd)
    tags = []
    x_v = Verdict.INDETERMINATE
    if cert.kind == "GlobalMax":
        x_v = Verdict.GLOBAL_MAX
        tags.append("cone_max_certificate")
    s_v = Verdict.INDETERMINATE
    if region.in_S0 and p.v.in_int_dom_conj(sigma):
        if np.max(np.abs(d_grad(p, sigma, tol_psd))) <= tol_critical:
            # D is convex on the convex set S_col- and sigma is an interior critical point
            s_v = Verdict.GLOBAL_MIN
            tags.append("sublinear_dual_convexity")
    return TrialityReport(
        x=x,
        sigma=sigma,
        region=region,
        branch=Branch.CONE_MAX,
        x_verdict=x_v,
        sigma_verdict=s_v,
        tags=tags,
        numbers={"f": f_value(p, x), "D": d_value(p, sigma, tol_psd), "violations": cert.violations},
    )


def analyze_pair(p, x, sigma, band=tol.BAND, tol_critical=tol.TOL_CRITICAL, tol_psd=tol.TOL_PSD):
    """Pick the applicable verdict for a critical pair and return its report.

    Pairs that fit no branch (indefinite or singular A(sigma) outside the psd
    case) get a NotApplicable report with Indeterminate verdicts.
    """
    x = p.check_x(x)
    sigma = p.check_sigma(sigma)
    region = classify_sigma(p, sigma, tol_psd)
    if region.in_Scol_plus:
        return verdict_psd(p, x, sigma, tol_critical, tol_psd)
    if p.v.kind is Kind.INDICATOR_CONE and region.in_Scol_minus:
        return _cone_max_report(p, x, sigma, tol_critical, tol_psd)
    if p.v.is_smooth and region.in_Sminus and not region.boundary:
        return verdict_negdef(p, x, sigma, band, tol_critical, tol_psd)
    return TrialityReport(
        x=x,
        sigma=sigma,
        region=region,
        branch=Branch.NOT_APPLICABLE,
        x_verdict=Verdict.INDETERMINATE,
        sigma_verdict=Verdict.INDETERMINATE,
        numbers={"f": f_value(p, x), "D": d_value(p, sigma, tol_psd)},
    )
