"""Regions of the dual variable, the dual function D and a Newton solver for grad D = 0."""
import logging
from dataclasses import dataclass, field

import numpy as np

from . import tolerances as tol
from .canonical import conj_grad_or_zero, conj_hess_or_zero
from .complementary import xi_value
from .exceptions import (
    BoundaryOrOutsideDomain,
    LeftRegion,
    MaxIterations,
    NotInYcol,
    SingularHessian,
    StalledLineSearch,
)
from .quadratic import assemble, eval_q, q_jacobian

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RegionLabel:
    """Membership of sigma in the sets Y0, Y+, Y-, Ycol, Ycol+, Ycol- and dom V*.

    The S-sets are the Y-sets intersected with dom V*; they are exposed as
    properties. ``boundary`` is set when some eigenvalue of A(sigma) falls in
    the relative band ``|lambda| <= tol_psd * ||A(sigma)||_2``; verdicts that
    depend on strict definiteness then report Indeterminate.
    """

    in_dom_Vstar: bool
    in_int_dom_Vstar: bool
    in_Y0: bool
    in_Yplus: bool
    in_Yminus: bool
    in_Ycol: bool
    in_Ycol_plus: bool
    in_Ycol_minus: bool
    boundary: bool
    eigen_extremes: tuple
    inertia: tuple  # (n_positive, n_negative, n_zero)

    @property
    def in_S0(self):
        return self.in_Y0 and self.in_dom_Vstar

    @property
    def in_Splus(self):
        return self.in_Yplus and self.in_dom_Vstar

    @property
    def in_Sminus(self):
        return self.in_Yminus and self.in_dom_Vstar

    @property
    def in_Scol(self):
        return self.in_Ycol and self.in_dom_Vstar

    @property
    def in_Scol_plus(self):
        return self.in_Ycol_plus and self.in_dom_Vstar

    @property
    def in_Scol_minus(self):
        return self.in_Ycol_minus and self.in_dom_Vstar

    @property
    def name(self):
        """Most specific region name, e.g. ``"S-"`` or ``"Y0"``."""
        prefix = "S" if self.in_dom_Vstar else "Y"
        if self.in_Yplus:
            return prefix + "+"
        if self.in_Yminus:
            return prefix + "-"
        if self.in_Y0:
            return prefix + "0"
        if self.in_Ycol_plus:
            return prefix + "col+"
        if self.in_Ycol_minus:
            return prefix + "col-"
        if self.in_Ycol:
            return prefix + "col"
        return "none" if self.in_dom_Vstar else "outside"

    def to_dict(self):
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["eigen_extremes"] = list(self.eigen_extremes)
        d["inertia"] = list(self.inertia)
        d.update(
            name=self.name,
            in_S0=self.in_S0,
            in_Splus=self.in_Splus,
            in_Sminus=self.in_Sminus,
            in_Scol=self.in_Scol,
            in_Scol_plus=self.in_Scol_plus,
            in_Scol_minus=self.in_Scol_minus,
        )
        return d


@dataclass(frozen=True)
class DualPoint:
    sigma: np.ndarray
    region: RegionLabel
    x_of_sigma: np.ndarray = None
    d_value: float = np.nan
    grad_norm: float = np.nan
    iterations: int = 0
    history: list = field(default_factory=list, repr=False)


def _spectral_split(p, sigma, tol_psd, tol_range):
    A, b, c = assemble(p, sigma)
    w, U = np.linalg.eigh(A)
    scale = float(np.max(np.abs(w))) if w.size else 0.0
    thr = tol_psd * scale
    keep = np.abs(w) > thr
    # minimum-norm solution of A x = b through the thresholded pseudo-inverse
    coef = np.zeros_like(w)
    coef[keep] = (U[:, keep].T @ b) / w[keep]
    x = U @ coef
    resid = float(np.max(np.abs(A @ x - b))) if b.size else 0.0
    in_col = resid <= tol_range * (1.0 + float(np.max(np.abs(b))))
    return A, b, w, thr, x, in_col


def _label(p, sigma, w, thr, in_col):
    lam_min, lam_max = float(w[0]), float(w[-1])
    psd = lam_min >= -thr
    nsd = lam_max <= thr
    pd = lam_min > thr
    nd = lam_max < -thr
    n_zero = int(np.sum(np.abs(w) <= thr))
    inertia = (int(np.sum(w > thr)), int(np.sum(w < -thr)), n_zero)
    y0 = n_zero == 0
    return RegionLabel(
        in_dom_Vstar=p.v.in_dom_conj(sigma),
        in_int_dom_Vstar=p.v.in_int_dom_conj(sigma),
        in_Y0=y0,
        in_Yplus=pd,
        in_Yminus=nd,
        in_Ycol=in_col,
        in_Ycol_plus=in_col and psd,
        in_Ycol_minus=in_col and nsd,
        boundary=n_zero > 0,
        eigen_extremes=(lam_min, lam_max),
        inertia=inertia,
    )


def classify_sigma(p, sigma, tol_psd=tol.TOL_PSD, tol_range=tol.TOL_RANGE):
    """Classify sigma by the eigenvalues of A(sigma) and the range test for b(sigma)."""
    sigma = p.check_sigma(sigma)
    _, _, w, thr, _, in_col = _spectral_split(p, sigma, tol_psd, tol_range)
    return _label(p, sigma, w, thr, in_col)


def solve_x_of_sigma(p, sigma, tol_psd=tol.TOL_PSD, tol_range=tol.TOL_RANGE):
    """Solve ``A(sigma) x = b(sigma)``; minimum-norm solution when A(sigma) is singular."""
    sigma = p.check_sigma(sigma)
    A, b, w, thr, x, in_col = _spectral_split(p, sigma, tol_psd, tol_range)
    if not in_col:
        raise NotInYcol(f"b(sigma) not in Im A(sigma) at sigma={sigma.tolist()}")
    if np.all(np.abs(w) > thr):
        x = np.linalg.solve(A, b)
    return x


def dual_point(p, sigma, tol_psd=tol.TOL_PSD, tol_range=tol.TOL_RANGE):
    sigma = p.check_sigma(sigma)
    region = classify_sigma(p, sigma, tol_psd, tol_range)
    x = solve_x_of_sigma(p, sigma, tol_psd, tol_range) if region.in_Ycol else None
    return DualPoint(sigma, region, x, d_value(p, sigma, tol_psd, tol_range))


def d_value(p, sigma, tol_psd=tol.TOL_PSD, tol_range=tol.TOL_RANGE):
    """Dual function ``D(sigma) = Xi(x, sigma)`` with ``A(sigma) x = b(sigma)``.

    Returns ``-inf`` outside dom V* and ``nan`` when b(sigma) is not in the
    range of A(sigma); both mean sigma is not in S_col.
    """
    sigma = p.check_sigma(sigma)
    if not p.v.in_dom_conj(sigma):
        return -np.inf
    try:
        x = solve_x_of_sigma(p, sigma, tol_psd, tol_range)
    except NotInYcol:
        return np.nan
    return xi_value(p, x, sigma)


def _require_int_s0(p, sigma, tol_psd):
    sigma = p.check_sigma(sigma)
    if not p.v.in_int_dom_conj(sigma):
        raise BoundaryOrOutsideDomain(f"sigma={sigma.tolist()} not in int dom V*")
    A, b, _ = assemble(p, sigma)
    w = np.linalg.eigvalsh(A)
    if np.min(np.abs(w)) <= tol_psd * np.max(np.abs(w)):
        raise BoundaryOrOutsideDomain(f"A(sigma) is singular at sigma={sigma.tolist()}")
    return sigma, A, b


def d_grad(p, sigma, tol_psd=tol.TOL_PSD):
    """``grad D(sigma) = q(x(sigma)) - grad V*(sigma)`` on int S0."""
    sigma, A, b = _require_int_s0(p, sigma, tol_psd)
    x = np.linalg.solve(A, b)
    return eval_q(p, x) - conj_grad_or_zero(p.v, sigma)


def d_hess(p, sigma, tol_psd=tol.TOL_PSD):
    """Hessian of D on int S0: ``-G A(sigma)^{-1} G^T - hess V*(sigma)``, G rows ``A_i x(sigma) - b_i``."""
    sigma, A, b = _require_int_s0(p, sigma, tol_psd)
    x = np.linalg.solve(A, b)
    G = q_jacobian(p, x)
    Hd = -G @ np.linalg.solve(A, G.T) - conj_hess_or_zero(p.v, sigma)
    return 0.5 * (Hd + Hd.T)


def _inertia(p, sigma, tol_psd):
    w = np.linalg.eigvalsh(assemble(p, sigma)[0])
    thr = tol_psd * np.max(np.abs(w))
    return int(np.sum(w > thr)), int(np.sum(w < -thr)), int(np.sum(np.abs(w) <= thr))


def _admissible(p, sigma, inertia, tol_psd):
    if not np.all(np.isfinite(sigma)) or not p.v.in_int_dom_conj(sigma):
        return False
    return _inertia(p, sigma, tol_psd) == inertia


def newton_critical_point(
    p,
    sigma0,
    tol_grad=tol.TOL_NEWTON,
    max_iter=100,
    max_halvings=40,
    tol_psd=tol.TOL_PSD,
):
    """Find sigma with ``grad D(sigma) = 0`` by damped Newton iteration.

    Every accepted iterate stays in int dom V* and keeps the inertia of
    A(sigma0), so the solver never crosses the singular set of A. A step is
    halved until it is admissible and does not increase ``||grad D||_inf``.

    Raises:
        BoundaryOrOutsideDomain: sigma0 is not in int S0 (or not in int dom V*).
        SingularHessian: the Hessian of D cannot be inverted.
        LeftRegion: every trial step within ``max_halvings`` leaves the region.
        StalledLineSearch: no admissible trial step decreases the gradient norm.
        MaxIterations: ``max_iter`` Newton steps were taken without convergence.
    """
    sigma = p.check_sigma(sigma0).copy()
    g = d_grad(p, sigma, tol_psd)
    inertia = _inertia(p, sigma, tol_psd)
    gnorm = float(np.max(np.abs(g)))
    history = [gnorm]
    it = 0
    while gnorm > tol_grad:
        if it >= max_iter:
            raise MaxIterations(f"no convergence after {max_iter} iterations", sigma, it)
        H = d_hess(p, sigma, tol_psd)
        try:
            step = -np.linalg.solve(H, g)
        except np.linalg.LinAlgError as exc:
            raise SingularHessian(str(exc), sigma, it) from exc
        if not np.all(np.isfinite(step)):
            raise SingularHessian("non-finite Newton step", sigma, it)
        t = 1.0
        left = False
        for _ in range(max_halvings + 1):
            trial = sigma + t * step
            if _admissible(p, trial, inertia, tol_psd):
                g_trial = d_grad(p, trial, tol_psd)
                n_trial = float(np.max(np.abs(g_trial)))
                if n_trial < gnorm or n_trial <= tol_grad:
                    break
                left = False
            else:
                left = True
            t *= 0.5
        else:
            cls = LeftRegion if left else StalledLineSearch
            raise cls(f"line search failed at iteration {it}", sigma, it)
        sigma, g, gnorm = trial, g_trial, n_trial
        it += 1
        history.append(gnorm)
        logger.debug("newton it=%d |grad D|=%.3e t=%.3g", it, gnorm, t)
    region = classify_sigma(p, sigma, tol_psd)
    x = np.linalg.solve(*assemble(p, sigma)[:2])
    return DualPoint(sigma, region, x, d_value(p, sigma, tol_psd), gnorm, it, history)
