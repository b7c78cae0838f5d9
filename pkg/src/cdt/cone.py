"""Indicator-cone specialization: quadratic programs with quadratic constraints.

With ``V`` the indicator of ``C_J`` the primal problem is minimizing ``q_0`` over
``X_J = {x : q_j(x) = 0 for j in J, q_j(x) <= 0 otherwise}`` and the dual function
is the Lagrangian dual ``D_L(sigma) = L(x, sigma)`` for any x solving
``A(sigma) x = b(sigma)``. The checks here verify given pairs and emit
certificates that carry every number needed to re-check them by hand.
"""
from dataclasses import dataclass, field

import numpy as np

from . import tolerances as tol
from .canonical import Kind
from .dual import classify_sigma, solve_x_of_sigma
from .exceptions import NotCritical, NotInYcol, UnsupportedForKind
from .quadratic import eval_q, eval_q0, lagrangian
from .complementary import xi_grad_x

COMPLEMENTARITY_TOL = 1e-8


@dataclass(frozen=True)
class ConeProblem:
    base: object

    def __post_init__(self):
        if self.base.v.kind is not Kind.INDICATOR_CONE:
            raise UnsupportedForKind("ConeProblem needs an IndicatorCone V")

    @property
    def J(self):
        return self.base.v.J

    def feasible(self, x, atol=tol.TOL_CRITICAL):
        """Whether x is in ``X_J``."""
        return self.base.v.in_dom(eval_q(self.base, x), atol=atol)


@dataclass
class ConeCertificate:
    """Outcome of a KKT check.

    ``kind`` is ``"GlobalMin"`` / ``"GlobalMax"`` when a certificate is issued
    and ``None`` otherwise; ``violations`` then lists what failed.
    """

    kind: str
    unique: bool
    chain: dict
    violations: list = field(default_factory=list)
    region: object = None

    @property
    def certified(self):
        return self.kind is not None

    def to_dict(self):
        return {
            "kind": self.kind,
            "unique": self.unique,
            "chain": self.chain,
            "violations": list(self.violations),
            "region": None if self.region is None else self.region.name,
        }


def dl_value(p, sigma, tol_psd=tol.TOL_PSD):
    """Lagrangian dual ``D_L``; ``nan`` when b(sigma) is not in the range of A(sigma)."""
    try:
        x = solve_x_of_sigma(p, sigma, tol_psd)
    except NotInYcol:
        return np.nan
    return lagrangian(p, x, sigma)


def _complementary(s, q):
    return abs(s * q) <= COMPLEMENTARITY_TOL * (1 + abs(s)) * (1 + abs(q))


def _kkt_violations(cp, x, sigma, sign, tol_critical):
    p = cp.base
    out = []
    r = float(np.max(np.abs(xi_grad_x(p, x, sigma))))
    if r > tol_critical:
        out.append(f"grad_x L residual {r:.3e}")
    q = eval_q(p, x)
    for j in range(p.m):
        if j in cp.J:
            if abs(q[j]) > tol_critical:
                out.append(f"equality {j}: q_{j}(x) = {q[j]:.3e}")
            continue
        if sign * sigma[j] < -tol_critical:
            word = "negative" if sign > 0 else "positive"
            out.append(f"sign {j}: sigma_{j} = {sigma[j]:.3e} is {word}")
        if q[j] > tol_critical:
            out.append(f"feasibility {j}: q_{j}(x) = {q[j]:.3e} > 0")
        if not _complementary(sigma[j], q[j]):
            out.append(f"complementarity {j}: sigma_{j} q_{j}(x) = {sigma[j] * q[j]:.3e}")
    return out


def _certify(cp, x, sigma, sign, tol_critical, tol_psd):
    p = cp.base
    x = p.check_x(x)
    sigma = p.check_sigma(sigma)
    violations = _kkt_violations(cp, x, sigma, sign, tol_critical)
    region = classify_sigma(p, sigma, tol_psd)
    chain = {"q0": eval_q0(p, x), "L": lagrangian(p, x, sigma), "D_L": dl_value(p, sigma, tol_psd)}
    if violations:
        return ConeCertificate(None, False, chain, violations, region)
    if sign > 0:
        ok, unique, kind = region.in_Ycol_plus, region.in_Yplus, "GlobalMin"
        failure = "A(sigma) is not positive semidefinite"
    else:
        ok, unique, kind = region.in_Ycol_minus, region.in_Yminus, "GlobalMax"
        failure = "A(sigma) is not negative semidefinite"
    if not ok:
        return ConeCertificate(None, False, chain, [failure], region)
    return ConeCertificate(kind, bool(unique), chain, [], region)


def check_j_lkkt(cp, x, sigma, tol_critical=tol.TOL_CRITICAL, tol_psd=tol.TOL_PSD):
    """Check the KKT conditions (sigma_j >= 0 off J) and certify a global minimum of q_0 on X_J.

    The certificate requires A(sigma) psd; it is unique when A(sigma) is positive definite.
    """
    return _certify(cp, x, sigma, +1, tol_critical, tol_psd)


def check_j_lkkt_max(cp, x, sigma, tol_critical=tol.TOL_CRITICAL, tol_psd=tol.TOL_PSD):
    """Mirror of :func:`check_j_lkkt`: sigma_j <= 0 off J and A(sigma) nsd give a global maximum."""
    return _certify(cp, x, sigma, -1, tol_critical, tol_psd)


@dataclass
class EqualityDualityReport:
    chain: dict
    min_certificate: bool
    max_certificate: bool
    region: object

    def to_dict(self):
        return {
            "chain": self.chain,
            "min_certificate": self.min_certificate,
            "max_certificate": self.max_certificate,
            "region": self.region.name,
        }


def equality_duality(cp, x, sigma, tol_critical=tol.TOL_CRITICAL, tol_psd=tol.TOL_PSD):
    """Two-sided duality for equality constraints (J = all indices) at a critical point of L."""
    p = cp.base
    if cp.J != frozenset(range(p.m)):
        raise ValueError("equality_duality needs J = {0, ..., m-1}")
    x = p.check_x(x)
    sigma = p.check_sigma(sigma)
    r_x = float(np.max(np.abs(xi_grad_x(p, x, sigma))))
    r_s = float(np.max(np.abs(eval_q(p, x))))
    if r_x > tol_critical or r_s > tol_critical:
        raise NotCritical(f"r_x={r_x:.3e}, r_sigma={r_s:.3e}")
    region = classify_sigma(p, sigma, tol_psd)
    chain = {"q0": eval_q0(p, x), "L": lagrangian(p, x, sigma), "D_L": dl_value(p, sigma, tol_psd)}
    return EqualityDualityReport(chain, region.in_Ycol_plus, region.in_Ycol_minus, region)
