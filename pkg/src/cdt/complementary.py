"""The total complementary function, the primal function, and their derivatives.

``Xi(x, sigma) = q_0(x) + <q(x), sigma> - V*(sigma)`` and ``f = q_0 + V o q``.
"""
from dataclasses import dataclass

import numpy as np

from . import tolerances as tol
from .canonical import Kind, conj_grad_or_zero, subdifferential_violation
from .exceptions import NotInX0, UnsupportedForKind
from .quadratic import assemble, eval_q, eval_q0, lagrangian, q_jacobian


@dataclass(frozen=True)
class PrimalPoint:
    x: np.ndarray
    in_X0: bool


def in_X0(p, x):
    return p.v.in_int_dom(eval_q(p, x))


def primal_point(p, x):
    x = p.check_x(x)
    return PrimalPoint(x, in_X0(p, x))


def xi_value(p, x, sigma):
    """Return ``Xi(x, sigma)``; ``-inf`` when sigma is outside dom V*."""
    conj = p.v.conjugate(sigma)
    if not np.isfinite(conj):
        return -np.inf
    return lagrangian(p, x, sigma) - conj


def f_value(p, x):
    """Return ``f(x)``; ``+inf`` outside dom f."""
    val = p.v.value(eval_q(p, x))
    if not np.isfinite(val):
        return np.inf
    return eval_q0(p, x) + val


def _require_smooth_x0(p, x):
    if p.v.kind is Kind.INDICATOR_CONE:
        raise UnsupportedForKind("f is not differentiable for IndicatorCone")
    y = eval_q(p, x)
    if not p.v.in_int_dom(y):
        raise NotInX0(f"q(x) = {y.tolist()} not in int dom V")
    return y


def f_grad(p, x):
    """``grad f(x) = A_0 x - b_0 + sum_i dV/dy_i(q(x)) (A_i x - b_i)``."""
    x = p.check_x(x)
    y = _require_smooth_x0(p, x)
    g = p.v.grad(y)
    return p.As[0] @ x - p.bs[0] + q_jacobian(p, x).T @ g


def f_hess(p, x):
    """Hessian of f: ``A(grad V(q(x))) + G^T hess V(q(x)) G`` with G the Jacobian of q."""
    x = p.check_x(x)
    y = _require_smooth_x0(p, x)
    A, _, _ = assemble(p, p.v.grad(y))
    G = q_jacobian(p, x)
    Hf = A + G.T @ p.v.hess(y) @ G
    return 0.5 * (Hf + Hf.T)


def xi_grad_x(p, x, sigma):
    x = p.check_x(x)
    A, b, _ = assemble(p, sigma)
    return A @ x - b


def xi_hess_xx(p, sigma):
    return assemble(p, sigma)[0]


def xi_grad_sigma(p, x, sigma):
    """``q(x) - grad V*(sigma)``; requires sigma in int dom V*."""
    return eval_q(p, x) - conj_grad_or_zero(p.v, sigma)


def critical_pair_residual(p, x, sigma):
    """Infinity-norm residuals ``(r_x, r_sigma)`` of the two stationarity conditions.

    ``r_x = ||A(sigma) x - b(sigma)||``. For smooth V, ``r_sigma = ||q(x) - grad V*(sigma)||``
    (sigma must be interior). For the cone indicator, where ``V*`` is not differentiable on
    the boundary, ``r_sigma`` is the largest violation of ``q(x) in dV*(sigma)``.
    """
    r_x = float(np.max(np.abs(xi_grad_x(p, x, sigma))))
    if p.v.kind is Kind.INDICATOR_CONE:
        r_sigma = subdifferential_violation(p.v, eval_q(p, x), p.check_sigma(sigma))
    else:
        r_sigma = float(np.max(np.abs(xi_grad_sigma(p, x, sigma))))
    return r_x, r_sigma


def is_critical_pair(p, x, sigma, tol_critical=tol.TOL_CRITICAL):
    r_x, r_s = critical_pair_residual(p, x, sigma)
    return r_x <= tol_critical and r_s <= tol_critical
