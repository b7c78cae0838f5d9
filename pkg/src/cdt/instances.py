"""Named problem instances and random instance generators."""
import numpy as np
from scipy.optimize import brentq

from .canonical import CanonicalFunction, Kind
from .quadratic import ProblemInstance, QuadraticForm


def example1():
    """``n = m = 1``, ``V`` the indicator of ``(-inf, 0]``, ``q_0 = -x^2/2 + x``, ``q_1 = (x^2 - 1)/2``.

    Here f is ``q_0`` restricted to ``[-1, 1]``. The pair (x, sigma) = (1, 0) is
    critical with ``A(0) = -1 < 0``, yet x = 1 is the global maximizer of f and
    sigma = 0 the global minimizer of D on ``[0, 1)``.
    """
    return ProblemInstance(
        (QuadraticForm([[-1.0]], [-1.0], 0.0), QuadraticForm([[1.0]], [0.0], -0.5)),
        CanonicalFunction.indicator_cone(1, ()),
    )


def double_well():
    """``f(x) = -x^2/2 + (x^2/2 - 1)^2 / 2`` (b = 0, so x(sigma) = 0 off sigma = 1)."""
    return ProblemInstance(
        (QuadraticForm([[-1.0]], [0.0], 0.0), QuadraticForm([[1.0]], [0.0], -1.0)),
        CanonicalFunction.quadratic([1.0]),
    )


def tilted_double_well(force=0.5, depth=1.0):
    """``f(x) = (x^2/2 - depth)^2 / 2 - force * x``.

    With the defaults the dual critical points are the roots of
    ``sigma^3 + sigma^2 - 1/8``: ``(-1 + sqrt 5)/4``, ``-1/2`` and ``(-1 - sqrt 5)/4``.
    """
    return ProblemInstance(
        (QuadraticForm([[0.0]], [force], 0.0), QuadraticForm([[1.0]], [0.0], -depth)),
        CanonicalFunction.quadratic([1.0]),
    )


def trust_region(A0=((-2.0, 0.0), (0.0, 1.0)), b0=(0.5, 0.3), radius=1.0, sign=1.0):
    """Quadratic ``sign * q_0`` over the disk ``||x|| <= radius`` (one ball constraint, J empty).

    ``sign = -1`` gives the maximization variant, i.e. ``q_0`` negated.
    """
    A0 = sign * np.asarray(A0, dtype=float)
    b0 = sign * np.asarray(b0, dtype=float)
    n = A0.shape[0]
    return ProblemInstance(
        (QuadraticForm(A0, b0, 0.0), QuadraticForm(np.eye(n), np.zeros(n), -0.5 * radius**2)),
        CanonicalFunction.indicator_cone(1, ()),
    )


def trust_region_kkt_pair(p, maximize=False):
    """Boundary KKT pair of a ball-constrained quadratic via the secular equation.

    Solves ``||(A_0 + sigma I)^{-1} b_0|| = r`` for sigma above ``-lambda_min(A_0)``
    (or below ``-lambda_max(A_0)`` when ``maximize``).
    """
    A0, b0 = p.As[0], p.bs[0]
    r = np.sqrt(-2.0 * p.cs[1])
    w = np.linalg.eigvalsh(A0)
    n = A0.shape[0]

    def phi(s):
        return np.linalg.norm(np.linalg.solve(A0 + s * np.eye(n), b0)) - r

    if maximize:
        hi = -w[-1] - 1e-12
        lo = hi - 1.0
        while phi(lo) > 0:
            lo = hi - 2 * (hi - lo)
        sigma = brentq(phi, lo, hi, xtol=1e-15, rtol=1e-15)
    else:
        lo = -w[0] + 1e-12
        hi = lo + 1.0
        while phi(hi) > 0:
            hi = lo + 2 * (hi - lo)
        sigma = brentq(phi, lo, hi, xtol=1e-15, rtol=1e-15)
    x = np.linalg.solve(A0 + sigma * np.eye(n), b0)
    return x, np.array([sigma])


def equality_circle():
    """``q_0(x) = x`` on ``{x : (x^2 - 1)/2 = 0} = {-1, 1}``; critical pairs (1, -1) and (-1, 1)."""
    return ProblemInstance(
        (QuadraticForm([[0.0]], [-1.0], 0.0), QuadraticForm([[1.0]], [0.0], -0.5)),
        CanonicalFunction.indicator_cone(1, (0,)),
    )


def dual_min_witness():
    """``n = 2``, ``m = 1`` instance whose pair ``x = (1, 0)``, ``sigma = 1/2`` has
    ``A(sigma) = -I`` and ``H = (2, 0)^T``: sigma is a strict local minimum of D while
    x is a saddle of f.
    """
    return ProblemInstance(
        (
            QuadraticForm(-1.5 * np.eye(2), [-0.5, 0.0], 0.0),
            QuadraticForm(np.eye(2), [-1.0, 0.0], -1.0),
        ),
        CanonicalFunction.quadratic([1.0]),
    ), np.array([1.0, 0.0]), np.array([0.5])


SMOOTH_KINDS = (Kind.QUADRATIC_DIAG, Kind.EXPONENTIAL, Kind.EXP_PLUS_QUAD, Kind.LOG_SUM_EXP_PLUS_QUAD)


def random_v(rng, m, kind):
    kind = Kind(kind)
    if kind is Kind.QUADRATIC_DIAG:
        return CanonicalFunction.quadratic(rng.uniform(0.5, 2.0, m))
    if kind is Kind.EXPONENTIAL:
        return CanonicalFunction.exponential(m)
    if kind is Kind.EXP_PLUS_QUAD:
        p = int(rng.integers(0, m + 1))
        return CanonicalFunction.exp_plus_quad(p, rng.uniform(0.5, 2.0, m - p))
    if kind is Kind.LOG_SUM_EXP_PLUS_QUAD:
        p = int(rng.integers(1, m + 1))
        return CanonicalFunction.log_sum_exp_plus_quad(p, rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0, m - p))
    J = [j for j in range(m) if rng.random() < 0.3]
    return CanonicalFunction.indicator_cone(m, J)


def random_interior_sigma(rng, v, margin=0.05):
    """A point well inside dom V*."""
    m, p = v.m, v.p
    if v.kind is Kind.INDICATOR_CONE:
        s = rng.normal(size=m)
        Jc = v.J_complement
        s[Jc] = rng.uniform(margin + 0.1, 2.0, Jc.size)
        return s
    s = rng.normal(size=m)
    if v.kind is Kind.LOG_SUM_EXP_PLUS_QUAD:
        w = rng.dirichlet(np.ones(p + 1))
        w = margin + (1 - (p + 1) * margin) * w
        s[:p] = w[:p]
    else:
        s[:p] = rng.uniform(margin + 0.1, 2.0, p)
    return s


def _sym(rng, n, scale=1.0):
    B = rng.normal(size=(n, n)) * scale
    return 0.5 * (B + B.T)


def reverse_engineer(rng, n, m, v, sign=1.0, spread=1.0, curvature=1.0):
    """Random instance with a prescribed critical pair ``(x, sigma)``.

    ``A(sigma)`` is positive definite for ``sign > 0`` and negative definite for
    ``sign < 0``. ``spread`` scales the linear terms ``b_i`` (larger spread gives
    larger ``A_i x - b_i``). Returns ``(problem, x, sigma)``.
    """
    x = rng.normal(size=n)
    sigma = random_interior_sigma(rng, v)
    As = [None] + [_sym(rng, n, 0.5) for _ in range(m)]
    bs = [None] + [rng.normal(size=n) * spread for _ in range(m)]
    if v.kind is Kind.INDICATOR_CONE:
        # q(x) = 0 lies in C_J and satisfies complementarity for any sigma
        y = np.zeros(m)
    else:
        y = v.conj_grad(sigma)
    cs = [None] + [y[i] - 0.5 * x @ As[i + 1] @ x + bs[i + 1] @ x for i in range(m)]
    B = rng.normal(size=(n, n))
    M = curvature * (B @ B.T / n + 0.5 * np.eye(n))
    A_sig = sign * M
    As[0] = A_sig - sum(sigma[i] * As[i + 1] for i in range(m))
    As[0] = 0.5 * (As[0] + As[0].T)
    bs[0] = A_sig @ x - sum(sigma[i] * bs[i + 1] for i in range(m))
    cs[0] = float(rng.normal())
    return ProblemInstance.from_arrays(As, bs, cs, v), x, sigma


def example1_smooth(beta=10.0):
    """:func:`example1` with the cone indicator replaced by ``V(y) = beta y^2 / 2``.

    For ``beta > 1`` the pair ``(x, sigma) = (1, 0)`` stays critical and lies in S-.
    """
    return ProblemInstance(example1().quadratics, CanonicalFunction.quadratic([beta]))
