"""Catalog of canonical functions V with closed-form conjugates and derivatives.

Five kinds are supported:

* ``QuadraticDiag``: ``V(y) = 1/2 sum beta_k y_k^2``
* ``Exponential``: ``V(y) = sum exp(y_k)``
* ``ExpPlusQuad``: ``exp`` on the first ``p`` coordinates, weighted squares on the rest
* ``LogSumExpPlusQuad``: ``(1/beta) log(1 + sum_{k<p} exp(beta y_k))`` plus weighted squares
* ``IndicatorCone``: indicator of ``C_J = {y_j = 0 for j in J, y_j <= 0 otherwise}``

Coordinate indices (``p`` splits and the set ``J``) are 0-based.
"""
import enum
from dataclasses import dataclass, field

import numpy as np
from scipy.special import xlogy

from . import tolerances as tol
from .exceptions import BoundaryOrOutsideDomain, InvalidParameterError, UnsupportedForKind
from .validation import check_vector


def _log1p_sum_exp(z):
    """Stable ``log(1 + sum(exp(z)))``; scipy's logsumexp is slow on tiny arrays."""
    top = max(0.0, float(np.max(z))) if z.size else 0.0
    return top + float(np.log(np.exp(-top) + np.sum(np.exp(z - top))))


class Kind(str, enum.Enum):
    QUADRATIC_DIAG = "QuadraticDiag"
    EXPONENTIAL = "Exponential"
    EXP_PLUS_QUAD = "ExpPlusQuad"
    LOG_SUM_EXP_PLUS_QUAD = "LogSumExpPlusQuad"
    INDICATOR_CONE = "IndicatorCone"


class Smoothness(str, enum.Enum):
    GAMMA = "Gamma"  # proper lsc convex
    GAMMA_SC = "GammaSC"  # Legendre type
    GAMMA_SC2 = "GammaSC2"  # Legendre type, C^2 with positive definite Hessian


@dataclass(frozen=True, eq=False)
class CanonicalFunction:
    """A convex function ``V`` on ``R^m`` from the closed catalog.

    Prefer the named constructors (:meth:`quadratic`, :meth:`exponential`,
    :meth:`exp_plus_quad`, :meth:`log_sum_exp_plus_quad`,
    :meth:`indicator_cone`) over calling this directly.

    Attributes:
        kind: catalog entry.
        m: dimension of the argument.
        p: number of leading exponential / log-sum-exp coordinates.
        betas: weights of the quadratic tail, length ``m - p``.
        beta: scale of the log-sum-exp block.
        J: equality index set of the indicator cone.
    """

    kind: Kind
    m: int
    p: int = 0
    betas: np.ndarray = field(default_factory=lambda: np.zeros(0))
    beta: float = 1.0
    J: frozenset = frozenset()

    def __post_init__(self):
        kind = Kind(self.kind)
        m, p = int(self.m), int(self.p)
        betas = check_vector(self.betas, name="betas") if np.size(self.betas) else np.zeros(0)
        J = frozenset(int(j) for j in self.J)
        if m < 1:
            raise InvalidParameterError("m must be positive")
        if not 0 <= p <= m:
            raise InvalidParameterError(f"split index p={p} outside [0, {m}]")
        if kind is Kind.INDICATOR_CONE:
            if p != 0 or betas.size:
                raise InvalidParameterError("IndicatorCone takes only J")
            if not J <= set(range(m)):
                raise InvalidParameterError(f"J={sorted(J)} not a subset of 0..{m - 1}")
        else:
            if J:
                raise InvalidParameterError("J only applies to IndicatorCone")
            if kind is Kind.QUADRATIC_DIAG and p != 0:
                raise InvalidParameterError("QuadraticDiag has p = 0")
            if kind is Kind.EXPONENTIAL and p != m:
                raise InvalidParameterError("Exponential has p = m")
            if betas.shape != (m - p,):
                raise InvalidParameterError(f"expected {m - p} quadratic weights, got {betas.size}")
            if np.any(~np.isfinite(betas)) or np.any(betas <= 0):
                raise InvalidParameterError("quadratic weights must be positive")
            if kind is Kind.LOG_SUM_EXP_PLUS_QUAD and not (np.isfinite(self.beta) and self.beta > 0):
                raise InvalidParameterError("log-sum-exp scale beta must be positive")
        betas.setflags(write=False)
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "betas", betas)
        object.__setattr__(self, "beta", float(self.beta))
        object.__setattr__(self, "J", J)

    # -- constructors ----------------------------------------------------

    @classmethod
    def quadratic(cls, betas):
        betas = check_vector(betas, name="betas")
        return cls(Kind.QUADRATIC_DIAG, betas.size, 0, betas)

    @classmethod
    def exponential(cls, m):
        return cls(Kind.EXPONENTIAL, m, m)

    @classmethod
    def exp_plus_quad(cls, p, betas):
        betas = np.atleast_1d(np.asarray(betas, dtype=float))
        return cls(Kind.EXP_PLUS_QUAD, p + betas.size, p, betas)

    @classmethod
    def log_sum_exp_plus_quad(cls, p, beta, betas):
        betas = np.atleast_1d(np.asarray(betas, dtype=float))
        return cls(Kind.LOG_SUM_EXP_PLUS_QUAD, p + betas.size, p, betas, beta)

    @classmethod
    def indicator_cone(cls, m, J=()):
        return cls(Kind.INDICATOR_CONE, m, J=frozenset(J))

    # -- classification --------------------------------------------------

    @property
    def smoothness_class(self):
        if self.kind is Kind.INDICATOR_CONE:
            return Smoothness.GAMMA
        return Smoothness.GAMMA_SC2

    @property
    def is_smooth(self):
        return self.smoothness_class is not Smoothness.GAMMA

    @property
    def params(self):
        """Kind-specific parameters, as stored in problem documents."""
        if self.kind is Kind.QUADRATIC_DIAG:
            return {"betas": self.betas.tolist()}
        if self.kind is Kind.EXPONENTIAL:
            return {}
        if self.kind is Kind.EXP_PLUS_QUAD:
            return {"p": self.p, "betas": self.betas.tolist()}
        if self.kind is Kind.LOG_SUM_EXP_PLUS_QUAD:
            return {"p": self.p, "beta": self.beta, "betas": self.betas.tolist()}
        return {"J": sorted(self.J)}

    @property
    def J_complement(self):
        return np.array([j for j in range(self.m) if j not in self.J], dtype=int)

    @property
    def J_array(self):
        return np.array(sorted(self.J), dtype=int)

    def _lse(self):
        return self.kind is Kind.LOG_SUM_EXP_PLUS_QUAD

    def _require_smooth(self, what):
        if not self.is_smooth:
            raise UnsupportedForKind(f"{what} is not available for {self.kind.value}")

    def _check(self, y, name):
        return check_vector(y, self.m, name=name)

    # -- domains -----------------------------------------------------------

    def in_dom(self, y, atol=tol.TOL_DOMAIN):
        y = self._check(y, "y")
        if self.kind is not Kind.INDICATOR_CONE:
            return bool(np.all(np.isfinite(y)))
        return bool(np.all(np.abs(y[self.J_array]) <= atol) and np.all(y[self.J_complement] <= atol))

    def in_int_dom(self, y, margin=tol.INTERIOR_MARGIN):
        y = self._check(y, "y")
        if self.kind is not Kind.INDICATOR_CONE:
            return bool(np.all(np.isfinite(y)))
        # C_J has empty interior as soon as J is nonempty
        return not self.J and bool(np.all(y < -margin))

    def in_dom_conj(self, sigma, atol=0.0):
        s = self._check(sigma, "sigma")
        if self.kind is Kind.INDICATOR_CONE:
            return bool(np.all(s[self.J_complement] >= -atol))
        head = s[: self.p]
        if np.any(head < -atol):
            return False
        if self._lse() and head.sum() > 1.0 + atol:
            return False
        return True

    def in_int_dom_conj(self, sigma, margin=tol.INTERIOR_MARGIN):
        s = self._check(sigma, "sigma")
        if self.kind is Kind.INDICATOR_CONE:
            return bool(np.all(s[self.J_complement] > margin))
        head = s[: self.p]
        if np.any(head <= margin):
            return False
        if self._lse() and 1.0 - head.sum() <= margin:
            return False
        return True

    def _require_int_conj(self, sigma):
        if not self.in_int_dom_conj(sigma):
            raise BoundaryOrOutsideDomain(f"sigma={np.asarray(sigma).tolist()} not in int dom V*")

    # -- values ------------------------------------------------------------

    def value(self, y):
        y = self._check(y, "y")
        if self.kind is Kind.INDICATOR_CONE:
            return 0.0 if self.in_dom(y) else np.inf
        head, tail = y[: self.p], y[self.p :]
        quad = 0.5 * float(np.sum(self.betas * tail**2))
        if self._lse():
            if self.p == 0:
                return quad
            return _log1p_sum_exp(self.beta * head) / self.beta + quad
        return float(np.sum(np.exp(head))) + quad

    def conjugate(self, sigma):
        s = self._check(sigma, "sigma")
        if not self.in_dom_conj(s):
            return np.inf
        if self.kind is Kind.INDICATOR_CONE:
            return 0.0
        head, tail = s[: self.p], s[self.p :]
        quad = 0.5 * float(np.sum(tail**2 / self.betas))
        if self._lse():
            rest = 1.0 - head.sum()
            return float(np.sum(xlogy(head, head)) + xlogy(rest, rest)) / self.beta + quad
        return float(np.sum(xlogy(head, head) - head)) + quad

    # -- derivatives -------------------------------------------------------

    def grad(self, y):
        self._require_smooth("grad V")
        y = self._check(y, "y")
        head, tail = y[: self.p], y[self.p :]
        if self._lse():
            z = self.beta * head
            g_head = np.exp(z - _log1p_sum_exp(z))
        else:
            g_head = np.exp(head)
        return np.concatenate((g_head, self.betas * tail))

    def hess(self, y):
        self._require_smooth("hess V")
        y = self._check(y, "y")
        H = np.zeros((self.m, self.m))
        p = self.p
        if self._lse():
            w = self.grad(y)[:p]
            H[:p, :p] = self.beta * (np.diag(w) - np.outer(w, w))
        else:
            H[:p, :p] = np.diag(np.exp(y[:p]))
        H[p:, p:] = np.diag(self.betas)
        return H

    def conj_grad(self, sigma):
        self._require_smooth("grad V*")
        s = self._check(sigma, "sigma")
        self._require_int_conj(s)
        head, tail = s[: self.p], s[self.p :]
        if self._lse():
            g_head = (np.log(head) - np.log1p(-head.sum())) / self.beta
        else:
            g_head = np.log(head)
        return np.concatenate((g_head, tail / self.betas))

    def conj_hess(self, sigma):
        self._require_smooth("hess V*")
        s = self._check(sigma, "sigma")
        self._require_int_conj(s)
        H = np.zeros((self.m, self.m))
        p = self.p
        head = s[:p]
        if self._lse():
            H[:p, :p] = (np.diag(1.0 / head) + 1.0 / (1.0 - head.sum())) / self.beta
        else:
            H[:p, :p] = np.diag(1.0 / head)
        H[p:, p:] = np.diag(1.0 / self.betas)
        return H

    def subdifferential_pair_check(self, y, sigma, atol=tol.TOL_SUBDIFF):
        """Whether ``sigma`` is in the subdifferential of the cone indicator at ``y``.

        Equivalent to ``[y_j = 0, j in J] and [y_j <= 0, sigma_j >= 0, y_j sigma_j = 0, j not in J]``.
        """
        if self.kind is not Kind.INDICATOR_CONE:
            raise UnsupportedForKind("subdifferential pair check is for IndicatorCone only")
        return subdifferential_violation(self, y, sigma) <= atol


def subdifferential_violation(v, y, sigma):
    """Largest violation of the cone-indicator subdifferential relation (0 when it holds)."""
    y = v._check(y, "y")
    s = v._check(sigma, "sigma")
    Jc = v.J_complement
    parts = [np.abs(y[v.J_array])]
    if Jc.size:
        yc, sc = y[Jc], s[Jc]
        parts += [np.maximum(yc, 0.0), np.maximum(-sc, 0.0), np.abs(yc * sc)]
    flat = np.concatenate(parts)
    return float(flat.max()) if flat.size else 0.0


def conj_grad_or_zero(v, sigma):
    """``grad V*`` on the interior; the cone indicator's conjugate is constant there."""
    if v.kind is Kind.INDICATOR_CONE:
        v._require_int_conj(sigma)
        return np.zeros(v.m)
    return v.conj_grad(sigma)


def conj_hess_or_zero(v, sigma):
    if v.kind is Kind.INDICATOR_CONE:
        v._require_int_conj(sigma)
        return np.zeros((v.m, v.m))
    return v.conj_hess(sigma)


def v_value(v, y):
    return v.value(y)


def v_conjugate(v, sigma):
    return v.conjugate(sigma)


def v_grad(v, y):
    return v.grad(y)


def v_hess(v, y):
    return v.hess(y)


def v_conj_grad(v, sigma):
    return v.conj_grad(sigma)


def v_conj_hess(v, sigma):
    return v.conj_hess(sigma)


def v_subdifferential_pair_check(v, y, sigma, atol=tol.TOL_SUBDIFF):
    return v.subdifferential_pair_check(y, sigma, atol=atol)
