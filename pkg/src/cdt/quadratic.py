"""Quadratic data ``q_i(x) = 1/2 <x, A_i x> - <b_i, x> + c_i`` and the sigma-affine assembly."""
from dataclasses import dataclass, field

import numpy as np

from .exceptions import DimensionError
from .validation import check_symmetric_matrix, check_vector


@dataclass(frozen=True, eq=False)
class QuadraticForm:
    """One quadratic ``1/2 <x, A x> - <b, x> + c``.

    ``A`` is symmetrized on construction; an asymmetry larger than 1e-8
    (infinity norm) is rejected.
    """

    A: np.ndarray
    b: np.ndarray
    c: float = 0.0

    def __post_init__(self):
        A = check_symmetric_matrix(self.A, name="A")
        b = check_vector(self.b, A.shape[0], name="b")
        c = float(self.c)
        if not (np.all(np.isfinite(b)) and np.isfinite(c)):
            raise ValueError("b and c must be finite")
        A.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)

    @property
    def n(self):
        return self.A.shape[0]

    def __call__(self, x):
        x = check_vector(x, self.n, name="x")
        return 0.5 * x @ self.A @ x - self.b @ x + self.c

    def gradient(self, x):
        x = check_vector(x, self.n, name="x")
        return self.A @ x - self.b


@dataclass(frozen=True, eq=False)
class ProblemInstance:
    """The family ``(q_0, ..., q_m)`` together with a canonical function ``V``.

    Index 0 of ``quadratics`` is the objective part ``q_0``; the remaining m
    forms feed ``V``. The primal function is ``f = q_0 + V(q_1, ..., q_m)``.

    The stacked arrays ``As`` (shape (m+1, n, n)), ``bs`` ((m+1, n)) and
    ``cs`` ((m+1,)) are built once and shared by all operations.
    """

    quadratics: tuple
    v: "object"
    As: np.ndarray = field(init=False, repr=False)
    bs: np.ndarray = field(init=False, repr=False)
    cs: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        quads = tuple(q if isinstance(q, QuadraticForm) else QuadraticForm(*q) for q in self.quadratics)
        if len(quads) < 2:
            raise DimensionError("need q_0 and at least one q_i (m >= 1)")
        n = quads[0].n
        if any(q.n != n for q in quads):
            raise DimensionError("all quadratics must share the dimension n")
        if self.v.m != len(quads) - 1:
            raise DimensionError(f"V acts on R^{self.v.m} but m = {len(quads) - 1}")
        As = np.stack([q.A for q in quads])
        bs = np.stack([q.b for q in quads])
        cs = np.array([q.c for q in quads])
        for arr in (As, bs, cs):
            arr.setflags(write=False)
        object.__setattr__(self, "quadratics", quads)
        object.__setattr__(self, "As", As)
        object.__setattr__(self, "bs", bs)
        object.__setattr__(self, "cs", cs)

    @classmethod
    def from_arrays(cls, As, bs, cs, v):
        """Build from stacked arrays; index 0 is ``q_0``."""
        return cls(tuple(QuadraticForm(A, b, c) for A, b, c in zip(As, bs, cs)), v)

    @property
    def n(self):
        return self.As.shape[1]

    @property
    def m(self):
        return self.As.shape[0] - 1

    def check_x(self, x):
        return check_vector(x, self.n, name="x")

    def check_sigma(self, sigma):
        return check_vector(sigma, self.m, name="sigma")


def _quad_values(p, x):
    # all q_k(x), k = 0..m
    return 0.5 * np.einsum("i,kij,j->k", x, p.As, x) - p.bs @ x + p.cs


def eval_q0(p, x):
    x = p.check_x(x)
    return float(0.5 * x @ p.As[0] @ x - p.bs[0] @ x + p.cs[0])


def eval_q(p, x):
    """Return ``q(x) = (q_1(x), ..., q_m(x))``."""
    x = p.check_x(x)
    return _quad_values(p, x)[1:]


def q_jacobian(p, x):
    """Rows ``A_i x - b_i`` for i = 1..m, i.e. the Jacobian of ``q`` at ``x`` (m x n)."""
    x = p.check_x(x)
    return p.As[1:] @ x - p.bs[1:]


def _weights(p, sigma):
    return np.concatenate(([1.0], p.check_sigma(sigma)))


def assemble(p, sigma):
    """Return ``(A(sigma), b(sigma), c(sigma))`` with the convention sigma_0 = 1."""
    w = _weights(p, sigma)
    A = np.tensordot(w, p.As, axes=1)
    A = 0.5 * (A + A.T)
    return A, w @ p.bs, float(w @ p.cs)


def lagrangian(p, x, sigma):
    """``L(x, sigma) = q_0(x) + <q(x), sigma>``."""
    x = p.check_x(x)
    w = _weights(p, sigma)
    return float(w @ _quad_values(p, x))
