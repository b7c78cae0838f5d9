"""Brute-force checkers: finite differences, sphere-grid extremum probes, numeric conjugates.

Nothing in the analysis path imports this module. It exists so tests and the
``check`` / ``reproduce`` commands can confront closed forms with values
obtained by an unrelated route.
"""
import enum
import itertools
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .canonical import Kind
from .exceptions import EmptySearchRegion, StencilLeftDomain


def _step(point, h, rel):
    if h is not None:
        return float(h)
    return rel * max(1.0, float(np.max(np.abs(point))) if point.size else 1.0)


def _eval(fn, x):
    val = float(fn(x))
    if not np.isfinite(val):
        raise StencilLeftDomain(f"non-finite value at {x.tolist()}")
    return val


def fd_grad(fn, point, h=None):
    """Central-difference gradient; default step ``1e-6 * max(1, ||point||_inf)``."""
    x = np.atleast_1d(np.asarray(point, dtype=float))
    h = _step(x, h, 1e-6)
    g = np.empty_like(x)
    for i in range(x.size):
        e = np.zeros_like(x)
        e[i] = h
        g[i] = (_eval(fn, x + e) - _eval(fn, x - e)) / (2 * h)
    return g


def fd_hess(fn, point, h=None):
    """Central second differences of function values.

    The default step is ``1e-4 * max(1, ||point||_inf)``: second differences of
    values lose ``eps / h^2`` to rounding, so a smaller step is worse.
    """
    x = np.atleast_1d(np.asarray(point, dtype=float))
    h = _step(x, h, 1e-4)
    d = x.size
    f0 = _eval(fn, x)
    E = h * np.eye(d)
    H = np.empty((d, d))
    for i in range(d):
        H[i, i] = (_eval(fn, x + E[i]) - 2 * f0 + _eval(fn, x - E[i])) / h**2
        for j in range(i + 1, d):
            val = (
                _eval(fn, x + E[i] + E[j])
                - _eval(fn, x + E[i] - E[j])
                - _eval(fn, x - E[i] + E[j])
                + _eval(fn, x - E[i] - E[j])
            ) / (4 * h**2)
            H[i, j] = H[j, i] = val
    return H


class ProbeLabel(str, enum.Enum):
    LOCAL_MIN = "LocalMin"
    LOCAL_MAX = "LocalMax"
    NEITHER = "Neither"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class ProbeResult:
    label: ProbeLabel
    ascent: np.ndarray = None
    descent: np.ndarray = None
    radii: tuple = ()
    diffs: dict = field(default_factory=dict, repr=False)


def probe_directions(dim, count=200, seed=0, extra=None):
    rng = np.random.default_rng(seed)
    dirs = rng.standard_normal((count, dim))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    eye = np.eye(dim)
    blocks = [dirs, eye, -eye]
    if extra is not None:
        extra = np.atleast_2d(np.asarray(extra, dtype=float))
        extra = extra / np.linalg.norm(extra, axis=1, keepdims=True)
        blocks += [extra, -extra]
    return np.vstack(blocks)


def grid_extremum_probe(fn, center, radii=(1e-2, 1e-3, 1e-4), directions=200, seed=0, extra_directions=None):
    """Classify ``center`` by strict comparison with points on shrinking spheres.

    LocalMin (LocalMax) when every probed point on every radius is strictly
    above (below) ``fn(center)``; Neither when the smallest sphere holds both
    an ascent and a descent direction (returned as witnesses); Inconclusive
    otherwise.
    """
    c = np.atleast_1d(np.asarray(center, dtype=float))
    dirs = probe_directions(c.size, directions, seed, extra_directions)
    f0 = float(fn(c))
    diffs = {}
    for r in radii:
        diffs[r] = np.array([float(fn(c + r * d)) - f0 for d in dirs])
    allv = np.concatenate(list(diffs.values()))
    if np.all(np.isfinite(allv)):
        if np.all(allv > 0):
            return ProbeResult(ProbeLabel.LOCAL_MIN, radii=tuple(radii), diffs=diffs)
        if np.all(allv < 0):
            return ProbeResult(ProbeLabel.LOCAL_MAX, radii=tuple(radii), diffs=diffs)
    last = diffs[radii[-1]]
    up = np.flatnonzero(last > 0)
    down = np.flatnonzero(last < 0)
    if up.size and down.size:
        r = radii[-1]
        return ProbeResult(
            ProbeLabel.NEITHER,
            ascent=r * dirs[up[np.argmax(last[up])]],
            descent=r * dirs[down[np.argmin(last[down])]],
            radii=tuple(radii),
            diffs=diffs,
        )
    return ProbeResult(ProbeLabel.INCONCLUSIVE, radii=tuple(radii), diffs=diffs)


_DEFAULT_STEPS = {1: 401, 2: 81, 3: 25}


def numeric_conjugate(v, sigma, box=(-20.0, 20.0), steps=None, refine=True):
    """``sup_y <y, sigma> - V(y)`` over ``dom V`` intersected with a box.

    Grid maximum followed by bounded L-BFGS-B refinement from the best grid
    point. The result is a value actually attained at a feasible point, so it
    never exceeds the true conjugate (up to rounding).
    """
    s = np.atleast_1d(np.asarray(sigma, dtype=float))
    m = v.m
    lo, hi = box
    steps = steps or _DEFAULT_STEPS.get(m, 11)
    axes, bounds = [], []
    for j in range(m):
        if v.kind is Kind.INDICATOR_CONE and j in v.J:
            axes.append(np.zeros(1))
            bounds.append((0.0, 0.0))
        elif v.kind is Kind.INDICATOR_CONE:
            if lo > 0:
                raise EmptySearchRegion("box does not meet the cone")
            axes.append(np.linspace(lo, min(hi, 0.0), steps))
            bounds.append((lo, min(hi, 0.0)))
        else:
            axes.append(np.linspace(lo, hi, steps))
            bounds.append((lo, hi))

    def obj(y):
        return float(y @ s) - v.value(y)

    best, best_y = -np.inf, None
    for pt in itertools.product(*axes):
        y = np.array(pt)
        val = obj(y)
        if val > best:
            best, best_y = val, y
    if best_y is None:
        raise EmptySearchRegion("no grid point in dom V")
    if refine:
        res = minimize(
            lambda y: -obj(y),
            best_y,
            method="L-BFGS-B",
            bounds=bounds,
            options={"ftol": 1e-15, "gtol": 1e-12, "maxiter": 500},
        )
        if np.isfinite(res.fun) and -res.fun > best:
            best = -float(res.fun)
    return best
