"""Problem documents (UTF-8 JSON) and their in-memory form.

Schema, version ``1.0``::

    {
      "schema_version": "1.0",
      "n": 2, "m": 1,
      "quadratics": [{"A": [row-major n*n reals], "b": [n reals], "c": real}, ...],   # m + 1 entries
      "v": {"kind": "QuadraticDiag", "params": {"betas": [1.0]}},
      "seeds": [[0.5], ...]                                                         # optional
    }

``params`` per kind: ``QuadraticDiag {betas}``, ``Exponential {}``,
``ExpPlusQuad {p, betas}``, ``LogSumExpPlusQuad {p, beta, betas}``,
``IndicatorCone {J}`` with 0-based indices. ``betas`` has ``m - p`` entries.
"""
import json
from pathlib import Path

import numpy as np

from .canonical import CanonicalFunction, Kind
from .exceptions import CDTError, ProblemDocumentError
from .quadratic import ProblemInstance, QuadraticForm

SCHEMA_VERSION = "1.0"


def _require(doc, key, kind):
    if key not in doc:
        raise ProblemDocumentError(f"missing field {key!r}")
    val = doc[key]
    if kind is int and (isinstance(val, bool) or not isinstance(val, int)):
        raise ProblemDocumentError(f"field {key!r} must be an integer")
    if kind is list and not isinstance(val, list):
        raise ProblemDocumentError(f"field {key!r} must be a list")
    if kind is dict and not isinstance(val, dict):
        raise ProblemDocumentError(f"field {key!r} must be an object")
    return val


def _reals(values, count, what):
    if not isinstance(values, list) or len(values) != count:
        raise ProblemDocumentError(f"{what} must be a list of {count} numbers")
    try:
        arr = np.array(values, dtype=float)
    except (TypeError, ValueError) as e:
        raise ProblemDocumentError(f"{what}: {e}") from e
    if not np.all(np.isfinite(arr)):
        raise ProblemDocumentError(f"{what} has non-finite entries")
    return arr


def _v_from_doc(vdoc, m):
    kind_name = _require(vdoc, "kind", str)
    try:
        kind = Kind(kind_name)
    except ValueError:
        raise ProblemDocumentError(f"unknown kind {kind_name!r}") from None
    params = vdoc.get("params", {}) or {}
    if not isinstance(params, dict):
        raise ProblemDocumentError("v.params must be an object")
    try:
        if kind is Kind.QUADRATIC_DIAG:
            v = CanonicalFunction.quadratic(_reals(params.get("betas"), m, "betas"))
        elif kind is Kind.EXPONENTIAL:
            v = CanonicalFunction.exponential(m)
        elif kind is Kind.EXP_PLUS_QUAD:
            p = int(params.get("p", 0))
            v = CanonicalFunction.exp_plus_quad(p, _reals(params.get("betas", []), m - p, "betas"))
        elif kind is Kind.LOG_SUM_EXP_PLUS_QUAD:
            p = int(params.get("p", 0))
            betas = _reals(params.get("betas", []), m - p, "betas")
            v = CanonicalFunction.log_sum_exp_plus_quad(p, float(params.get("beta", 1.0)), betas)
        else:
            v = CanonicalFunction.indicator_cone(m, [int(j) for j in params.get("J", [])])
    except ProblemDocumentError:
        raise
    except (CDTError, TypeError, ValueError) as e:
        raise ProblemDocumentError(f"bad V parameters: {e}") from e
    if v.m != m:
        raise ProblemDocumentError(f"V acts on R^{v.m}, document says m = {m}")
    return v


def problem_from_dict(doc):
    """Parse a problem document. Returns ``(problem, seeds)``; seeds is a list of arrays or None."""
    if not isinstance(doc, dict):
        raise ProblemDocumentError("document must be a JSON object")
    version = doc.get("schema_version", SCHEMA_VERSION)
    if str(version).split(".")[0] != SCHEMA_VERSION.split(".")[0]:
        raise ProblemDocumentError(f"unsupported schema_version {version!r}")
    n = _require(doc, "n", int)
    m = _require(doc, "m", int)
    if n < 1 or m < 1:
        raise ProblemDocumentError("n and m must be positive")
    quads = _require(doc, "quadratics", list)
    if len(quads) != m + 1:
        raise ProblemDocumentError(f"expected {m + 1} quadratics, got {len(quads)}")
    forms = []
    for i, q in enumerate(quads):
        if not isinstance(q, dict):
            raise ProblemDocumentError(f"quadratics[{i}] must be an object")
        A = _reals(q.get("A"), n * n, f"quadratics[{i}].A").reshape(n, n)
        b = _reals(q.get("b"), n, f"quadratics[{i}].b")
        c = _reals([q.get("c", 0.0)], 1, f"quadratics[{i}].c")[0]
        try:
            forms.append(QuadraticForm(A, b, c))
        except (CDTError, ValueError) as e:
            raise ProblemDocumentError(f"quadratics[{i}]: {e}") from e
    v = _v_from_doc(_require(doc, "v", dict), m)
    seeds = doc.get("seeds")
    if seeds is not None:
        if not isinstance(seeds, list):
            raise ProblemDocumentError("seeds must be a list")
        seeds = [_reals(s, m, f"seeds[{k}]") for k, s in enumerate(seeds)]
    return ProblemInstance(tuple(forms), v), seeds


def problem_to_dict(p, seeds=None):
    """Serialize a problem. Floats go through ``repr`` so the document round-trips exactly."""
    doc = {
        "schema_version": SCHEMA_VERSION,
        "n": p.n,
        "m": p.m,
        "quadratics": [
            {"A": q.A.ravel().tolist(), "b": q.b.tolist(), "c": float(q.c)} for q in p.quadratics
        ],
        "v": {"kind": p.v.kind.value, "params": p.v.params},
    }
    if seeds is not None:
        doc["seeds"] = [np.asarray(s, dtype=float).tolist() for s in seeds]
    return doc


def load_problem(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise ProblemDocumentError(f"cannot read {path}: {e}") from e
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProblemDocumentError(f"invalid JSON: {e}") from e
    return problem_from_dict(doc)


def dump_problem(p, path, seeds=None):
    Path(path).write_text(json.dumps(problem_to_dict(p, seeds), indent=2) + "\n", encoding="utf-8")


def default_seeds(m):
    """Origin and ``+-0.5`` times each unit vector."""
    seeds = [np.zeros(m)]
    for i in range(m):
        for s in (0.5, -0.5):
            e = np.zeros(m)
            e[i] = s
            seeds.append(e)
    return seeds
