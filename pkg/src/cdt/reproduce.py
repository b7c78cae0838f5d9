"""Canned demonstrations: a claim, the evidence computed for it, and PASS/FAIL."""
from dataclasses import dataclass, field

import numpy as np

from . import instances
from .complementary import f_value
from .cone import ConeProblem, check_j_lkkt, check_j_lkkt_max
from .dual import classify_sigma, d_value, newton_critical_point
from .exceptions import CDTError, NotGammaSC2
from .oracle import ProbeLabel, grid_extremum_probe
from .quadratic import eval_q0
from .triality import Verdict, analyze_pair, verdict_negdef


@dataclass
class Reproduction:
    name: str
    claim: str
    evidence: list = field(default_factory=list)
    checks: dict = field(default_factory=dict)

    @property
    def passed(self):
        return bool(self.checks) and all(self.checks.values())

    def add(self, label, ok, detail=""):
        self.checks[label] = bool(ok)
        self.evidence.append(f"[{'ok' if ok else 'FAIL'}] {label}" + (f": {detail}" if detail else ""))

    def render(self):
        lines = [f"== {self.name} ==", f"claim: {self.claim}", *self.evidence]
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def example1_dual_closed_form(sigma):
    return 0.5 * (1.0 / (1.0 - sigma) - sigma)


def reproduce_example1():
    p = instances.example1()
    r = Reproduction(
        "example1",
        "critical pair (x, sigma) = (1, 0) with A(0) < 0, yet x = 1 maximizes f on [-1, 1] and "
        "sigma = 0 minimizes D on [0, 1): double-min and double-max duality both fail",
    )
    sig = np.linspace(0.0, 0.99, 100)
    err = max(abs(d_value(p, [s]) - example1_dual_closed_form(s)) for s in sig)
    r.add("D matches (1/(1-s) - s)/2 on 100 points of [0, 0.99]", err <= 1e-12, f"max error {err:.2e}")

    xs = np.arange(-10000, 10001) * 1e-4
    fx = np.array([f_value(p, [x]) for x in xs])
    xmax = xs[np.argmax(fx)]
    r.add("grid argmax of f on [-1, 1] (step 1e-4) is x = 1", abs(xmax - 1.0) < 1e-12, f"argmax {xmax:.4f}")

    ss = np.arange(0, 9991) * 1e-4
    ds = np.array([d_value(p, [s]) for s in ss])
    smin = ss[np.argmin(ds)]
    r.add("grid argmin of D on [0, 0.999] (step 1e-4) is sigma = 0", smin == 0.0, f"argmin {smin:.4f}")

    region = classify_sigma(p, [0.0])
    r.add("sigma = 0 lies in S-", region.in_Sminus, region.name)

    cert_max = check_j_lkkt_max(ConeProblem(p), [1.0], [0.0])
    r.add(
        "sign-flipped KKT certifies x = 1 as unique global max of q_0 on [-1, 1]",
        cert_max.kind == "GlobalMax" and cert_max.unique,
        f"chain {cert_max.chain}",
    )
    cert_min = check_j_lkkt(ConeProblem(p), [1.0], [0.0])
    r.add(
        "KKT holds at (1, 0) but no minimum certificate (A(0) not psd)",
        not cert_min.certified and cert_min.violations == ["A(sigma) is not positive semidefinite"],
    )
    try:
        verdict_negdef(p, [1.0], [0.0])
        smooth_path = False
    except NotGammaSC2:
        smooth_path = True
    r.add("the smooth negative-definite verdict does not apply (V not C^2 Legendre)", smooth_path)
    return r


def _probe_matches(verdict, label):
    if verdict in (Verdict.LOCAL_STRICT_MAX, Verdict.GLOBAL_MAX):
        return label is ProbeLabel.LOCAL_MAX
    if verdict in (Verdict.LOCAL_STRICT_MIN, Verdict.GLOBAL_MIN, Verdict.UNIQUE_GLOBAL_MIN):
        return label is ProbeLabel.LOCAL_MIN
    if verdict is Verdict.NOT_LOCAL_EXTREMUM:
        return label is ProbeLabel.NEITHER
    return False


def reproduce_doublewell():
    p = instances.tilted_double_well()
    r = Reproduction(
        "doublewell",
        "tilted double well f(x) = (x^2/2 - 1)^2/2 - x/2 has three dual critical points: "
        "a min-max pair in S+, a double-min pair and a double-max pair in S-",
    )
    found = []
    for s0 in np.linspace(-1.5, 1.5, 13):
        try:
            pt = newton_critical_point(p, [s0])
        except CDTError:
            continue
        if not any(abs(pt.sigma[0] - q.sigma[0]) < 1e-7 for q in found):
            found.append(pt)
    found.sort(key=lambda q: q.sigma[0])
    exact = sorted([(-1 - np.sqrt(5)) / 4, -0.5, (-1 + np.sqrt(5)) / 4])
    got = [q.sigma[0] for q in found]
    r.add(
        "Newton finds the roots of sigma^3 + sigma^2 - 1/8",
        len(got) == 3 and np.allclose(got, exact, atol=1e-9),
        f"sigma = {[round(float(s), 10) for s in got]}",
    )
    for pt in found:
        rep = analyze_pair(p, pt.x_of_sigma, pt.sigma)
        fprobe = grid_extremum_probe(lambda x: f_value(p, x), pt.x_of_sigma)
        dprobe = grid_extremum_probe(lambda s: d_value(p, s), pt.sigma)
        ok = _probe_matches(rep.x_verdict, fprobe.label) and _probe_matches(rep.sigma_verdict, dprobe.label)
        r.add(
            f"sigma = {pt.sigma[0]:+.6f} ({rep.region.name}, {rep.branch.value})",
            ok,
            f"x: {rep.x_verdict.value} (probe {fprobe.label.value}), "
            f"sigma: {rep.sigma_verdict.value} (probe {dprobe.label.value})",
        )
    return r


def trust_region_grid_min(p, steps=801):
    """Exhaustive minimum of q_0 over the disk: square grid clipped to the disk plus the circle."""
    rad = np.sqrt(-2.0 * p.cs[1])
    t = np.linspace(-rad, rad, steps)
    X, Y = np.meshgrid(t, t)
    pts = np.column_stack([X.ravel(), Y.ravel()])
    pts = pts[np.sum(pts**2, axis=1) <= rad**2]
    th = np.linspace(0.0, 2 * np.pi, 20 * steps, endpoint=False)
    pts = np.vstack([pts, rad * np.column_stack([np.cos(th), np.sin(th)])])
    A, b = p.As[0], p.bs[0]
    vals = 0.5 * np.einsum("ij,jk,ik->i", pts, A, pts) - pts @ b
    h = t[1] - t[0]
    lip = np.linalg.norm(A, 2) * rad + np.linalg.norm(b)
    return float(vals.min()), lip * h  # grid min and a resolution bound


def reproduce_trustregion():
    p = instances.trust_region()
    r = Reproduction(
        "trustregion",
        "for a nonconvex quadratic on the unit disk, the boundary KKT pair with A_0 + sigma I psd "
        "certifies the global minimum",
    )
    x, s = instances.trust_region_kkt_pair(p)
    cert = check_j_lkkt(ConeProblem(p), x, s)
    r.add("KKT certificate issued", cert.kind == "GlobalMin", f"sigma = {s[0]:.12f}, chain {cert.chain}")
    gmin, res = trust_region_grid_min(p)
    val = eval_q0(p, x)
    r.add(
        "certified value equals exhaustive grid minimum within resolution",
        gmin >= val - 1e-9 and gmin - val <= res,
        f"certificate {val:.10f}, grid {gmin:.10f}, resolution {res:.2e}",
    )
    return r


REPRODUCTIONS = {
    "example1": reproduce_example1,
    "doublewell": reproduce_doublewell,
    "trustregion": reproduce_trustregion,
}
