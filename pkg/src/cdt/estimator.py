"""Estimator-style front end: configure tolerances, ``fit`` on a problem, read fitted attributes."""
import logging
from concurrent.futures import ThreadPoolExecutor

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.exceptions import NotFittedError
from sklearn.utils import check_random_state

from . import tolerances as tol
from .complementary import f_value
from .dual import newton_critical_point
from .exceptions import CDTError
from .io import default_seeds, problem_to_dict
from .quadratic import ProblemInstance
from .triality import analyze_pair

logger = logging.getLogger(__name__)


def check_problem(problem):
    if not isinstance(problem, ProblemInstance):
        raise TypeError(f"expected a ProblemInstance, got {type(problem).__name__}")
    return problem


class TrialityAnalyzer(BaseEstimator):
    """Find dual critical points from a set of seeds and classify each one.

    Args:
        tol_critical: Stationarity threshold for critical pairs.
        tol_psd: Relative eigenvalue band treated as zero when classifying A(sigma).
        band: Undecided band around 1 for the spectral verdicts.
        tol_newton: Newton stops when ``||grad D||_inf`` is below this.
        max_iter: Newton iteration cap per seed.
        n_random_seeds: Extra standard-normal seeds added to the given (or default) ones.
        random_state: Int, RandomState instance or None; source of the extra seeds.
        dedup_tol: Converged points closer than this (infinity norm) are merged.
        n_jobs: Run seeds on this many threads. Output order follows seed order regardless.

    Attributes:
        seed_results_: One dict per seed with start point, status, and either the
            converged sigma or the error.
        critical_points_: Distinct converged ``DualPoint`` objects, in order of first discovery.
        reports_: ``TrialityReport`` for each entry of ``critical_points_``.
        n_converged_: Number of seeds that converged.
    """

    def __init__(
        self,
        tol_critical=tol.TOL_CRITICAL,
        tol_psd=tol.TOL_PSD,
        band=tol.BAND,
        tol_newton=tol.TOL_NEWTON,
        max_iter=100,
        n_random_seeds=0,
        random_state=None,
        dedup_tol=1e-7,
        n_jobs=None,
    ):
        self.tol_critical = tol_critical
        self.tol_psd = tol_psd
        self.band = band
        self.tol_newton = tol_newton
        self.max_iter = max_iter
        self.n_random_seeds = n_random_seeds
        self.random_state = random_state
        self.dedup_tol = dedup_tol
        self.n_jobs = n_jobs

    def _seeds(self, problem, seeds):
        seeds = [problem.check_sigma(s) for s in seeds] if seeds else default_seeds(problem.m)
        rng = check_random_state(self.random_state)
        seeds += [rng.standard_normal(problem.m) for _ in range(self.n_random_seeds)]
        return seeds

    def _solve(self, problem, idx, sigma0):
        entry = {"index": idx, "sigma0": sigma0.tolist()}
        try:
            pt = newton_critical_point(
                problem, sigma0, tol_grad=self.tol_newton, max_iter=self.max_iter, tol_psd=self.tol_psd
            )
        except CDTError as e:
            entry.update(status="failed", error=f"{type(e).__name__}: {e}")
            return entry, None
        entry.update(status="converged", sigma=pt.sigma.tolist(), iterations=pt.iterations)
        return entry, pt

    def fit(self, problem, seeds=None):
        """Run Newton from every seed, merge duplicates and build a report per critical point."""
        problem = check_problem(problem)
        seeds = self._seeds(problem, seeds)
        if self.n_jobs and self.n_jobs > 1:
            with ThreadPoolExecutor(self.n_jobs) as pool:
                results = list(pool.map(lambda a: self._solve(problem, *a), enumerate(seeds)))
        else:
            results = [self._solve(problem, i, s) for i, s in enumerate(seeds)]

        self.problem_ = problem
        self.seed_results_ = []
        self.critical_points_ = []
        self.reports_ = []
        for entry, pt in results:
            self.seed_results_.append(entry)
            if pt is None:
                continue
            for k, known in enumerate(self.critical_points_):
                if np.max(np.abs(known.sigma - pt.sigma)) <= self.dedup_tol:
                    entry["critical_point"] = k
                    break
            else:
                entry["critical_point"] = len(self.critical_points_)
                self.critical_points_.append(pt)
                self.reports_.append(
                    analyze_pair(
                        problem,
                        pt.x_of_sigma,
                        pt.sigma,
                        band=self.band,
                        tol_critical=self.tol_critical,
                        tol_psd=self.tol_psd,
                    )
                )
        self.n_converged_ = sum(e["status"] == "converged" for e in self.seed_results_)
        logger.info("%d/%d seeds converged, %d distinct points", self.n_converged_, len(seeds), len(self.reports_))
        return self

    def report(self):
        """JSON-ready summary of the fit."""
        if not hasattr(self, "reports_"):
            raise NotFittedError("call fit first")
        points = []
        for pt, rep in zip(self.critical_points_, self.reports_):
            d = rep.to_dict()
            d["f"] = f_value(self.problem_, pt.x_of_sigma)
            d["D"] = pt.d_value
            d["grad_norm"] = pt.grad_norm
            points.append(d)
        return {
            "problem": problem_to_dict(self.problem_),
            "params": self.get_params(),
            "seeds": self.seed_results_,
            "critical_points": points,
        }
