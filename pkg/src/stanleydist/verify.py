"""One-shot reproduction suite for the closed forms and module invariants.

Each check produces a :class:`CheckRecord`. Status values:

PASS      the criterion holds at its tolerance
FAIL      it does not
REPORTED  an asymptotic-expansion check missed its tolerance but the
          window diagnostics still converge; the fitted value is recorded
SKIPPED   the requested ``n_max`` is too small for the check to run

The expansion checks are heuristic fits to exact data, not proofs, so their
fitted values are always recorded whatever the status.
"""

from __future__ import annotations

import itertools
import math
import time
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .asymfit import compare, fit_inverse_powers, fit_odd_scaled, interpolate_in_r
from .distexact import DistributionTable, distribution_bruteforce, iter_distributions
from .formats import histogram_to_json
from .moments import (
    gaussian_moment,
    moments_from_table,
    paper_even_correction,
    paper_mean,
    paper_odd_coeffs,
    paper_variance,
)
from .montecarlo import empirical_histogram, kolmogorov_to_normal, tv_distance
from .permcore import Convention, all_permutations, as_bruteforce_batch, as_linear

__all__ = ["CheckRecord", "PaperCheckReport", "run_checks"]

PASS, FAIL, REPORTED, SKIPPED = "PASS", "FAIL", "REPORTED", "SKIPPED"

FIT_NS = tuple(range(100, 201, 10))
FIT_ORDER = 3
CLT_NS = (25, 50, 100, 200)
EVEN_POLY = (10, -723, 713, 0)


@dataclass
class CheckRecord:
    id: str
    description: str
    reference: str
    expected: str
    observed: str
    status: str
    runtime: float = 0.0

    def to_dict(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "reference": self.reference,
            "expected": self.expected,
            "observed": self.observed,
            "status": self.status,
            "runtime_s": round(self.runtime, 3),
        }


@dataclass
class PaperCheckReport:
    n_max: int
    records: list[CheckRecord] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.status != FAIL for r in self.records)

    @property
    def exit_status(self) -> int:
        return 0 if self.ok else 1

    def by_id(self, check_id: str) -> CheckRecord:
        return next(r for r in self.records if r.id == check_id)

    def to_dict(self) -> dict:
        counts = Counter(r.status for r in self.records)
        return {
            "schema_version": 1,
            "kind": "PaperCheckReport",
            "n_max": self.n_max,
            "records": [r.to_dict() for r in self.records],
            "summary": {s: counts.get(s, 0) for s in (PASS, FAIL, REPORTED, SKIPPED)},
            "exit_status": self.exit_status,
        }

    def render(self) -> str:
        width = max(len(r.id) for r in self.records)
        lines = [f"{'check':<{width}}  status    time(s)  observed"]
        for r in self.records:
            lines.append(f"{r.id:<{width}}  {r.status:<8}  {r.runtime:7.2f}  {r.observed}")
        lines.append("")
        lines.append("Expansion checks are fits to exact data; fitted values are shown whatever the status.")
        s = self.to_dict()["summary"]
        lines.append(", ".join(f"{k}: {v}" for k, v in s.items()))
        return "\n".join(lines) + "\n"


def _timed(fn):
    def wrapper(*args, **kwargs) -> CheckRecord:
        t0 = time.perf_counter()
        rec = fn(*args, **kwargs)
        rec.runtime = time.perf_counter() - t0
        return rec

    return wrapper


def _expansion_status(hit: bool, converging: bool) -> str:
    if hit:
        return PASS
    return REPORTED if converging else FAIL


class _Suite:
    def __init__(self, n_max: int, table_hook, eval_max_n: int, samples: int, seed: int):
        self.n_max = n_max
        self.eval_max_n = eval_max_n
        self.samples = samples
        self.seed = seed
        hook = table_hook or (lambda t: t)
        self.tables: dict[int, DistributionTable] = {
            t.n: hook(t) for t in iter_distributions(n_max, n_max=max(n_max, 1))
        }
        self._moments = {}
        self.fit_ns = [n for n in FIT_NS if n <= n_max]

    def moments(self, n: int, max_moment: int = 10):
        if n not in self._moments:
            self._moments[n] = moments_from_table(self.tables[n], max_moment)
        return self._moments[n]

    def can_fit(self) -> bool:
        return len(self.fit_ns) >= FIT_ORDER + 2

    @_timed
    def law_exact(self) -> CheckRecord:
        small = min(10, self.n_max)
        mismatches = []
        asc_tables = {t.n: t for t in iter_distributions(small, Convention.FIRST_STEP_ASCENT)}
        for n in range(1, small + 1):
            for conv, table in ((Convention.FIRST_STEP_DESCENT, self.tables[n]), (Convention.FIRST_STEP_ASCENT, asc_tables[n])):
                if table.counts != distribution_bruteforce(n, conv).counts:
                    mismatches.append(f"n={n} {conv.value}")
        bad_sum = [n for n, t in self.tables.items() if t.total != math.factorial(n)]
        ok = not mismatches and not bad_sum
        return CheckRecord(
            "law-exact",
            f"DP table equals enumeration for n <= {small} (both conventions); counts sum to n! for n <= {self.n_max}",
            "invariant: distribution_dp = distribution_bruteforce; normalization",
            "no mismatches",
            "no mismatches" if ok else f"mismatch {mismatches[:3]} bad sums {bad_sum[:3]}",
            PASS if ok else FAIL,
        )

    @_timed
    def mean_formula(self) -> CheckRecord:
        bad = [n for n in range(2, self.n_max + 1) if self.moments(n).mean != paper_mean(n)]
        mean1 = self.moments(1).mean
        witness = mean1 == 1 and paper_mean(1) == Fraction(5, 6)
        ok = not bad and witness
        return CheckRecord(
            "mean-formula",
            f"mean = 2n/3 + 1/6 exactly for 2 <= n <= {self.n_max}; mean(1) = 1 != 5/6",
            "closed form for the expectation",
            "exact equality",
            f"{self.n_max - 1} values checked, mismatches {bad[:5]}; mean(1) = {mean1}",
            PASS if ok else FAIL,
        )

    @_timed
    def variance_formula(self) -> CheckRecord:
        bad = [n for n in range(4, self.n_max + 1) if self.moments(n).central[2] != paper_variance(n)]
        observed = f"{max(0, self.n_max - 3)} values checked, mismatches {bad[:5]}"
        ok = not bad
        if self.n_max >= 3:
            m2_3 = self.moments(3).central[2]
            witness = m2_3 == Fraction(17, 36) and m2_3 != paper_variance(3)
            observed += f"; m_2(3) = {m2_3} vs formula {paper_variance(3)}"
            ok = ok and witness
        return CheckRecord(
            "variance-formula",
            f"m_2 = 8n/45 - 13/180 exactly for 4 <= n <= {self.n_max}; n = 3 differs",
            "closed form for the variance, valid from n = 4",
            "exact equality; inequality at n = 3",
            observed,
            PASS if ok else FAIL,
        )

    @_timed
    def standardization(self) -> CheckRecord:
        bad = []
        for n in range(2, self.n_max + 1):
            mt = self.moments(n)
            if mt.std_even.get(2) != 1 or mt.std_odd_q.get(1) != 0:
                bad.append(n)
        return CheckRecord(
            "standardization",
            f"first standardized moment 0 and alpha_2 = 1 for 2 <= n <= {self.n_max}",
            "definition of Z_n",
            "exact",
            f"mismatches {bad[:5]}",
            PASS if not bad else FAIL,
        )

    def _skip(self, check_id: str, description: str) -> CheckRecord:
        return CheckRecord(check_id, description, "asymptotic expansion", "-", f"needs n up to {FIT_NS[-1]}", SKIPPED)

    def even_series(self, r: int):
        return fit_inverse_powers({n: self.moments(n).std_even[2 * r] for n in self.fit_ns}, FIT_ORDER)

    def odd_series(self, r: int):
        return fit_odd_scaled(
            {n: self.moments(n).std_odd_q[2 * r + 1] for n in self.fit_ns},
            {n: self.moments(n).central[2] for n in self.fit_ns},
            FIT_ORDER,
        )

    @_timed
    def even_expansion(self, r: int) -> CheckRecord:
        check_id = f"even-expansion-r{r}"
        desc = f"fit alpha_{2 * r} on n in 100..200 step 10, J=3"
        if not self.can_fit():
            return self._skip(check_id, desc)
        s = self.even_series(r)
        c0, c1 = s.exact[0], s.exact[1]
        lead = compare("c_0", gaussian_moment(r), s.coefficients[0])
        ratio = compare("c_1/c_0", paper_even_correction(r), c1 / c0 if c0 else Fraction(0))
        ratio_fit = ratio.fitted
        hit = lead.rel_error <= 1e-6 and ratio.rel_error <= 1e-3
        return CheckRecord(
            check_id,
            desc,
            "even-moment expansion, 1/n coefficient r(r-1)(10r-713)/1764",
            f"c_0 = {gaussian_moment(r)} (rel 1e-6), c_1/c_0 = {paper_even_correction(r)} (rel 1e-3)",
            f"c_0 = {float(lead.fitted):.10g} (rel err {float(lead.rel_error):.2e}), "
            f"c_1/c_0 = {float(ratio_fit):.10g} (rel err {float(ratio.rel_error):.2e}), "
            f"converging={s.is_converging()}",
            _expansion_status(hit, s.is_converging()),
        )

    @_timed
    def odd_expansion(self, r: int) -> CheckRecord:
        check_id = f"odd-expansion-r{r}"
        desc = f"fit alpha_{2 * r + 1} * sqrt(n) on n in 100..200 step 10, J=3"
        if not self.can_fit():
            return self._skip(check_id, desc)
        s = self.odd_series(r)
        coeffs = paper_odd_coeffs(r)
        target = coeffs.leading(40)
        cmp = compare("c_0", target, s.coefficients[0])
        if r == 1:
            hit = cmp.abs_error <= 1e-2
            tol = "abs 1e-2"
        else:
            hit = cmp.rel_error <= 1e-2
            tol = "rel 1e-2"
        return CheckRecord(
            check_id,
            desc,
            "odd-moment expansion, leading coefficient -(sqrt(10)/43) g_r (r-1)",
            f"c_0 = {float(target):.7f} ({tol})",
            f"c_0 = {float(cmp.fitted):.10g} (abs err {float(cmp.abs_error):.3g}), converging={s.is_converging()}",
            _expansion_status(hit, s.is_converging()),
        )

    @_timed
    def poly_exact(self) -> CheckRecord:
        coeffs = interpolate_in_r({r: paper_even_correction(r) * 1764 for r in range(4)}, 3)
        ok = tuple(coeffs) == EVEN_POLY
        return CheckRecord(
            "poly-reconstruction-exact",
            "interpolate 1764 * even correction at r = 0..3",
            "even-moment expansion polynomial r(r-1)(10r-713)",
            str(EVEN_POLY),
            str(tuple(str(c) for c in coeffs)),
            PASS if ok else FAIL,
        )

    @_timed
    def poly_fitted(self) -> CheckRecord:
        check_id = "poly-reconstruction-fitted"
        desc = "interpolate fitted c_1/c_0 at r = 1..4 (r = 1 is alpha_2 = 1), compare with the cubic"
        if not self.can_fit():
            return self._skip(check_id, desc)
        values = {}
        for r in range(1, 5):
            s = self.even_series(r)
            values[r] = s.exact[1] / s.exact[0] * 1764
        coeffs = interpolate_in_r(values, 3)
        # 1e-3 relative to the largest coefficient, matching the c_1/c_0 tolerance
        tol = Fraction(723, 1000)
        errs = [abs(c - e) for c, e in zip(coeffs, EVEN_POLY)]
        ok = max(errs) <= tol
        return CheckRecord(
            check_id,
            desc,
            "even-moment expansion polynomial r(r-1)(10r-713)",
            f"{EVEN_POLY} within {float(tol)} per coefficient",
            f"{tuple(round(float(c), 4) for c in coeffs)} (max err {float(max(errs)):.3g})",
            PASS if ok else FAIL,
        )

    @_timed
    def clt(self) -> CheckRecord:
        ns = [n for n in CLT_NS if n <= self.n_max]
        if len(ns) < 2:
            return CheckRecord("clt-kolmogorov", "Kolmogorov distance to N(0,1)", "convergence in distribution",
                               "-", f"needs n up to {CLT_NS[-1]}", SKIPPED)
        ks = [kolmogorov_to_normal(self.tables[n]) for n in ns]
        decreasing = all(b < a for a, b in zip(ks, ks[1:]))
        bound = ks[-1] <= 0.1 if ns[-1] == 200 else True
        return CheckRecord(
            "clt-kolmogorov",
            f"Kolmogorov distance to N(0,1) at n = {ns}",
            "convergence in distribution to the normal law",
            "strictly decreasing; <= 0.1 at n = 200",
            ", ".join(f"{n}: {k:.5f}" for n, k in zip(ns, ks)),
            PASS if decreasing and bound else FAIL,
        )

    @_timed
    def montecarlo(self) -> CheckRecord:
        n = 8
        exact = self.tables[n] if n in self.tables else next(t for t in iter_distributions(n) if t.n == n)
        h1 = empirical_histogram(n, self.samples, self.seed)
        h2 = empirical_histogram(n, self.samples, self.seed)
        tv = tv_distance(h1, exact)
        same = histogram_to_json(h1) == histogram_to_json(h2)
        return CheckRecord(
            "montecarlo-tv",
            f"n = 8, M = {self.samples}, seed = {self.seed}: TV to exact law; rerun byte-identical",
            "invariant: sampler consistency",
            "TV <= 0.01; identical",
            f"TV = {tv:.5f}, identical={same}",
            PASS if tv <= 0.01 and same else FAIL,
        )

    @_timed
    def evaluators(self) -> CheckRecord:
        bad = []
        for n in range(1, self.eval_max_n + 1):
            perms = np.array(list(itertools.permutations(range(1, n + 1))), dtype=np.int8)
            for conv in Convention:
                oracle = as_bruteforce_batch(perms, conv).tolist()
                for p, k in zip(perms.tolist(), oracle):
                    if as_linear(p, conv) != k:
                        bad.append((tuple(p), conv.value))
        flip_bad = []
        for n in range(1, min(8, self.eval_max_n) + 1):
            dist = {conv: Counter(as_linear(w, conv) for w in all_permutations(n)) for conv in Convention}
            if dist[Convention.FIRST_STEP_DESCENT] != dist[Convention.FIRST_STEP_ASCENT]:
                flip_bad.append(n)
        ok = not bad and not flip_bad
        return CheckRecord(
            "evaluator-equivalence",
            f"as_linear = as_bruteforce on S_n for n <= {self.eval_max_n}; conventions equidistributed for n <= {min(8, self.eval_max_n)}",
            "invariant: linear evaluator matches subsequence search",
            "no mismatches",
            f"mismatches {bad[:3]}, convention flips {flip_bad}",
            PASS if ok else FAIL,
        )


def run_checks(
    n_max: int = 200,
    table_hook: Callable[[DistributionTable], DistributionTable] | None = None,
    eval_max_n: int = 9,
    samples: int = 200_000,
    seed: int = 1,
) -> PaperCheckReport:
    """Run every check and collect the records in a fixed order.

    ``table_hook`` is applied to each DP table before any check sees it; the
    tests use it to inject a corrupted table.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    suite = _Suite(n_max, table_hook, eval_max_n, samples, seed)
    report = PaperCheckReport(n_max)
    report.records += [
        suite.law_exact(),
        suite.mean_formula(),
        suite.variance_formula(),
        suite.standardization(),
        suite.even_expansion(2),
        suite.even_expansion(3),
        suite.odd_expansion(2),
        suite.odd_expansion(1),
        suite.poly_exact(),
        suite.poly_fitted(),
        suite.clt(),
        suite.montecarlo(),
        suite.evaluators(),
    ]
    return report
