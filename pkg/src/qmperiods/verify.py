"""Verification suites with exact comparison and machine-readable reports."""
from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Callable, Dict, List, Tuple

from .exact import fmt_rational
from .hypergeom import B_coeff_conv, B_coeff_jet, w_closed_form
from .identities import (
    chu_vandermonde_sides,
    lemma1_sides,
    lemma3_sides,
    lemma4_sides,
    pascal_sum_sides,
    sign_binomial_sides,
)
from .residue import w_residue
from .series import (
    W_series,
    XQSeries,
    corollary_series,
    invert_mirror_map,
    mirror_map,
    pf_operator_apply,
    virtual_gen_function,
)

SUITES = (
    "theorem1", "closedform", "lemma1", "lemma2", "lemma3", "lemma4",
    "ode", "key2", "corollary", "binomial",
)

DEFAULT_NMAX = 6
DEFAULT_DMAX = {"theorem1": 3, "closedform": 3, "lemma2": 4, "ode": 4, "key2": 3, "corollary": 3}


@dataclass
class Case:
    check: str
    params: Dict[str, int]
    lhs: str
    rhs: str
    passed: bool
    elapsed: float  # milliseconds

    def key(self):
        return (self.check, sorted(self.params.items()))

    def to_dict(self) -> dict:
        return {
            "check": self.check,
            "params": self.params,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "pass": self.passed,
            "elapsed": round(self.elapsed, 3),
        }


@dataclass
class VerificationReport:
    cases: List[Case] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.cases)

    def summary(self) -> dict:
        passed = sum(c.passed for c in self.cases)
        return {"total": len(self.cases), "passed": passed, "failed": len(self.cases) - passed}

    def to_dict(self, timings: bool = True) -> dict:
        cases = [c.to_dict() for c in self.cases]
        if not timings:
            for c in cases:
                del c["elapsed"]
        return {"cases": cases, "summary": self.summary()}

    def to_json(self, timings: bool = True) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=1)

    def to_text(self) -> str:
        lines = []
        for c in self.cases:
            p = " ".join(f"{k}={v}" for k, v in c.params.items())
            status = "PASS" if c.passed else "FAIL"
            line = f"{status}  {c.check:<12} {p}"
            if not c.passed:
                line += f"\n      lhs = {c.lhs}\n      rhs = {c.rhs}"
            lines.append(line)
        s = self.summary()
        lines.append(f"{s['passed']}/{s['total']} passed, {s['failed']} failed")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# cells: each returns (lhs, rhs); top-level so a process pool can pickle them


def cell_theorem1(N, d, j):
    lhs = Fraction(d, N) * w_residue(N, d, j) + Fraction(1, N) * w_residue(N, d, j - 1)
    return lhs, B_coeff_jet(N, d, j)[j]


def cell_closedform(N, d, j):
    return w_residue(N, d, j), w_closed_form(N, d, j)


def cell_lemma1(N, l):
    return lemma1_sides(N, l)


def cell_lemma2(N, d):
    return B_coeff_jet(N, d), B_coeff_conv(N, d)


def cell_lemma3(N, l, alpha):
    return lemma3_sides(N, l, alpha)


def cell_lemma4(N, d, alpha):
    return lemma4_sides(N, d, alpha)


def cell_ode(N, j, dmax):
    return pf_operator_apply(N, W_series(N, j, dmax)), XQSeries({}, dmax)


def cell_key2(N, dmax):
    lhs = virtual_gen_function(N, N - 3, 0, dmax)
    rhs = XQSeries.from_q(mirror_map(N, dmax)).scale(N) + XQSeries({(0, 1): N}, dmax)
    return lhs, rhs


def cell_mirror_inverse(N, dmax):
    q = invert_mirror_map(N, dmax)
    f = mirror_map(N, dmax)
    # t(x(Q)) = t  <=>  q(Q) exp(f(q(Q))) = Q
    return q * f.compose(q).exp(), q.gen(dmax)


def cell_corollary(N, j, dmax):
    W = W_series(N, j, dmax).scale(Fraction(1, factorial(j)))
    return corollary_series(N, j, dmax, method="residue"), W


def cell_chu_vandermonde(N, alpha, s, t):
    return chu_vandermonde_sides(N, alpha, s, t)


def cell_sign_binomial(alpha, s, t, u):
    return sign_binomial_sides(alpha, s, t, u)


def cell_pascal(N, a):
    return pascal_sum_sides(N, a)


CELLS: Dict[str, Callable] = {
    "theorem1": cell_theorem1,
    "closedform": cell_closedform,
    "lemma1": cell_lemma1,
    "lemma2": cell_lemma2,
    "lemma3": cell_lemma3,
    "lemma4": cell_lemma4,
    "ode": cell_ode,
    "key2": cell_key2,
    "mirror-inverse": cell_mirror_inverse,
    "corollary": cell_corollary,
    "chu-vandermonde": cell_chu_vandermonde,
    "sign-binomial": cell_sign_binomial,
    "pascal": cell_pascal,
}


def _show(v) -> str:
    if isinstance(v, (int, Fraction)):
        return fmt_rational(v)
    if isinstance(v, list):
        return "[" + ", ".join(_show(x) for x in v) + "]"
    if isinstance(v, XQSeries):
        return json.dumps(v.to_dict(), sort_keys=True)
    return str(v)


def _equal(lhs, rhs) -> bool:
    if hasattr(lhs, "equals"):
        return lhs.equals(rhs)
    return lhs == rhs


def run_cell(check: str, params: Dict[str, int]) -> Case:
    t0 = time.perf_counter()
    lhs, rhs = CELLS[check](**params)
    ok = _equal(lhs, rhs)
    ms = (time.perf_counter() - t0) * 1000
    return Case(check, dict(params), _show(lhs), _show(rhs), bool(ok), ms)


def _Ns(N, lo, hi):
    return [N] if N is not None else list(range(lo, hi + 1))


def plan(suite: str, N: int | None = None, dmax: int | None = None,
         nmax: int = DEFAULT_NMAX) -> List[Tuple[str, Dict[str, int]]]:
    """The (check, params) cells making up a suite."""
    if suite == "all":
        out = []
        for s in SUITES:
            out.extend(plan(s, N, dmax, nmax))
        return out
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {', '.join(SUITES + ('all',))}")
    D = dmax if dmax is not None else DEFAULT_DMAX.get(suite)
    cells = []
    if suite in ("theorem1", "closedform"):
        for n in _Ns(N, 3, nmax):
            for d in range(1, D + 1):
                for j in range(n - 1):
                    cells.append((suite, {"N": n, "d": d, "j": j}))
    elif suite == "lemma1":
        for n in _Ns(N, 2, nmax):
            for l in range(1, 5):
                cells.append(("lemma1", {"N": n, "l": l}))
    elif suite == "lemma2":
        for n in _Ns(N, 3, nmax):
            for d in range(1, D + 1):
                cells.append(("lemma2", {"N": n, "d": d}))
    elif suite == "lemma3":
        for n in _Ns(N, 3, min(nmax, 5)):
            for l in range(3):
                for alpha in range(4):
                    cells.append(("lemma3", {"N": n, "l": l, "alpha": alpha}))
    elif suite == "lemma4":
        for n in _Ns(N, 3, min(nmax, 5)):
            for d in range(1, 4):
                for alpha in range(4):
                    cells.append(("lemma4", {"N": n, "d": d, "alpha": alpha}))
    elif suite == "ode":
        for n in _Ns(N, 4, nmax):
            for j in range(n - 1):
                cells.append(("ode", {"N": n, "j": j, "dmax": D}))
    elif suite == "key2":
        for n in _Ns(N, 5, nmax):
            cells.append(("key2", {"N": n, "dmax": D}))
            cells.append(("mirror-inverse", {"N": n, "dmax": D}))
    elif suite == "corollary":
        for n in _Ns(N, 3, nmax):
            for j in range(n - 1):
                cells.append(("corollary", {"N": n, "j": j, "dmax": D}))
    elif suite == "binomial":
        for n in _Ns(N, 2, nmax):
            for alpha in range(7):
                for s in range(alpha + 1):
                    for t in range(alpha - s + 1):
                        cells.append(("chu-vandermonde", {"N": n, "alpha": alpha, "s": s, "t": t}))
            for a in range(9):
                cells.append(("pascal", {"N": n, "a": a}))
        for alpha in range(7):
            for s in range(alpha + 1):
                for t in range(alpha - s + 1):
                    for u in range(alpha - s - t + 1):
                        cells.append(("sign-binomial", {"alpha": alpha, "s": s, "t": t, "u": u}))
    return cells


def _run_star(args):
    return run_cell(*args)


def run(cells, jobs: int = 1) -> VerificationReport:
    if jobs > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            cases = list(pool.map(_run_star, cells, chunksize=4))
    else:
        cases = [run_cell(c, p) for c, p in cells]
    cases.sort(key=Case.key)
    return VerificationReport(cases)


def verify(suite: str, N: int | None = None, dmax: int | None = None, jobs: int = 1,
           nmax: int = DEFAULT_NMAX) -> VerificationReport:
    return run(plan(suite, N, dmax, nmax), jobs)
