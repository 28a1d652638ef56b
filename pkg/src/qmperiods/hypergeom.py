"""Hypergeometric coefficients of the degree-N Calabi-Yau hypersurface.

B_r(N, d) is the eps^r Taylor coefficient of

    prod_{r=1}^{N d} (r + N eps) / prod_{r=1}^{d} (r + eps)^N

and is computed two ways: directly with jets, and as a d-fold convolution
of the per-block sequences A_k^{(l)}.
"""
from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import List

from .exact import Jet, binomial, fmt_rational, jet_pow

log = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def _block_poly(N: int, l: int) -> tuple:
    # prod_{r=1}^{N} (N(l-1) + r + N eps), all N+1 coefficients
    jet = Jet.constant(1, N)
    for r in range(1, N + 1):
        jet = jet * Jet.linear(N * (l - 1) + r, N, N)
    return jet.coeffs


def a_coeff(N: int, l: int, i: int) -> Fraction:
    if l < 1 or i < 0:
        raise ValueError("a_coeff needs l >= 1 and i >= 0")
    coeffs = _block_poly(N, l)
    return coeffs[i] if i < len(coeffs) else Fraction(0)


@lru_cache(maxsize=None)
def A_coeff(N: int, l: int, k: int) -> Fraction:
    if l < 1 or k < 0:
        raise ValueError("A_coeff needs l >= 1 and k >= 0")
    total = Fraction(0)
    for i in range(k + 1):
        n = k - i
        total += a_coeff(N, l, i) * binomial(N + n - 1, n) * Fraction((-1) ** n, l ** (N + n))
    return total


def B_coeff_jet(N: int, d: int, rmax: int | None = None) -> List[Fraction]:
    """B_0..B_rmax(N, d) by direct jet arithmetic (rmax defaults to N-2)."""
    if rmax is None:
        rmax = N - 2
    if d < 0 or rmax < 0:
        raise ValueError("B_coeff_jet needs d >= 0 and rmax >= 0")
    if d == 0:
        return [Fraction(1)] + [Fraction(0)] * rmax
    jet = Jet.constant(1, rmax)
    for r in range(1, N * d + 1):
        jet = jet * Jet.linear(r, N, rmax)
    for r in range(1, d + 1):
        jet = jet * jet_pow(Jet.linear(r, 1, rmax), -N)
    return list(jet.coeffs)


def B_coeff_conv(N: int, d: int, rmax: int | None = None) -> List[Fraction]:
    """B_0..B_rmax(N, d) as the convolution of A^{(1)}, ..., A^{(d)}."""
    if rmax is None:
        rmax = N - 2
    if d < 1:
        raise ValueError("B_coeff_conv needs d >= 1")
    acc = [A_coeff(N, 1, k) for k in range(rmax + 1)]
    for l in range(2, d + 1):
        seq = [A_coeff(N, l, k) for k in range(rmax + 1)]
        acc = [sum(acc[p] * seq[r - p] for p in range(r + 1)) for r in range(rmax + 1)]
    return acc


def w_closed_form(N: int, d: int, j: int) -> Fraction:
    """w_{j,d} = (N/d) (-1/d)^j sum_{r<=j} B_r (-d)^r; zero for j = -1."""
    if d < 1:
        raise ValueError("w_closed_form needs d >= 1")
    if j == -1:
        return Fraction(0)
    if j < 0:
        raise ValueError("w_closed_form needs j >= -1")
    B = B_coeff_jet(N, d, j)
    s = sum(B[r] * (-d) ** r for r in range(j + 1))
    return Fraction(N, d) * Fraction(-1, d) ** j * s


def check_positive(N: int, d: int, rmax: int | None = None) -> bool:
    """Log a warning if some B_r(N, d) is not positive; returns the outcome."""
    B = B_coeff_jet(N, d, rmax)
    bad = [r for r, b in enumerate(B) if b <= 0]
    if bad:
        log.warning("non-positive B_r(N=%d, d=%d) at r=%s", N, d, bad)
    return not bad


@dataclass
class CoeffTable:
    N: int
    d: int
    jmax: int
    B: List[Fraction] = field(default_factory=list)
    A: dict = field(default_factory=dict)
    a: dict = field(default_factory=dict)

    @classmethod
    def build(cls, N: int, d: int, jmax: int | None = None) -> "CoeffTable":
        if jmax is None:
            jmax = N - 2
        t = cls(N, d, jmax)
        t.B = B_coeff_jet(N, d, jmax)
        for l in range(1, d + 1):
            t.A[l] = [A_coeff(N, l, k) for k in range(jmax + 1)]
            t.a[l] = [a_coeff(N, l, i) for i in range(N + 1)]
        if t.B[0] != Fraction(factorial(N * d), factorial(d) ** N):
            raise AssertionError("B_0 disagrees with (Nd)!/(d!)^N")
        return t

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "d": self.d,
            "jmax": self.jmax,
            "B": [fmt_rational(b) for b in self.B],
            "A": {str(l): [fmt_rational(x) for x in v] for l, v in self.A.items()},
            "a": {str(l): [fmt_rational(x) for x in v] for l, v in self.a.items()},
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)
