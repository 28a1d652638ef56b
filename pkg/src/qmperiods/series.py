"""Truncated q- and (x, q)-series: periods, Picard-Fuchs operator, mirror map.

Throughout, q stands for e^x, so d/dx acts on x^m q^d as
m x^(m-1) q^d + d x^m q^d.
"""
from __future__ import annotations

import json
from fractions import Fraction
from math import factorial
from typing import Dict, List, Tuple

from .exact import as_rational, binomial, fmt_rational
from .hypergeom import B_coeff_jet, w_closed_form
from .residue import intersection_number, w_residue


class QSeries:
    """sum_{d=0}^{dmax} c_d q^d."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs, dmax: int | None = None):
        cs = [as_rational(c) for c in coeffs]
        if dmax is not None:
            cs = (cs + [Fraction(0)] * (dmax + 1))[: dmax + 1]
        if not cs:
            raise ValueError("empty series")
        self.coeffs: Tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def zero(cls, dmax: int) -> "QSeries":
        return cls([], dmax)

    @classmethod
    def one(cls, dmax: int) -> "QSeries":
        return cls([1], dmax)

    @classmethod
    def gen(cls, dmax: int) -> "QSeries":
        return cls([0, 1], dmax)

    @property
    def dmax(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, d: int) -> Fraction:
        return self.coeffs[d] if d <= self.dmax else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, QSeries):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        terms = [f"{fmt_rational(c)}*q^{d}" for d, c in enumerate(self.coeffs) if c]
        return f"QSeries({' + '.join(terms) or '0'}; dmax={self.dmax})"

    def _coerce(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        return QSeries([other], self.dmax)

    def __add__(self, other) -> "QSeries":
        other = self._coerce(other)
        k = min(self.dmax, other.dmax)
        return QSeries([self.coeffs[i] + other.coeffs[i] for i in range(k + 1)])

    __radd__ = __add__

    def __neg__(self) -> "QSeries":
        return QSeries([-c for c in self.coeffs])

    def __sub__(self, other) -> "QSeries":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "QSeries":
        return self._coerce(other) - self

    def __mul__(self, other) -> "QSeries":
        if not isinstance(other, QSeries):
            c = as_rational(other)
            return QSeries([c * a for a in self.coeffs])
        k = min(self.dmax, other.dmax)
        f, g = self.coeffs, other.coeffs
        return QSeries([sum(f[p] * g[i - p] for p in range(i + 1)) for i in range(k + 1)])

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            return self.inverse() ** (-n)
        out = QSeries.one(self.dmax)
        for _ in range(n):
            out = out * self
        return out

    def inverse(self) -> "QSeries":
        c0 = self.coeffs[0]
        if c0 == 0:
            raise ZeroDivisionError("series with zero constant term is not a unit")
        g = [1 / c0]
        for i in range(1, self.dmax + 1):
            g.append(-sum(self.coeffs[p] * g[i - p] for p in range(1, i + 1)) / c0)
        return QSeries(g)

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, QSeries):
            return self * other.inverse()
        return self * (1 / as_rational(other))

    def exp(self) -> "QSeries":
        """exp of a series without constant term, via E' = f' E."""
        if self.coeffs[0]:
            raise ValueError("exp needs a zero constant term")
        n = self.dmax
        f = self.coeffs
        e = [Fraction(1)]
        for k in range(1, n + 1):
            e.append(sum(i * f[i] * e[k - i] for i in range(1, k + 1)) / k)
        return QSeries(e)

    def compose(self, g: "QSeries") -> "QSeries":
        """self(g(Q)) for g without constant term."""
        if g.coeffs[0]:
            raise ValueError("inner series must have zero constant term")
        n = min(self.dmax, g.dmax)
        out = QSeries.zero(n)
        power = QSeries.one(n)
        for d in range(n + 1):
            if self.coeffs[d]:
                out = out + power * self.coeffs[d]
            power = power * g
        return out

    def to_dict(self) -> dict:
        return {
            "dmax": self.dmax,
            "terms": [{"d": d, "m": 0, "coef": fmt_rational(c)} for d, c in enumerate(self.coeffs) if c],
        }


class XQSeries:
    """sum c_{d,m} x^m q^d for d <= dmax."""

    __slots__ = ("coeffs", "dmax", "mmax")

    def __init__(self, coeffs: Dict[Tuple[int, int], Fraction] | None = None, dmax: int = 0,
                 mmax: int | None = None):
        clean = {}
        for (d, m), c in (coeffs or {}).items():
            c = as_rational(c)
            if c and d <= dmax:
                clean[(d, m)] = c
        self.coeffs = clean
        self.dmax = dmax
        self.mmax = max((m for _, m in clean), default=0) if mmax is None else mmax

    @classmethod
    def from_q(cls, s: QSeries, xpow: int = 0) -> "XQSeries":
        return cls({(d, xpow): c for d, c in enumerate(s.coeffs)}, s.dmax)

    def __getitem__(self, key: Tuple[int, int]) -> Fraction:
        return self.coeffs.get(key, Fraction(0))

    def q_part(self, m: int = 0) -> QSeries:
        return QSeries([self[d, m] for d in range(self.dmax + 1)])

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        if isinstance(other, XQSeries):
            return self.dmax == other.dmax and self.coeffs == other.coeffs
        return NotImplemented

    __hash__ = None

    def __repr__(self) -> str:
        terms = [f"{fmt_rational(c)}*x^{m}*q^{d}" for (d, m), c in sorted(self.coeffs.items())]
        return f"XQSeries({' + '.join(terms) or '0'}; dmax={self.dmax})"

    def __add__(self, other: "XQSeries") -> "XQSeries":
        dmax = min(self.dmax, other.dmax)
        out = {k: v for k, v in self.coeffs.items() if k[0] <= dmax}
        for k, v in other.coeffs.items():
            if k[0] <= dmax:
                out[k] = out.get(k, 0) + v
        return XQSeries(out, dmax)

    def __neg__(self) -> "XQSeries":
        return XQSeries({k: -v for k, v in self.coeffs.items()}, self.dmax)

    def __sub__(self, other: "XQSeries") -> "XQSeries":
        return self + (-other)

    def scale(self, c) -> "XQSeries":
        c = as_rational(c)
        return XQSeries({k: v * c for k, v in self.coeffs.items()}, self.dmax)

    def __mul__(self, other) -> "XQSeries":
        if not isinstance(other, XQSeries):
            return self.scale(other)
        dmax = min(self.dmax, other.dmax)
        out: Dict[Tuple[int, int], Fraction] = {}
        for (d1, m1), c1 in self.coeffs.items():
            for (d2, m2), c2 in other.coeffs.items():
                if d1 + d2 <= dmax:
                    k = (d1 + d2, m1 + m2)
                    out[k] = out.get(k, 0) + c1 * c2
        return XQSeries(out, dmax)

    __rmul__ = __mul__

    def times_x(self, k: int = 1) -> "XQSeries":
        return XQSeries({(d, m + k): c for (d, m), c in self.coeffs.items()}, self.dmax)

    def times_q(self, k: int = 1) -> "XQSeries":
        """Multiply by q^k = e^{kx}; terms beyond dmax are dropped."""
        return XQSeries({(d + k, m): c for (d, m), c in self.coeffs.items()}, self.dmax)

    def dx(self) -> "XQSeries":
        out: Dict[Tuple[int, int], Fraction] = {}
        for (d, m), c in self.coeffs.items():
            if d:
                out[(d, m)] = out.get((d, m), 0) + d * c
            if m:
                out[(d, m - 1)] = out.get((d, m - 1), 0) + m * c
        return XQSeries(out, self.dmax)

    def to_dict(self) -> dict:
        return {
            "dmax": self.dmax,
            "terms": [
                {"d": d, "m": m, "coef": fmt_rational(c)} for (d, m), c in sorted(self.coeffs.items())
            ],
        }


class PSeries:
    """sum_{j=0}^{N-2} c_j P^j with P^{N-1} = 0 and XQSeries coefficients."""

    def __init__(self, N: int, components: List[XQSeries]):
        if len(components) != N - 1:
            raise ValueError(f"need {N - 1} components for P^{N - 1} = 0")
        self.N = N
        self.components = list(components)

    def __getitem__(self, j: int) -> XQSeries:
        if not 0 <= j <= self.N - 2:
            raise IndexError(f"P^{j} vanishes or is out of range (P^{self.N - 1} = 0)")
        return self.components[j]

    def __mul__(self, other: "PSeries") -> "PSeries":
        if other.N != self.N:
            raise ValueError("PSeries with different N")
        dmax = min(self.components[0].dmax, other.components[0].dmax)
        out = [XQSeries({}, dmax) for _ in range(self.N - 1)]
        for i, a in enumerate(self.components):
            for j, b in enumerate(other.components):
                if i + j <= self.N - 2:
                    out[i + j] = out[i + j] + a * b
        return PSeries(self.N, out)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "dmax": self.components[0].dmax,
            "components": [{"power": j, **c.to_dict()} for j, c in enumerate(self.components)],
        }


def to_json(series) -> str:
    return json.dumps(series.to_dict(), sort_keys=True)


# ---------------------------------------------------------------------------
# periods and the Picard-Fuchs operator


def w_series(N: int, i: int, dmax: int) -> QSeries:
    """w_i: the e^{dx} coefficients of d^i/d eps^i F_d(eps) at eps = 0, i.e. i! B_i(N, d)."""
    if not 0 <= i <= N - 2:
        raise ValueError(f"w_series needs 0 <= i <= N-2, got i={i}")
    coeffs = [Fraction(1) if i == 0 else Fraction(0)]
    for d in range(1, dmax + 1):
        coeffs.append(factorial(i) * B_coeff_jet(N, d, i)[i])
    return QSeries(coeffs)


def W_series(N: int, j: int, dmax: int) -> XQSeries:
    """W_j = sum_i binom(j, i) x^{j-i} w_i."""
    if not 0 <= j <= N - 2:
        raise ValueError(f"W_series needs 0 <= j <= N-2, got j={j}")
    out = XQSeries({}, dmax)
    for i in range(j + 1):
        out = out + XQSeries.from_q(w_series(N, i, dmax), j - i).scale(binomial(j, i))
    return XQSeries(out.coeffs, dmax, mmax=2 * N - 3)


def pf_operator_apply(N: int, f: XQSeries) -> XQSeries:
    """(d/dx)^{N-1} f - N e^x (N d/dx + N-1) ... (N d/dx + 1) f."""
    lhs = f
    for _ in range(N - 1):
        lhs = lhs.dx()
    g = f
    for k in range(N - 1, 0, -1):
        g = g.dx().scale(N) + g.scale(k)
    return lhs - g.times_q().scale(N)


def mirror_map(N: int, dmax: int) -> QSeries:
    """t(x) - x = w_1 / w_0."""
    return w_series(N, 1, dmax) / w_series(N, 0, dmax)


def invert_mirror_map(N: int, dmax: int) -> QSeries:
    """q as a series in Q = e^t, solving q = Q exp(-f(q)) by fixed-point iteration."""
    f = mirror_map(N, dmax)
    Q = QSeries.gen(dmax)
    q = Q
    for _ in range(dmax + 1):
        nxt = Q * (-f.compose(q)).exp()
        if nxt == q:
            break
        q = nxt
    else:
        raise ArithmeticError("mirror map inversion did not reach a fixed point")
    return q


def hori_combination(N: int, d: int, j: int, method: str = "closed") -> Fraction:
    """d w_{j,d} + w_{j-1,d}."""
    if d < 1 or j < 0:
        raise ValueError("hori_combination needs d >= 1 and j >= 0")
    if method == "closed":
        w = w_closed_form
    elif method == "residue":
        w = w_residue
    else:
        raise ValueError(f"unknown method {method!r}")
    return d * w(N, d, j) + w(N, d, j - 1)


def virtual_gen_function(N: int, a: int, b: int, dmax: int) -> XQSeries:
    """N x + sum_{d>=1} w(O_{h^a} O_{h^b})_{0,d} q^d."""
    if a < 0 or b < 0 or a + b != N - 3:
        raise ValueError("virtual_gen_function needs a, b >= 0 with a + b = N - 3")
    coeffs = {(0, 1): Fraction(N)}
    for d in range(1, dmax + 1):
        coeffs[(d, 0)] = intersection_number(N, d, a, b, 0)
    return XQSeries(coeffs, dmax)


def gw_gen_function(N: int, a: int, b: int, dmax: int) -> XQSeries:
    """The same generating function rewritten in t = x + f(q), Q = e^t.

    The x^1 slot of the result holds the coefficient of t, the q^d slots
    hold the coefficients of Q^d.
    """
    w = virtual_gen_function(N, a, b, dmax)
    qQ = invert_mirror_map(N, dmax)
    fQ = mirror_map(N, dmax).compose(qQ)
    wq = QSeries([0] + [w[d, 0] for d in range(1, dmax + 1)])
    inst = wq.compose(qQ) - fQ * N
    coeffs = {(0, 1): w[0, 1]}
    for d in range(1, dmax + 1):
        coeffs[(d, 0)] = inst[d]
    return XQSeries(coeffs, dmax)


def i_function(N: int, dmax: int) -> PSeries:
    """I(P, x) = sum_j W_j(x) P^j / j!."""
    return PSeries(N, [W_series(N, j, dmax).scale(Fraction(1, factorial(j))) for j in range(N - 1)])


def corollary_series(N: int, j: int, dmax: int, method: str = "closed") -> XQSeries:
    """sum_m x^m/m! sum_d (1/N) (d w_{j-m,d} + w_{j-m-1,d}) q^d, with the d = 0 term delta_{m,j}.

    Only k = j - m survives the degree constraint on sigma_k(O_{h^{N-2-j+m}}).
    """
    out = {}
    for m in range(j + 1):
        k = j - m
        xm = Fraction(1, factorial(m))
        if k == 0:
            out[(0, m)] = xm
        for d in range(1, dmax + 1):
            out[(d, m)] = xm * hori_combination(N, d, k, method) / N
    return XQSeries(out, dmax)
