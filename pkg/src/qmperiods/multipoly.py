"""Sparse multivariate polynomials and factored rational functions over Q.

Variables are indexed ``0 .. nvars-1`` and printed as ``z0, z1, ...``.  A
:class:`MultiPoly` is a dict from exponent tuples to nonzero Fractions.  A
:class:`RatFunc` keeps its denominator as a list of (factor, multiplicity)
pairs that is never expanded except for equality tests.
"""
from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Tuple

from .exact import as_rational, fmt_rational

Exponent = Tuple[int, ...]


class ArityError(ValueError):
    pass


class MultiPoly:
    __slots__ = ("terms", "nvars", "_hash")

    def __init__(self, terms: Dict[Exponent, Fraction] | None = None, nvars: int = 1):
        self.nvars = nvars
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != nvars:
                    raise ArityError(f"exponent {e} does not have {nvars} entries")
                if c:
                    clean[tuple(e)] = as_rational(c)
        self.terms: Dict[Exponent, Fraction] = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms, nvars):
        # terms already clean: tuple keys, nonzero Fraction values
        p = cls.__new__(cls)
        p.terms = terms
        p.nvars = nvars
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int) -> "MultiPoly":
        return cls._raw({}, nvars)

    @classmethod
    def const(cls, c, nvars: int) -> "MultiPoly":
        c = as_rational(c)
        return cls._raw({(0,) * nvars: c} if c else {}, nvars)

    @classmethod
    def var(cls, i: int, nvars: int, coeff=1) -> "MultiPoly":
        if not 0 <= i < nvars:
            raise ArityError(f"variable index {i} out of range for {nvars} variables")
        e = [0] * nvars
        e[i] = 1
        return cls._raw({tuple(e): as_rational(coeff)}, nvars)

    @classmethod
    def linear(cls, coeffs: Iterable, nvars: int | None = None) -> "MultiPoly":
        """sum_i coeffs[i] * z_i."""
        coeffs = list(coeffs)
        n = len(coeffs) if nvars is None else nvars
        terms = {}
        for i, c in enumerate(coeffs):
            if c:
                e = [0] * n
                e[i] = 1
                terms[tuple(e)] = as_rational(c)
        return cls._raw(terms, n)

    # -- inspection -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and (0,) * self.nvars in self.terms)

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("polynomial is not constant")
        return self.terms.get((0,) * self.nvars, Fraction(0))

    def involves(self, var: int) -> bool:
        return any(e[var] for e in self.terms)

    def variables(self) -> set:
        return {i for e in self.terms for i, k in enumerate(e) if k}

    def degree_in(self, var: int) -> int:
        return max((e[var] for e in self.terms), default=-1)

    def min_degree_in(self, var: int) -> int:
        return min((e[var] for e in self.terms), default=0)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def leading(self) -> Tuple[Exponent, Fraction]:
        e = max(self.terms)
        return e, self.terms[e]

    def coeff(self, exponent: Exponent) -> Fraction:
        return self.terms.get(tuple(exponent), Fraction(0))

    def coeffs_in(self, var: int) -> Dict[int, "MultiPoly"]:
        """Split as sum_k c_k * z_var^k; c_k do not involve z_var."""
        out: Dict[int, dict] = {}
        for e, c in self.terms.items():
            k = e[var]
            e2 = e[:var] + (0,) + e[var + 1:]
            out.setdefault(k, {})[e2] = c
        return {k: MultiPoly._raw(t, self.nvars) for k, t in out.items()}

    # -- arithmetic -------------------------------------------------------

    def _check(self, other: "MultiPoly"):
        if other.nvars != self.nvars:
            raise ArityError(f"arity mismatch: {self.nvars} vs {other.nvars}")

    def _lift(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            self._check(other)
            return other
        return MultiPoly.const(other, self.nvars)

    def __add__(self, other) -> "MultiPoly":
        other = self._lift(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MultiPoly._raw(terms, self.nvars)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly._raw({e: -c for e, c in self.terms.items()}, self.nvars)

    def __sub__(self, other) -> "MultiPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MultiPoly":
        return self._lift(other) - self

    def scale(self, c) -> "MultiPoly":
        c = as_rational(c)
        if not c:
            return MultiPoly.zero(self.nvars)
        return MultiPoly._raw({e: v * c for e, v in self.terms.items()}, self.nvars)

    def __mul__(self, other) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)
        self._check(other)
        if len(self.terms) < len(other.terms):
            a, b = other.terms, self.terms
        else:
            a, b = self.terms, other.terms
        out: Dict[Exponent, Fraction] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        return MultiPoly._raw({e: c for e, c in out.items() if c}, self.nvars)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("MultiPoly power must be non-negative")
        result = MultiPoly.const(1, self.nvars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, var: int, k: int) -> "MultiPoly":
        """Multiply by z_var^k (k may be negative when every term allows it)."""
        terms = {}
        for e, c in self.terms.items():
            if e[var] + k < 0:
                raise ValueError("negative exponent after shift")
            terms[e[:var] + (e[var] + k,) + e[var + 1:]] = c
        return MultiPoly._raw(terms, self.nvars)

    def divide_exact_monomial(self, var: int, k: int = 1) -> "MultiPoly":
        return self.shift(var, -k)

    def diff(self, var: int, times: int = 1) -> "MultiPoly":
        if times < 0:
            raise ValueError("derivative order must be non-negative")
        if times == 0:
            return self
        terms = {}
        for e, c in self.terms.items():
            k = e[var]
            if k < times:
                continue
            f = 1
            for r in range(times):
                f *= k - r
            terms[e[:var] + (k - times,) + e[var + 1:]] = c * f
        return MultiPoly._raw(terms, self.nvars)

    def substitute(self, var: int, value) -> "MultiPoly":
        """Replace z_var by a polynomial (or scalar) not involving z_var."""
        if not isinstance(value, MultiPoly):
            value = MultiPoly.const(value, self.nvars)
        self._check(value)
        if value.involves(var):
            raise ValueError(f"substituted value involves z{var}")
        parts = self.coeffs_in(var)
        if not parts:
            return self
        top = max(parts)
        result = MultiPoly.zero(self.nvars)
        for k in range(top, -1, -1):
            result = result * value
            if k in parts:
                result = result + parts[k]
        return result

    def evaluate(self, values) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for v, k in zip(values, e):
                if k:
                    t *= as_rational(v) ** k
            total += t
        return total

    # -- comparison / output ---------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, MultiPoly):
            return self.nvars == other.nvars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.is_constant() and self.constant_value() == other
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.nvars, frozenset(self.terms.items())))
        return self._hash

    def sorted_terms(self):
        """Terms in graded-lexicographic order, highest first."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = " ".join(f"z{i}^{k}" for i, k in enumerate(e) if k)
            parts.append(f"{fmt_rational(c)} * {mono}" if mono else fmt_rational(c))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"MultiPoly({self})"


def e_product(N: int, x: int, y: int, nvars: int) -> MultiPoly:
    """prod_{r=0}^{N} (r*z_x + (N-r)*z_y), expanded."""
    if N < 2:
        raise ValueError("e_product needs N >= 2")
    if x == y:
        raise ValueError("e_product needs two distinct variables")
    result = MultiPoly.const(1, nvars)
    for r in range(N + 1):
        coeffs = [0] * nvars
        coeffs[x] += r
        coeffs[y] += N - r
        result = result * MultiPoly.linear(coeffs, nvars)
    return result


# ---------------------------------------------------------------------------
# rational functions


def _normalize_factor(g: MultiPoly) -> Tuple[Fraction, MultiPoly]:
    """Return (c, h) with g == c*h and the lex-leading coefficient of h equal to 1."""
    _, lc = g.leading()
    if lc == 1:
        return Fraction(1), g
    return lc, g.scale(1 / lc)


class RatFunc:
    """numerator / prod(factor**mult) with a factored, normalized denominator.

    Normal form: every factor is non-constant with leading coefficient 1,
    factors are distinct, single-variable monomial factors are split into
    powers of one variable and cancelled against the numerator as far as
    possible.
    """

    __slots__ = ("num", "den", "nvars")

    def __init__(self, num: MultiPoly, den: Iterable[Tuple[MultiPoly, int]] = ()):
        self.nvars = num.nvars
        scale = Fraction(1)
        merged: Dict[MultiPoly, int] = {}
        for g, m in den:
            if m == 0:
                continue
            if m < 0:
                raise ValueError("denominator multiplicities must be positive")
            if g.nvars != self.nvars:
                raise ArityError("denominator arity mismatch")
            if g.is_zero():
                raise ZeroDivisionError("zero factor in denominator")
            if g.is_constant():
                scale *= g.constant_value() ** m
                continue
            if len(g.terms) == 1:
                (e, c), = g.terms.items()
                scale *= c ** m
                for i, k in enumerate(e):
                    if k:
                        v = MultiPoly.var(i, self.nvars)
                        merged[v] = merged.get(v, 0) + k * m
                continue
            c, h = _normalize_factor(g)
            scale *= c ** m
            merged[h] = merged.get(h, 0) + m
        if scale != 1:
            num = num.scale(1 / scale)
        if num.is_zero():
            merged = {}
        else:
            for g in list(merged):
                if len(g.terms) == 1:
                    (e,) = g.terms
                    var = e.index(1)
                    k = min(num.min_degree_in(var), merged[g])
                    if k:
                        num = num.shift(var, -k)
                        merged[g] -= k
                        if not merged[g]:
                            del merged[g]
        self.num = num
        self.den: Tuple[Tuple[MultiPoly, int], ...] = tuple(
            sorted(merged.items(), key=lambda gm: str(gm[0]))
        )

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "RatFunc":
        return cls(p, ())

    @classmethod
    def const(cls, c, nvars: int) -> "RatFunc":
        return cls(MultiPoly.const(c, nvars))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return not self.den

    def is_constant(self) -> bool:
        return not self.den and self.num.is_constant()

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"rational function is not constant: {self}")
        return self.num.constant_value()

    def involves(self, var: int) -> bool:
        return self.num.involves(var) or any(g.involves(var) for g, _ in self.den)

    def variables(self) -> set:
        out = self.num.variables()
        for g, _ in self.den:
            out |= g.variables()
        return out

    def denominator_poly(self) -> MultiPoly:
        out = MultiPoly.const(1, self.nvars)
        for g, m in self.den:
            out = out * g ** m
        return out

    def _lift(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.nvars != self.nvars:
                raise ArityError("arity mismatch")
            return other
        if isinstance(other, MultiPoly):
            return RatFunc(other)
        return RatFunc.const(other, self.nvars)

    def __mul__(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num.scale(other), self.den)
        other = self._lift(other)
        return RatFunc(self.num * other.num, self.den + other.den)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "RatFunc":
        if isinstance(other, (int, Fraction)):
            return RatFunc(self.num.scale(1 / as_rational(other)), self.den)
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RatFunc(self.num * _expand(other.den, self.nvars), self.den + ((other.num, 1),))

    def __pow__(self, n: int) -> "RatFunc":
        if n >= 0:
            return RatFunc(self.num ** n, tuple((g, m * n) for g, m in self.den))
        return RatFunc.const(1, self.nvars) / (self ** (-n))

    def __neg__(self) -> "RatFunc":
        return RatFunc(-self.num, self.den)

    def __add__(self, other) -> "RatFunc":
        other = self._lift(other)
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        a = dict(self.den)
        b = dict(other.den)
        common = {g: max(a.get(g, 0), b.get(g, 0)) for g in set(a) | set(b)}
        na = self.num * _expand(((g, common[g] - a.get(g, 0)) for g in common), self.nvars)
        nb = other.num * _expand(((g, common[g] - b.get(g, 0)) for g in common), self.nvars)
        return RatFunc(na + nb, tuple(common.items()))

    __radd__ = __add__

    def __sub__(self, other) -> "RatFunc":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RatFunc":
        return self._lift(other) - self

    def equals(self, other) -> bool:
        """Semantic equality by cross-multiplication."""
        other = self._lift(other)
        return (self.num * other.denominator_poly()) == (other.num * self.denominator_poly())

    def __eq__(self, other) -> bool:
        if isinstance(other, (RatFunc, MultiPoly, int, Fraction)):
            return self.equals(other)
        return NotImplemented

    __hash__ = None

    def diff(self, var: int, times: int = 1) -> "RatFunc":
        if times < 0:
            raise ValueError("derivative order must be non-negative")
        f = self
        for _ in range(times):
            f = f._diff1(var)
        return f

    def _diff1(self, var: int) -> "RatFunc":
        moving = [(g, m) for g, m in self.den if g.involves(var)]
        if not moving:
            return RatFunc(self.num.diff(var), self.den)
        # d(n / prod g^m) = (n' prod g - n sum m g' prod_{other} g) / (prod g^m * prod g)
        prod_all = _expand(((g, 1) for g, _ in moving), self.nvars)
        new_num = self.num.diff(var) * prod_all
        for k, (g, m) in enumerate(moving):
            rest = _expand(((h, 1) for i, (h, _) in enumerate(moving) if i != k), self.nvars)
            new_num = new_num - self.num * g.diff(var).scale(m) * rest
        den = [(g, m + 1) if g.involves(var) else (g, m) for g, m in self.den]
        return RatFunc(new_num, den)

    def substitute(self, var: int, value) -> "RatFunc":
        """Replace z_var by a polynomial or rational function free of z_var."""
        if isinstance(value, MultiPoly) or not isinstance(value, RatFunc):
            value = RatFunc(value if isinstance(value, MultiPoly) else MultiPoly.const(value, self.nvars))
        if value.nvars != self.nvars:
            raise ArityError("arity mismatch")
        if value.involves(var):
            raise ValueError(f"substituted value involves z{var}")
        if value.is_polynomial():
            p = value.num
            num = self.num.substitute(var, p)
            den = []
            for g, m in self.den:
                h = g.substitute(var, p) if g.involves(var) else g
                if h.is_zero():
                    raise ZeroDivisionError(f"denominator factor {g} vanishes after substitution")
                den.append((h, m))
            return RatFunc(num, den)
        p, qden = value.num, value.den
        # f(p/q) = F(p,q)/q^deg for each polynomial piece, q kept factored
        num, dnum = _homogenize_sub(self.num, var, p, qden, self.nvars)
        den = []
        qpow = -dnum
        for g, m in self.den:
            if not g.involves(var):
                den.append((g, m))
                continue
            h, dg = _homogenize_sub(g, var, p, qden, self.nvars)
            if h.is_zero():
                raise ZeroDivisionError(f"denominator factor {g} vanishes after substitution")
            den.append((h, m))
            qpow += dg * m
        if qpow > 0:
            num = num * _expand(((q, e * qpow) for q, e in qden), self.nvars)
        elif qpow < 0:
            den.extend((q, e * -qpow) for q, e in qden)
        return RatFunc(num, den)

    def __str__(self) -> str:
        if not self.den:
            return str(self.num)
        d = " * ".join(f"({g})^{m}" for g, m in self.den)
        return f"({self.num}) / ({d})"

    def __repr__(self) -> str:
        return f"RatFunc({self})"


def _expand(factors, nvars: int) -> MultiPoly:
    out = MultiPoly.const(1, nvars)
    for g, m in factors:
        if m:
            out = out * g ** m
    return out


def _homogenize_sub(poly: MultiPoly, var: int, p: MultiPoly, qden, nvars: int):
    """For poly(z_var = p/Q) with Q = prod(qden), return (P, D) with value P / Q^D."""
    q = _expand(qden, nvars)
    parts = poly.coeffs_in(var)
    D = max(parts)
    total = MultiPoly.zero(nvars)
    for k, c in parts.items():
        total = total + c * p ** k * q ** (D - k)
    return total, D


def taylor_coefficient(f: RatFunc, var: int, point: MultiPoly, order: int) -> RatFunc:
    """(1/order!) d^order f / d z_var^order evaluated at z_var = point."""
    g = f.diff(var, order)
    return g.substitute(var, point) * Fraction(1, factorial(order))
