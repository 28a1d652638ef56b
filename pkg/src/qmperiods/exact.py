"""Exact scalars, binomial coefficients and epsilon-jets.

All arithmetic in the package is carried out over :class:`fractions.Fraction`.
A :class:`Jet` is a power series in a formal parameter ``eps`` truncated at a
fixed order; its coefficients are the normalized Taylor coefficients
``(1/i!) d^i/d eps^i f |_{eps=0}``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

Rational = Fraction


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact rational")


def fmt_rational(x) -> str:
    """Serialize as ``"p/q"`` in lowest terms, or ``"p"`` when q == 1."""
    x = as_rational(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def binomial(n: int, k: int) -> Fraction:
    """Generalized binomial coefficient n(n-1)...(n-k+1)/k! for any integer n."""
    if k < 0:
        raise ValueError(f"binomial: lower index must be non-negative, got {k}")
    num = 1
    den = 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return Fraction(num, den)


class SingularJetError(ZeroDivisionError):
    """Raised when inverting a jet whose constant term vanishes."""


class Jet:
    """Truncated power series c_0 + c_1 eps + ... + c_K eps^K.

    Binary operations between jets of different orders truncate to the
    smaller order.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, order: int | None = None):
        cs = [as_rational(c) for c in coeffs]
        if order is not None:
            if order < 0:
                raise ValueError("jet order must be non-negative")
            cs = (cs + [Fraction(0)] * (order + 1))[: order + 1]
        if not cs:
            raise ValueError("a jet needs at least one coefficient")
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    @classmethod
    def constant(cls, c, order: int) -> "Jet":
        return cls([c], order)

    @classmethod
    def linear(cls, c0, c1, order: int) -> "Jet":
        """The jet of c0 + c1*eps."""
        return cls([c0, c1], order)

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, Jet):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"Jet([{', '.join(fmt_rational(c) for c in self.coeffs)}])"

    def _coerce(self, other) -> "Jet":
        if isinstance(other, Jet):
            return other
        return Jet.constant(as_rational(other), self.order)

    def __add__(self, other) -> "Jet":
        other = self._coerce(other)
        k = min(self.order, other.order)
        return Jet([self.coeffs[i] + other.coeffs[i] for i in range(k + 1)])

    __radd__ = __add__

    def __neg__(self) -> "Jet":
        return Jet([-c for c in self.coeffs])

    def __sub__(self, other) -> "Jet":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Jet":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Jet":
        if not isinstance(other, Jet):
            c = as_rational(other)
            return Jet([c * a for a in self.coeffs])
        k = min(self.order, other.order)
        f, g = self.coeffs, other.coeffs
        out = []
        for i in range(k + 1):
            s = Fraction(0)
            for p in range(i + 1):
                if f[p] and g[i - p]:
                    s += f[p] * g[i - p]
            out.append(s)
        return Jet(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "Jet":
        if isinstance(other, Jet):
            return self * jet_inverse(other)
        return self * (1 / as_rational(other))

    def __pow__(self, n: int) -> "Jet":
        return jet_pow(self, n)


def jet_inverse(f: Jet) -> Jet:
    """Multiplicative inverse of a jet with nonzero constant term."""
    c0 = f.coeffs[0]
    if c0 == 0:
        raise SingularJetError("jet has zero constant term; no inverse")
    inv0 = 1 / c0
    g = [inv0]
    for i in range(1, f.order + 1):
        s = Fraction(0)
        for p in range(1, i + 1):
            s += f.coeffs[p] * g[i - p]
        g.append(-s * inv0)
    return Jet(g)


def jet_pow(f: Jet, n: int) -> Jet:
    """f**n by repeated squaring; negative n goes through :func:`jet_inverse`."""
    if n < 0:
        return jet_pow(jet_inverse(f), -n)
    result = Jet.constant(1, f.order)
    base = f
    while n:
        if n & 1:
            result = result * base
        n >>= 1
        if n:
            base = base * base
    return result


def jet_product(factors: Sequence[Jet], order: int) -> Jet:
    result = Jet.constant(1, order)
    for f in factors:
        result = result * f
    return result
