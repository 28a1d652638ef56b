"""Iterated residues computing quasimap intersection numbers.

The integrand lives in variables z_0..z_d:

    z_0^a (z_1 - z_0)^j prod_{l=1}^{d} e(z_{l-1}, z_l) z_d^b
    -------------------------------------------------------------------
    prod_i z_i^N * prod_{l=1}^{d-1} N z_l (2 z_l - z_{l-1} - z_{l+1})

Residues are taken in the order z_0, z_1, ..., z_d.  z_0 and z_d only have
poles at 0; an interior z_i also has the pole where its factor
(2 z_i - z_{i-1} - z_{i+1}) vanishes, with z_{i-1} already replaced by the
value chosen on the current branch.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .multipoly import MultiPoly, RatFunc, e_product, taylor_coefficient


class PoleOrderError(ArithmeticError):
    pass


class IntegrandError(ValueError):
    pass


@dataclass(frozen=True)
class IntegrandSpec:
    N: int
    d: int
    a: int
    b: int
    j: int = 0

    def __post_init__(self):
        if self.N < 2:
            raise IntegrandError(f"N must be >= 2, got {self.N}")
        if self.d < 1:
            raise IntegrandError("d must be >= 1; the degree-0 term is the constant 1")
        if self.j < 0:
            raise IntegrandError(f"j must be >= 0, got {self.j}")
        if self.b < -1:
            raise IntegrandError(f"b must be >= -1, got {self.b}")

    @property
    def nvars(self) -> int:
        return self.d + 1

    def expected_degree(self) -> int:
        """Total degree of the (homogeneous) integrand."""
        N, d = self.N, self.d
        return self.a + self.b + self.j + (N + 1) * d - N * (d + 1) - 2 * (d - 1)

    def is_dimensional(self) -> bool:
        # d+1 residues extract the coefficient of total degree -(d+1)
        return self.expected_degree() == -(self.d + 1)


@dataclass(frozen=True)
class ResidueBranch:
    values: Tuple[Fraction, ...]  # lambda_i with z_i <- lambda_i * z_{i+1}
    current: RatFunc


def build_integrand(spec: IntegrandSpec) -> RatFunc:
    N, d, n = spec.N, spec.d, spec.nvars
    z = [MultiPoly.var(i, n) for i in range(n)]
    num = MultiPoly.const(1, n)
    den: List[Tuple[MultiPoly, int]] = [(zi, N) for zi in z]
    if spec.a >= 0:
        num = num * z[0] ** spec.a
    else:
        den.append((z[0], -spec.a))
    if spec.j:
        num = num * (z[1] - z[0]) ** spec.j
    for l in range(1, d + 1):
        e = e_product(N, l - 1, l, n)
        if l == d and spec.b == -1:
            # the r = 0 factor of e(z_{d-1}, z_d) is N z_d; the inserted 1/z_d cancels it
            if e.min_degree_in(d) < 1:
                raise IntegrandError("e(z_{d-1}, z_d) is not divisible by z_d")
            e = e.divide_exact_monomial(d)
        num = num * e
    if spec.b > 0:
        num = num * z[d] ** spec.b
    for l in range(1, d):
        den.append((z[l] * N, 1))
        den.append((z[l] * 2 - z[l - 1] - z[l + 1], 1))
    return RatFunc(num, den)


def residue_at(f: RatFunc, var: int, point, max_order: int | None = None) -> RatFunc:
    """Residue of f in z_var at z_var = point.

    point is a polynomial not involving z_var.  Every denominator factor that
    vanishes at the point must be linear in z_var.
    """
    n = f.nvars
    if not isinstance(point, MultiPoly):
        point = MultiPoly.const(point, n)
    if point.involves(var):
        raise ValueError(f"pole location involves z{var}")
    order = 0
    rest = []
    for g, m in f.den:
        if g.involves(var) and g.substitute(var, point).is_zero():
            if g.degree_in(var) != 1:
                raise PoleOrderError(f"factor {g} is not linear in z{var}")
            # g = alpha * (z_var - point)
            rest.append((g.coeffs_in(var)[1], m))
            order += m
        else:
            rest.append((g, m))
    if order == 0:
        return RatFunc(MultiPoly.zero(n))
    if max_order is not None and order > max_order:
        raise PoleOrderError(f"pole of order {order} in z{var} exceeds bound {max_order}")
    return taylor_coefficient(RatFunc(f.num, rest), var, point, order - 1)


def _midpoint(values: Tuple[Fraction, ...], i: int, n: int) -> MultiPoly:
    # 2 z_i - z_{i-1} - z_{i+1} with z_{i-1} <- lam z_i vanishes at z_i = z_{i+1} / (2 - lam)
    lam = values[i - 1]
    if lam == 2:
        raise IntegrandError("degenerate midpoint factor")
    return MultiPoly.var(i + 1, n, Fraction(1) / (2 - lam))


def iterated_residue(spec: IntegrandSpec, max_order: int | None = None) -> Fraction:
    if max_order is None:
        max_order = spec.N + spec.j + 2
    d, n = spec.d, spec.nvars
    f = build_integrand(spec)
    branches = [ResidueBranch((), f)]
    for i in range(d):
        new = []
        for br in branches:
            points = [(Fraction(0), MultiPoly.zero(n))]
            if 1 <= i <= d - 1:
                mid = _midpoint(br.values, i, n)
                points.append((mid.coeff(_unit(i + 1, n)), mid))
            for lam, p in points:
                r = residue_at(br.current, i, p, max_order)
                if not r.is_zero():
                    new.append(ResidueBranch(br.values + (lam,), r))
        branches = new
    total = Fraction(0)
    expected = spec.expected_degree() + d
    for br in branches:
        c, k = _monomial_in(br.current, d)
        if k != expected:
            raise IntegrandError(
                f"branch {br.values} has degree {k} in z{d}, expected {expected}"
            )
        if k == -1:
            value = residue_at(br.current, d, MultiPoly.zero(n), max_order)
            if not value.is_constant():
                raise IntegrandError(f"residue left free variables: {value}")
            total += value.constant_value()
            assert value.constant_value() == c
    return total


def _unit(i: int, n: int) -> tuple:
    e = [0] * n
    e[i] = 1
    return tuple(e)


def _monomial_in(f: RatFunc, var: int) -> Tuple[Fraction, int]:
    """Write f as c * z_var^k, or fail."""
    if f.variables() - {var}:
        raise IntegrandError(f"unexpected variables remain: {f}")
    if len(f.num.terms) != 1 or any(g != MultiPoly.var(var, f.nvars) for g, _ in f.den):
        raise IntegrandError(f"final expression is not homogeneous in z{var}: {f}")
    (e, c), = f.num.terms.items()
    return c, e[var] - sum(m for _, m in f.den)


def intersection_number(N: int, d: int, a: int, b: int, j: int = 0) -> Fraction:
    """w(sigma_j(O_{h^a}) O_{h^b})_{0,d} from the residue formula.

    Classes of the wrong total degree integrate to zero.
    """
    spec = IntegrandSpec(N, d, a, b, j)
    if not spec.is_dimensional():
        return Fraction(0)
    return iterated_residue(spec)


def w_residue(N: int, d: int, j: int) -> Fraction:
    """w_{j,d} = w(sigma_j(O_{h^{N-2-j}}) O_{h^{-1}})_{0,d}; zero for j = -1."""
    if j == -1:
        return Fraction(0)
    return intersection_number(N, d, N - 2 - j, -1, j)
