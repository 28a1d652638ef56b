"""Both sides of the auxiliary identities behind the main theorem.

Each ``*_sides`` function returns ``(lhs, rhs)`` computed by independent
routes, so callers only have to compare them.
"""
from __future__ import annotations

from fractions import Fraction

from .exact import binomial
from .hypergeom import A_coeff, a_coeff
from .multipoly import MultiPoly, RatFunc, e_product
from .residue import residue_at


def lemma1_sides(N: int, l: int):
    """e(x, y) against N x sum_{i=0}^{N} a_i^{(l)} l^i (x - (l-1)/l y)^i (y - x)^{N-i}."""
    x = MultiPoly.var(0, 2)
    y = MultiPoly.var(1, 2)
    lhs = e_product(N, 0, 1, 2)
    shifted = x - y * Fraction(l - 1, l)
    rhs = MultiPoly.zero(2)
    for i in range(N + 1):
        rhs = rhs + (shifted ** i * (y - x) ** (N - i)).scale(a_coeff(N, l, i) * l ** i)
    return lhs, (x * rhs).scale(N)


def lemma3_sides(N: int, l: int, alpha: int):
    """Residue at z_l = l/(l+1) z_{l+1}; variables (z_l, z_{l+1}, z_{l+2}) -> (0, 1, 2)."""
    n = 3
    z0, z1, z2 = (MultiPoly.var(i, n) for i in range(n))
    pole = z0 - z1 * Fraction(l, l + 1)
    integrand = RatFunc(
        (z1 - z0) ** alpha * e_product(N, 0, 1, n),
        [(pole, alpha + 1), (z0 * N, 1), (z1 * 2 - z0 - z2, 1)],
    )
    lhs = residue_at(integrand, 0, z1 * Fraction(l, l + 1))

    pole_next = z1 - z2 * Fraction(l + 1, l + 2)
    rhs = RatFunc(MultiPoly.zero(n))
    for s in range(alpha + 1):
        c = (l + 2) ** s * A_coeff(N, l + 1, s)
        rhs = rhs + RatFunc(((z2 - z1) ** (alpha - s)).scale(c), [(pole_next, alpha - s + 1)])
    rhs = rhs * RatFunc(z1 ** N) * Fraction(l + 1, l + 2) ** (alpha + 1)
    return lhs, rhs


def lemma4_sides(N: int, d: int, alpha: int):
    """Residue at z_{d-1} = (d-1)/d z_d; variables (z_{d-1}, z_d) -> (0, 1)."""
    n = 2
    z0, z1 = MultiPoly.var(0, n), MultiPoly.var(1, n)
    pole = z0 - z1 * Fraction(d - 1, d)
    integrand = RatFunc(
        (z1 - z0) ** alpha * e_product(N, 0, 1, n),
        [(pole, alpha + 1), (z0 * N, 1)],
    )
    lhs = residue_at(integrand, 0, z1 * Fraction(d - 1, d))
    c = sum(A_coeff(N, d, k) * Fraction(-d) ** (k - alpha) for k in range(alpha + 1))
    rhs = RatFunc((z1 ** N).scale(c * d ** alpha))
    return lhs, rhs


def chu_vandermonde_sides(N: int, alpha: int, s: int, t: int):
    """sum_u C(N+alpha-t, u) C(-s-1, alpha-s-t-u) against C(N+alpha-s-t-1, alpha-s-t)."""
    top = alpha - s - t
    lhs = sum(binomial(N + alpha - t, u) * binomial(-s - 1, top - u) for u in range(top + 1))
    return lhs, binomial(N + alpha - s - t - 1, top)


def sign_binomial_sides(alpha: int, s: int, t: int, u: int):
    """(-1)^k C(alpha-t-u, k) against C(-s-1, k) with k = alpha-s-t-u."""
    k = alpha - s - t - u
    return (-1) ** k * binomial(alpha - t - u, k), binomial(-s - 1, k)


def pascal_sum_sides(N: int, a: int):
    """C(N+a, N) against sum_{l=0}^{a} C(N+l-1, N-1)."""
    return binomial(N + a, N), sum(binomial(N + l - 1, N - 1) for l in range(a + 1))
