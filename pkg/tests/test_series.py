import json
from fractions import Fraction
from math import factorial

import pytest

from qmperiods.hypergeom import B_coeff_jet
from qmperiods.series import (
    PSeries,
    QSeries,
    XQSeries,
    W_series,
    corollary_series,
    gw_gen_function,
    hori_combination,
    i_function,
    invert_mirror_map,
    mirror_map,
    pf_operator_apply,
    to_json,
    virtual_gen_function,
    w_series,
)


def harmonic(n):
    return sum(Fraction(1, r) for r in range(1, n + 1))


def frobenius_oracle(N, j, dmax):
    """d^j/d eps^j of sum_d F_d(eps) e^{(d+eps)x} at eps = 0, coefficientwise:
    [x^m q^d] = j!/m! * [eps^{j-m}] F_d."""
    out = {}
    for d in range(dmax + 1):
        B = B_coeff_jet(N, d, j)
        for m in range(j + 1):
            out[(d, m)] = Fraction(factorial(j), factorial(m)) * B[j - m]
    return XQSeries(out, dmax)


def test_w_series_examples():
    assert w_series(5, 0, 2) == QSeries([1, 120, 113400])
    assert w_series(5, 1, 1) == QSeries([0, 770])
    for N in (3, 4, 5):
        for i in range(1, N - 1):
            assert w_series(N, i, 2)[0] == 0


def test_w_series_index_bounds():
    with pytest.raises(ValueError):
        w_series(5, 4, 2)


@pytest.mark.parametrize("N", [3, 4, 5, 6])
def test_W_series_matches_frobenius_oracle(N):
    for j in range(N - 1):
        assert W_series(N, j, 3) == frobenius_oracle(N, j, 3)


def test_W_series_shape():
    N, dmax = 5, 3
    assert W_series(N, 0, dmax) == XQSeries.from_q(w_series(N, 0, dmax))
    W1 = XQSeries.from_q(w_series(N, 0, dmax), 1) + XQSeries.from_q(w_series(N, 1, dmax))
    assert W_series(N, 1, dmax) == W1
    for j in range(N - 1):
        assert W_series(N, j, dmax)[0, j] == 1


def test_dx_rule():
    s = XQSeries({(2, 3): 1}, 4)
    assert s.dx() == XQSeries({(2, 3): 2, (2, 2): 3}, 4)
    assert s.times_q(3) == XQSeries({}, 4)


def test_pf_operator_examples():
    assert pf_operator_apply(3, XQSeries({(0, 0): 1}, 2)) == XQSeries({(1, 0): -6}, 2)
    N = 5
    for d in range(1, 4):
        top = XQSeries({(d, 0): 1}, d)
        f = top
        for _ in range(N - 1):
            f = f.dx()
        assert f == XQSeries({(d, 0): d ** (N - 1)}, d)


@pytest.mark.parametrize("N", [4, 5, 6])
def test_periods_solve_picard_fuchs(N):
    for j in range(N - 1):
        assert pf_operator_apply(N, W_series(N, j, 4)).is_zero()


def test_pf_operator_detects_non_solutions():
    assert not pf_operator_apply(5, XQSeries.from_q(w_series(5, 0, 3), 2)).is_zero()


def test_mirror_map_examples():
    assert mirror_map(5, 1) == QSeries([0, 770])
    # exact series division by hand: [q^2] (w1/w0) = B_1(5,2) - B_0(5,1) B_1(5,1)
    B1_52 = 113400 * (5 * harmonic(10) - 5 * harmonic(2))
    assert B1_52 == 810225
    assert mirror_map(5, 2)[2] == B1_52 - 120 * 770 == 717825
    assert mirror_map(6, 3)[0] == 0


def test_invert_mirror_map():
    assert invert_mirror_map(5, 1) == QSeries([0, 1])
    for N in (4, 5, 6):
        q = invert_mirror_map(N, 4)
        assert q[1] == 1
        f = mirror_map(N, 4)
        Q_of_q = QSeries.gen(4) * f.exp()  # Q = q exp(f(q))
        assert Q_of_q.compose(q) == QSeries.gen(4)
        assert q.compose(Q_of_q) == QSeries.gen(4)
    assert invert_mirror_map(5, 2)[2] == -770


def test_hori_examples():
    assert hori_combination(5, 1, 1) == 3850 == 5 * 770
    for N in (3, 4, 5):
        for d in (1, 2):
            assert hori_combination(N, d, 0) == N * B_coeff_jet(N, d, 0)[0]


@pytest.mark.parametrize("method", ["closed", "residue"])
@pytest.mark.parametrize("N", [3, 4, 5, 6])
def test_hori_over_N_is_B(method, N):
    for d in (1, 2, 3):
        B = B_coeff_jet(N, d)
        for j in range(N - 1):
            assert hori_combination(N, d, j, method) / N == B[j]


def test_hori_rejects_unknown_method():
    with pytest.raises(ValueError):
        hori_combination(5, 1, 1, "guess")


def test_virtual_gen_function():
    v = virtual_gen_function(5, 2, 0, 1)
    assert v == XQSeries({(0, 1): 5, (1, 0): 3850}, 1)
    with pytest.raises(ValueError):
        virtual_gen_function(5, 2, 1, 1)


@pytest.mark.parametrize("N", [5, 6])
def test_first_key_equality(N):
    v = virtual_gen_function(N, N - 3, 0, 3)
    assert v[0, 1] == N
    f = mirror_map(N, 3)
    for d in range(1, 4):
        assert v[d, 0] == N * f[d]


def test_gw_gen_function():
    for a, b in [(2, 0), (1, 1), (0, 2)]:
        g = gw_gen_function(5, a, b, 2)
        v = virtual_gen_function(5, a, b, 2)
        assert g[0, 1] == 5
        assert g[1, 0] == v[1, 0] - 5 * mirror_map(5, 2)[1]
    assert gw_gen_function(5, 2, 0, 3) == XQSeries({(0, 1): 5}, 3)


def test_i_function():
    I = i_function(5, 2)
    assert I[0][0, 0] == 1
    assert (I[1][1, 1], I[1][1, 0]) == (120, 770)
    with pytest.raises(IndexError):
        I[4]
    I4 = i_function(4, 0)
    assert [c.coeffs for c in I4.components] == [{(0, 0): 1}, {(0, 1): 1}, {(0, 2): Fraction(1, 2)}]


def test_pseries_truncates():
    one = XQSeries({(0, 0): 1}, 2)
    zero = XQSeries({}, 2)
    P = PSeries(4, [zero, one, zero])
    P2 = P * P
    assert P2[2] == one
    assert (P2 * P).components == [zero, zero, zero]


@pytest.mark.parametrize("N", [3, 4, 5])
def test_series_level_theorem(N):
    for j in range(N - 1):
        lhs = QSeries([1 if j == 0 else 0] + [hori_combination(N, d, j, "residue") / N for d in range(1, 4)])
        assert lhs == w_series(N, j, 3) * Fraction(1, factorial(j))


@pytest.mark.parametrize("N", [3, 4, 5])
def test_corollary_regrouping(N):
    for j in range(N - 1):
        assert corollary_series(N, j, 3) == W_series(N, j, 3).scale(Fraction(1, factorial(j)))


def test_json_format():
    data = json.loads(to_json(W_series(5, 1, 1)))
    assert data == {
        "dmax": 1,
        "terms": [
            {"d": 0, "m": 1, "coef": "1"},
            {"d": 1, "m": 0, "coef": "770"},
            {"d": 1, "m": 1, "coef": "120"},
        ],
    }
    assert json.loads(to_json(mirror_map(5, 2)))["terms"][1] == {"d": 2, "m": 0, "coef": "717825"}
