import json
from fractions import Fraction
from math import factorial

import pytest

from qmperiods.exact import Jet, jet_pow
from qmperiods.hypergeom import (
    A_coeff,
    B_coeff_conv,
    B_coeff_jet,
    CoeffTable,
    a_coeff,
    check_positive,
    w_closed_form,
)


def harmonic(n):
    return sum(Fraction(1, r) for r in range(1, n + 1))


def test_a_coeff_examples():
    assert [a_coeff(2, 1, i) for i in range(3)] == [2, 6, 4]
    assert a_coeff(5, 1, 0) == 120
    for N in range(2, 7):
        for l in range(1, 4):
            assert a_coeff(N, l, N + 1) == 0 and a_coeff(N, l, N + 3) == 0


def test_A_coeff_examples():
    assert A_coeff(2, 1, 0) == 2
    for N in range(3, 6):
        for l in range(1, 4):
            assert A_coeff(N, l, 0) == a_coeff(N, l, 0) / Fraction(l) ** N


@pytest.mark.parametrize("N", [2, 3, 4, 5])
@pytest.mark.parametrize("l", [1, 2, 3])
def test_A_coeff_is_product_of_block_jets(N, l):
    order = 4
    F = Jet.constant(1, order)
    for r in range(1, N + 1):
        F = F * Jet.linear(N * (l - 1) + r, N, order)
    G = jet_pow(Jet.linear(l, 1, order), -N)
    assert list(F * G) == [A_coeff(N, l, k) for k in range(order + 1)]


def test_B_spot_values():
    assert B_coeff_jet(5, 1, 1) == [120, 770]
    assert B_coeff_jet(5, 2, 0) == [113400]
    assert B_coeff_jet(5, 0, 3) == [1, 0, 0, 0]
    # log-derivative oracle: B_1 = B_0 (N H_{Nd} - N H_d)
    for N in range(3, 7):
        for d in range(1, 4):
            B = B_coeff_jet(N, d, 1)
            assert B[0] == Fraction(factorial(N * d), factorial(d) ** N)
            assert B[1] == B[0] * (N * harmonic(N * d) - N * harmonic(d))


@pytest.mark.parametrize("N", range(3, 7))
@pytest.mark.parametrize("d", range(1, 5))
def test_jet_equals_convolution(N, d):
    assert B_coeff_jet(N, d) == B_coeff_conv(N, d)


def test_convolution_examples():
    assert B_coeff_conv(5, 1, 3) == [A_coeff(5, 1, r) for r in range(4)]
    assert B_coeff_conv(5, 2, 0) == [A_coeff(5, 1, 0) * A_coeff(5, 2, 0)] == [113400]


def test_closed_form_examples():
    assert w_closed_form(5, 1, 0) == 600
    assert w_closed_form(5, 1, 1) == 3250
    assert w_closed_form(5, 3, -1) == 0


@pytest.mark.parametrize("N", range(3, 7))
@pytest.mark.parametrize("d", range(1, 4))
def test_closed_form_telescopes(N, d):
    B = B_coeff_jet(N, d)
    for j in range(N - 1):
        lhs = Fraction(d, N) * w_closed_form(N, d, j) + Fraction(1, N) * w_closed_form(N, d, j - 1)
        assert lhs == B[j]


def test_positivity_is_only_logged(caplog):
    assert check_positive(3, 2)
    # B_3(5, 1) = -1150: a warning, not an error
    assert B_coeff_jet(5, 1, 3)[3] == -1150
    with caplog.at_level("WARNING"):
        assert not check_positive(5, 1)
    assert "non-positive" in caplog.text


def test_coeff_table_json():
    t = CoeffTable.build(5, 2)
    data = json.loads(t.to_json())
    assert data["B"][0] == "113400"
    assert data["a"]["1"][0] == "120"
    assert len(data["a"]["2"]) == 6
    assert all(isinstance(v, str) for v in data["A"]["2"])
