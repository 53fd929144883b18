from fractions import Fraction
from math import prod

import pytest

from bhkmld import b_symbol, certify, generate_extremal, liu_potential, mld_formula, sylvester, verify_identity
from bhkmld.examples import ExtremalExample, extremal_constants, identity_report, liu_weights
from bhkmld.quasismooth import check_quasismooth


def test_sylvester():
    assert [sylvester(k) for k in range(5)] == [2, 3, 7, 43, 1807]
    assert sylvester(5) == 3263443
    with pytest.raises(ValueError):
        sylvester(-1)


def test_sylvester_recurrence():
    for k in range(1, 9):
        assert sylvester(k) == prod(sylvester(i) for i in range(k)) + 1


def test_b_symbol():
    assert b_symbol([]) == 1
    assert b_symbol([2]) == 1
    assert b_symbol([5, 3]) == 11


@pytest.mark.parametrize("n,b,v,D,m,a", [
    (2, (2, 3, 5), 19, 22, 13, (11, 7, 3, 1)),
    (3, (2, 3, 5, 12), 165, 191, 311, (95, 61, 26, 8, 1)),
    (4, (2, 3, 7, 37, 893), 904149, 925594, 677785, (462797, 308531, 132129, 21445, 691, 1)),
])
def test_known_examples(n, b, v, D, m, a):
    ex = generate_extremal(n)
    assert (ex.b, ex.v, ex.D, ex.m) == (b, v, D, m)
    assert ex.weights.a == a and ex.weights.d == D
    assert ex.mld == Fraction(1, m)


def test_identity_arithmetic():
    assert 13 * 22 - 1 == 285 == 3 * 5 * 19
    assert 311 * 191 - 1 == 59400 == 2 * 3 * 5 * 12 * 165
    assert 677785 * 925594 - 1 == 3 * 7 * 37 * 893 * 904149


def test_identity_report_detects_errors():
    ok, _ = identity_report(3, [2, 3, 5, 12], 165, 191, 311)
    assert ok
    ok, msg = identity_report(3, [2, 3, 5, 12], 165, 191, 312)
    assert not ok and "diff" in msg
    bogus = ExtremalExample(2, (2, 3, 5), 19, 22, 14, None, None, Fraction(1, 14))
    assert not verify_identity(bogus)


@pytest.mark.parametrize("n", range(2, 9))
def test_extremal_invariants(n):
    ex = generate_extremal(n)
    assert verify_identity(ex)
    cert = certify(ex.potential)
    assert cert.ok and cert.quasismooth and check_quasismooth(cert.matrix).verdict
    assert cert.charges.d == ex.D and min(cert.charges.a) == 1
    if n % 2:
        assert mld_formula(cert.mirror, cert) == Fraction(1, ex.m)
    else:
        assert 2 * mld_formula(cert.mirror, cert) == Fraction(1, ex.m)
    if n >= 3:
        assert Fraction(1, ex.m) < Fraction(1, 2 ** (2 ** n))


def test_extremal_needs_n_at_least_two():
    with pytest.raises(ValueError):
        extremal_constants(1)


def test_n5_constants():
    b, v, D, m = extremal_constants(5)
    assert b == [2, 3, 7, 37, 893, 462798]
    assert (v, D, m) == (313677994504, 321117945875, 627355084859)


def test_liu_examples():
    p, mld = liu_potential(1)
    assert str(p) == "x0^2 + x1^3 + x2^6" and mld == Fraction(1, 6)
    assert liu_weights(2) == (42, (21, 14, 6, 1))
    assert liu_weights(3) == (1806, (903, 602, 258, 42, 1))
    assert liu_potential(3)[1] == Fraction(1, 1806)
    with pytest.raises(ValueError):
        liu_potential(0)


@pytest.mark.parametrize("n", range(1, 6))
def test_liu_formula(n):
    p, expected = liu_potential(n)
    cert = certify(p)
    d, weights = liu_weights(n)
    assert cert.charges.d == d and cert.charges.a == weights
    assert mld_formula(cert.mirror, cert) == expected
