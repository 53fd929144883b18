from fractions import Fraction

import pytest
from hypothesis import given

from bhkmld import (certify, charges_and_weights, check_well_formed, group_orders, invert_matrix,
                    is_calabi_yau, mirror_data, mld_even_subquotient, mld_formula, parse_potential,
                    generate_extremal, liu_potential, sylvester)
from bhkmld.bhk import ChargeData, transpose_potential
from bhkmld.errors import ChargeError, PreconditionError
from bhkmld.exactlin import determinant, transpose

from conftest import DEG22_ROWS
from test_potential import delsarte_potentials

F = Fraction
QUINTIC = "x0^5 + x1^5 + x2^5 + x3^5 + x4^5"


def cd(a):
    return ChargeData.from_charges([F(x, sum(a)) for x in a])


def test_charges_degree22():
    c = charges_and_weights(invert_matrix(DEG22_ROWS))
    assert c.q == (F(1, 2), F(7, 22), F(3, 22), F(1, 22))
    assert (c.d, c.a) == (22, (11, 7, 3, 1))


def test_charges_quintic_and_n3():
    c = certify(parse_potential(QUINTIC)).charges
    assert c.q == (F(1, 5),) * 5 and c.d == 5 and c.a == (1,) * 5
    c3 = generate_extremal(3).weights
    assert (c3.d, c3.a) == (191, (95, 61, 26, 8, 1))


def test_mirror_degree22():
    m = mirror_data(invert_matrix(DEG22_ROWS))
    assert m.d == 26
    assert m.q == (F(1, 2), F(7, 26), F(5, 26), F(1, 26))
    assert sorted(m.a) == [1, 5, 7, 13]


def test_mirror_of_fermat_is_itself():
    cert = certify(parse_potential("x0^2 + x1^3 + x2^7 + x3^42"))
    assert (cert.mirror.q, cert.mirror.d, cert.mirror.a) == (cert.charges.q, cert.charges.d, cert.charges.a)


def test_mirror_n4_extremal_minimum():
    ex = generate_extremal(4)
    cert = certify(ex.potential)
    # the variety value is twice the smallest mirror charge
    assert 2 * min(cert.mirror.q) == F(1, 677785)
    assert min(cert.mirror.q) == F(1, 1355570)


def test_nonpositive_charge_is_reported():
    with pytest.raises(ChargeError):
        charges_and_weights(invert_matrix([[1, 3], [1, 1]]))


def test_calabi_yau():
    assert is_calabi_yau(cd((11, 7, 3, 1)))
    assert is_calabi_yau(cd((1, 1, 1, 1, 1)))
    assert not is_calabi_yau(ChargeData.from_charges([F(1, 2)] * 3))


def test_well_formed():
    assert check_well_formed(cd((11, 7, 3, 1)))
    assert check_well_formed(cd((1, 1, 1, 1, 1)))
    assert not check_well_formed(ChargeData((F(2, 5), F(2, 5), F(1, 5)), 5, (2, 2, 1)))


def test_mld_formula_examples():
    c22 = certify(parse_potential("x0^2 + x1^3*x3 + x1*x2^5 + x2*x3^19"))
    assert mld_formula(c22.mirror, c22) == F(1, 26)
    cq = certify(parse_potential(QUINTIC))
    assert mld_formula(cq.mirror, cq) == F(1, 5)
    c3 = certify(generate_extremal(3).potential)
    assert mld_formula(c3.mirror, c3) == F(1, 311)


def test_mld_formula_requires_certificate():
    c22 = certify(parse_potential("x0^2 + x1^3*x3 + x1*x2^5 + x2*x3^19"))
    with pytest.raises(PreconditionError):
        mld_formula(c22.mirror, None)
    bad = certify(parse_potential("x0^3"))
    with pytest.raises(PreconditionError):
        mld_formula(bad.mirror, bad)
    other = certify(parse_potential(QUINTIC))
    with pytest.raises(PreconditionError):
        mld_formula(other.mirror, c22)


def test_group_orders():
    c22 = certify(parse_potential("x0^2 + x1^3*x3 + x1*x2^5 + x2*x3^19"))
    g = group_orders(c22.matrix, c22.charges)
    assert (g.aut_f, g.j_f, g.aut_t) == (572, 22, 26)
    c3 = certify(generate_extremal(3).potential)
    assert group_orders(c3.matrix, c3.charges).aut_t == 311
    for n in range(1, 6):
        c = certify(liu_potential(n)[0])
        assert group_orders(c.matrix, c.charges).aut_t == sylvester(n + 1) - 1


def test_group_orders_rejects_inconsistent_degree():
    with pytest.raises(ValueError):
        group_orders(DEG22_ROWS, ChargeData.from_charges([F(1, 3)] * 4))


def test_even_subquotient():
    c22 = certify(parse_potential("x0^2 + x1^3*x3 + x1*x2^5 + x2*x3^19"))
    assert mld_even_subquotient(c22.mirror, c22) == F(1, 13)
    c4 = certify(generate_extremal(4).potential)
    assert mld_even_subquotient(c4.mirror, c4) == F(1, 677785)
    c3 = certify(generate_extremal(3).potential)
    with pytest.raises(PreconditionError):
        mld_even_subquotient(c3.mirror, c3)


def test_even_subquotient_non_cy_loop():
    cert = certify(parse_potential("x0^2 + x1^3*x2 + x2^3*x3 + x3^3*x1"))
    assert not cert.calabi_yau
    with pytest.raises(PreconditionError):
        mld_even_subquotient(cert.mirror, cert)


# --- properties ---------------------------------------------------------------

@given(delsarte_potentials())
def test_mirror_involution(p):
    cert = certify(p)
    dual = certify(transpose_potential(cert.matrix))
    assert (dual.mirror.q, dual.mirror.d) == (cert.charges.q, cert.charges.d)
    assert (dual.charges.q, dual.charges.d) == (cert.mirror.q, cert.mirror.d)


@given(delsarte_potentials())
def test_cy_charge_sums(p):
    cert = certify(p)
    if cert.calabi_yau:
        assert sum(cert.charges.q) == 1 and sum(cert.mirror.q) == 1
        g = group_orders(cert.matrix, cert.charges)
        assert g.aut_t * cert.charges.d == abs(determinant(cert.matrix))


@given(delsarte_potentials())
def test_fermat_formula_is_smallest_reciprocal(p):
    cert = certify(p)
    if cert.ok and all(a.kind == "fermat" for a in cert.atoms.atoms):
        assert mld_formula(cert.mirror, cert) == min(F(1, r[i]) for i, r in enumerate(cert.matrix))


def test_transpose_potential_matches_matrix():
    assert transpose_potential(DEG22_ROWS).rows == transpose(DEG22_ROWS)
