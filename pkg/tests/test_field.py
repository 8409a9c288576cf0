import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import digits, poly_mul_mod, undigits
from rankweights.errors import FieldMismatchError
from rankweights.field import ExtField, Field, is_irreducible, least_irreducible, linearized_eval, parse_field

SMALL = [2, 3, 4, 5, 7, 8, 9]


def test_f2_char_two():
    F = Field(2)
    assert F.add(1, 1) == 0


def test_f4_modulus_and_product():
    F = Field(4)
    assert F.modulus == (1, 1, 1)  # x^2 + x + 1
    # x = code 2, x + 1 = code 3
    assert F.mul(2, 3) == 1


@pytest.mark.parametrize("q", [4, 8, 9])
def test_multiplication_table_matches_polynomial_arithmetic(q):
    F = Field(q)
    for a, b in itertools.product(range(q), repeat=2):
        want = undigits(poly_mul_mod(digits(a, F.p, F.e), digits(b, F.p, F.e), list(F.modulus), F.p), F.p)
        assert F.mul(a, b) == want


@pytest.mark.parametrize("q", SMALL)
def test_field_axioms_exhaustive(q):
    F = Field(q)
    els = range(q)
    for a, b, c in itertools.product(els, repeat=3):
        assert F.mul(a, F.mul(b, c)) == F.mul(F.mul(a, b), c)
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    for a, b in itertools.product(els, repeat=2):
        assert F.mul(a, b) == F.mul(b, a)
        assert F.add(a, b) == F.add(b, a)
        assert F.sub(F.add(a, b), b) == a
    for a in els:
        assert F.pow(a, q) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1


def test_inverse_of_zero_raises():
    with pytest.raises(ZeroDivisionError):
        Field(5).inv(0)


def test_cross_field_elements_raise():
    with pytest.raises(FieldMismatchError):
        Field(2)(1) + Field(3)(1)


def test_rejects_non_prime_power():
    with pytest.raises(ValueError):
        Field(6)


def test_modulus_is_least_irreducible():
    F = Field(8)
    assert F.modulus == (1, 1, 0, 1)  # x^3 + x + 1
    assert Field(9).modulus == (1, 0, 1)  # x^2 + 1
    ring = Field(2)
    assert least_irreducible(ring, 3) == (1, 1, 0, 1)
    assert not is_irreducible(ring, (1, 0, 1))  # (x + 1)^2


@pytest.mark.parametrize("q,m", [(2, 2), (2, 3), (2, 4), (3, 2)])
def test_extension_frobenius_order(q, m):
    E = ExtField(Field(q), m)
    for a in range(1, E.order):
        assert E.frobenius(a, m) == a


def test_f8_frobenius_cube_is_identity():
    E = ExtField(Field(2), 3)
    assert all(E.pow(a, 8) == a for a in range(8))


@pytest.mark.parametrize("q,m", [(2, 3), (3, 2), (2, 4)])
def test_frobenius_is_base_linear(q, m):
    E = ExtField(Field(q), m)
    rng = np.random.default_rng(1)
    for _ in range(30):
        x, y = (int(v) for v in rng.integers(0, E.order, 2))
        a, b = (E.embed(int(v)) for v in rng.integers(0, q, 2))
        lhs = E.frobenius(E.add(E.mul(a, x), E.mul(b, y)))
        rhs = E.add(E.mul(a, E.frobenius(x)), E.mul(b, E.frobenius(y)))
        assert lhs == rhs


def test_coordinates_round_trip_and_basis_rank():
    E = ExtField(Field(2), 4).with_nested_basis(2)
    assert E.is_nested(2)
    for a in range(E.order):
        assert E.from_coords(E.to_coords(a)) == a
    with pytest.raises(ValueError):
        ExtField(Field(2), 2, basis=[1, 1])


def test_linearized_examples():
    E = ExtField(Field(2), 2)
    g = E.generator
    assert all(linearized_eval(E, [1], x) == x for x in range(4))
    assert linearized_eval(E, [0, 1], g) == E.mul(g, g)
    for x in (0, 1):
        assert linearized_eval(E, [1, 1], x) == 0


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 15), min_size=1, max_size=4), st.integers(0, 15), st.integers(0, 15), st.integers(0, 1), st.integers(0, 1))
def test_linearized_is_base_linear(coeffs, x, y, a, b):
    E = ExtField(Field(2), 4)
    lhs = linearized_eval(E, coeffs, E.add(E.mul(a, x), E.mul(b, y)))
    rhs = E.add(E.mul(a, linearized_eval(E, coeffs, x)), E.mul(b, linearized_eval(E, coeffs, y)))
    assert lhs == rhs


def test_parse_field_specs():
    assert parse_field("gf(7)").q == 7
    E = parse_field("gf(2^3)/basis=polynomial")
    assert E.order == 8 and E.basis == (1, 2, 4)
    assert parse_field("gf(2^2)/basis=1,3").basis == (1, 3)
    with pytest.raises(ValueError):
        parse_field("GF[2]")


def test_vectorised_ops_match_scalar():
    F = Field(9)
    rng = np.random.default_rng(0)
    a, b = F.random(rng, (5, 5)), F.random(rng, (5, 5))
    assert F.vadd(a, b).tolist() == [[F.add(x, y) for x, y in zip(r, s)] for r, s in zip(a.tolist(), b.tolist())]
    assert F.vmul(a, b).tolist() == [[F.mul(x, y) for x, y in zip(r, s)] for r, s in zip(a.tolist(), b.tolist())]
