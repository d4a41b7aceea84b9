import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from cdakit.errors import InvalidSymbol, NotAPrimePower
from cdakit.gf import GaloisField, eval_poly, eval_poly_vec, is_prime_power, make_field, prime_power

ORDERS = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16]


def schoolbook_mul(field, a, b):
    """Multiply labels as polynomials over GF(p) and reduce by the modulus."""
    p, m = field.p, field.m
    if m == 1:
        return a * b % p
    da = [(a // p**i) % p for i in range(m)]
    db = [(b // p**i) % p for i in range(m)]
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(da):
        for j, y in enumerate(db):
            prod[i + j] = (prod[i + j] + x * y) % p
    for deg in range(2 * m - 2, m - 1, -1):
        top = prod[deg]
        if top:
            for i, c in enumerate(field.modulus):
                prod[deg - m + i] = (prod[deg - m + i] - top * c) % p
            prod[deg] = 0
    return sum(c * p**i for i, c in enumerate(prod[:m]))


@pytest.mark.parametrize("q,expected", [(2, (2, 1)), (9, (3, 2)), (64, (2, 6)), (121, (11, 2)), (65536, (2, 16))])
def test_prime_power(q, expected):
    assert prime_power(q) == expected


@pytest.mark.parametrize("q", [0, 1, 6, 10, 12, 15, 36])
def test_not_prime_power(q):
    assert not is_prime_power(q)
    with pytest.raises(NotAPrimePower):
        make_field(q)


@pytest.mark.parametrize("q", ORDERS)
def test_field_axioms(q):
    f = make_field(q)
    add, mul = f.add_table, f.mul_table
    e = np.arange(q)
    assert (add[0] == e).all() and (mul[1] == e).all()
    assert (add == add.T).all() and (mul == mul.T).all()
    # every row of + is a permutation, every nonzero row of * as well
    assert all(sorted(row) == list(e) for row in add)
    assert all(sorted(row[1:]) == list(e[1:]) for row in mul[1:])
    # associativity and distributivity, exhaustively for small q
    a, b, c = np.meshgrid(e, e, e, indexing="ij")
    assert (add[add[a, b], c] == add[a, add[b, c]]).all()
    assert (mul[mul[a, b], c] == mul[a, mul[b, c]]).all()
    assert (mul[a, add[b, c]] == add[mul[a, b], mul[a, c]]).all()


@pytest.mark.parametrize("q", ORDERS)
def test_mul_matches_schoolbook(q):
    f = make_field(q)
    for a in range(q):
        for b in range(q):
            assert f.mul(a, b) == schoolbook_mul(f, a, b)


@pytest.mark.parametrize("q", ORDERS)
def test_inverses_and_pow(q):
    f = make_field(q)
    for a in range(1, q):
        assert f.mul(a, f.inv(a)) == 1
        assert f.add(a, f.neg(a)) == 0
        assert f.pow(a, q - 1) == 1
        assert f.div(f.mul(a, 3 % q or 1), a) == (3 % q or 1)
    assert f.pow(0, 0) == 1 and f.pow(0, 5) == 0
    with pytest.raises(ZeroDivisionError):
        f.inv(0)


def test_known_small_tables():
    gf4 = make_field(4)  # x^2 + x + 1; label 2 is x, 3 is x + 1
    assert gf4.mul(2, 2) == 3 and gf4.mul(2, 3) == 1 and gf4.mul(3, 3) == 2
    gf8 = make_field(8)  # x^3 + x + 1
    assert gf8.mul(2, 4) == 3 and gf8.mul(4, 4) == 6
    gf9 = make_field(9)  # x^2 + 2x + 2, so x^2 = x + 1
    assert gf9.mul(3, 3) == 4


@pytest.mark.parametrize("q", ORDERS)
def test_primitive_element_generates(q):
    f = make_field(q)
    g = f.primitive_element
    assert len({f.pow(g, n) for n in range(q - 1)}) == q - 1


def test_large_fields_construct():
    for q in (256, 243, 625, 1024, 4096, 65536):
        f = make_field(q)
        a = q - 1
        assert f.mul(a, f.inv(a)) == 1
    with pytest.raises(ValueError):
        make_field(65536).mul_table


def test_non_primitive_modulus_rejected():
    # x^4 + x^3 + x^2 + x + 1 is irreducible over GF(2) but x has order 5
    with pytest.raises(ValueError):
        GaloisField(2, 4, modulus=(1, 1, 1, 1))


def test_check_rejects_outsiders():
    f = make_field(5)
    with pytest.raises(InvalidSymbol):
        f.check(5)
    with pytest.raises(InvalidSymbol):
        eval_poly(f, [1, 7], 0)
    with pytest.raises(InvalidSymbol):
        eval_poly(f, [], 0)


@pytest.mark.parametrize("q", ORDERS)
@given(data=st.data())
def test_eval_poly_matches_power_sum(q, data):
    f = make_field(q)
    coeffs = data.draw(st.lists(st.integers(0, q - 1), min_size=1, max_size=5))
    x = data.draw(st.integers(0, q - 1))
    d = len(coeffs) - 1
    expected = 0
    for i, c in enumerate(coeffs):
        expected = f.add(expected, f.mul(c, f.pow(x, d - i)))
    assert eval_poly(f, coeffs, x) == expected


@pytest.mark.parametrize("q", [5, 8, 9])
def test_eval_poly_vec_matches_scalar(q):
    f = make_field(q)
    rng = np.random.default_rng(q)
    coeffs = rng.integers(0, q, size=(7, 3))
    points = np.arange(q)
    got = eval_poly_vec(f, coeffs, points)
    for i, row in enumerate(coeffs):
        for j, x in enumerate(points):
            assert got[i, j] == eval_poly(f, [int(c) for c in row], int(x))


def test_gf2_is_xor_and():
    f = make_field(2)
    for a in (0, 1):
        for b in (0, 1):
            assert f.add(a, b) == a ^ b and f.mul(a, b) == a & b


def test_gf4_characteristic_two_and_cyclic():
    f = make_field(4)
    assert all(f.add(x, x) == 0 for x in range(4))
    g = f.primitive_element
    assert {f.pow(g, n) for n in range(3)} == {1, 2, 3}


def test_eval_poly_worked_examples():
    assert eval_poly(make_field(7), [5], 3) == 5
    assert eval_poly(make_field(3), [1, 1], 2) == 0
    assert eval_poly(make_field(2), [1, 0, 1], 1) == 0
