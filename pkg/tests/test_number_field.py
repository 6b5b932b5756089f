import random

import pytest
import sympy

from nfcover.errors import FieldMismatchError
from nfcover.number_field import (
    check_ring_axioms, elem_add, elem_mul, elem_neg, elem_pow, make_field_from_table,
    make_quadratic_field, make_rationals,
)

from conftest import FIELDS


def symbolic(F, a):
    """Embed a quadratic-field element as a sympy algebraic number."""
    if F.degree == 1:
        return sympy.Integer(a[0])
    (b, c) = F.mult_table[1][1]
    d = 4 * b + 1 if c == 1 else b
    w = (1 + sympy.sqrt(d)) / 2 if c == 1 else sympy.sqrt(d)
    return a[0] + a[1] * w


def test_rationals():
    Q = make_rationals()
    assert Q.degree == 1
    assert Q.mult_table == (((1,),),)
    assert elem_mul(Q, (3,), (4,)) == (12,)
    assert elem_add(Q, (5,), (-5,)) == (0,)


@pytest.mark.parametrize("d, w_squared", [(-1, (-1, 0)), (-3, (-1, 1)), (2, (2, 0)),
                                          (5, (1, 1)), (-5, (-5, 0)), (3, (3, 0))])
def test_quadratic_tables(d, w_squared):
    F = make_quadratic_field(d)
    assert F.mult_table[1][1] == w_squared
    check_ring_axioms(F)


def test_w_squared_symbolic_oracle():
    # ((1 + sqrt(-3))/2)^2 expanded by sympy, then rewritten as -1 + w
    w = (1 + sympy.sqrt(-3)) / 2
    assert sympy.simplify(w ** 2 - (-1 + w)) == 0


@pytest.mark.parametrize("d", [0, 1, 4, -4, 12, -8, 18])
def test_quadratic_rejects_bad_d(d):
    with pytest.raises(ValueError):
        make_quadratic_field(d)


def test_examples():
    G = make_quadratic_field(-1)
    assert elem_mul(G, (1, 1), (1, -1)) == (2, 0)
    R2 = make_quadratic_field(2)
    assert elem_mul(R2, (1, 1), (1, -1)) == (-1, 0)
    for F in FIELDS.values():
        a = tuple(range(3, 3 + F.degree))
        assert elem_mul(F, a, F.one()) == a


def test_dimension_mismatch():
    G = make_quadratic_field(-1)
    with pytest.raises(FieldMismatchError):
        elem_add(G, (1,), (1, 2))
    with pytest.raises(FieldMismatchError):
        elem_mul(G, (1, 2, 3), (1, 2))


@pytest.mark.parametrize("name", [n for n in FIELDS if n != "Q"])
def test_mul_matches_symbolic_expansion(name):
    F = FIELDS[name]
    rng = random.Random(name)
    for _ in range(100):
        a = (rng.randint(-20, 20), rng.randint(-20, 20))
        b = (rng.randint(-20, 20), rng.randint(-20, 20))
        lhs = symbolic(F, elem_mul(F, a, b))
        assert sympy.expand(lhs - symbolic(F, a) * symbolic(F, b)) == 0


def test_distributivity(F):
    rng = random.Random(17)
    n = F.degree
    for _ in range(1000):
        a, b, c = (tuple(rng.randint(-50, 50) for _ in range(n)) for _ in range(3))
        assert elem_mul(F, a, elem_add(F, b, c)) == elem_add(F, elem_mul(F, a, b), elem_mul(F, a, c))


def test_rationals_agree_with_int():
    Q = make_rationals()
    rng = random.Random(3)
    for _ in range(1000):
        x, y = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        assert elem_mul(Q, (x,), (y,)) == (x * y,)
        assert elem_add(Q, (x,), (y,)) == (x + y,)
        assert elem_neg(Q, (x,)) == (-x,)


def test_pow():
    G = make_quadratic_field(-1)
    assert elem_pow(G, (0, 1), 4) == (1, 0)
    assert elem_pow(G, (1, 1), 2) == (0, 2)


def test_table_field_validation():
    cubic = [[(1, 0, 0), (0, 1, 0), (0, 0, 1)],
             [(0, 1, 0), (0, 0, 1), (2, 0, 0)],
             [(0, 0, 1), (2, 0, 0), (0, 2, 0)]]
    F = make_field_from_table(["1", "t", "t^2"], cubic)
    assert elem_pow(F, (0, 1, 0), 3) == (2, 0, 0)
    bad = [[(1, 0), (0, 1)], [(1, 0), (3, 0)]]
    with pytest.raises(ValueError):
        make_field_from_table(["1", "w"], bad)
