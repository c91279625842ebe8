import itertools
from fractions import Fraction

import pytest

from lambdaq.algebra import (AlgebraError, algebra_lambda, algebra_opposite, algebra_quotient_rad2,
                             radical_series, regular_module, socle)
from lambdaq.exact import Matrix, field_make

import oracle

CONFIGS = [("Q", "2"), ("Q", "1"), ("Q", "-1"), ("Q", "1/3"), ("Fp:5", "2"), ("Fp:3", "2"), ("Fp:2", "1")]


@pytest.fixture(params=CONFIGS, ids=lambda c: f"{c[0]}-q{c[1]}")
def lam(request):
    return algebra_lambda(field_make(*request.param))


def word(A, w):
    v = A.basis_vector(0)
    for ch in w:
        v = A.mul(v, A.basis_vector(A.index(ch)))
    return v


def test_defining_relations(lam):
    A, q = lam, lam.field.q
    zero = [A.field.zero] * 6
    for w in ("xx", "yy", "zz", "yz"):
        assert word(A, w) == zero
    assert [a + q * b for a, b in zip(word(A, "xy"), word(A, "yx"))] == zero
    assert [a - b for a, b in zip(word(A, "xz"), word(A, "zx"))] == zero
    assert [a - b for a, b in zip(word(A, "zy"), word(A, "zx"))] == zero


def test_length_three_products_vanish(lam):
    zero = [lam.field.zero] * 6
    for w in itertools.product("xyz", repeat=3):
        assert word(lam, "".join(w)) == zero


def test_table_matches_word_rewriting():
    f = field_make("Q", "2")
    A = algebra_lambda(f)
    for i, j in itertools.product(range(6), repeat=2):
        expect = oracle.mul(oracle.unit(i), oracle.unit(j), Fraction(2))
        assert A.structure_constant(i, j) == [f(f"{c.numerator}/{c.denominator}") for c in expect]


def test_associativity_on_all_triples(lam):
    basis = [lam.basis_vector(i) for i in range(6)]
    for a, b, c in itertools.product(basis, repeat=3):
        assert lam.mul(lam.mul(a, b), c) == lam.mul(a, lam.mul(b, c))


def test_radical_series_and_socle(lam):
    rep = radical_series(lam)
    assert rep.dims == [6, 5, 2, 0]
    assert rep.length == 3
    for side in ("left", "right"):
        soc = socle(lam, side)
        assert soc.ncols == 2
        assert Matrix.from_columns(lam.field, [lam.basis_vector(4), lam.basis_vector(5)], 6).hstack(soc).rank() == 2


def test_rank_of_yx_operator():
    # yx * b is nonzero only for b = 1, so left multiplication by yx has rank 1
    A = algebra_lambda(field_make("Q", "2"))
    assert A.left[A.index("yx")].rank() == 1
    assert A.generators() == [1, 2, 3]


def test_opposite_is_involutive(lam):
    op = algebra_opposite(lam)
    assert op != lam
    assert algebra_opposite(op) == lam
    x, y = op.basis_vector(1), op.basis_vector(2)
    assert op.mul(x, y) == lam.mul(y, x)


def test_quotient_by_radical_square(lam):
    bar = algebra_quotient_rad2(lam)
    assert bar.dim == 4
    rad = bar.radical_basis()
    for i, j in itertools.product(range(4), repeat=2):
        if i and j:
            assert all(v == 0 for v in bar.structure_constant(i, j))
    assert rad.ncols == 3


def test_regular_module_sides(lam):
    assert regular_module(lam).dim == 6
    assert regular_module(lam, "right").algebra == algebra_opposite(lam)
    with pytest.raises(ValueError):
        regular_module(lam, "middle")


def test_q_zero_is_rejected():
    from lambdaq.exact import Field
    with pytest.raises(AlgebraError):
        algebra_lambda(Field("Q", 0, 0))
