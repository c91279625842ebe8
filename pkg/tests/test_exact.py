import itertools

import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from lambdaq.exact import (FieldError, Matrix, Mod, block_diag, field_make, in_span, kernel_basis,
                           mul_order, rref, solve)

PRIMES = [2, 3, 5, 7, 101]


def fields():
    return st.one_of(
        st.just(field_make("Q", "2")),
        st.sampled_from(PRIMES).map(lambda p: field_make(f"Fp:{p}", "1")),
    )


def elements(f):
    if f.is_prime:
        return st.integers(0, f.p - 1).map(f)
    return st.builds(mpq, st.integers(-10**6, 10**6), st.integers(1, 50)).map(f)


@st.composite
def field_and_elems(draw, n=3):
    f = draw(fields())
    return f, [draw(elements(f)) for _ in range(n)]


@st.composite
def field_and_matrix(draw, max_rows=5, max_cols=5):
    f = draw(fields())
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    rows = [[draw(elements(f)) for _ in range(c)] for _ in range(r)]
    return f, Matrix(f, rows)


# -- fields -----------------------------------------------------------------

def test_rationals_stay_reduced():
    f = field_make("Q", "2")
    x = f("6/4")
    assert x == mpq(3, 2)
    assert f.fmt(f("2/-4")) == "-1/2"
    assert f.fmt(f("-2/-4")) == "1/2"


def test_parse_literals():
    f = field_make("Q", "1/3")
    assert f.q == mpq(1, 3)
    assert f.parse(" -7 ") == -7
    with pytest.raises(FieldError):
        f.parse("1.5")
    with pytest.raises(FieldError):
        f.parse("1/0")


def test_prime_field_coercion():
    f = field_make("Fp:5", "2")
    assert f("1/2") == f(3)
    assert f(-1) == f(4)
    with pytest.raises(FieldError):
        f("1/5")
    with pytest.raises(FieldError):
        field_make("Fp:7", "1")(Mod(1, 5))


@pytest.mark.parametrize("desc,q", [("Fp:4", "1"), ("Fp:1", "1"), ("R", "1"), ("Q", "0"), ("Fp:5", "5")])
def test_bad_fields_rejected(desc, q):
    with pytest.raises(FieldError):
        field_make(desc, q)


@pytest.mark.parametrize("desc,q,order", [
    ("Q", "2", None), ("Q", "1", 1), ("Q", "-1", 2), ("Q", "1/3", None),
    ("Fp:5", "2", 4), ("Fp:3", "2", 2), ("Fp:2", "1", 1), ("Fp:7", "2", 3),
])
def test_mul_order(desc, q, order):
    assert mul_order(field_make(desc, q)).n == order


def test_division_by_zero():
    f = field_make("Fp:3", "1")
    with pytest.raises(ZeroDivisionError):
        f(1) / f(0)


@given(field_and_elems())
def test_field_axioms(fe):
    f, (a, b, c) = fe
    assert a + b == b + a and a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + f.zero == a and a * f.one == a
    assert a - a == f.zero
    if a != 0:
        assert a * (f.one / a) == f.one


# -- matrices ---------------------------------------------------------------

def test_kernel_over_f5():
    # x + 4y = 0 and 2x + 3y = 0 over F_5: (1, 1) spans the solutions
    f = field_make("Fp:5", "2")
    K = kernel_basis(Matrix(f, [[1, 4], [2, 3]]))
    assert K.shape == (2, 1)
    brute = [v for v in itertools.product(range(5), repeat=2)
             if (v[0] + 4 * v[1]) % 5 == 0 and (2 * v[0] + 3 * v[1]) % 5 == 0 and any(v)]
    assert [tuple(int(x) for x in K.col(0))] == [(1, 1)]
    assert all(v[0] == v[1] for v in brute)


def test_det_and_inverse():
    f = field_make("Q", "1")
    m = Matrix(f, [[2, 1], [7, 4]])
    assert m.det() == 1
    assert m @ m.inverse() == Matrix.identity(f, 2)
    with pytest.raises(ZeroDivisionError):
        Matrix(f, [[1, 2], [2, 4]]).inverse()


def test_ragged_rejected():
    with pytest.raises(ValueError):
        Matrix(field_make("Q", "1"), [[1, 2], [3]])


def test_block_diag_and_span():
    f = field_make("Q", "1")
    a, b = Matrix(f, [[1]]), Matrix(f, [[1, 1], [0, 1]])
    d = block_diag(f, [a, b])
    assert d.shape == (3, 3) and d.rank() == 3
    assert in_span(Matrix(f, [[1], [0]]), Matrix(f, [[5], [0]]))
    assert not in_span(Matrix(f, [[1], [0]]), Matrix(f, [[0], [1]]))


@given(field_and_matrix())
def test_rref_idempotent(fm):
    _, m = fm
    r, piv, rank = rref(m)
    r2, piv2, rank2 = rref(r)
    assert r2 == r and piv2 == piv and rank2 == rank


@given(field_and_matrix())
def test_rank_nullity(fm):
    _, m = fm
    K = m.kernel()
    assert m.rank() + K.ncols == m.ncols
    if K.ncols:
        assert (m @ K).is_zero()
        assert K.rank() == K.ncols


@given(field_and_matrix(), st.data())
def test_solve_consistent_systems(fm, data):
    f, m = fm
    x = Matrix(f, [[data.draw(elements(f))] for _ in range(m.ncols)])
    b = m @ x
    sol = solve(m, b)
    assert sol is not None and m @ sol == b


@given(field_and_matrix())
def test_transpose_preserves_rank(fm):
    _, m = fm
    assert m.T.rank() == m.rank()
