from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from lambdaq import family as fa
from lambdaq import modules as mo
from lambdaq.exact import field_make

import oracle

Q2 = field_make("Q", "2")
F5 = field_make("Fp:5", "2")


def P(f, *abc):
    return fa.point_make(f, *abc)


rationals = st.builds(Fraction, st.integers(-999, 999), st.integers(1, 30))
nonzero = st.builds(Fraction, st.integers(1, 999) | st.integers(-999, -1), st.integers(1, 30))


def qf(x):
    return Q2(f"{x.numerator}/{x.denominator}")


# -- points -------------------------------------------------------------------

def test_normalization_and_parsing():
    p = fa.parse_point(Q2, "2:-4:2/3")
    assert p == P(Q2, 1, -2, Q2("1/3"))
    assert str(p) == "(1:-2:1/3)"
    assert fa.parse_point(Q2, "0,3,6") == P(Q2, 0, 1, 2)
    assert not P(Q2, 0, 1, 0).affine


@pytest.mark.parametrize("text", ["0,0,0", "1,2", "1,x,2", "1,2,3,4"])
def test_bad_points(text):
    with pytest.raises(ValueError):
        fa.parse_point(Q2, text)


def test_omega_undefined_cases():
    assert fa.omega_triple(Q2, 1, -1, 5) is None
    assert fa.omega_prime_triple(Q2, 0, 1, 1) is None


def test_two_omega_steps_from_1_1_2():
    # q = 2: (1,1,2) -> (1,2,-1) -> (1,4,1/3), checked with plain fractions
    t1 = oracle.omega_rational(1, 1, 2, 2)
    t2 = oracle.omega_rational(*t1, 2)
    assert t1 == (1, 2, -1) and t2 == (1, 4, Fraction(1, 3))
    p1 = fa.omega_point(P(Q2, 1, 1, 2))
    p2 = fa.omega_point(p1)
    assert p1 == P(Q2, 1, 2, -1) and p2 == P(Q2, 1, 4, Q2("1/3"))


@given(nonzero, rationals, rationals)
def test_omega_round_trip_rational(a, b, c):
    assume(a + b != 0)
    t = fa.omega_triple(Q2, qf(a), qf(b), qf(c))
    back = fa.omega_prime_triple(Q2, *t)
    assert back == (qf(a), qf(b), qf(c))


@given(nonzero, rationals, rationals)
def test_omega_prime_round_trip_rational(a, b, c):
    assume(a + b / 2 != 0)
    t = fa.omega_prime_triple(Q2, qf(a), qf(b), qf(c))
    assert fa.omega_triple(Q2, *t) == (qf(a), qf(b), qf(c))


@given(st.integers(1, 4), st.integers(0, 4), st.integers(0, 4))
def test_omega_round_trip_f5(a, b, c):
    p = P(F5, a, b, c)
    w = fa.omega_point(p)
    if w is not None:
        assert fa.omega_prime_point(w) == p


# -- powers of q ----------------------------------------------------------------

@given(st.sampled_from(["2", "1/3", "-3/2", "7"]), st.integers(-40, 40))
def test_power_exponent_recovers_exponent(q, i):
    f = field_make("Q", q)
    assert fa.power_exponent(f, f.q ** i) == (i, None)
    assert fa.power_exponent(f, -(f.q ** i)) is None or f.q < 0


def test_power_exponent_finite_order():
    assert oracle.powers_mod(2, 5) == {1, 2, 3, 4}
    for x in range(1, 5):
        i, n = fa.power_exponent(F5, x)
        assert n == 4 and pow(2, i, 5) == x
    assert fa.power_exponent(field_make("Q", "-1"), -1) == (1, 2)
    assert fa.power_exponent(Q2, 3) is None
    assert fa.power_exponent(Q2, 0) is None


def test_neg_power_ranges():
    assert fa.neg_power_in(Q2, -4, 1, 2)
    assert not fa.neg_power_in(Q2, -8, 1, 2)
    assert fa.neg_power_in(Q2, Q2("-1/2"), None, 0)
    assert not fa.neg_power_in(Q2, 4, None, None)
    # over F_5 every nonzero -b is a power of 2, and every residue class meets any window
    assert fa.neg_power_in(F5, 1, 1, 1) == (pow(2, 1, 5) == 4)


# -- classification ---------------------------------------------------------------

@pytest.mark.parametrize("side", ["left", "right"])
@pytest.mark.parametrize("abc", [(1, 1, 2), (1, -2, 0), (1, -4, 1), (1, -1, 0), (1, -1, 1),
                                 (1, Fraction(-1, 2), 0), (0, 1, 0), (0, 0, 1), (0, 1, 1)])
def test_closed_form_agrees_with_computation(abc, side):
    p = P(Q2, *(qf(Fraction(v)) for v in abc))
    closed = fa.classify_closed_form(p, side)
    comp = fa.classify_computational(p, side, depth=6)
    assert closed.mismatches(comp) == []


def test_gp_example_over_f5():
    # -b must avoid every power of 2 mod 5, which leaves only b = 0
    gp = [b for b in range(5) if (-b) % 5 not in oracle.powers_mod(2, 5)]
    assert gp == [0]
    for b in range(5):
        rep = fa.classify_closed_form(P(F5, 1, b, 1))
        assert rep.gorenstein_projective == (b in gp)


def test_pivotal_flags():
    rep = fa.classify_closed_form(P(Q2, 1, -2, 0))
    assert rep.pivotal_semi_gp and not rep.torsionless
    rep = fa.classify_closed_form(P(Q2, 1, -1, 0))
    assert rep.pivotal_inf_tf and not rep.extensionless


def test_right_special_branch():
    rep = fa.classify_closed_form(P(Q2, 1, -1, 1), "right")
    assert rep.semi_gp and not rep.inf_torsionfree
    rep = fa.classify_closed_form(P(field_make("Q", "1"), 1, -1, 1), "right")
    assert not rep.semi_gp


def test_right_extensionless_at_1_m1_0():
    p = P(Q2, 1, -1, 0)
    assert mo.ext1_dim(fa.module_M(p, "right")) == 1
    rep = fa.classify_closed_form(p, "right")
    assert rep.torsionless and not rep.extensionless


def test_category_names():
    assert fa.category(True, True) == "bullet"
    assert fa.category(False, True) == "black_square"
    assert fa.category(True, False) == "black_lozenge"
    assert fa.category(False, False) == "circle"


# -- descriptors ---------------------------------------------------------------------

@pytest.mark.parametrize("side,abc,case", [
    ("left", (1, 1, 2), 1), ("left", (1, -1, 1), 2), ("left", (1, -1, 0), 3),
    ("left", (0, 1, 0), 4), ("left", (0, 0, 1), 5),
    ("right", (1, 1, 2), 1), ("right", (0, 1, 1), 2), ("right", (0, 1, 0), 3), ("right", (0, 0, 1), 4),
])
def test_syzygy_cases_certified(side, abc, case):
    p = P(Q2, *abc)
    assert fa.syzygy_case(p, side) == case
    d = fa.syzygy_formula(p, side)
    om = mo.syzygy(fa.module_M(p, side))
    if d.kind == "decomposable":
        assert mo.is_direct_sum_of(om, fa.realize_parts(d)).value is True
    else:
        assert mo.is_isomorphic(om, fa.realize(d)).value is True


def test_dual_needs_affine_point():
    with pytest.raises(fa.FamilyError):
        fa.dual_formula(P(Q2, 0, 1, 0))


def test_dual_of_right_1_m1_0():
    p = P(Q2, 1, -1, 0)
    assert fa.dual_branch(p, "right") == 3
    assert mo.dual(fa.module_M(p, "right")).dim == 4


# -- chains ---------------------------------------------------------------------------

def _c_chain_ref(q, c1, n):
    out, c = [], Fraction(c1)
    for t in range(1, n + 1):
        out.append(c)
        c = -c / (1 - Fraction(q) ** t)
    return out


def _d_chain_ref(q, d0, n):
    out, d = [], Fraction(d0)
    for t in range(n):
        out.append(d)
        d = -(1 - Fraction(q) ** -(t + 1)) * d
    return out


def test_chain_coefficients_against_fractions():
    got = fa.chain_coefficients(Q2, 1, "c_chain", 6)
    assert [Fraction(int(v.numerator), int(v.denominator)) for v in got] == _c_chain_ref(2, 1, 6)
    got = fa.chain_coefficients(Q2, 1, "d_chain", 6)
    assert [Fraction(int(v.numerator), int(v.denominator)) for v in got] == _d_chain_ref(2, 1, 6)


def test_chains_follow_omega():
    # (1:-q:c_t) is sent by omega to (1:-q^{t+1}:c_{t+1})
    cs = fa.chain_coefficients(Q2, 1, "c_chain", 5)
    for t in range(1, 5):
        p = P(Q2, 1, -(Q2.q ** t), cs[t - 1])
        assert fa.omega_point(p) == P(Q2, 1, -(Q2.q ** (t + 1)), cs[t])
    ds = fa.chain_coefficients(Q2, 1, "d_chain", 5)
    for t in range(4):
        p = P(Q2, 1, -(Q2.q ** -t), ds[t])
        assert fa.omega_prime_point(p) == P(Q2, 1, -(Q2.q ** -(t + 1)), ds[t + 1])


def test_chain_errors():
    with pytest.raises(ZeroDivisionError):
        fa.chain_coefficients(field_make("Q", "1"), 1, "c_chain", 3)
    with pytest.raises(fa.FamilyError):
        fa.chain_coefficients(Q2, 1, "e_chain", 3)


# -- appendix ---------------------------------------------------------------------------

@pytest.mark.parametrize("abc,case", [((0, 0, 1), 1), ((0, 1, 0), 2), ((1, 0, 0), 3), ((1, 2, 0), 4),
                                      ((1, 0, 2), 5), ((0, 1, 2), 6), ((1, 2, 3), 7)])
def test_appendix_rows(abc, case):
    p = P(Q2, *abc)
    assert fa.appendix_case_expected(p) == case
    assert fa.appendix_case(fa.module_M(p)).case == case
