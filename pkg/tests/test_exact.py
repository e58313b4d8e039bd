import cmath
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toda.exact import (
    BranchCutError,
    ExactScalar,
    FirstOrderOp,
    Monomial,
    OriginError,
    ZExpr,
    compose,
    format_scalar,
    sqrt_fraction,
    NotASquareError,
)


def z(e=1):
    return ZExpr.z_pow(F(e))


def zb(e=1):
    return ZExpr.zbar_pow(F(e))


# -- scalars ------------------------------------------------------------


def test_scalar_field_ops():
    a = ExactScalar.of(F(1, 2), F(3, 4))
    b = ExactScalar.of(F(-2), F(1, 3))
    assert (a + b) - b == a
    assert (a * b) / b == a
    assert a * b == b * a
    assert a.conjugate().conjugate() == a
    assert (a * a.conjugate()).im == 0


def test_scalar_division_exact():
    a = ExactScalar.of(1, 1)
    assert a / a == ExactScalar.of(1)
    with pytest.raises(ZeroDivisionError):
        a / ExactScalar.of(0)


def test_scalar_format():
    assert format_scalar(ExactScalar.of(F(1, 2), F(3, 4))) == "1/2+3i/4"
    assert format_scalar(ExactScalar.of(0, -1)) == "-i"
    assert format_scalar(ExactScalar.of(2)) == "2"
    assert format_scalar(ExactScalar.of(0)) == "0"


def test_sqrt_fraction():
    assert sqrt_fraction(F(9, 4)) == F(3, 2)
    with pytest.raises(NotASquareError):
        sqrt_fraction(F(2))
    with pytest.raises(NotASquareError):
        sqrt_fraction(F(-1))


# -- expressions ---------------------------------------------------------


def test_add_cancellation():
    assert (z() + (-z())).is_zero


def test_add_mixed_terms():
    e = ZExpr.one() + z() * zb()
    assert len(e.terms) == 2


def test_add_like_terms_merge():
    half = ZExpr.monomial(F(1, 2), F(1, 2))
    assert half + half == ZExpr.z_pow(F(1, 2))


def test_mul_fractional_exponents():
    assert ZExpr.z_pow(F(1, 2)) * ZExpr.z_pow(F(1, 2)) == z()


def test_mul_distributes():
    one = ZExpr.one()
    assert (one + z()) * (one - z()) == one - z(2)


def test_mul_conjugate_pair():
    mu = F(3, 5)
    prod = ZExpr.z_pow(mu) * ZExpr.zbar_pow(mu)
    t = prod.single_monomial()
    assert t.exp_z == mu and t.exp_zbar == mu


def test_conjugate_examples():
    e = ZExpr.monomial(ExactScalar.of(0, 1), 2)
    assert e.conjugate() == ZExpr.monomial(ExactScalar.of(0, -1), 0, 2)
    real = ZExpr.one() + z() * zb()
    assert real.conjugate() == real


def test_diff_examples():
    assert ZExpr.z_pow(F(3, 2)).diff_z() == ZExpr.monomial(F(3, 2), F(1, 2))
    assert z(2).diff_zbar().is_zero
    assert (z() * zb()).diff_zbar().diff_z() == ZExpr.one()


def test_eval_basic():
    assert ZExpr.z_pow(F(1, 2)).evaluate(1) == pytest.approx(1)
    e = ZExpr.one() + z() * zb()
    assert e.evaluate(2j) == pytest.approx(5)


def test_eval_branch_cut():
    with pytest.raises(BranchCutError):
        ZExpr.z_pow(F(1, 2)).evaluate(-1)
    # Integer exponents are fine on the cut.
    assert z(2).evaluate(-1) == pytest.approx(1)


def test_eval_origin():
    with pytest.raises(OriginError):
        ZExpr.z_pow(F(-1)).evaluate(0)
    assert (ZExpr.one() + z()).evaluate(0) == pytest.approx(1)


def test_eval_conj_branch():
    p = 0.7 + 1.3j
    e = ZExpr.zbar_pow(F(1, 3))
    assert e.evaluate(p) == pytest.approx(p.conjugate() ** (1 / 3))


# -- operators -----------------------------------------------------------


def test_compose_two_factors():
    a = F(2, 3)
    lo = FirstOrderOp(ZExpr.monomial(a, -1))
    hi = FirstOrderOp(ZExpr.monomial(-a, -1))
    op = compose([hi, lo])
    assert op.order == 2
    assert op.coefficients[1].is_zero
    assert op.coefficients[2] == ZExpr.monomial(-a * (a + 1), -2)


def test_compose_single():
    op = compose([FirstOrderOp(ZExpr.zero())])
    assert op.order == 1 and op.coefficients[1].is_zero


def test_compose_trivial_cube():
    op = compose([FirstOrderOp(ZExpr.zero())] * 3)
    assert op.order == 3
    assert all(c.is_zero for c in op.coefficients[1:])


def test_apply_indicial():
    from toda.exact import OrdinaryOp

    # d^2 - 2/z^2 annihilates z^2: the exponent solves b(b-1) = 2.
    op = OrdinaryOp((ZExpr.one(), ZExpr.zero(), ZExpr.monomial(F(-2), -2)))
    assert op.apply(z(2)).is_zero
    assert not op.apply(z(3)).is_zero


def test_apply_constant_and_power_rule():
    d = compose([FirstOrderOp(ZExpr.zero())])
    assert d.apply(ZExpr.const(5)).is_zero
    d3 = compose([FirstOrderOp(ZExpr.zero())] * 3)
    b = F(7, 2)
    expect = ZExpr.monomial(b * (b - 1) * (b - 2), b - 3)
    assert d3.apply(ZExpr.z_pow(b)) == expect


# -- property tests --------------------------------------------------------

fractions = st.fractions(min_value=-4, max_value=4, max_denominator=6)
scalars = st.builds(ExactScalar, fractions, fractions)
exponents = st.fractions(min_value=-3, max_value=3, max_denominator=4)
monomials = st.builds(Monomial, scalars, exponents, exponents)
exprs = st.lists(monomials, max_size=4).map(ZExpr.from_terms)


@given(exprs, exprs, exprs)
@settings(max_examples=60, deadline=None)
def test_ring_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(exprs)
@settings(max_examples=60, deadline=None)
def test_conjugation_involution(a):
    assert a.conjugate().conjugate() == a


@given(exprs)
@settings(max_examples=60, deadline=None)
def test_mixed_partials_commute(a):
    assert a.diff_z().diff_zbar() == a.diff_zbar().diff_z()


@given(exprs, exprs)
@settings(max_examples=40, deadline=None)
def test_eval_is_ring_homomorphism(a, b):
    pt = 0.8 + 0.6j
    lhs = (a * b).evaluate(pt)
    rhs = a.evaluate(pt) * b.evaluate(pt)
    assert cmath.isclose(lhs, rhs, rel_tol=1e-12, abs_tol=1e-12)
    lhs2 = (a + b).evaluate(pt)
    rhs2 = a.evaluate(pt) + b.evaluate(pt)
    assert cmath.isclose(lhs2, rhs2, rel_tol=1e-12, abs_tol=1e-12)


holo_monomials = st.builds(Monomial, scalars, exponents, st.just(F(0)))
holo_exprs = st.lists(holo_monomials, max_size=2).map(ZExpr.from_terms)


@given(st.lists(holo_exprs, min_size=1, max_size=3), holo_exprs)
@settings(max_examples=40, deadline=None)
def test_compose_matches_sequential_application(shifts, f):
    ops = [FirstOrderOp(s) for s in shifts]
    expanded = compose(ops).apply(f)
    sequential = f
    for op in reversed(ops):
        sequential = op.apply(sequential)
    assert expanded == sequential
