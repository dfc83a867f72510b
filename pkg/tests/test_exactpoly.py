from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from levirep.errors import BadIndex, ParseError, VariableCountMismatch
from levirep.exactpoly import (ExactPoly, LaurentPoly, cayley_rewrite, cayley_variables,
                               elementary_symmetric, is_invariant, matrix_rank, norm_coeff,
                               solve_linear)
from levirep.rootdata import Parabolic, build_root_system, weyl_group


def L(text, n):
    return LaurentPoly.parse(text, n)


def test_difference_of_squares():
    assert L("t1 - t1^-1", 1) * L("t1 + t1^-1", 1) == L("t1^2 - t1^-2", 1)


def test_cayley_substitution():
    p = ExactPoly.parse("2*x1", 1)
    assert p.substitute(cayley_variables(1, Fraction(1, 2))) == L("t1 - t1^-1", 1)


def test_cancellation_leaves_no_terms():
    p = L("3*t1*t2^-1 + 1/2", 2)
    assert (p + (-p)).terms == {}
    assert not (p - p)


def test_coefficients_are_exact():
    assert norm_coeff(Fraction(4, 2)) == 2 and isinstance(norm_coeff(Fraction(4, 2)), int)
    with pytest.raises(TypeError):
        norm_coeff(0.5)
    assert ExactPoly.parse("x1/3", 1).coefficient((1,)) == Fraction(1, 3)


def test_variable_count_mismatch():
    with pytest.raises(VariableCountMismatch):
        L("t1", 1) + L("t1", 2)


def test_elementary_symmetric():
    assert elementary_symmetric(1, [1, 2], 2) == ExactPoly.parse("x1 + x2", 2)
    assert elementary_symmetric(2, [1, 2, 3], 3) == ExactPoly.parse("x1*x2 + x1*x3 + x2*x3", 3)
    assert elementary_symmetric(0, [1, 2], 2) == 1
    with pytest.raises(BadIndex):
        elementary_symmetric(3, [1, 2], 2)


def test_cayley_examples():
    d = cayley_rewrite(L("t1^2 + t1^-2", 1))
    assert d.principal == ExactPoly.parse("s1^2 + 2", 1, "s") and not d.residual
    d = cayley_rewrite(L("t1 + t1^-1", 1))
    assert d.principal == ExactPoly.parse("-s1", 1, "s")
    assert d.residual == {frozenset({1}): ExactPoly.constant(2, 1, "s")}
    assert d.witness() == "2·t1"
    d = cayley_rewrite(L("t1*t2 - t1*t2^-1 - t1^-1*t2 + t1^-1*t2^-1", 2))
    assert d.principal == ExactPoly.parse("s1*s2", 2, "s") and not d.residual


def test_cayley_zero():
    d = cayley_rewrite(LaurentPoly.zero(2))
    assert not d.principal and not d.residual


def test_invariance():
    a1 = build_root_system("A", 1)
    assert is_invariant(ExactPoly.parse("x1 + x2", 2), weyl_group(a1))
    assert not is_invariant(ExactPoly.parse("x1", 2), weyl_group(a1))
    c2 = build_root_system("C", 2)
    f = L("(t1 - t1^-1)^2 + (t2 - t2^-1)^2", 2)
    assert is_invariant(f, Parabolic.full(c2).generators())


def test_parse_errors():
    for bad in ("x1 +", "x1 / x2", "x0", "2..", "x1^-1"):
        with pytest.raises(ParseError):
            ExactPoly.parse(bad, 2)


def test_linear_algebra():
    assert solve_linear([[1, 1], [1, -1]], [3, 1]) == [2, 1]
    assert solve_linear([[1, 1], [2, 2]], [1, 3]) is None
    assert matrix_rank([[1, 2], [2, 4]]) == 1
    x = solve_linear([[2]], [L("t1 - t1^-1", 1)])
    assert x[0] == L("1/2*t1 - 1/2*t1^-1", 1)


exps = st.tuples(st.integers(-3, 3), st.integers(-3, 3))
coeffs = st.fractions(min_value=-5, max_value=5, max_denominator=4).filter(lambda c: c != 0)
laurent = st.dictionaries(exps, coeffs, max_size=5).map(lambda d: LaurentPoly(d, 2))


@settings(max_examples=80, deadline=None)
@given(laurent, laurent, laurent)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a


@settings(max_examples=80, deadline=None)
@given(laurent)
def test_text_round_trip(p):
    assert LaurentPoly.parse(str(p), 2) == p


@settings(max_examples=80, deadline=None)
@given(laurent)
def test_cayley_reassembles(p):
    assert cayley_rewrite(p).reassemble() == p


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), max_size=3),
       st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2)), max_size=3))
def test_cayley_products_of_members(e1, e2):
    s = cayley_variables(2)
    p = sum((s[0] ** a * s[1] ** b for a, b in e1), LaurentPoly.zero(2))
    q = sum((s[0] ** a * s[1] ** b for a, b in e2), LaurentPoly.zero(2))
    dp, dq, dpq = cayley_rewrite(p), cayley_rewrite(q), cayley_rewrite(p * q)
    assert not dp.residual and not dq.residual and not dpq.residual
    assert dpq.principal == dp.principal * dq.principal


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 4), st.permutations([1, 2, 3, 4]))
def test_elementary_symmetric_is_symmetric(k, perm):
    e = elementary_symmetric(k, [1, 2, 3, 4], 4)
    images = [ExactPoly.variable(p, 4) for p in perm]
    assert e.substitute(images) == e
