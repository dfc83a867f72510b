import pytest
from hypothesis import given, settings, strategies as st

from levirep.errors import (BadPartition, NotLeviInvariant, NotNested, NotPolynomialCharacter,
                            OutOfStatedRange)
from levirep.exactpoly import ExactPoly, LaurentPoly
from levirep.rootdata import Parabolic, build_root_system
from levirep.schubert import SchubertCombination, cup_product
from levirep.ximap import (XiContext, classical_xi_gl, grassmannian_permutation, invariant_basis,
                           lambda_generation_witness, partitions_in_box, springer_examples,
                           verify_commutative_diagram, verify_lemma_so, verify_proposition,
                           verify_surjectivity, verify_theorem3, xi)


def test_xi_examples():
    ctx = XiContext.maximal("C", 3, 2)
    chi = LaurentPoly.parse("t1 - t1^-1 + t2 - t2^-1", 3)
    assert xi(ctx, chi) == ctx.eps(2).scale(2)
    ctx = XiContext.maximal("B", 3, 3)
    chi = LaurentPoly.parse("t1 - t1^-1 + t2 - t2^-1 + t3 - t3^-1", 3)
    assert xi(ctx, chi) == ctx.eps(3).scale(4)
    assert xi(ctx, "1") == SchubertCombination.unit(ctx.parabolic)


def test_xi_errors():
    ctx = XiContext.create("C", 2)
    with pytest.raises(NotPolynomialCharacter) as info:
        xi(ctx, "t1 + t1^-1")
    assert info.value.witness == "2·t1"
    with pytest.raises(NotLeviInvariant):
        xi(XiContext.maximal("C", 2, 1), "t2 - t2^-1")


def test_classical_xi_gl():
    assert classical_xi_gl((0, 0), 2, 4) == SchubertCombination.unit(classical_xi_gl((0, 0), 2, 4).tag)
    c = classical_xi_gl((1, 0), 2, 4)
    assert c == SchubertCombination.basis(c.tag, (2,))
    assert grassmannian_permutation((1, 0), 2, 4).images == (1, 3, 2, 4)
    assert classical_xi_gl((3, 0), 2, 4) == 0
    with pytest.raises(BadPartition):
        classical_xi_gl((0, 1), 2, 4)
    with pytest.raises(BadPartition):
        classical_xi_gl((1, 1, 1), 2, 4)


@pytest.mark.parametrize("r,n", [(1, 3), (2, 4), (2, 5), (1, 4)])
def test_vanishing_rule(r, n):
    for lam in partitions_in_box(r, n - r + 1):
        assert (classical_xi_gl(lam, r, n) == 0) == (lam[0] > n - r)


@pytest.mark.parametrize("r,n", [(1, 3), (2, 4), (3, 4)])
def test_theorem3(r, n):
    report = verify_theorem3(r, n)
    assert report.passed, report.render()


def test_fundamental_class_example():
    report = verify_theorem3(2, 4, products=False)
    claim = next(c for c in report.claims if c.claim == "thm3.fundamental.1.class")
    assert claim.passed and claim.lhs == "1·[s2]"


def test_lr_example():
    tag = classical_xi_gl((1,), 2, 4).tag
    e = classical_xi_gl((1,), 2, 4)
    assert cup_product(e, e) == classical_xi_gl((2,), 2, 4) + classical_xi_gl((1, 1), 2, 4)
    assert tag.label() == "maximal:2"


@pytest.mark.parametrize("prop,n,r", [("P8", 2, 1), ("P8", 3, 1), ("P8", 3, 2), ("P8", 4, 2),
                                      ("P9", 2, 1), ("P9", 3, 1), ("P9", 3, 2), ("P9", 3, 3),
                                      ("P10", 4, 1), ("P10", 4, 2), ("P10_rn", 4, 3),
                                      ("P10_rn", 4, 4)])
def test_propositions(prop, n, r):
    report = verify_proposition(prop, n, r)
    assert report.passed, report.render()


@pytest.mark.parametrize("family,n", [("C", 2), ("B", 2), ("D", 3), ("D", 4), ("C", 4)])
def test_borel_images(family, n):
    assert verify_proposition("S10", n, family=family).passed


def test_stated_ranges():
    with pytest.raises(OutOfStatedRange):
        verify_proposition("P8", 1, 1)
    with pytest.raises(OutOfStatedRange):
        verify_proposition("P10", 4, 3)
    with pytest.raises(OutOfStatedRange):
        verify_proposition("P10_rn", 3, 3)
    with pytest.raises(OutOfStatedRange):
        verify_proposition("P9", 3, 2, family="C")
    with pytest.raises(OutOfStatedRange):
        verify_proposition("P11", 3, 2)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_lemma_so(n):
    assert verify_lemma_so(n).passed


def test_diagram():
    for family in ("C", "A"):
        q = XiContext.maximal(family, 2, 1)
        p = XiContext.create(family, 2)
        report = verify_commutative_diagram(p, q)
        assert report.passed
        assert report.claims[0].lhs == "1·[e]"
    with pytest.raises(NotNested):
        verify_commutative_diagram(XiContext.maximal("C", 2, 1), XiContext.create("C", 2))


def test_diagram_explicit_character():
    q = XiContext.maximal("C", 2, 1)
    p = XiContext.create("C", 2)
    chi = LaurentPoly.parse("t1 - t1^-1 + (t2 - t2^-1)^2", 2)
    assert verify_commutative_diagram(p, q, [chi]).passed


@pytest.mark.parametrize("family,n", [("A", 2), ("B", 2), ("C", 3), ("D", 3)])
def test_surjectivity(family, n):
    for r in range(1, n + 1):
        assert verify_surjectivity(XiContext.maximal(family, n, r)).passed


def test_lambda_generation():
    for family in "CB":
        report = lambda_generation_witness(family, 2)
        assert report.passed
        assert report.data["witnesses"]["e2"] == {"1": "-2", "L2": "1"}


def test_springer_report_flags_scalar():
    report = springer_examples()
    assert report.passed
    assert report.data["springer_2omega1"]["ratio"] == "2"
    assert report.data["springer_2omega1"]["flagged"]


xi_groups = st.sampled_from([("A", 2), ("B", 2), ("C", 2), ("C", 3), ("D", 3)])


@settings(max_examples=30, deadline=None)
@given(xi_groups, st.data())
def test_xi_multiplicative(group, data):
    rs = build_root_system(*group)
    S = frozenset(data.draw(st.sets(st.integers(1, rs.rank))))
    ctx = XiContext(rs, Parabolic(rs, S))
    basis = [ExactPoly.constant(1, rs.coord_dim)] + invariant_basis(ctx.parabolic, 1) \
        + invariant_basis(ctx.parabolic, 2)
    p = sum((b.scale(data.draw(st.integers(-2, 2))) for b in basis), ExactPoly.zero(rs.coord_dim))
    q = sum((b.scale(data.draw(st.integers(-2, 2))) for b in basis), ExactPoly.zero(rs.coord_dim))
    chi, psi = ctx.pull_back(p), ctx.pull_back(q)
    assert xi(ctx, chi * psi) == cup_product(xi(ctx, chi), xi(ctx, psi))
