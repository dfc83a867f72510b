"""Seeded randomized consistency suites.

Each suite draws ``cases`` random inputs from ``random.Random(seed)`` and
records one claim per case in a VerificationReport.
"""
from __future__ import annotations

import random

from .exactpoly import ExactPoly
from .repring import Character, adams, irreducible_character, lambda_series, sym2_alt2
from .rootdata import (Parabolic, build_root_system, element_from_word, minimal_coset_reps,
                       simple_reflection)
from .schubert import SchubertCombination, cup_product, divided_difference_word
from .ximap import VerificationReport, XiContext, invariant_basis, xi

_SCHUBERT_GROUPS = (("A", 3), ("B", 3), ("C", 3), ("D", 4))
_CHARACTER_GROUPS = (("A", 2), ("B", 2), ("C", 2), ("D", 3))
_XI_GROUPS = (("A", 2), ("A", 3), ("B", 2), ("B", 3), ("C", 2), ("C", 3), ("D", 3))


def _random_poly(rng: random.Random, nvars: int, max_degree: int = 4, terms: int = 3) -> ExactPoly:
    out = {}
    for _ in range(rng.randint(1, terms)):
        d = rng.randint(0, max_degree)
        e = [0] * nvars
        for _ in range(d):
            e[rng.randrange(nvars)] += 1
        out[tuple(e)] = rng.choice([-3, -2, -1, 1, 2, 3])
    return ExactPoly(out, nvars)


def _braid_order(rs, i: int, j: int) -> int:
    w = simple_reflection(rs, i) * simple_reflection(rs, j)
    m, p = 1, w
    while not p.is_identity():
        p, m = p * w, m + 1
    return m


def nil_coxeter_suite(seed: int = 0, cases: int = 200) -> VerificationReport:
    """d_i^2 = 0 and the braid relations of divided differences."""
    rng = random.Random(seed)
    report = VerificationReport(f"nil-coxeter seed={seed}")
    for k in range(cases):
        rs = build_root_system(*rng.choice(_SCHUBERT_GROUPS))
        f = _random_poly(rng, rs.coord_dim)
        i = rng.randint(1, rs.rank)
        j = rng.choice([x for x in range(1, rs.rank + 1) if x != i])
        m = _braid_order(rs, i, j)
        left = tuple(i if t % 2 == 0 else j for t in range(m))
        right = tuple(j if t % 2 == 0 else i for t in range(m))
        square = divided_difference_word(rs, (i, i), f)
        lhs = divided_difference_word(rs, left, f)
        rhs = divided_difference_word(rs, right, f)
        ok = (not square) and lhs == rhs
        report.check(f"nil-coxeter.{k:03d}", rs, "borel", ok, True,
                     None if ok else f"f={f} i={i} j={j} m={m}")
    return report


def _random_class(rng: random.Random, tag: Parabolic, max_degree: int) -> SchubertCombination:
    reps = [w for w in minimal_coset_reps(tag.rs, tag) if w.length <= max_degree]
    terms = {}
    for _ in range(rng.randint(1, 3)):
        terms[rng.choice(reps)] = rng.choice([-2, -1, 1, 2, 3])
    return SchubertCombination(tag, terms)


def product_agreement_suite(seed: int = 0, cases: int = 200) -> VerificationReport:
    """Divided-difference and Chevalley-rule cup products agree."""
    rng = random.Random(seed)
    report = VerificationReport(f"product-agreement seed={seed}")
    for k in range(cases):
        rs = build_root_system(*rng.choice(_SCHUBERT_GROUPS))
        tag = Parabolic.borel(rs) if rng.random() < 0.5 else Parabolic.maximal(rs, rng.randint(1, rs.rank))
        a = _random_class(rng, tag, 3)
        b = _random_class(rng, tag, 3)
        report.check(f"product.{k:03d}", rs, tag.label(),
                     cup_product(a, b, method="divided"), cup_product(a, b, method="chevalley"))
    return report


def _random_character(rng: random.Random, rs, *, virtual: bool = False) -> Character:
    total = Character.constant(Parabolic.full(rs), 0)
    for _ in range(rng.randint(1, 2)):
        coeffs = [rng.randint(0, 1) for _ in range(rs.rank)]
        weight = rs.weight_from_fundamental(coeffs)
        if any(getattr(c, "denominator", 1) != 1 for c in weight):
            continue
        sign = rng.choice([-1, 1]) if virtual else 1
        total = total + irreducible_character(rs, tuple(int(c) for c in weight)) * sign
    if not total.poly:
        total = total + 1
    return total


def lambda_axiom_suite(seed: int = 0, cases: int = 200, degree: int = 3) -> VerificationReport:
    """lambda^0 = 1, lambda^1 = x, lambda(x+y) = lambda(x)lambda(y), lambda(1) = 1+q."""
    rng = random.Random(seed)
    report = VerificationReport(f"lambda-axioms seed={seed}")
    for k in range(cases):
        rs = build_root_system(*rng.choice(_CHARACTER_GROUPS))
        x = _random_character(rng, rs, virtual=rng.random() < 0.3)
        y = _random_character(rng, rs)
        lx, ly, lxy = (lambda_series(c, degree) for c in (x, y, x + y))
        one = lambda_series(Character.constant(x.group, 1), degree)
        ok = lx[0] == 1 and lx[1] == x
        ok = ok and all(lxy[d] == sum((lx[i] * ly[d - i] for i in range(d + 1)),
                                      Character.constant(x.group, 0)) for d in range(degree + 1))
        ok = ok and one[1] == 1 and all(not one[d] for d in range(2, degree + 1))
        ok = ok and lx[2] == sym2_alt2(x)[1]
        report.check(f"lambda.{k:03d}", rs, "full", ok, True, None if ok else f"x={x} y={y}")
    return report


def adams_suite(seed: int = 0, cases: int = 200) -> VerificationReport:
    """psi^k is a ring endomorphism, psi^1 = id and psi^k psi^l = psi^{kl}."""
    rng = random.Random(seed)
    report = VerificationReport(f"adams seed={seed}")
    for k in range(cases):
        rs = build_root_system(*rng.choice(_CHARACTER_GROUPS))
        x = _random_character(rng, rs, virtual=True)
        y = _random_character(rng, rs, virtual=True)
        a, b = rng.randint(1, 3), rng.randint(1, 3)
        ok = (adams(a, x * y) == adams(a, x) * adams(a, y)
              and adams(a, x + y) == adams(a, x) + adams(a, y)
              and adams(1, x) == x
              and adams(a, adams(b, x)) == adams(a * b, x))
        report.check(f"adams.{k:03d}", rs, "full", ok, True, None if ok else f"x={x} y={y} k={a}")
    return report


def _random_invariant(rng: random.Random, par: Parabolic, max_degree: int) -> ExactPoly:
    total = ExactPoly.zero(par.rs.coord_dim)
    for d in range(max_degree + 1):
        basis = invariant_basis(par, d) if d else [ExactPoly.constant(1, par.rs.coord_dim)]
        for p in basis:
            if rng.random() < 0.5:
                total = total + p.scale(rng.choice([-2, -1, 1, 2]))
    return total


def xi_multiplicativity_suite(seed: int = 0, cases: int = 200) -> VerificationReport:
    """xi(chi * chi') = xi(chi) * xi(chi') for random polynomial characters."""
    rng = random.Random(seed)
    report = VerificationReport(f"xi-multiplicativity seed={seed}")
    for k in range(cases):
        family, n = rng.choice(_XI_GROUPS)
        rs = build_root_system(family, n)
        S = frozenset(i for i in range(1, n + 1) if rng.random() < 0.4)
        ctx = XiContext(rs, Parabolic(rs, S))
        p = _random_invariant(rng, ctx.parabolic, 2)
        q = _random_invariant(rng, ctx.parabolic, 2)
        chi, psi = ctx.pull_back(p), ctx.pull_back(q)
        report.check(f"xi-mult.{k:03d}", rs, ctx.parabolic.label(),
                     xi(ctx, chi * psi), cup_product(xi(ctx, chi), xi(ctx, psi)))
    return report


SUITES = {
    "nil-coxeter": nil_coxeter_suite,
    "product-agreement": product_agreement_suite,
    "lambda-axioms": lambda_axiom_suite,
    "adams": adams_suite,
    "xi-multiplicativity": xi_multiplicativity_suite,
}


def run_property_suites(seed: int = 0, cases: int = 200) -> VerificationReport:
    report = VerificationReport(f"properties seed={seed}")
    for suite in SUITES.values():
        report.extend(suite(seed, cases))
    return report


__all__ = ["SUITES", "run_property_suites", "nil_coxeter_suite", "product_agreement_suite",
           "lambda_axiom_suite", "adams_suite", "xi_multiplicativity_suite"]
