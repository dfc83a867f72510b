"""Cohomology of flag varieties G/P in the Schubert basis.

The Borel map sends a polynomial f in the coordinates x_i to
``sum_w c_w eps_w`` where, for f homogeneous of degree l(w), ``c_w`` is the
constant ``D_w f`` with ``D_{s_i u} = d_i o D_u`` whenever l(s_i u) = l(u)+1.
For a reduced word [i_1, ..., i_k] of w this is d_{i_1} o ... o d_{i_k}:
the last letter acts first.  The orientation is checked against the anchor
beta(omega_i) = eps_{s_i} and against the Chevalley rule before any
expansion is trusted (:func:`validate_convention`).
"""
from __future__ import annotations

import json
import re
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping

from .errors import (ConventionError, NotInParabolicImage, NotLeviInvariant,
                     ParseError, RankMismatch, TagMismatch)
from .exactpoly import ExactPoly, is_invariant, norm_coeff
from .rootdata import (Parabolic, RootSystem, WeylElement, canonical, dot,
                       element_from_word, format_word, longest_element,
                       minimal_coset_reps, parse_word, positive_root_reflections,
                       simple_reflection)


# --- divided differences ---------------------------------------------------

def _swap_quotient(p: int, q: int):
    """(a^p b^q - a^q b^p)/(a - b) as a list of (sign, i, j) meaning a^i b^j."""
    if p == q:
        return []
    sign = 1
    if p < q:
        p, q, sign = q, p, -1
    d = p - q
    return [(sign, q + k, q + d - 1 - k) for k in range(d)]


@lru_cache(maxsize=None)
def _root_shape(rs: RootSystem, i: int):
    """Classify alpha_i as ('swap', a, b), ('sum', a, b) or ('sign', a, c)."""
    alpha = rs.simple_root(i)
    nz = [(k, c) for k, c in enumerate(alpha) if c]
    if len(nz) == 1:
        k, c = nz[0]
        return ("sign", k, c)
    (a, ca), (b, cb) = nz
    return ("swap", a, b) if ca == -cb else ("sum", a, b)


def divided_difference(rs: RootSystem, i: int, f: ExactPoly) -> ExactPoly:
    """(f - s_i f) / alpha_i, computed monomial by monomial."""
    if f.nvars != rs.coord_dim:
        raise RankMismatch(f"polynomial in {f.nvars} variables for {rs.name}")
    kind, a, b = _root_shape(rs, i)
    out: dict = {}
    for e, c in f.terms.items():
        if kind == "sign":
            p = e[a]
            if p % 2 == 0:
                continue
            ne = list(e)
            ne[a] = p - 1
            key = tuple(ne)
            out[key] = out.get(key, 0) + c * Fraction(2) / b
            continue
        p, q = e[a], e[b]
        flip = kind == "sum" and q % 2
        for sign, ia, jb in _swap_quotient(p, q):
            ne = list(e)
            ne[a], ne[b] = ia, jb
            s = sign
            if kind == "sum":
                if jb % 2:
                    s = -s
                if flip:
                    s = -s
            key = tuple(ne)
            out[key] = out.get(key, 0) + s * c
    return ExactPoly({k: v for k, v in out.items() if v}, f.nvars, f.var)


def divided_difference_word(rs: RootSystem, word, f: ExactPoly) -> ExactPoly:
    """d_{i_1} o ... o d_{i_k} (f): the last letter is applied first."""
    for i in reversed(tuple(word)):
        f = divided_difference(rs, i, f)
        if not f:
            break
    return f


def weight_polynomial(rs: RootSystem, weight) -> ExactPoly:
    """The linear form sum_k weight[k] x_k."""
    return ExactPoly.linear(list(weight))


def fundamental_weight_poly(rs: RootSystem, i: int) -> ExactPoly:
    return weight_polynomial(rs, rs.fundamental_weight(i))


# --- Schubert combinations -------------------------------------------------

class SchubertCombination:
    """Finite rational combination of Schubert classes eps^P_w, w in W^P."""

    __slots__ = ("tag", "terms")

    def __init__(self, tag: Parabolic, terms: Mapping | None = None, *, check: bool = True):
        self.tag = tag
        clean = {}
        reps = set(minimal_coset_reps(tag.rs, tag)) if check else None
        for w, c in (terms or {}).items():
            c = norm_coeff(c)
            if not c:
                continue
            w = canonical(w)
            if check and w not in reps:
                raise NotInParabolicImage(f"{w.word_str()} is not a minimal coset representative "
                                          f"for {tag.label()}")
            clean[w] = clean.get(w, 0) + c
        self.terms = {w: c for w, c in clean.items() if c}

    @classmethod
    def zero(cls, tag: Parabolic) -> SchubertCombination:
        return cls(tag, {})

    @classmethod
    def basis(cls, tag: Parabolic, w: WeylElement | Iterable[int]) -> SchubertCombination:
        if not isinstance(w, WeylElement):
            w = element_from_word(tag.rs, w)
        return cls(tag, {w: 1})

    @classmethod
    def unit(cls, tag: Parabolic) -> SchubertCombination:
        return cls(tag, {WeylElement.identity(tag.rs): 1})

    def _same_tag(self, other: SchubertCombination) -> None:
        if not isinstance(other, SchubertCombination) or other.tag != self.tag:
            raise TagMismatch("combinations live on different flag varieties")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._same_tag(other)
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return SchubertCombination(self.tag, out, check=False)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        self._same_tag(other)
        return self + (-other)

    def scale(self, c) -> SchubertCombination:
        c = norm_coeff(c)
        return SchubertCombination(self.tag, {w: v * c for w, v in self.terms.items()}, check=False)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        if isinstance(other, SchubertCombination):
            return cup_product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = SchubertCombination.unit(self.tag)
        for _ in range(k):
            out = cup_product(out, self)
        return out

    def __eq__(self, other):
        if isinstance(other, SchubertCombination):
            return self.tag == other.tag and self.terms == other.terms
        if isinstance(other, int) and other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.tag, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def coefficient(self, w: WeylElement | Iterable[int]):
        if not isinstance(w, WeylElement):
            w = element_from_word(self.tag.rs, w)
        return self.terms.get(canonical(w), 0)

    def degree_components(self) -> dict:
        parts: dict = {}
        for w, c in self.terms.items():
            parts.setdefault(w.length, {})[w] = c
        return {d: SchubertCombination(self.tag, t, check=False) for d, t in sorted(parts.items())}

    def sorted_items(self) -> list:
        return sorted(self.terms.items(), key=lambda wc: (wc[0].length, wc[0].reduced_word))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for k, (w, c) in enumerate(self.sorted_items()):
            body = f"{abs(c)}·[{w.word_str()}]"
            if k == 0:
                out.append(f"-{body}" if c < 0 else body)
            else:
                out.append(f" - {body}" if c < 0 else f" + {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"SchubertCombination({self.tag.rs.name}, {self.tag.label()}, {str(self)!r})"

    def to_json(self) -> list:
        return [{"word": w.word_str(), "coeff": str(c)} for w, c in self.sorted_items()]

    @classmethod
    def from_json(cls, tag: Parabolic, data) -> SchubertCombination:
        if isinstance(data, str):
            data = json.loads(data)
        return cls(tag, {element_from_word(tag.rs, parse_word(d["word"])): Fraction(d["coeff"])
                         for d in data})

    @classmethod
    def parse(cls, tag: Parabolic, text: str) -> SchubertCombination:
        """Inverse of ``str``: terms like ``2·[s2 s1]``, ``- 1/2·[e]``."""
        text = text.strip()
        if text == "0":
            return cls.zero(tag)
        pos = 0
        terms: dict = {}
        # coefficient optional before a bracket; a bare number is a multiple of [e]
        pattern = re.compile(r"\s*([+-]?)\s*(?:(\d+(?:/\d+)?)\s*[·*]?\s*\[([^\]]*)\]"
                             r"|\[([^\]]*)\]|(\d+(?:/\d+)?))\s*")
        while pos < len(text):
            m = pattern.match(text, pos)
            if not m or (pos and not m.group(1)):
                raise ParseError(f"bad Schubert term at {text[pos:]!r}")
            pos = m.end()
            sign = -1 if m.group(1) == "-" else 1
            if m.group(5) is not None:
                c, word = Fraction(m.group(5)) * sign, "e"
            else:
                c = Fraction(m.group(2) or 1) * sign
                word = m.group(3) if m.group(3) is not None else m.group(4)
            w = canonical(element_from_word(tag.rs, parse_word(word)))
            terms[w] = terms.get(w, 0) + c
        return cls(tag, terms)


# --- Borel map -------------------------------------------------------------

def _check_poly(rs: RootSystem, f: ExactPoly) -> None:
    if f.nvars != rs.coord_dim:
        raise RankMismatch(f"polynomial in {f.nvars} variables for {rs.name} "
                           f"({rs.coord_dim} coordinates)")


def _expand_homogeneous(tag: Parabolic, f: ExactPoly, d: int) -> dict:
    rs = tag.rs
    allowed = set(minimal_coset_reps(rs, tag))
    level = {canonical(WeylElement.identity(rs)): f}
    for _ in range(d):
        nxt: dict = {}
        for u, g in level.items():
            for i in range(1, rs.rank + 1):
                v = canonical(simple_reflection(rs, i) * u)
                if v in nxt or v.length != u.length + 1 or v not in allowed:
                    continue
                nxt[v] = divided_difference(rs, i, g)
        level = {v: g for v, g in nxt.items() if g}
        if not level:
            break
    out = {}
    for w, g in level.items():
        if g.degree() > 0:
            raise ConventionError(f"D_w f is not constant for w={w.word_str()}")
        out[w] = g.constant_term()
    return out


def borel_expand(f: ExactPoly, tag: Parabolic, *, _validated: bool = False) -> SchubertCombination:
    """beta(f) (or beta^P(f) for a parabolic tag) in the Schubert basis."""
    if not _validated:
        validate_convention()
    rs = tag.rs
    _check_poly(rs, f)
    if not tag.is_borel and not is_invariant(f, tag.generators()):
        raise NotLeviInvariant(f"{f} is not invariant under W_L for {tag.label()}")
    terms: dict = {}
    for d, part in f.homogeneous_components().items():
        if d > longest_element(rs).length:
            continue
        terms.update(_expand_homogeneous(tag, part, d))
    return SchubertCombination(tag, terms, check=False)


_convention_lock = threading.Lock()
_convention_ok = False


def validate_convention() -> None:
    """Check the divided-difference orientation against its two anchors.

    Raises :class:`ConventionError` if beta(omega_i) != eps_{s_i} or if the
    degree-2 expansion disagrees with the Chevalley rule.
    """
    global _convention_ok
    if _convention_ok:
        return
    with _convention_lock:
        if _convention_ok:
            return
        from .rootdata import build_root_system
        for fam, n in (("A", 2), ("B", 2), ("C", 2), ("D", 3)):
            rs = build_root_system(fam, n)
            tag = Parabolic.borel(rs)
            for i in range(1, n + 1):
                om = fundamental_weight_poly(rs, i)
                got = borel_expand(om, tag, _validated=True)
                if got != SchubertCombination.basis(tag, (i,)):
                    raise ConventionError(f"beta(omega_{i}) = {got} in {rs.name}")
                for j in range(1, n + 1):
                    lhs = borel_expand(om * fundamental_weight_poly(rs, j), tag, _validated=True)
                    rhs = chevalley_product(i, SchubertCombination.basis(tag, (j,)))
                    if lhs != rhs:
                        raise ConventionError(
                            f"beta(omega_{i} omega_{j}) = {lhs} but Chevalley gives {rhs} in {rs.name}")
        _convention_ok = True


# --- products --------------------------------------------------------------

def multiply_by_weight(weight, c: SchubertCombination) -> SchubertCombination:
    """Chevalley rule for the class of a linear form, computed on G/B.

    eps_lambda * eps_w = sum over positive beta with l(w s_beta) = l(w)+1 of
    <lambda, beta^vee> eps_{w s_beta}.  For a parabolic tag the result must
    again be supported on W^P.
    """
    rs = c.tag.rs
    out: dict = {}
    for w, coeff in c.terms.items():
        for beta, sb in positive_root_reflections(rs):
            v = canonical(w * sb)
            if v.length != w.length + 1:
                continue
            pair = dot(weight, rs.coroot(beta))
            if pair:
                out[v] = out.get(v, 0) + coeff * pair
    borel = Parabolic.borel(rs)
    result = SchubertCombination(borel, out, check=False)
    return result if c.tag.is_borel else restrict_to_parabolic(result, c.tag)


def chevalley_product(i: int, c: SchubertCombination) -> SchubertCombination:
    """eps_{s_i} * c by the Chevalley rule."""
    rs = c.tag.rs
    if i in c.tag.simple:
        raise NotLeviInvariant(f"eps_s{i} is not a class on G/P for {c.tag.label()}")
    return multiply_by_weight(rs.fundamental_weight(i), c)


_top_lock = threading.Lock()


@lru_cache(maxsize=None)
def _top_lift(rs: RootSystem) -> ExactPoly:
    with _top_lock:
        n = rs.coord_dim
        prod = ExactPoly.constant(1, n)
        for beta in rs.positive_roots:
            prod = prod * ExactPoly.linear(list(beta))
        w0 = longest_element(rs)
        top = divided_difference_word(rs, w0.reduced_word, prod).constant_term()
        return prod / top


@lru_cache(maxsize=None)
def schubert_lift(w: WeylElement) -> ExactPoly:
    """A polynomial p with beta(p) = eps^B_w.

    Uses 1 and omega_i in degrees 0 and 1, and otherwise descends from the
    normalised product of positive roots: p_{w} = d_i p_{w s_i} when
    l(w s_i) = l(w) + 1.
    """
    w = canonical(w)
    rs = w.root_system
    if w.length == 0:
        return ExactPoly.constant(1, rs.coord_dim)
    if w.length == 1:
        return fundamental_weight_poly(rs, w.reduced_word[0])
    if w == longest_element(rs):
        return _top_lift(rs)
    for i in range(1, rs.rank + 1):
        v = canonical(w * simple_reflection(rs, i))
        if v.length == w.length + 1:
            return divided_difference(rs, i, schubert_lift(v))
    raise AssertionError("unreachable: every non-longest element has an ascent")


def lift(c: SchubertCombination) -> ExactPoly:
    """A polynomial representative of ``c`` on G/B."""
    rs = c.tag.rs
    total = ExactPoly.zero(rs.coord_dim)
    for w, coeff in c.terms.items():
        total = total + schubert_lift(w).scale(coeff)
    return total


def _on_borel(c: SchubertCombination) -> SchubertCombination:
    return c if c.tag.is_borel else SchubertCombination(Parabolic.borel(c.tag.rs), c.terms, check=False)


def cup_product(a: SchubertCombination, b: SchubertCombination,
                method: str = "divided") -> SchubertCombination:
    """Cup product on G/P, computed on G/B and restricted.

    ``method="divided"`` multiplies polynomial lifts of both factors and
    expands; ``method="chevalley"`` lifts only ``a`` and applies the
    Chevalley rule once per linear factor of each monomial.
    """
    if not isinstance(a, SchubertCombination) or not isinstance(b, SchubertCombination):
        raise TagMismatch("cup_product needs two Schubert combinations")
    if a.tag != b.tag:
        raise TagMismatch("combinations live on different flag varieties")
    tag = a.tag
    rs = tag.rs
    borel = Parabolic.borel(rs)
    if not a or not b:
        return SchubertCombination.zero(tag)
    if method == "divided":
        prod = borel_expand(lift(a) * lift(b), borel)
    elif method == "chevalley":
        prod = _chevalley_apply(lift(a), _on_borel(b))
    else:
        raise ValueError(f"unknown product method {method!r}")
    return prod if tag.is_borel else restrict_to_parabolic(prod, tag)


def _chevalley_apply(p: ExactPoly, b: SchubertCombination) -> SchubertCombination:
    rs = b.tag.rs
    n = rs.coord_dim
    units = [tuple(1 if k == j else 0 for k in range(n)) for j in range(n)]
    cache = {(0,) * n: b}

    def times(e):
        if e in cache:
            return cache[e]
        j = next(k for k, a in enumerate(e) if a)
        rest = list(e)
        rest[j] -= 1
        val = multiply_by_weight(units[j], times(tuple(rest)))
        cache[e] = val
        return val

    total = SchubertCombination.zero(b.tag)
    top = longest_element(rs).length
    for e, c in p.terms.items():
        if sum(e) + min(w.length for w in b.terms) > top:
            continue
        total = total + times(e).scale(c)
    return total


def restrict_to_parabolic(c: SchubertCombination, S) -> SchubertCombination:
    """Read a G/B combination supported on W^P as a class on G/P."""
    tag = S if isinstance(S, Parabolic) else Parabolic(c.tag.rs, frozenset(S))
    if tag.rs != c.tag.rs:
        raise TagMismatch("different root systems")
    reps = set(minimal_coset_reps(tag.rs, tag))
    bad = [w for w in c.terms if w not in reps]
    if bad:
        raise NotInParabolicImage(
            "terms outside W^P: " + ", ".join(sorted(w.word_str() for w in bad)))
    return SchubertCombination(tag, c.terms, check=False)


def pullback(c: SchubertCombination, smaller: Parabolic) -> SchubertCombination:
    """pi^* : H*(G/Q) -> H*(G/P) for P inside Q; eps^Q_w -> eps^P_w."""
    if not c.tag.contains(smaller):
        raise TagMismatch(f"{smaller.label()} is not contained in {c.tag.label()}")
    return SchubertCombination(smaller, c.terms, check=False)


def schubert_class(tag: Parabolic, word) -> SchubertCombination:
    """eps_w for a word; eps_{s_0} (the empty index 0) is the zero class."""
    word = tuple(word)
    if any(i == 0 for i in word):
        return SchubertCombination.zero(tag)
    return SchubertCombination.basis(tag, word)


__all__ = [
    "SchubertCombination", "divided_difference", "divided_difference_word", "borel_expand",
    "chevalley_product", "multiply_by_weight", "cup_product", "restrict_to_parabolic",
    "pullback", "schubert_lift", "lift", "validate_convention", "schubert_class",
    "fundamental_weight_poly", "weight_polynomial", "format_word",
]
