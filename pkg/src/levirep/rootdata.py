"""Classical root systems in Bourbaki coordinates and their Weyl groups.

Weyl group elements are signed permutations of the coordinate indices
(plain permutations in type A).  Type A of rank n lives in n+1 coordinates,
i.e. the ambient torus is the one of GL_{n+1}; the fundamental weights are
taken in the GL form x_1 + ... + x_i, so the center direction is carried
along and never quotiented out.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

from .errors import BadIndex, ParseError, RankMismatch, UnsupportedRank

FAMILIES = ("A", "B", "C", "D")
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}
_MIN_DEGENERATE_RANK = {"A": 1, "B": 1, "C": 1, "D": 2}

Vector = tuple


def dot(u: Sequence, v: Sequence) -> Fraction:
    return sum((Fraction(a) * b for a, b in zip(u, v)), Fraction(0))


def _unit(dim: int, i: int, scale=1) -> tuple:
    return tuple(Fraction(scale) if k == i else Fraction(0) for k in range(dim))


def _vec(entries: Iterable) -> tuple:
    return tuple(Fraction(e) for e in entries)


def is_positive_vector(v: Sequence) -> bool:
    """First nonzero coordinate is positive (this selects the positive roots)."""
    for c in v:
        if c:
            return c > 0
    return False


@dataclass(frozen=True)
class RootSystem:
    family: str
    rank: int
    coord_dim: int = field(compare=False)
    simple_roots: tuple = field(compare=False, repr=False)
    fundamental_weights: tuple = field(compare=False, repr=False)
    coroots: tuple = field(compare=False, repr=False)

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def simple_root(self, i: int) -> tuple:
        self._check_index(i)
        return self.simple_roots[i - 1]

    def fundamental_weight(self, i: int) -> tuple:
        self._check_index(i)
        return self.fundamental_weights[i - 1]

    def coroot(self, root: Sequence) -> tuple:
        n2 = dot(root, root)
        return tuple(2 * Fraction(c) / n2 for c in root)

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise BadIndex(f"simple index {i} out of range for {self.name}")

    @cached_property
    def positive_roots(self) -> tuple:
        n, d = self.rank, self.coord_dim
        roots = []
        if self.family == "A":
            for i in range(d):
                for j in range(i + 1, d):
                    roots.append(_vec(1 if k == i else -1 if k == j else 0 for k in range(d)))
        else:
            for i in range(n):
                for j in range(i + 1, n):
                    roots.append(_vec(1 if k == i else -1 if k == j else 0 for k in range(d)))
                    roots.append(_vec(1 if k in (i, j) else 0 for k in range(d)))
            if self.family == "B":
                roots.extend(_unit(d, i) for i in range(n))
            elif self.family == "C":
                roots.extend(_unit(d, i, 2) for i in range(n))
        return tuple(sorted(roots, reverse=True))

    @cached_property
    def rho(self) -> tuple:
        total = [Fraction(0)] * self.coord_dim
        for r in self.positive_roots:
            for k, c in enumerate(r):
                total[k] += c
        return tuple(c / 2 for c in total)

    def weight_from_fundamental(self, coeffs: Sequence) -> tuple:
        """Coordinates of sum_i coeffs[i] * omega_{i+1}."""
        if len(coeffs) != self.rank:
            raise RankMismatch(f"expected {self.rank} coefficients, got {len(coeffs)}")
        out = [Fraction(0)] * self.coord_dim
        for c, w in zip(coeffs, self.fundamental_weights):
            for k in range(self.coord_dim):
                out[k] += Fraction(c) * w[k]
        return tuple(out)

    def fundamental_coefficients(self, weight: Sequence) -> tuple:
        """Pairings <weight, alpha_i^vee>, i.e. the coordinates over the omega_i."""
        return tuple(dot(weight, c) for c in self.coroots)

    def is_dominant(self, weight: Sequence) -> bool:
        return all(c >= 0 for c in self.fundamental_coefficients(weight))

    def dominant_representative(self, weight: Sequence) -> tuple:
        """The unique dominant element of the W-orbit of ``weight``."""
        v = [Fraction(c) for c in weight]
        if self.family == "A":
            return tuple(sorted(v, reverse=True))
        n = self.rank
        head = sorted((abs(c) for c in v[:n]), reverse=True)
        if self.family == "D" and head[-1] != 0:
            negatives = sum(1 for c in v[:n] if c < 0)
            if negatives % 2:
                head[-1] = -head[-1]
        return tuple(head) + tuple(v[n:])

    def weyl_orbit(self, weight: Sequence) -> frozenset:
        return frozenset(w.apply_vector(weight) for w in weyl_group(self))


def _build(family: str, rank: int) -> RootSystem:
    n = rank
    if family == "A":
        d = n + 1
        simple = [_vec(1 if k == i else -1 if k == i + 1 else 0 for k in range(d)) for i in range(n)]
        fund = [_vec(1 if k <= i else 0 for k in range(d)) for i in range(n)]
    else:
        d = n
        simple = [_vec(1 if k == i else -1 if k == i + 1 else 0 for k in range(d)) for i in range(n - 1)]
        half = Fraction(1, 2)
        if family == "B":
            simple.append(_unit(d, n - 1))
            fund = [_vec(1 if k <= i else 0 for k in range(d)) for i in range(n - 1)]
            fund.append(tuple(half for _ in range(d)))
        elif family == "C":
            simple.append(_unit(d, n - 1, 2))
            fund = [_vec(1 if k <= i else 0 for k in range(d)) for i in range(n)]
        else:
            simple.append(_vec(1 if k in (n - 2, n - 1) else 0 for k in range(d)))
            fund = [_vec(1 if k <= i else 0 for k in range(d)) for i in range(n - 2)]
            fund.append(tuple(half if k < n - 1 else -half for k in range(d)))
            fund.append(tuple(half for _ in range(d)))
    rs = RootSystem(family, rank, d, tuple(simple), tuple(fund), ())
    object.__setattr__(rs, "coroots", tuple(rs.coroot(a) for a in simple))
    return rs


@lru_cache(maxsize=None)
def build_root_system(family: str, rank: int, *, degenerate_ok: bool = False) -> RootSystem:
    """Bourbaki-convention root data for a classical family.

    ``degenerate_ok`` admits the small ranks (C1, B1, D2) that are only used
    internally as Levi blocks or low-rank shadows.
    """
    family = family.upper()
    if family not in FAMILIES:
        raise UnsupportedRank(f"unknown family {family!r}")
    bound = (_MIN_DEGENERATE_RANK if degenerate_ok else _MIN_RANK)[family]
    if not isinstance(rank, int) or rank < bound:
        raise UnsupportedRank(f"{family}{rank}: rank must be >= {bound}")
    return _build(family, rank)


@dataclass(frozen=True, order=False)
class WeylElement:
    """Signed permutation: ``images[i-1] = +-j`` means e_i -> +-e_j."""

    images: tuple
    family: str
    rank: int

    def __post_init__(self):
        n = len(self.images)
        if sorted(abs(i) for i in self.images) != list(range(1, n + 1)):
            raise ValueError(f"{list(self.images)} is not a signed permutation")
        negatives = sum(1 for i in self.images if i < 0)
        if self.family == "A" and negatives:
            raise ValueError("type A elements carry no signs")
        if self.family == "D" and negatives % 2:
            raise ValueError("type D elements need an even number of sign changes")

    @classmethod
    def identity(cls, rs: RootSystem) -> WeylElement:
        return cls(tuple(range(1, rs.coord_dim + 1)), rs.family, rs.rank)

    @property
    def root_system(self) -> RootSystem:
        return build_root_system(self.family, self.rank, degenerate_ok=True)

    def _compatible(self, other: WeylElement) -> None:
        if (self.family, self.rank) != (other.family, other.rank):
            raise RankMismatch(f"{self.family}{self.rank} vs {other.family}{other.rank}")

    def __mul__(self, other: WeylElement) -> WeylElement:
        self._compatible(other)
        out = []
        for v in other.images:
            img = self.images[abs(v) - 1]
            out.append(img if v > 0 else -img)
        return WeylElement(tuple(out), self.family, self.rank)

    def inverse(self) -> WeylElement:
        out = [0] * len(self.images)
        for i, v in enumerate(self.images, start=1):
            out[abs(v) - 1] = i if v > 0 else -i
        return WeylElement(tuple(out), self.family, self.rank)

    def apply_vector(self, v: Sequence) -> tuple:
        if len(v) != len(self.images):
            raise RankMismatch(f"vector of length {len(v)} for {self.family}{self.rank}")
        out = [Fraction(0)] * len(v)
        for i, img in enumerate(self.images):
            out[abs(img) - 1] = v[i] if img > 0 else -v[i]
        return tuple(out)

    @cached_property
    def length(self) -> int:
        return sum(1 for a in self.root_system.positive_roots
                   if not is_positive_vector(self.apply_vector(a)))

    def is_identity(self) -> bool:
        return all(v == i for i, v in enumerate(self.images, start=1))

    def left_descent(self, i: int) -> bool:
        return (simple_reflection(self.root_system, i) * self).length < self.length

    def right_descent(self, i: int) -> bool:
        return (self * simple_reflection(self.root_system, i)).length < self.length

    @cached_property
    def reduced_word(self) -> tuple:
        """Lexicographically smallest reduced word (greedy on left descents)."""
        rs = self.root_system
        word = []
        w = self
        while not w.is_identity():
            for i in range(1, rs.rank + 1):
                s = simple_reflection(rs, i)
                u = s * w
                if u.length < w.length:
                    word.append(i)
                    w = u
                    break
        return tuple(word)

    def sort_key(self):
        return (self.length, self.images)

    def __lt__(self, other: WeylElement) -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return "[" + ",".join(str(i) for i in self.images) + "]"

    def word_str(self) -> str:
        return format_word(self.reduced_word)


def format_word(word: Sequence[int]) -> str:
    return " ".join(f"s{i}" for i in word) if word else "e"


@lru_cache(maxsize=None)
def simple_reflection(rs: RootSystem, i: int) -> WeylElement:
    rs._check_index(i)
    images = list(range(1, rs.coord_dim + 1))
    n = rs.rank
    if i < n or rs.family == "A":
        images[i - 1], images[i] = i + 1, i
    elif rs.family in "BC":
        images[n - 1] = -n
    else:
        images[n - 2], images[n - 1] = -n, -(n - 1)
    return WeylElement(tuple(images), rs.family, rs.rank)


def root_reflection(rs: RootSystem, root: Sequence) -> WeylElement:
    """The reflection s_beta as a signed permutation."""
    cor = rs.coroot(root)
    images = []
    for k in range(rs.coord_dim):
        e = _unit(rs.coord_dim, k)
        pair = dot(e, cor)
        img = tuple(e[m] - pair * root[m] for m in range(rs.coord_dim))
        (m,) = [m for m, c in enumerate(img) if c]
        images.append(m + 1 if img[m] > 0 else -(m + 1))
    return WeylElement(tuple(images), rs.family, rs.rank)


def element_from_word(rs: RootSystem, word: Sequence[int]) -> WeylElement:
    w = WeylElement.identity(rs)
    for i in word:
        w = w * simple_reflection(rs, i)
    return w


@lru_cache(maxsize=None)
def weyl_group(rs: RootSystem) -> tuple:
    """All elements, breadth-first from the identity, sorted by (length, images)."""
    return tuple(sorted(_closure(rs, range(1, rs.rank + 1)), key=WeylElement.sort_key))


def _closure(rs: RootSystem, generators: Iterable[int]) -> set:
    gens = [simple_reflection(rs, i) for i in generators]
    start = WeylElement.identity(rs)
    seen = {start}
    queue = deque([start])
    while queue:
        w = queue.popleft()
        for s in gens:
            u = w * s
            if u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


@lru_cache(maxsize=None)
def longest_element(rs: RootSystem) -> WeylElement:
    return weyl_group(rs)[-1]


@dataclass(frozen=True)
class Parabolic:
    """Standard parabolic P given by the simple-root indices S of its Levi.

    S = {} is the Borel subgroup; S = {1..n} minus {r} is the maximal P_r.
    Doubles as the flag-variety tag of G/P.
    """

    rs: RootSystem
    simple: frozenset = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "simple", frozenset(self.simple))
        bad = [i for i in self.simple if not 1 <= i <= self.rs.rank]
        if bad:
            raise BadIndex(f"Levi indices {sorted(bad)} outside 1..{self.rs.rank}")

    @classmethod
    def borel(cls, rs: RootSystem) -> Parabolic:
        return cls(rs, frozenset())

    @classmethod
    def maximal(cls, rs: RootSystem, r: int) -> Parabolic:
        rs._check_index(r)
        return cls(rs, frozenset(range(1, rs.rank + 1)) - {r})

    @classmethod
    def full(cls, rs: RootSystem) -> Parabolic:
        return cls(rs, frozenset(range(1, rs.rank + 1)))

    @property
    def is_borel(self) -> bool:
        return not self.simple

    def generators(self) -> list:
        return [simple_reflection(self.rs, i) for i in sorted(self.simple)]

    def levi_weyl_group(self) -> tuple:
        return tuple(sorted(_closure(self.rs, sorted(self.simple)), key=WeylElement.sort_key))

    def contains(self, other: Parabolic) -> bool:
        """P_self contains P_other as standard parabolics."""
        return self.rs == other.rs and other.simple <= self.simple

    def label(self) -> str:
        n = self.rs.rank
        if not self.simple:
            return "borel"
        missing = set(range(1, n + 1)) - self.simple
        if len(missing) == 1:
            return f"maximal:{missing.pop()}"
        if not missing:
            return "full"
        return "levi:" + ",".join(str(i) for i in sorted(self.simple))


def minimal_coset_reps(rs: RootSystem, S: Iterable[int] | Parabolic) -> tuple:
    """Minimal-length representatives of W/W_L, sorted by length then images."""
    par = S if isinstance(S, Parabolic) else Parabolic(rs, frozenset(S))
    return _coset_reps(par)


@lru_cache(maxsize=None)
def _coset_reps(par: Parabolic) -> tuple:
    return tuple(w for w in weyl_group(par.rs)
                 if not any(w.right_descent(i) for i in par.simple))


def apply(w: WeylElement, obj):
    """Act by ``w`` on a coordinate vector or on a polynomial in the coordinates."""
    if isinstance(obj, (tuple, list)):
        return w.apply_vector(obj)
    return obj.act(w)


_PERM_RE = re.compile(r"^\[\s*-?\d+(\s*,\s*-?\d+)*\s*\]$")


def parse_element(rs: RootSystem, text: str) -> WeylElement:
    """Parse ``"[2,-1,3]"`` (one-line) or ``"s2 s1"`` / ``"e"`` (word)."""
    text = text.strip()
    if _PERM_RE.match(text):
        images = tuple(int(t) for t in text.strip("[] ").split(","))
        if len(images) != rs.coord_dim:
            raise RankMismatch(f"{text} has {len(images)} entries, expected {rs.coord_dim}")
        try:
            return WeylElement(images, rs.family, rs.rank)
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    return element_from_word(rs, parse_word(text))


def parse_word(text: str) -> tuple:
    text = text.strip()
    if text in ("", "e", "id"):
        return ()
    word = []
    for tok in text.replace("*", " ").split():
        m = re.fullmatch(r"s(\d+)", tok)
        if not m:
            raise ParseError(f"bad reflection token {tok!r}")
        word.append(int(m.group(1)))
    return tuple(word)


def parse_parabolic(rs: RootSystem, spec: str) -> Parabolic:
    """``borel`` | ``full`` | ``maximal:r`` | ``levi:1,3``."""
    spec = spec.strip().lower()
    if spec == "borel":
        return Parabolic.borel(rs)
    if spec == "full":
        return Parabolic.full(rs)
    try:
        if spec.startswith("maximal:"):
            return Parabolic.maximal(rs, int(spec.split(":", 1)[1]))
        if spec.startswith("levi:"):
            body = spec.split(":", 1)[1].strip()
            idx = frozenset(int(t) for t in body.split(",") if t.strip()) if body else frozenset()
            return Parabolic(rs, idx)
    except ValueError as exc:
        raise ParseError(f"bad parabolic spec {spec!r}") from exc
    raise ParseError(f"bad parabolic spec {spec!r}")


@lru_cache(maxsize=None)
def _element_index(rs: RootSystem) -> dict:
    return {w.images: w for w in weyl_group(rs)}


def canonical(w: WeylElement) -> WeylElement:
    """The interned instance of ``w`` (its length and reduced word are cached)."""
    return _element_index(w.root_system)[w.images]


@lru_cache(maxsize=None)
def positive_root_reflections(rs: RootSystem) -> tuple:
    """Pairs (beta, s_beta) over the positive roots."""
    return tuple((b, canonical(root_reflection(rs, b))) for b in rs.positive_roots)
