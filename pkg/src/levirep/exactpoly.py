"""Exact sparse polynomials and Laurent polynomials over the rationals.

Coefficients are ``int`` when integral and ``Fraction`` otherwise; nothing
is ever rounded.  Terms are keyed by exponent tuples and printed in graded
lexicographic order (highest first).

The Cayley rewriting expresses a Laurent polynomial in the variables
s_i = t_i - t_i^{-1}: every Laurent polynomial is uniquely
``A(s) + sum_K (prod_{i in K} t_i) * B_K(s)`` over nonempty index sets K,
because t^2 = s*t + 1 and t^{-1} = t - s.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from operator import add
from typing import Iterable, Mapping, Sequence

from .errors import BadIndex, ParseError, RankMismatch, VariableCountMismatch


def norm_coeff(c):
    if isinstance(c, bool):
        raise TypeError("boolean coefficient")
    if isinstance(c, int):
        return c
    if isinstance(c, Fraction):
        return c.numerator if c.denominator == 1 else c
    if isinstance(c, str):
        return norm_coeff(Fraction(c))
    raise TypeError(f"inexact coefficient {c!r}")


def format_coeff(c) -> str:
    return str(c)


class _Poly:
    """Shared machinery; use :class:`ExactPoly` or :class:`LaurentPoly`."""

    __slots__ = ("terms", "nvars", "var", "_hash")
    allow_negative = True
    default_var = "t"

    def __init__(self, terms: Mapping | None = None, nvars: int = 0, var: str | None = None):
        self.nvars = nvars
        self.var = var or self.default_var
        clean = {}
        if terms:
            for e, c in terms.items():
                c = norm_coeff(c)
                if not c:
                    continue
                e = tuple(e)
                if len(e) != nvars:
                    raise VariableCountMismatch(f"exponent {e} for {nvars} variables")
                if not self.allow_negative and any(a < 0 for a in e):
                    raise ValueError(f"negative exponent {e} in a polynomial")
                clean[e] = c
        self.terms = clean
        self._hash = None

    # construction -------------------------------------------------------
    @classmethod
    def _raw(cls, terms: dict, nvars: int, var: str):
        obj = cls.__new__(cls)
        obj.terms = terms
        obj.nvars = nvars
        obj.var = var
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, nvars: int, var: str | None = None):
        return cls({}, nvars, var)

    @classmethod
    def constant(cls, c, nvars: int, var: str | None = None):
        return cls({(0,) * nvars: c}, nvars, var)

    @classmethod
    def variable(cls, i: int, nvars: int, var: str | None = None, power: int = 1):
        if not 1 <= i <= nvars:
            raise BadIndex(f"variable index {i} outside 1..{nvars}")
        e = [0] * nvars
        e[i - 1] = power
        return cls({tuple(e): 1}, nvars, var)

    @classmethod
    def monomial(cls, exps: Sequence[int], coeff=1, var: str | None = None):
        return cls({tuple(exps): coeff}, len(exps), var)

    @classmethod
    def linear(cls, coeffs: Sequence, var: str | None = None):
        n = len(coeffs)
        return cls({tuple(1 if k == i else 0 for k in range(n)): c for i, c in enumerate(coeffs)}, n, var)

    def _like(self, terms: dict):
        return type(self)._raw(terms, self.nvars, self.var)

    # arithmetic ---------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, _Poly):
            if type(other) is not type(self):
                raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
            if other.nvars != self.nvars:
                raise VariableCountMismatch(f"{self.nvars} vs {other.nvars} variables")
            return other
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return type(self).constant(other, self.nvars, self.var)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = norm_coeff(v)
            else:
                out.pop(e, None)
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = norm_coeff(c)
        if not c:
            return self._like({})
        return self._like({e: norm_coeff(v * c) for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: dict = {}
        get = out.get
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(map(add, e1, e2))
                out[e] = get(e, 0) + c1 * c2
        return self._like({e: norm_coeff(c) for e, c in out.items() if c})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self.scale(Fraction(1) / Fraction(other))
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            if not self.allow_negative:
                raise ValueError("negative power of a polynomial variable")
            if len(self.terms) != 1:
                raise ValueError("only monomials can be inverted")
            (e, c), = self.terms.items()
            return self._like({tuple(a * k for a in e): norm_coeff(1 / Fraction(c) ** (-k))})
        result = type(self).constant(1, self.nvars, self.var)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, _Poly):
            return (type(self) is type(other) and self.nvars == other.nvars
                    and self.terms == other.terms)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = norm_coeff(other)
            if not other:
                return not self.terms
            return self.terms == {(0,) * self.nvars: other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.nvars, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # inspection ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, 0)

    def coefficient(self, exps: Sequence[int]):
        return self.terms.get(tuple(exps), 0)

    def homogeneous_components(self) -> dict:
        parts: dict = {}
        for e, c in self.terms.items():
            parts.setdefault(sum(e), {})[e] = c
        return {d: self._like(t) for d, t in sorted(parts.items())}

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def variables_used(self) -> set:
        return {i + 1 for e in self.terms for i, a in enumerate(e) if a}

    def sorted_terms(self) -> list:
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]), reverse=True)

    def leading_term(self):
        return self.sorted_terms()[0] if self.terms else None

    # transformations ----------------------------------------------------
    def substitute(self, images: Sequence):
        """Replace variable i by ``images[i-1]`` (polynomials or scalars)."""
        if len(images) != self.nvars:
            raise VariableCountMismatch(f"{len(images)} images for {self.nvars} variables")
        proto = next((im for im in images if isinstance(im, _Poly)), None)
        if proto is None:
            raise TypeError("substitute needs at least one polynomial image")
        imgs = [im if isinstance(im, _Poly) else type(proto).constant(im, proto.nvars, proto.var)
                for im in images]
        powers: dict = {}

        def power(i, a):
            key = (i, a)
            if key not in powers:
                powers[key] = imgs[i] ** a
            return powers[key]

        result = type(proto).zero(proto.nvars, proto.var)
        acc: dict = {}
        for e, c in self.terms.items():
            term = type(proto).constant(c, proto.nvars, proto.var)
            for i, a in enumerate(e):
                if a:
                    term = term * power(i, a)
            for k, v in term.terms.items():
                acc[k] = acc.get(k, 0) + v
        result.terms = {k: norm_coeff(v) for k, v in acc.items() if v}
        return result

    def rename(self, var: str):
        return type(self)._raw(dict(self.terms), self.nvars, var)

    def extend(self, nvars: int, positions: Sequence[int] | None = None):
        """Embed into ``nvars`` variables; variable i goes to ``positions[i-1]``."""
        positions = list(positions) if positions is not None else list(range(1, self.nvars + 1))
        out = {}
        for e, c in self.terms.items():
            ne = [0] * nvars
            for a, p in zip(e, positions):
                ne[p - 1] += a
            out[tuple(ne)] = c
        return type(self)._raw(out, nvars, self.var)

    def act(self, w):
        raise NotImplementedError

    def _check_action(self, w):
        if len(w.images) != self.nvars:
            raise RankMismatch(f"{w.family}{w.rank} acts on {len(w.images)} coordinates, "
                               f"polynomial has {self.nvars}")

    # text ---------------------------------------------------------------
    def _monomial_str(self, e) -> str:
        parts = []
        for i, a in enumerate(e, start=1):
            if a == 1:
                parts.append(f"{self.var}{i}")
            elif a:
                parts.append(f"{self.var}{i}^{a}")
        return "*".join(parts)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        out = []
        for idx, (e, c) in enumerate(self.sorted_terms()):
            mono = self._monomial_str(e)
            neg = c < 0
            mag = -c if neg else c
            if mono:
                body = mono if mag == 1 else f"{format_coeff(mag)}*{mono}"
            else:
                body = format_coeff(mag)
            if idx == 0:
                out.append(f"-{body}" if neg else body)
            else:
                out.append(f" - {body}" if neg else f" + {body}")
        return "".join(out)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r}, nvars={self.nvars})"

    @classmethod
    def parse(cls, text: str, nvars: int | None = None, var: str | None = None):
        var = var or cls.default_var
        return _Parser(text, cls, var, nvars).parse()


class ExactPoly(_Poly):
    """Polynomial with nonnegative exponents (Lie-algebra coordinates x_i)."""

    __slots__ = ()
    allow_negative = False
    default_var = "x"

    def act(self, w):
        """x_i -> sign * x_|w(i)|."""
        self._check_action(w)
        imgs = w.images
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            sign = 1
            for i, a in enumerate(e):
                if a:
                    j = imgs[i]
                    ne[abs(j) - 1] = a
                    if j < 0 and a & 1:
                        sign = -sign
            out[tuple(ne)] = c * sign
        return self._like(out)


class LaurentPoly(_Poly):
    """Laurent polynomial in torus coordinates t_i."""

    __slots__ = ()
    allow_negative = True
    default_var = "t"

    def act(self, w):
        """t_i -> t_|w(i)|^{sign w(i)}."""
        self._check_action(w)
        imgs = w.images
        out = {}
        for e, c in self.terms.items():
            ne = [0] * self.nvars
            for i, a in enumerate(e):
                j = imgs[i]
                ne[abs(j) - 1] = a if j > 0 else -a
            out[tuple(ne)] = c
        return self._like(out)

    def scale_exponents(self, k: int):
        out: dict = {}
        for e, c in self.terms.items():
            ne = tuple(a * k for a in e)
            out[ne] = out.get(ne, 0) + c
        return self._like({e: c for e, c in out.items() if c})

    def has_negative_exponent(self) -> bool:
        return any(a < 0 for e in self.terms for a in e)

    def to_exact(self, var: str = "x") -> ExactPoly:
        if self.has_negative_exponent():
            raise ValueError("negative exponent; not a polynomial")
        return ExactPoly._raw(dict(self.terms), self.nvars, var)

    @classmethod
    def from_exact(cls, p: ExactPoly, var: str = "t") -> LaurentPoly:
        return cls._raw(dict(p.terms), p.nvars, var)


def is_invariant(f: _Poly, group: Iterable) -> bool:
    """True iff every listed Weyl element fixes ``f``."""
    return all(f.act(w) == f for w in group)


def elementary_symmetric(k: int, variables: Sequence[int], nvars: int, var: str = "x") -> ExactPoly:
    """e_k of the listed (1-based) variables, as a polynomial in ``nvars`` variables."""
    variables = list(variables)
    if not 0 <= k <= len(variables):
        raise BadIndex(f"e_{k} of {len(variables)} variables")
    if any(not 1 <= v <= nvars for v in variables):
        raise BadIndex(f"variable outside 1..{nvars}")
    terms = {}
    for combo in combinations(variables, k):
        e = [0] * nvars
        for v in combo:
            e[v - 1] += 1
        e = tuple(e)
        terms[e] = terms.get(e, 0) + 1
    return ExactPoly(terms, nvars, var)


def power_sum(k: int, variables: Sequence[int], nvars: int, var: str = "x") -> ExactPoly:
    terms = {}
    for v in variables:
        e = [0] * nvars
        e[v - 1] = k
        terms[tuple(e)] = terms.get(tuple(e), 0) + 1
    return ExactPoly(terms, nvars, var)


# --- Cayley coordinates ----------------------------------------------------

@lru_cache(maxsize=None)
def _cayley_power(a: int) -> tuple:
    """t^a = p(s) + t*q(s); returns (p, q) as tuples of coefficients in s."""
    p, q = (1,), ()
    if a >= 0:
        for _ in range(a):
            # t*(p + t q) = q + t*(p + s q)
            p, q = q, _padd(p, _shift(q))
    else:
        for _ in range(-a):
            # t^{-1}*(p + t q) = (q - s p) + t*p
            p, q = _padd(q, _pneg(_shift(p))), p
    return p, q


def _shift(p):
    return (0,) + tuple(p) if p else ()


def _pneg(p):
    return tuple(-c for c in p)


def _padd(p, q):
    n = max(len(p), len(q))
    out = [(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass
class CayleyDecomposition:
    """``principal(s) + sum_K (prod_{i in K} t_i) * residual[K](s)``."""

    principal: ExactPoly
    residual: dict = field(default_factory=dict)

    @property
    def nvars(self) -> int:
        return self.principal.nvars

    def is_polynomial_in_s(self) -> bool:
        return not self.residual

    def reassemble(self) -> LaurentPoly:
        n = self.nvars
        svals = [LaurentPoly({_e(n, i, 1): 1, _e(n, i, -1): -1}, n) for i in range(n)]
        total = self.principal.substitute(svals) if self.principal else LaurentPoly.zero(n)
        for subset, b in self.residual.items():
            mono = LaurentPoly.monomial([1 if i + 1 in subset else 0 for i in range(n)])
            total = total + mono * b.substitute(svals)
        return total

    def witness(self) -> str | None:
        """Leading residual term rendered as ``c·t_K·s^m`` (None for members)."""
        if not self.residual:
            return None
        subset = min(self.residual, key=lambda k: (len(k), sorted(k)))
        e, c = self.residual[subset].leading_term()
        factors = [f"t{i}" for i in sorted(subset)]
        factors += [f"s{i}" if a == 1 else f"s{i}^{a}" for i, a in enumerate(e, start=1) if a]
        return f"{c}·" + "*".join(factors)


def _e(n, i, a):
    return tuple(a if k == i else 0 for k in range(n))


def cayley_rewrite(f: LaurentPoly, check: bool = False) -> CayleyDecomposition:
    """Rewrite ``f`` in the Cayley coordinates s_i = t_i - t_i^{-1}."""
    n = f.nvars
    state: dict = {(0, e): c for e, c in f.terms.items()}
    for k in range(n):
        bit = 1 << k
        new: dict = {}
        get = new.get
        for (mask, e), c in state.items():
            p, q = _cayley_power(e[k])
            head, tail = e[:k], e[k + 1:]
            for j, pc in enumerate(p):
                if pc:
                    key = (mask, head + (j,) + tail)
                    new[key] = get(key, 0) + c * pc
            if q:
                m2 = mask | bit
                for j, qc in enumerate(q):
                    if qc:
                        key = (m2, head + (j,) + tail)
                        new[key] = get(key, 0) + c * qc
        state = {key: v for key, v in new.items() if v}
    buckets: dict = {}
    for (mask, e), c in state.items():
        buckets.setdefault(mask, {})[e] = c
    principal = ExactPoly(buckets.pop(0, {}), n, "s")
    residual = {}
    for mask in sorted(buckets):
        subset = frozenset(i + 1 for i in range(n) if mask >> i & 1)
        residual[subset] = ExactPoly(buckets[mask], n, "s")
    decomp = CayleyDecomposition(principal, residual)
    if check and decomp.reassemble() != f:
        raise AssertionError("Cayley reassembly mismatch")
    return decomp


def cayley_variables(n: int, scale=1) -> list:
    """Laurent images ``scale * (t_i - t_i^{-1})`` for substitution."""
    return [LaurentPoly({_e(n, i, 1): scale, _e(n, i, -1): -scale}, n) for i in range(n)]


# --- exact linear algebra --------------------------------------------------

def solve_linear(matrix: Sequence[Sequence], rhs: Sequence):
    """Solve ``matrix @ x = rhs`` exactly; rhs entries may be polynomials.

    Returns one solution (free variables set to zero) or ``None`` if the
    system is inconsistent.  ``matrix`` must hold rationals.
    """
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    a = [[Fraction(v) for v in row] for row in matrix]
    b = list(rhs)
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        b[r], b[piv] = b[piv], b[r]
        inv = 1 / a[r][c]
        a[r] = [v * inv for v in a[r]]
        b[r] = b[r] * inv
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [vi - f * vr for vi, vr in zip(a[i], a[r])]
                b[i] = b[i] - b[r] * f
        pivots.append(c)
        r += 1
        if r == rows:
            break
    for i in range(r, rows):
        if b[i] != 0:
            return None
    zero = b[0] * 0 if b else 0
    x = [zero] * cols
    for i, c in enumerate(pivots):
        x[c] = b[i]
    return x


def matrix_rank(matrix: Sequence[Sequence]) -> int:
    rows = [[Fraction(v) for v in row] for row in matrix]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][c] != 0:
                f = rows[i][c] / rows[rank][c]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[rank])]
        rank += 1
    return rank


# --- parsing ---------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>[A-Za-z]+)(?P<idx>\d+)|(?P<op>\*\*|[-+*/^()·]))")


class _Parser:
    def __init__(self, text: str, cls, var: str, nvars: int | None):
        self.text = text
        self.cls = cls
        self.var = var
        self.tokens = self._tokenize(text)
        self.pos = 0
        top = max((int(v[1]) for kind, v in self.tokens if kind == "var"), default=0)
        if nvars is not None and top > nvars:
            raise ParseError(f"variable {var}{top} exceeds {nvars} variables")
        self.nvars = nvars if nvars is not None else max(top, 1)

    def _tokenize(self, text):
        out = []
        pos = 0
        text = text.strip()
        if not text:
            raise ParseError("empty polynomial")
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected input at {text[pos:]!r}")
            pos = m.end()
            if m.group("num") is not None:
                out.append(("num", int(m.group("num"))))
            elif m.group("var") is not None:
                if m.group("var") != self.var:
                    raise ParseError(f"unknown variable {m.group('var')}{m.group('idx')}; expected {self.var}i")
                out.append(("var", (m.group("var"), m.group("idx"))))
            else:
                op = m.group("op")
                out.append(("op", {"**": "^", "·": "*"}.get(op, op)))
            # allow trailing whitespace
            while pos < len(text) and text[pos].isspace():
                pos += 1
        return out

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}")

    def parse(self):
        result = self.expr()
        if self.pos != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return result

    def expr(self):
        value = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                value = value + rhs if val == "+" else value - rhs
            else:
                return value

    def term(self):
        value = self.unary()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.take()
                rhs = self.unary()
                if val == "*":
                    value = value * rhs
                else:
                    if len(rhs.terms) != 1 or any(any(e) for e in rhs.terms):
                        raise ParseError("division only by nonzero constants")
                    value = value / Fraction(rhs.constant_term())
            else:
                return value

    def unary(self):
        kind, val = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            inner = self.unary()
            return -inner if val == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            sign = 1
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                sign = -1 if val == "-" else 1
            kind, val = self.take()
            if kind != "num":
                raise ParseError("exponent must be an integer")
            try:
                return base ** (sign * val)
            except ValueError as exc:
                raise ParseError(str(exc)) from exc
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.cls.constant(val, self.nvars, self.var)
        if kind == "var":
            idx = int(val[1])
            if idx < 1:
                raise ParseError("variables are 1-indexed")
            return self.cls.variable(idx, self.nvars, self.var)
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        if val is None:
            raise ParseError(f"unexpected end of input in {self.text!r}")
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")
