"""Characters of classical groups and of their Levi subgroups.

Weights are integer coordinate vectors: type A uses GL coordinates, types
B/C/D use the SO/Sp lattice (spin weights are rejected).  Characters are
Laurent polynomials in the torus coordinates t_i.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import permutations, product
from math import comb, prod
from typing import Mapping, Sequence

from .errors import (DegenerateForm, NonTerminating, NotDominant, NotInGroup,
                     NotInLattice, NotLeviInvariant, RankMismatch)
from .exactpoly import (ExactPoly, LaurentPoly, cayley_rewrite, cayley_variables,
                        is_invariant, matrix_rank, norm_coeff, solve_linear)
from .rootdata import Parabolic, RootSystem, build_root_system, dot


# --- weight systems --------------------------------------------------------

@dataclass(frozen=True)
class WeightSystem:
    rs: RootSystem
    highest: tuple
    multiplicities: Mapping = field(repr=False)

    @property
    def dimension(self) -> int:
        return sum(self.multiplicities.values())

    def dominant_multiplicities(self) -> dict:
        return {mu: m for mu, m in self.multiplicities.items() if self.rs.is_dominant(mu)}


def _integral_weight(rs: RootSystem, weight: Sequence) -> tuple:
    if len(weight) != rs.coord_dim:
        raise RankMismatch(f"weight of length {len(weight)} for {rs.name}")
    w = [Fraction(c) for c in weight]
    if any(c.denominator != 1 for c in w):
        raise NotInLattice(f"{weight} is not an integral (non-spin) weight of {rs.name}")
    return tuple(int(c) for c in w)


def _orbit(rs: RootSystem, mu: tuple) -> set:
    if rs.family == "A":
        return set(permutations(mu))
    n = rs.rank
    absvals = tuple(abs(c) for c in mu)
    all_nonzero = all(absvals)
    parity = sum(1 for c in mu if c < 0) % 2
    out = set()
    for perm in set(permutations(absvals)):
        nz = [i for i, v in enumerate(perm) if v]
        for signs in product((1, -1), repeat=len(nz)):
            if rs.family == "D" and all_nonzero and signs.count(-1) % 2 != parity:
                continue
            v = list(perm)
            for i, s in zip(nz, signs):
                v[i] *= s
            out.add(tuple(v))
    assert all(len(v) == n for v in out)
    return out


def weyl_dimension(rs: RootSystem, weight: Sequence) -> Fraction:
    num = Fraction(1)
    for a in rs.positive_roots:
        num *= dot([Fraction(c) + r for c, r in zip(weight, rs.rho)], a) / dot(rs.rho, a)
    return num


_ws_lock = threading.Lock()


@lru_cache(maxsize=None)
def _freudenthal(rs: RootSystem, lam: tuple) -> dict:
    roots = [tuple(int(c) for c in a) for a in rs.positive_roots]
    rho2 = tuple(2 * r for r in rs.rho)  # 2*rho is integral

    def norm_shift(mu):
        # |2mu + 2rho|^2 = 4 |mu + rho|^2, kept integral
        return sum((2 * m + r) ** 2 for m, r in zip(mu, rho2))

    dominant = {lam}
    frontier = [lam]
    while frontier:
        nxt = []
        for mu in frontier:
            for a in roots:
                nu = tuple(m - c for m, c in zip(mu, a))
                if nu not in dominant and rs.is_dominant(nu):
                    dominant.add(nu)
                    nxt.append(nu)
        frontier = nxt
    order = sorted(dominant, key=lambda mu: (-norm_shift(mu), mu), reverse=False)
    top = norm_shift(lam)
    mult = {lam: 1}
    for mu in order[1:]:
        acc = 0
        for a in roots:
            k = 1
            while True:
                nu = tuple(m + k * c for m, c in zip(mu, a))
                rep = tuple(int(c) for c in rs.dominant_representative(nu))
                if rep not in dominant:
                    break
                acc += mult[rep] * sum(x * y for x, y in zip(nu, a))
                k += 1
        denom = top - norm_shift(mu)
        value = Fraction(8 * acc, denom)
        if value.denominator != 1 or value < 0:
            raise ArithmeticError(f"Freudenthal produced {value} at {mu}")
        mult[mu] = int(value)
    return {mu: m for mu, m in mult.items() if m}


def weight_system(rs: RootSystem, weight: Sequence) -> WeightSystem:
    """All weights of V(weight) with multiplicities (Freudenthal recursion)."""
    lam = _integral_weight(rs, weight)
    coeffs = rs.fundamental_coefficients(lam)
    if any(c < 0 for c in coeffs):
        raise NotDominant(f"{weight} is not dominant for {rs.name}")
    if any(Fraction(c).denominator != 1 for c in coeffs):
        raise NotInLattice(f"{weight} is not in the weight lattice of {rs.name}")
    with _ws_lock:
        dom = _freudenthal(rs, lam)
    mults = {}
    for mu, m in dom.items():
        for nu in _orbit(rs, mu):
            mults[nu] = m
    ws = WeightSystem(rs, lam, mults)
    expected = weyl_dimension(rs, lam)
    if ws.dimension != expected:
        raise ArithmeticError(f"dimension {ws.dimension} != Weyl dimension {expected}")
    return ws


def weight_system_fundamental(rs: RootSystem, coeffs: Sequence) -> WeightSystem:
    return weight_system(rs, rs.weight_from_fundamental(coeffs))


# --- characters ------------------------------------------------------------

class Character:
    """W_L-invariant Laurent polynomial tagged with its group (G or a Levi)."""

    __slots__ = ("group", "poly")

    def __init__(self, group: Parabolic | RootSystem, poly: LaurentPoly, *, check: bool = True):
        if isinstance(group, RootSystem):
            group = Parabolic.full(group)
        if poly.nvars != group.rs.coord_dim:
            raise RankMismatch(f"character in {poly.nvars} variables for {group.rs.name}")
        if check and not is_invariant(poly, group.generators()):
            raise NotLeviInvariant(f"{poly} is not W_L-invariant for {group.label()}")
        self.group = group
        self.poly = poly

    @classmethod
    def parse(cls, group: Parabolic | RootSystem, text: str) -> Character:
        rs = group.rs if isinstance(group, Parabolic) else group
        return cls(group, LaurentPoly.parse(text, rs.coord_dim))

    @classmethod
    def constant(cls, group, c) -> Character:
        rs = group.rs if isinstance(group, Parabolic) else group
        return cls(group, LaurentPoly.constant(c, rs.coord_dim), check=False)

    @property
    def rs(self) -> RootSystem:
        return self.group.rs

    @property
    def is_polynomial(self) -> bool:
        return not self.poly.has_negative_exponent()

    @property
    def is_effective(self) -> bool:
        return all(isinstance(c, int) and c >= 0 for c in self.poly.terms.values())

    @property
    def dimension(self):
        return sum(self.poly.terms.values())

    def _other(self, other) -> LaurentPoly:
        if isinstance(other, Character):
            if other.group != self.group:
                raise RankMismatch("characters of different groups")
            return other.poly
        return other

    def __add__(self, other):
        return Character(self.group, self.poly + self._other(other), check=False)

    __radd__ = __add__

    def __sub__(self, other):
        return Character(self.group, self.poly - self._other(other), check=False)

    def __rsub__(self, other):
        return Character(self.group, other - self.poly, check=False)

    def __neg__(self):
        return Character(self.group, -self.poly, check=False)

    def __mul__(self, other):
        return Character(self.group, self.poly * self._other(other), check=False)

    __rmul__ = __mul__

    def __truediv__(self, c):
        return Character(self.group, self.poly / c, check=False)

    def __pow__(self, k: int):
        return Character(self.group, self.poly ** k, check=False)

    def __eq__(self, other):
        if isinstance(other, Character):
            return self.group == other.group and self.poly == other.poly
        return self.poly == other

    def __hash__(self):
        return hash((self.group, self.poly))

    def __bool__(self):
        return bool(self.poly)

    def __str__(self):
        return str(self.poly)

    def __repr__(self):
        return f"Character({self.rs.name}, {self.group.label()}, {str(self.poly)!r})"

    def restrict(self, smaller: Parabolic) -> Character:
        """Restriction to a smaller Levi: same torus function, smaller group."""
        if not self.group.contains(smaller):
            raise RankMismatch(f"{smaller.label()} is not inside {self.group.label()}")
        return Character(smaller, self.poly, check=False)


def character(ws: WeightSystem) -> Character:
    n = ws.rs.coord_dim
    poly = LaurentPoly({mu: m for mu, m in ws.multiplicities.items()}, n)
    return Character(Parabolic.full(ws.rs), poly, check=False)


@lru_cache(maxsize=None)
def irreducible_character(rs: RootSystem, weight: tuple) -> Character:
    return character(weight_system(rs, weight))


def tensor_decompose(rs: RootSystem, lam: Sequence, mu: Sequence) -> dict:
    """Multiplicities of V(nu) in V(lam) (x) V(mu), by peeling leading weights."""
    lam = _integral_weight(rs, lam)
    mu = _integral_weight(rs, mu)
    rest = (irreducible_character(rs, lam) * irreducible_character(rs, mu)).poly
    rho2 = [2 * r for r in rs.rho]
    out: dict = {}
    guard = sum(abs(c) for c in rest.terms.values()) + 1
    while rest:
        guard -= 1
        if guard < 0:
            raise NonTerminating("tensor decomposition failed to terminate")
        dom = [e for e in rest.terms if rs.is_dominant(e)]
        if not dom:
            raise NonTerminating(f"remainder {rest} has no dominant weight")
        lead = max(dom, key=lambda e: (sum((2 * a + r) ** 2 for a, r in zip(e, rho2)), e))
        m = rest.terms[lead]
        if not isinstance(m, int) or m <= 0:
            raise NonTerminating(f"non-positive leading multiplicity {m} at {lead}")
        out[lead] = out.get(lead, 0) + m
        size = len(rest.terms)
        rest = rest - irreducible_character(rs, lead).poly.scale(m)
        if rest and len(rest.terms) > size + len(irreducible_character(rs, lead).poly.terms):
            raise NonTerminating("remainder is not shrinking")
    return dict(sorted(out.items(), reverse=True))


# --- lambda-ring structure -------------------------------------------------

def adams(k: int, chi: Character) -> Character:
    """psi^k: t^mu -> t^{k mu}."""
    if k < 1:
        raise ValueError("Adams operations need k >= 1")
    return Character(chi.group, chi.poly.scale_exponents(k), check=False)


def lambda_series(chi: Character, degree: int) -> list:
    """[lambda^0(chi), ..., lambda^degree(chi)] from prod_mu (1 + t^mu q)^{m_mu}.

    Negative multiplicities use the binomial series, which is the truncated
    quotient lambda(chi_+) / lambda(chi_-).
    """
    n = chi.poly.nvars
    series = [LaurentPoly.constant(1, n)] + [LaurentPoly.zero(n) for _ in range(degree)]
    for mu, m in chi.poly.terms.items():
        factor = [LaurentPoly.constant(_binomial(m, k), n) * LaurentPoly.monomial(
            tuple(k * a for a in mu)) for k in range(degree + 1)]
        new = []
        for d in range(degree + 1):
            acc = LaurentPoly.zero(n)
            for k in range(d + 1):
                if factor[k] and series[d - k]:
                    acc = acc + factor[k] * series[d - k]
            new.append(acc)
        series = new
    return [Character(chi.group, s, check=False) for s in series]


def _binomial(m, k: int):
    if isinstance(m, int) and m >= 0:
        return comb(m, k)
    num = Fraction(1)
    for j in range(k):
        num *= Fraction(m) - j
    return norm_coeff(num / prod(range(1, k + 1)))


def lambda_op(d: int, chi: Character) -> Character:
    if d < 0:
        raise ValueError("lambda^d needs d >= 0")
    return lambda_series(chi, d)[d]


def sym2_alt2(chi: Character) -> tuple:
    """(S^2 chi, Lambda^2 chi) = ((chi^2 + psi^2 chi)/2, (chi^2 - psi^2 chi)/2)."""
    sq = chi * chi
    p2 = adams(2, chi)
    return (sq + p2) / 2, (sq - p2) / 2


# --- membership in the omega_1-polynomial subring --------------------------

@dataclass
class MembershipResult:
    """Outcome of the polynomiality test.

    ``preimage`` is the polynomial in the Lie-algebra coordinates x_i whose
    pull-back along the Springer map is the character.  ``P_f`` and ``Q_f``
    present it in squares y_k = x_k^2 on the classical block ``block`` of the
    Levi (for a type-D block, preimage = P_f + prod_block x_k * Q_f); outside
    that block the variables stay linear.
    """

    member: bool
    preimage: ExactPoly | None = None
    P_f: ExactPoly | None = None
    Q_f: ExactPoly | None = None
    block: tuple = ()
    witness: str | None = None
    integral: bool = True
    family: str = ""

    def reassemble(self) -> LaurentPoly:
        """Substitute the Springer coordinates back into P_f (and Q_f)."""
        if not self.member:
            raise ValueError("non-members have no preimage")
        if self.family == "A":
            return LaurentPoly.from_exact(self.P_f)
        n = self.P_f.nvars
        half = cayley_variables(n, Fraction(1, 2))
        images = [half[k] * half[k] if k + 1 in self.block else half[k] for k in range(n)]
        total = self.P_f.substitute(images)
        if self.Q_f is not None:
            block_prod = LaurentPoly.constant(1, n)
            for k in self.block:
                block_prod = block_prod * half[k - 1]
            total = total + block_prod * self.Q_f.substitute(images)
        return total

    def to_json(self) -> dict:
        return {
            "member": self.member,
            "P_f": None if self.P_f is None else str(self.P_f),
            "Q_f": None if self.Q_f is None else str(self.Q_f),
            "witness": self.witness,
            "block": list(self.block),
            "integral": self.integral,
        }


def classical_block(par: Parabolic) -> tuple:
    """Indices of the B/C/D factor of the Levi (empty if the Levi has none)."""
    rs, S = par.rs, par.simple
    n = rs.rank
    if rs.family in "BC":
        if n not in S:
            return ()
        k = n
        while k - 1 in S:
            k -= 1
        return tuple(range(k, n + 1))
    if rs.family == "D":
        if not {n - 1, n} <= S:
            return ()
        k = n - 1
        while k - 1 in S:
            k -= 1
        return tuple(range(k, n + 1))
    return ()


def _split_block(pre: ExactPoly, block: tuple, family: str):
    """Write ``pre`` as P(x_K^2) [+ prod x_K * Q(x_K^2)] on the block K."""
    idx = [k - 1 for k in block]
    even, odd = {}, {}
    for e, c in pre.terms.items():
        parities = {e[i] % 2 for i in idx}
        if parities == {0}:
            ne = list(e)
            for i in idx:
                ne[i] //= 2
            even[tuple(ne)] = c
        elif parities == {1} and family == "D":
            ne = list(e)
            for i in idx:
                ne[i] = (ne[i] - 1) // 2
            odd[tuple(ne)] = c
        else:
            raise AssertionError(f"monomial {e} breaks the block structure; input not W_L-invariant?")
    P = ExactPoly(even, pre.nvars, "x")
    Q = ExactPoly(odd, pre.nvars, "x") if family == "D" else None
    return P, Q


def poly_membership(chi: Character) -> MembershipResult:
    """Decide whether ``chi`` is an omega_1-polynomial character of its Levi."""
    group = chi.group
    if not is_invariant(chi.poly, group.generators()):
        raise NotLeviInvariant(f"{chi.poly} is not W_L-invariant for {group.label()}")
    integral = all(isinstance(c, int) for c in chi.poly.terms.values())
    if chi.rs.family == "A":
        bad = [e for e in chi.poly.terms if any(a < 0 for a in e)]
        if bad:
            e = max(bad)
            mono = LaurentPoly({e: chi.poly.terms[e]}, chi.poly.nvars)
            return MembershipResult(False, witness=str(mono), integral=integral)
        pre = chi.poly.to_exact()
        return MembershipResult(True, pre, pre, None, (), None, integral, "A")
    if not _fixed_by_cayley_involutions(chi.poly):
        decomp = cayley_rewrite(chi.poly)
        return MembershipResult(False, witness=decomp.witness(), integral=integral)
    decomp = cayley_rewrite(chi.poly)
    if decomp.residual:
        raise AssertionError("involution test and Cayley rewrite disagree")
    n = chi.poly.nvars
    pre = decomp.principal.substitute(
        [ExactPoly.variable(i + 1, n).scale(2) for i in range(n)]).rename("x")
    block = classical_block(group)
    if block:
        P, Q = _split_block(pre, block, chi.rs.family)
    else:
        P, Q = pre, None
    return MembershipResult(True, pre, P, Q, block, None, integral, chi.rs.family)


def _fixed_by_cayley_involutions(f: LaurentPoly) -> bool:
    """f lies in Q[s_1..s_n] iff it is fixed by every t_i -> -t_i^{-1}."""
    terms = f.terms
    for i in range(f.nvars):
        for e, c in terms.items():
            a = e[i]
            img = e[:i] + (-a,) + e[i + 1:]
            if terms.get(img, 0) != (-c if a % 2 else c):
                return False
    return True


# --- Springer morphism on the torus ----------------------------------------

def _torus_basis(rs: RootSystem) -> list:
    if rs.family == "A":
        return [list(c) for c in rs.coroots]
    n = rs.coord_dim
    return [[1 if k == j else 0 for k in range(n)] for j in range(n)]


def _torus_monomial(rs: RootSystem, mu: Sequence) -> tuple:
    """Exponents of t^mu.  Type A uses the SL torus t_{n+1} = (t_1...t_n)^{-1}."""
    if rs.family == "A":
        last = mu[-1]
        return tuple(int(m - last) for m in mu[:-1])
    return tuple(int(m) for m in mu)


def springer_torus_general(rs: RootSystem, weight: Sequence) -> list:
    """Coordinates of theta_lambda(t) in the Cartan subalgebra.

    Solves sum_mu m_mu t^mu mu(x) = sum_mu m_mu mu(h) mu(x) for all x (the
    trace-form projection of rho_lambda(t) onto the Cartan subalgebra).  For
    type A the torus is that of SL_{n+1}, in the variables t_1..t_n.
    """
    ws = weight_system(rs, weight)
    basis = _torus_basis(rs)
    k = len(basis)
    nvars = rs.rank if rs.family == "A" else rs.coord_dim
    pair = {mu: [dot(mu, b) for b in basis] for mu in ws.multiplicities}
    gram = [[sum(m * pair[mu][i] * pair[mu][j] for mu, m in ws.multiplicities.items())
             for j in range(k)] for i in range(k)]
    if matrix_rank(gram) < k:
        raise DegenerateForm(f"trace form of V({list(weight)}) is degenerate on the torus")
    rhs = []
    for i in range(k):
        terms: dict = {}
        for mu, m in ws.multiplicities.items():
            c = m * pair[mu][i]
            if c:
                e = _torus_monomial(rs, mu)
                terms[e] = terms.get(e, 0) + c
        rhs.append(LaurentPoly({e: c for e, c in terms.items() if c}, nvars))
    coeffs = solve_linear(gram, rhs)
    coords = []
    for pos in range(rs.coord_dim):
        acc = LaurentPoly.zero(nvars)
        for j, b in enumerate(basis):
            if b[pos]:
                acc = acc + coeffs[j].scale(b[pos])
        coords.append(acc)
    return coords


# --- Cayley transform on matrices ------------------------------------------

def form_matrix(family: str, n: int) -> list:
    """E_B, E_C or E_D for the classical group of rank n."""
    family = family.upper()
    if family == "C":
        size = 2 * n
        E = [[0] * size for _ in range(size)]
        for i in range(n):
            E[i][size - 1 - i] = -1
            E[n + i][n - 1 - i] = 1
        return E
    size = 2 * n + 1 if family == "B" else 2 * n
    if family not in "BD":
        raise ValueError(f"no defining form for family {family}")
    E = [[0] * size for _ in range(size)]
    for i in range(size):
        E[i][size - 1 - i] = 1
    if family == "B":
        E[n][n] = 2
    return E


def _form_inverse(family: str, E: list) -> list:
    size = len(E)
    inv = [[Fraction(0)] * size for _ in range(size)]
    for i in range(size):
        for j in range(size):
            if E[i][j]:
                inv[j][i] = Fraction(1) / E[i][j]
    return inv


def _matmul(A, B, nvars):
    size = len(A)
    out = []
    for i in range(size):
        row = []
        for j in range(len(B[0])):
            acc = LaurentPoly.zero(nvars)
            for k in range(len(B)):
                a, b = A[i][k], B[k][j]
                if not _is_zero(a) and not _is_zero(b):
                    acc = acc + _as_poly(a, nvars) * _as_poly(b, nvars)
            row.append(acc)
        out.append(row)
    return out


def _is_zero(x) -> bool:
    return (not x) if isinstance(x, LaurentPoly) else x == 0


def _as_poly(x, nvars):
    return x if isinstance(x, LaurentPoly) else LaurentPoly.constant(x, nvars)


def _transpose(A):
    return [list(r) for r in zip(*A)]


def torus_point(family: str, n: int) -> list:
    """diag(t_1..t_n, [1,] t_n^{-1}..t_1^{-1}) with symbolic t_i."""
    family = family.upper()
    diag = [LaurentPoly.variable(i, n) for i in range(1, n + 1)]
    inv = [LaurentPoly.variable(i, n, power=-1) for i in range(n, 0, -1)]
    entries = diag + ([LaurentPoly.constant(1, n)] if family == "B" else []) + inv
    size = len(entries)
    return [[entries[i] if i == j else LaurentPoly.zero(n) for j in range(size)] for i in range(size)]


def cayley_transform(g: Sequence[Sequence], family: str) -> list:
    """(g - E^{-1} g^t E) / 2 for g in Sp_2n, SO_2n+1 or SO_2n."""
    family = family.upper()
    size = len(g)
    if family == "B":
        if size % 2 == 0:
            raise NotInGroup("type B needs odd size")
        n = (size - 1) // 2
    else:
        if size % 2:
            raise NotInGroup(f"type {family} needs even size")
        n = size // 2
    nvars = next((x.nvars for row in g for x in row if isinstance(x, LaurentPoly)), 1)
    gp = [[_as_poly(x, nvars) for x in row] for row in g]
    E = form_matrix(family, n)
    Einv = _form_inverse(family, E)
    gt = _transpose(gp)
    if _matmul(_matmul(gt, E, nvars), gp, nvars) != [[_as_poly(x, nvars) for x in row] for row in E]:
        raise NotInGroup("g^t E g != E")
    conj = _matmul(_matmul(Einv, gt, nvars), E, nvars)
    X = [[(gp[i][j] - conj[i][j]) / 2 for j in range(size)] for i in range(size)]
    lhs = _transpose(X)
    rhs = _matmul(_matmul(E, X, nvars), Einv, nvars)
    if lhs != [[-x for x in row] for row in rhs]:
        raise ArithmeticError("Cayley transform left the Lie algebra")
    return X


__all__ = [
    "WeightSystem", "Character", "MembershipResult", "weight_system", "weight_system_fundamental",
    "weyl_dimension", "character", "irreducible_character", "tensor_decompose", "adams",
    "lambda_series", "lambda_op", "sym2_alt2", "poly_membership", "classical_block",
    "springer_torus_general", "cayley_transform", "torus_point", "form_matrix",
    "build_root_system",
]
