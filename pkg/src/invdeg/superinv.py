"""Invariants of the supergroups ``D_{g,x}`` attached to a diagonalizable group ``D``.

The character group ``X`` of ``D`` is ``Z^u x Z/m_1 x ... x Z/m_v`` written
additively. A supermodule ``V`` is given by weights ``h_1..h_s`` in ``X``; its
coordinate superalgebra is generated by even ``f_{j,0}`` and odd ``f_{j,1}``.
Basis monomials ``f_0^l f_1^J`` are indexed by pairs ``(l, J)`` where ``l`` is a
vector of exponents and ``J`` a sorted tuple of odd indices. Indices are
0-based throughout.

A polynomial ``sum a_{l,J} f_0^l f_1^J`` is invariant iff every coefficient on a
pair of nonzero weight vanishes and, for every pair ``(l, J)``,

    sum_{j in J} (-1)^k(j,J) (l_j + 1) x(h_j) a_{l+e_j, J-j}
        + sum_{j not in J} (-1)^k(j,J+j) a_{l-e_j, J+j} = 0

where ``k(j, J)`` counts the elements of ``J`` larger than ``j``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product
from math import gcd, prod
from typing import Iterator, NamedTuple, Sequence

from .diagmin import DiagonalAction, NotFoundUpTo, WeightRow
from .exactalg import QQ, Field, InvDegError, field_from_json, lcm, nullspace
from .poly import exponent_vectors


class UnsupportedQuotient(InvDegError):
    pass


@dataclass(frozen=True)
class CharacterGroup:
    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(m) for m in self.torsion))
        if self.free_rank < 0 or any(m < 2 for m in self.torsion):
            raise InvDegError("free rank must be >= 0 and torsion moduli >= 2")

    @property
    def rank(self) -> int:
        return self.free_rank + len(self.torsion)

    def element(self, v: Sequence[int]) -> tuple[int, ...]:
        if len(v) != self.rank:
            raise InvDegError(f"character {tuple(v)} should have {self.rank} coordinates")
        u = self.free_rank
        return tuple(int(x) for x in v[:u]) + tuple(int(x) % m for x, m in zip(v[u:], self.torsion))

    def zero(self) -> tuple[int, ...]:
        return (0,) * self.rank

    def add(self, a, b) -> tuple[int, ...]:
        return self.element([x + y for x, y in zip(a, b)])

    def scale(self, k: int, a) -> tuple[int, ...]:
        return self.element([k * x for x in a])


class SuperPair(NamedTuple):
    l: tuple[int, ...]
    J: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.l) + len(self.J)


def pair(l: Sequence[int], J: Sequence[int] = ()) -> SuperPair:
    return SuperPair(tuple(l), tuple(sorted(J)))


def pair_key(p: SuperPair):
    """Order: degree, then ``l`` descending lex, then ``J`` ascending lex."""
    return (p.degree, tuple(-x for x in p.l), p.J)


def k_count(j: int, J: Sequence[int]) -> int:
    return sum(1 for t in J if t > j)


@dataclass(frozen=True)
class SuperAction:
    group: CharacterGroup
    g: tuple[int, ...]
    xi: tuple
    weights: tuple[tuple[int, ...], ...]
    field: Field = QQ

    def __post_init__(self):
        X, F = self.group, self.field
        object.__setattr__(self, "g", X.element(self.g))
        object.__setattr__(self, "weights", tuple(X.element(h) for h in self.weights))
        if len(self.xi) != X.free_rank:
            raise InvDegError(f"xi needs {X.free_rank} entries")
        object.__setattr__(self, "xi", tuple(F(x) for x in self.xi))
        if not self.weights:
            raise InvDegError("need at least one weight")
        if any(x != 0 for x in self.xi) and X.scale(2, self.g) != X.zero():
            raise InvDegError("x != 0 requires 2g = 0")
        char = F.characteristic
        if char and any(m % char == 0 for m in X.torsion):
            raise InvDegError(f"torsion modulus divisible by the characteristic {char}")

    @property
    def s(self) -> int:
        return len(self.weights)

    def x(self, h: Sequence[int]):
        """Value of the Lie algebra element on a character (free part only)."""
        F = self.field
        return F(sum(a * b for a, b in zip(self.xi, h[:self.group.free_rank])))

    def to_json(self) -> dict:
        return {"free_rank": self.group.free_rank,
                "torsion": list(self.group.torsion),
                "g": list(self.g),
                "xi": [str(Fraction(x)) for x in self.xi],
                "weights": [list(h) for h in self.weights],
                "field": self.field.to_json()}

    @classmethod
    def from_json(cls, doc) -> "SuperAction":
        try:
            X = CharacterGroup(int(doc["free_rank"]), tuple(doc.get("torsion", ())))
            F = field_from_json(doc.get("field"))
            xi = tuple(Fraction(str(x)) for x in doc.get("xi", ()))
            return cls(X, tuple(doc["g"]), xi, tuple(tuple(h) for h in doc["weights"]), F)
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, InvDegError):
                raise
            raise InvDegError(f"malformed super action: {exc}") from exc


def pair_weight(act: SuperAction, p: SuperPair) -> tuple[int, ...]:
    """``sum l_j h_j + sum_{j in J} h_j + |J| g`` in ``X``."""
    X = act.group
    total = [0] * X.rank
    for j in range(act.s):
        mult = p.l[j] + (1 if j in p.J else 0)
        if mult:
            total = [t + mult * h for t, h in zip(total, act.weights[j])]
    total = [t + len(p.J) * y for t, y in zip(total, act.g)]
    return X.element(total)


def apply_pq(kind: str, j: int, p: SuperPair) -> SuperPair | None:
    """``P_j`` moves index ``j`` from odd to even, ``Q_j`` from even to odd.

    Returns ``None`` where the operator is undefined.
    """
    if kind == "P":
        if j not in p.J:
            return None
        l = list(p.l)
        l[j] += 1
        return SuperPair(tuple(l), tuple(t for t in p.J if t != j))
    if kind == "Q":
        if j in p.J or p.l[j] == 0:
            return None
        l = list(p.l)
        l[j] -= 1
        return SuperPair(tuple(l), tuple(sorted(p.J + (j,))))
    raise ValueError(f"unknown operator {kind!r}")


def canonical_representative(p: SuperPair) -> SuperPair:
    """Class member with the largest odd part, reached by ``Q_j`` for ascending ``j``."""
    for j in range(len(p.l)):
        q = apply_pq("Q", j, p)
        if q is not None:
            p = q
    return p


def equivalence_class(p: SuperPair) -> set[SuperPair]:
    seen = {p}
    stack = [p]
    while stack:
        cur = stack.pop()
        for kind in "PQ":
            for j in range(len(cur.l)):
                nxt = apply_pq(kind, j, cur)
                if nxt is not None and nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
    return seen


def pairs_of_degree(s: int, d: int) -> list[SuperPair]:
    out = [SuperPair(l, J)
           for k in range(min(s, d) + 1)
           for J in combinations(range(s), k)
           for l in exponent_vectors(s, d - k)]
    return sorted(out, key=pair_key)


# ---------------------------------------------------------------------------
# superpolynomials
# ---------------------------------------------------------------------------

def _mul_pairs(a: SuperPair, b: SuperPair) -> tuple[int, SuperPair | None]:
    if set(a.J) & set(b.J):
        return 0, None
    swaps = sum(1 for x in a.J for y in b.J if x > y)
    l = tuple(x + y for x, y in zip(a.l, b.l))
    return (-1) ** swaps, SuperPair(l, tuple(sorted(a.J + b.J)))


class SuperPolynomial:
    """Finite combination of monomials ``f_0^l f_1^J`` with ``f_{j,1}`` odd."""

    __slots__ = ("field", "s", "terms")

    def __init__(self, field: Field, s: int, terms=()):
        self.field = field
        self.s = s
        clean = {}
        for p, c in dict(terms).items():
            c = field(c)
            if c != 0:
                clean[SuperPair(tuple(p[0]), tuple(sorted(p[1])))] = c
        self.terms = clean

    @classmethod
    def one(cls, field, s):
        return cls(field, s, {SuperPair((0,) * s, ()): 1})

    @classmethod
    def even_generator(cls, field, s, j):
        l = [0] * s
        l[j] = 1
        return cls(field, s, {SuperPair(tuple(l), ()): 1})

    @classmethod
    def odd_generator(cls, field, s, j):
        return cls(field, s, {SuperPair((0,) * s, (j,)): 1})

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int:
        parities = {len(p.J) % 2 for p in self.terms}
        if len(parities) > 1:
            raise ValueError("inhomogeneous parity")
        return parities.pop() if parities else 0

    def __add__(self, other):
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, 0) + c
        return SuperPolynomial(self.field, self.s, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return SuperPolynomial(self.field, self.s, {p: c * v for p, v in self.terms.items()})

    def __mul__(self, other):
        out: dict = {}
        for p1, c1 in self.terms.items():
            for p2, c2 in other.terms.items():
                sign, p = _mul_pairs(p1, p2)
                if sign:
                    out[p] = out.get(p, 0) + sign * c1 * c2
        return SuperPolynomial(self.field, self.s, out)

    def __eq__(self, other):
        return (isinstance(other, SuperPolynomial) and self.field == other.field
                and self.s == other.s and self.terms == other.terms)

    def __hash__(self):
        return hash((self.s, frozenset(self.terms.items())))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: pair_key(t[0]))

    def to_json(self):
        return [{"l": list(p.l), "J": list(p.J), "coeff": str(Fraction(c)) if isinstance(c, Fraction) else c}
                for p, c in self.sorted_terms()]

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for p, c in self.sorted_terms():
            f = [f"f{j + 1}0" + (f"^{k}" if k > 1 else "") for j, k in enumerate(p.l) if k]
            f += [f"f{j + 1}1" for j in p.J]
            parts.append(f"{c}*{'*'.join(f) or '1'}")
        return " + ".join(parts)


def _factors(p: SuperPair, field, s) -> list[SuperPolynomial]:
    out = []
    for j, k in enumerate(p.l):
        out += [SuperPolynomial.even_generator(field, s, j)] * k
    out += [SuperPolynomial.odd_generator(field, s, j) for j in p.J]
    return out


def apply_phi(act: SuperAction, sp: SuperPolynomial) -> SuperPolynomial:
    """Odd superderivation with ``f_{j,0} -> x(h_j) f_{j,1}`` and ``f_{j,1} -> f_{j,0}``.

    The derivation is the one induced by the coaction (the ``z``-component of
    ``tau``), which acts from the right: ``phi(uv) = (-1)^|v| phi(u) v + u phi(v)``.
    With this rule ``phi(f) = 0`` is exactly the system built by :func:`super_system`
    when ``g = 0``.
    """
    F, s = act.field, act.s

    def phi_gen(j: int, odd: bool) -> SuperPolynomial:
        if odd:
            return SuperPolynomial.even_generator(F, s, j)
        return SuperPolynomial.odd_generator(F, s, j).scale(act.x(act.weights[j]))

    out = SuperPolynomial(F, s)
    for p, c in sp.terms.items():
        gens = [(j, False) for j, k in enumerate(p.l) for _ in range(k)] + [(j, True) for j in p.J]
        factors = _factors(p, F, s)
        for i, (j, odd) in enumerate(gens):
            sign = (-1) ** sum(1 for _, o in gens[i + 1:] if o)
            term = SuperPolynomial(F, s, {SuperPair((0,) * s, ()): sign * c})
            for t, fac in enumerate(factors):
                term = term * (phi_gen(j, odd) if t == i else fac)
            out = out + term
    return out


# ---------------------------------------------------------------------------
# defining equations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SuperSystem:
    unknowns: tuple[SuperPair, ...]
    equations: tuple[SuperPair, ...]
    matrix: tuple[tuple, ...]


def super_system(act: SuperAction, d: int) -> SuperSystem:
    """Linear system on the coefficients of weight-zero pairs of degree ``d``.

    One row per degree-``d`` pair whose equation involves a surviving unknown;
    coefficients on pairs of nonzero weight are already eliminated.
    """
    if d < 1:
        raise InvDegError("degree must be >= 1")
    F, X = act.field, act.group
    unknowns = [p for p in pairs_of_degree(act.s, d) if pair_weight(act, p) == X.zero()]
    rows: dict[SuperPair, dict[int, object]] = {}
    for col, u in enumerate(unknowns):
        for j in range(act.s):
            if j in u.J:
                target = apply_pq("P", j, u)
                coeff = (-1) ** k_count(j, u.J)
            elif u.l[j] > 0:
                target = apply_pq("Q", j, u)
                coeff = (-1) ** k_count(j, target.J) * u.l[j] * act.x(act.weights[j])
            else:
                continue
            coeff = F(coeff)
            if coeff != 0:
                row = rows.setdefault(target, {})
                row[col] = F(row.get(col, 0) + coeff)
    eqs = sorted(rows, key=pair_key)
    matrix = tuple(tuple(rows[e].get(c, F(0)) for c in range(len(unknowns))) for e in eqs)
    return SuperSystem(tuple(unknowns), tuple(eqs), matrix)


def defining_residual(act: SuperAction, sp: SuperPolynomial) -> SuperPolynomial:
    """The polynomial that must vanish for an invariant, expanded term by term."""
    F, s = act.field, act.s
    out: dict = {}
    for p, a in sp.terms.items():
        for j in range(s):
            if j not in p.J and p.l[j] > 0:
                q = apply_pq("Q", j, p)
                c = (-1) ** k_count(j, q.J) * p.l[j] * act.x(act.weights[j])
            elif j in p.J:
                q = apply_pq("P", j, p)
                c = (-1) ** k_count(j, p.J)
            else:
                continue
            out[q] = out.get(q, 0) + a * c
    return SuperPolynomial(F, s, out)


def is_superinvariant(act: SuperAction, sp: SuperPolynomial) -> bool:
    X = act.group
    if any(pair_weight(act, p) != X.zero() for p in sp.terms):
        return False
    return defining_residual(act, sp).is_zero()


def superinvariant_basis(act: SuperAction, d: int) -> list[SuperPolynomial]:
    system = super_system(act, d)
    if not system.unknowns:
        return []
    kernel = nullspace([list(r) for r in system.matrix], act.field, ncols=len(system.unknowns))
    basis = [SuperPolynomial(act.field, act.s, dict(zip(system.unknowns, v))) for v in kernel]
    for b in basis:
        if not is_superinvariant(act, b):
            raise AssertionError(f"kernel element {b} fails the defining equations")
    return basis


@dataclass(frozen=True)
class SuperFound:
    degree: int
    basis: tuple[SuperPolynomial, ...]


def minimal_superdegree(act: SuperAction, dmax: int) -> SuperFound | NotFoundUpTo:
    if dmax < 1:
        raise InvDegError("dmax must be >= 1")
    for d in range(1, dmax + 1):
        basis = superinvariant_basis(act, d)
        if basis:
            return SuperFound(d, tuple(basis))
    return NotFoundUpTo(dmax)


def coefficient_vector(system: SuperSystem, sp: SuperPolynomial) -> list | None:
    """Coordinates of ``sp`` on the unknowns, or ``None`` if it uses other pairs."""
    idx = {p: i for i, p in enumerate(system.unknowns)}
    v = [sp.field(0)] * len(idx)
    for p, c in sp.terms.items():
        if p not in idx:
            return None
        v[idx[p]] = c
    return v


# ---------------------------------------------------------------------------
# even subgroups as diagonal actions
# ---------------------------------------------------------------------------

MAX_TORSION_ENUMERATION = 1 << 16


def _quotient_torsion_rows(torsion, g_tors, h_tors) -> list[WeightRow]:
    """Congruences cutting out ``{y : y in <g>}`` via characters killing ``g``."""
    if prod(torsion) > MAX_TORSION_ENUMERATION:
        raise UnsupportedQuotient("torsion part too large to enumerate characters")
    M = lcm(*torsion)
    scale = [M // m for m in torsion]
    rows = set()
    for c in product(*(range(m) for m in torsion)):
        if not any(c) or sum(ci * gi * si for ci, gi, si in zip(c, g_tors, scale)) % M:
            continue
        w = [sum(ci * hi * si for ci, hi, si in zip(c, h, scale)) % M for h in h_tors]
        k = gcd(M, *w)
        if M // k > 1:
            rows.add((M // k, tuple(x // k for x in w)))
    return [WeightRow(m, w) for m, w in sorted(rows)]


def even_action(act: SuperAction, quotient_by_g: bool = False) -> DiagonalAction:
    """Diagonal action on the ``2s`` coordinates ``f_{1,0}, f_{1,1}, f_{2,0}, ...``.

    Both coordinates of pair ``j`` carry weight ``h_j``. Free coordinates of
    ``X`` become torus rows, torsion coordinates become finite rows. With
    ``quotient_by_g`` the weights are read in ``X / <g>``.
    """
    X = act.group
    u = X.free_rank
    n = 2 * act.s
    dup = [h for h in act.weights for _ in range(2)]
    rows = [WeightRow(0, tuple(h[i] for h in dup)) for i in range(u)]
    g_is_zero = act.g == X.zero()
    if quotient_by_g and not g_is_zero:
        if any(act.g[:u]):
            raise UnsupportedQuotient("g must be a torsion character")
        rows += _quotient_torsion_rows(X.torsion, act.g[u:], [h[u:] for h in dup])
    else:
        rows += [WeightRow(m, tuple(h[u + t] for h in dup)) for t, m in enumerate(X.torsion)]
    return DiagonalAction(n, tuple(rows))


def d_invariant_pairs(act: SuperAction, d: int) -> Iterator[SuperPair]:
    """Pairs of degree ``d`` whose monomial is invariant under the even group ``D``."""
    X = act.group
    for p in pairs_of_degree(act.s, d):
        total = X.zero()
        for j in range(act.s):
            mult = p.l[j] + (1 if j in p.J else 0)
            total = X.add(total, X.scale(mult, act.weights[j]))
        if total == X.zero():
            yield p
