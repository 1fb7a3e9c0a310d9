"""Minimal degrees of invariants of finitely generated diagonalizable groups.

A diagonal action is described by weight rows. A row ``(k, w)`` with ``k > 0``
stands for the generator ``diag(zeta_k^w_1, ..., zeta_k^w_n)``; a row with
``k = 0`` stands for a one-dimensional torus acting with weights ``w``. The
monomial ``x^a`` is invariant iff ``w . a == 0 (mod k)`` for every row (exact
equality for torus rows).
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Sequence

from .exactalg import (QQ, InvDegError, NotInvertible, TriangularBasis, det,
                       has_positive_kernel_vector, hnf_triangular, integer_kernel,
                       lcm, matmul, transpose)
from .poly import exponent_vectors


class InvalidResidues(InvDegError):
    pass


class DimensionMismatch(InvDegError):
    pass


class GroupTooLarge(InvDegError):
    pass


@dataclass(frozen=True)
class WeightRow:
    modulus: int
    weights: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 0:
            raise InvDegError("modulus must be >= 0")
        w = tuple(int(x) for x in self.weights)
        if self.modulus > 0:
            w = tuple(x % self.modulus for x in w)
        object.__setattr__(self, "weights", w)

    def holds(self, a: Sequence[int]) -> bool:
        s = sum(x * y for x, y in zip(self.weights, a))
        return s % self.modulus == 0 if self.modulus else s == 0


@dataclass(frozen=True)
class DiagonalAction:
    n: int
    generators: tuple[WeightRow, ...] = ()

    def __post_init__(self):
        rows = tuple(r if isinstance(r, WeightRow) else WeightRow(int(r[0]), tuple(r[1]))
                     for r in self.generators)
        for r in rows:
            if len(r.weights) != self.n:
                raise DimensionMismatch(f"weight row {r.weights} has length != {self.n}")
        object.__setattr__(self, "generators", rows)

    @property
    def finite_rows(self) -> tuple[WeightRow, ...]:
        return tuple(r for r in self.generators if r.modulus > 0)

    @property
    def torus_rows(self) -> tuple[WeightRow, ...]:
        return tuple(r for r in self.generators if r.modulus == 0)

    @property
    def is_finite(self) -> bool:
        return not self.torus_rows

    @property
    def modulus_lcm(self) -> int:
        return lcm(*(r.modulus for r in self.finite_rows))

    def to_json(self) -> dict:
        return {"n": self.n,
                "generators": [{"modulus": r.modulus, "weights": list(r.weights)}
                               for r in self.generators]}

    @classmethod
    def from_json(cls, doc) -> "DiagonalAction":
        try:
            return cls(int(doc["n"]), tuple(WeightRow(int(g["modulus"]), tuple(g["weights"]))
                                            for g in doc["generators"]))
        except (KeyError, TypeError) as exc:
            raise InvDegError(f"malformed action document: {exc}") from exc


@dataclass(frozen=True)
class Found:
    degree: int
    witness: tuple[int, ...]


@dataclass(frozen=True)
class NotFoundUpTo:
    dmax: int


@dataclass(frozen=True)
class Infinite:
    reason: str


MinDegreeResult = Found | NotFoundUpTo | Infinite


def compute_k_g(k: int, kexp: Sequence[int]) -> int:
    """Smallest ``sum(a) > 0`` over ``a >= 0`` with ``sum(a_i k_i) == 0 mod k``.

    Breadth-first search on residues mod ``k``: each step adds one ``k_i``.
    """
    if k < 2:
        raise InvalidResidues("order must be >= 2")
    if any(not 0 <= x < k for x in kexp):
        raise InvalidResidues(f"residues must lie in [0, {k})")
    if gcd(k, *kexp) != 1:
        raise InvalidResidues("gcd of residues and order must be 1")
    steps = sorted(set(kexp))
    frontier = {x % k for x in steps}
    seen = set(frontier)
    dist = 1
    while frontier:
        if 0 in frontier:
            return dist
        nxt = set()
        for r in frontier:
            for s in steps:
                t = (r + s) % k
                if t not in seen:
                    seen.add(t)
                    nxt.add(t)
        frontier = nxt
        dist += 1
    raise AssertionError("unreachable: gcd condition guarantees a return to 0")


def is_invariant_monomial(act: DiagonalAction, a: Sequence[int]) -> bool:
    if len(a) != act.n:
        raise DimensionMismatch(f"exponent vector has length {len(a)}, expected {act.n}")
    return all(r.holds(a) for r in act.generators)


def invariant_monomials_up_to_degree(act: DiagonalAction, d: int) -> list[tuple[int, ...]]:
    return [a for deg in range(1, d + 1) for a in exponent_vectors(act.n, deg)
            if is_invariant_monomial(act, a)]


def _iter_invariant(act: DiagonalAction, dmin: int, dmax: int) -> Iterator[tuple[int, ...]]:
    for deg in range(dmin, dmax + 1):
        for a in exponent_vectors(act.n, deg):
            if is_invariant_monomial(act, a):
                yield a


def torus_obstruction(act: DiagonalAction) -> str | None:
    """Reason why no invariant exists, or ``None`` if some invariant exists.

    Finite rows never obstruct existence: a nonnegative torus solution times
    the lcm of the finite moduli satisfies every congruence.
    """
    torus = [list(r.weights) for r in act.torus_rows]
    if not torus:
        return None
    if has_positive_kernel_vector(torus):
        return None
    return "torus weights admit no nonzero nonnegative relation"


def minimal_degree_bruteforce(act: DiagonalAction, dmax: int, dmin: int = 1) -> MinDegreeResult:
    """First invariant monomial by degree, then descending lex order."""
    if dmax < 1:
        raise InvDegError("dmax must be >= 1")
    reason = torus_obstruction(act)
    if reason is not None:
        return Infinite(reason)
    for a in _iter_invariant(act, max(dmin, 1), dmax):
        return Found(sum(a), a)
    if act.is_finite and dmin <= 1:
        assert dmax < act.modulus_lcm, "x1^lcm is always invariant"
    return NotFoundUpTo(dmax)


def invariant_lattice_generators(act: DiagonalAction) -> list[list[int]]:
    """Integer generators of ``{a in Z^n : all congruences hold}``."""
    rows = act.finite_rows
    n, r = act.n, len(rows)
    if r == 0:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    # [W | diag(k)] (a, b) = 0  <=>  W a == 0 mod k; project kernel onto a
    m = [list(row.weights) + [row.modulus if t == i else 0 for t in range(r)]
         for i, row in enumerate(rows)]
    return [v[:n] for v in integer_kernel(m, n + r) if any(v[:n])]


def triangular_invariant_basis(act: DiagonalAction) -> TriangularBasis:
    if not act.is_finite:
        raise InvDegError("triangular basis requires a finite action")
    return hnf_triangular(invariant_lattice_generators(act))


def _ip_search(tb: TriangularBasis) -> tuple[int, tuple[int, ...]]:
    n = tb.n
    m = tb.diagonal
    degrees = tb.degrees
    best_i = min(range(n), key=lambda i: (degrees[i], i))
    best = [degrees[best_i], tuple(int(i == best_i) for i in range(n))]
    l = [0] * n

    # a_k = m_k l_k + sum_{j>k} v_kj l_j >= 0 is the exponent of t_k, and the
    # objective sum_i d_i l_i equals sum_k a_k, so variables are fixed from
    # l_n down to l_1 with the exponents so far bounding the remaining budget.
    def rec(k: int, used: int):
        if k < 0:
            if 0 < used < best[0]:
                best[0], best[1] = used, tuple(l)
            return
        c = sum(tb.off_diagonal(k, j) * l[j] for j in range(k + 1, n))
        budget = best[0] - 1 - used
        lo = -(c // m[k])  # ceil(-c / m_k)
        hi = (budget - c) // m[k]
        if hi < lo:
            return
        cands = sorted(range(lo, hi + 1), key=lambda t: (abs(t), t))
        for t in cands:
            a_k = m[k] * t + c
            if used + a_k >= best[0]:
                continue
            l[k] = t
            rec(k - 1, used + a_k)
        l[k] = 0

    rec(n - 1, 0)
    return best[0], best[1]


def minimal_degree_ip(tb: TriangularBasis) -> int:
    """Minimum positive ``sum(d_i l_i)`` subject to ``m_k l_k + sum_{j>k} v_kj l_j >= 0``."""
    return _ip_search(tb)[0]


def ip_witness(tb: TriangularBasis) -> tuple[int, ...]:
    """Exponent vector ``sum_i l_i f_i`` of an optimal solution."""
    _, l = _ip_search(tb)
    return tuple(sum(l[i] * tb.rows[i][c] for i in range(tb.n)) for c in range(tb.n))


# ---------------------------------------------------------------------------
# finite diagonal groups as explicit element sets
# ---------------------------------------------------------------------------

def group_elements(act: DiagonalAction) -> set[tuple[int, ...]]:
    """Elements as eigenvalue exponents modulo ``q = lcm`` of the moduli.

    The tuple ``e`` stands for ``diag(zeta_q^e_1, ..., zeta_q^e_n)``.
    """
    q = act.modulus_lcm
    gens = [tuple(w * (q // r.modulus) % q for w in r.weights) for r in act.finite_rows]
    elems = {(0,) * act.n}
    frontier = list(elems)
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                h = tuple((x + y) % q for x, y in zip(e, g))
                if h not in elems:
                    elems.add(h)
                    nxt.append(h)
        frontier = nxt
    return elems


def element_order_and_residues(e: Sequence[int], q: int) -> tuple[int, tuple[int, ...]]:
    """Order ``k`` of ``diag(zeta_q^e)`` and exponents ``k_i`` relative to ``zeta_k``."""
    g = gcd(q, *e)
    return q // g, tuple(x // g for x in e)


def element_k_g(e: Sequence[int], q: int) -> int:
    k, kexp = element_order_and_residues(e, q)
    return compute_k_g(k, kexp)


def group_exponent(act: DiagonalAction) -> int:
    q = act.modulus_lcm
    return lcm(*(element_order_and_residues(e, q)[0] for e in group_elements(act)))


# ---------------------------------------------------------------------------
# averaging quadratic form for finite real groups
# ---------------------------------------------------------------------------

def _freeze(m):
    return tuple(tuple(Fraction(x) for x in row) for row in m)


def matrix_group_closure(gens: Sequence[Sequence[Sequence]], cap: int) -> list[tuple]:
    if not gens:
        raise InvDegError("need at least one generator")
    n = len(gens[0])
    mats = [_freeze(g) for g in gens]
    for g in mats:
        if det(g, QQ) == 0:
            raise NotInvertible("generator is singular")
    ident = _freeze([[int(i == j) for j in range(n)] for i in range(n)])
    seen = {ident: None}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in mats:
                y = _freeze(matmul(x, g, QQ))
                if y not in seen:
                    seen[y] = None
                    if len(seen) > cap:
                        raise GroupTooLarge(f"group has more than {cap} elements")
                    nxt.append(y)
        frontier = nxt
    return list(seen)


def reynolds_quadratic(gens: Sequence[Sequence[Sequence]], cap: int = 10_000) -> list[list[Fraction]]:
    """Gram matrix ``Q = sum_g g^T g`` of the group-averaged sum of squares."""
    elems = matrix_group_closure(gens, cap)
    n = len(elems[0])
    Q = [[Fraction(0)] * n for _ in range(n)]
    for g in elems:
        gtg = matmul(transpose(g), g, QQ)
        for i in range(n):
            for j in range(n):
                Q[i][j] += gtg[i][j]
    return Q


def leading_principal_minors(Q) -> list:
    return [det([row[:k] for row in Q[:k]], QQ) for k in range(1, len(Q) + 1)]
