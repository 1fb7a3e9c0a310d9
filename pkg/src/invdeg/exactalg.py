"""Exact scalar and matrix arithmetic.

Two ground fields are supported: prime fields ``GF(p)`` with ``p`` odd, whose
elements are plain ints in ``[0, p)``, and the rationals ``QQ``, whose elements
are :class:`fractions.Fraction`. A field object is a callable that coerces
ints and fractions into canonical form, so elimination code can be written once
as ``F(a - c * b)``.

Matrices are lists of row lists. Integer matrices (lattice generators) use
plain Python ints.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Sequence


class InvDegError(ValueError):
    """Base class for the package's input and domain errors."""


class RankDeficient(InvDegError):
    pass


class DimensionTooLarge(InvDegError):
    pass


class NotInvertible(InvDegError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p == 2 or not is_prime(self.p):
            raise InvDegError(f"modulus {self.p} is not an odd prime")

    def __call__(self, x) -> int:
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    def inv(self, x) -> int:
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.p)
        return pow(x, -1, self.p)

    @property
    def characteristic(self) -> int:
        return self.p

    def to_json(self):
        return {"type": "prime", "p": self.p}

    def __repr__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class RationalField:
    def __call__(self, x) -> Fraction:
        return Fraction(x)

    def inv(self, x) -> Fraction:
        if x == 0:
            raise ZeroDivisionError("inverse of zero in QQ")
        return 1 / Fraction(x)

    @property
    def characteristic(self) -> int:
        return 0

    def to_json(self):
        return {"type": "rational"}

    def __repr__(self):
        return "QQ"


QQ = RationalField()
Field = PrimeField | RationalField


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(doc) -> Field:
    if doc is None or doc.get("type", "rational") == "rational":
        return QQ
    if doc["type"] == "prime":
        return PrimeField(int(doc["p"]))
    raise InvDegError(f"unknown field type {doc['type']!r}")


# ---------------------------------------------------------------------------
# dense matrices over a field
# ---------------------------------------------------------------------------

def coerce_matrix(m, F: Field) -> list[list]:
    return [[F(x) for x in row] for row in m]


def identity(n: int, F: Field) -> list[list]:
    return [[F(1) if i == j else F(0) for j in range(n)] for i in range(n)]


def matmul(a, b, F: Field) -> list[list]:
    cols = list(zip(*b))
    return [[F(sum(x * y for x, y in zip(row, col))) for col in cols] for row in a]


def matvec(a, v, F: Field) -> list:
    return [F(sum(x * y for x, y in zip(row, v))) for row in a]


def transpose(m) -> list[list]:
    return [list(col) for col in zip(*m)]


def rref(m, F: Field, ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form and the pivot columns."""
    rows = [[F(x) for x in row] for row in m]
    ncols = len(rows[0]) if rows else (ncols or 0)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = F.inv(rows[r][c])
        rows[r] = [F(x * inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [F(x - f * y) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(m, F: Field) -> int:
    return len(rref(m, F)[1])


def nullspace(m, F: Field, ncols: int | None = None) -> list[list]:
    """Basis of the right kernel ``{v : m v = 0}``.

    Basis vectors are indexed by free columns in ascending order; the vector
    for free column ``f`` has a 1 at ``f`` and 0 at every other free column.
    ``ncols`` is required when ``m`` has no rows.
    """
    if m:
        ncols = len(m[0])
    elif ncols is None:
        raise InvDegError("ncols is required for a matrix without rows")
    R, pivots = rref(m, F, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [F(0)] * ncols
        v[f] = F(1)
        for row, pc in zip(R, pivots):
            v[pc] = F(-row[f])
        basis.append(v)
    return basis


def det(m, F: Field):
    n = len(m)
    rows = [[F(x) for x in row] for row in m]
    result = F(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return F(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = F(-result)
        result = F(result * rows[c][c])
        inv = F.inv(rows[c][c])
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = F(rows[i][c] * inv)
                rows[i] = [F(x - f * y) for x, y in zip(rows[i], rows[c])]
    return result


def inverse(m, F: Field) -> list[list]:
    n = len(m)
    aug = [list(row) + e for row, e in zip(coerce_matrix(m, F), identity(n, F))]
    R, pivots = rref(aug, F)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise NotInvertible("matrix is singular")
    return [row[n:] for row in R]


# ---------------------------------------------------------------------------
# integer lattices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TriangularBasis:
    """Lower-triangular lattice basis ``f_1..f_n``.

    Row ``f_i`` is supported on coordinates ``0..i``; ``rows[i][i]`` is the
    positive diagonal entry ``m_i`` and ``rows[j][i]`` for ``j > i`` is the
    reduced off-diagonal entry ``v_ij`` with ``0 <= v_ij < m_i``.
    """
    rows: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def diagonal(self) -> tuple[int, ...]:
        return tuple(self.rows[i][i] for i in range(self.n))

    def off_diagonal(self, i: int, j: int) -> int:
        """``v_ij``: coordinate ``i`` of row ``j`` (``i < j``)."""
        return self.rows[j][i]

    @property
    def degrees(self) -> tuple[int, ...]:
        return tuple(sum(r) for r in self.rows)

    @property
    def index(self) -> int:
        out = 1
        for m in self.diagonal:
            out *= m
        return out


def hnf_triangular(gens: Sequence[Sequence[int]]) -> TriangularBasis:
    """Triangular basis of the lattice spanned by the integer rows ``gens``.

    Columns are eliminated from the last to the first by extended-gcd row
    operations, then off-diagonal entries are reduced modulo the diagonal.
    """
    if not gens:
        raise RankDeficient("no generators")
    n = len(gens[0])
    rows = [list(map(int, r)) for r in gens if any(r)]
    basis: list[list[int] | None] = [None] * n
    for c in reversed(range(n)):
        pivot = None
        rest = []
        for r in rows:
            if r[c] == 0:
                rest.append(r)
                continue
            if pivot is None:
                pivot = r
                continue
            while r[c] != 0:
                q = pivot[c] // r[c]
                pivot = [x - q * y for x, y in zip(pivot, r)]
                pivot, r = r, pivot
            if any(r):
                rest.append(r)
        if pivot is None:
            raise RankDeficient(f"lattice has rank < {n}")
        if pivot[c] < 0:
            pivot = [-x for x in pivot]
        basis[c] = pivot
        rows = rest
    for j in range(n):
        for i in reversed(range(j)):
            q = basis[j][i] // basis[i][i]
            if q:
                basis[j] = [x - q * y for x, y in zip(basis[j], basis[i])]
    return TriangularBasis(tuple(tuple(r) for r in basis))


def integer_kernel(m: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of the integer right kernel ``{v in Z^ncols : m v = 0}``.

    Column operations on ``m`` are tracked in a unimodular transform; the
    transformed columns that end up zero give the kernel basis.
    """
    cols = [[row[c] for row in m] + [int(c == k) for k in range(ncols)]
            for c in range(ncols)]
    h = len(m)
    kernel_start = 0
    for r in range(h):
        pivot = None
        rest = []
        for col in cols[kernel_start:]:
            if col[r] == 0:
                rest.append(col)
                continue
            if pivot is None:
                pivot = col
                continue
            while col[r] != 0:
                q = pivot[r] // col[r]
                pivot = [x - q * y for x, y in zip(pivot, col)]
                pivot, col = col, pivot
            rest.append(col)
        if pivot is not None:
            cols[kernel_start:] = [pivot] + rest
            kernel_start += 1
    return [col[h:] for col in cols[kernel_start:]]


# ---------------------------------------------------------------------------
# positivity certificate
# ---------------------------------------------------------------------------

MAX_FM_COLUMNS = 12


def _normalize(coeffs, b):
    scale = max((abs(c) for c in coeffs), default=0)
    if scale == 0:
        return tuple(coeffs), b
    return tuple(c / scale for c in coeffs), b / scale


def _fourier_motzkin_feasible(constraints, nvars) -> bool:
    """Decide ``exists y : c.y <= b for all (c, b)`` exactly."""
    cons = {_normalize(c, b) for c, b in constraints}
    for k in range(nvars):
        pos, neg, keep = [], [], set()
        for c, b in cons:
            if c[k] > 0:
                pos.append((c, b))
            elif c[k] < 0:
                neg.append((c, b))
            else:
                keep.add((c, b))
        for cp, bp in pos:
            for cn, bn in neg:
                sp, sn = cp[k], -cn[k]
                c = tuple(x / sp + y / sn for x, y in zip(cp, cn))
                b = bp / sp + bn / sn
                if not any(c):
                    if b < 0:
                        return False
                    continue
                keep.add(_normalize(c, b))
        cons = keep
        for c, b in cons:
            if not any(c) and b < 0:
                return False
    return all(b >= 0 for _, b in cons)


def has_positive_kernel_vector(w: Sequence[Sequence[int]], ncols: int | None = None) -> bool:
    """Whether some nonzero rational ``a >= 0`` satisfies ``w a = 0``.

    The normalisation ``sum(a) = 1`` is added, equalities are solved away by
    elimination, and the remaining inequalities are decided by Fourier-Motzkin.
    """
    n = len(w[0]) if w else ncols
    if n is None or n < 1:
        raise InvDegError("need at least one column")
    if n > MAX_FM_COLUMNS:
        raise DimensionTooLarge(f"{n} columns exceeds the Fourier-Motzkin limit {MAX_FM_COLUMNS}")
    eqs = [[Fraction(x) for x in row] + [Fraction(0)] for row in w]
    eqs.append([Fraction(1)] * n + [Fraction(1)])
    R, pivots = rref(eqs, QQ)
    if n in pivots:
        return False
    free = [c for c in range(n) if c not in pivots]
    constraints = []
    # a_f >= 0  ->  -a_f <= 0
    for idx, f in enumerate(free):
        c = [Fraction(0)] * len(free)
        c[idx] = Fraction(-1)
        constraints.append((c, Fraction(0)))
    # a_p = rhs - sum R[p][f] a_f >= 0  ->  sum R[p][f] a_f <= rhs
    for row in R:
        constraints.append(([row[f] for f in free], row[n]))
    if not free:
        return all(b >= 0 for _, b in constraints)
    return _fourier_motzkin_feasible(constraints, len(free))


def lcm(*xs: int) -> int:
    out = 1
    for x in xs:
        out = out * x // gcd(out, x) if x else out
    return out
