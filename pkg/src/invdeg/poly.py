"""Sparse multivariate polynomials with exact coefficients."""
from __future__ import annotations

from functools import lru_cache
from typing import Iterator, Mapping, Sequence

from .exactalg import Field


def exponent_vectors(n: int, d: int) -> Iterator[tuple[int, ...]]:
    """All exponent vectors of length ``n`` and total degree ``d``.

    Order is lexicographically descending, so ``x1^d`` comes first.
    """
    if n == 0:
        if d == 0:
            yield ()
        return
    if n == 1:
        yield (d,)
        return
    for first in range(d, -1, -1):
        for rest in exponent_vectors(n - 1, d - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def monomial_basis(n: int, d: int) -> tuple[tuple[int, ...], ...]:
    return tuple(exponent_vectors(n, d))


class Polynomial:
    """Polynomial in ``nvars`` variables over ``field``.

    ``terms`` maps exponent tuples to nonzero coefficients. Instances are
    treated as immutable.
    """

    __slots__ = ("field", "nvars", "terms")

    def __init__(self, field: Field, nvars: int, terms: Mapping[tuple[int, ...], object] = ()):
        self.field = field
        self.nvars = nvars
        clean = {}
        for e, c in dict(terms).items():
            c = field(c)
            if c != 0:
                clean[tuple(e)] = c
        self.terms = clean

    @classmethod
    def constant(cls, field, nvars, c):
        return cls(field, nvars, {(0,) * nvars: c})

    @classmethod
    def monomial(cls, field, exps: Sequence[int], coeff=1):
        return cls(field, len(exps), {tuple(exps): coeff})

    @classmethod
    def variable(cls, field, nvars, i):
        e = [0] * nvars
        e[i] = 1
        return cls(field, nvars, {tuple(e): 1})

    @classmethod
    def linear_form(cls, field, coeffs: Sequence):
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            e = [0] * n
            e[i] = 1
            terms[tuple(e)] = c
        return cls(field, n, terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), tuple(-x for x in t[0])))

    def _check(self, other: "Polynomial"):
        if self.field != other.field or self.nvars != other.nvars:
            raise ValueError("incompatible polynomials")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.field, self.nvars, out)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.field, self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        return Polynomial(self.field, self.nvars, {e: c * v for e, v in self.terms.items()})

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.field, self.nvars, out)

    def __pow__(self, k: int) -> "Polynomial":
        result = Polynomial.constant(self.field, self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other) -> bool:
        return (isinstance(other, Polynomial) and self.field == other.field
                and self.nvars == other.nvars and self.terms == other.terms)

    def __hash__(self):
        return hash((self.field, self.nvars, frozenset(self.terms.items())))

    def __call__(self, point: Sequence) -> object:
        F = self.field
        total = F(0)
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                if k:
                    v = v * F(x) ** k
            total = F(total + v)
        return total

    def substitute_linear(self, h: Sequence[Sequence]) -> "Polynomial":
        """``x -> f(h x)``: each variable ``x_i`` becomes ``sum_j h[i][j] x_j``."""
        forms = [Polynomial.linear_form(self.field, row) for row in h]
        powers: dict[tuple[int, int], Polynomial] = {}
        out = Polynomial(self.field, self.nvars)
        for e, c in self.terms.items():
            term = Polynomial.constant(self.field, self.nvars, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in powers:
                        powers[i, k] = forms[i] ** k
                    term = term * powers[i, k]
            out = out + term
        return out

    def coefficient(self, e: Sequence[int]):
        return self.terms.get(tuple(e), self.field(0))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(f"x{i + 1}" + (f"^{k}" if k > 1 else "") for i, k in enumerate(e) if k)
            parts.append(f"{c}*{mono}" if mono else f"{c}")
        return " + ".join(parts)
