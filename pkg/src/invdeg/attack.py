"""Linear-algebra attack: find a low-degree invariant of the public group.

For each degree ``d`` the unknowns are the coefficients of a homogeneous
degree-``d`` polynomial ``f``; every public generator ``h`` contributes the
equations ``coeff_mu(f(h x) - f(x)) = 0``. The first degree with a nontrivial
solution space yields invariants of the public group, which are constant on
orbits and therefore identify the encrypted message.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .exactalg import Field, GF, nullspace
from .invcrypt import Ciphertext, PublicKey
from .poly import Polynomial, monomial_basis


@dataclass
class AttackReport:
    found_degree: int | None
    dmax: int
    invariant_basis: list[Polynomial] = field(default_factory=list)
    system_sizes: list[tuple[int, int, int]] = field(default_factory=list)
    recovered_index: int | None = None

    def to_json(self) -> dict:
        basis = [[{"monomial_exponents": list(e), "coeff": int(c)} for e, c in f.sorted_terms()]
                 for f in self.invariant_basis]
        return {"found_degree": self.found_degree,
                "basis": basis,
                "recovered_index": self.recovered_index,
                "system_sizes": [list(t) for t in self.system_sizes]}


def _substitution_columns(h, d: int, n: int, F: Field) -> list[Polynomial]:
    return [Polynomial.monomial(F, e).substitute_linear(h) for e in monomial_basis(n, d)]


def invariant_system(gens: Sequence, d: int, F: Field) -> list[list]:
    """Matrix of the map ``c -> (coeff_mu(f_c(h x) - f_c(x)))_{h, mu}``.

    Columns follow the degree-lex order of :func:`monomial_basis`; rows are
    grouped by generator, then by monomial in the same order.
    """
    if d < 1:
        raise ValueError("degree must be >= 1")
    n = len(gens[0]) if gens else 0
    monos = monomial_basis(n, d)
    rows = []
    for h in gens:
        cols = _substitution_columns(h, d, n, F)
        for mu in monos:
            rows.append([F(col.coefficient(mu) - (1 if e == mu else 0))
                         for col, e in zip(cols, monos)])
    return rows


def basis_polynomials(kernel, n: int, d: int, F: Field) -> list[Polynomial]:
    monos = monomial_basis(n, d)
    return [Polynomial(F, n, dict(zip(monos, v))) for v in kernel]


def find_min_invariant(gens: Sequence, dmax: int, F: Field) -> AttackReport:
    """Solve the degree-``d`` systems for ``d = 1..dmax`` and stop at the first kernel."""
    if dmax < 1:
        raise ValueError("dmax must be >= 1")
    gens = [[[F(x) for x in row] for row in h] for h in gens]
    n = len(gens[0])
    report = AttackReport(None, dmax)
    for d in range(1, dmax + 1):
        A = invariant_system(gens, d, F)
        cols = comb(n + d - 1, d)
        report.system_sizes.append((d, len(A), cols))
        kernel = nullspace(A, F, ncols=cols)
        if kernel:
            report.found_degree = d
            report.invariant_basis = basis_polynomials(kernel, n, d, F)
            break
    return report


def recover_plaintext(messages: Sequence[Sequence[int]], basis: Sequence[Polynomial],
                      u: Sequence[int]) -> int | None:
    """Index of the unique message agreeing with ``u`` on every basis invariant.

    Returns ``None`` when several messages agree (or none does).
    """
    if not basis:
        raise ValueError("empty invariant basis")
    target = [f(u) for f in basis]
    hits = [i for i, v in enumerate(messages) if [f(v) for f in basis] == target]
    return hits[0] if len(hits) == 1 else None


def attack_public_key(pk: PublicKey, dmax: int, ct: Ciphertext | None = None) -> AttackReport:
    F = GF(pk.p)
    report = find_min_invariant([list(map(list, g)) for g in pk.generators], dmax, F)
    if ct is not None and report.found_degree is not None:
        report.recovered_index = recover_plaintext(pk.messages, report.invariant_basis, ct.u)
    return report
