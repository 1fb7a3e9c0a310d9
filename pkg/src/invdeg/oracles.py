"""Independent brute-force checks used by the test-suite and ``selftest``.

None of these reuse the code paths they are meant to check: invariance of
superpolynomials is decided by multiplying out the coaction in the tensor
product superalgebra, positivity by exhaustive lattice search, and ``k_g`` by
enumerating exponent vectors.
"""
from __future__ import annotations

from itertools import combinations, permutations, product
from typing import Sequence

import numpy as np

from .exactalg import QQ, det, rank
from .poly import exponent_vectors
from .superinv import SuperAction, SuperPair, SuperPolynomial


def brute_k_g(k: int, kexp: Sequence[int]) -> int:
    best = None
    for total in range(1, k + 1):
        for a in exponent_vectors(len(kexp), total):
            if sum(x * y for x, y in zip(a, kexp)) % k == 0:
                return total
    return best


def cramer_bound(w: Sequence[Sequence[int]]) -> int:
    """Largest absolute square-subdeterminant of ``w`` (at least 1).

    Extreme rays of ``{a >= 0 : w a = 0}`` have primitive integer generators
    whose entries are minors of ``w``, so this bounds the search box.
    """
    rows, cols = len(w), len(w[0])
    best = 1
    for r in range(1, min(rows, cols) + 1):
        for R in combinations(range(rows), r):
            for C in combinations(range(cols), r):
                best = max(best, abs(int(det([[w[i][j] for j in C] for i in R], QQ))))
    return best


def brute_positive_kernel(w: Sequence[Sequence[int]], bound: int | None = None) -> bool:
    """Exhaustive search for a nonzero integer ``a in [0, bound]^n`` with ``w a = 0``."""
    n = len(w[0])
    bound = cramer_bound(w) if bound is None else bound
    W = np.array(w, dtype=np.int64)
    axis = np.arange(bound + 1, dtype=np.int64)
    # chunk over the first coordinate to bound memory
    rest = np.array(list(product(range(bound + 1), repeat=n - 1)), dtype=np.int64).reshape(-1, n - 1)
    for a0 in axis:
        cand = np.concatenate([np.full((len(rest), 1), a0), rest], axis=1)
        hits = ~(cand @ W.T).any(axis=1) & cand.any(axis=1)
        if hits.any():
            return True
    return False


# ---------------------------------------------------------------------------
# coaction oracle for D_{g,x}
# ---------------------------------------------------------------------------

def _sort_sign(seq: Sequence[int]) -> tuple[int, tuple[int, ...] | None]:
    if len(set(seq)) != len(seq):
        return 0, None
    inversions = sum(1 for i in range(len(seq)) for j in range(i + 1, len(seq)) if seq[i] > seq[j])
    return (-1) ** inversions, tuple(sorted(seq))


def _tensor_mul(x: dict, y: dict, act: SuperAction) -> dict:
    """Product in ``F[V] (x) F[D_{g,x}]`` with the Koszul sign rule."""
    F, X = act.field, act.group
    out: dict = {}
    for (e1, o1, c1, z1), a in x.items():
        for (e2, o2, c2, z2), b in y.items():
            if z1 and z2:
                continue
            sign, odd = _sort_sign(o1 + o2)
            if not sign:
                continue
            # moving the right-hand coalgebra factor of x past the F[V] factor of y
            if z1 and len(o2) % 2:
                sign = -sign
            key = (tuple(u + v for u, v in zip(e1, e2)), odd, X.add(c1, c2), z1 + z2)
            out[key] = F(out.get(key, 0) + sign * a * b)
    return {k: v for k, v in out.items() if v != 0}


def _tau_generator(act: SuperAction, j: int, odd: bool) -> dict:
    s, X = act.s, act.group
    e = tuple(int(t == j) for t in range(s))
    zero = (0,) * s
    h = act.weights[j]
    hg = X.add(h, act.g)
    if odd:
        # tau(f_{j,1}) = f_{j,0} (x) h_j z + f_{j,1} (x) h_j g
        return {(e, (), h, 1): act.field(1), (zero, (j,), hg, 0): act.field(1)}
    # tau(f_{j,0}) = f_{j,0} (x) h_j + x(h_j) f_{j,1} (x) h_j g z
    out = {(e, (), h, 0): act.field(1)}
    xh = act.x(h)
    if xh != 0:
        out[(zero, (j,), hg, 1)] = xh
    return out


def tau_monomial(act: SuperAction, l: Sequence[int], J: Sequence[int]) -> dict:
    s, X = act.s, act.group
    out = {((0,) * s, (), X.zero(), 0): act.field(1)}
    for j, k in enumerate(l):
        for _ in range(k):
            out = _tensor_mul(out, _tau_generator(act, j, False), act)
    for j in sorted(J):
        out = _tensor_mul(out, _tau_generator(act, j, True), act)
    return out


def _all_pairs(s: int, d: int):
    return [(l, J) for k in range(min(s, d) + 1) for J in combinations(range(s), k)
            for l in exponent_vectors(s, d - k)]


def coaction_system(act: SuperAction, d: int):
    """Matrix of ``f -> tau(f) - f (x) 1`` on all degree-``d`` monomials."""
    F, X = act.field, act.group
    monos = _all_pairs(act.s, d)
    images = []
    for l, J in monos:
        img = dict(tau_monomial(act, l, J))
        one = (l, J, X.zero(), 0)
        img[one] = F(img.get(one, 0) - 1)
        images.append(img)
    keys = sorted({k for img in images for k, v in img.items() if v != 0})
    matrix = [[img.get(k, F(0)) for img in images] for k in keys]
    return monos, matrix


def superinvariant_dimension(act: SuperAction, d: int) -> int:
    monos, matrix = coaction_system(act, d)
    if not matrix:
        return len(monos)
    return len(monos) - rank(matrix, act.field)


def coaction_is_invariant(act: SuperAction, sp: SuperPolynomial) -> bool:
    F, X = act.field, act.group
    total: dict = {}
    for p, c in sp.terms.items():
        for k, v in tau_monomial(act, p.l, p.J).items():
            total[k] = F(total.get(k, 0) + c * v)
        one = (p.l, p.J, X.zero(), 0)
        total[one] = F(total.get(one, 0) - c)
    return all(v == 0 for v in total.values())


def coaction_phi(act: SuperAction, sp: SuperPolynomial) -> SuperPolynomial:
    """The odd derivation read off ``tau``: keep the ``z``-terms and send characters to 1."""
    out: dict = {}
    for p, c in sp.terms.items():
        for (e, o, _chi, z), v in tau_monomial(act, p.l, p.J).items():
            if z:
                key = SuperPair(e, o)
                out[key] = out.get(key, 0) + c * v
    return SuperPolynomial(act.field, act.s, out)


def in_span(vectors: Sequence[Sequence], v: Sequence, F=QQ) -> bool:
    if not vectors:
        return all(x == 0 for x in v)
    return rank(list(vectors) + [list(v)], F) == rank(list(vectors), F)


def signed_permutation_matrices(n: int) -> list[list[list[int]]]:
    out = []
    for perm in permutations(range(n)):
        for signs in product((1, -1), repeat=n):
            out.append([[signs[i] if perm[i] == j else 0 for j in range(n)] for i in range(n)])
    return out
