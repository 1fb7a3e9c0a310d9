from fractions import Fraction
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from invdeg.exactalg import (GF, QQ, DimensionTooLarge, NotInvertible, det, field_from_json,
                             has_positive_kernel_vector, hnf_triangular, integer_kernel, inverse,
                             matmul, nullspace, rank, rref)
from invdeg.oracles import brute_positive_kernel, cramer_bound


def test_prime_field_basics():
    F = GF(7)
    assert F(-1) == 6
    assert F.inv(3) == 5
    assert F.characteristic == 7
    with pytest.raises(ValueError):
        GF(9)
    with pytest.raises(ValueError):
        GF(2)
    with pytest.raises(ZeroDivisionError):
        F.inv(0)


def test_field_json_round_trip():
    for F in (GF(13), QQ):
        assert field_from_json(F.to_json()) == F


def test_nullspace_examples():
    assert nullspace([[1, 1]], GF(7)) == [[6, 1]]
    assert nullspace([[0, 0], [0, 0]], QQ) == [[1, 0], [0, 1]]
    assert nullspace([[1, 2], [2, 4]], QQ) == [[-2, 1]]


def test_nullspace_empty_matrix_gives_standard_basis():
    assert nullspace([], QQ, ncols=3) == [[1, 0, 0], [0, 1, 0], [0, 0, 1]]


matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 5).flatmap(
        lambda c: st.lists(st.lists(st.integers(-4, 4), min_size=c, max_size=c),
                           min_size=r, max_size=r)))


@given(matrices, st.sampled_from([QQ, GF(5), GF(11)]))
def test_nullspace_rank_nullity_and_normalization(m, F):
    cols = len(m[0])
    ker = nullspace(m, F)
    assert len(ker) == cols - rank(m, F)
    for v in ker:
        assert all(F(sum(a * b for a, b in zip(row, v))) == 0 for row in m)
    # unit at a distinct free column, zero at the other free columns
    _, pivots = rref(m, F)
    free = [c for c in range(cols) if c not in pivots]
    for v, c in zip(ker, free):
        assert v[c] == 1
        assert all(v[o] == 0 for o in free if o != c)
    if ker:
        assert rank(ker, F) == len(ker)


def test_det_and_inverse():
    m = [[2, 1], [1, 1]]
    assert det(m, QQ) == 1
    inv = inverse(m, QQ)
    assert matmul(m, inv, QQ) == [[1, 0], [0, 1]]
    assert inverse([[3, 1], [0, 2]], GF(7)) == [[5, 1], [0, 4]]
    with pytest.raises(NotInvertible):
        inverse([[1, 2], [2, 4]], QQ)


def test_hnf_examples():
    tb = hnf_triangular([[2, 0], [1, 1], [0, 2]])
    assert tb.rows == ((2, 0), (1, 1))
    assert tb.index == 2
    assert hnf_triangular([[1, 0], [0, 1]]).rows == ((1, 0), (0, 1))
    tb = hnf_triangular([[3, 0], [1, 1], [0, 3]])
    assert tb.rows == ((3, 0), (1, 1))
    assert tb.index == 3


def test_hnf_rejects_rank_deficient():
    with pytest.raises(ValueError):
        hnf_triangular([[1, 1], [2, 2]])


@settings(max_examples=60)
@given(st.integers(1, 3).flatmap(
    lambda n: st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n),
                       min_size=n, max_size=n + 2)))
def test_hnf_shape_and_same_lattice(gens):
    n = len(gens[0])
    if rank(gens, QQ) < n:
        return
    tb = hnf_triangular(gens)
    for i, row in enumerate(tb.rows):
        assert row[i] > 0
        assert all(x == 0 for x in row[i + 1:])
        for j in range(i + 1, n):
            assert 0 <= tb.off_diagonal(i, j) < tb.diagonal[i]
    # every generator is an integer combination of the rows and vice versa
    B = [list(map(Fraction, r)) for r in tb.rows]
    Binv = inverse(B, QQ)
    for g in gens:
        coords = matmul([list(g)], Binv, QQ)[0]
        assert all(c.denominator == 1 for c in coords)
    # adding the rows to the generators does not enlarge the lattice
    assert hnf_triangular([list(g) for g in gens] + [list(r) for r in tb.rows]).rows == tb.rows
    assert abs(det(B, QQ)) == tb.index


def test_integer_kernel_generates_solutions():
    m = [[1, 2, 3]]
    ker = integer_kernel(m, 3)
    assert len(ker) == 2
    for v in ker:
        assert sum(a * b for a, b in zip(m[0], v)) == 0
    # (1, 1, -1) is reachable with integer coefficients
    target = [1, 1, -1]
    found = any(all(a * ker[0][t] + b * ker[1][t] == target[t] for t in range(3))
                for a in range(-10, 11) for b in range(-10, 11))
    assert found


def test_positive_kernel_examples():
    assert has_positive_kernel_vector([[1, 2]]) is False
    assert has_positive_kernel_vector([[1, -1]]) is True
    assert has_positive_kernel_vector([[1, -2], [-1, 1]]) is False


def test_positive_kernel_dimension_guard():
    with pytest.raises(DimensionTooLarge):
        has_positive_kernel_vector([[1] * 13])


def test_positive_kernel_matches_exhaustive_search():
    # every small 1- or 2-row matrix with entries in [-2, 2] and <= 3 columns,
    # plus a seeded sample of 4-column matrices with entries in [-5, 5]
    cases = [[list(r)] for r in product(range(-2, 3), repeat=3)]
    cases += [[list(r1), list(r2)] for r1 in product(range(-2, 3), repeat=2)
              for r2 in product(range(-2, 3), repeat=2)]
    rng = np.random.default_rng(11)
    for _ in range(150):
        rows = int(rng.integers(1, 3))
        cases.append(rng.integers(-5, 6, size=(rows, 4)).tolist())
    for w in cases:
        assert has_positive_kernel_vector(w) == brute_positive_kernel(w, cramer_bound(w)), w
