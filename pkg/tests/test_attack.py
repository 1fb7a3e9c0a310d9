from invdeg.attack import (attack_public_key, find_min_invariant, invariant_system,
                           recover_plaintext)
from invdeg.diagmin import DiagonalAction, WeightRow
from invdeg.exactalg import GF, nullspace
from invdeg.invcrypt import Ciphertext, CryptoConfig, build_keys, encrypt
from invdeg.poly import Polynomial

F7 = GF(7)
H1 = [[3, 1], [0, 2]]


def worked():
    cfg = CryptoConfig(p=7, action=DiagonalAction(2, (WeightRow(6, (1, 2)),)))
    return build_keys(cfg, [[1, 1], [0, 1]], [(1, 1), (1, 3)], [((0, 1),)])


def test_system_examples():
    A = invariant_system([H1], 1, F7)
    assert len(A) == 2 and len(A[0]) == 2
    assert nullspace(A, F7, ncols=2) == []
    I = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert all(x == 0 for row in invariant_system([I], 2, F7) for x in row)
    ker = nullspace(invariant_system([[[3, 0], [0, 2]]], 3, F7), F7, ncols=4)
    assert [0, 0, 0, 1] in ker


def test_find_min_invariant_examples():
    rep = find_min_invariant([H1], 4, F7)
    assert rep.found_degree == 3
    assert rep.invariant_basis == [Polynomial.monomial(F7, (0, 3))]
    assert rep.system_sizes == [(1, 2, 2), (2, 3, 3), (3, 4, 4)]

    rep = find_min_invariant([[[1, 0, 0], [0, 1, 0], [0, 0, 1]]], 1, F7)
    assert rep.found_degree == 1 and len(rep.invariant_basis) == 3

    rep = find_min_invariant([[[3, 0], [0, 3]]], 5, F7)
    assert rep.found_degree is None and len(rep.system_sizes) == 5
    assert find_min_invariant([[[3, 0], [0, 3]]], 6, F7).found_degree == 6


def test_recover_examples():
    basis = [Polynomial.monomial(F7, (0, 3))]
    msgs = [(1, 1), (1, 3)]
    assert recover_plaintext(msgs, basis, (4, 2)) == 0
    assert recover_plaintext(msgs, basis, (1, 3)) == 1
    assert recover_plaintext(msgs, basis, (0, 0)) is None
    assert recover_plaintext([(1, 1), (2, 1)], basis, (1, 1)) is None


def test_attack_on_worked_key():
    pk, _ = worked()
    for idx in (0, 1):
        ct = encrypt(pk, idx, 17 + idx)
        rep = attack_public_key(pk, 4, ct)
        assert rep.found_degree == 3
        assert rep.recovered_index == idx
    rep = attack_public_key(pk, 2, Ciphertext((4, 2)))
    assert rep.found_degree is None and rep.recovered_index is None


def test_report_json():
    pk, _ = worked()
    doc = attack_public_key(pk, 4, Ciphertext((4, 2))).to_json()
    assert doc == {"found_degree": 3,
                   "basis": [[{"monomial_exponents": [0, 3], "coeff": 1}]],
                   "recovered_index": 0,
                   "system_sizes": [[1, 2, 2], [2, 3, 3], [3, 4, 4]]}
