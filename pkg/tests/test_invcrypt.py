import pytest

from invdeg.diagmin import DiagonalAction, WeightRow
from invdeg.exactalg import GF, InvDegError, inverse, matmul
from invdeg.invcrypt import (Ciphertext, CryptoConfig, IndexOutOfRange, NoMatch, SeparationFailed,
                             build_keys, ciphertext_from_json, ciphertext_to_json, decrypt,
                             encrypt, encrypt_with_word, keygen, primitive_root,
                             private_key_from_json, private_key_to_json, public_key_from_json,
                             public_key_to_json, secret_generators, separates)

ACT6 = DiagonalAction(2, (WeightRow(6, (1, 2)),))
A = [[1, 1], [0, 1]]


def worked():
    cfg = CryptoConfig(p=7, action=ACT6)
    return build_keys(cfg, A, [(1, 1), (1, 3)], [((0, 1),)])


def test_primitive_root_and_secret_generator():
    assert primitive_root(7) == 3
    assert primitive_root(13) == 2
    assert secret_generators(7, ACT6) == [[[3, 0], [0, 2]]]


def test_worked_key():
    pk, sk = worked()
    assert sk.invariant == (0, 3)
    assert sk.table == (1, 6)
    assert pk.generators == (((3, 1), (0, 2)),)


def test_separation():
    assert separates((0, 3), A, [(1, 1), (1, 3)], 7)
    assert not separates((0, 3), A, [(1, 1), (1, 2)], 7)
    assert separates((0, 3), A, [(1, 1)], 7)
    with pytest.raises(SeparationFailed):
        build_keys(CryptoConfig(p=7, action=ACT6), A, [(1, 1), (1, 2)], [((0, 1),)])


def test_encrypt_examples():
    pk, _ = worked()
    assert encrypt_with_word(pk, 0, ((0, 1),)).u == (4, 2)
    assert encrypt_with_word(pk, 0, ()).u == (1, 1)
    assert encrypt_with_word(pk, 1, ((0, 1),)).u == (6, 6)
    with pytest.raises(IndexOutOfRange):
        encrypt_with_word(pk, 2, ())


def test_decrypt_examples():
    _, sk = worked()
    assert decrypt(sk, Ciphertext((4, 2))) == 0
    assert decrypt(sk, Ciphertext((1, 3))) == 1
    with pytest.raises(NoMatch):
        decrypt(sk, Ciphertext((0, 0)))


def test_trivial_group_uses_first_coordinate():
    cfg = CryptoConfig(p=7, action=DiagonalAction(2, (WeightRow(1, (0, 0)),)))
    pk, sk = build_keys(cfg, [[1, 0], [0, 1]], [(1, 5), (2, 5)], [((0, 1),)])
    assert sk.invariant == (1, 0)
    assert decrypt(sk, encrypt(pk, 1, 3)) == 1


def test_config_validation():
    with pytest.raises(InvDegError):
        CryptoConfig(p=7, action=DiagonalAction(2, (WeightRow(4, (1, 1)),)))
    with pytest.raises(InvDegError):
        CryptoConfig(p=7, action=DiagonalAction(2, (WeightRow(0, (1, -1)),)))
    with pytest.raises(ValueError):
        CryptoConfig(p=9, action=ACT6)


def test_keygen_deterministic_and_public_group_is_full():
    cfg = CryptoConfig(p=13, action=DiagonalAction(3, (WeightRow(12, (1, 4, 7)),)), s=3)
    pk1, sk1 = keygen(cfg, 42)
    pk2, sk2 = keygen(cfg, 42)
    assert pk1 == pk2 and sk1 == sk2
    assert keygen(cfg, 43)[0] != pk1
    # public generators are conjugates a^-1 g a of secret-group elements
    F = GF(13)
    a = [list(r) for r in sk1.a]
    for h in pk1.generators:
        g = matmul(matmul(a, [list(r) for r in h], F), inverse(a, F), F)
        assert all(g[i][j] == 0 for i in range(3) for j in range(3) if i != j)


def test_round_trip_many_seeds():
    cfg = CryptoConfig(p=31, action=DiagonalAction(2, (WeightRow(6, (1, 3)),)), s=4)
    pk, sk = keygen(cfg, 7)
    for seed in range(40):
        idx = seed % 4
        assert decrypt(sk, encrypt(pk, idx, seed)) == idx


def test_encrypt_is_deterministic():
    pk, _ = worked()
    assert encrypt(pk, 1, 99) == encrypt(pk, 1, 99)


def test_json_round_trips():
    cfg = CryptoConfig(p=13, action=DiagonalAction(2, (WeightRow(4, (1, 1)),)), variant=1)
    pk, sk = keygen(cfg, 5)
    assert public_key_from_json(public_key_to_json(pk)) == pk
    assert private_key_from_json(private_key_to_json(sk)) == sk
    doc = public_key_to_json(pk)
    assert doc["invariant"] == {"exponents": list(sk.invariant)}
    assert set(doc["group"]) == {"action", "generators"}
    ct = encrypt(pk, 0, 1)
    assert ciphertext_from_json(ciphertext_to_json(ct)) == ct
    pk2, sk2 = worked()
    assert "group" not in public_key_to_json(pk2)
    assert private_key_from_json(private_key_to_json(sk2)) == sk2


def test_json_rejects_out_of_range_entries():
    pk, _ = worked()
    doc = public_key_to_json(pk)
    doc["messages"][0] = [7, 1]
    with pytest.raises(InvDegError):
        public_key_from_json(doc)
    with pytest.raises(InvDegError):
        public_key_from_json({"p": 7})
