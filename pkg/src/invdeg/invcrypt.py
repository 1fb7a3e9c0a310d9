"""Public-key cryptosystem built on invariants of a secret diagonal group over GF(p).

Alice picks a diagonal group ``G``, an invariant monomial ``f`` of ``G`` and an
invertible matrix ``a``. Messages ``v_i`` are chosen so that the values
``f(a v_i)`` are pairwise distinct. The public group is generated by the
conjugates ``h_i = a^-1 g_i a`` of random words ``g_i`` in the generators of
``G``. Bob sends ``u = h v_i`` for a random word ``h`` in the ``h_i``; Alice
recovers ``i`` from ``f(a u) = f(a v_i)``.

Variant one publishes ``G`` and ``f`` alongside the public generators;
variant two keeps them secret.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .diagmin import DiagonalAction, WeightRow, triangular_invariant_basis
from .exactalg import (GF, InvDegError, PrimeField, det, identity, inverse, matmul,
                       matvec)
from .poly import exponent_vectors
from .rng import make_rng, randint

Matrix = list[list[int]]
Word = tuple[tuple[int, int], ...]


class SeparationFailed(InvDegError):
    pass


class NoInvariant(InvDegError):
    pass


class GenerationFailed(InvDegError):
    pass


class NoMatch(InvDegError):
    pass


class IndexOutOfRange(InvDegError):
    pass


MAX_MATRIX_ATTEMPTS = 1000
MAX_WORD_ATTEMPTS = 64


@dataclass(frozen=True)
class CryptoConfig:
    p: int
    action: DiagonalAction
    s: int = 2
    m: int = 2
    word_length: int = 4
    variant: int = 2
    min_degree: int = 1
    degree_cap: int = 32

    def __post_init__(self):
        GF(self.p)
        if self.s < 2:
            raise InvDegError("need at least two messages")
        if self.m < 1 or self.word_length < 1:
            raise InvDegError("m and word_length must be >= 1")
        if self.variant not in (1, 2):
            raise InvDegError("variant must be 1 or 2")
        for r in self.action.generators:
            if r.modulus == 0 or (self.p - 1) % r.modulus:
                raise InvDegError(f"modulus {r.modulus} does not divide p-1 = {self.p - 1}")

    @property
    def n(self) -> int:
        return self.action.n

    @property
    def k(self) -> int:
        return self.action.modulus_lcm


@dataclass(frozen=True)
class PublicKey:
    p: int
    n: int
    generators: tuple[tuple[tuple[int, ...], ...], ...]
    messages: tuple[tuple[int, ...], ...]
    variant: int
    group: DiagonalAction | None = None
    invariant: tuple[int, ...] | None = None

    @property
    def field(self) -> PrimeField:
        return GF(self.p)


@dataclass(frozen=True)
class PrivateKey:
    public: PublicKey
    a: tuple[tuple[int, ...], ...]
    invariant: tuple[int, ...]
    action: DiagonalAction
    table: tuple[int, ...]
    secret_generators: tuple = field(default=(), compare=False)


@dataclass(frozen=True)
class Ciphertext:
    u: tuple[int, ...]


def primitive_root(p: int) -> int:
    """Smallest positive primitive root of the prime ``p``."""
    order = p - 1
    factors, x, q = [], order, 2
    while q * q <= x:
        if x % q == 0:
            factors.append(q)
            while x % q == 0:
                x //= q
        q += 1
    if x > 1:
        factors.append(x)
    for gamma in range(2, p):
        if all(pow(gamma, order // q, p) != 1 for q in factors):
            return gamma
    return 1  # p == 2 is rejected earlier


def secret_generators(p: int, action: DiagonalAction) -> list[Matrix]:
    gamma = primitive_root(p)
    mats = []
    for r in action.generators:
        lam = pow(gamma, (p - 1) // r.modulus, p)
        mats.append([[pow(lam, w, p) if i == j else 0 for j, w in enumerate(r.weights)]
                     for i in range(action.n)])
    return mats


def monomial_value(f: Sequence[int], v: Sequence[int], p: int) -> int:
    out = 1
    for x, e in zip(v, f):
        out = out * pow(x, e, p) % p
    return out


def invariant_value(f, a, v, p: int) -> int:
    return monomial_value(f, matvec(a, v, GF(p)), p)


def separates(f: Sequence[int], a, msgs: Sequence[Sequence[int]], p: int) -> bool:
    values = [invariant_value(f, a, v, p) for v in msgs]
    return len(set(values)) == len(values)


def choose_invariant(cfg: CryptoConfig) -> tuple[int, ...]:
    """First invariant monomial in degree-lex order with degree >= ``min_degree``."""
    for deg in range(max(cfg.min_degree, 1), cfg.degree_cap + 1):
        for e in exponent_vectors(cfg.n, deg):
            if all(r.holds(e) for r in cfg.action.generators):
                return e
    raise NoInvariant(f"no invariant monomial of degree <= {cfg.degree_cap}")


def random_word(rng, m: int, length: int) -> Word:
    """``length`` letters, each a generator index with exponent +1 or -1."""
    return tuple((randint(rng, 0, m), 1 - 2 * randint(rng, 0, 2)) for _ in range(length))


def word_matrix(gens: Sequence[Matrix], word: Word, F: PrimeField, n: int) -> Matrix:
    invs = {}
    out = identity(n, F)
    for idx, sign in word:
        if sign > 0:
            g = gens[idx]
        else:
            if idx not in invs:
                invs[idx] = inverse(gens[idx], F)
            g = invs[idx]
        out = matmul(out, g, F)
    return out


def _word_action(cfg: CryptoConfig, words: Sequence[Word]) -> DiagonalAction:
    """Diagonal action of the subgroup generated by ``words``, in terms of a primitive root."""
    q = cfg.p - 1
    base = [tuple(w * (q // r.modulus) for w in r.weights) for r in cfg.action.generators]
    rows = []
    for word in words:
        e = [0] * cfg.n
        for idx, sign in word:
            e = [x + sign * y for x, y in zip(e, base[idx])]
        rows.append(WeightRow(q, tuple(e)))
    return DiagonalAction(cfg.n, tuple(rows))


def words_generate_group(cfg: CryptoConfig, words: Sequence[Word]) -> bool:
    q = cfg.p - 1
    full = DiagonalAction(cfg.n, tuple(
        WeightRow(q, tuple(w * (q // r.modulus) for w in r.weights)) for r in cfg.action.generators))
    sub = _word_action(cfg, words)
    # G' <= G always; equal orders mean equal groups
    return triangular_invariant_basis(sub).index == triangular_invariant_basis(full).index


def _freeze(m) -> tuple:
    return tuple(tuple(int(x) for x in row) for row in m)


def build_keys(cfg: CryptoConfig, a, messages, words: Sequence[Word],
               invariant: Sequence[int] | None = None) -> tuple[PublicKey, PrivateKey]:
    """Assemble a key pair from explicit choices of ``a``, messages and words."""
    F = GF(cfg.p)
    a = [[F(x) for x in row] for row in a]
    if det(a, F) == 0:
        raise InvDegError("matrix a is singular")
    f = tuple(invariant) if invariant is not None else choose_invariant(cfg)
    if not all(r.holds(f) for r in cfg.action.generators):
        raise InvDegError(f"{f} is not invariant under the secret action")
    messages = [tuple(F(x) for x in v) for v in messages]
    if not separates(f, a, messages, cfg.p):
        raise SeparationFailed("f(a v) values are not pairwise distinct")
    table = tuple(invariant_value(f, a, v, cfg.p) for v in messages)
    gens = secret_generators(cfg.p, cfg.action)
    a_inv = inverse(a, F)
    public = []
    for word in words:
        if gens:
            g = word_matrix(gens, word, F, cfg.n)
        else:
            g = identity(cfg.n, F)
        public.append(_freeze(matmul(matmul(a_inv, g, F), a, F)))
    pk = PublicKey(cfg.p, cfg.n, tuple(public), tuple(messages), cfg.variant,
                   cfg.action if cfg.variant == 1 else None,
                   f if cfg.variant == 1 else None)
    sk = PrivateKey(pk, _freeze(a), f, cfg.action, table, tuple(_freeze(g) for g in gens))
    return pk, sk


def keygen(cfg: CryptoConfig, seed) -> tuple[PublicKey, PrivateKey]:
    rng = make_rng(seed)
    F = GF(cfg.p)
    f = choose_invariant(cfg)
    for _ in range(MAX_MATRIX_ATTEMPTS):
        a = [[randint(rng, 0, cfg.p) for _ in range(cfg.n)] for _ in range(cfg.n)]
        if det(a, F) != 0:
            break
    else:
        raise GenerationFailed("could not sample an invertible matrix")

    msgs, values = [], set()
    for _ in range(64 * cfg.s):
        v = tuple(randint(rng, 0, cfg.p) for _ in range(cfg.n))
        val = invariant_value(f, a, v, cfg.p)
        if val != 0 and val not in values:
            msgs.append(v)
            values.add(val)
            if len(msgs) == cfg.s:
                break
    else:
        raise SeparationFailed(f"could not find {cfg.s} separated messages over GF({cfg.p})")

    ngens = len(cfg.action.generators)
    for _ in range(MAX_WORD_ATTEMPTS):
        # lengths vary in [1, L]: with a fixed even L every word in a single
        # generator has even exponent sum and misses half of an even-order group
        words = [random_word(rng, max(ngens, 1), randint(rng, 1, cfg.word_length + 1))
                 for _ in range(cfg.m)]
        if ngens == 0 or words_generate_group(cfg, words):
            break
    else:
        raise GenerationFailed("public words never generated the whole secret group; increase m")
    return build_keys(cfg, a, msgs, words, invariant=f)


def encrypt_with_word(pk: PublicKey, idx: int, word: Word) -> Ciphertext:
    if not 0 <= idx < len(pk.messages):
        raise IndexOutOfRange(f"message index {idx} out of range")
    F = pk.field
    h = word_matrix([list(map(list, g)) for g in pk.generators], word, F, pk.n)
    return Ciphertext(tuple(matvec(h, pk.messages[idx], F)))


def encrypt(pk: PublicKey, idx: int, seed, wordlen: int = 8) -> Ciphertext:
    rng = make_rng(seed)
    word = random_word(rng, len(pk.generators), wordlen)
    return encrypt_with_word(pk, idx, word)


def decrypt(sk: PrivateKey, ct: Ciphertext) -> int:
    p = sk.public.p
    if len(ct.u) != sk.public.n:
        raise InvDegError("ciphertext dimension mismatch")
    val = invariant_value(sk.invariant, sk.a, ct.u, p)
    try:
        return sk.table.index(val)
    except ValueError:
        raise NoMatch(f"invariant value {val} matches no message") from None


# ---------------------------------------------------------------------------
# file formats
# ---------------------------------------------------------------------------

def _ints(m):
    return [list(map(int, row)) for row in m]


def public_key_to_json(pk: PublicKey) -> dict:
    doc = {"p": pk.p, "n": pk.n,
           "generators": [_ints(g) for g in pk.generators],
           "messages": _ints(pk.messages),
           "variant": pk.variant}
    if pk.group is not None:
        doc["group"] = {"action": pk.group.to_json(),
                        "generators": [_ints(g) for g in secret_generators(pk.p, pk.group)]}
    if pk.invariant is not None:
        doc["invariant"] = {"exponents": list(pk.invariant)}
    return doc


def _check_residues(doc_vals, p):
    for x in doc_vals:
        if not (isinstance(x, int) and 0 <= x < p):
            raise InvDegError(f"entry {x!r} is not an integer in [0, {p})")


def public_key_from_json(doc) -> PublicKey:
    try:
        p, n = int(doc["p"]), int(doc["n"])
        GF(p)
        gens = tuple(_freeze(g) for g in doc["generators"])
        msgs = tuple(tuple(int(x) for x in v) for v in doc["messages"])
        for g in gens:
            if len(g) != n or any(len(r) != n for r in g):
                raise InvDegError("generator has wrong shape")
            for r in g:
                _check_residues(r, p)
        for v in msgs:
            if len(v) != n:
                raise InvDegError("message has wrong length")
            _check_residues(v, p)
        group = DiagonalAction.from_json(doc["group"]["action"]) if "group" in doc else None
        inv = tuple(doc["invariant"]["exponents"]) if "invariant" in doc else None
        return PublicKey(p, n, gens, msgs, int(doc["variant"]), group, inv)
    except (KeyError, TypeError) as exc:
        raise InvDegError(f"malformed public key: {exc}") from exc


def private_key_to_json(sk: PrivateKey) -> dict:
    doc = public_key_to_json(sk.public)
    doc.update({"a": _ints(sk.a),
                "invariant": {"exponents": list(sk.invariant)},
                "table": list(sk.table),
                "secret_action": sk.action.to_json()})
    return doc


def private_key_from_json(doc) -> PrivateKey:
    pk = public_key_from_json({k: v for k, v in doc.items()
                               if k not in ("invariant",) or doc.get("variant") == 1})
    try:
        action = DiagonalAction.from_json(doc["secret_action"])
        a = _freeze(doc["a"])
        for r in a:
            _check_residues(r, pk.p)
        sk = PrivateKey(pk, a, tuple(doc["invariant"]["exponents"]), action,
                        tuple(int(x) for x in doc["table"]),
                        tuple(_freeze(g) for g in secret_generators(pk.p, action)))
    except (KeyError, TypeError) as exc:
        raise InvDegError(f"malformed private key: {exc}") from exc
    return sk


def ciphertext_to_json(ct: Ciphertext) -> dict:
    return {"u": list(ct.u)}


def ciphertext_from_json(doc) -> Ciphertext:
    try:
        return Ciphertext(tuple(int(x) for x in doc["u"]))
    except (KeyError, TypeError) as exc:
        raise InvDegError(f"malformed ciphertext: {exc}") from exc
