"""Acceptance checks shared by ``invdeg selftest`` and ``tests/test_acceptance.py``.

Every check is seeded and returns a :class:`CriterionResult`; nothing here is
tuned to the outcome, a failing check reports what went wrong in ``detail``.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Callable

from .attack import attack_public_key, find_min_invariant, recover_plaintext
from .diagmin import (DiagonalAction, Found, WeightRow, element_k_g, element_order_and_residues,
                      group_elements, group_exponent, leading_principal_minors, matrix_group_closure,
                      minimal_degree_bruteforce, minimal_degree_ip, reynolds_quadratic,
                      triangular_invariant_basis)
from .exactalg import GF, QQ, InvDegError, det, inverse, matmul, transpose
from .gl2family import Gl2Params, bruteforce_mindeg, closed_form_mindeg, valid_params_up_to
from .invcrypt import (Ciphertext, CryptoConfig, build_keys, decrypt, encrypt, keygen,
                       secret_generators)
from .oracles import (brute_k_g, coaction_is_invariant, in_span, signed_permutation_matrices,
                      superinvariant_dimension)
from .rng import make_rng, randint, sub_seed
from .superinv import (CharacterGroup, SuperAction, SuperFound, SuperPair, SuperPolynomial,
                       apply_phi, apply_pq, canonical_representative, coefficient_vector,
                       d_invariant_pairs, equivalence_class, even_action, minimal_superdegree,
                       pairs_of_degree, super_system, superinvariant_basis)

DEFAULT_SEED = 20240611


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    detail: str
    seconds: float = 0.0

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        return f"[{tag}] {self.number:2d} {self.name}: {self.detail} ({self.seconds:.1f}s)"


# ---------------------------------------------------------------------------
# random instance generators
# ---------------------------------------------------------------------------

def random_finite_action(rng, nmax: int = 4, gmax: int = 2, kmax: int = 12) -> DiagonalAction:
    n = randint(rng, 1, nmax + 1)
    rows = []
    for _ in range(randint(rng, 1, gmax + 1)):
        k = randint(rng, 2, kmax + 1)
        rows.append(WeightRow(k, tuple(randint(rng, 0, k) for _ in range(n))))
    return DiagonalAction(n, tuple(rows))


def _divisors(n: int) -> list[int]:
    return [d for d in range(2, n + 1) if n % d == 0]


def random_crypto_action(rng, p: int, n: int, kmax: int | None = None) -> DiagonalAction:
    ks = [k for k in _divisors(p - 1) if kmax is None or k <= kmax]
    k = ks[randint(rng, 0, len(ks))]
    return DiagonalAction(n, (WeightRow(k, tuple(randint(rng, 0, k) for _ in range(n))),))


def random_keypair(rng, p: int, n: int, s: int, kmax: int | None = None, tries: int = 200,
                   stats: dict | None = None):
    """Key pair for a random secret action, resampling when generation fails."""
    for attempt in range(tries):
        if stats is not None and attempt:
            stats[p] = stats.get(p, 0) + 1
        act = random_crypto_action(rng, p, n, kmax)
        cfg = CryptoConfig(p=p, action=act, s=s)
        try:
            return cfg, *keygen(cfg, randint(rng, 0, 1 << 62))
        except InvDegError:
            continue
    raise RuntimeError(f"no key pair for p={p} n={n} s={s}")


# ---------------------------------------------------------------------------
# criteria
# ---------------------------------------------------------------------------

def check_ip_oracle(seed: int) -> tuple[bool, str]:
    rng = make_rng(seed)
    start = time.perf_counter()
    bad = []
    for _ in range(200):
        act = random_finite_action(rng)
        ip = minimal_degree_ip(triangular_invariant_basis(act))
        bf = minimal_degree_bruteforce(act, act.modulus_lcm)
        if not isinstance(bf, Found) or bf.degree != ip:
            bad.append((act.to_json(), ip, bf))
    elapsed = time.perf_counter() - start
    ok = not bad and elapsed < 60
    return ok, f"200 actions, {len(bad)} mismatches, {elapsed:.1f}s (limit 60s)"


GL2_WORKED = [((6, 6, 3, 2, 1, 1), 2), ((6, 6, 2, 3, 1, 1), 2), ((30, 10, 5, 2, 7, 3), 6)]


def check_gl2(seed: int) -> tuple[bool, str]:
    count, bad = 0, []
    for p in valid_params_up_to(40):
        count += 1
        if closed_form_mindeg(p) != bruteforce_mindeg(p):
            bad.append(p)
    for args, want in GL2_WORKED:
        p = Gl2Params(*args)
        got = (closed_form_mindeg(p), bruteforce_mindeg(p))
        if got != (want, want):
            bad.append((p, got))
    return not bad and count > 0, f"{count} swept tuples + 3 worked, {len(bad)} mismatches"


def check_bounds(seed: int) -> tuple[bool, str]:
    rng = make_rng(seed)
    done, bad = 0, []
    while done < 50:
        act = random_finite_action(rng, nmax=3, kmax=12)
        elems = group_elements(act)
        if len(elems) == 1 or len(elems) > 64:
            continue
        done += 1
        q = act.modulus_lcm
        M = minimal_degree_ip(triangular_invariant_basis(act))
        nontrivial = [e for e in elems if any(e)]
        kgs = [element_k_g(e, q) for e in nontrivial]
        # BFS value against plain enumeration
        if kgs != [brute_k_g(*element_order_and_residues(e, q)) for e in nontrivial]:
            bad.append(("k_g", act.to_json()))
        kmax = max(kgs)
        if not kmax <= M <= group_exponent(act):
            bad.append((act.to_json(), kmax, M))
    sharp = DiagonalAction(3, (WeightRow(4, (1, 1, 1)),))
    M4 = minimal_degree_ip(triangular_invariant_basis(sharp))
    ok = not bad and M4 == 4
    return ok, f"50 groups, {len(bad)} violations; w=(1,1,1) mod 4 gives M={M4}"


def _worked_key():
    act = DiagonalAction(2, (WeightRow(6, (1, 2)),))
    cfg = CryptoConfig(p=7, action=act)
    return build_keys(cfg, [[1, 1], [0, 1]], [(1, 1), (1, 3)], [((0, 1),)])


def check_crypto_roundtrip(seed: int) -> tuple[bool, str]:
    _, sk = _worked_key()
    worked = decrypt(sk, Ciphertext((4, 2)))
    start = time.perf_counter()
    settings = [(p, n, s) for p in (7, 13, 31, 97) for n in (2, 3) for s in (2, 4)]
    fails = trials = 0
    resampled: dict = {}
    for t in range(500):
        p, n, s = settings[t % len(settings)]
        rng = make_rng(sub_seed(seed, t))
        cfg, pk, sk = random_keypair(rng, p, n, s, stats=resampled)
        idx = randint(rng, 0, s)
        ct = encrypt(pk, idx, randint(rng, 0, 1 << 62))
        fails += decrypt(sk, ct) != idx
        trials += 1
    elapsed = time.perf_counter() - start
    ok = worked == 0 and fails == 0 and trials == 500 and elapsed < 30
    return ok, (f"worked u=(4,2) -> {worked}; {trials} trials, {fails} failures, "
                f"{elapsed:.1f}s (limit 30s); keygen resamples by p: {resampled}")


def check_attack(seed: int) -> tuple[bool, str]:
    pk, sk = _worked_key()
    rep = attack_public_key(pk, 4)
    basis = rep.invariant_basis
    cube = len(basis) == 1 and list(basis[0].terms) == [(0, 3)]
    recovered = []
    for idx in range(len(pk.messages)):
        ct = encrypt(pk, idx, sub_seed(seed, idx))
        recovered.append(recover_plaintext(pk.messages, basis, ct.u) == idx)
    worked_ok = rep.found_degree == 3 and cube and all(recovered)

    rng = make_rng(seed)
    done, bad = 0, []
    while done < 50:
        p = (13, 31, 37)[randint(rng, 0, 3)]
        n = randint(rng, 2, 4)
        cfg, pk, sk = random_keypair(rng, p, n, 2)
        M = minimal_degree_bruteforce(cfg.action, cfg.k)
        if not isinstance(M, Found) or M.degree > 4:
            continue
        done += 1
        idx = randint(rng, 0, 2)
        ct = encrypt(pk, idx, randint(rng, 0, 1 << 62))
        rep = attack_public_key(pk, 6, ct)
        m = len(pk.generators)
        sizes_ok = all(rows == m * comb(n + d - 1, d) and cols == comb(n + d - 1, d)
                       for d, rows, cols in rep.system_sizes)
        degrees_seen = [d for d, _, _ in rep.system_sizes]
        if (rep.found_degree != M.degree or degrees_seen != list(range(1, M.degree + 1))
                or not sizes_ok or rep.recovered_index != idx):
            bad.append((cfg.action.to_json(), M.degree, rep.found_degree))
    ok = worked_ok and not bad
    return ok, (f"worked key degree {3 if worked_ok else 'wrong'}; "
                f"50 random keys, {len(bad)} mismatches")


def _gen(F, s, j, odd):
    return (SuperPolynomial.odd_generator if odd else SuperPolynomial.even_generator)(F, s, j)


def _span_vectors(polys, pairs):
    return [[f.terms.get(p, 0) for p in pairs] for f in polys]


def check_super_example(seed: int) -> tuple[bool, str]:
    F = QQ
    f10, f11 = _gen(F, 2, 0, False), _gen(F, 2, 0, True)
    f20, f21 = _gen(F, 2, 1, False), _gen(F, 2, 1, True)
    named = {0: [f10 * f20, f10 * f21 - f20 * f11],
             1: [f10 * f20 - f11 * f21, f10 * f21 - f20 * f11]}
    notes, ok = [], True
    for xi in (0, 1):
        act = SuperAction(CharacterGroup(1, ()), (0,), (xi,), ((1,), (-1,)))
        dims = [len(superinvariant_basis(act, d)) for d in range(1, 7)]
        oracle = [superinvariant_dimension(act, d) for d in range(1, 7)]
        expected = [0 if d % 2 else 2 for d in range(1, 7)]
        b2 = superinvariant_basis(act, 2)
        pairs = pairs_of_degree(2, 2)
        span = _span_vectors(b2, pairs)
        in_ok = all(in_span(span, v[0]) for v in (_span_vectors([g], pairs) for g in named[xi]))
        verified = all(coaction_is_invariant(act, b)
                       for d in range(1, 7) for b in superinvariant_basis(act, d))
        nonmono = any(len(b.terms) >= 2 for b in b2)
        this = dims == oracle == expected and in_ok and verified and nonmono
        ok &= this
        notes.append(f"xi={xi} dims={dims} oracle={oracle}")
    return ok, "; ".join(notes)


def _random_pair(rng, s: int, lmax: int = 6) -> SuperPair:
    total = randint(rng, 0, lmax + 1)
    l = [0] * s
    for _ in range(total):
        l[randint(rng, 0, s)] += 1
    J = tuple(j for j in range(s) if randint(rng, 0, 2))
    return SuperPair(tuple(l), J)


def _pq_violations(p: SuperPair) -> list[str]:
    s = len(p.l)
    out = []
    for j in range(s):
        a = apply_pq("P", j, p)
        if a is not None and apply_pq("Q", j, a) != p:
            out.append(f"QP {j}")
        b = apply_pq("Q", j, p)
        if b is not None and apply_pq("P", j, b) != p:
            out.append(f"PQ {j}")
        for k in range(s):
            if k == j:
                continue
            for x, y in (("P", "Q"), ("P", "P"), ("Q", "Q")):
                u = apply_pq(y, k, p)
                v = apply_pq(x, j, p)
                lhs = apply_pq(x, j, u) if u is not None else None
                rhs = apply_pq(y, k, v) if v is not None else None
                if lhs is not None and rhs is not None and lhs != rhs:
                    out.append(f"{x}{j}{y}{k}")
    return out


def _canonical_problems(p: SuperPair) -> list[str]:
    s = len(p.l)
    cls = equivalence_class(p)
    rep = canonical_representative(p)
    problems = []
    if rep not in cls or any(canonical_representative(q) != rep for q in cls):
        problems.append("not class-constant")
    top = max(len(q.J) for q in cls)
    if len(rep.J) != top or sum(len(q.J) == top for q in cls) != 1:
        problems.append("J not uniquely maximal")
    if any(j not in rep.J and rep.l[j] > 0 for j in range(s)):
        problems.append("a further Q step applies")
    special = [q for q in cls if q.J == tuple(range(s)) or not any(q.l)]
    if special and rep not in special:
        problems.append("misses (l, all) / (0, J) member")
    return problems


def check_pq_algebra(seed: int) -> tuple[bool, str]:
    rng = make_rng(seed)
    bad = 0
    special = 0
    for _ in range(1000):
        s = randint(rng, 1, 6)
        p = _random_pair(rng, s)
        # random walk inside the class
        q = p
        for _ in range(8):
            j = randint(rng, 0, s)
            nxt = apply_pq("PQ"[randint(rng, 0, 2)], j, q)
            q = nxt if nxt is not None else q
        rep = canonical_representative(p)
        if canonical_representative(q) != rep or _pq_violations(p) or _canonical_problems(p):
            bad += 1
        special += rep.J == tuple(range(s)) or not any(rep.l)
    return bad == 0, f"1000 pairs, {bad} failures ({special} classes with an (l, all)/(0, J) member)"


def _random_super_action(rng, s: int, g, torsion=(), wmax: int = 3) -> SuperAction:
    weights = tuple((randint(rng, -wmax, wmax + 1),) + tuple(randint(rng, 0, m) for m in torsion)
                    for _ in range(s))
    xi = (randint(rng, -2, 3),)
    return SuperAction(CharacterGroup(1, tuple(torsion)), g, xi, weights)


def check_g0_equality(seed: int) -> tuple[bool, str]:
    rng = make_rng(seed)
    bad, phi_checked, phi_bad, finite = 0, 0, 0, 0
    for _ in range(30):
        s = randint(rng, 1, 4)
        act = _random_super_action(rng, s, (0,))
        sup = minimal_superdegree(act, 8)
        even = minimal_degree_bruteforce(even_action(act, False), 8)
        a = sup.degree if isinstance(sup, SuperFound) else None
        b = even.degree if isinstance(even, Found) else None
        bad += a != b
        finite += a is not None
        cands = [p for d in range(1, 5) for p in d_invariant_pairs(act, d)]
        if cands:
            p = cands[randint(rng, 0, len(cands))]
            u = SuperPolynomial(act.field, s, {p: 1})
            w = apply_phi(act, u)
            system = super_system(act, p.degree)
            v = coefficient_vector(system, w)
            ok = v is not None and all(sum(r * x for r, x in zip(row, v)) == 0 for row in system.matrix)
            ok &= coaction_is_invariant(act, w)
            phi_checked += 1
            phi_bad += not ok
    passed = bad == 0 and phi_bad == 0 and phi_checked > 0
    return passed, (f"30 actions ({finite} finite), {bad} degree mismatches; "
                    f"phi check {phi_checked - phi_bad}/{phi_checked}")


def check_sandwich(seed: int) -> tuple[bool, str]:
    rng = make_rng(seed)
    done, bad, hist = 0, 0, {}
    while done < 20:
        s = randint(rng, 2, 4)
        act = _random_super_action(rng, s, (0, 1), torsion=(2,))
        low = minimal_degree_bruteforce(even_action(act, True), 8)
        if not isinstance(low, Found):
            continue
        done += 1
        Mp = low.degree
        sup = minimal_superdegree(act, 2 * Mp + 1)
        M = sup.degree if isinstance(sup, SuperFound) else None
        ok = M is not None and Mp <= M <= 2 * Mp
        bad += not ok
        key = "M=M'" if M == Mp else ("M=2M'" if M == 2 * Mp else "other")
        hist[key] = hist.get(key, 0) + 1
    return bad == 0, f"20 actions, {bad} violations, {dict(sorted(hist.items()))}"


def _random_rational_matrix(rng, n: int):
    while True:
        A = [[Fraction(randint(rng, -3, 4), randint(rng, 1, 3)) for _ in range(n)] for _ in range(n)]
        if det(A, QQ) != 0:
            return A


def check_reynolds(seed: int) -> tuple[bool, str]:
    rng = make_rng(seed)
    bad = 0
    orders = []
    for _ in range(20):
        n = randint(rng, 2, 4)
        mats = signed_permutation_matrices(n)
        gens = [mats[randint(rng, 0, len(mats))] for _ in range(randint(rng, 1, 3))]
        A = _random_rational_matrix(rng, n)
        Ai = inverse(A, QQ)
        conj = [matmul(matmul(Ai, g, QQ), A, QQ) for g in gens]
        elems = matrix_group_closure(conj, 48)
        orders.append(len(elems))
        Q = reynolds_quadratic(conj, cap=48)
        inv = all(matmul(matmul(transpose(g), Q, QQ), g, QQ) == Q for g in elems)
        pd = all(m > 0 for m in leading_principal_minors(Q))
        bad += not (inv and pd)
    return bad == 0, f"20 groups (orders {min(orders)}..{max(orders)}), {bad} failures"


SEMISIMPLE_PRIMES = (31, 37, 41, 43, 61, 73)


def check_semisimple(seed: int) -> tuple[bool, str]:
    rng = make_rng(seed)
    done, bad = 0, 0
    while done < 10:
        p = SEMISIMPLE_PRIMES[randint(rng, 0, len(SEMISIMPLE_PRIMES))]
        n = randint(rng, 2, 4)
        ks = [d for d in _divisors(p - 1) if d <= 12]
        k = ks[randint(rng, 0, len(ks))]
        w = [randint(rng, 0, k) for _ in range(n)]
        w[1] = w[0]  # repeated eigenvalue so a unipotent can commute with t
        act = DiagonalAction(n, (WeightRow(k, tuple(w)),))
        Mt = minimal_degree_bruteforce(act, k)
        if not isinstance(Mt, Found) or Mt.degree > 4:
            continue
        done += 1
        F = GF(p)
        t = secret_generators(p, act)[0]
        u = [[F(int(i == j) + int((i, j) == (0, 1))) for j in range(n)] for i in range(n)]
        assert matmul(t, u, F) == matmul(u, t, F)
        h = matmul(t, u, F)
        rep = find_min_invariant([h], 6, F)
        bad += rep.found_degree != Mt.degree
    return bad == 0, f"10 instances, {bad} mismatches"


@dataclass(frozen=True)
class Criterion:
    number: int
    name: str
    check: Callable[[int], tuple[bool, str]]


CRITERIA = (
    Criterion(1, "IP reduction equals brute force", check_ip_oracle),
    Criterion(2, "GL2 closed form equals brute force", check_gl2),
    Criterion(3, "k_g <= M <= exponent", check_bounds),
    Criterion(4, "crypto round trip", check_crypto_roundtrip),
    Criterion(5, "attack degree equals M", check_attack),
    Criterion(6, "superinvariant example", check_super_example),
    Criterion(7, "P/Q operator algebra", check_pq_algebra),
    Criterion(8, "g=0 equality", check_g0_equality),
    Criterion(9, "sandwich bound", check_sandwich),
    Criterion(10, "Reynolds quadratic form", check_reynolds),
    Criterion(11, "semisimple reduction", check_semisimple),
)


def run_criterion(c: Criterion, seed: int = DEFAULT_SEED) -> CriterionResult:
    start = time.perf_counter()
    try:
        ok, detail = c.check(sub_seed(seed, c.number))
    except Exception as exc:  # report, don't abort the whole suite
        ok, detail = False, f"{type(exc).__name__}: {exc}"
    return CriterionResult(c.number, c.name, ok, detail, time.perf_counter() - start)


def run_all(seed: int = DEFAULT_SEED) -> list[CriterionResult]:
    return [run_criterion(c, seed) for c in CRITERIA]
