"""Two-generator diagonal subgroups of GL_2 with a closed-form minimal degree.

The group is generated by ``A = diag(l^v1, l^(j v2))`` and
``B = diag(l^g, l^(d g))`` where ``l`` is a primitive ``e``-th root of unity.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from math import gcd

from .diagmin import DiagonalAction, WeightRow
from .exactalg import InvDegError


class InvalidParams(InvDegError):
    pass


@dataclass(frozen=True)
class Gl2Params:
    e: int
    g: int
    v1: int
    v2: int
    j: int
    d: int

    def action(self) -> DiagonalAction:
        return DiagonalAction(2, (WeightRow(self.e, (self.v1, self.j * self.v2)),
                                  WeightRow(self.e, (self.g, self.d * self.g))))


def _prime_factors(n: int) -> list[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _squarefree(n: int) -> bool:
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        p += 1
    return True


def validate_params(p: Gl2Params) -> list[str]:
    """All violated conditions; an empty list means the tuple is admissible."""
    e, g, v1, v2, j, d = p.e, p.g, p.v1, p.v2, p.j, p.d
    if min(e, g, v1, v2, j, d) < 1:
        return ["all parameters must be positive integers"]
    bad = []
    if v1 <= 1:
        bad.append("v1 > 1")
    if v2 <= 1:
        bad.append("v2 > 1")
    if g % (v1 * v2):
        bad.append("v1*v2 | g")
    if e % g:
        bad.append("g | e")
    if e % d:
        bad.append("d | e")
    for name, a, b in (("v1,v2", v1, v2), ("e,j", e, j), ("v1,d", v1, d), ("v2,d", v2, d)):
        if gcd(a, b) != 1:
            bad.append(f"gcd({name})={gcd(a, b)}")
    if not _squarefree(d):
        bad.append("d square-free")
    stray = [q for q in _prime_factors(e) if v1 % q and v2 % q and d % q]
    if stray:
        bad.append(f"primes {stray} of e divide none of v1, v2, d")
    if gcd(e, d * v1 - j * v2) != 1:
        bad.append(f"gcd(e, d*v1 - j*v2)={gcd(e, d * v1 - j * v2)}")
    return bad


def _require_valid(p: Gl2Params):
    bad = validate_params(p)
    if bad:
        raise InvalidParams("; ".join(bad))


def closed_form_mindeg(p: Gl2Params) -> int:
    _require_valid(p)
    e, g, v1, v2, j = p.e, p.g, p.v1, p.v2, p.j
    if j * v2 < v1:
        return e // v1
    if j * v2 == v1:
        raise InvalidParams("j*v2 == v1")
    step = e * (v2 * j - v1) // g
    inner = [e * s // v1 - (g * s // (j * v1 * v2)) * step for s in range(1, j)]
    return min(inner + [e // v2])


def bruteforce_mindeg(p: Gl2Params) -> int:
    """Smallest ``a1 + a2 > 0`` solving both congruences, scanning degrees upward."""
    _require_valid(p)
    e = p.e
    for total in range(1, e + 1):
        for a1 in range(total, -1, -1):
            a2 = total - a1
            if (p.v1 * a1 + p.j * p.v2 * a2) % e == 0 and (p.g * a1 + p.d * p.g * a2) % e == 0:
                return total
    raise AssertionError("(e, 0) always solves the system")


def valid_params_up_to(emax: int):
    """Every admissible tuple with ``e <= emax`` and ``0 < j < e``."""
    for e in range(2, emax + 1):
        for g in (x for x in range(1, e + 1) if e % x == 0):
            for v1 in range(2, g + 1):
                for v2 in range(2, g // v1 + 1):
                    if g % (v1 * v2):
                        continue
                    for d in (x for x in range(1, e + 1) if e % x == 0):
                        for j in range(1, e):
                            p = Gl2Params(e, g, v1, v2, j, d)
                            if not validate_params(p):
                                yield p


def to_json(p: Gl2Params) -> dict:
    return asdict(p)
