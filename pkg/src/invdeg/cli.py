"""Command-line front end.

Every subcommand prints one minified JSON document with sorted keys on stdout.
Exit codes: 0 success, 2 invalid input, 3 search exhausted ``--dmax``.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .attack import attack_public_key
from .diagmin import (DiagonalAction, Found, Infinite, NotFoundUpTo, ip_witness,
                      minimal_degree_bruteforce, triangular_invariant_basis)
from .gl2family import Gl2Params, bruteforce_mindeg, closed_form_mindeg, validate_params
from .invcrypt import (CryptoConfig, ciphertext_from_json, ciphertext_to_json, decrypt, encrypt,
                       keygen, private_key_from_json, private_key_to_json, public_key_from_json,
                       public_key_to_json)
from .superinv import SuperAction, SuperFound, minimal_superdegree, superinvariant_basis

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_NOT_FOUND = 0, 1, 2, 3


class UsageError(Exception):
    pass


def dumps(doc) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def _load(path: str):
    try:
        return json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from exc


def _write(path: str | None, doc):
    if path:
        Path(path).write_text(dumps(doc) + "\n")


# ---------------------------------------------------------------------------
# subcommands; each returns (document, exit code)
# ---------------------------------------------------------------------------

def cmd_mindeg(args):
    act = DiagonalAction.from_json(_load(args.action))
    if args.method == "ip":
        if not act.is_finite:
            raise UsageError("the ip method needs a finite action (no modulus-0 rows)")
        tb = triangular_invariant_basis(act)
        w = ip_witness(tb)
        return {"degree": sum(w), "witness": list(w)}, EXIT_OK
    res = minimal_degree_bruteforce(act, args.dmax)
    if isinstance(res, Found):
        return {"degree": res.degree, "witness": list(res.witness)}, EXIT_OK
    if isinstance(res, Infinite):
        return {"degree": None, "reason": res.reason}, EXIT_OK
    return {"degree": None, "searched_up_to": res.dmax}, EXIT_NOT_FOUND


def cmd_gl2(args):
    p = Gl2Params(args.e, args.g, args.v1, args.v2, args.j, args.d)
    bad = validate_params(p)
    if bad:
        raise UsageError("invalid parameters: " + "; ".join(bad))
    return {"closed_form": closed_form_mindeg(p), "bruteforce": bruteforce_mindeg(p)}, EXIT_OK


def cmd_keygen(args):
    act = DiagonalAction.from_json(_load(args.action))
    cfg = CryptoConfig(p=args.p, action=act, s=args.s, m=args.m,
                       word_length=args.word_length, variant=args.variant)
    pk, sk = keygen(cfg, args.seed)
    pub, priv = public_key_to_json(pk), private_key_to_json(sk)
    _write(args.pub, pub)
    _write(args.priv, priv)
    return {"public": pub, "private": priv}, EXIT_OK


def cmd_encrypt(args):
    pk = public_key_from_json(_load(args.pub))
    ct = ciphertext_to_json(encrypt(pk, args.index, args.seed, args.word_length))
    _write(args.out, ct)
    return ct, EXIT_OK


def cmd_decrypt(args):
    sk = private_key_from_json(_load(args.priv))
    ct = ciphertext_from_json(_load(args.ct))
    return {"index": decrypt(sk, ct)}, EXIT_OK


def cmd_attack(args):
    pk = public_key_from_json(_load(args.pub))
    ct = ciphertext_from_json(_load(args.ct)) if args.ct else None
    rep = attack_public_key(pk, args.dmax, ct)
    return rep.to_json(), EXIT_OK if rep.found_degree is not None else EXIT_NOT_FOUND


def cmd_superinv(args):
    act = SuperAction.from_json(_load(args.action))
    if args.degree is not None:
        if args.degree < 1:
            raise UsageError("--degree must be >= 1")
        basis = superinvariant_basis(act, args.degree)
        return {"degree": args.degree, "basis": [b.to_json() for b in basis]}, EXIT_OK
    res = minimal_superdegree(act, args.dmax)
    if isinstance(res, SuperFound):
        return {"degree": res.degree, "basis": [b.to_json() for b in res.basis]}, EXIT_OK
    assert isinstance(res, NotFoundUpTo)
    return {"degree": None, "searched_up_to": res.dmax}, EXIT_NOT_FOUND


def cmd_selftest(args):
    from .acceptance import CRITERIA, run_criterion

    results = []
    for c in CRITERIA:
        r = run_criterion(c, args.seed)
        print(r.line(), file=sys.stderr, flush=True)
        results.append(r)
    doc = {"passed": sum(r.passed for r in results), "total": len(results),
           "criteria": [{"number": r.number, "name": r.name, "passed": r.passed,
                         "detail": r.detail} for r in results]}
    return doc, EXIT_OK if all(r.passed for r in results) else EXIT_FAIL


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="invdeg", description="Minimal degrees of invariants.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mindeg", help="minimal invariant degree of a diagonal action")
    p.add_argument("--action", required=True, help="DiagonalAction JSON file")
    p.add_argument("--dmax", type=int, default=32)
    p.add_argument("--method", choices=("bruteforce", "ip"), default="bruteforce")
    p.set_defaults(func=cmd_mindeg)

    p = sub.add_parser("gl2", help="closed form and brute force for the GL2 family")
    for name in ("e", "g", "v1", "v2", "j", "d"):
        p.add_argument(f"--{name}", type=int, required=True)
    p.set_defaults(func=cmd_gl2)

    p = sub.add_parser("keygen", help="generate a key pair")
    p.add_argument("--p", type=int, required=True, help="prime modulus")
    p.add_argument("--action", required=True, help="secret DiagonalAction JSON file")
    p.add_argument("--s", type=int, default=2, help="number of messages")
    p.add_argument("--m", type=int, default=2, help="number of public generators")
    p.add_argument("--word-length", type=int, default=4)
    p.add_argument("--variant", type=int, choices=(1, 2), default=2)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--pub", help="also write the public key here")
    p.add_argument("--priv", help="also write the private key here")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a message index")
    p.add_argument("--pub", required=True)
    p.add_argument("--index", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--word-length", type=int, default=8)
    p.add_argument("--out", help="also write the ciphertext here")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt with the private key")
    p.add_argument("--priv", required=True)
    p.add_argument("--ct", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("attack", help="search a public key for low-degree invariants")
    p.add_argument("--pub", required=True)
    p.add_argument("--ct", help="ciphertext to decrypt with the recovered invariants")
    p.add_argument("--dmax", type=int, default=32)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("superinv", help="superinvariants of D_{g,x}")
    p.add_argument("--action", required=True, help="SuperAction JSON file")
    p.add_argument("--dmax", type=int, default=32)
    p.add_argument("--degree", type=int, help="report the basis in this degree only")
    p.set_defaults(func=cmd_superinv)

    p = sub.add_parser("selftest", help="run the acceptance checks")
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_selftest)
    return ap


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "dmax", 1) < 1:
        print("invdeg: --dmax must be >= 1", file=sys.stderr)
        return EXIT_INVALID
    if args.command == "selftest" and args.seed is None:
        from .acceptance import DEFAULT_SEED
        args.seed = DEFAULT_SEED
    try:
        doc, code = args.func(args)
    except (UsageError, ValueError, KeyError, TypeError) as exc:
        print(f"invdeg {args.command}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    print(dumps(doc))
    return code


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
