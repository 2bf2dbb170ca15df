"""Command-line front end: keys, encryption, words, attacks and benchmarks."""

from __future__ import annotations

import argparse
import math
import random
import sys
from pathlib import Path

from .algebra import GF
from .attack import recover_conjugator_linear, verify_conjugator
from .automorphism import format_matrix, parse_matrix
from .errors import MorError, ParseError
from .generators import format_word, parse_word, word_eval
from .groups import GroupId, is_member, random_element
from .mor import (
    PrivateKey,
    PublicKey,
    decode_message,
    decrypt_blocks,
    encode_message,
    encrypt_blocks,
    format_ciphertext,
    format_private_key,
    format_public_key,
    keygen,
    parse_ciphertext,
    parse_key,
)
from .word_problem import decompose


def _group(args) -> GroupId:
    return GroupId(args.family, args.rank, GF(args.char, args.deg))


def _read_key(path: str, kind: type):
    key = parse_key(Path(path).read_text())
    if not isinstance(key, kind):
        raise ParseError(f"{path} is not a {'public' if kind is PublicKey else 'private'} key")
    return key


def _read_matrix(G: GroupId, path: str):
    lines = [ln for ln in Path(path).read_text().splitlines() if ln.strip()]
    M = parse_matrix(G.field, lines)
    if M.shape != (G.dim, G.dim):
        raise ParseError(f"expected a {G.dim}x{G.dim} matrix, got {M.shape[0]}x{M.shape[1]}")
    return M


def cmd_keygen(args) -> int:
    G = _group(args)
    pk, sk = keygen(G, random.Random(args.seed), m=args.force_m)
    Path(args.pub).write_text(format_public_key(pk))
    Path(args.priv).write_text(format_private_key(sk))
    return 0


def cmd_encrypt(args) -> int:
    pk = _read_key(args.key, PublicKey)
    data = Path(args.input).read_bytes()
    blocks = encode_message(pk.group, data)
    cts = encrypt_blocks(pk, blocks, random.Random(args.seed), r=args.force_r)
    Path(args.output).write_text(format_ciphertext(cts))
    return 0


def cmd_decrypt(args) -> int:
    sk = _read_key(args.key, PrivateKey)
    cts = parse_ciphertext(Path(args.input).read_text())
    if cts[0].phi_r.group != sk.group:
        raise ParseError("ciphertext group does not match the key")
    Path(args.output).write_bytes(decode_message(sk.group, decrypt_blocks(sk, cts)))
    return 0


def cmd_word(args) -> int:
    G = _group(args)
    word, counter = decompose(G, _read_matrix(G, args.input))
    Path(args.output).write_text(format_word(word))
    print(" ".join(f"{k}={v}" for k, v in counter.as_dict().items()))
    return 0


def cmd_verify(args) -> int:
    G = _group(args)
    M = word_eval(G, parse_word(G, Path(args.input).read_text()))
    if args.output:
        Path(args.output).write_text(format_matrix(M))
    else:
        sys.stdout.write(format_matrix(M))
    ok = is_member(G, M)
    print(f"member={'true' if ok else 'false'}")
    return 0 if ok else 1


def cmd_attack(args) -> int:
    pk = _read_key(args.key, PublicKey)
    h = recover_conjugator_linear(pk.phi)
    sys.stdout.write(format_matrix(h))
    ok = verify_conjugator(pk.phi, h)
    print(f"verified={'true' if ok else 'false'}")
    return 0 if ok else 1


def cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    ranks = [int(x) for x in args.ranks.split(",") if x.strip()]
    print("l mults adds labels")
    for l in ranks:
        G = GroupId(args.family, l, GF(args.char, args.deg))
        totals = {"mults": 0, "adds": 0, "labels": 0}
        for _ in range(args.samples):
            _, counter = decompose(G, random_element(G, rng))
            for key, v in counter.as_dict().items():
                totals[key] += v
        n = args.samples
        print(f"{l} {totals['mults'] // n} {totals['adds'] // n} {totals['labels'] // n}")
    return 0


def _add_group_flags(p: argparse.ArgumentParser, rank: bool = True):
    p.add_argument("--family", required=True, choices=["A", "B", "C", "D"])
    if rank:
        p.add_argument("--rank", required=True, type=int)
    p.add_argument("--char", required=True, type=int)
    p.add_argument("--deg", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chevmor", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="write a public/private key pair")
    _add_group_flags(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pub", default="key.pub")
    p.add_argument("--priv", default="key.priv")
    p.add_argument("--force-m", type=int, default=None, help="test hook: fixed private exponent")
    p.set_defaults(func=cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt message bytes under a public key")
    p.add_argument("--key", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--force-r", type=int, default=None, help="test hook: fixed ephemeral exponent")
    p.set_defaults(func=cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext with a private key")
    p.add_argument("--key", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=cmd_decrypt)

    p = sub.add_parser("word", help="write a matrix as a word in the generators")
    _add_group_flags(p)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=cmd_word)

    p = sub.add_parser("verify", help="evaluate a word file and check membership")
    _add_group_flags(p)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", default=None)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("attack", help="recover a conjugator from a public key")
    p.add_argument("--key", required=True)
    p.set_defaults(func=cmd_attack)

    p = sub.add_parser("bench", help="operation counts of the decomposition across ranks")
    _add_group_flags(p, rank=False)
    p.add_argument("--ranks", required=True, help="comma-separated ranks, e.g. 4,8,16")
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (MorError, ValueError, ZeroDivisionError, RuntimeError, OSError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def loglog_slope(xs, ys) -> float:
    """Least-squares slope of log(ys) against log(xs)."""
    lx = [math.log(x) for x in xs]
    ly = [math.log(y) for y in ys]
    mx, my = sum(lx) / len(lx), sum(ly) / len(ly)
    return sum((a - mx) * (b - my) for a, b in zip(lx, ly)) / sum((a - mx) ** 2 for a in lx)


if __name__ == "__main__":
    sys.exit(main())
