"""ElGamal-style encryption over a cyclic group of conjugation automorphisms.

The public key is (φ, φ^m) with m secret.  A message M (a group member) encrypts to
(φ^r, φ^{rm}(M)).  To decrypt, raise φ^r to the m-th power, recover a conjugator of
the result by linear algebra and conjugate the payload back.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import numpy as np

from .algebra import Matrix
from .attack import recover_conjugator_linear
from .automorphism import (
    AutoRep,
    auto_apply,
    auto_apply_many,
    auto_from_conjugation,
    auto_pow,
    format_autorep,
    format_matrix,
    parse_autorep_lines,
    parse_matrix_block,
)
from .errors import (
    AmbiguousRecovery,
    NotCodecShape,
    NotMember,
    ParseError,
    RecoveryFailed,
    Singular,
    TooLong,
)
from .groups import GroupId, is_member, random_element, random_invertible, sample_diagonal_similitude

MAGIC = "MOR1"


@dataclass(frozen=True)
class PublicKey:
    group: GroupId
    phi: AutoRep
    phi_m: AutoRep


@dataclass(frozen=True)
class PrivateKey:
    group: GroupId
    m: int
    conjugator: Matrix | None = None


@dataclass(frozen=True)
class Ciphertext:
    phi_r: AutoRep
    payload: Matrix


def exponent_bound(G: GroupId) -> int:
    """Upper end for secret exponents; exceeds every element order of the similitude group."""
    return G.q ** (2 * G.dim)


def random_conjugator(G: GroupId, rng: random.Random) -> Matrix:
    if G.family == "A":
        return random_invertible(G.field, G.dim, rng)
    return random_element(G, rng) @ sample_diagonal_similitude(G, rng)


def keygen(
    G: GroupId, rng: random.Random, m: int | None = None, conjugator: Matrix | None = None
) -> tuple[PublicKey, PrivateKey]:
    c = random_conjugator(G, rng) if conjugator is None else conjugator
    if m is None:
        m = rng.randint(2, exponent_bound(G))
    phi = auto_from_conjugation(G, c)
    return PublicKey(G, phi, auto_pow(phi, m)), PrivateKey(G, m, c)


def encrypt(pk: PublicKey, M: Matrix, rng: random.Random, r: int | None = None) -> Ciphertext:
    G = pk.group
    if M.shape != (G.dim, G.dim) or M.field != G.field or not is_member(G, M):
        raise NotMember(f"message is not an element of {G}")
    if r is None:
        r = rng.randint(2, exponent_bound(G))
    return Ciphertext(auto_pow(pk.phi, r), auto_apply(auto_pow(pk.phi_m, r), M))


def decrypt(sk: PrivateKey, ct: Ciphertext) -> Matrix:
    return decrypt_blocks(sk, [ct])[0]


# -- byte codec --------------------------------------------------------------------------
#
# Bytes map to an integer by bijective base 256 (so lengths are recoverable), the integer
# is written in base q, and the digits fill the free entries of a unipotent block matrix.


def _free_cells(G: GroupId) -> list[tuple[int, int]]:
    """Row-major free entries of R (positions inside the l×l block, or the d×d matrix for A)."""
    l = G.l
    if G.family == "A":
        return [(i, j) for i in range(l + 1) for j in range(i + 1, l + 1)]
    if G.family == "C":
        return [(i, j) for i in range(l) for j in range(i, l)]
    return [(i, j) for i in range(l) for j in range(i + 1, l)]


def _strings_up_to(n: int) -> int:
    """Number of byte strings of length at most n."""
    return (256 ** (n + 1) - 1) // 255


def capacity(G: GroupId) -> int:
    """Largest payload length in bytes that always encodes."""
    cells = len(_free_cells(G))
    F = G.field
    bits = math.floor(F.k * math.log2(F.p))
    cap = cells * bits // 8
    # bijective numerals of length ≤ cap must fit in q^cells
    while cap > 0 and _strings_up_to(cap) > F.q**cells:
        cap -= 1
    return cap


def _bytes_to_int(data: bytes) -> int:
    n = 0
    for b in data:
        n = n * 256 + b + 1
    return n


def _int_to_bytes(n: int) -> bytes:
    out = bytearray()
    while n:
        n -= 1
        out.append(n % 256)
        n //= 256
    return bytes(reversed(out))


def _block_offsets(G: GroupId) -> tuple[int, int]:
    """Row and column offsets of R inside the d×d matrix."""
    if G.family == "A":
        return 0, 0
    off = 1 if G.family == "B" else 0
    return off, off + G.l


def _fill(G: GroupId, digits: list[int]) -> np.ndarray:
    """Codec matrix whose free entries hold `digits`, mirrored to keep it in the group."""
    F = G.field
    codes = F.identity_codes(G.dim).copy()
    r0, c0 = _block_offsets(G)
    for (i, j), v in zip(_free_cells(G), digits):
        codes[r0 + i, c0 + j] = v
        if G.family == "C":
            codes[r0 + j, c0 + i] = v
        elif G.family in ("B", "D"):
            codes[r0 + j, c0 + i] = F.neg(v)
    return codes


def encode_bytes(G: GroupId, data: bytes) -> Matrix:
    cap = capacity(G)
    if len(data) > cap:
        raise TooLong(f"{len(data)} bytes exceed the capacity of {cap} for {G}")
    q = G.q
    n = _bytes_to_int(data)
    digits = []
    for _ in _free_cells(G):
        n, digit = divmod(n, q)
        digits.append(digit)
    return Matrix(G.field, _fill(G, digits))


def decode_bytes(G: GroupId, M: Matrix) -> bytes:
    F = G.field
    if M.shape != (G.dim, G.dim) or M.field != F:
        raise NotCodecShape(f"expected a {G.dim}x{G.dim} matrix over {F!r}")
    r0, c0 = _block_offsets(G)
    digits = [int(M.codes[r0 + i, c0 + j]) for i, j in _free_cells(G)]
    if not np.array_equal(_fill(G, digits), M.codes):
        raise NotCodecShape("matrix is not a unipotent codec block")
    n = 0
    for v in reversed(digits):
        n = n * G.q + v
    if n >= _strings_up_to(capacity(G)):
        raise NotCodecShape("free entries encode a value beyond the capacity")
    return _int_to_bytes(n)


def encode_message(G: GroupId, data: bytes) -> list[Matrix]:
    """Spread a message of any length over as many codec blocks as its base-q digits need."""
    cells = len(_free_cells(G))
    n = _bytes_to_int(data)
    digits = []
    while n:
        n, digit = divmod(n, G.q)
        digits.append(digit)
    nblocks = max(1, -(-len(digits) // cells))
    digits += [0] * (nblocks * cells - len(digits))
    return [Matrix(G.field, _fill(G, digits[b * cells : (b + 1) * cells])) for b in range(nblocks)]


def decode_message(G: GroupId, blocks) -> bytes:
    F = G.field
    r0, c0 = _block_offsets(G)
    digits = []
    for M in blocks:
        if M.shape != (G.dim, G.dim) or M.field != F:
            raise NotCodecShape(f"expected a {G.dim}x{G.dim} matrix over {F!r}")
        part = [int(M.codes[r0 + i, c0 + j]) for i, j in _free_cells(G)]
        if not np.array_equal(_fill(G, part), M.codes):
            raise NotCodecShape("matrix is not a unipotent codec block")
        digits += part
    n = 0
    for v in reversed(digits):
        n = n * G.q + v
    return _int_to_bytes(n)


def encrypt_blocks(pk: PublicKey, blocks, rng: random.Random, r: int | None = None) -> list[Ciphertext]:
    """Encrypt several members under one shared φ^r."""
    G = pk.group
    blocks = list(blocks)
    if any(M.shape != (G.dim, G.dim) or M.field != G.field or not is_member(G, M) for M in blocks):
        raise NotMember(f"message block is not an element of {G}")
    if r is None:
        r = rng.randint(2, exponent_bound(G))
    phi_r = auto_pow(pk.phi, r)
    payloads = auto_apply_many(auto_pow(pk.phi_m, r), blocks)
    return [Ciphertext(phi_r, p) for p in payloads]


def decrypt_blocks(sk: PrivateKey, cts) -> list[Matrix]:
    cts = list(cts)
    if not cts:
        return []
    if any(ct.phi_r != cts[0].phi_r for ct in cts[1:]):
        raise RecoveryFailed("ciphertext blocks use different masking automorphisms")
    psi = auto_pow(cts[0].phi_r, sk.m)
    try:
        h = recover_conjugator_linear(psi)
    except (AmbiguousRecovery, Singular) as exc:
        raise RecoveryFailed(f"cannot invert the masking automorphism: {exc}") from exc
    hinv = h.inv()
    return [hinv @ ct.payload @ h for ct in cts]


# -- file formats ------------------------------------------------------------------------


def format_public_key(pk: PublicKey) -> str:
    return f"{MAGIC}\n{pk.group.header()}\nrole=public\n" + format_autorep(pk.phi) + format_autorep(pk.phi_m)


def format_private_key(sk: PrivateKey) -> str:
    return f"{MAGIC}\n{sk.group.header()}\nrole=private\nm={sk.m}\n"


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip()]


def parse_key(text: str) -> PublicKey | PrivateKey:
    lines = _lines(text)
    if len(lines) < 3 or lines[0] != MAGIC:
        raise ParseError("not a key file (missing MOR1 header)")
    G = GroupId.parse_header(lines[1])
    role = lines[2]
    if role == "role=private":
        if len(lines) != 4 or not lines[3].startswith("m="):
            raise ParseError("private key must contain a single m=<int> line")
        try:
            m = int(lines[3][2:])
        except ValueError as exc:
            raise ParseError(f"bad exponent {lines[3]!r}") from exc
        if m < 1:
            raise ParseError("exponent must be positive")
        return PrivateKey(G, m)
    if role == "role=public":
        phi, pos = parse_autorep_lines(lines, 3)
        phi_m, pos = parse_autorep_lines(lines, pos)
        if pos != len(lines):
            raise ParseError("trailing data after public key")
        if phi.group != G or phi_m.group != G:
            raise ParseError("automorphism group does not match the key header")
        return PublicKey(G, phi, phi_m)
    raise ParseError(f"unknown key role {role!r}")


def format_ciphertext(cts) -> str:
    """One AutoRep block for the shared φ^r, then one matrix block per payload."""
    if isinstance(cts, Ciphertext):
        cts = [cts]
    d = cts[0].phi_r.group.dim
    return format_autorep(cts[0].phi_r) + "".join(f"matrix {d} {d}\n" + format_matrix(ct.payload) for ct in cts)


def parse_ciphertext(text: str) -> list[Ciphertext]:
    lines = _lines(text)
    if not lines:
        raise ParseError("empty ciphertext")
    phi_r, pos = parse_autorep_lines(lines, 0)
    d = phi_r.group.dim
    out = []
    while pos < len(lines) or not out:
        payload, pos = parse_matrix_block(phi_r.group.field, lines, pos)
        if payload.shape != (d, d):
            raise ParseError("payload has the wrong shape")
        out.append(Ciphertext(phi_r, payload))
    return out
