"""Conjugation-type automorphisms given by their images on the canonical generators.

Applying an automorphism to a member h solves the word problem for h and multiplies
the images of the letters.  Images are stored as matrices, so composition costs one
decomposition per image and words never grow.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .algebra import Matrix
from .errors import DimMismatch, GroupMismatch, NotMember, NotNormalizing, ParseError
from .generators import _root_templates, enumerate_generators, gen_matrix
from .groups import GroupId, form_matrix
from .word_problem import decompose_member


@dataclass(frozen=True, eq=False)
class AutoRep:
    """Images of enumerate_generators(group), in that order."""

    group: GroupId
    images: tuple

    def __post_init__(self):
        n = len(enumerate_generators(self.group))
        if len(self.images) != n:
            raise DimMismatch(f"expected {n} images, got {len(self.images)}")

    def __eq__(self, other):
        return isinstance(other, AutoRep) and self.group == other.group and self.images == other.images

    def __hash__(self):
        return hash((self.group, self.images))

    @functools.cached_property
    def stack(self) -> np.ndarray:
        return np.stack([m.codes for m in self.images])

    @functools.cached_property
    def power_table(self) -> np.ndarray:
        """Images raised to 1..p-1, then DZ's image inverted, then I, flattened.

        Entry (c-1)*s + slot holds images[slot]**c; see _factor_indices.
        """
        F = self.group.field
        s, d = len(self.images), self.group.dim
        pows = [self.stack]
        for _ in range(F.p - 2):
            pows.append(F.matmul(pows[-1], self.stack))
        extra = [np.eye(d, dtype=F.dtype)]
        if self.group.family in ("B", "D"):
            extra.insert(0, self.images[s - 2].inv().codes)
        return np.concatenate(pows + [np.stack(extra)])


@functools.lru_cache(maxsize=None)
def _label_slots(G: GroupId) -> dict:
    """Map (kind, i, j) to the position of its θ^0 image; DZ and WL map to single slots."""
    k = G.field.k
    slots = {tpl: n * k for n, tpl in enumerate(_root_templates(G))}
    base = len(slots) * k
    if G.family in ("B", "D"):
        slots[("DZ", 0, 0)] = base
        slots[("WL", 0, 0)] = base + 1
    return slots


def auto_identity(G: GroupId) -> AutoRep:
    return AutoRep(G, tuple(gen_matrix(G, lab) for lab in enumerate_generators(G)))


def _members_mask(G: GroupId, stack: np.ndarray) -> list[bool]:
    F = G.field
    if G.family == "A":
        return [Matrix(F, m).det().code == 1 for m in stack]
    beta = form_matrix(G).codes
    gram = F.matmul(F.matmul(np.swapaxes(stack, -1, -2), beta), stack)
    return [bool(np.array_equal(g, beta)) for g in gram]


def auto_from_conjugation(G: GroupId, c: Matrix) -> AutoRep:
    """The automorphism h ↦ c·h·c⁻¹."""
    if c.shape != (G.dim, G.dim):
        raise DimMismatch(f"conjugator must be {G.dim}x{G.dim}")
    F = G.field
    gens = np.stack([gen_matrix(G, lab).codes for lab in enumerate_generators(G)])
    imgs = F.matmul(F.matmul(c.codes, gens), c.inv().codes)
    if not all(_members_mask(G, imgs)):
        raise NotNormalizing("conjugation does not preserve the group")
    return AutoRep(G, tuple(Matrix(F, m) for m in imgs))


def _factor_indices(phi: AutoRep, word) -> list[int]:
    """Rows of phi.power_table whose ordered product is phi(word)."""
    G = phi.group
    F = G.field
    slots = _label_slots(G)
    s = len(phi.images)
    top = (F.p - 1) * s
    out = []
    for lab in word:
        if lab.kind == "WL":
            out.append(slots[("WL", 0, 0)])
        elif lab.kind == "DZ":
            slot = slots[("DZ", 0, 0)]
            e = lab.e
            out.extend([slot if e > 0 else top] * abs(e))
        else:
            base = slots[(lab.kind, lab.i, lab.j)]
            for j, c in enumerate(F.coeffs(lab.t.code)):
                if c:
                    out.append((c - 1) * s + base + j)
    return out


def _batched_products(F, table: np.ndarray, seqs: list[list[int]], d: int) -> np.ndarray:
    """Ordered products of table rows for several index sequences, in one batch."""
    ident = len(table) - 1
    length = max(1, max((len(q) for q in seqs), default=0))
    length += length % 2
    idx = np.full((len(seqs), length), ident, dtype=np.intp)
    for a, q in enumerate(seqs):
        idx[a, : len(q)] = q
    arr = table[idx]
    while arr.shape[1] > 1:
        if arr.shape[1] % 2:
            pad = np.broadcast_to(table[ident], (arr.shape[0], 1, d, d))
            arr = np.concatenate([arr, pad], axis=1)
        arr = F.matmul(arr[:, 0::2], arr[:, 1::2])
    return arr[:, 0]


def auto_apply_many(phi: AutoRep, hs) -> list[Matrix]:
    G = phi.group
    hs = list(hs)
    if any(h.field != G.field or h.shape != (G.dim, G.dim) for h in hs):
        raise NotMember(f"input is not a {G.dim}x{G.dim} matrix over {G.field!r}")
    if hs and not all(_members_mask(G, np.stack([h.codes for h in hs]))):
        raise NotMember(f"input is not in {G}")
    seqs = [_factor_indices(phi, decompose_member(G, h)[0]) for h in hs]
    prods = _batched_products(G.field, phi.power_table, seqs, G.dim)
    return [Matrix(G.field, m) for m in prods]


def auto_apply(phi: AutoRep, h: Matrix) -> Matrix:
    """phi(h), computed by decomposing h and substituting generator images."""
    return auto_apply_many(phi, [h])[0]


def auto_compose(phi: AutoRep, psi: AutoRep) -> AutoRep:
    """The automorphism h ↦ phi(psi(h))."""
    if phi.group != psi.group:
        raise GroupMismatch(f"{phi.group} vs {psi.group}")
    return AutoRep(phi.group, tuple(auto_apply_many(phi, psi.images)))


def auto_pow(phi: AutoRep, n: int) -> AutoRep:
    """n-fold composition by square-and-multiply."""
    if n < 0:
        raise ValueError("exponent must be non-negative")
    result = None
    base = phi
    while n:
        if n & 1:
            result = base if result is None else auto_compose(base, result)
        n >>= 1
        if n:
            base = auto_compose(base, base)
    return auto_identity(phi.group) if result is None else result


# -- text form ---------------------------------------------------------------------------


def format_matrix(M: Matrix) -> str:
    from .algebra import FieldElement

    F = M.field
    return "".join(" ".join(str(FieldElement(F, int(x))) for x in row) + "\n" for row in M.codes)


def parse_matrix(F, lines: list[str]) -> Matrix:
    try:
        rows = [[F.code([int(c) for c in tok.split(",")]) for tok in ln.split()] for ln in lines]
    except (ValueError, DimMismatch) as exc:
        raise ParseError(f"bad matrix entry: {exc}") from exc
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ParseError("matrix rows have unequal lengths")
    return Matrix(F, rows)


def format_autorep(phi: AutoRep) -> str:
    d = phi.group.dim
    parts = [phi.group.header() + "\n"]
    for img in phi.images:
        parts.append(f"matrix {d} {d}\n")
        parts.append(format_matrix(img))
    return "".join(parts)


def parse_autorep_lines(lines: list[str], pos: int = 0) -> tuple[AutoRep, int]:
    """Parse an AutoRep block starting at lines[pos]; returns it and the next position."""
    G = GroupId.parse_header(lines[pos])
    pos += 1
    images = []
    for _ in range(len(enumerate_generators(G))):
        M, pos = parse_matrix_block(G.field, lines, pos)
        images.append(M)
    return AutoRep(G, tuple(images)), pos


def parse_matrix_block(F, lines: list[str], pos: int) -> tuple[Matrix, int]:
    if pos >= len(lines):
        raise ParseError("unexpected end of input, expected a matrix block")
    head = lines[pos].split()
    if len(head) != 3 or head[0] != "matrix":
        raise ParseError(f"expected 'matrix r c', got {lines[pos]!r}")
    r = int(head[1])
    body = lines[pos + 1 : pos + 1 + r]
    if len(body) != r:
        raise ParseError("truncated matrix block")
    return parse_matrix(F, body), pos + 1 + r
