"""Chevalley generator labels, their sparse matrices, and word evaluation.

A label ``x`` acts as the matrix I + N with N sparse.  ``gen_entries`` lists the
nonzero entries of N as ``(row, col, code)`` matrix positions; everything else
(matrices, in-place row/column updates, evaluation) is derived from that list.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .algebra import FieldElement, Matrix
from .errors import BadLabel, BadIndex, ParseError
from .groups import GroupId

ROOT_KINDS = ("X", "XU", "XL", "XSU", "XSL", "XB0U", "XB0L")
TWO_INDEX = ("X", "XU", "XL")
KINDS = ROOT_KINDS + ("DZ", "WL")

_ALLOWED = {
    "A": {"X"},
    "B": {"X", "XU", "XL", "XB0U", "XB0L", "DZ", "WL"},
    "C": {"X", "XU", "XL", "XSU", "XSL"},
    "D": {"X", "XU", "XL", "DZ", "WL"},
}


@dataclass(frozen=True)
class GenLabel:
    """One generator: ``kind`` with indices, a field parameter ``t`` or exponent ``e``."""

    kind: str
    i: int = 0
    j: int = 0
    t: FieldElement | None = None
    e: int = 0

    def __str__(self):
        if self.kind == "WL":
            return "WL"
        if self.kind == "DZ":
            return f"DZ e={self.e}"
        idx = f"{self.i} {self.j}" if self.kind in TWO_INDEX else f"{self.i}"
        return f"{self.kind} {idx} t={self.t}"

    def with_param(self, t: FieldElement) -> GenLabel:
        return GenLabel(self.kind, self.i, self.j, t)


def XPlain(i: int, j: int, t: FieldElement) -> GenLabel:
    return GenLabel("X", i, j, t)


def XUpper(i: int, j: int, t: FieldElement) -> GenLabel:
    return GenLabel("XU", i, j, t)


def XLower(i: int, j: int, t: FieldElement) -> GenLabel:
    return GenLabel("XL", i, j, t)


def XShortU(i: int, t: FieldElement) -> GenLabel:
    return GenLabel("XSU", i, 0, t)


def XShortL(i: int, t: FieldElement) -> GenLabel:
    return GenLabel("XSL", i, 0, t)


def XB0Up(i: int, t: FieldElement) -> GenLabel:
    return GenLabel("XB0U", i, 0, t)


def XB0Lo(i: int, t: FieldElement) -> GenLabel:
    return GenLabel("XB0L", i, 0, t)


def DZ(e: int = 1) -> GenLabel:
    return GenLabel("DZ", e=e)


def WL() -> GenLabel:
    return GenLabel("WL")


Word = tuple  # ordered sequence of GenLabel


def _check(G: GroupId, lab: GenLabel):
    if lab.kind not in _ALLOWED[G.family]:
        raise BadLabel(f"{lab.kind} is not a generator of family {G.family}")
    top = G.l + 1 if G.family == "A" else G.l
    if lab.kind in ROOT_KINDS:
        if not isinstance(lab.t, FieldElement) or lab.t.field != G.field:
            raise BadLabel(f"{lab} needs a parameter in {G.field!r}")
        if not 1 <= lab.i <= top:
            raise BadLabel(f"index {lab.i} out of range in {lab}")
    if lab.kind == "X" and not (1 <= lab.j <= top and lab.i != lab.j):
        raise BadLabel(f"bad index pair in {lab}")
    if lab.kind in ("XU", "XL") and not (lab.i < lab.j <= top):
        raise BadLabel(f"{lab.kind} needs i < j <= {top}")


def position_list(G: GroupId) -> list[int]:
    """Positions indexable by signed basis index: P[i] and P[-i] for 1 <= i <= l."""
    if G.family == "A":
        return [None] + [G.pos(i) for i in range(1, G.l + 2)]
    P = [0] * (2 * G.l + 1)
    for i in range(1, G.l + 1):
        P[i], P[-i] = G.pos(i), G.pos(-i)
    return P


def gen_entries(G: GroupId, lab: GenLabel, check: bool = True, P: list[int] | None = None):
    """Nonzero entries (row, col, code) of gen_matrix(G, lab) - I."""
    if check:
        _check(G, lab)
    if P is None:
        P = position_list(G)
    F, fam = G.field, G.family
    kind, i, j = lab.kind, lab.i, lab.j
    if kind == "WL":
        m1 = F.neg(1)
        a, b = P[G.l], P[-G.l]
        return [(a, a, m1), (b, b, m1), (a, b, m1), (b, a, m1)]
    if kind == "DZ":
        z = F.pow(F.zeta_code, lab.e)
        a, b = P[G.l], P[-G.l]
        return [(a, a, F.sub(z, 1)), (b, b, F.sub(F.inv(z), 1))]
    t = lab.t.code
    if t == 0:
        return []
    if kind == "X":
        if fam == "A":
            return [(P[i], P[j], t)]
        return [(P[i], P[j], t), (P[-j], P[-i], F.neg(t))]
    if kind == "XU":
        return [(P[i], P[-j], t), (P[j], P[-i], t if fam == "C" else F.neg(t))]
    if kind == "XL":
        return [(P[-i], P[j], t), (P[-j], P[i], t if fam == "C" else F.neg(t))]
    if kind == "XSU":
        return [(P[i], P[-i], t)]
    if kind == "XSL":
        return [(P[-i], P[i], t)]
    nt = F.neg(t)
    t2 = F.neg(F.mul(t, t))
    if kind == "XB0U":
        return [(P[i], 0, F.add(t, t)), (0, P[-i], nt), (P[i], P[-i], t2)]
    if kind == "XB0L":
        return [(P[-i], 0, F.add(nt, nt)), (0, P[i], t), (P[-i], P[i], t2)]
    raise BadLabel(f"unknown kind {kind}")  # pragma: no cover


def gen_matrix(G: GroupId, lab: GenLabel) -> Matrix:
    rows = identity_rows(G.dim)
    for r, c, v in gen_entries(G, lab):
        rows[r][c] = G.field.add(rows[r][c], v)
    return Matrix(G.field, rows)


def gen_inverse(lab: GenLabel) -> GenLabel:
    if lab.kind == "WL":
        return lab
    if lab.kind == "DZ":
        return DZ(-lab.e)
    return lab.with_param(-lab.t)


def word_inverse(w) -> tuple:
    return tuple(gen_inverse(lab) for lab in reversed(w))


# -- in-place application on list-of-lists code matrices -----------------------


def identity_rows(d: int) -> list[list[int]]:
    return [[1 if r == c else 0 for c in range(d)] for r in range(d)]


@dataclass
class OpCounter:
    """Field operations and labels spent by a computation."""

    mults: int = 0
    adds: int = 0
    labels: int = 0

    def as_dict(self) -> dict:
        return {"mults": self.mults, "adds": self.adds, "labels": self.labels}


class Workspace:
    """A mutable code matrix that generators are applied to, with op counting."""

    def __init__(
        self, G: GroupId, rows: list[list[int]], counter: OpCounter | None = None, check: bool = True
    ):
        self.G = G
        self.check = check
        self.P = position_list(G)
        self.F = G.field
        self.rows = rows
        self.d = len(rows)
        self.counter = counter if counter is not None else OpCounter()
        F = self.F
        if F.k == 1:
            p = F.p
            self._axpy = lambda dst, src, v: [(a + b * v) % p for a, b in zip(dst, src)]
        elif F.mul_t is not None:
            add_t, mul_t = F.add_t, F.mul_t
            self._axpy = lambda dst, src, v: [add_t[a][mul_t[b][v]] for a, b in zip(dst, src)]
        else:
            add, mul = F.add, F.mul
            self._axpy = lambda dst, src, v: [add(a, mul(b, v)) for a, b in zip(dst, src)]

    def _count(self, terms: int):
        c = self.counter
        c.mults += terms * self.d
        c.adds += terms * self.d

    def left(self, lab: GenLabel):
        """rows <- gen_matrix(lab) @ rows."""
        ents = gen_entries(self.G, lab, self.check, self.P)
        rows = self.rows
        if len(ents) == 2 and ents[0][0] != ents[1][0] and ents[0][0] != ents[1][1]:
            # two independent row updates (the common case)
            (r0, c0, v0), (r1, c1, v1) = ents
            new0 = self._axpy(rows[r0], rows[c0], v0)
            rows[r1] = self._axpy(rows[r1], rows[c1], v1)
            rows[r0] = new0
        else:
            new: dict[int, list[int]] = {}
            for r, c, v in ents:
                new[r] = self._axpy(new.get(r, rows[r]), rows[c], v)
            for r, row in new.items():
                rows[r] = row
        self._count(len(ents))

    def right(self, lab: GenLabel):
        """rows <- rows @ gen_matrix(lab)."""
        ents = gen_entries(self.G, lab, self.check, self.P)
        rows = self.rows
        cols: dict[int, list[int]] = {}
        old: dict[int, list[int]] = {}
        for r, c, v in ents:
            if r not in old:
                old[r] = [row[r] for row in rows]
            if c not in cols:
                cols[c] = [row[c] for row in rows]
            cols[c] = self._axpy(cols[c], old[r], v)
        for c, col in cols.items():
            for row, x in zip(rows, col):
                row[c] = x
        self._count(len(ents))

    def matrix(self) -> Matrix:
        return Matrix(self.F, self.rows)


def word_eval(G: GroupId, w) -> Matrix:
    """Ordered product of the generator matrices of w (identity for the empty word)."""
    ws = Workspace(G, identity_rows(G.dim))
    for lab in w:
        ws.right(lab)
    return ws.matrix()


# -- canonical generating set ----------------------------------------------------


def _root_templates(G: GroupId) -> list[tuple[str, int, int]]:
    fam, l = G.family, G.l
    top = l + 1 if fam == "A" else l
    out = [("X", i, j) for i in range(1, top + 1) for j in range(1, top + 1) if i != j]
    if fam == "A":
        return out
    pairs = [(i, j) for i in range(1, l + 1) for j in range(i + 1, l + 1)]
    out += [("XU", i, j) for i, j in pairs]
    out += [("XL", i, j) for i, j in pairs]
    if fam == "C":
        out += [("XSU", i, 0) for i in range(1, l + 1)]
        out += [("XSL", i, 0) for i in range(1, l + 1)]
    if fam == "B":
        out += [("XB0U", i, 0) for i in range(1, l + 1)]
        out += [("XB0L", i, 0) for i in range(1, l + 1)]
    return out


def enumerate_generators(G: GroupId) -> list[GenLabel]:
    """The canonical generating set: each root label at every power-basis element θ^j."""
    F = G.field
    basis = [FieldElement(F, F.basis_code(j)) for j in range(F.k)]
    labels = [GenLabel(kind, i, j, t) for kind, i, j in _root_templates(G) for t in basis]
    if G.family in ("B", "D"):
        labels += [DZ(1), WL()]
    return labels


def random_word(G: GroupId, rng: random.Random, length: int) -> tuple:
    """Uniformly random labels with uniformly random nonzero parameters."""
    F = G.field
    templates: list = list(_root_templates(G))
    if G.family in ("B", "D"):
        templates += [("DZ", 0, 0), ("WL", 0, 0)]
    out = []
    for _ in range(length):
        kind, i, j = templates[rng.randrange(len(templates))]
        if kind == "DZ":
            out.append(DZ(rng.choice((1, -1))))
        elif kind == "WL":
            out.append(WL())
        else:
            out.append(GenLabel(kind, i, j, FieldElement(F, rng.randrange(1, F.q))))
    return tuple(out)


# -- text form -----------------------------------------------------------------------


def format_word(w) -> str:
    return "".join(f"{lab}\n" for lab in w)


def parse_label(G: GroupId, line: str) -> GenLabel:
    parts = line.split()
    if not parts:
        raise ParseError("empty label line")
    kind = parts[0]
    try:
        if kind == "WL" and len(parts) == 1:
            lab = WL()
        elif kind == "DZ" and len(parts) == 2 and parts[1].startswith("e="):
            lab = DZ(int(parts[1][2:]))
        elif kind in ROOT_KINDS:
            nidx = 2 if kind in TWO_INDEX else 1
            if len(parts) != nidx + 2 or not parts[-1].startswith("t="):
                raise ParseError(f"malformed label {line!r}")
            idx = [int(x) for x in parts[1 : 1 + nidx]] + [0]
            t = G.field.element([int(c) for c in parts[-1][2:].split(",")])
            lab = GenLabel(kind, idx[0], idx[1], t)
        else:
            raise ParseError(f"unknown label {line!r}")
    except (ValueError, BadIndex) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"malformed label {line!r}: {exc}") from exc
    _check(G, lab)
    return lab


def parse_word(G: GroupId, text: str) -> tuple:
    return tuple(parse_label(G, ln) for ln in text.splitlines() if ln.strip())
