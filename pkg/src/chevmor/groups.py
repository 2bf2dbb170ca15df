"""Classical groups over F_q: index layout, bilinear forms, membership, similitudes."""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .algebra import GF, FieldElement, FieldSpec, Matrix
from .errors import BadIndex, DimMismatch, NoForm, NotSimilitude, ParseError

FAMILIES = ("A", "B", "C", "D")

# (family, l) -> {index: position}, filled on first use
_POS_CACHE: dict[tuple[str, int], dict[int, int]] = {}


@dataclass(frozen=True)
class GroupId:
    """A classical group: SL(l+1) (A), O(2l+1) (B), Sp(2l) (C) or O(2l) (D) over `field`."""

    family: str
    l: int
    field: FieldSpec

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"family must be one of {FAMILIES}, got {self.family!r}")
        if not isinstance(self.l, int) or self.l < 2:
            raise ValueError(f"rank must be an integer >= 2, got {self.l!r}")
        key = (self.family, self.l)
        if key not in _POS_CACHE:
            l = self.l
            if self.family == "A":
                table = {i: i - 1 for i in range(1, l + 2)}
            elif self.family == "B":
                table = {0: 0, **{i: i for i in range(1, l + 1)}, **{-i: l + i for i in range(1, l + 1)}}
            else:
                table = {**{i: i - 1 for i in range(1, l + 1)}, **{-i: l + i - 1 for i in range(1, l + 1)}}
            _POS_CACHE[key] = table

    @classmethod
    def make(cls, family: str, l: int, p: int, k: int = 1) -> GroupId:
        return cls(family, l, GF(p, k))

    @property
    def dim(self) -> int:
        return {"A": self.l + 1, "B": 2 * self.l + 1}.get(self.family, 2 * self.l)

    @property
    def q(self) -> int:
        return self.field.q

    def pos(self, idx: int) -> int:
        """Matrix position of a basis index.

        A uses 1..l+1.  C and D use 1..l, -1..-l; B additionally has 0 in front.
        """
        try:
            return _POS_CACHE[(self.family, self.l)][idx]
        except KeyError:
            raise BadIndex(f"index {idx} out of range for {self}") from None

    def header(self) -> str:
        F = self.field
        return f"family={self.family} l={self.l} p={F.p} k={F.k} mod={','.join(map(str, F.modulus))}"

    @classmethod
    def parse_header(cls, line: str) -> GroupId:
        try:
            kv = dict(part.split("=", 1) for part in line.split())
            fam, l, p, k = kv["family"], int(kv["l"]), int(kv["p"]), int(kv["k"])
            G = cls(fam, l, GF(p, k))
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad group header {line!r}: {exc}") from exc
        if "mod" in kv and tuple(int(c) for c in kv["mod"].split(",")) != G.field.modulus:
            raise ParseError(f"unsupported field modulus {kv['mod']}")
        return G

    def __str__(self):
        return f"{self.family}{self.l}(q={self.q})"


def form_matrix(G: GroupId) -> Matrix:
    """Gram matrix of the invariant bilinear form (none for family A)."""
    if G.family == "A":
        raise NoForm("family A has no invariant form")
    F, l, d = G.field, G.l, G.dim
    b = np.zeros((d, d), dtype=F.dtype)
    off = 1 if G.family == "B" else 0
    if off:
        b[0, 0] = 2 % F.p
    minus_one = F.neg(1) if G.family == "C" else 1
    for i in range(l):
        b[off + i, off + l + i] = 1
        b[off + l + i, off + i] = minus_one
    return Matrix(F, b)


def _gram(G: GroupId, X: Matrix) -> Matrix:
    if X.shape != (G.dim, G.dim):
        raise DimMismatch(f"expected a {G.dim}x{G.dim} matrix, got {X.shape}")
    return X.T @ form_matrix(G) @ X


def is_member(G: GroupId, X: Matrix) -> bool:
    if X.shape != (G.dim, G.dim):
        raise DimMismatch(f"expected a {G.dim}x{G.dim} matrix, got {X.shape}")
    if X.field != G.field:
        return False
    if G.family == "A":
        return X.det().code == 1
    return _gram(G, X) == form_matrix(G)


def similitude_factor(G: GroupId, X: Matrix) -> FieldElement:
    """μ with ᵀXβX = μβ."""
    beta = form_matrix(G)
    gram = _gram(G, X)
    # β[pos(1), pos(-1)] = 1 in every family
    mu = gram[G.pos(1), G.pos(-1)]
    if mu.code == 0 or gram != beta.scale(mu):
        raise NotSimilitude("matrix does not scale the form")
    return mu


def _nonzero(F: FieldSpec, rng: random.Random) -> int:
    return rng.randrange(1, F.q)


def sample_diagonal_similitude(G: GroupId, rng: random.Random) -> Matrix:
    """Uniform element of the diagonal similitude group.

    Entries are λ_1..λ_l, μλ_1⁻¹..μλ_l⁻¹; family B prepends α with α² = μ.
    """
    if G.family == "A":
        raise NoForm("family A has no similitude group")
    F = G.field
    lams = [_nonzero(F, rng) for _ in range(G.l)]
    if G.family == "B":
        alpha = _nonzero(F, rng)
        mu = F.mul(alpha, alpha)
        head = [alpha]
    else:
        mu = _nonzero(F, rng)
        head = []
    diag = head + lams + [F.div(mu, lam) for lam in lams]
    return Matrix.diag(F, [FieldElement(F, c) for c in diag])


def default_length(G: GroupId) -> int:
    return 10 * G.l**2


def random_element(G: GroupId, rng: random.Random, length: int | None = None) -> Matrix:
    """Product of `length` random generators with random nonzero parameters."""
    from .generators import random_word, word_eval

    if length is None:
        length = default_length(G)
    return word_eval(G, random_word(G, rng, length))


def random_invertible(F: FieldSpec, n: int, rng: random.Random) -> Matrix:
    while True:
        m = Matrix(F, [[rng.randrange(F.q) for _ in range(n)] for _ in range(n)])
        if m.det().code:
            return m
