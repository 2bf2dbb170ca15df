"""Row-column reduction of group members to words in the Chevalley generators.

The reduction works on a mutable copy of the input.  Every step multiplies it on the
left or right by a generator and records the label, so at the end

    L_a ... L_1 · g · R_1 ... R_b = T        (T diagonal)

and g is recovered as L_1⁻¹ ... L_a⁻¹ · T · R_b⁻¹ ... R_1⁻¹.
"""

from __future__ import annotations

from .algebra import FieldElement, Matrix
from .errors import BadIndex, InternalStuck, NotASquareForFamily, NotMember
from .generators import (
    DZ,
    WL,
    GenLabel,
    OpCounter,
    Workspace,
    XB0Lo,
    XB0Up,
    XLower,
    XPlain,
    XShortL,
    XShortU,
    XUpper,
    gen_inverse,
)
from .groups import GroupId, is_member

LABEL_CAP = 64  # labels per l², asserted


class _Reducer:
    def __init__(self, G: GroupId, g: Matrix):
        self.G = G
        self.F = G.field
        self.l = G.l
        self.counter = OpCounter()
        self.ws = Workspace(G, g.tolist(), self.counter, check=False)
        self.lefts: list[GenLabel] = []
        self.rights: list[GenLabel] = []
        # offset of the 1..l block: 1 for family B (index 0 comes first)
        self.off = 1 if G.family == "B" else 0

    # -- primitive moves --------------------------------------------------------

    def el(self, c: int) -> FieldElement:
        return FieldElement(self.F, c)

    def left(self, lab: GenLabel):
        self.ws.left(lab)
        self.lefts.append(lab)

    def right(self, lab: GenLabel):
        self.ws.right(lab)
        self.rights.append(lab)

    def left_word(self, w):
        for lab in reversed(w):
            self.left(lab)

    def at(self, r: int, c: int) -> int:
        return self.ws.rows[r][c]

    def _mul(self, a: int, b: int) -> int:
        self.counter.mults += 1
        return self.F.mul(a, b)

    # -- block views -------------------------------------------------------------

    def top(self, i: int) -> int:
        """Matrix position of index i (1..l)."""
        return self.off + i - 1

    def bot(self, i: int) -> int:
        """Matrix position of index -(i+1) for i in 0..l-1."""
        return self.off + self.l + i

    # -- generic diagonalisation of an n x n block ----------------------------------

    def diagonalize(self, n, get, row_add, col_add) -> int:
        """Reduce a block to diag(1,...,1,λ) or diag(1,...,1,0,...,0); return its rank."""
        F = self.F
        rank = 0
        for k in range(n):
            piv = None
            for c in range(k, n):
                for r in range(k, n):
                    if get(r, c):
                        piv = (r, c)
                        break
                if piv:
                    break
            if piv is None:
                break
            r, c = piv
            if c != k:
                col_add(k, c, 1)
            if r != k:
                row_add(k, r, 1)
            a = get(k, k)
            if a != 1 and k < n - 1:
                j = k + 1
                ainv = F.inv(a)
                self.counter.mults += 1
                row_add(j, k, self._mul(F.sub(F.sub(1, a), get(j, k)), ainv))
                row_add(k, j, 1)
            pinv = F.inv(get(k, k))
            for r2 in range(k + 1, n):
                v = get(r2, k)
                if v:
                    row_add(r2, k, F.neg(self._mul(v, pinv)))
            for c2 in range(k + 1, n):
                v = get(k, c2)
                if v:
                    col_add(c2, k, F.neg(self._mul(v, pinv)))
            rank += 1
        return rank

    def diagonalize_lower(self) -> int:
        """Diagonalise the C block (rows -1..-l, columns 1..l) with CG1 moves."""
        F = self.F

        def get(r, c):
            return self.at(self.bot(r), self.top(c + 1))

        def row_add(dst, src, t):
            self.left(XPlain(src + 1, dst + 1, self.el(F.neg(t))))

        def col_add(dst, src, t):
            self.right(XPlain(src + 1, dst + 1, self.el(t)))

        return self.diagonalize(self.l, get, row_add, col_add)

    def diagonalize_upper(self, n: int | None = None) -> int:
        """Diagonalise the A block (rows and columns 1..n) with CG1 moves."""

        def get(r, c):
            return self.at(self.top(r + 1), self.top(c + 1))

        def row_add(dst, src, t):
            self.left(XPlain(dst + 1, src + 1, self.el(t)))

        def col_add(dst, src, t):
            self.right(XPlain(src + 1, dst + 1, self.el(t)))

        return self.diagonalize(n or self.l, get, row_add, col_add)

    # -- CG2 from the left: rows 1..l += R · rows -1..-l ---------------------------------

    def cg2_left(self, R: list[list[int]]):
        F, l, fam = self.F, self.l, self.G.family
        for i in range(l):
            if fam == "C":
                if R[i][i]:
                    self.left(XShortU(i + 1, self.el(R[i][i])))
            elif R[i][i]:
                raise InternalStuck(f"alternating block has nonzero diagonal at {i + 1}")
            for j in range(i + 1, l):
                partner = R[i][j] if fam == "C" else F.neg(R[i][j])
                if R[j][i] != partner:
                    raise InternalStuck(f"block is not {'symmetric' if fam == 'C' else 'skew'} at ({i + 1},{j + 1})")
                if R[i][j]:
                    self.left(XUpper(i + 1, j + 1, self.el(R[i][j])))

    def upper_block(self, cols_bottom: bool) -> list[list[int]]:
        l = self.l
        off = self.bot(0) if cols_bottom else self.top(1)
        return [[self.at(self.top(i + 1), off + j) for j in range(l)] for i in range(l)]

    def zero_upper_with(self, diag: list[int], from_right_block: bool, count: int | None = None):
        """Cancel an upper block M by CG2 from the left with R = -M·diag⁻¹.

        `diag` is the diagonal of the lower block sharing M's columns: C when M is the
        A block, D when M is the B block.  Only the leading `count` rows and columns of
        M are used.
        """
        F, l = self.F, self.l
        M = self.upper_block(from_right_block)
        n = l if count is None else count
        R = [[0] * l for _ in range(l)]
        for j in range(n):
            inv = F.inv(diag[j])
            for i in range(n):
                if M[i][j]:
                    R[i][j] = F.neg(self._mul(M[i][j], inv))
        self.cg2_left(R)

    def flip(self, i: int):
        self.left_word(row_flip_word(self.G, i))

    # -- shape checks ---------------------------------------------------------------------

    def diag_of(self, rows_top: bool) -> list[int]:
        base = self.top(1) if rows_top else self.bot(0)
        colbase = self.top(1)
        return [self.at(base + i, colbase + i) for i in range(self.l)]

    def require_zero(self, r0, r1, c0, c1, what: str):
        for r in range(r0, r1):
            row = self.ws.rows[r]
            for c in range(c0, c1):
                if row[c]:
                    raise InternalStuck(f"{what} is not zero (entry {r},{c})")

    def require_diag_block(self, r0: int, c0: int, diag: list[int], what: str):
        n = len(diag)
        for i in range(n):
            row = self.ws.rows[r0 + i]
            for j in range(n):
                if row[c0 + j] != (diag[i] if i == j else 0):
                    raise InternalStuck(f"{what} does not have the expected diagonal shape")

    # -- families ------------------------------------------------------------------------

    def run_A(self):
        n = self.l + 1

        def get(r, c):
            return self.at(r, c)

        def row_add(dst, src, t):
            self.left(XPlain(dst + 1, src + 1, self.el(t)))

        def col_add(dst, src, t):
            self.right(XPlain(src + 1, dst + 1, self.el(t)))

        self.diagonalize(n, get, row_add, col_add)
        if self.at(n - 1, n - 1) != 1:
            raise InternalStuck("determinant is not 1 after reduction")
        return ()

    def run_CD(self):
        F, l = self.F, self.l
        m = self.diagonalize_lower()
        cdiag = self.diag_of(rows_top=False)
        self.zero_upper_with(cdiag, False, count=m)
        self.require_zero(0, m, 0, m, "upper-left block after CG2")
        for i in range(1, m + 1):
            self.flip(i)
        self.require_zero(l, 2 * l, 0, l, "lower-left block after row flips")
        self.diagonalize_upper()
        adiag = self.diag_of(rows_top=True)
        if 0 in adiag:
            raise InternalStuck("upper-left block is singular")
        dinv = [F.inv(a) for a in adiag]
        self.require_diag_block(l, l, dinv, "lower-right block")
        self.zero_upper_with(dinv, True)
        self.require_zero(0, l, l, 2 * l, "upper-right block after CG2")
        lam = adiag[-1]
        self.require_diag_block(0, 0, [1] * (l - 1) + [lam], "upper-left block")
        return self.torus(lam)

    def run_B(self):
        F, l = self.F, self.l
        m = self.diagonalize_lower()
        cdiag = self.diag_of(rows_top=False)
        # CG4: clear X_i from the left and F_i from the right wherever c_i != 0
        for i in range(1, l + 1):
            c = cdiag[i - 1]
            x = self.at(0, self.top(i))
            if c and x:
                self.left(XB0Up(i, self.el(F.div(x, c))))
        for i in range(1, l + 1):
            c = cdiag[i - 1]
            f = self.at(self.bot(i - 1), 0)
            if c and f:
                self.right(XB0Up(i, self.el(F.neg(F.div(f, F.add(c, c))))))
                self.counter.mults += 2
        self.require_zero(0, 1, 1, m + 1, "first row after CG4")
        self.zero_upper_with(cdiag, False, count=m)
        self.require_zero(1, m + 1, 1, m + 1, "upper-left block after CG2")
        for i in range(1, m + 1):
            self.flip(i)
        self.require_zero(l + 1, 2 * l + 1, 1, l + 1, "lower-left block after row flips")
        self.diagonalize_upper()
        adiag = self.diag_of(rows_top=True)
        if 0 in adiag:
            raise InternalStuck("upper-left block is singular")
        for i in range(1, l + 1):
            e = self.at(self.top(i), 0)
            if e:
                a = adiag[i - 1]
                self.right(XB0Up(i, self.el(F.neg(F.div(e, F.add(a, a))))))
                self.counter.mults += 2
        alpha = self.at(0, 0)
        if alpha not in (1, F.neg(1)):
            raise InternalStuck("corner entry is not ±1")
        self.require_zero(0, 1, 1, 2 * l + 1, "first row")
        self.require_zero(1, 2 * l + 1, 0, 1, "first column")
        self.require_zero(l + 1, 2 * l + 1, 1, l + 1, "lower-left block")
        dinv = [F.inv(a) for a in adiag]
        self.require_diag_block(l + 1, l + 1, dinv, "lower-right block")
        self.zero_upper_with(dinv, True)
        self.require_zero(1, l + 1, l + 1, 2 * l + 1, "upper-right block after CG2")
        lam = adiag[-1]
        self.require_diag_block(1, 1, [1] * (l - 1) + [lam], "upper-left block")
        word = self.torus(lam)
        if alpha != 1:
            word = sign_word(self.G) + word
        return word

    def torus(self, lam: int) -> tuple:
        if lam == 1:
            return ()
        F, fam = self.F, self.G.family
        if fam == "C" or F.is_square(lam):
            return torus_word(self.G, self.el(lam))
        s2 = F.div(lam, F.zeta_code)
        return torus_word(self.G, self.el(s2)) + (DZ(1),)

    def run(self) -> tuple:
        fam = self.G.family
        middle = {"A": self.run_A, "B": self.run_B}.get(fam, self.run_CD)()
        word = (
            tuple(gen_inverse(lab) for lab in self.lefts)
            + tuple(middle)
            + tuple(gen_inverse(lab) for lab in reversed(self.rights))
        )
        cap = LABEL_CAP * self.l**2
        if len(word) > cap:
            raise InternalStuck(f"word length {len(word)} exceeds the cap {cap}")
        self.counter.labels = len(word)
        return word


def decompose(G: GroupId, g: Matrix) -> tuple[tuple, OpCounter]:
    """Write a member g as a word in the Chevalley generators."""
    if g.field != G.field or not is_member(G, g):
        raise NotMember(f"matrix is not in {G}")
    return decompose_member(G, g)


def decompose_member(G: GroupId, g: Matrix) -> tuple[tuple, OpCounter]:
    """decompose without the membership check, for callers that already verified it."""
    red = _Reducer(G, g)
    word = red.run()
    return word, red.counter


# -- constructive words ---------------------------------------------------------------


def _one(G: GroupId, c: int) -> FieldElement:
    return G.field.element(c)


def row_flip_word(G: GroupId, i: int) -> tuple:
    """Weyl element exchanging rows i and -i (up to sign) under left multiplication."""
    if G.family == "A":
        raise BadIndex("row flips exist only for families B, C and D")
    if not 1 <= i <= G.l:
        raise BadIndex(f"row index {i} out of range 1..{G.l}")
    one, m1 = _one(G, 1), _one(G, -1)
    if G.family == "C":
        return (XShortU(i, one), XShortL(i, m1), XShortU(i, one))
    l = G.l
    if i == l:
        return (WL(),)
    return (
        WL(),
        XPlain(i, l, m1),
        XPlain(l, i, one),
        XPlain(i, l, m1),
        XUpper(i, l, m1),
        XLower(i, l, m1),
        XUpper(i, l, m1),
    )


def sign_word(G: GroupId) -> tuple:
    """Family B: a word for diag(-1, 1, ..., 1)."""
    l, one, m1 = G.l, _one(G, 1), _one(G, -1)
    return (XB0Up(l, one), XB0Lo(l, m1), XB0Up(l, one), WL())


def weyl_short(G: GroupId, t: FieldElement) -> tuple:
    """C: x_{l,-l}(t) x_{-l,l}(-t⁻¹) x_{l,-l}(t)."""
    l = G.l
    return (XShortU(l, t), XShortL(l, -t.inverse()), XShortU(l, t))


def weyl_long_upper(G: GroupId, t: FieldElement, i: int | None = None, j: int | None = None) -> tuple:
    """B/D: x_{i,-j}(t) x_{-i,j}(t⁻¹) x_{i,-j}(t), by default on (l-1, l)."""
    i = G.l - 1 if i is None else i
    j = G.l if j is None else j
    return (XUpper(i, j, t), XLower(i, j, t.inverse()), XUpper(i, j, t))


def weyl_plain(G: GroupId, t: FieldElement, i: int | None = None, j: int | None = None) -> tuple:
    """x_{i,j}(t) x_{j,i}(-t⁻¹) x_{i,j}(t), by default on (l-1, l) (or (l, l+1) for A)."""
    if i is None:
        i, j = (G.l, G.l + 1) if G.family == "A" else (G.l - 1, G.l)
    return (XPlain(i, j, t), XPlain(j, i, -t.inverse()), XPlain(i, j, t))


def torus_word(G: GroupId, lam: FieldElement) -> tuple:
    """Word for the diagonal element with λ at index l and λ⁻¹ at index -l.

    Family A places λ⁻¹ at index l+1.  Families B and D need λ to be a square.
    """
    F = G.field
    lam = F.element(lam)
    if lam.code == 0:
        raise ValueError("torus parameter must be nonzero")
    if lam.code == 1:
        return ()
    m1 = F.element(-1)
    if G.family == "A":
        return weyl_plain(G, lam) + weyl_plain(G, m1)
    if G.family == "C":
        return weyl_short(G, lam) + weyl_short(G, m1)
    s = lam.sqrt()
    if s is None:
        raise NotASquareForFamily(f"{lam} is not a square in {F!r}")
    return (
        weyl_long_upper(G, s)
        + weyl_long_upper(G, m1)
        + weyl_plain(G, s.inverse())
        + weyl_plain(G, m1)
    )

