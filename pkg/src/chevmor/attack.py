"""Recovering a conjugating matrix from an automorphism's generator images."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import FieldElement, Matrix
from .automorphism import AutoRep, _label_slots
from .errors import AmbiguousRecovery, FamilyUnsupported, Inconsistent, Singular
from .generators import enumerate_generators, gen_matrix


def _unit_image(phi: AutoRep, kind: str, i: int, j: int = 0) -> Matrix:
    """phi(x_r(1)) - I for the root label (kind, i, j)."""
    G = phi.group
    img = phi.images[_label_slots(G)[(kind, i, j)]]
    return img - Matrix.identity(G.field, G.dim)


def _first_nonzero_column(M: Matrix) -> np.ndarray:
    nz = np.flatnonzero(M.codes.any(axis=0))
    if len(nz) == 0:
        raise Inconsistent("image of a root element is trivial")
    return M.codes[:, nz[0]]


def normalize_scalar(M: Matrix) -> Matrix:
    """Scale M so that the leading nonzero entry of its first nonzero column is 1."""
    col = _first_nonzero_column(M)
    lead = int(col[np.flatnonzero(col)[0]])
    return M.scale(FieldElement(M.field, M.field.inv(lead)))


def recover_conjugator_fast(phi: AutoRep) -> Matrix:
    """Column extraction plus ratio rescaling; families A and C only.

    Returns ĝ = λ·g for any conjugator g inducing phi.
    """
    G = phi.group
    F, d, l = G.field, G.dim, G.l
    if G.family not in ("A", "C"):
        raise FamilyUnsupported(f"fast recovery is not available for family {G.family}")
    cols = [None] * d
    if G.family == "A":
        for i in range(1, d + 1):
            j = 1 if i != 1 else 2
            cols[G.pos(i)] = _first_nonzero_column(_unit_image(phi, "X", i, j))
    else:
        for i in range(1, l + 1):
            cols[G.pos(i)] = _first_nonzero_column(_unit_image(phi, "XSU", i))
            cols[G.pos(-i)] = _first_nonzero_column(_unit_image(phi, "XSL", i))
    N = Matrix(F, np.stack(cols, axis=1))
    try:
        Ninv = N.inv()
    except Singular as exc:
        raise Inconsistent("extracted columns are linearly dependent") from exc

    def ratio(kind: str, i: int, j: int, r: int, c: int, sign: int = 1) -> int:
        # entry (r, c) of N⁻¹(φ(x(1)) - I)N = D⁻¹ e D, a ratio of the d's
        v = int((Ninv @ _unit_image(phi, kind, i, j) @ N).codes[G.pos(r), G.pos(c)])
        if v == 0:
            raise Inconsistent("vanishing ratio in rescaling step")
        return v if sign > 0 else F.neg(v)

    scale = [0] * d
    scale[G.pos(1)] = 1
    top = d if G.family == "A" else l
    for i in range(2, top + 1):
        scale[G.pos(i)] = ratio("X", i, 1, i, 1)  # d_i⁻¹ d_1
    if G.family == "C":
        # d_{-1}⁻¹ d_1 = (d_{-1}⁻¹ d_{-2}) (d_{-2}⁻¹ d_2) (d_2⁻¹ d_1)
        r = F.mul(ratio("X", 2, 1, -1, -2, sign=-1), ratio("XSL", 2, 0, -2, 2))
        s_m1 = F.mul(r, scale[G.pos(2)])
        scale[G.pos(-1)] = s_m1
        for i in range(2, l + 1):
            # d_{-i}⁻¹ d_1 = (d_{-i}⁻¹ d_{-1}) (d_{-1}⁻¹ d_1)
            scale[G.pos(-i)] = F.mul(ratio("X", 1, i, -i, -1, sign=-1), s_m1)
    ghat = N @ Matrix.diag(F, [FieldElement(F, s) for s in scale])
    return normalize_scalar(ghat)


def conjugation_system(phi: AutoRep) -> np.ndarray:
    """Rows of the linear system h·x_i = phi(x_i)·h in the row-major entries of h."""
    G = phi.group
    F, d = G.field, G.dim
    eye = np.eye(d, dtype=F.dtype)
    blocks = []
    for lab, img in zip(enumerate_generators(G), phi.images):
        gen = gen_matrix(G, lab).codes
        # vec(h X) = (I ⊗ Xᵀ) vec(h), vec(M h) = (M ⊗ I) vec(h)
        blocks.append(F.vsub(np.kron(eye, gen.T), np.kron(img.codes, eye)))
    return np.concatenate(blocks)


def recover_conjugator_linear(phi: AutoRep) -> Matrix:
    """Solve h·x_i = phi(x_i)·h over all canonical generators for h (unique up to scalar)."""
    G = phi.group
    F, d = G.field, G.dim
    system = conjugation_system(phi)
    basis = F.nullspace(system)
    if len(basis) != 1:
        raise AmbiguousRecovery(f"solution space has dimension {len(basis)}, expected 1")
    h = Matrix(F, basis[0].reshape(d, d))
    if h.det().code == 0:
        raise Singular("recovered matrix is not invertible")
    return normalize_scalar(h)


def verify_conjugator(phi: AutoRep, h: Matrix) -> bool:
    """True when conjugation by h reproduces every image of phi."""
    G = phi.group
    try:
        hinv = h.inv()
    except Singular:
        return False
    return all(
        h @ gen_matrix(G, lab) @ hinv == img for lab, img in zip(enumerate_generators(G), phi.images)
    )


@dataclass(frozen=True)
class StructureReport:
    """Shape of D = g⁻¹N for the column-extraction attempt on families B and D.

    Blocks refer to the 2l indices ±1..±l: D = [[W, X], [Y, Z]].
    """

    D: Matrix
    is_diagonal: bool
    W_diagonal: bool
    Y_antidiagonal: bool
    X_nonzero_columns: tuple
    Z_nonzero_columns: tuple
    off_diagonal_entries: int


def bd_obstruction_report(phi: AutoRep, g: Matrix) -> StructureReport:
    """Run the column extraction of the fast attack on a B/D automorphism with known g."""
    G = phi.group
    F, d, l = G.field, G.dim, G.l
    if G.family not in ("B", "D"):
        raise FamilyUnsupported("the obstruction report concerns families B and D")
    cols = [None] * d
    for i in range(1, l + 1):
        j = l + 1 - i
        if j == i:
            j = i + 1 if i < l else i - 1
        # g⁻¹ times column j of g(e_ij - e_{-j,-i})g⁻¹ lives on rows i and -j
        cols[G.pos(i)] = _unit_image(phi, "X", i, j).codes[:, G.pos(j)]
        cols[G.pos(-i)] = _unit_image(phi, "X", j, i).codes[:, G.pos(-j)]
    if G.family == "B":
        # M - M²/2 strips the e_{1,-1} term from x_{1,0}(1) - I
        M = _unit_image(phi, "XB0U", 1)
        half = FieldElement(F, F.inv(2))
        cols[0] = (M - (M @ M).scale(half)).codes[:, G.pos(-1)]
    N = Matrix(F, np.stack(cols, axis=1))
    D = g.inv() @ N
    codes = D.codes
    off = 1 if G.family == "B" else 0
    core = codes[off:, off:]
    W, X, Y, Z = core[:l, :l], core[:l, l:], core[l:, :l], core[l:, l:]
    offdiag = int(np.count_nonzero(codes - np.diag(np.diag(codes))))
    anti = np.fliplr(Y)
    return StructureReport(
        D=D,
        is_diagonal=offdiag == 0,
        W_diagonal=not np.count_nonzero(W - np.diag(np.diag(W))),
        Y_antidiagonal=not np.count_nonzero(anti - np.diag(np.diag(anti))),
        X_nonzero_columns=tuple(int(c) + 1 for c in np.flatnonzero(X.any(axis=0))),
        Z_nonzero_columns=tuple(int(c) + 1 for c in np.flatnonzero(Z.any(axis=0))),
        off_diagonal_entries=offdiag,
    )
