import random

import pytest

from chevmor.algebra import Matrix
from chevmor.attack import (
    bd_obstruction_report,
    conjugation_system,
    recover_conjugator_fast,
    recover_conjugator_linear,
    verify_conjugator,
)
from chevmor.automorphism import AutoRep, auto_from_conjugation, auto_identity
from chevmor.errors import AmbiguousRecovery, FamilyUnsupported, Inconsistent
from chevmor.groups import GroupId, sample_diagonal_similitude
from chevmor.mor import random_conjugator


def is_scalar_multiple(a, b):
    return (a @ b.inv()).scalar_value() is not None


@pytest.mark.parametrize("fam", "AC")
def test_fast_identity_gives_scalar(fam):
    G = GroupId.make(fam, 2, 5)
    ghat = recover_conjugator_fast(auto_identity(G))
    assert ghat.scalar_value() is not None


def test_fast_diagonal_similitude():
    G = GroupId.make("C", 2, 3)
    g = sample_diagonal_similitude(G, random.Random(0))
    assert is_scalar_multiple(recover_conjugator_fast(auto_from_conjugation(G, g)), g)


@pytest.mark.parametrize("fam,l,p,k", [("A", 2, 5, 1), ("A", 3, 3, 2), ("C", 2, 3, 2), ("C", 3, 7, 1)])
def test_fast_and_linear_agree(fam, l, p, k):
    G = GroupId.make(fam, l, p, k)
    rng = random.Random(1)
    for _ in range(10):
        g = random_conjugator(G, rng)
        phi = auto_from_conjugation(G, g)
        fast, lin = recover_conjugator_fast(phi), recover_conjugator_linear(phi)
        assert is_scalar_multiple(fast, g)
        assert fast == lin  # both normalized the same way
        assert auto_from_conjugation(G, fast) == phi


def test_fast_rejects_b_and_d():
    for fam in "BD":
        G = GroupId.make(fam, 2, 5)
        with pytest.raises(FamilyUnsupported):
            recover_conjugator_fast(auto_identity(G))


def test_fast_inconsistent_on_degenerate_rep():
    G = GroupId.make("A", 2, 5)
    ident = Matrix.identity(G.field, 3)
    with pytest.raises(Inconsistent):
        recover_conjugator_fast(AutoRep(G, (ident,) * 6))


@pytest.mark.parametrize("fam,l,p", [("B", 2, 3), ("B", 3, 5), ("D", 2, 5), ("D", 3, 3), ("C", 2, 5), ("A", 2, 3)])
def test_linear_recovery(fam, l, p):
    G = GroupId.make(fam, l, p)
    rng = random.Random(2)
    for _ in range(10):
        g = random_conjugator(G, rng)
        phi = auto_from_conjugation(G, g)
        h = recover_conjugator_linear(phi)
        assert is_scalar_multiple(h, g)
        assert verify_conjugator(phi, h)


def test_linear_identity_and_ambiguity():
    G = GroupId.make("B", 2, 3)
    h = recover_conjugator_linear(auto_identity(G))
    assert h.is_identity()
    ident = Matrix.identity(G.field, G.dim)
    # every image trivial: the whole matrix algebra solves the system
    with pytest.raises(AmbiguousRecovery):
        recover_conjugator_linear(AutoRep(G, (ident,) * len(auto_identity(G).images)))


def test_linear_system_shape():
    G = GroupId.make("C", 2, 3)
    phi = auto_identity(G)
    assert conjugation_system(phi).shape == (len(phi.images) * 16, 16)


def test_verify_rejects_wrong_conjugator():
    G = GroupId.make("C", 2, 5)
    rng = random.Random(3)
    phi = auto_from_conjugation(G, random_conjugator(G, rng))
    assert not verify_conjugator(phi, random_conjugator(G, rng))


def test_obstruction_report():
    G = GroupId.make("D", 2, 5)
    rep = bd_obstruction_report(auto_identity(G), Matrix.identity(G.field, 4))
    assert rep.is_diagonal
    rng = random.Random(4)
    flagged = 0
    for _ in range(20):
        g = random_conjugator(G, rng)
        rep = bd_obstruction_report(auto_from_conjugation(G, g), g)
        flagged += not rep.is_diagonal
    assert flagged >= 18
    with pytest.raises(FamilyUnsupported):
        bd_obstruction_report(auto_identity(GroupId.make("C", 2, 5)), Matrix.identity(G.field, 4))


def test_obstruction_report_pattern():
    # even rank: every index pairs with l+1-i, so Y is anti-diagonal
    G = GroupId.make("D", 4, 7)
    g = random_conjugator(G, random.Random(5))
    rep = bd_obstruction_report(auto_from_conjugation(G, g), g)
    assert rep.W_diagonal and rep.Y_antidiagonal
    assert not rep.is_diagonal


def test_obstruction_report_b():
    G = GroupId.make("B", 2, 5)
    assert bd_obstruction_report(auto_identity(G), Matrix.identity(G.field, 5)).is_diagonal
    g = random_conjugator(G, random.Random(5))
    rep = bd_obstruction_report(auto_from_conjugation(G, g), g)
    assert rep.D.shape == (5, 5) and not rep.is_diagonal
