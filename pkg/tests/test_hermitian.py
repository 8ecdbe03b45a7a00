import pytest
from sympy.polys.domains import QQ, QQ_I

from core.errors import DimensionError, InvalidPointError, RankError, SignatureError
from core.gaussian import RationalSampler, conj, gauss
from core.hermitian import (PointKind, Signature, Subspace, Vector, congruence_diagonalize,
                            conj_transpose, diagonal_basis, form_value, gram_matrix, identity_rows,
                            inertia, is_negative_subspace, is_null_subspace, is_positive_subspace,
                            mat_mul, max_null_dimension, norm2, null_basis, orthogonal_complement,
                            pairing, point_sign, radical, rank_of, signature_of_vectors)


def vec(sig, *coords):
    return Vector(tuple(gauss(c) if not isinstance(c, tuple) else gauss(*c) for c in coords), sig)


def test_signature_validation():
    assert Signature(2, 1, 1).n == 4
    with pytest.raises(SignatureError):
        Signature(-1, 2)
    with pytest.raises(SignatureError):
        Signature(0, 0, 0)
    with pytest.raises(SignatureError):
        Signature(1, 1, 0, weights=(1, 2))


def test_canonical_weights_are_dropped():
    assert Signature(1, 1, 1, weights=(1, -1, 0)) == Signature(1, 1, 1)
    weighted = Signature(1, 1, 0, weights=("1/2", -3))
    assert weighted.is_weighted
    assert weighted.eps == (QQ(1, 2), QQ(-3))
    assert weighted.swapped() == Signature(1, 1, 0, weights=(3, QQ(-1, 2)))


def test_swapped_and_labels():
    sig = Signature(2, 1, 1)
    assert sig.swapped() == Signature(1, 2, 1)
    assert sig.swap_permutation() == [2, 0, 1, 3]
    assert sig.label() == "(2,1,1)"
    assert str(sig) == "P^{2,1,1}"


def test_point_signs():
    sig = Signature(1, 1, 1)
    assert point_sign(vec(sig, 2, 1, 5)).kind is PointKind.POSITIVE
    assert point_sign(vec(sig, 1, 2, 0)).kind is PointKind.NEGATIVE
    ordinary = point_sign(vec(sig, 1, (0, 1), 3))
    assert ordinary.kind is PointKind.NULL and not ordinary.special
    special = point_sign(vec(sig, 0, 0, 1))
    assert special.kind is PointKind.NULL and special.special
    with pytest.raises(InvalidPointError):
        point_sign(vec(sig, 0, 0, 0))


def test_pairing_is_hermitian():
    sig = Signature(2, 1, 0)
    z = vec(sig, (1, 2), 3, (0, -1))
    w = vec(sig, 2, (1, 1), 4)
    assert pairing(z, w) == conj(pairing(w, z))
    assert norm2(z) == 5 + 9 - 1


def test_pairing_rejects_mixed_spaces():
    with pytest.raises(DimensionError):
        pairing(vec(Signature(1, 1), 1, 0), vec(Signature(2, 0), 1, 0))


def test_subspace_is_canonical():
    sig = Signature(2, 1, 0)
    a = Subspace.span([vec(sig, 1, 1, 0), vec(sig, 0, 1, 1)], sig)
    b = Subspace.span([vec(sig, 1, 2, 1), vec(sig, 1, 0, -1), vec(sig, 2, 2, 0)], sig)
    assert a == b
    assert a.dim == 2 and a.projective_dim == 1
    with pytest.raises(RankError):
        Subspace.from_basis([vec(sig, 1, 0, 0), vec(sig, 2, 0, 0)], sig)


def test_subspace_operations():
    sig = Signature(2, 2, 0)
    a = Subspace.coordinate(sig, [0, 1])
    b = Subspace.coordinate(sig, [1, 2])
    assert a.intersect(b) == Subspace.coordinate(sig, [1])
    assert a.sum(b) == Subspace.coordinate(sig, [0, 1, 2])
    assert a.contains(vec(sig, 3, 4, 0, 0))
    assert not a.contains(vec(sig, 0, 0, 1, 0))
    assert Subspace.coordinate(sig, [1]).issubspace(a)
    assert a.intersect(Subspace.zero(sig)) == Subspace.zero(sig)


def test_congruence_diagonalize():
    gram = [[gauss(0), gauss(1, 1)], [gauss(1, -1), gauss(0)]]
    t, diagonal = congruence_diagonalize(gram)
    product = mat_mul(mat_mul(t, gram), conj_transpose(t))
    for i in range(2):
        for j in range(2):
            expected = QQ_I(diagonal[i], 0) if i == j else QQ_I.zero
            assert product[i][j] == expected
    assert inertia(gram) == (1, 1, 0)


def test_inertia_of_subspaces():
    sig = Signature(2, 2, 1)
    null_line = Subspace.span([vec(sig, 1, 0, 1, 0, 0)], sig)
    assert null_line.derived_abc == (0, 0, 1)
    assert is_null_subspace(null_line)
    assert is_positive_subspace(Subspace.coordinate(sig, [0, 1]))
    assert is_negative_subspace(Subspace.coordinate(sig, [2]))
    mixed = Subspace.span([vec(sig, 1, 0, 1, 0, 0), vec(sig, 0, 1, 0, 0, 0), vec(sig, 0, 0, 0, 0, 1)], sig)
    assert mixed.derived_abc == (1, 0, 2)
    assert signature_of_vectors([vec(sig, 1, 0, 0, 0, 0), vec(sig, 0, 0, 1, 0, 0)], sig) == (1, 1, 0)
    with pytest.raises(RankError):
        signature_of_vectors([vec(sig, 1, 0, 0, 0, 0), vec(sig, 2, 0, 0, 0, 0)], sig)


def test_diagonal_basis_orders_blocks():
    sig = Signature(1, 1, 1)
    pairs = diagonal_basis(Subspace.whole(sig))
    signs = [d for _, d in pairs]
    assert signs[0] > 0 and signs[1] < 0 and signs[2] == 0
    rows = [row for row, _ in pairs]
    gram = gram_matrix(rows, sig)
    assert all(not gram[i][j] for i in range(3) for j in range(3) if i != j)


def test_radical_and_complement():
    sig = Signature(2, 2, 1)
    space = Subspace.span([vec(sig, 1, 0, 1, 0, 0), vec(sig, 0, 1, 0, 0, 0)], sig)
    assert radical(space) == Subspace.span([vec(sig, 1, 0, 1, 0, 0)], sig)
    complement = orthogonal_complement(space)
    assert complement.dim == 3
    for a in space.basis:
        for b in complement.basis:
            assert not form_value(sig, a, b)
    assert complement.contains(vec(sig, 0, 0, 0, 0, 1))


def test_complement_of_random_subspaces():
    sig = Signature(2, 1, 1)
    sampler = RationalSampler(11)
    for _ in range(10):
        space = Subspace.span([sampler.vector(4) for _ in range(2)], sig)
        complement = orthogonal_complement(space)
        assert complement.dim >= sig.n - space.dim
        assert all(not form_value(sig, a, b) for a in space.basis for b in complement.basis)


@pytest.mark.parametrize("sig", [Signature(1, 1), Signature(2, 3, 1), Signature(3, 1, 2), Signature(0, 0, 2)])
def test_null_basis_is_maximal(sig):
    rows = null_basis(sig)
    space = Subspace.from_basis(rows, sig)
    assert is_null_subspace(space)
    assert space.projective_dim == max_null_dimension(sig)


@pytest.mark.parametrize("sig", [Signature(2, 1), Signature(1, 2, 1), Signature(3, 2, 2)])
def test_inertia_survives_a_change_of_basis(sig):
    sampler = RationalSampler(31)
    assert inertia(gram_matrix(identity_rows(sig.n), sig)) == (sig.r, sig.s, sig.t)
    rows = [sampler.vector(sig.n) for _ in range(sig.n - 1)]
    gram = gram_matrix(rows, sig)
    expected = inertia(gram)
    changes = 0
    while changes < 5:
        change = sampler.matrix(len(rows), len(rows))
        if rank_of(change, len(rows)) < len(rows):
            continue
        moved = mat_mul(mat_mul(change, gram), conj_transpose(change))
        assert inertia(moved) == expected
        changes += 1
