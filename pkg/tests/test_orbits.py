import numpy as np
import pytest

from finiteqg import groups
from finiteqg.classical import action_from_magic, permutation_magic
from finiteqg.core import BlockAlgebra, LinMap, tensor
from finiteqg.core import distance_to_span, orthonormal_rows
from finiteqg.duality import mult_unitary
from finiteqg.hopf import function_algebra
from finiteqg.orbits import (ActionMap, MorphismError, central_supports,
                             ergodicity, full_subgroup, homogeneous_action,
                             homogeneous_space, relation,
                             subgroup_from_dual_matrix, trivial_subgroup)


def test_full_subgroup_space_is_scalars(dual_cs3):
    m = full_subgroup(dual_cs3)
    X = homogeneous_space(dual_cs3, m)
    assert X.block_dims == (1,)
    alpha = homogeneous_action(dual_cs3, X)
    P = relation(alpha)
    assert P.classes == [[0]]
    rep = central_supports(dual_cs3, X, P)
    assert rep.passed
    assert rep.supports[0] == frozenset({0, 1, 2})


def test_trivial_subgroup_space_is_everything(dual_cs3):
    m = trivial_subgroup(dual_cs3)
    X = homogeneous_space(dual_cs3, m)
    assert sorted(X.block_dims) == [1, 1, 2]
    alpha = homogeneous_action(dual_cs3, X)
    P = relation(alpha)
    assert P.classes == [[0], [1], [2]]


def test_a3_space_is_even_group_span(s3, dual_cs3, a3_space):
    # oracle: the coinvariants are spanned by the dual-basis functionals
    # attached to even permutations
    Ci = np.linalg.inv(dual_cs3.block_to_dual)
    even = groups.alternating_indices(s3)
    oracle = orthonormal_rows(np.stack([Ci[:, g] for g in even]))
    assert a3_space.basis.shape[0] == 3
    for v in a3_space.basis:
        assert distance_to_span(oracle, v) <= 1e-10
    for v in oracle:
        assert distance_to_span(a3_space.basis, v) <= 1e-10


def test_homogeneous_action_is_conjugation(s3, dual_cs3):
    # oracle: W (lambda_h x 1) W* = sum_g lambda_{g h g^-1} x delta_g
    B = dual_cs3.dual_algebra
    A = dual_cs3.primal.algebra
    T = tensor(B, A)
    W = mult_unitary(dual_cs3).element
    Ci = np.linalg.inv(dual_cs3.block_to_dual)
    inv = {g: s3.inverse(g) for g in range(6)}
    for h in range(6):
        x = T.kron_coeffs(Ci[:, h], A.unit_coeffs)
        got = T.mul_coeffs(T.mul_coeffs(W.coeffs, x), W.star().coeffs)
        want = np.zeros(T.dim, dtype=complex)
        for g in range(6):
            ghg = s3.table[s3.table[g, h], inv[g]]
            want += T.kron_coeffs(Ci[:, ghg], np.eye(6)[g])
        assert T.norm_coeffs(got - want) <= 1e-10


def test_a3_orbit_classes(a3_space, a3_partition):
    assert a3_space.block_dims == (1, 1, 1)
    triv = a3_space.trivial_block
    assert [triv] in a3_partition.classes
    pair = next(c for c in a3_partition.classes if len(c) == 2)
    assert sorted(pair + [triv]) == [0, 1, 2]
    assert a3_partition.is_equivalence
    assert a3_partition.invariance_residual <= 1e-9


def test_a3_central_supports(dual_cs3, a3_space, a3_partition):
    rep = central_supports(dual_cs3, a3_space, a3_partition)
    assert rep.passed
    assert rep.class_sum_residual <= 1e-9
    assert rep.orthogonality_residual <= 1e-9
    triv = a3_space.trivial_block
    # classical restriction table: trivial block sits under {triv, sgn},
    # the conjugate pair under the 2-dim representation
    assert rep.supports[triv] == frozenset({0, 1})
    for i in range(3):
        if i != triv:
            assert rep.supports[i] == frozenset({2})
    # z(1_omega) = 1_omega + 1_omegabar
    pair = next(c for c in a3_partition.classes if len(c) == 2)
    s = a3_space.block_unit_in_dual(pair[0]) \
        + a3_space.block_unit_in_dual(pair[1])
    for i in pair:
        assert (rep.central_supports[i] - s).norm() <= 1e-9


def test_flip_grouped_relation_not_transitive():
    # Z2 flipping 1<->2 and 3<->4, grouped as {1}, {2,3}, {4}
    z2 = groups.cyclic(2)
    H = function_algebra(z2)
    act = np.array([[0, 1, 2, 3], [1, 0, 3, 2]])
    M = permutation_magic(H, act)
    alpha = action_from_magic(M, grouping=[[0], [1, 2], [3]])
    P = relation(alpha)
    assert P.symmetric
    assert not P.transitive
    assert not P.all_factors
    want = np.array([[1, 1, 0], [1, 1, 1], [0, 1, 1]], dtype=bool)
    assert np.array_equal(P.relation, want)


def test_flip_singleton_relation_is_equivalence():
    z2 = groups.cyclic(2)
    H = function_algebra(z2)
    act = np.array([[0, 1, 2, 3], [1, 0, 3, 2]])
    M = permutation_magic(H, act)
    alpha = action_from_magic(M)
    P = relation(alpha)
    assert P.all_factors and P.is_equivalence
    assert P.classes == [[0, 1], [2, 3]]
    assert P.invariance_residual <= 1e-9


def test_trivial_group_acts_with_identity_relation():
    H = function_algebra(groups.trivial())
    N = BlockAlgebra([1, 2, 1])
    mat = np.kron(np.eye(N.dim), H.algebra.unit_coeffs[:, None])
    alpha = ActionMap(H, N, LinMap(N, tensor(N, H.algebra), mat), None)
    alpha.verify()
    P = relation(alpha)
    assert P.classes == [[0], [1], [2]]
    assert P.is_equivalence


def test_coproduct_action_is_ergodic(hopf_cs3):
    alpha = ActionMap(hopf_cs3, hopf_cs3.algebra, hopf_cs3.delta, None)
    alpha.verify()
    fixed, erg = ergodicity(alpha)
    assert erg


def test_flip_ergodicity():
    z2 = groups.cyclic(2)
    H = function_algebra(z2)
    M2 = permutation_magic(H, np.array([[0, 1], [1, 0]]))
    fixed, erg = ergodicity(action_from_magic(M2))
    assert erg and fixed.shape[0] == 1
    M4 = permutation_magic(H, np.array([[0, 1, 2, 3], [1, 0, 3, 2]]))
    alpha = action_from_magic(M4)
    fixed, erg = ergodicity(alpha)
    assert not erg and fixed.shape[0] == 2
    assert len(relation(alpha).classes) == 2


def test_ergodic_iff_one_class_on_classical_base(dual_kp8, kp8_morphism):
    # the KP8 homogeneous space is a classical 4-point space, where
    # ergodicity and having a single orbit class are equivalent
    X = homogeneous_space(dual_kp8, kp8_morphism)
    assert X.block_dims == (1, 1, 1, 1)
    alpha = homogeneous_action(dual_kp8, X)
    _, erg = ergodicity(alpha)
    P = relation(alpha)
    assert erg == (len(P.classes) == 1)


def test_bad_morphism_rejected(dual_cs3):
    # a surjection that does not intertwine the coproducts
    rng = np.random.default_rng(3)
    bad = rng.standard_normal((2, 6))
    with pytest.raises(MorphismError):
        subgroup_from_dual_matrix(dual_cs3, bad)


def test_kp8_subgroup_space(dual_kp8, kp8_morphism):
    assert kp8_morphism.rank == 2
    assert kp8_morphism.normal
    X = homogeneous_space(dual_kp8, kp8_morphism)
    assert X.block_dims == (1, 1, 1, 1)
    alpha = homogeneous_action(dual_kp8, X)
    P = relation(alpha)
    rep = central_supports(dual_kp8, X, P)
    assert rep.passed


def test_relation_matches_component_norms(a3_action, a3_partition):
    m = a3_action.size
    for i in range(m):
        for j in range(m):
            nz = a3_action.component_norm(j, i) > 1e-6
            assert nz == bool(a3_partition.relation[j, i])
