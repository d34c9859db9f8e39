import numpy as np
import pytest

from finiteqg import groups
from finiteqg.classical import (MagicAction, action_from_magic,
                                classical_orbits, haar_values,
                                permutation_magic, verify_magic)
from finiteqg.haar import haar_state
from finiteqg.hopf import function_algebra
from finiteqg.io import load_magic
from finiteqg.orbits import ergodicity


@pytest.fixture(scope="module")
def z3_magic():
    z3 = groups.cyclic(3)
    H = function_algebra(z3)
    act = np.array([[(g + x) % 3 for x in range(3)] for g in range(3)])
    return permutation_magic(H, act)


@pytest.fixture(scope="module")
def flip_magic():
    H = function_algebra(groups.cyclic(2))
    return permutation_magic(H, np.array([[0, 1, 2, 3], [1, 0, 3, 2]]))


def test_z3_magic_verifies_exactly(z3_magic):
    rep = verify_magic(z3_magic)
    assert rep.passed
    assert rep.max_residual() == 0.0
    # u_ij is the indicator of the unique g with g + j = i
    for i in range(3):
        for j in range(3):
            want = np.zeros(3)
            want[(i - j) % 3] = 1.0
            assert np.allclose(z3_magic.u[i][j].coeffs, want)


def test_flip_magic_verifies(flip_magic):
    assert verify_magic(flip_magic).passed


def test_kp8_magic_from_file(kp8_block, data_dir):
    M = load_magic(data_dir / "kp8_magic4.json", kp8_block)
    rep = verify_magic(M)
    assert rep.passed
    assert rep.max_residual() <= 1e-9
    co = classical_orbits(M)
    assert co.classes == [[0, 1, 2, 3]]
    assert co.ergodic
    h = haar_state(kp8_block)
    hv = haar_values(M, h, co.partition)
    assert hv.passed()
    assert np.allclose(hv.values, 0.25, atol=1e-9)
    # the action is genuinely quantum: some entry leaves the diagonal part
    quantum = any(np.abs(M.u[i][j].coeffs[4:]).max() > 0.1
                  for i in range(4) for j in range(4))
    assert quantum


def test_identity_action_singletons():
    H = function_algebra(groups.trivial())
    M = permutation_magic(H, np.array([[0, 1, 2]]))
    co = classical_orbits(M)
    assert co.classes == [[0], [1], [2]]
    h = haar_state(H)
    hv = haar_values(M, h, co.partition)
    assert np.allclose(hv.values, np.eye(3), atol=1e-12)


def test_double_flip_classes_and_haar(flip_magic):
    co = classical_orbits(flip_magic)
    assert co.classes == [[0, 1], [2, 3]]
    assert co.counting_residual <= 1e-9
    assert not co.ergodic
    h = haar_state(flip_magic.hopf)
    hv = haar_values(flip_magic, h, co.partition)
    assert hv.passed()
    want = np.zeros((4, 4))
    want[:2, :2] = 0.5
    want[2:, 2:] = 0.5
    assert np.allclose(hv.values, want, atol=1e-9)


def test_transitive_z3_haar_third(z3_magic):
    co = classical_orbits(z3_magic)
    assert co.ergodic and co.classes == [[0, 1, 2]]
    h = haar_state(z3_magic.hopf)
    hv = haar_values(z3_magic, h, co.partition)
    assert np.allclose(hv.values, 1 / 3, atol=1e-9)


def test_ergodic_iff_one_class(z3_magic, flip_magic):
    for M in [z3_magic, flip_magic]:
        co = classical_orbits(M)
        _, erg = ergodicity(action_from_magic(M))
        assert erg == (len(co.classes) == 1) == co.ergodic


def test_non_magic_rejected(kp8_block):
    A = kp8_block.algebra
    rng = np.random.default_rng(11)
    u = [[A.random_element(rng) for _ in range(2)] for _ in range(2)]
    M = MagicAction(kp8_block, 2, u)
    assert not verify_magic(M).passed
