"""Orbits of finite quantum group actions on multi-matrix algebras.

Central objects:

* ``SubgroupMorphism`` -- a surjection pi: l^inf(dual) -> l^inf(subgroup)
  intertwining the coproducts, together with its support projection and
  the derived quotient Hopf structure;
* ``HomogeneousSpace`` -- the coinvariant subalgebra
  {x : (pi x id) delta(x) = 1 x x} with its own block decomposition;
* ``ActionMap`` -- a coaction N -> N x Pol(G) on a direct sum of matrix
  blocks, optionally regrouped into coarser summands;
* ``OrbitPartition`` -- the orbit relation: summands i, j are related when
  the component of the action between them is non-zero.

The relation is symmetric for any action; it is an equivalence relation
when every summand is a single matrix block, and the class sums of block
units are exactly the invariant projections.  For homogeneous spaces the
class sums are central supports inside the ambient discrete dual, which
``central_supports`` verifies explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (AlgElement, Algebra, BlockAlgebra, LinMap,
                   DEFAULT_SEED, as_tolerance, nullspace,
                   distance_to_span, tensor)
from .duality import DiscreteQG, mult_unitary
from .hopf import HopfData, verify_hopf
from .wedderburn import WedderburnData, central_support, decompose


class MorphismError(ValueError):
    pass


@dataclass
class SubgroupMorphism:
    """A quantum subgroup of the discrete dual, given by the surjection pi.

    ``matrix`` maps block coordinates of l^inf(dual) onto the subgroup's
    coordinates; ``support`` is the central projection carrying the
    subgroup (the kernel of pi is its complementary ideal); ``codomain``
    is the derived quotient Hopf structure, verified on construction;
    ``surviving`` lists the ambient blocks that pi keeps, which is also
    the embedding of the subgroup's irreducibles into the ambient ones.
    """

    dqg: DiscreteQG
    matrix: np.ndarray
    support: AlgElement
    codomain: HopfData
    surviving: list
    section: np.ndarray
    normal: bool

    @property
    def rank(self) -> int:
        return self.matrix.shape[0]

    def __repr__(self):
        return (f"SubgroupMorphism(dim {self.rank} of {self.dqg!r}, "
                f"normal={self.normal})")


def subgroup_from_dual_matrix(D: DiscreteQG, pi_dual, tol=None,
                              in_block_coords=False) -> SubgroupMorphism:
    """Build and verify a subgroup morphism from its matrix.

    By default the matrix is given on the raw dual basis (the coordinates
    used by subgroup files); pass ``in_block_coords=True`` when the matrix
    already acts on canonical block coordinates.
    """
    tol = as_tolerance(tol)
    B = D.dual_algebra
    pi_dual = np.asarray(pi_dual, dtype=complex)
    pi = pi_dual.copy() if in_block_coords else pi_dual @ D.block_to_dual
    r = pi.shape[0]
    if pi.shape != (r, B.dim):
        raise MorphismError("pi matrix has the wrong shape")
    sv = np.linalg.svd(pi, compute_uv=False)
    if int(np.sum(sv > tol.eps * max(1.0, sv[0]))) != r:
        raise MorphismError("pi is not surjective")

    scale = float(np.linalg.norm(pi, 2))
    surviving = []
    for i in range(len(B.block_dims)):
        img = pi @ D.blocks.central_idempotents[i].coeffs
        if not tol.is_zero(float(np.linalg.norm(img)), scale):
            surviving.append(i)
    support = D.blocks.central_idempotents[surviving[0]]
    for i in surviving[1:]:
        support = support + D.blocks.central_idempotents[i]
    corner_dim = sum(B.block_dims[i] ** 2 for i in surviving)
    if corner_dim != r:
        raise MorphismError(
            f"kernel of pi is not an ideal of full blocks: corner dim "
            f"{corner_dim} != rank {r}")

    # pi must kill every matrix unit outside the surviving blocks
    dead = [k for k in range(B.dim)
            if B.unindex(k)[0] not in surviving]
    if dead:
        worst = float(np.abs(pi[:, dead]).max())
        if not tol.is_zero(worst, scale):
            raise MorphismError(
                f"pi does not vanish on the complementary ideal ({worst:.3e})")

    corner_idx = [k for k in range(B.dim) if B.unindex(k)[0] in surviving]
    pc = pi[:, corner_idx]
    section = np.zeros((B.dim, r), dtype=complex)
    section[corner_idx, :] = np.linalg.inv(pc)

    # quotient algebra structure through the section
    mul_q = np.einsum("rk,kab,ap,bq->rpq", pi, B.mul_tensor,
                      section, section, optimize=True)
    unit_q = pi @ B.unit_coeffs
    star_q = pi @ B.star_matrix @ np.conj(section)
    A_q = Algebra(mul_q, unit_q, star_q, name="l8(sub)")

    DM = D.dual_hopf.delta.matrix
    pipi_delta = np.kron(pi, pi) @ DM
    ker = nullspace(pi, tol)
    checks = {}
    if ker.shape[0]:
        checks["coproduct_kills_kernel"] = float(
            np.linalg.norm(pipi_delta @ ker.T, 2))
        checks["counit_kills_kernel"] = float(
            np.linalg.norm(D.dual_hopf.counit @ ker.T))
        checks["antipode_preserves_kernel"] = float(
            np.linalg.norm(pi @ D.dual_hopf.antipode.matrix @ ker.T, 2))
    delta_q = pipi_delta @ section
    counit_q = D.dual_hopf.counit @ section
    antipode_q = pi @ D.dual_hopf.antipode.matrix @ section
    checks["intertwines_coproduct"] = float(
        np.linalg.norm(pipi_delta - delta_q @ pi, 2))
    bad = {k: v for k, v in checks.items()
           if not tol.is_zero(v, scale ** 2)}
    if bad:
        raise MorphismError(
            "matrix is not a quantum subgroup morphism: "
            + ", ".join(f"{k}={v:.3e}" for k, v in bad.items()))

    codomain = HopfData(A_q, LinMap(A_q, tensor(A_q, A_q), delta_q),
                        counit_q, LinMap(A_q, A_q, antipode_q),
                        name="l8(sub)")
    verify_hopf(codomain, tol).raise_for_failure("subgroup quotient")

    normal = _is_normal(D, pi, unit_q, tol)
    return SubgroupMorphism(D, pi, support, codomain, surviving, section,
                            normal)


def full_subgroup(D: DiscreteQG, tol=None) -> SubgroupMorphism:
    return subgroup_from_dual_matrix(D, np.eye(D.dual_algebra.dim), tol,
                                     in_block_coords=True)


def trivial_subgroup(D: DiscreteQG, tol=None) -> SubgroupMorphism:
    return subgroup_from_dual_matrix(D, D.dual_hopf.counit[None, :], tol,
                                     in_block_coords=True)


def subgroup_from_group_likes(D: DiscreteQG, elements, tol=None):
    """Subgroup morphism from a set of group-like elements of Pol(G).

    The rows of pi evaluate dual functionals on the chosen group-likes
    (which must form a subgroup of the intrinsic group; verification of
    the morphism axioms happens downstream).
    """
    rows = np.stack([e.coeffs for e in elements])
    return subgroup_from_dual_matrix(D, rows, tol)


def _coinvariants(D: DiscreteQG, pi, unit_q, side: str, tol):
    B = D.dual_algebra
    DM = D.dual_hopf.delta.matrix
    eye = np.eye(B.dim)
    if side == "left":
        cond = np.kron(pi, eye) @ DM - np.kron(unit_q[:, None], eye)
    else:
        cond = np.kron(eye, pi) @ DM - np.kron(eye, unit_q[:, None])
    return nullspace(cond, tol)


def _is_normal(D: DiscreteQG, pi, unit_q, tol) -> bool:
    """Normality of the subgroup: left and right coinvariants coincide."""
    left = _coinvariants(D, pi, unit_q, "left", tol)
    right = _coinvariants(D, pi, unit_q, "right", tol)
    if left.shape[0] != right.shape[0]:
        return False
    worst = 0.0
    for v in left:
        worst = max(worst, distance_to_span(right, v))
    for v in right:
        worst = max(worst, distance_to_span(left, v))
    return tol.is_zero(worst)


@dataclass
class HomogeneousSpace:
    """The coinvariant subalgebra of the dual under a subgroup morphism."""

    dqg: DiscreteQG
    morphism: SubgroupMorphism
    basis: np.ndarray          # orthonormal rows spanning X inside l8(dual)
    wd: WedderburnData         # block decomposition inside the dual

    @property
    def block_dims(self):
        return self.wd.block_dims

    @property
    def block_algebra(self) -> BlockAlgebra:
        return self.wd.block_algebra

    @property
    def size(self) -> int:
        return len(self.wd.block_dims)

    def block_unit_in_dual(self, i: int) -> AlgElement:
        return self.wd.central_idempotents[i]

    def embed(self, x) -> AlgElement:
        return self.wd.embed(x)

    @property
    def trivial_block(self) -> int:
        """The block whose unit carries the trivial dual projection."""
        p0 = self.dqg.block_projection(0)
        for i in range(self.size):
            if not (p0 * self.block_unit_in_dual(i)).is_zero():
                return i
        raise RuntimeError("no block carries the trivial projection")

    def __repr__(self):
        return f"HomogeneousSpace(blocks={list(self.block_dims)})"


def homogeneous_space(D: DiscreteQG, m: SubgroupMorphism, tol=None,
                      seed: int = DEFAULT_SEED) -> HomogeneousSpace:
    """Solve {x : (pi x id) delta(x) = 1 x x} and decompose it."""
    tol = as_tolerance(tol)
    basis = _coinvariants(D, m.matrix, m.codomain.algebra.unit_coeffs,
                          "left", tol)
    if basis.shape[0] * m.rank != D.dual_algebra.dim:
        raise MorphismError(
            f"coinvariant dimension {basis.shape[0]} does not match "
            f"dim(dual)/dim(sub) = {D.dual_algebra.dim}/{m.rank}")
    gens = [AlgElement(D.dual_algebra, v) for v in basis]
    wd = decompose(gens, tol, seed)  # raises unless a *-closed unital span
    return HomogeneousSpace(D, m, basis, wd)


@dataclass
class ActionMap:
    """A coaction alpha: N -> N x Pol(G) on a multi-matrix algebra N.

    ``summands`` partitions the blocks of N into the direct summands M_i
    the orbit relation refers to; by default every block is its own
    summand (all summands are factors).
    """

    hopf: HopfData
    module: BlockAlgebra
    alpha: LinMap
    summands: list

    def __post_init__(self):
        if self.summands is None:
            self.summands = [[b] for b in range(len(self.module.block_dims))]
        got = sorted(b for g in self.summands for b in g)
        if got != list(range(len(self.module.block_dims))):
            raise ValueError("summands must partition the module blocks")

    @property
    def size(self) -> int:
        return len(self.summands)

    def summand_projection(self, i: int) -> AlgElement:
        out = self.module.block_unit(self.summands[i][0])
        for b in self.summands[i][1:]:
            out = out + self.module.block_unit(b)
        return out

    def summand_indices(self, i: int):
        idx = []
        for b in self.summands[i]:
            n = self.module.block_dims[b]
            o = int(self.module.offsets[b])
            idx.extend(range(o, o + n * n))
        return np.array(idx, dtype=int)

    def component_norm(self, j: int, i: int) -> float:
        """Norm of alpha_{ji}(1_i), the (j, i) component of the action."""
        y = self.alpha.matrix @ self.summand_projection(i).coeffs
        Y = y.reshape(self.module.dim, self.hopf.dim)
        cut = np.zeros_like(Y)
        rows = self.summand_indices(j)
        cut[rows, :] = Y[rows, :]
        return self.alpha.codomain.norm_coeffs(cut.reshape(-1))

    def verify(self, tol=None) -> dict:
        """Residuals of the action axioms; raises on failure."""
        tol = as_tolerance(tol)
        A, N = self.hopf, self.module
        T = self.alpha.codomain
        am = self.alpha.matrix
        d_n, d_a = N.dim, A.dim
        res = {}
        one_t = T.kron_coeffs(N.unit_coeffs, A.algebra.unit_coeffs)
        res["unital"] = T.norm_coeffs(am @ N.unit_coeffs - one_t)
        worst = 0.0
        eye = np.eye(d_n)
        for p in range(d_n):
            for q in range(d_n):
                lhs = am @ N.mul_coeffs(eye[p], eye[q])
                rhs = T.mul_coeffs(am[:, p], am[:, q])
                worst = max(worst, T.norm_coeffs(lhs - rhs))
        res["multiplicative"] = worst
        res["star"] = float(np.linalg.norm(
            am @ N.star_matrix - T.star_matrix @ np.conj(am), 2))
        lhs = np.kron(am, np.eye(d_a)) @ am
        rhs = np.kron(np.eye(d_n), A.delta.matrix) @ am
        res["coaction"] = float(np.linalg.norm(lhs - rhs, 2))
        res["counit"] = float(np.linalg.norm(
            np.kron(np.eye(d_n), A.counit[None, :]) @ am - np.eye(d_n), 2))
        s = np.linalg.svd(am, compute_uv=False)
        res["injectivity_defect"] = float(
            d_n - np.sum(s > tol.eps * max(1.0, s[0])))
        scale = 1.0 + float(np.linalg.norm(am, 2)) ** 2
        bad = [k for k, v in res.items()
               if k != "injectivity_defect" and not tol.is_zero(v, scale)]
        if bad:
            raise ValueError("not a coaction: "
                             + ", ".join(f"{k}={res[k]:.3e}" for k in bad))
        return res

    def restrict_to_blocks(self, blocks, tol=None) -> "ActionMap":
        """The restriction of the action to an invariant corner sum of
        blocks (valid when the corresponding projection is invariant)."""
        tol = as_tolerance(tol)
        blocks = sorted(blocks)
        sub = BlockAlgebra([self.module.block_dims[b] for b in blocks])
        cols = []
        for b in blocks:
            n = self.module.block_dims[b]
            o = int(self.module.offsets[b])
            cols.extend(range(o, o + n * n))
        E = np.zeros((self.module.dim, sub.dim), dtype=complex)
        for new, old in enumerate(cols):
            E[old, new] = 1.0
        big = np.kron(E, np.eye(self.hopf.dim))
        rhs = self.alpha.matrix @ E
        sol, *_ = np.linalg.lstsq(big, rhs, rcond=None)
        res = float(np.linalg.norm(big @ sol - rhs, 2))
        if not tol.is_zero(res, float(np.linalg.norm(rhs, 2))):
            raise ValueError("blocks do not carry an invariant corner "
                             f"(residual {res:.3e})")
        return ActionMap(self.hopf, sub,
                         LinMap(sub, tensor(sub, self.hopf.algebra), sol),
                         [[b] for b in range(len(blocks))])


@dataclass
class OrbitPartition:
    """The orbit relation of an action, its classes and diagnostics."""

    relation: np.ndarray
    classes: list
    invariant_projections: list
    symmetric: bool
    reflexive: bool
    transitive: bool
    all_factors: bool
    invariance_residual: float
    supports: list = None

    @property
    def is_equivalence(self) -> bool:
        return self.symmetric and self.reflexive and self.transitive

    def class_of(self, i: int):
        for c in self.classes:
            if i in c:
                return c
        raise KeyError(i)

    def __repr__(self):
        return f"OrbitPartition(classes={self.classes})"


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, i):
        while self.parent[i] != i:
            self.parent[i] = self.parent[self.parent[i]]
            i = self.parent[i]
        return i

    def union(self, i, j):
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def relation(alpha: ActionMap, tol=None) -> OrbitPartition:
    """Compute the orbit relation of a verified action.

    relation[j, i] is true when the component alpha_{ji}(1_i) is non-zero;
    classes come from union-find over the symmetrized matrix; transitivity
    is asserted only when every summand is a single matrix block.
    """
    tol = as_tolerance(tol)
    m = alpha.size
    scale = float(np.linalg.norm(alpha.alpha.matrix, 2))
    rel = np.zeros((m, m), dtype=bool)
    for i in range(m):
        for j in range(m):
            rel[j, i] = not tol.is_zero(alpha.component_norm(j, i), scale)

    symmetric = bool(np.array_equal(rel, rel.T))
    reflexive = bool(np.all(np.diag(rel)))
    sym = rel | rel.T
    transitive = bool(np.all((sym.astype(int) @ sym.astype(int) > 0) <= sym))
    all_factors = all(len(g) == 1 for g in alpha.summands)

    uf = _UnionFind(m)
    for i in range(m):
        for j in range(m):
            if sym[i, j]:
                uf.union(i, j)
    roots = {}
    for i in range(m):
        roots.setdefault(uf.find(i), []).append(i)
    classes = sorted(roots.values())

    T = alpha.alpha.codomain
    one_a = alpha.hopf.algebra.unit_coeffs
    projections, worst = [], 0.0
    for cls in classes:
        p = alpha.summand_projection(cls[0])
        for i in cls[1:]:
            p = p + alpha.summand_projection(i)
        projections.append(p)
        target = T.kron_coeffs(p.coeffs, one_a)
        worst = max(worst,
                    T.norm_coeffs(alpha.alpha.matrix @ p.coeffs - target))
    return OrbitPartition(rel, classes, projections, symmetric, reflexive,
                          transitive, all_factors, worst)


def homogeneous_action(D: DiscreteQG, X: HomogeneousSpace,
                       tol=None) -> ActionMap:
    """The action x -> W (x x 1) W* of the quantum group on the
    homogeneous space, expressed on the space's own block coordinates."""
    tol = as_tolerance(tol)
    A = D.primal.algebra
    B = D.dual_algebra
    T = tensor(B, A)
    W = mult_unitary(D, tol).element
    Wst = W.star()
    Xalg = X.block_algebra
    E = X.wd.iso.matrix
    big = np.kron(E, np.eye(A.dim))
    rhs = np.empty((B.dim * A.dim, Xalg.dim), dtype=complex)
    for k in range(Xalg.dim):
        x_amb = T.kron_coeffs(E[:, k], A.unit_coeffs)
        y = T.mul_coeffs(T.mul_coeffs(W.coeffs, x_amb), Wst.coeffs)
        rhs[:, k] = y
    sol, *_ = np.linalg.lstsq(big, rhs, rcond=None)
    res = float(np.linalg.norm(big @ sol - rhs, 2))
    if not tol.is_zero(res, float(np.linalg.norm(rhs, 2))):
        raise ValueError(
            f"conjugation escapes the homogeneous space (residual {res:.3e})")
    alpha = ActionMap(D.primal, Xalg,
                      LinMap(Xalg, tensor(Xalg, A), sol),
                      [[b] for b in range(len(Xalg.block_dims))])
    alpha.verify(tol)
    return alpha


@dataclass
class CentralSupportReport:
    supports: list                 # frozenset of ambient block indices per i
    central_supports: list         # z(1_i) as elements of the dual
    class_sum_residual: float
    orthogonality_residual: float
    supports_match_relation: bool

    @property
    def passed(self) -> bool:
        tol = as_tolerance(None)
        return (tol.is_zero(self.class_sum_residual)
                and tol.is_zero(self.orthogonality_residual)
                and self.supports_match_relation)


def central_supports(D: DiscreteQG, X: HomogeneousSpace, P: OrbitPartition,
                     tol=None) -> CentralSupportReport:
    """Verify that class sums of block units are ambient central supports.

    For each block i of the homogeneous space, z(1_i) computed in the
    ambient dual must equal the sum of the units over the class of i;
    supports of related blocks must coincide, and central supports of
    unrelated blocks must be orthogonal.
    """
    tol = as_tolerance(tol)
    m = X.size
    zs, supports = [], []
    for i in range(m):
        one_i = X.block_unit_in_dual(i)
        zs.append(central_support(D.blocks, one_i, tol))
        supp = frozenset(
            k for k, p in enumerate(D.blocks.central_idempotents)
            if not (p * one_i).is_zero(tol))
        supports.append(supp)

    worst_sum = 0.0
    for cls in P.classes:
        s = X.block_unit_in_dual(cls[0])
        for j in cls[1:]:
            s = s + X.block_unit_in_dual(j)
        for i in cls:
            worst_sum = max(worst_sum, (zs[i] - s).norm())

    worst_orth = 0.0
    match = True
    for i in range(m):
        for j in range(m):
            same = P.relation[i, j] or P.relation[j, i]
            if not same:
                worst_orth = max(worst_orth, (zs[i] * zs[j]).norm())
            if (supports[i] == supports[j]) != bool(same or i == j):
                match = False
    return CentralSupportReport(supports, zs, worst_sum, worst_orth, match)


def ergodicity(alpha: ActionMap, tol=None):
    """Basis of the fixed-point algebra and the ergodicity flag."""
    tol = as_tolerance(tol)
    N, A = alpha.module, alpha.hopf.algebra
    embed = np.kron(np.eye(N.dim), A.unit_coeffs[:, None])
    fixed = nullspace(alpha.alpha.matrix - embed, tol)
    return fixed, fixed.shape[0] == 1
