"""Actions of a finite quantum group on a finite classical space.

A quantum action on n points is a magic matrix: an n x n array of
self-adjoint projections u_{i,j} in Pol(G) whose rows sum to the unit,
with delta(u_ij) = sum_k u_ik x u_kj and eps(u_ij) = [i = j].  The orbit
relation is simply "u_{k,l} != 0"; on each orbit class the columns sum to
the unit too (the counting measure is invariant) and the Haar state is
constant 1/|class| on the class.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import AlgElement, BlockAlgebra, LinMap, as_tolerance, tensor
from .haar import HaarState
from .hopf import HopfData
from .orbits import ActionMap, OrbitPartition, relation


@dataclass
class MagicAction:
    """A quantum permutation action: n x n magic matrix over Pol(G)."""

    hopf: HopfData
    n: int
    u: list  # u[i][j] an AlgElement of hopf.algebra

    def __repr__(self):
        return f"MagicAction(n={self.n}, over {self.hopf.name or 'G'})"


def permutation_magic(H: HopfData, action_table) -> MagicAction:
    """Encode a classical left action of a group on points as a magic
    matrix over its function algebra: u_ij = sum over {g : g.j = i}."""
    act = np.asarray(action_table, dtype=int)
    order, n = act.shape
    if order != H.dim:
        raise ValueError("action table does not match the group order")
    u = []
    for i in range(n):
        row = []
        for j in range(n):
            coeffs = np.zeros(H.dim, dtype=complex)
            for g in range(order):
                if act[g, j] == i:
                    coeffs[g] = 1.0
            row.append(AlgElement(H.algebra, coeffs))
        u.append(row)
    return MagicAction(H, n, u)


@dataclass
class MagicReport:
    residuals: dict

    def failures(self, tol=None):
        tol = as_tolerance(tol)
        return [k for k, v in self.residuals.items() if not tol.is_zero(v)]

    @property
    def passed(self) -> bool:
        return not self.failures()

    def max_residual(self) -> float:
        return max(self.residuals.values())

    def raise_for_failure(self, context="magic action"):
        bad = self.failures()
        if bad:
            raise ValueError(f"{context} fails: " + ", ".join(
                f"{k}={self.residuals[k]:.3e}" for k in bad))


def verify_magic(M: MagicAction, tol=None) -> MagicReport:
    """Check projections, row sums, the coproduct rule and the counit."""
    tol = as_tolerance(tol)
    H = M.hopf
    A = H.algebra
    T2 = H.square
    res = {"projection": 0.0, "selfadjoint": 0.0, "row_sum": 0.0,
           "coproduct": 0.0, "counit": 0.0}
    for i in range(M.n):
        row_sum = A.zero()
        for j in range(M.n):
            x = M.u[i][j]
            res["projection"] = max(res["projection"], (x * x - x).norm())
            res["selfadjoint"] = max(res["selfadjoint"], (x.star() - x).norm())
            row_sum = row_sum + x
            d = H.delta_of(x).coeffs
            acc = np.zeros(T2.dim, dtype=complex)
            for k in range(M.n):
                acc += T2.kron_coeffs(M.u[i][k].coeffs, M.u[k][j].coeffs)
            res["coproduct"] = max(res["coproduct"], T2.norm_coeffs(d - acc))
            eps = H.counit_of(x)
            res["counit"] = max(res["counit"],
                                abs(eps - (1.0 if i == j else 0.0)))
        res["row_sum"] = max(res["row_sum"], (row_sum - A.one()).norm())
    return MagicReport(res)


def action_from_magic(M: MagicAction, grouping=None) -> ActionMap:
    """The coaction on l^inf(n) defined by a magic matrix, with points
    optionally grouped into coarser direct summands."""
    N = BlockAlgebra([1] * M.n)
    A = M.hopf.algebra
    mat = np.zeros((M.n * A.dim, M.n), dtype=complex)
    for j in range(M.n):
        for i in range(M.n):
            mat[i * A.dim:(i + 1) * A.dim, j] = M.u[i][j].coeffs
    summands = ([[b] for b in range(M.n)] if grouping is None
                else [sorted(g) for g in grouping])
    return ActionMap(M.hopf, N, LinMap(N, tensor(N, A), mat), summands)


@dataclass
class ClassicalOrbits:
    partition: OrbitPartition
    counting_residual: float
    ergodic: bool

    @property
    def classes(self):
        return self.partition.classes


def classical_orbits(M: MagicAction, tol=None) -> ClassicalOrbits:
    """Orbit classes of a verified magic action, with the invariance of
    the counting measure checked per class."""
    tol = as_tolerance(tol)
    alpha = action_from_magic(M)
    alpha.verify(tol)
    P = relation(alpha, tol)
    A = M.hopf.algebra
    worst = 0.0
    for cls in P.classes:
        for j in cls:
            col = A.zero()
            for i in cls:
                col = col + M.u[i][j]
            worst = max(worst, (col - A.one()).norm())
    return ClassicalOrbits(P, worst, len(P.classes) == 1)


@dataclass
class HaarValueReport:
    values: np.ndarray
    on_class_residual: float
    off_class_residual: float

    def passed(self, tol=None) -> bool:
        tol = as_tolerance(tol)
        return (tol.is_zero(self.on_class_residual)
                and tol.is_zero(self.off_class_residual))


def haar_values(M: MagicAction, h: HaarState, P: OrbitPartition,
                tol=None) -> HaarValueReport:
    """Haar values of the magic entries: 1/|class| on a class, 0 off it."""
    vals = np.zeros((M.n, M.n))
    on_res = off_res = 0.0
    class_of = {}
    for cls in P.classes:
        for i in cls:
            class_of[i] = cls
    for i in range(M.n):
        for j in range(M.n):
            v = h(M.u[i][j])
            off_res = max(off_res, abs(v.imag))
            vals[i, j] = v.real
            if class_of[i] is class_of[j]:
                on_res = max(on_res, abs(v.real - 1.0 / len(class_of[i])))
            else:
                off_res = max(off_res, abs(v.real))
    return HaarValueReport(vals, on_res, off_res)
