"""Finite quantum groups as Hopf *-algebras given by structure constants.

A finite quantum group G is carried around as ``HopfData``: an algebra
(the function algebra of G) together with comultiplication, counit and
antipode.  Construction never trusts its input: every builder and every
loader runs the full axiom verification, since all theorem checks further
down are meaningless on a non-Hopf input.

Finite-dimensional Hopf C*-algebras are automatically of Kac type, so the
unitary antipode coincides with S; the verification includes S^2 = id and
S(x*) = S(x)*.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .core import (AlgElement, Algebra, BlockAlgebra, LinMap, Tolerance,
                   as_tolerance, tensor)
from .groups import FiniteGroup


@dataclass
class HopfData:
    """A finite quantum group: algebra plus Hopf structure maps.

    ``delta`` maps the algebra into its tensor square (Kronecker indexing),
    ``counit`` is a covector, ``antipode`` an algebra endomap.
    """

    algebra: Algebra
    delta: LinMap
    counit: np.ndarray
    antipode: LinMap
    name: str = ""
    _square: object = field(default=None, repr=False)
    _cube: object = field(default=None, repr=False)

    def __post_init__(self):
        d = self.algebra.dim
        self.counit = np.asarray(self.counit, dtype=complex).reshape(d)
        if self.delta.matrix.shape != (d * d, d):
            raise ValueError("comultiplication has wrong shape")
        if self.antipode.matrix.shape != (d, d):
            raise ValueError("antipode has wrong shape")

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def square(self):
        if self._square is None:
            self._square = tensor(self.algebra, self.algebra)
        return self._square

    @property
    def cube(self):
        if self._cube is None:
            self._cube = tensor(self.algebra, self.algebra, self.algebra)
        return self._cube

    def delta_of(self, x: AlgElement) -> AlgElement:
        return AlgElement(self.square, self.delta.matrix @ x.coeffs)

    def counit_of(self, x: AlgElement) -> complex:
        return complex(self.counit @ x.coeffs)

    def antipode_of(self, x: AlgElement) -> AlgElement:
        return self.antipode(x)

    def multiplication_map(self) -> LinMap:
        d = self.dim
        m = self.algebra.mul_tensor.reshape(d, d * d)
        return LinMap(self.square, self.algebra, m)

    def flipped_delta_matrix(self) -> np.ndarray:
        d = self.dim
        m = self.delta.matrix.reshape(d, d, d)
        return m.transpose(1, 0, 2).reshape(d * d, d)

    def is_cocommutative(self, tol=None) -> bool:
        res = float(np.linalg.norm(
            self.delta.matrix - self.flipped_delta_matrix(), 2))
        return as_tolerance(tol).is_zero(res, _op(self.delta.matrix))

    def __repr__(self):
        return f"HopfData({self.name or self.algebra!r}, dim={self.dim})"


def _op(m) -> float:
    return float(np.linalg.norm(m, 2))


@dataclass
class AxiomReport:
    """Residuals of the Hopf *-algebra axioms, with per-check scales."""

    residuals: dict
    scales: dict
    tol: Tolerance

    def failures(self):
        return [k for k, r in self.residuals.items()
                if not self.tol.is_zero(r, self.scales.get(k, 1.0))]

    @property
    def passed(self) -> bool:
        return not self.failures()

    def max_residual(self) -> float:
        return max(self.residuals.values())

    def raise_for_failure(self, context: str = ""):
        bad = self.failures()
        if bad:
            detail = ", ".join(f"{k}={self.residuals[k]:.3e}" for k in bad)
            raise HopfAxiomError(
                f"{context or 'Hopf data'} fails axiom check(s): {detail}",
                self)


class HopfAxiomError(ValueError):
    def __init__(self, message, report: AxiomReport):
        super().__init__(message)
        self.report = report


def verify_hopf(H: HopfData, tol=None) -> AxiomReport:
    """Check all Hopf *-algebra axioms numerically and report residuals.

    Map identities are compared in operator norm on coefficient space;
    the homomorphism property of delta is checked on all basis pairs.
    """
    tol = as_tolerance(tol)
    A, T2 = H.algebra, H.square
    d = A.dim
    DM = H.delta.matrix
    SM = H.antipode.matrix
    eye = np.eye(d)
    res, sca = {}, {}

    # the involution itself must be an involutive antihomomorphism
    res["star_involutive"] = _op(
        A.star_matrix @ np.conj(A.star_matrix) - eye)
    sca["star_involutive"] = _op(A.star_matrix) ** 2
    worst = 0.0
    for p in range(d):
        for q in range(d):
            lhs = A.star_coeffs(A.mul_coeffs(eye[p], eye[q]))
            rhs = A.mul_coeffs(A.star_matrix[:, q], A.star_matrix[:, p])
            worst = max(worst, A.norm_coeffs(lhs - rhs))
    res["star_antimultiplicative"] = worst
    sca["star_antimultiplicative"] = 1.0

    one2 = T2.kron_coeffs(A.unit_coeffs, A.unit_coeffs)
    res["delta_unital"] = T2.norm_coeffs(DM @ A.unit_coeffs - one2)
    sca["delta_unital"] = 1.0

    # delta(x*) = delta(x)*  <=>  D St = St_2 conj(D)
    res["delta_star"] = _op(DM @ A.star_matrix - T2.star_matrix @ np.conj(DM))
    sca["delta_star"] = _op(DM)

    worst = 0.0
    cols = [DM[:, k] for k in range(d)]
    for p in range(d):
        for q in range(d):
            lhs = DM @ A.mul_coeffs(eye[p], eye[q])
            rhs = T2.mul_coeffs(cols[p], cols[q])
            worst = max(worst, T2.norm_coeffs(lhs - rhs))
    res["delta_multiplicative"] = worst
    sca["delta_multiplicative"] = _op(DM) ** 2

    left = np.kron(DM, eye) @ DM   # (delta x id) delta
    right = np.kron(eye, DM) @ DM  # (id x delta) delta
    res["coassociativity"] = _op(left - right)
    sca["coassociativity"] = _op(left)

    eps_row = H.counit[None, :]
    res["counit_left"] = _op(np.kron(eps_row, eye) @ DM - eye)
    res["counit_right"] = _op(np.kron(eye, eps_row) @ DM - eye)
    sca["counit_left"] = sca["counit_right"] = _op(DM)

    mm = H.multiplication_map().matrix
    target = np.outer(A.unit_coeffs, H.counit)
    res["antipode_left"] = _op(mm @ np.kron(SM, eye) @ DM - target)
    res["antipode_right"] = _op(mm @ np.kron(eye, SM) @ DM - target)
    sca["antipode_left"] = sca["antipode_right"] = _op(mm) * _op(DM)

    res["antipode_involutive"] = _op(SM @ SM - eye)
    sca["antipode_involutive"] = _op(SM) ** 2
    # S(x*) = S(x)*  <=>  S St = St conj(S)
    res["antipode_star"] = _op(SM @ A.star_matrix - A.star_matrix @ np.conj(SM))
    sca["antipode_star"] = _op(SM)

    return AxiomReport(res, sca, tol)


# ---------------------------------------------------------------------------
# constructors for the shipped families
# ---------------------------------------------------------------------------

def function_algebra(group: FiniteGroup, tol=None) -> HopfData:
    """Functions on a finite group: C^G with delta dual to the product.

    delta(d_g) = sum_{hk=g} d_h x d_k, eps(d_g) = [g = e],
    S(d_g) = d_{g^{-1}}.
    """
    n = group.order
    A = BlockAlgebra([1] * n, name=f"C({group.name})")
    D = np.zeros((n * n, n), dtype=complex)
    for h in range(n):
        for k in range(n):
            D[h * n + k, group.table[h, k]] = 1.0
    eps = np.zeros(n, dtype=complex)
    eps[group.identity] = 1.0
    S = np.zeros((n, n), dtype=complex)
    for g in range(n):
        S[group.inverse(g), g] = 1.0
    H = HopfData(A, LinMap(A, tensor(A, A), D), eps, LinMap(A, A, S),
                 name=f"C({group.name})")
    verify_hopf(H, tol).raise_for_failure(H.name)
    return H


def group_algebra(group: FiniteGroup, tol=None) -> HopfData:
    """The group algebra C[G] in its group-element basis.

    delta(g) = g x g, eps(g) = 1, S(g) = g^{-1}, g* = g^{-1}.  No block
    structure is assumed here; the Wedderburn machinery discovers it.
    """
    n = group.order
    m = np.zeros((n, n, n), dtype=complex)
    for p in range(n):
        for q in range(n):
            m[group.table[p, q], p, q] = 1.0
    unit = np.zeros(n, dtype=complex)
    unit[group.identity] = 1.0
    star = np.zeros((n, n), dtype=complex)
    S = np.zeros((n, n), dtype=complex)
    for g in range(n):
        star[group.inverse(g), g] = 1.0
        S[group.inverse(g), g] = 1.0
    A = Algebra(m, unit, star, name=f"C[{group.name}]")
    D = np.zeros((n * n, n), dtype=complex)
    for g in range(n):
        D[g * n + g, g] = 1.0
    H = HopfData(A, LinMap(A, tensor(A, A), D), np.ones(n), LinMap(A, A, S),
                 name=f"C[{group.name}]")
    verify_hopf(H, tol).raise_for_failure(H.name)
    return H


# ---------------------------------------------------------------------------
# the eight-dimensional Kac-Paljutkin quantum group
# ---------------------------------------------------------------------------
#
# Presentation: unitaries x, y, z with
#   x^2 = y^2 = 1,  xy = yx,  zx = yz,  zy = xz,  z^2 = (1 + x + y - xy)/2,
#   delta(x) = x x x, delta(y) = y x y,
#   delta(z) = (1/2)(1x1 + 1xx + yx1 - yxx) (z x z),
#   eps = 1 on generators, S fixes the generators, z* = z^{-1} = z^2 z.
# Monomial basis x^a y^b z^c; all structure constants are dyadic rationals,
# so the construction is exact in double precision.

def _kp_mono_mul(m1, m2):
    """Product of monomials (a, b, c) as a {monomial: coeff} dict."""
    a, b, c = m1
    a2, b2, c2 = m2
    if c == 1:
        # z x^a2 y^b2 = x^b2 y^a2 z
        a2, b2 = b2, a2
    A, B, C = a ^ a2, b ^ b2, c + c2
    if C < 2:
        return {(A, B, C): 1.0}
    # z^2 = (1 + x + y - xy)/2
    return {(A, B, 0): 0.5, (A ^ 1, B, 0): 0.5,
            (A, B ^ 1, 0): 0.5, (A ^ 1, B ^ 1, 0): -0.5}


def kac_paljutkin(tol=None) -> HopfData:
    """The unique 8-dim Hopf C*-algebra that is neither commutative nor
    cocommutative, in its monomial presentation.

    Use :func:`finiteqg.duality.block_presentation` for the C^4 + M_2
    matrix picture.
    """
    monos = [(a, b, c) for c in (0, 1) for b in (0, 1) for a in (0, 1)]
    index = {m: k for k, m in enumerate(monos)}
    n = 8

    mt = np.zeros((n, n, n), dtype=complex)
    for p, m1 in enumerate(monos):
        for q, m2 in enumerate(monos):
            for m, c in _kp_mono_mul(m1, m2).items():
                mt[index[m], p, q] += c
    unit = np.zeros(n, dtype=complex)
    unit[index[(0, 0, 0)]] = 1.0

    # star: antimultiplicative, fixes x, y; z* = z^2 * z
    star = np.zeros((n, n), dtype=complex)
    q_elem = {(0, 0, 0): 0.5, (1, 0, 0): 0.5, (0, 1, 0): 0.5, (1, 1, 0): -0.5}
    for p, (a, b, c) in enumerate(monos):
        if c == 0:
            star[index[(a, b, 0)], p] = 1.0
        else:
            # (x^a y^b z)* = z^{-1} y^b x^a = q * x^b y^a z
            for (qa, qb, _), cq in q_elem.items():
                star[index[(qa ^ b, qb ^ a, 1)], p] += cq
    A = Algebra(mt, unit, star, name="KP8")
    T2 = tensor(A, A)

    def mono_vec(m):
        v = np.zeros(n, dtype=complex)
        v[index[m]] = 1.0
        return v

    def combo(d):
        v = np.zeros(n, dtype=complex)
        for m, c in d.items():
            v[index[m]] += c
        return v

    xv, yv, zv = mono_vec((1, 0, 0)), mono_vec((0, 1, 0)), mono_vec((0, 0, 1))
    onev = unit
    j0 = 0.5 * (T2.kron_coeffs(onev, onev) + T2.kron_coeffs(onev, xv)
                + T2.kron_coeffs(yv, onev) - T2.kron_coeffs(yv, xv))
    dx = T2.kron_coeffs(xv, xv)
    dy = T2.kron_coeffs(yv, yv)
    dz = T2.mul_coeffs(j0, T2.kron_coeffs(zv, zv))

    D = np.zeros((n * n, n), dtype=complex)
    for p, (a, b, c) in enumerate(monos):
        v = T2.kron_coeffs(onev, onev)
        for gen, on in ((dx, a), (dy, b), (dz, c)):
            if on:
                v = T2.mul_coeffs(v, gen)
        D[:, p] = v

    # S: antihomomorphism fixing the generators
    S = np.zeros((n, n), dtype=complex)
    for p, (a, b, c) in enumerate(monos):
        if c == 0:
            S[index[(a, b, 0)], p] = 1.0
        else:
            # S(x^a y^b z) = z y^b x^a = x^b y^a z
            S[index[(b, a, 1)], p] = 1.0

    eps = np.ones(n, dtype=complex)
    H = HopfData(A, LinMap(A, T2, D), eps, LinMap(A, A, S), name="KP8")
    verify_hopf(H, tol).raise_for_failure("KP8 construction")
    if H.is_cocommutative(tol) or A.is_commutative(tol):
        raise AssertionError("KP8 construction degenerated")
    return H


def group_like_elements(H: HopfData, tol=None):
    """Basis elements g with delta(g) = g x g and eps(g) = 1.

    Scans the basis only, which recovers the full intrinsic group for
    group algebras and for the monomial Kac-Paljutkin presentation; the
    general search goes through the dual's characters instead.
    """
    tol = as_tolerance(tol)
    out = []
    T2 = H.square
    for k in range(H.dim):
        g = H.algebra.basis_element(k)
        d = H.delta_of(g)
        kk = AlgElement(T2, T2.kron_coeffs(g.coeffs, g.coeffs))
        if (d - kk).is_zero(tol) and abs(H.counit_of(g) - 1.0) < 0.5:
            out.append(g)
    return out
