"""Dense complex linear algebra over finite-dimensional *-algebras.

Everything downstream works with three kinds of algebras:

* ``BlockAlgebra`` -- a direct sum of full matrix blocks with the canonical
  matrix-unit basis (block-major, row-major inside each block),
* ``Algebra`` -- a general associative *-algebra given by structure
  constants on an arbitrary basis (used e.g. for group algebras in the
  group-element basis, and for convolution duals before their block
  structure has been computed),
* ``TensorAlgebra`` -- tensor products of the above, with coefficients in
  the Kronecker (pair-index) convention, so that the matrix of a tensor
  product of linear maps is literally ``np.kron``.

Elements are immutable coefficient vectors over the algebra's basis.
Operator norms are computed through a faithful representation: the block
representation for block algebras, the left regular representation
otherwise.  Zero tests are relative: ``norm <= eps * (1 + scale)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from string import ascii_lowercase

import numpy as np

DEFAULT_EPS = 1e-9
# 0xC11FF04D; fits in 32 bits so it seeds every numpy generator.
DEFAULT_SEED = 0xC11FF04D


@dataclass(frozen=True)
class Tolerance:
    """Relative tolerance used by every numeric predicate."""

    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if not self.eps > 0:
            raise ValueError("tolerance must be positive")

    def is_zero(self, value: float, scale: float = 1.0) -> bool:
        return value <= self.eps * (1.0 + scale)


def as_tolerance(tol) -> Tolerance:
    if tol is None:
        return Tolerance()
    if isinstance(tol, Tolerance):
        return tol
    return Tolerance(float(tol))


class Algebra:
    """Finite-dimensional associative *-algebra with a distinguished basis.

    The product is encoded by the structure tensor ``m[k, p, q]`` with
    e_p e_q = sum_k m[k, p, q] e_k, the involution by a matrix ``st`` with
    (x*)_coeffs = st @ conj(x_coeffs).
    """

    def __init__(self, mul_tensor, unit, star_matrix, name=""):
        mul_tensor = np.asarray(mul_tensor, dtype=complex)
        self.dim = mul_tensor.shape[0]
        if mul_tensor.shape != (self.dim,) * 3:
            raise ValueError("structure tensor must be cubic")
        self.mul_tensor = mul_tensor
        self.unit_coeffs = np.asarray(unit, dtype=complex).reshape(self.dim)
        self.star_matrix = np.asarray(star_matrix, dtype=complex)
        self.name = name
        self._rep_tensor = None

    # -- representation used for operator norms ---------------------------
    @property
    def rep_dim(self) -> int:
        return self.dim

    @property
    def rep_tensor(self):
        """Per-basis-element matrices of a faithful representation.

        For a plain structure-constant algebra this is the left regular
        representation; it computes the exact C*-norm whenever the basis is
        orthonormal for a tracial form compatible with the involution
        (true for group algebras), and a faithful submultiplicative norm
        otherwise.
        """
        if self._rep_tensor is None:
            # lambda(e_k)[r, q] = m[r, k, q]
            self._rep_tensor = np.ascontiguousarray(
                self.mul_tensor.transpose(1, 0, 2))
        return self._rep_tensor

    # -- coefficient-level operations --------------------------------------
    def mul_coeffs(self, x, y):
        return np.einsum("kpq,p,q->k", self.mul_tensor, x, y)

    def star_coeffs(self, x):
        return self.star_matrix @ np.conj(x)

    def rep_coeffs(self, x):
        return np.einsum("kab,k->ab", self.rep_tensor, x)

    def norm_coeffs(self, x) -> float:
        return float(np.linalg.norm(self.rep_coeffs(x), 2))

    # -- element constructors ----------------------------------------------
    def element(self, coeffs) -> "AlgElement":
        return AlgElement(self, coeffs)

    def basis_element(self, k: int) -> "AlgElement":
        v = np.zeros(self.dim, dtype=complex)
        v[k] = 1.0
        return AlgElement(self, v)

    def basis(self):
        return [self.basis_element(k) for k in range(self.dim)]

    def one(self) -> "AlgElement":
        return AlgElement(self, self.unit_coeffs)

    def zero(self) -> "AlgElement":
        return AlgElement(self, np.zeros(self.dim, dtype=complex))

    def random_element(self, rng) -> "AlgElement":
        v = rng.standard_normal(self.dim) + 1j * rng.standard_normal(self.dim)
        return AlgElement(self, v)

    def random_selfadjoint(self, rng) -> "AlgElement":
        x = self.random_element(rng)
        return 0.5 * (x + x.star())

    def is_commutative(self, tol=None) -> bool:
        tol = as_tolerance(tol)
        worst = 0.0
        for p in range(self.dim):
            for q in range(p + 1, self.dim):
                d = self.mul_tensor[:, p, q] - self.mul_tensor[:, q, p]
                worst = max(worst, self.norm_coeffs(d))
        return tol.is_zero(worst)

    def __eq__(self, other):
        return self is other

    def __hash__(self):
        return id(self)

    def __repr__(self):
        label = self.name or self.__class__.__name__
        return f"<{label} dim={self.dim}>"


class BlockAlgebra(Algebra):
    """Direct sum of full matrix algebras M_{n_1} + ... + M_{n_m}.

    Basis: matrix units e^{(k)}_{ij}, enumerated block by block, row-major,
    so index(k, i, j) = offset_k + i*n_k + j.  This enumeration is the one
    fixed convention every file format and every other module refers to.
    """

    def __init__(self, block_dims, name=""):
        block_dims = [int(n) for n in block_dims]
        if not block_dims or any(n <= 0 for n in block_dims):
            raise ValueError("block dims must be positive integers")
        self.block_dims = tuple(block_dims)
        self.offsets = np.concatenate(
            [[0], np.cumsum([n * n for n in block_dims])])
        dim = int(self.offsets[-1])

        unit = np.zeros(dim, dtype=complex)
        star = np.zeros((dim, dim))
        for k, n in enumerate(block_dims):
            for i in range(n):
                unit[self.index(k, i, i)] = 1.0
                for j in range(n):
                    star[self.index(k, j, i), self.index(k, i, j)] = 1.0

        self.dim = dim
        self.unit_coeffs = unit
        self.star_matrix = star.astype(complex)
        self.name = name
        self._mul_tensor = None
        self._rep_tensor = None

    # structure tensor is only materialized when a generic consumer asks
    @property
    def mul_tensor(self):
        if self._mul_tensor is None:
            m = np.zeros((self.dim,) * 3, dtype=complex)
            for k, n in enumerate(self.block_dims):
                for i in range(n):
                    for j in range(n):
                        for l in range(n):
                            m[self.index(k, i, l),
                              self.index(k, i, j),
                              self.index(k, j, l)] = 1.0
            self._mul_tensor = m
        return self._mul_tensor

    @mul_tensor.setter
    def mul_tensor(self, _):
        raise AttributeError("block structure tensor is derived")

    def index(self, block: int, row: int, col: int) -> int:
        n = self.block_dims[block]
        if not (0 <= row < n and 0 <= col < n):
            raise IndexError("matrix unit index out of range")
        return int(self.offsets[block]) + row * n + col

    def unindex(self, idx: int):
        """Inverse of :meth:`index`: basis index -> (block, row, col)."""
        block = int(np.searchsorted(self.offsets, idx, side="right")) - 1
        n = self.block_dims[block]
        r = idx - int(self.offsets[block])
        return block, r // n, r % n

    def block_matrices(self, coeffs):
        out = []
        for k, n in enumerate(self.block_dims):
            o = int(self.offsets[k])
            out.append(np.asarray(coeffs[o:o + n * n]).reshape(n, n))
        return out

    def from_block_matrices(self, mats) -> "AlgElement":
        if len(mats) != len(self.block_dims):
            raise ValueError("wrong number of blocks")
        coeffs = np.concatenate(
            [np.asarray(m, dtype=complex).reshape(-1) for m in mats])
        return AlgElement(self, coeffs)

    def block_unit(self, k: int) -> "AlgElement":
        mats = [np.eye(n) if j == k else np.zeros((n, n))
                for j, n in enumerate(self.block_dims)]
        return self.from_block_matrices(mats)

    def matrix_unit(self, block: int, row: int, col: int) -> "AlgElement":
        return self.basis_element(self.index(block, row, col))

    def mul_coeffs(self, x, y):
        out = np.empty(self.dim, dtype=complex)
        for k, n in enumerate(self.block_dims):
            o = int(self.offsets[k])
            xb = x[o:o + n * n].reshape(n, n)
            yb = y[o:o + n * n].reshape(n, n)
            out[o:o + n * n] = (xb @ yb).reshape(-1)
        return out

    def star_coeffs(self, x):
        out = np.empty(self.dim, dtype=complex)
        for k, n in enumerate(self.block_dims):
            o = int(self.offsets[k])
            out[o:o + n * n] = x[o:o + n * n].reshape(n, n).conj().T.reshape(-1)
        return out

    @property
    def rep_dim(self) -> int:
        return int(sum(self.block_dims))

    @property
    def rep_tensor(self):
        if self._rep_tensor is None:
            r = self.rep_dim
            t = np.zeros((self.dim, r, r), dtype=complex)
            start = np.concatenate([[0], np.cumsum(self.block_dims)])
            for k, n in enumerate(self.block_dims):
                s = int(start[k])
                for i in range(n):
                    for j in range(n):
                        t[self.index(k, i, j), s + i, s + j] = 1.0
            self._rep_tensor = t
        return self._rep_tensor

    def norm_coeffs(self, x) -> float:
        return max(float(np.linalg.norm(b, 2)) for b in self.block_matrices(x))

    def __repr__(self):
        label = self.name or "BlockAlgebra"
        return f"<{label} blocks={list(self.block_dims)}>"


class TensorAlgebra(Algebra):
    """Tensor product of algebras, coefficients in Kronecker convention.

    The coefficient of e_{p_1} x ... x e_{p_k} sits at the flat index
    ravel(p_1, ..., p_k); consequently ``kron`` of coefficient vectors and
    ``np.kron`` of linear-map matrices realize the tensor product.  Nested
    tensor factors are flattened, so A x (B x C) and (A x B) x C coincide.
    """

    def __init__(self, *factors, name=""):
        flat = []
        for f in factors:
            if isinstance(f, TensorAlgebra):
                flat.extend(f.factors)
            else:
                flat.append(f)
        if len(flat) < 2:
            raise ValueError("need at least two tensor factors")
        self.factors = tuple(flat)
        self.factor_dims = tuple(f.dim for f in flat)
        self.dim = int(np.prod(self.factor_dims))
        self.name = name
        self._unit = None
        self._star = None
        self._mul_einsum = None

    @property
    def unit_coeffs(self):
        if self._unit is None:
            u = self.factors[0].unit_coeffs
            for f in self.factors[1:]:
                u = np.kron(u, f.unit_coeffs)
            self._unit = u
        return self._unit

    @unit_coeffs.setter
    def unit_coeffs(self, _):
        raise AttributeError("tensor unit is derived")

    @property
    def star_matrix(self):
        if self._star is None:
            st = self.factors[0].star_matrix
            for f in self.factors[1:]:
                st = np.kron(st, f.star_matrix)
            self._star = st
        return self._star

    @star_matrix.setter
    def star_matrix(self, _):
        raise AttributeError("tensor star is derived")

    @property
    def block_dims(self):
        """Blocks of the tensor product, in factor-major order.

        Only defined when every factor carries a block structure; the
        (k_1, ..., k_m) block has dimension n_{k_1} * ... * n_{k_m}.
        """
        dims = [1]
        for f in self.factors:
            if not hasattr(f, "block_dims"):
                raise AttributeError("factor without block structure")
            dims = [d * n for d in dims for n in f.block_dims]
        return tuple(dims)

    def mul_coeffs(self, x, y):
        k = len(self.factors)
        X = x.reshape(self.factor_dims)
        Y = y.reshape(self.factor_dims)
        if self._mul_einsum is None:
            ps = ascii_lowercase[:k]
            qs = ascii_lowercase[k:2 * k]
            rs = ascii_lowercase[2 * k:3 * k]
            terms = ",".join(f"{r}{p}{q}" for r, p, q in zip(rs, ps, qs))
            self._mul_einsum = f"{ps},{qs},{terms}->{rs}"
        mts = [f.mul_tensor for f in self.factors]
        return np.einsum(self._mul_einsum, X, Y, *mts, optimize=True).reshape(-1)

    def star_coeffs(self, x):
        return self.star_matrix @ np.conj(x)

    @property
    def rep_dim(self) -> int:
        return int(np.prod([f.rep_dim for f in self.factors]))

    def rep_coeffs(self, x):
        k = len(self.factors)
        X = x.reshape(self.factor_dims)
        ps = ascii_lowercase[:k]
        rows = ascii_lowercase[k:2 * k]
        cols = ascii_lowercase[2 * k:3 * k]
        terms = ",".join(f"{p}{a}{b}" for p, a, b in zip(ps, rows, cols))
        out = np.einsum(f"{ps},{terms}->{rows}{cols}",
                        X, *[f.rep_tensor for f in self.factors],
                        optimize=True)
        r = self.rep_dim
        return out.reshape(r, r)

    def norm_coeffs(self, x) -> float:
        return float(np.linalg.norm(self.rep_coeffs(x), 2))

    # -- leg manipulation ---------------------------------------------------
    def kron_coeffs(self, *vecs):
        out = np.asarray(vecs[0], dtype=complex)
        for v in vecs[1:]:
            out = np.kron(out, v)
        return out

    def contract_leg(self, coeffs, leg: int, functional):
        """Apply a linear functional to one leg, returning reduced coeffs."""
        X = coeffs.reshape(self.factor_dims)
        X = np.tensordot(X, np.asarray(functional, dtype=complex), ([leg], [0]))
        return X.reshape(-1)

    def swap_legs(self, coeffs, i: int, j: int):
        X = coeffs.reshape(self.factor_dims)
        return np.swapaxes(X, i, j).reshape(-1)

    def reduced(self, without_leg: int):
        """The tensor algebra (or single algebra) with one leg removed."""
        rest = [f for l, f in enumerate(self.factors) if l != without_leg]
        return rest[0] if len(rest) == 1 else TensorAlgebra(*rest)

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, TensorAlgebra)
                and len(self.factors) == len(other.factors)
                and all(a == b for a, b in zip(self.factors, other.factors)))

    def __hash__(self):
        return hash(tuple(id(f) for f in self.factors))

    def __repr__(self):
        return "<Tensor " + " x ".join(repr(f) for f in self.factors) + ">"


def tensor(*algebras) -> TensorAlgebra:
    """Tensor product of algebras (flattened, Kronecker indexing)."""
    return TensorAlgebra(*algebras)


class AlgElement:
    """An element of an algebra: an immutable coefficient vector."""

    __slots__ = ("parent", "coeffs")

    def __init__(self, parent: Algebra, coeffs):
        coeffs = np.array(coeffs, dtype=complex).reshape(parent.dim)
        coeffs.flags.writeable = False
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, *_):
        raise AttributeError("AlgElement is immutable")

    def _check(self, other):
        if self.parent != other.parent:
            raise ValueError("elements live in different algebras")

    def __mul__(self, other):
        if isinstance(other, AlgElement):
            self._check(other)
            return AlgElement(self.parent,
                              self.parent.mul_coeffs(self.coeffs, other.coeffs))
        return AlgElement(self.parent, self.coeffs * complex(other))

    def __rmul__(self, scalar):
        return AlgElement(self.parent, complex(scalar) * self.coeffs)

    def __add__(self, other):
        self._check(other)
        return AlgElement(self.parent, self.coeffs + other.coeffs)

    def __sub__(self, other):
        self._check(other)
        return AlgElement(self.parent, self.coeffs - other.coeffs)

    def __neg__(self):
        return AlgElement(self.parent, -self.coeffs)

    def star(self) -> "AlgElement":
        return AlgElement(self.parent, self.parent.star_coeffs(self.coeffs))

    def norm(self) -> float:
        return self.parent.norm_coeffs(self.coeffs)

    def is_zero(self, tol=None, scale: float = 1.0) -> bool:
        return as_tolerance(tol).is_zero(self.norm(), scale)

    def is_projection(self, tol=None) -> bool:
        tol = as_tolerance(tol)
        sq = self * self - self
        sa = self.star() - self
        s = self.norm()
        return tol.is_zero(sq.norm(), s * s) and tol.is_zero(sa.norm(), s)

    def blocks(self):
        return self.parent.block_matrices(self.coeffs)

    def __repr__(self):
        return f"AlgElement({self.parent!r}, norm={self.norm():.3g})"


def mul(a: AlgElement, b: AlgElement) -> AlgElement:
    return a * b


def norm(x: AlgElement) -> float:
    return x.norm()


def is_zero(x: AlgElement, tol=None, scale: float = 1.0) -> bool:
    return x.is_zero(tol, scale)


def kron(*elements) -> AlgElement:
    """Tensor product of elements, living in the tensor of the parents."""
    t = tensor(*[e.parent for e in elements])
    return AlgElement(t, t.kron_coeffs(*[e.coeffs for e in elements]))


class LinMap:
    """Linear map between algebras, stored as a matrix over their bases."""

    __slots__ = ("domain", "codomain", "matrix")

    def __init__(self, domain: Algebra, codomain: Algebra, matrix):
        matrix = np.asarray(matrix, dtype=complex)
        if matrix.shape != (codomain.dim, domain.dim):
            raise ValueError(
                f"map matrix has shape {matrix.shape}, expected "
                f"{(codomain.dim, domain.dim)}")
        self.domain = domain
        self.codomain = codomain
        self.matrix = matrix

    @classmethod
    def identity(cls, algebra: Algebra) -> "LinMap":
        return cls(algebra, algebra, np.eye(algebra.dim))

    def __call__(self, x):
        if isinstance(x, AlgElement):
            if x.parent != self.domain:
                raise ValueError("element not in the domain")
            return AlgElement(self.codomain, self.matrix @ x.coeffs)
        return self.matrix @ np.asarray(x, dtype=complex)

    def __matmul__(self, other: "LinMap") -> "LinMap":
        if other.codomain != self.domain:
            raise ValueError("maps do not compose")
        return LinMap(other.domain, self.codomain, self.matrix @ other.matrix)

    def tensor(self, other: "LinMap") -> "LinMap":
        return LinMap(tensor(self.domain, other.domain),
                      tensor(self.codomain, other.codomain),
                      np.kron(self.matrix, other.matrix))

    def rank(self, tol=None) -> int:
        tol = as_tolerance(tol)
        s = np.linalg.svd(self.matrix, compute_uv=False)
        if s.size == 0:
            return 0
        return int(np.sum(s > tol.eps * max(1.0, s[0])))

    def distance(self, other: "LinMap") -> float:
        return float(np.linalg.norm(self.matrix - other.matrix, 2))

    def __repr__(self):
        return f"LinMap({self.domain!r} -> {self.codomain!r})"


# -- shared numerical helpers ------------------------------------------------

def orthonormal_rows(vectors, tol=None):
    """Orthonormal basis (rows) of the span of the given row vectors."""
    tol = as_tolerance(tol)
    m = np.asarray(vectors, dtype=complex)
    if m.ndim == 1:
        m = m[None, :]
    u, s, vh = np.linalg.svd(m, full_matrices=False)
    if s.size == 0:
        return np.zeros((0, m.shape[1]), dtype=complex)
    keep = s > tol.eps * max(1.0, s[0])
    return vh[keep]


def nullspace(matrix, tol=None):
    """Orthonormal basis (rows) of the kernel of a matrix."""
    tol = as_tolerance(tol)
    m = np.asarray(matrix, dtype=complex)
    u, s, vh = np.linalg.svd(m, full_matrices=True)
    cut = tol.eps * max(1.0, s[0] if s.size else 1.0)
    rank = int(np.sum(s > cut))
    # rows of vh are bra-vectors; the kernel is spanned by their conjugates
    return vh[rank:].conj()


def project_onto_rows(basis, v):
    """Orthogonal projection of v onto the row span of an orthonormal basis."""
    if basis.shape[0] == 0:
        return np.zeros_like(v)
    return basis.T @ (basis.conj() @ v)


def distance_to_span(basis, v) -> float:
    return float(np.linalg.norm(v - project_onto_rows(basis, v)))
