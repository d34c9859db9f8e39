"""JSON formats for quantum groups, subgroup morphisms and magic actions.

All complex numbers are stored as [re, im] pairs; all coefficients refer
to the canonical matrix-unit basis fixed in :mod:`finiteqg.core` (block
by block, row-major).  Sparse triplets keep the files auditable.

hopf.json::

    {"name": ..., "blocks": [n_1, ...],
     "delta":    [[k, i, j, re, im], ...],   # delta(e_k) += c e_i x e_j
     "counit":   [[k, re, im], ...],
     "antipode": [[i, k, re, im], ...]}      # S(e_k) += c e_i

subgroup.json: ``{"pi": [[b, k, re, im], ...]}`` for a surjection from
l^inf of the dual (raw dual-basis coordinates) onto the subgroup, or
``{"hopf_surjection": [[b, k, re, im], ...]}`` for a surjection
Pol(G) -> Pol(H) feeding the normal-subgroup path.

magic.json: ``{"n": n, "u": [[i, j, [[k, re, im], ...]], ...]}``.
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .core import AlgElement, BlockAlgebra, LinMap, as_tolerance, tensor
from .classical import MagicAction
from .hopf import HopfData, verify_hopf

WRITE_CUTOFF = 1e-14


class SchemaError(ValueError):
    pass


def _entries(matrix, row_major_pairs=False):
    out = []
    m = np.asarray(matrix)
    for idx in np.ndindex(*m.shape):
        c = complex(m[idx])
        if abs(c) > WRITE_CUTOFF:
            out.append([int(v) for v in idx] + [c.real, c.imag])
    return out


def hopf_to_dict(H: HopfData) -> dict:
    """Serialize block-presented Hopf data (see module docstring)."""
    A = H.algebra
    if not isinstance(A, BlockAlgebra):
        raise SchemaError("only block-presented Hopf data can be saved; "
                          "use duality.block_presentation first")
    d = A.dim
    delta = []
    for k in range(d):
        col = H.delta.matrix[:, k].reshape(d, d)
        for i in range(d):
            for j in range(d):
                c = complex(col[i, j])
                if abs(c) > WRITE_CUTOFF:
                    delta.append([k, i, j, c.real, c.imag])
    return {
        "name": H.name,
        "blocks": [int(n) for n in A.block_dims],
        "delta": delta,
        "counit": _entries(H.counit),
        "antipode": _entries(H.antipode.matrix),
    }


def hopf_from_dict(data: dict, tol=None, verify: bool = True) -> HopfData:
    tol = as_tolerance(tol)
    try:
        blocks = [int(n) for n in data["blocks"]]
        A = BlockAlgebra(blocks, name=str(data.get("name", "")))
        d = A.dim
        delta = np.zeros((d * d, d), dtype=complex)
        for k, i, j, re, im in data["delta"]:
            delta[int(i) * d + int(j), int(k)] += complex(re, im)
        counit = np.zeros(d, dtype=complex)
        for k, re, im in data["counit"]:
            counit[int(k)] += complex(re, im)
        antipode = np.zeros((d, d), dtype=complex)
        for i, k, re, im in data["antipode"]:
            antipode[int(i), int(k)] += complex(re, im)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise SchemaError(f"malformed hopf data: {exc}") from exc
    H = HopfData(A, LinMap(A, tensor(A, A), delta), counit,
                 LinMap(A, A, antipode), name=str(data.get("name", "")))
    if verify:
        verify_hopf(H, tol).raise_for_failure(H.name or "hopf file")
    return H


def save_hopf(H: HopfData, path) -> None:
    Path(path).write_text(json.dumps(hopf_to_dict(H), indent=1,
                                     sort_keys=True))


def load_hopf(path, tol=None, verify: bool = True) -> HopfData:
    data = _read_json(path)
    return hopf_from_dict(data, tol, verify)


def subgroup_to_dict(matrix, kind: str = "pi") -> dict:
    if kind not in ("pi", "hopf_surjection"):
        raise SchemaError(f"unknown subgroup matrix kind {kind!r}")
    return {kind: _entries(matrix)}


def save_subgroup(matrix, path, kind: str = "pi") -> None:
    Path(path).write_text(json.dumps(subgroup_to_dict(matrix, kind),
                                     indent=1, sort_keys=True))


def subgroup_from_dict(data: dict, dim: int):
    """Returns (kind, matrix); the column count is the referenced
    quantum group's dimension, rows are inferred."""
    kind = "pi" if "pi" in data else (
        "hopf_surjection" if "hopf_surjection" in data else None)
    if kind is None:
        raise SchemaError("subgroup file needs a 'pi' or 'hopf_surjection' key")
    try:
        rows = max(int(b) for b, *_ in data[kind]) + 1
        m = np.zeros((rows, dim), dtype=complex)
        for b, k, re, im in data[kind]:
            m[int(b), int(k)] += complex(re, im)
    except (TypeError, ValueError, IndexError) as exc:
        raise SchemaError(f"malformed subgroup data: {exc}") from exc
    return kind, m


def load_subgroup(path, dim: int):
    return subgroup_from_dict(_read_json(path), dim)


def magic_to_dict(M: MagicAction) -> dict:
    u = []
    for i in range(M.n):
        for j in range(M.n):
            coeffs = _entries(M.u[i][j].coeffs)
            if coeffs:
                u.append([i, j, coeffs])
    return {"n": M.n, "u": u}


def save_magic(M: MagicAction, path) -> None:
    Path(path).write_text(json.dumps(magic_to_dict(M), indent=1,
                                     sort_keys=True))


def magic_from_dict(data: dict, H: HopfData) -> MagicAction:
    try:
        n = int(data["n"])
        mats = [[np.zeros(H.dim, dtype=complex) for _ in range(n)]
                for _ in range(n)]
        for i, j, coeffs in data["u"]:
            for k, re, im in coeffs:
                mats[int(i)][int(j)][int(k)] += complex(re, im)
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise SchemaError(f"malformed magic data: {exc}") from exc
    u = [[AlgElement(H.algebra, mats[i][j]) for j in range(n)]
         for i in range(n)]
    return MagicAction(H, n, u)


def load_magic(path, H: HopfData) -> MagicAction:
    return magic_from_dict(_read_json(path), H)


def _read_json(path) -> dict:
    p = Path(path)
    if not p.exists():
        raise SchemaError(f"no such file: {p}")
    try:
        return json.loads(p.read_text())
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{p} is not valid JSON: {exc}") from exc


def hopf_equal(H1: HopfData, H2: HopfData, tol=None) -> bool:
    """Semantic equality of two block-presented Hopf data."""
    tol = as_tolerance(tol)
    if getattr(H1.algebra, "block_dims", None) != getattr(
            H2.algebra, "block_dims", None):
        return False
    return (tol.is_zero(float(np.linalg.norm(
                H1.delta.matrix - H2.delta.matrix, 2)))
            and tol.is_zero(float(np.linalg.norm(H1.counit - H2.counit)))
            and tol.is_zero(float(np.linalg.norm(
                H1.antipode.matrix - H2.antipode.matrix, 2))))
