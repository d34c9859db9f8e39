"""Small finite groups given by Cayley tables.

Only what the shipped examples need: cyclic groups, symmetric groups via
permutation tuples, the quaternion group, and direct products.  Tables are
validated (associativity, identity, inverses) on construction.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product

import numpy as np


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    name: str
    elements: tuple
    table: np.ndarray  # table[i, j] = index of elements[i] * elements[j]

    def __post_init__(self):
        check_group_table(self.table)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> int:
        n = self.order
        for e in range(n):
            if all(self.table[e, g] == g and self.table[g, e] == g
                   for g in range(n)):
                return e
        raise ValueError("no identity")  # unreachable after validation

    def inverse(self, g: int) -> int:
        e = self.identity
        for h in range(self.order):
            if self.table[g, h] == e:
                return h
        raise ValueError("no inverse")

    def index_of(self, element) -> int:
        return self.elements.index(element)

    def __repr__(self):
        return f"FiniteGroup({self.name}, order={self.order})"


def check_group_table(table) -> None:
    """Raise ValueError unless the table is a group multiplication table."""
    t = np.asarray(table)
    n = t.shape[0]
    if t.shape != (n, n) or n == 0:
        raise ValueError("Cayley table must be square and non-empty")
    if t.min() < 0 or t.max() >= n:
        raise ValueError("Cayley table entries out of range")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if t[t[i, j], k] != t[i, t[j, k]]:
                    raise ValueError("Cayley table is not associative")
    idents = [e for e in range(n)
              if all(t[e, g] == g and t[g, e] == g for g in range(n))]
    if len(idents) != 1:
        raise ValueError("Cayley table has no (unique) identity")
    e = idents[0]
    for g in range(n):
        if not any(t[g, h] == e and t[h, g] == e for h in range(n)):
            raise ValueError(f"element {g} has no inverse")


def cyclic(n: int) -> FiniteGroup:
    table = np.fromfunction(lambda i, j: (i + j) % n, (n, n), dtype=int)
    return FiniteGroup(f"Z{n}", tuple(range(n)), table)


def trivial() -> FiniteGroup:
    return cyclic(1)


def symmetric(n: int) -> FiniteGroup:
    """S_n on permutation tuples (p acts on points: i -> p[i])."""
    elems = tuple(sorted(permutations(range(n))))
    index = {p: i for i, p in enumerate(elems)}
    m = len(elems)
    table = np.zeros((m, m), dtype=int)
    for i, p in enumerate(elems):
        for j, q in enumerate(elems):
            # (p*q)(x) = p(q(x))
            table[i, j] = index[tuple(p[q[x]] for x in range(n))]
    return FiniteGroup(f"S{n}", elems, table)


def alternating_indices(group: FiniteGroup) -> list:
    """Indices of even permutations in a symmetric group built above."""
    out = []
    for i, p in enumerate(group.elements):
        inversions = sum(1 for a in range(len(p)) for b in range(a + 1, len(p))
                         if p[a] > p[b])
        if inversions % 2 == 0:
            out.append(i)
    return out


def quaternion() -> FiniteGroup:
    """Q8 = {1, -1, i, -i, j, -j, k, -k}."""
    names = ("1", "-1", "i", "-i", "j", "-j", "k", "-k")

    def split(s):
        sign = -1 if s.startswith("-") else 1
        return sign, s.lstrip("-")

    def join(sign, u):
        return ("-" if sign < 0 else "") + u

    basic = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"),
        ("1", "k"): (1, "k"), ("i", "1"): (1, "i"), ("j", "1"): (1, "j"),
        ("k", "1"): (1, "k"),
        ("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
        ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
        ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j"),
    }
    table = np.zeros((8, 8), dtype=int)
    for a, x in enumerate(names):
        for b, y in enumerate(names):
            sx, ux = split(x)
            sy, uy = split(y)
            s, u = basic[(ux, uy)]
            table[a, b] = names.index(join(sx * sy * s, u))
    return FiniteGroup("Q8", names, table)


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    elems = tuple(product(range(g.order), range(h.order)))
    index = {p: i for i, p in enumerate(elems)}
    m = len(elems)
    table = np.zeros((m, m), dtype=int)
    for i, (a, b) in enumerate(elems):
        for j, (c, d) in enumerate(elems):
            table[i, j] = index[(g.table[a, c], h.table[b, d])]
    return FiniteGroup(f"{g.name}x{h.name}", elems, table)


def permutation_action(group: FiniteGroup, images) -> np.ndarray:
    """Left action table act[g, x] from images of each group element.

    ``images[g]`` is the permutation tuple by which element g moves the
    points; validated to be a homomorphism: act[gh, x] = act[g, act[h, x]].
    """
    act = np.asarray(images, dtype=int)
    n_points = act.shape[1]
    for g in range(group.order):
        for h in range(group.order):
            gh = group.table[g, h]
            for x in range(n_points):
                if act[gh, x] != act[g, act[h, x]]:
                    raise ValueError("images do not define a left action")
    return act
