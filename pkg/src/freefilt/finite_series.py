"""Filtration series of small explicit matrix groups.

A :class:`FiniteGroupTable` turns an enumerated matrix group into a Cayley
table over element indices; subgroups are sorted index arrays.  Series are
computed straight from the recursive definitions, with each term the
subgroup generated by the required p-th powers and commutators.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from sympy import factorint

from .criteria import FiltrationKind
from .unipotent import (
    BudgetError,
    GroupDescriptor,
    SquareMatrix,
    enumerate_group,
    group_cap,
    group_order,
    random_unipotent,
    unipotent_inverse,
)


class FiniteGroupTable:
    def __init__(self, elements: Sequence[SquareMatrix]):
        if not elements:
            raise ValueError("empty group")
        ring = elements[0].ring
        n = elements[0].n
        self.elements = list(elements)
        self.ring = ring
        self.index = {M: i for i, M in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate elements")
        N = len(self.elements)
        m = ring.modulus
        E = np.array([M.rows for M in self.elements], dtype=np.int64)
        unipotent = all(M.is_unipotent() for M in self.elements)
        pos = [(i, j) for i in range(n) for j in range(n) if (j > i or not unipotent)]
        if m ** len(pos) >= 2**62:
            raise BudgetError("matrix encoding would overflow")
        weights = np.array([m**e for e in range(len(pos))], dtype=np.int64)
        rows = np.array([p[0] for p in pos], dtype=np.intp)
        cols = np.array([p[1] for p in pos], dtype=np.intp)
        keys = (E[:, rows, cols] * weights).sum(axis=1)
        order = np.argsort(keys)
        sorted_keys = keys[order]
        table = np.empty((N, N), dtype=np.intp)
        for a in range(N):
            prod = np.matmul(E[a], E) % m
            k = (prod[:, rows, cols] * weights).sum(axis=1)
            loc = np.searchsorted(sorted_keys, k)
            loc = np.minimum(loc, N - 1)
            if not np.array_equal(sorted_keys[loc], k):
                raise ValueError("element set is not closed under multiplication")
            table[a] = order[loc]
        self.table = table
        ident = SquareMatrix.identity(ring, n)
        if ident not in self.index:
            raise ValueError("identity missing")
        self.identity = self.index[ident]
        inv = np.argmax(table == self.identity, axis=1)
        if not np.all(table[np.arange(N), inv] == self.identity):
            raise ValueError("element set is not closed under inverses")
        self.inverse = inv

    @classmethod
    def from_descriptor(cls, desc: GroupDescriptor, cap: int | None = None) -> "FiniteGroupTable":
        cap = group_cap() if cap is None else cap
        order = group_order(desc)
        if order > cap:
            raise BudgetError(f"|{desc}| = {order} exceeds cap {cap}")
        return cls(list(enumerate_group(desc, cap)))

    @property
    def order(self) -> int:
        return len(self.elements)

    def all(self) -> np.ndarray:
        return np.arange(self.order)

    def mul(self, x, y):
        return self.table[x, y]

    def commutators(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """All ``[x, y] = x^-1 y^-1 x y`` for ``x in xs``, ``y in ys``."""
        X, Y = np.meshgrid(xs, ys, indexing="ij")
        left = self.table[self.inverse[X], self.inverse[Y]]
        right = self.table[X, Y]
        return np.unique(self.table[left, right])

    def powers(self, xs: np.ndarray, e: int) -> np.ndarray:
        out = np.full(len(xs), self.identity, dtype=np.intp)
        for _ in range(e):
            out = self.table[out, xs]
        return np.unique(out)

    def is_subgroup(self, H: np.ndarray) -> bool:
        mask = self.mask(H)
        return bool(mask[self.identity] and mask[self.table[np.ix_(H, H)]].all() and mask[self.inverse[H]].all())

    def is_normal(self, H: np.ndarray) -> bool:
        mask = self.mask(H)
        G = self.all()
        conj = self.table[self.table[np.ix_(self.inverse[G], H)], G[:, None]]
        return bool(mask[conj].all())

    def mask(self, H: np.ndarray) -> np.ndarray:
        m = np.zeros(self.order, dtype=bool)
        m[H] = True
        return m


def generated_subgroup(G: FiniteGroupTable, seeds: Iterable[int] | np.ndarray) -> np.ndarray:
    """Closure of ``seeds`` under products (inverses come free in a finite group)."""
    gens = np.unique(np.asarray(list(seeds) if not isinstance(seeds, np.ndarray) else seeds, dtype=np.intp))
    gens = gens[gens != G.identity]
    mask = np.zeros(G.order, dtype=bool)
    mask[G.identity] = True
    frontier = np.array([G.identity], dtype=np.intp)
    while len(frontier) and len(gens):
        nxt = np.unique(G.table[np.ix_(frontier, gens)])
        nxt = nxt[~mask[nxt]]
        mask[nxt] = True
        frontier = nxt
    return np.flatnonzero(mask)


@dataclass
class SeriesResult:
    group: str
    kind: str
    terms: list[np.ndarray]
    complete: bool  # False when the iteration cap stopped the computation

    @property
    def sizes(self) -> list[int]:
        return [len(t) for t in self.terms]

    def trivial_by(self, n: int) -> bool:
        """Whether the n-th term (1-based) exists and is trivial."""
        if len(self.terms) >= n:
            return len(self.terms[n - 1]) == 1
        return len(self.terms[-1]) == 1

    def to_json(self) -> dict:
        return {"group": self.group, "kind": self.kind, "sizes": self.sizes, "complete": self.complete}


def filtration_series_finite(
    G: FiniteGroupTable,
    kind: FiltrationKind,
    max_terms: int | None = None,
    name: str = "",
) -> SeriesResult:
    """Terms ``G_1 = G, G_2, ...`` until the trivial group (or a fixed point for lcs/lpc)."""
    if max_terms is None:
        max_terms = 2 * sum(factorint(G.order).values()) + 2
    every = G.all()
    terms = [every]
    p = kind.p
    complete = False
    while len(terms) < max_terms:
        i = len(terms) + 1
        prev = terms[-1]
        if kind.name == "lcs":
            seeds = G.commutators(every, prev)
        elif kind.name == "lpc":
            seeds = np.union1d(G.powers(prev, p), G.commutators(every, prev))
        else:
            parts = [G.powers(terms[math.ceil(i / p) - 1], p)]
            for j in range(1, i // 2 + 1):
                parts.append(G.commutators(terms[j - 1], terms[i - j - 1]))
            seeds = np.unique(np.concatenate(parts))
        term = generated_subgroup(G, seeds)
        terms.append(term)
        if len(term) == 1:
            complete = True
            break
        if kind.name != "zass" and np.array_equal(term, prev):
            complete = True
            break
    return SeriesResult(name, str(kind), terms, complete)


def nilpotency_probe(
    desc: GroupDescriptor,
    n: int,
    trials: int,
    seed: int = 0,
    bound: int = 9,
) -> bool:
    """Whether ``trials`` random left-normed n-fold commutators are all the identity."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = random.Random(seed)

    def comm(x: SquareMatrix, y: SquareMatrix) -> SquareMatrix:
        return unipotent_inverse(x) @ unipotent_inverse(y) @ x @ y

    for _ in range(trials):
        g = random_unipotent(desc, rng, bound)
        for _ in range(n - 1):
            g = comm(g, random_unipotent(desc, rng, bound))
        if not g.is_identity():
            return False
    return True
