"""Filtration membership via Magnus coefficients, and sampling of filtration terms.

Three filtrations of a free group ``S`` are supported:

* lower central ``S^(n)``: all ``c_I = 0`` over Z for ``1 <= |I| < n``;
* p-Zassenhaus ``S_(n,p)``: the same test over ``F_p``;
* lower p-central ``S^(n,p)``: ``c_I`` divisible by ``p^(n-|I|)``.

Each is the preimage under the Magnus map of the set ``L_J`` attached to an
:class:`~freefilt.rings.IdealChain`; :func:`in_L` is that test.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable

from sympy import isprime

from .rings import IdealChain
from .series import Index, TruncatedSeries, magnus_expand
from .words import Alphabet, Word, commutator, enumerate_reduced, multiply, invert, power


class CriterionError(ValueError):
    pass


@dataclass(frozen=True)
class FiltrationKind:
    name: str  # "lcs", "zass" or "lpc"
    p: int | None = None

    def __post_init__(self):
        if self.name not in ("lcs", "zass", "lpc"):
            raise CriterionError(f"unknown filtration kind {self.name!r}")
        if self.name == "lcs":
            if self.p is not None:
                raise CriterionError("the lower central series takes no prime")
        elif self.p is None or not isprime(self.p):
            raise CriterionError(f"{self.name} needs a prime p, got {self.p}")

    def chain(self, n: int) -> IdealChain:
        """The ideal chain whose ``L_J`` cuts out the n-th term."""
        if self.name == "lcs":
            return IdealChain.lower_central(n)
        if self.name == "zass":
            return IdealChain.zassenhaus(self.p, n)
        return IdealChain.lower_p_central(self.p, n)

    def __str__(self) -> str:
        return self.name if self.p is None else f"{self.name}(p={self.p})"


LOWER_CENTRAL = FiltrationKind("lcs")


def Zassenhaus(p: int) -> FiltrationKind:
    return FiltrationKind("zass", p)


def LowerPCentral(p: int) -> FiltrationKind:
    return FiltrationKind("lpc", p)


@dataclass(frozen=True)
class Violation:
    index: Index
    value: int
    modulus: int  # the coefficient must lie in modulus*Z (0 means must vanish)


def first_violation(f: TruncatedSeries, chain: IdealChain) -> Violation | None:
    """First coefficient (in length-then-lex order) breaking the ``L_J`` condition."""
    if f.ring != chain.source:
        raise CriterionError(f"series ring {f.ring} is not the chain source {chain.source}")
    if f.bound < chain.n:
        raise CriterionError(f"series bound {f.bound} below chain length {chain.n}")
    if f.constant_term() != f.ring.canon(1):
        raise CriterionError("series in L_J must have constant term 1")
    for I, c in f.coeffs.items():
        t = len(I)
        if 1 <= t < chain.n and not chain.annihilates(t, chain.theta(c)):
            return Violation(I, f.ring.lift(c), chain.annihilator_modulus(t))
    return None


def in_L(f: TruncatedSeries, chain: IdealChain) -> bool:
    return first_violation(f, chain) is None


def member_series(w: Word, kind: FiltrationKind, n: int) -> TruncatedSeries:
    return magnus_expand(w, kind.chain(n).source, n)


def filtration_member(w: Word, kind: FiltrationKind, n: int) -> bool:
    """Whether ``w`` lies in the n-th term of the filtration."""
    if n < 1:
        raise CriterionError("level n must be >= 1")
    if n == 1:
        return True
    chain = kind.chain(n)
    return in_L(magnus_expand(w, chain.source, n), chain)


def membership_violation(w: Word, kind: FiltrationKind, n: int) -> Violation | None:
    if n <= 1:
        return None
    chain = kind.chain(n)
    return first_violation(magnus_expand(w, chain.source, n), chain)


# -- generator-side sampling ----------------------------------------------


def _cap(words: Iterable[Word], length_budget: int, limit: int, rng: random.Random) -> list[Word]:
    pool = sorted({w for w in words if len(w) <= length_budget})
    if len(pool) > limit:
        pool = sorted(rng.sample(pool, limit))
    return pool


def _sample_ops(ops: list[tuple], length_budget: int, limit: int, rng: random.Random) -> list[Word]:
    """Evaluate randomly ordered (power|commutator) recipes until ``limit`` distinct words fit the budget."""
    rng.shuffle(ops)
    found: set[Word] = set()
    for op in ops[: 50 * limit]:
        w = power(op[1], op[2]) if op[0] == "pow" else commutator(op[1], op[2])
        if len(w) <= length_budget:
            found.add(w)
            if len(found) == limit:
                break
    return sorted(found)


def filtration_generators(
    kind: FiltrationKind,
    n: int,
    alphabet: Alphabet | int,
    length_budget: int,
    *,
    seed_len: int = 2,
    per_level: int = 400,
    products: bool = True,
    seed: int = 0,
) -> list[Word]:
    """Sample elements of the n-th filtration term from the defining recursion.

    Level 1 is every reduced word of length ``<= seed_len``.  Level ``i`` is
    built from p-th powers and commutators of earlier levels exactly as in
    the recursive definition of ``kind``, optionally closed once under
    products and inverses.  Words longer than ``length_budget`` are dropped
    and each level is subsampled to at most ``per_level`` words, so the
    result is a sample of the term, never a generating set.
    """
    if n < 1 or length_budget < 1:
        raise CriterionError("need n >= 1 and length_budget >= 1")
    if isinstance(alphabet, int):
        alphabet = Alphabet.standard(alphabet)
    rng = random.Random(seed)
    level1 = [w for w in enumerate_reduced(alphabet, seed_len) if len(w) <= length_budget]
    levels: dict[int, list[Word]] = {1: level1}
    p = kind.p

    for i in range(2, n + 1):
        ops: list[tuple] = []
        if kind.name == "lcs":
            ops += [("comm", g, h) for g in level1 for h in levels[i - 1]]
        elif kind.name == "lpc":
            ops += [("pow", h, p) for h in levels[i - 1]]
            ops += [("comm", g, h) for g in level1 for h in levels[i - 1]]
        else:
            ops += [("pow", h, p) for h in levels[math.ceil(i / p)]]
            for j in range(1, i):
                ops += [("comm", x, y) for x in levels[j] for y in levels[i - j]]
        base = _sample_ops(ops, length_budget, per_level, rng)
        room = per_level - len(base)
        if products and base and room > 0:
            extra = [invert(w) for w in base]
            extra += [multiply(rng.choice(base), rng.choice(base)) for _ in range(2 * room)]
            have = set(base)
            base = sorted(set(base) | set(_cap((w for w in extra if w not in have), length_budget, room, rng)))
        levels[i] = base
    return levels[n]
