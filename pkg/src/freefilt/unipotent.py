"""Upper-triangular matrices over the coefficient rings, unipotent groups, and
homomorphisms from a free group into them.

Matrices are dense tuples of canonical ints.  The groups of interest are
``U_n(R)`` (all unipotent upper-triangular matrices) and ``U_n(J)``, whose
``(i, j)`` entry must lie in ``J_{j-i} = d^{j-i} R``; with ``R = Z/p^n`` and
``d = p`` the latter is ``G(n, p)``.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass
from typing import Iterator, Sequence

from .rings import IdealChain, Ring, ZZ, integers_mod, theta_map, theta_supported
from .series import TruncatedSeries
from .words import Alphabet, Word

DEFAULT_GROUP_CAP = 1 << 20


class MatrixError(ValueError):
    pass


class BudgetError(RuntimeError):
    pass


def group_cap() -> int:
    """Largest enumeration allowed; override with ``FREEFILT_GROUP_CAP``."""
    return int(os.environ.get("FREEFILT_GROUP_CAP", DEFAULT_GROUP_CAP))


@dataclass(frozen=True)
class SquareMatrix:
    ring: Ring
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if any(len(r) != n for r in self.rows):
            raise MatrixError("matrix must be square")
        object.__setattr__(
            self, "rows", tuple(tuple(self.ring.canon(x) for x in r) for r in self.rows)
        )

    @property
    def n(self) -> int:
        return len(self.rows)

    @classmethod
    def identity(cls, ring: Ring, n: int) -> "SquareMatrix":
        return cls(ring, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, ring: Ring, n: int) -> "SquareMatrix":
        return cls(ring, tuple((0,) * n for _ in range(n)))

    @classmethod
    def elementary(cls, ring: Ring, n: int, i: int, j: int, c: int = 1) -> "SquareMatrix":
        """``c * E_ij`` with 1-based ``i, j``."""
        return cls(ring, tuple(tuple(c if (r, s) == (i - 1, j - 1) else 0 for s in range(n)) for r in range(n)))

    def __getitem__(self, ij: tuple[int, int]) -> int:
        return self.rows[ij[0]][ij[1]]

    def _check(self, other: "SquareMatrix") -> None:
        if self.ring != other.ring:
            raise MatrixError(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.n != other.n:
            raise MatrixError(f"size mismatch: {self.n} vs {other.n}")

    def __add__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._check(other)
        return SquareMatrix(self.ring, tuple(tuple(x + y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "SquareMatrix") -> "SquareMatrix":
        self._check(other)
        return SquareMatrix(self.ring, tuple(tuple(x - y for x, y in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "SquareMatrix":
        return SquareMatrix(self.ring, tuple(tuple(-x for x in r) for r in self.rows))

    def scale(self, c: int) -> "SquareMatrix":
        return SquareMatrix(self.ring, tuple(tuple(c * x for x in r) for r in self.rows))

    def __matmul__(self, other: "SquareMatrix") -> "SquareMatrix":
        return mat_mul(self, other)

    __mul__ = __matmul__

    def is_identity(self) -> bool:
        return all(x == (i == j) for i, r in enumerate(self.rows) for j, x in enumerate(r))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def is_unipotent(self) -> bool:
        return all(
            x == (1 if i == j else 0) for i, r in enumerate(self.rows) for j, x in enumerate(r) if j <= i
        )

    def to_json(self) -> list[list[str]]:
        return [[str(x) for x in r] for r in self.rows]

    def __str__(self) -> str:
        w = max(len(str(x)) for r in self.rows for x in r)
        return "\n".join("[" + " ".join(str(x).rjust(w) for x in r) + "]" for r in self.rows)


def mat_mul(A: SquareMatrix, B: SquareMatrix) -> SquareMatrix:
    A._check(B)
    cols = list(zip(*B.rows))
    return SquareMatrix(A.ring, tuple(tuple(sum(x * y for x, y in zip(r, c)) for c in cols) for r in A.rows))


def unipotent_inverse(U: SquareMatrix) -> SquareMatrix:
    """``(I + N)^-1 = sum_{k < n} (-N)^k`` for strictly upper-triangular ``N``."""
    if not U.is_unipotent():
        raise MatrixError("matrix is not upper unipotent")
    I = SquareMatrix.identity(U.ring, U.n)
    minus_N = I - U
    total, term = I, I
    for _ in range(1, U.n):
        term = term @ minus_N
        total = total + term
    return total


def from_json(ring: Ring, rows: Sequence[Sequence[str | int]]) -> SquareMatrix:
    return SquareMatrix(ring, tuple(tuple(int(x) for x in r) for r in rows))


def in_band(M: SquareMatrix, t: int, chain: IdealChain) -> bool:
    """Membership in ``T_{n,t}(J)``: zero below super-diagonal ``t``, entry ``(i,j)`` in ``J_{j-i}``."""
    if t < 0:
        raise MatrixError("band index must be >= 0")
    if M.n != chain.n:
        raise MatrixError(f"matrix size {M.n} does not match chain length {chain.n}")
    if M.ring != chain.target:
        raise MatrixError(f"matrix ring {M.ring} is not the chain target {chain.target}")
    for i, r in enumerate(M.rows):
        for j, x in enumerate(r):
            if j - i <= t - 1:
                if x:
                    return False
            elif not chain.in_ideal(j - i, x):
                return False
    return True


# -- group descriptors ----------------------------------------------------


@dataclass(frozen=True)
class FullUnipotent:
    """``U_n(R)``."""

    ring: Ring
    n: int

    @property
    def chain(self) -> IdealChain:
        return IdealChain(self.ring, self.ring, 1, self.n)

    def __str__(self) -> str:
        return f"U_{self.n}({self.ring})"


@dataclass(frozen=True)
class IdealUnipotent:
    """``U_n(J) = I + T_{n,1}(J)`` for an ideal chain of length ``n``."""

    chain: IdealChain

    @property
    def ring(self) -> Ring:
        return self.chain.target

    @property
    def n(self) -> int:
        return self.chain.n

    def __str__(self) -> str:
        c = self.chain
        if c.target.variant == "Zmod" and c.d > 1 and c.target.modulus == c.d**c.n:
            return f"G({c.n},{c.d})"
        if c.d == 1:
            return f"U_{c.n}({c.target})"
        return f"U_{c.n}(J{c})"


GroupDescriptor = FullUnipotent | IdealUnipotent


def unipotent_group(ring: Ring, n: int) -> FullUnipotent:
    return FullUnipotent(ring, n)


def gnp(n: int, p: int) -> IdealUnipotent:
    """``G(n, p)``: unipotent over ``Z/p^n`` with ``a_ij in p^(j-i) Z/p^n``."""
    return IdealUnipotent(IdealChain(ZZ, integers_mod(p**n), p, n))


def in_group(desc: GroupDescriptor, M: SquareMatrix) -> bool:
    if M.n != desc.n or M.ring != desc.ring or not M.is_unipotent():
        return False
    I = SquareMatrix.identity(M.ring, M.n)
    return in_band(M - I, 1, desc.chain)


def _entry_choices(desc: GroupDescriptor) -> list[tuple[tuple[int, int], list[int]]]:
    # diagonal-by-diagonal order: (1,2),(2,3),...,(1,3),...
    n = desc.n
    chain = desc.chain
    out = []
    for t in range(1, n):
        for i in range(n - t):
            out.append(((i, i + t), chain.ideal_elements(t)))
    return out


def group_order(desc: GroupDescriptor) -> int:
    if not desc.ring.is_finite:
        raise BudgetError(f"{desc} is infinite")
    return math.prod(len(vals) for _, vals in _entry_choices(desc))


def enumerate_group(desc: GroupDescriptor, cap: int | None = None) -> Iterator[SquareMatrix]:
    """Every element once, in a fixed order (last super-diagonal entry varies fastest)."""
    cap = group_cap() if cap is None else cap
    order = group_order(desc)
    if order > cap:
        raise BudgetError(f"|{desc}| = {order} exceeds cap {cap}")
    n = desc.n
    choices = _entry_choices(desc)
    positions = [pos for pos, _ in choices]
    for values in itertools.product(*(vals for _, vals in choices)):
        rows = [[int(i == j) for j in range(n)] for i in range(n)]
        for (i, j), v in zip(positions, values):
            rows[i][j] = v
        yield SquareMatrix(desc.ring, tuple(map(tuple, rows)))


# -- homomorphisms from the free group --------------------------------------


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism ``S -> U_n(J)``, given by the image of each generator."""

    descriptor: GroupDescriptor
    images: tuple[SquareMatrix, ...]

    def __post_init__(self):
        for M in self.images:
            if not in_group(self.descriptor, M):
                raise MatrixError(f"image\n{M}\nis not in {self.descriptor}")

    @property
    def n(self) -> int:
        return self.descriptor.n

    @property
    def ring(self) -> Ring:
        return self.descriptor.ring

    def __call__(self, w: Word) -> SquareMatrix:
        return hom_eval(self, w)


def hom_eval(phi: GroupHom, w: Word) -> SquareMatrix:
    if len(phi.images) != w.alphabet.size:
        raise MatrixError(f"hom has {len(phi.images)} images but word alphabet has {w.alphabet.size}")
    inverses: dict[int, SquareMatrix] = {}
    out = SquareMatrix.identity(phi.ring, phi.n)
    for a, s in w.letters:
        if s > 0:
            M = phi.images[a]
        else:
            if a not in inverses:
                inverses[a] = unipotent_inverse(phi.images[a])
            M = inverses[a]
        out = out @ M
    return out


def phi_hat(f: TruncatedSeries, phi: GroupHom) -> SquareMatrix:
    """``sum_{|I| < n} theta(c_I) M_I`` with ``M_I = prod_k (phi(a_k) - I)``."""
    n, R = phi.n, phi.ring
    if f.bound < n:
        raise MatrixError(f"series bound {f.bound} below matrix size {n}")
    if len(phi.images) != f.alphabet.size:
        raise MatrixError("alphabet mismatch between series and hom")
    if not theta_supported(f.ring, R):
        raise MatrixError(f"no supported homomorphism {f.ring} -> {R}")
    I = SquareMatrix.identity(R, n)
    N = [M - I for M in phi.images]
    cache: dict[tuple[int, ...], SquareMatrix] = {(): I}

    def M_of(seq: tuple[int, ...]) -> SquareMatrix:
        if seq not in cache:
            cache[seq] = M_of(seq[:-1]) @ N[seq[-1]]
        return cache[seq]

    total = SquareMatrix.zero(R, n)
    for seq, c in f.coeffs.items():
        if len(seq) >= n:
            continue
        total = total + M_of(seq).scale(theta_map(f.ring, R, c))
    return total


def random_unipotent(desc: GroupDescriptor, rng, bound: int = 9) -> SquareMatrix:
    """Random element; over Z the free entries are drawn from ``[-bound, bound]``."""
    n, R, chain = desc.n, desc.ring, desc.chain
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if R.is_finite:
                rows[i][j] = rng.choice(chain.ideal_elements(j - i))
            else:
                rows[i][j] = chain.d_power(j - i) * rng.randint(-bound, bound)
    return SquareMatrix(R, tuple(map(tuple, rows)))


def random_hom(desc: GroupDescriptor, k: int, rng, bound: int = 9) -> GroupHom:
    return GroupHom(desc, tuple(random_unipotent(desc, rng, bound) for _ in range(k)))
