"""Coefficient rings, the reduction map between them, and ideal chains ``J_t = d^t R``.

Ring elements are plain Python ints in canonical form: arbitrary-precision
integers for ``Z`` and residues in ``[0, m)`` for the modular rings.  The
:class:`RingElement` wrapper exists for callers that want ring checking on
arithmetic; the series and matrix code works on bare ints for speed.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterator

from sympy import isprime


class RingError(ValueError):
    pass


@dataclass(frozen=True)
class Ring:
    """One of ``Z``, ``Z/m``, ``F_p`` or a finite-precision p-adic ring ``Z_p mod p^k``.

    Use the constructors :func:`integers`, :func:`integers_mod`,
    :func:`prime_field` and :func:`padic` rather than building this directly.
    """

    variant: str
    modulus: int = 0  # 0 for Z
    p: int = 0
    precision: int = 0

    @property
    def is_finite(self) -> bool:
        return self.modulus != 0

    @property
    def size(self) -> int:
        if not self.is_finite:
            raise RingError(f"{self} is infinite")
        return self.modulus

    def canon(self, x: int) -> int:
        return x % self.modulus if self.modulus else int(x)

    def add(self, x: int, y: int) -> int:
        return self.canon(x + y)

    def mul(self, x: int, y: int) -> int:
        return self.canon(x * y)

    def neg(self, x: int) -> int:
        return self.canon(-x)

    def elements(self) -> Iterator[int]:
        return iter(range(self.size))

    def lift(self, x: int) -> int:
        """Symmetric lift to Z, used for readable printing."""
        if not self.modulus:
            return x
        x = self.canon(x)
        return x - self.modulus if x > self.modulus // 2 else x

    def __call__(self, x: int) -> "RingElement":
        return RingElement(self, self.canon(x))

    def __str__(self) -> str:
        if self.variant == "Z":
            return "Z"
        if self.variant == "Zmod":
            return f"Z/{self.modulus}"
        if self.variant == "F":
            return f"F{self.p}"
        return f"Zp:{self.p},prec={self.precision}"


def integers() -> Ring:
    return Ring("Z")


def integers_mod(m: int) -> Ring:
    if m < 2:
        raise RingError(f"modulus must be >= 2, got {m}")
    return Ring("Zmod", modulus=m)


def prime_field(p: int) -> Ring:
    if not isprime(p):
        raise RingError(f"{p} is not prime")
    return Ring("F", modulus=p, p=p)


def padic(p: int, precision: int) -> Ring:
    if not isprime(p):
        raise RingError(f"{p} is not prime")
    if precision < 1:
        raise RingError("precision must be >= 1")
    return Ring("Zp", modulus=p**precision, p=p, precision=precision)


ZZ = integers()

_RING_RE = [
    (re.compile(r"Z\Z"), lambda m: integers()),
    (re.compile(r"Z/(\d+)\Z"), lambda m: integers_mod(int(m.group(1)))),
    (re.compile(r"F_?(\d+)\Z"), lambda m: prime_field(int(m.group(1)))),
    (re.compile(r"Zp:(\d+),prec=(\d+)\Z"), lambda m: padic(int(m.group(1)), int(m.group(2)))),
]


def parse_ring(text: str) -> Ring:
    """``"Z"``, ``"Z/8"``, ``"F5"``, ``"Zp:3,prec=4"``."""
    t = text.replace(" ", "")
    for rx, build in _RING_RE:
        m = rx.match(t)
        if m:
            return build(m)
    raise RingError(f"cannot parse ring spec {text!r}")


@dataclass(frozen=True)
class RingElement:
    ring: Ring
    value: int

    def _other(self, other: "RingElement | int") -> int:
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")
            return other.value
        return self.ring.canon(other)

    def __add__(self, other):
        return RingElement(self.ring, self.ring.add(self.value, self._other(other)))

    def __mul__(self, other):
        return RingElement(self.ring, self.ring.mul(self.value, self._other(other)))

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __sub__(self, other):
        return self + (-RingElement(self.ring, self._other(other)))

    __radd__ = __add__
    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.value == 0

    def __str__(self) -> str:
        return str(self.value)


def ring_arith(op: str, x: RingElement, y: RingElement | None = None) -> RingElement:
    if op == "neg":
        return -x
    if y is None:
        raise RingError(f"{op} needs two operands")
    if x.ring != y.ring:
        raise RingError(f"ring mismatch: {x.ring} vs {y.ring}")
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    raise RingError(f"unknown operation {op!r}")


def theta_supported(source: Ring, target: Ring) -> bool:
    return source == target or (source.variant == "Z" and target.is_finite)


def theta_map(source: Ring, target: Ring, c: int) -> int:
    """The canonical map ``source -> target``: identity, or reduction from Z."""
    if source == target:
        return target.canon(c)
    if source.variant == "Z" and target.is_finite:
        return target.canon(c)
    raise RingError(f"no supported homomorphism {source} -> {target}")


def _ideal_generator(ring: Ring, x: int) -> int:
    # principal ideal xR equals gR with g = gcd(x, m) in Z/m, and |x|Z in Z
    if ring.is_finite:
        return math.gcd(ring.canon(x), ring.modulus)
    return abs(x)


def ideal_contains(ring: Ring, generator: int, x: int) -> bool:
    """Whether ``x`` lies in the principal ideal ``generator * R``."""
    g = _ideal_generator(ring, generator)
    x = ring.canon(x)
    return x == 0 if g == 0 else x % g == 0


@dataclass(frozen=True)
class IdealChain:
    """``theta: source -> target`` plus the chain ``J_t = d^t target`` for ``0 <= t < n``."""

    source: Ring
    target: Ring
    d: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise RingError("chain length n must be >= 1")
        if not theta_supported(self.source, self.target):
            raise RingError(f"unsupported homomorphism {self.source} -> {self.target}")
        object.__setattr__(self, "d", self.target.canon(self.d))

    @classmethod
    def lower_central(cls, n: int) -> "IdealChain":
        return cls(ZZ, ZZ, 1, n)

    @classmethod
    def zassenhaus(cls, p: int, n: int) -> "IdealChain":
        F = prime_field(p)
        return cls(F, F, 1, n)

    @classmethod
    def lower_p_central(cls, p: int, n: int) -> "IdealChain":
        return cls(ZZ, integers_mod(p**n), p, n)

    def theta(self, c: int) -> int:
        return theta_map(self.source, self.target, c)

    def d_power(self, t: int) -> int:
        return self.target.canon(self.d**t)

    def _check_t(self, t: int) -> None:
        if not 0 <= t <= self.n - 1:
            raise RingError(f"degree {t} outside 0..{self.n - 1}")

    def annihilates(self, t: int, c: int) -> bool:
        """``c in Ann(J_t)``, i.e. ``d^t * c == 0`` in the target ring."""
        self._check_t(t)
        return self.target.mul(self.d_power(t), c) == 0

    def in_ideal(self, t: int, x: int) -> bool:
        """``x in J_t``; for ``t >= n`` the band is empty, so only 0 qualifies."""
        if t >= self.n:
            return self.target.canon(x) == 0
        return ideal_contains(self.target, self.d_power(t), x)

    def ideal_elements(self, t: int) -> list[int]:
        """All elements of ``J_t`` (finite target only), ascending."""
        R = self.target
        if not R.is_finite:
            raise RingError(f"{R} is infinite")
        if t >= self.n:
            return [0]
        g = _ideal_generator(R, self.d_power(t)) or R.modulus
        return list(range(0, R.modulus, g))

    def annihilator_modulus(self, t: int) -> int:
        """``q`` with ``Ann(J_t) = qR``; 0 means the annihilator is ``{0}`` over Z."""
        self._check_t(t)
        R = self.target
        dt = self.d_power(t)
        if R.is_finite:
            return R.modulus // math.gcd(dt, R.modulus)
        return 1 if dt == 0 else 0

    def __str__(self) -> str:
        return f"({self.source} -> {self.target}, d={self.d}, n={self.n})"


def annihilator_test(chain: IdealChain, t: int, c: int) -> bool:
    return chain.annihilates(t, c)


def theta_reduce(chain: IdealChain, c: int) -> int:
    return chain.theta(c)
