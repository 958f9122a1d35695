"""Truncated non-commutative power series and the Magnus expansion of words.

A :class:`TruncatedSeries` is a sparse map from index sequences (tuples of
generator indices) to nonzero coefficients, with every monomial of degree
``>= bound`` discarded.  ``Lambda(a) = 1 + X_a`` extends to a homomorphism
from the free group into the units of this ring.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Mapping

from .rings import Ring, parse_ring
from .words import Alphabet, Word

Index = tuple[int, ...]


class SeriesError(ValueError):
    pass


def _key(I: Index) -> tuple:
    return (len(I), I)


@dataclass(frozen=True, eq=False)
class TruncatedSeries:
    alphabet: Alphabet
    ring: Ring
    bound: int
    coeffs: Mapping[Index, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.bound < 1:
            raise SeriesError("truncation bound must be >= 1")
        k = self.alphabet.size
        clean = {}
        for I, c in self.coeffs.items():
            I = tuple(I)
            if any(not 0 <= a < k for a in I):
                raise SeriesError(f"index sequence {I} outside alphabet")
            c = self.ring.canon(c)
            if c and len(I) < self.bound:
                clean[I] = c
        object.__setattr__(self, "coeffs", dict(sorted(clean.items(), key=lambda kv: _key(kv[0]))))

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, alphabet: Alphabet, ring: Ring, bound: int, c: int = 1) -> "TruncatedSeries":
        return cls(alphabet, ring, bound, {(): c})

    @classmethod
    def one(cls, alphabet: Alphabet, ring: Ring, bound: int) -> "TruncatedSeries":
        return cls.constant(alphabet, ring, bound, 1)

    @classmethod
    def monomial(cls, alphabet: Alphabet, ring: Ring, bound: int, I: Index, c: int = 1) -> "TruncatedSeries":
        return cls(alphabet, ring, bound, {tuple(I): c})

    # -- basic accessors ------------------------------------------------

    def __getitem__(self, I: Index) -> int:
        return self.coeffs.get(tuple(I), 0)

    def constant_term(self) -> int:
        return self.coeffs.get((), 0)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.alphabet == other.alphabet
            and self.ring == other.ring
            and self.bound == other.bound
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.ring, self.bound, tuple(self.coeffs.items())))

    def _compat(self, other: "TruncatedSeries") -> None:
        if self.alphabet != other.alphabet:
            raise SeriesError("alphabet mismatch")
        if self.ring != other.ring:
            raise SeriesError(f"ring mismatch: {self.ring} vs {other.ring}")
        if self.bound != other.bound:
            raise SeriesError(f"bound mismatch: {self.bound} vs {other.bound}")

    def _new(self, coeffs: Mapping[Index, int]) -> "TruncatedSeries":
        return TruncatedSeries(self.alphabet, self.ring, self.bound, coeffs)

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_add(self, -other)

    def __neg__(self) -> "TruncatedSeries":
        return self._new({I: -c for I, c in self.coeffs.items()})

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return series_mul(self, other)

    def scale(self, c: int) -> "TruncatedSeries":
        return self._new({I: c * v for I, v in self.coeffs.items()})

    def truncate(self, bound: int) -> "TruncatedSeries":
        """Drop all degrees ``>= bound`` (only lowering is allowed)."""
        if bound > self.bound:
            raise SeriesError(f"cannot raise bound {self.bound} to {bound}")
        return TruncatedSeries(self.alphabet, self.ring, bound, self.coeffs)

    def degree_part(self, t: int) -> dict[Index, int]:
        return {I: c for I, c in self.coeffs.items() if len(I) == t}

    def __str__(self) -> str:
        return format_series(self)

    def __repr__(self) -> str:
        return f"TruncatedSeries({format_series(self)!r}, ring={self.ring}, bound={self.bound})"

    def to_json(self) -> dict:
        names = self.alphabet.names
        return {
            "ring": str(self.ring),
            "bound": self.bound,
            "coeffs": {".".join(names[a] for a in I): str(c) for I, c in self.coeffs.items()},
        }

    @classmethod
    def from_json(cls, data: dict | str, alphabet: Alphabet) -> "TruncatedSeries":
        if isinstance(data, str):
            data = json.loads(data)
        coeffs = {}
        for key, val in data["coeffs"].items():
            I = tuple(alphabet.index(nm) for nm in key.split(".")) if key else ()
            coeffs[I] = int(val)
        return cls(alphabet, parse_ring(data["ring"]), int(data["bound"]), coeffs)


def series_add(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    f._compat(g)
    out = dict(f.coeffs)
    for I, c in g.coeffs.items():
        out[I] = out.get(I, 0) + c
    return f._new(out)


def series_mul(f: TruncatedSeries, g: TruncatedSeries) -> TruncatedSeries:
    """Truncated Cauchy product: ``(fg)_I = sum_{I = J K} f_J g_K``."""
    f._compat(g)
    N = f.bound
    by_deg: dict[int, list[tuple[Index, int]]] = defaultdict(list)
    for K, c in g.coeffs.items():
        by_deg[len(K)].append((K, c))
    out: dict[Index, int] = defaultdict(int)
    for J, a in f.coeffs.items():
        room = N - len(J)
        for d in range(room):
            for K, b in by_deg.get(d, ()):
                out[J + K] += a * b
    return f._new(out)


def series_invert_unit(f: TruncatedSeries) -> TruncatedSeries:
    """Inverse of ``1 + alpha`` as ``sum_{k < N} (-alpha)^k``."""
    if f.constant_term() != f.ring.canon(1):
        raise SeriesError("series_invert_unit needs constant term 1")
    alpha = f - TruncatedSeries.one(f.alphabet, f.ring, f.bound)
    minus_alpha = -alpha
    total = TruncatedSeries.one(f.alphabet, f.ring, f.bound)
    term = total
    for _ in range(1, f.bound):
        term = term * minus_alpha
        if not term.coeffs:
            break
        total = total + term
    return total


def _mul_letter(coeffs: dict[Index, int], a: int, sign: int, bound: int, ring: Ring) -> dict[Index, int]:
    # right-multiply by 1 + X_a, or by its inverse sum_k (-1)^k X_a^k
    out: dict[Index, int] = defaultdict(int)
    for I, c in coeffs.items():
        out[I] += c
        room = bound - len(I)
        if sign > 0:
            if room > 1:
                out[I + (a,)] += c
        else:
            suffix: Index = ()
            for k in range(1, room):
                suffix = suffix + (a,)
                out[I + suffix] += -c if k % 2 else c
    return {I: v for I, v in ((I, ring.canon(v)) for I, v in out.items()) if v}


def magnus_expand(w: Word, ring: Ring, bound: int) -> TruncatedSeries:
    """Magnus expansion of ``w`` truncated below degree ``bound``."""
    coeffs: dict[Index, int] = {(): 1}
    for a, s in w.letters:
        coeffs = _mul_letter(coeffs, a, s, bound, ring)
    return TruncatedSeries(w.alphabet, ring, bound, coeffs)


def min_positive_degree(f: TruncatedSeries) -> int | None:
    """Smallest ``t >= 1`` carrying a nonzero coefficient, or None if ``f == 1``."""
    if f.constant_term() != f.ring.canon(1):
        raise SeriesError("min_positive_degree needs constant term 1")
    degs = [len(I) for I in f.coeffs if I]
    return min(degs) if degs else None


def graded_component(f: TruncatedSeries, t: int) -> dict[Index, int]:
    """The degree-``t`` coefficients of ``f`` (zero entries omitted)."""
    if not 0 <= t < f.bound:
        raise SeriesError(f"degree {t} outside 0..{f.bound - 1}")
    return f.degree_part(t)


def format_monomial(I: Index, alphabet: Alphabet) -> str:
    return ".".join(alphabet.names[a] for a in I)


def format_series(f: TruncatedSeries) -> str:
    """Human form such as ``1 + a.b - b.a``; monomials are dot-joined names."""
    terms = []
    for I, c in f.coeffs.items():
        c = f.ring.lift(c)
        mono = format_monomial(I, f.alphabet)
        mag = abs(c)
        if not I:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        terms.append(("-" if c < 0 else "+", body))
    if not terms:
        return "0"
    s = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        s += f" {sign} {body}"
    return s
