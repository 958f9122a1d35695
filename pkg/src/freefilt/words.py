"""Reduced words in a free group on a finite alphabet.

A word is stored as a tuple of ``(generator index, sign)`` pairs with
``sign`` in ``{+1, -1}``; the empty tuple is the identity.  Every public
constructor returns freely reduced words.
"""

from __future__ import annotations

import itertools
import re
import string
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

Letter = tuple[int, int]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


class WordError(ValueError):
    pass


class ParseError(WordError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


@dataclass(frozen=True)
class Generator:
    index: int
    name: str


@dataclass(frozen=True)
class Alphabet:
    """Finite ordered set of generator names."""

    names: tuple[str, ...]

    def __post_init__(self):
        if not self.names:
            raise WordError("alphabet must have at least one generator")
        if len(set(self.names)) != len(self.names):
            raise WordError(f"generator names must be distinct: {self.names}")
        for nm in self.names:
            if not _IDENT.match(nm):
                raise WordError(f"generator name {nm!r} is not an ASCII identifier")

    @classmethod
    def standard(cls, k: int) -> "Alphabet":
        """The alphabet ``a, b, c, ...`` on ``k`` letters."""
        if not 1 <= k <= 26:
            raise WordError("standard alphabets have between 1 and 26 letters")
        return cls(tuple(string.ascii_lowercase[:k]))

    @classmethod
    def from_spec(cls, spec: str) -> "Alphabet":
        """Accepts either a count (``"2"``) or a comma list (``"a,b"``)."""
        spec = spec.strip()
        if spec.isdigit():
            return cls.standard(int(spec))
        return cls(tuple(s.strip() for s in spec.split(",") if s.strip()))

    @property
    def size(self) -> int:
        return len(self.names)

    def __len__(self) -> int:
        return len(self.names)

    def generators(self) -> tuple[Generator, ...]:
        return tuple(Generator(i, nm) for i, nm in enumerate(self.names))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise WordError(f"unknown generator {name!r}") from None

    def gen(self, name_or_index: str | int) -> "Word":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        return Word(self, ((i, 1),))

    def identity(self) -> "Word":
        return Word(self, ())

    def word(self, raw: Iterable[Letter]) -> "Word":
        return reduce(self, raw)

    def parse(self, expr: str) -> "Word":
        return parse(self, expr)


@dataclass(frozen=True)
class Word:
    alphabet: Alphabet
    letters: tuple[Letter, ...] = ()
    _hash: int = field(default=0, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_hash", hash((self.alphabet.names, self.letters)))

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        return iter(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __mul__(self, other: "Word") -> "Word":
        return multiply(self, other)

    def __invert__(self) -> "Word":
        return invert(self)

    def inverse(self) -> "Word":
        return invert(self)

    def __pow__(self, e: int) -> "Word":
        return power(self, e)

    def sort_key(self) -> tuple:
        # length first, then lexicographic on (index, sign) with +1 before -1
        return (len(self.letters), tuple((i, -s) for i, s in self.letters))

    def __lt__(self, other: "Word") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        return format_word(self)

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"


def _check_alphabets(u: Word, v: Word) -> None:
    if u.alphabet != v.alphabet:
        raise WordError(f"alphabet mismatch: {u.alphabet.names} vs {v.alphabet.names}")


def _reduce_letters(letters: Iterable[Letter]) -> list[Letter]:
    out: list[Letter] = []
    for g, s in letters:
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return out


def reduce(alphabet: Alphabet, raw: Iterable[Letter]) -> Word:
    """Freely reduce a sequence of signed letters."""
    k = alphabet.size
    checked = []
    for g, s in raw:
        if not 0 <= g < k:
            raise WordError(f"generator index {g} out of range for alphabet of size {k}")
        if s not in (1, -1):
            raise WordError(f"letter sign must be +1 or -1, got {s}")
        checked.append((g, s))
    return Word(alphabet, tuple(_reduce_letters(checked)))


def multiply(u: Word, v: Word) -> Word:
    _check_alphabets(u, v)
    a, b = u.letters, v.letters
    # cancel at the seam only; both inputs are already reduced
    i = 0
    while i < min(len(a), len(b)) and a[-1 - i][0] == b[i][0] and a[-1 - i][1] == -b[i][1]:
        i += 1
    return Word(u.alphabet, a[: len(a) - i] + b[i:])


def invert(w: Word) -> Word:
    return Word(w.alphabet, tuple((g, -s) for g, s in reversed(w.letters)))


def power(w: Word, e: int) -> Word:
    base = w if e >= 0 else invert(w)
    out = w.alphabet.identity()
    for _ in range(abs(e)):
        out = multiply(out, base)
    return out


def commutator(h: Word, k: Word) -> Word:
    """``[h, k] = h^-1 k^-1 h k``."""
    _check_alphabets(h, k)
    return multiply(multiply(invert(h), invert(k)), multiply(h, k))


def left_normed_commutator(words: Sequence[Word]) -> Word:
    """``[[...[w1, w2], ...], wn]``; a single word is returned unchanged."""
    if not words:
        raise WordError("need at least one word")
    out = words[0]
    for w in words[1:]:
        out = commutator(out, w)
    return out


def enumerate_reduced(alphabet: Alphabet | int, max_len: int) -> Iterator[Word]:
    """All reduced words of length <= max_len, by length then (index, sign) order.

    The count is ``1 + sum_{l=1..L} 2k (2k-1)^(l-1)``.
    """
    if isinstance(alphabet, int):
        alphabet = Alphabet.standard(alphabet)
    letters = [(g, s) for g in range(alphabet.size) for s in (1, -1)]
    layer: list[tuple[Letter, ...]] = [()]
    yield Word(alphabet)
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for g, s in letters:
                if w and w[-1] == (g, -s):
                    continue
                nxt.append(w + ((g, s),))
        for w in nxt:
            yield Word(alphabet, w)
        layer = nxt


def count_reduced(k: int, max_len: int) -> int:
    return 1 + sum(2 * k * (2 * k - 1) ** (l - 1) for l in range(1, max_len + 1))


def format_word(w: Word) -> str:
    """Render with exponent runs, e.g. ``a^2 b^-1``; identity is ``1``."""
    if not w.letters:
        return "1"
    parts = []
    for (g, s), run in itertools.groupby(w.letters):
        e = s * len(list(run))
        nm = w.alphabet.names[g]
        parts.append(nm if e == 1 else f"{nm}^{e}")
    return " ".join(parts)


# -- parser ---------------------------------------------------------------
#
#   word := term { term }
#   term := atom [ "^" integer ]
#   atom := generator | inverseLetter | "1" | "(" word ")" | "[" word "," word "]"


class _Parser:
    def __init__(self, alphabet: Alphabet, text: str):
        self.alphabet = alphabet
        self.text = text
        self.pos = 0
        # longest names first so "ab" wins over "a" when both exist
        self.names = sorted(alphabet.names, key=len, reverse=True)

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, ch: str) -> None:
        if self._peek() != ch:
            got = self._peek() or "end of input"
            raise ParseError(f"expected {ch!r}, got {got!r}", self.pos)
        self.pos += 1

    def parse(self) -> Word:
        w = self.word(stop="")
        if self._peek():
            raise ParseError(f"unexpected {self._peek()!r}", self.pos)
        return w

    def word(self, stop: str) -> Word:
        out = self.alphabet.identity()
        while True:
            ch = self._peek()
            if ch == "" or ch in stop:
                return out
            out = multiply(out, self.term())

    def term(self) -> Word:
        w = self.atom()
        if self._peek() == "^":
            self.pos += 1
            self._skip()
            m = re.compile(r"[+-]?\d+").match(self.text, self.pos)
            if not m:
                raise ParseError("expected integer exponent", self.pos)
            self.pos = m.end()
            w = power(w, int(m.group()))
        return w

    def atom(self) -> Word:
        ch = self._peek()
        start = self.pos
        if ch == "(":
            self.pos += 1
            w = self.word(stop=")")
            self._expect(")")
            return w
        if ch == "[":
            self.pos += 1
            x = self.word(stop=",]")
            self._expect(",")
            y = self.word(stop="]")
            self._expect("]")
            return commutator(x, y)
        if ch == "1":
            self.pos += 1
            return self.alphabet.identity()
        for nm in self.names:
            if self.text.startswith(nm, self.pos):
                self.pos += len(nm)
                return self.alphabet.gen(nm)
        if ch.isupper() and ch.lower() in self.alphabet.names:
            self.pos += 1
            return invert(self.alphabet.gen(ch.lower()))
        if ch.isalpha() or ch == "_":
            raise WordError(f"unknown generator {ch!r} at position {start}")
        raise ParseError(f"unexpected {ch or 'end of input'!r}", start)


def parse(alphabet: Alphabet, expr: str) -> Word:
    """Parse a word expression; ``[x,y]`` means ``x^-1 y^-1 x y``."""
    return _Parser(alphabet, expr).parse()


def random_word(alphabet: Alphabet, length: int, rng) -> Word:
    """Uniform random reduced word of exactly ``length`` letters."""
    letters: list[Letter] = []
    k = alphabet.size
    while len(letters) < length:
        g, s = rng.randrange(k), rng.choice((1, -1))
        if letters and letters[-1] == (g, -s):
            continue
        letters.append((g, s))
    return Word(alphabet, tuple(letters))
