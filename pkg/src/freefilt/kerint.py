"""Kernel intersections ``KerInt(S, G)`` and cross-validation against the Magnus criteria.

Two independent deciders are compared word by word:

* the coefficient test :func:`freefilt.criteria.filtration_member`;
* a kernel intersection, either over *every* homomorphism into a finite
  target (``exhaustive``) or over the finite witness family built from index
  sequences (``witness``), which also works for infinite targets like
  ``U_n(Z)``.

The exhaustive scan walks the tree of reduced words depth first and carries
the images under all homomorphisms at once as one ``(H, n, n)`` integer array,
so each word costs a single batched matrix product.
"""

from __future__ import annotations

import itertools
import json
import random
import time
from dataclasses import asdict, dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .criteria import FiltrationKind, filtration_member
from .rings import IdealChain, Ring, prime_field
from .series import Index
from .unipotent import (
    BudgetError,
    FullUnipotent,
    GroupDescriptor,
    GroupHom,
    IdealUnipotent,
    SquareMatrix,
    enumerate_group,
    gnp,
    group_cap,
    group_order,
    hom_eval,
    mat_mul,
)
from .words import Alphabet, Word, enumerate_reduced, format_word, random_word


class KerIntError(ValueError):
    pass


def enumerate_homs(desc: GroupDescriptor, k: int, cap: int | None = None) -> Iterator[GroupHom]:
    """All ``|G|^k`` homomorphisms from the free group of rank ``k``."""
    cap = group_cap() if cap is None else cap
    total = group_order(desc) ** k
    if total > cap:
        raise BudgetError(f"{total} homomorphisms into {desc} exceed cap {cap}")
    elements = list(enumerate_group(desc))
    for imgs in itertools.product(elements, repeat=k):
        yield GroupHom(desc, imgs)


def kerint_finite(w: Word, desc: GroupDescriptor, homs: Iterable[GroupHom] | None = None) -> bool:
    """Whether every homomorphism into ``desc`` kills ``w``."""
    if homs is None:
        homs = enumerate_homs(desc, w.alphabet.size)
    return all(hom_eval(phi, w).is_identity() for phi in homs)


def witness_hom(I0: Index, chain: IdealChain, alphabet: Alphabet) -> GroupHom:
    """``phi(a) = I + d * sum_{j : I0[j] = a} E_{j,j+1}``.

    For a word whose Magnus coefficients of degree below ``|I0|`` are already
    killed, ``phi(w) - I`` has ``(1, |I0|+1)`` entry ``d^t theta(c_{I0})``.
    """
    t = len(I0)
    n = chain.n
    if not 1 <= t <= n - 1:
        raise KerIntError(f"witness sequence length {t} outside 1..{n - 1}")
    R = chain.target
    images = []
    for a in range(alphabet.size):
        rows = [[int(i == j) for j in range(n)] for i in range(n)]
        for j, letter in enumerate(I0):
            if letter == a:
                rows[j][j + 1] = chain.d
        images.append(SquareMatrix(R, tuple(map(tuple, rows))))
    return GroupHom(IdealUnipotent(chain), tuple(images))


def witness_sequences(k: int, n: int) -> Iterator[Index]:
    for t in range(1, n):
        yield from itertools.product(range(k), repeat=t)


def witness_family(chain: IdealChain, alphabet: Alphabet) -> list[GroupHom]:
    return [witness_hom(I0, chain, alphabet) for I0 in witness_sequences(alphabet.size, chain.n)]


def kerint_witness(w: Word, chain: IdealChain, family: Sequence[GroupHom] | None = None) -> bool:
    """Kernel intersection over the witness family of ``chain``."""
    if family is None:
        family = witness_family(chain, w.alphabet)
    return all(hom_eval(phi, w).is_identity() for phi in family)


# -- batched evaluation over a finite matrix group -------------------------


def general_linear_elements(ring: Ring, n: int) -> list[SquareMatrix]:
    """All of ``GL_n(R)`` for a finite ring (brute force; tiny cases only)."""
    m = ring.size
    I = SquareMatrix.identity(ring, n)
    mats = [
        SquareMatrix(ring, tuple(tuple(vals[i * n:(i + 1) * n]) for i in range(n)))
        for vals in itertools.product(range(m), repeat=n * n)
    ]
    # invertible iff some matrix is a two-sided inverse
    return [A for A in mats if any(mat_mul(A, B) == I for B in mats)]


class BatchedHoms:
    """All ``|G|^k`` homomorphisms into a finite matrix group, evaluated in bulk."""

    def __init__(self, elements: Sequence[SquareMatrix], k: int, cap: int | None = None):
        cap = group_cap() if cap is None else cap
        if not elements:
            raise KerIntError("empty group")
        ring = elements[0].ring
        if not ring.is_finite:
            raise KerIntError("batched evaluation needs a finite ring")
        self.count = len(elements) ** k
        if self.count > cap:
            raise BudgetError(f"{self.count} homomorphisms exceed cap {cap}")
        self.modulus = ring.modulus
        self.n = elements[0].n
        E = np.array([M.rows for M in elements], dtype=np.int64)
        lookup = {M: i for i, M in enumerate(elements)}
        I = SquareMatrix.identity(ring, self.n)
        inv_idx = []
        for M in elements:
            found = [lookup[B] for B in elements if mat_mul(M, B) == I]
            if not found:
                raise KerIntError("element set is not closed under inverses")
            inv_idx.append(found[0])
        Einv = E[np.array(inv_idx)]
        grid = np.array(list(itertools.product(range(len(elements)), repeat=k)), dtype=np.intp)
        grid = grid.reshape(self.count, k)
        self.images = {}
        for g in range(k):
            self.images[(g, 1)] = E[grid[:, g]]
            self.images[(g, -1)] = Einv[grid[:, g]]
        self.identity = np.broadcast_to(np.eye(self.n, dtype=np.int64), (self.count, self.n, self.n))

    def step(self, prefix: np.ndarray, letter: tuple[int, int]) -> np.ndarray:
        return np.matmul(prefix, self.images[letter]) % self.modulus

    def evaluate(self, w: Word) -> np.ndarray:
        out = self.identity
        for letter in w.letters:
            out = self.step(out, letter)
        return out

    def kills(self, values: np.ndarray) -> bool:
        return bool(np.array_equal(values, self.identity))

    def scan(self, alphabet: Alphabet, max_len: int) -> dict[Word, bool]:
        """Kernel-intersection verdict for every reduced word of length ``<= max_len``."""
        k = alphabet.size
        letters = [(g, s) for g in range(k) for s in (1, -1)]
        out: dict[Word, bool] = {}
        stack = [((), self.identity)]
        while stack:
            w, vals = stack.pop()
            out[Word(alphabet, w)] = self.kills(vals)
            if len(w) == max_len:
                continue
            for g, s in letters:
                if w and w[-1] == (g, -s):
                    continue
                stack.append((w + ((g, s),), self.step(vals, (g, s))))
        return out


def target_for(kind: FiltrationKind, n: int) -> GroupDescriptor:
    """The finite group whose kernel intersection is the n-th term."""
    if kind.name == "zass":
        return FullUnipotent(prime_field(kind.p), n)
    if kind.name == "lpc":
        return gnp(n, kind.p)
    raise KerIntError("the lower central series has no finite target; use witness mode")


@dataclass
class KerIntReport:
    kind: str
    n: int
    p: int | None
    generators: int
    max_len: int | None
    mode: str
    target: str
    words_tested: int = 0
    magnus_members: int = 0
    kerint_members: int = 0
    disagreements: int = 0
    exemplars: list[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def ok(self) -> bool:
        return self.disagreements == 0

    def to_dict(self, timing: bool = True) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("elapsed")
        return d

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), indent=2)

    def summary(self) -> str:
        return (
            f"{self.kind} n={self.n}{'' if self.p is None else f' p={self.p}'} "
            f"k={self.generators} mode={self.mode} target={self.target}: "
            f"{self.words_tested} words, {self.magnus_members} Magnus members, "
            f"{self.kerint_members} KerInt members, {self.disagreements} disagreements"
        )


def _tally(report: KerIntReport, verdicts: Iterable[tuple[Word, bool, bool]], max_exemplars: int = 10) -> None:
    for w, magnus, ker in verdicts:
        report.words_tested += 1
        report.magnus_members += magnus
        report.kerint_members += ker
        if magnus != ker:
            report.disagreements += 1
            if len(report.exemplars) < max_exemplars:
                report.exemplars.append(format_word(w))


def cross_validate_words(
    kind: FiltrationKind,
    n: int,
    words: Sequence[Word],
    mode: str = "witness",
) -> KerIntReport:
    """Compare the Magnus criterion with a kernel intersection on a given word list."""
    start = time.perf_counter()
    if not words:
        raise KerIntError("no words to test")
    alphabet = words[0].alphabet
    if mode == "witness":
        chain = kind.chain(n)
        target = str(IdealUnipotent(chain))
        family = witness_family(chain, alphabet) if n > 1 else []
        decide = lambda w: kerint_witness(w, chain, family)  # noqa: E731
    elif mode == "exhaustive":
        desc = target_for(kind, n)
        target = str(desc)
        batch = BatchedHoms(list(enumerate_group(desc)), alphabet.size)
        decide = lambda w: batch.kills(batch.evaluate(w))  # noqa: E731
    else:
        raise KerIntError(f"unknown mode {mode!r}")
    report = KerIntReport(kind.name, n, kind.p, alphabet.size, None, mode, target)
    _tally(report, ((w, filtration_member(w, kind, n), decide(w)) for w in words))
    report.elapsed = time.perf_counter() - start
    return report


def cross_validate(
    kind: FiltrationKind,
    n: int,
    k: int | Alphabet,
    max_len: int,
    mode: str = "exhaustive",
) -> KerIntReport:
    """Check ``Magnus criterion <=> KerInt`` on every reduced word of length ``<= max_len``."""
    start = time.perf_counter()
    alphabet = k if isinstance(k, Alphabet) else Alphabet.standard(k)
    words = list(enumerate_reduced(alphabet, max_len))
    if mode == "exhaustive":
        desc = target_for(kind, n)
        batch = BatchedHoms(list(enumerate_group(desc)), alphabet.size)
        ker = batch.scan(alphabet, max_len)
        report = KerIntReport(kind.name, n, kind.p, alphabet.size, max_len, mode, str(desc))
        _tally(report, ((w, filtration_member(w, kind, n), ker[w]) for w in words))
        report.elapsed = time.perf_counter() - start
        return report
    report = cross_validate_words(kind, n, words, mode)
    report.max_len = max_len
    report.elapsed = time.perf_counter() - start
    return report


def random_words(alphabet: Alphabet, count: int, max_len: int, seed: int = 0) -> list[Word]:
    """``count`` random reduced words, lengths uniform in ``[0, max_len]``."""
    rng = random.Random(seed)
    return [random_word(alphabet, rng.randint(0, max_len), rng) for _ in range(count)]
