"""Acceptance criteria 1 to 10, exact with tolerance zero.

Each test records a PASS/FAIL line that the conftest prints in the
terminal summary.  Time limits are asserted where the criterion sets one.
"""

import random
import time

import numpy as np

from conftest import criterion
from oracles import expansion_by_recursion
from freefilt.criteria import LOWER_CENTRAL, LowerPCentral, Zassenhaus, filtration_generators, filtration_member, in_L
from freefilt.finite_series import FiniteGroupTable, filtration_series_finite, nilpotency_probe
from freefilt.kerint import cross_validate, kerint_witness, random_words, target_for, witness_family
from freefilt.rings import ZZ, IdealChain, integers_mod, prime_field
from freefilt.series import TruncatedSeries, graded_component, magnus_expand, series_invert_unit
from freefilt.unipotent import FullUnipotent, gnp, group_order, hom_eval, phi_hat, random_hom
from freefilt.words import Alphabet, enumerate_reduced, random_word

AB = Alphabet.standard(2)
WORDS6 = list(enumerate_reduced(AB, 6))


def congruences_hold(coeffs, p, n):
    return all(c % p ** (n - len(I)) == 0 for I, c in coeffs.items() if 1 <= len(I) < n)


def test_criterion_01_zassenhaus_exhaustive():
    with criterion(1, "2-Zassenhaus n=3: F2 criterion vs 64 homs into U3(F2), 1457 words"):
        start = time.perf_counter()
        rep = cross_validate(Zassenhaus(2), 3, 2, 6, "exhaustive")
        elapsed = time.perf_counter() - start
        assert group_order(target_for(Zassenhaus(2), 3)) ** 2 == 64
        assert rep.words_tested == 1457 and rep.disagreements == 0, rep.summary()
        assert elapsed < 5


def test_criterion_02_lower_p_central_exhaustive():
    with criterion(2, "lower p-central: G(3,2) with 1024 homs and G(2,3) with 9, words of length <= 6"):
        start = time.perf_counter()
        rep = cross_validate(LowerPCentral(2), 3, 2, 6, "exhaustive")
        elapsed = time.perf_counter() - start
        assert group_order(gnp(3, 2)) ** 2 == 1024
        assert rep.words_tested == 1457 and rep.disagreements == 0, rep.summary()
        assert elapsed < 30
        # the chain-based decision is the literal congruence c_I = 0 mod 2^(3-|I|)
        for w in WORDS6:
            coeffs = expansion_by_recursion(w.letters, 2, 3)
            assert filtration_member(w, LowerPCentral(2), 3) == congruences_hold(coeffs, 2, 3)
        rep = cross_validate(LowerPCentral(3), 2, 2, 6, "exhaustive")
        assert group_order(gnp(2, 3)) ** 2 == 9
        assert rep.words_tested == 1457 and rep.disagreements == 0, rep.summary()


def test_criterion_03_lower_central_witnesses():
    with criterion(3, "lower central via witnesses: n=3 on 1457 words, n=4 on 1000 random words"):
        start = time.perf_counter()
        chain = IdealChain.lower_central(3)
        family = witness_family(chain, AB)
        for w in WORDS6:
            coeffs = expansion_by_recursion(w.letters, 2, 3)
            expected = all(c == 0 for I, c in coeffs.items() if 1 <= len(I) < 3)
            assert kerint_witness(w, chain, family) == expected, w
        assert time.perf_counter() - start < 5
        chain = IdealChain.lower_central(4)
        family = witness_family(chain, AB)
        for w in random_words(AB, 1000, 10, seed=3):
            coeffs = expansion_by_recursion(w.letters, 2, 4)
            expected = all(c == 0 for I, c in coeffs.items() if 1 <= len(I) < 4)
            assert kerint_witness(w, chain, family) == expected, w


def test_criterion_04_witness_sufficiency_d_p():
    with criterion(4, "witness family decides the d=p chain, (3,2) (4,2) (3,3), 1000 random words each"):
        start = time.perf_counter()
        for n, p in ((3, 2), (4, 2), (3, 3)):
            chain = IdealChain.lower_p_central(p, n)
            family = witness_family(chain, AB)
            for w in random_words(AB, 1000, 12, seed=100 * n + p):
                assert kerint_witness(w, chain, family) == in_L(magnus_expand(w, ZZ, n), chain), (n, p, w)
        assert time.perf_counter() - start < 10


ENUM_LIMIT = 10**5


def _table_kills(desc):
    """Kernel-intersection decider on the Cayley table of ``desc``, all pairs (a, b) -> (g, h)."""
    G = FiniteGroupTable.from_descriptor(desc)
    N = G.order
    img = {0: np.repeat(np.arange(N), N), 1: np.tile(np.arange(N), N)}

    def kills(w):
        out = np.full(N * N, G.identity)
        for g, s in w.letters:
            out = G.table[out, img[g] if s == 1 else G.inverse[img[g]]]
        return bool((out == G.identity).all())

    return kills


def test_criterion_05_generator_soundness():
    with criterion(5, "every sampled generator passes the criterion and is killed by the homs at its level"):
        for kind in (LOWER_CENTRAL, Zassenhaus(2), Zassenhaus(3), LowerPCentral(2), LowerPCentral(3)):
            for n in range(1, 5):
                # level 1 is all of S, sampled as every word of length <= 5
                words = filtration_generators(kind, n, AB, 16, seed_len=5 if n == 1 else 2)
                assert len(words) >= 200, (kind, n, len(words))
                chain = kind.chain(n)
                family = witness_family(chain, AB)
                kills = None
                if kind.name != "lcs" and n >= 2 and group_order(target_for(kind, n)) ** 2 <= ENUM_LIMIT:
                    kills = _table_kills(target_for(kind, n))
                for w in words:
                    assert filtration_member(w, kind, n), (kind, n, w)
                    assert kerint_witness(w, chain, family), (kind, n, w)
                    if kills is not None:
                        assert kills(w), (kind, n, w)


def test_criterion_06_finite_series():
    with criterion(6, "p-Zassenhaus of U_n(F_p) and lower p-central of G(n,p) trivial by term n"):
        start = time.perf_counter()
        for n in (2, 3, 4):
            for p in (2, 3):
                G = FiniteGroupTable.from_descriptor(FullUnipotent(prime_field(p), n))
                res = filtration_series_finite(G, Zassenhaus(p))
                assert res.trivial_by(n), (n, p, res.sizes)
        for n, p in ((2, 2), (3, 2), (2, 3), (3, 3)):
            G = FiniteGroupTable.from_descriptor(gnp(n, p))
            res = filtration_series_finite(G, LowerPCentral(p))
            assert res.trivial_by(n), (n, p, res.sizes)
        assert group_order(FullUnipotent(prime_field(3), 4)) == 729
        assert time.perf_counter() - start < 60


def test_criterion_07_nilpotency_probe():
    with criterion(7, "random 3-fold commutators in U3(Z) and 4-fold in U4(Z) are trivial, 2-fold are not"):
        assert nilpotency_probe(FullUnipotent(ZZ, 3), 3, 500, seed=7, bound=9)
        assert nilpotency_probe(FullUnipotent(ZZ, 4), 4, 200, seed=7, bound=9)
        assert not nilpotency_probe(FullUnipotent(ZZ, 3), 2, 500, seed=7, bound=9)


def test_criterion_08_commuting_square():
    with criterion(8, "hom_eval equals phi_hat of the expansion for U3(F2), G(3,2), U3(Z/8)"):
        rng = random.Random(8)
        for desc in (FullUnipotent(prime_field(2), 3), gnp(3, 2), FullUnipotent(integers_mod(8), 3)):
            for _ in range(500):
                phi = random_hom(desc, 2, rng)
                w = random_word(AB, rng.randint(0, 12), rng)
                assert hom_eval(phi, w) == phi_hat(magnus_expand(w, ZZ, 3), phi), (desc, w)


def _random_V(rng, ring, t, bound):
    """1 + random terms of degree t..bound-1."""
    coeffs = {(): 1}
    for d in range(t, bound):
        for _ in range(rng.randint(0, 4)):
            coeffs[tuple(rng.randrange(2) for _ in range(d))] = rng.randint(-9, 9)
    return TruncatedSeries(AB, ring, bound, coeffs)


def test_criterion_09_graded_identities():
    with criterion(9, "degree-t part is additive on products and negated by inversion, 500 cases each"):
        rng = random.Random(9)
        for _ in range(500):
            ring = rng.choice([ZZ, integers_mod(8), prime_field(3)])
            t = rng.randint(1, 4)
            bound = rng.randint(t + 1, 6)
            f, g = _random_V(rng, ring, t, bound), _random_V(rng, ring, t, bound)
            ft, gt = graded_component(f, t), graded_component(g, t)
            expected = {I: ring.add(ft.get(I, 0), gt.get(I, 0)) for I in set(ft) | set(gt)}
            expected = {I: c for I, c in expected.items() if c != 0}
            assert graded_component(f * g, t) == expected
        for _ in range(500):
            ring = rng.choice([ZZ, integers_mod(8), prime_field(3)])
            t = rng.randint(1, 4)
            bound = rng.randint(t + 1, 6)
            f = _random_V(rng, ring, t, bound)
            inv = series_invert_unit(f)
            assert graded_component(inv, t) == {I: ring.neg(c) for I, c in graded_component(f, t).items()}
            one = TruncatedSeries.one(AB, ring, bound)
            assert f * inv == one and inv * f == one


def test_criterion_10_injectivity_shadow():
    with criterion(10, "485 reduced words of length <= 5 have distinct expansions at bound 6"):
        words = list(enumerate_reduced(AB, 5))
        assert len(words) == 485
        seen = {}
        for w in words:
            key = tuple(sorted(magnus_expand(w, ZZ, 6).coeffs.items()))
            assert key not in seen, (w, seen.get(key))
            seen[key] = w
