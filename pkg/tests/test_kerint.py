import json
import random

import pytest

from freefilt.criteria import LOWER_CENTRAL, LowerPCentral, Zassenhaus, filtration_member
from freefilt.kerint import (
    BatchedHoms,
    KerIntError,
    cross_validate,
    cross_validate_words,
    enumerate_homs,
    general_linear_elements,
    kerint_finite,
    kerint_witness,
    random_words,
    witness_hom,
)
from freefilt.rings import ZZ, IdealChain, prime_field
from freefilt.series import magnus_expand
from freefilt.unipotent import BudgetError, FullUnipotent, SquareMatrix, enumerate_group, gnp, hom_eval
from freefilt.words import Alphabet, enumerate_reduced, parse

AB = Alphabet.standard(2)
A1 = Alphabet.standard(1)
F2 = prime_field(2)
U2F2 = FullUnipotent(F2, 2)
U3F2 = FullUnipotent(F2, 3)


def E(i, j, n=3, ring=ZZ, c=1):
    return SquareMatrix.elementary(ring, n, i, j, c)


def test_enumerate_homs_counts():
    assert len(list(enumerate_homs(U2F2, 2))) == 4
    assert len(list(enumerate_homs(gnp(2, 2), 1))) == 2
    assert len(list(enumerate_homs(gnp(3, 2), 0))) == 1
    assert len(list(enumerate_homs(gnp(2, 3), 2))) == 9
    with pytest.raises(BudgetError):
        list(enumerate_homs(U3F2, 3, cap=100))


def test_kerint_finite_examples():
    assert kerint_finite(parse(AB, "[a,b]"), U2F2)
    assert not kerint_finite(parse(AB, "a"), U2F2)
    assert not kerint_finite(parse(AB, "a^2"), U3F2)
    assert kerint_finite(parse(AB, "a^4"), U3F2)


def test_kerint_order_independent():
    rng = random.Random(0)
    homs = list(enumerate_homs(gnp(3, 2), 2))
    for w in list(enumerate_reduced(AB, 4))[::7]:
        shuffled = homs[:]
        rng.shuffle(shuffled)
        assert kerint_finite(w, gnp(3, 2), homs) == kerint_finite(w, gnp(3, 2), shuffled)


def test_witness_hom_examples():
    chain = IdealChain.lower_central(3)
    phi = witness_hom((0, 1), chain, AB)
    I3 = SquareMatrix.identity(ZZ, 3)
    assert phi.images == (I3 + E(1, 2), I3 + E(2, 3))
    assert hom_eval(phi, parse(AB, "[a,b]")) == I3 + E(1, 3)
    psi = witness_hom((0, 0), chain, AB)
    assert psi.images[0] == I3 + E(1, 2) + E(2, 3)
    val = hom_eval(psi, parse(AB, "a^2"))
    assert val == I3 + E(1, 2, c=2) + E(2, 3, c=2) + E(1, 3)
    assert val[0, 2] == magnus_expand(parse(AB, "a^2"), ZZ, 3)[(0, 0)]
    assert witness_hom((0,), chain, AB).images[1] == I3
    with pytest.raises(KerIntError):
        witness_hom((0, 1, 0), chain, AB)


def test_witness_extracts_coefficient():
    """On words whose lower coefficients vanish, entry (1, t+1) is d^t * theta(c_I0)."""
    rng = random.Random(1)
    for p, n in ((2, 3), (3, 3), (2, 4)):
        chain = IdealChain.lower_p_central(p, n)
        for w in random_words(AB, 300, 10, seed=rng.randrange(10**6)):
            f = magnus_expand(w, ZZ, n)
            for t in range(1, n):
                lower_ok = all(chain.annihilates(len(I), chain.theta(c)) for I, c in f.coeffs.items() if 1 <= len(I) < t)
                if not lower_ok:
                    break
                for I0 in [I for I in f.coeffs if len(I) == t][:3]:
                    M = hom_eval(witness_hom(I0, chain, AB), w)
                    assert M[0, t] == chain.target.mul(chain.d_power(t), chain.theta(f[I0]))


def test_kerint_witness_examples():
    chain = IdealChain.lower_central(3)
    assert not kerint_witness(parse(AB, "[a,b]"), chain)
    assert kerint_witness(parse(AB, "[[a,b],a]"), chain)
    for p in (2, 3):
        assert kerint_witness(parse(A1, f"a^{p * p}"), IdealChain.lower_p_central(p, 3))
        assert not kerint_witness(parse(A1, f"a^{p}"), IdealChain.lower_p_central(p, 3))


def test_batched_agrees_with_per_hom():
    for desc in (U3F2, gnp(3, 2)):
        homs = list(enumerate_homs(desc, 2))
        batch = BatchedHoms(list(enumerate_group(desc)), 2)
        scan = batch.scan(AB, 4)
        for w in list(enumerate_reduced(AB, 4))[::5]:
            assert scan[w] == kerint_finite(w, desc, homs)


def test_gl2_kernel_contained_in_u2_kernel():
    gl = BatchedHoms(general_linear_elements(F2, 2), 2).scan(AB, 6)
    u = BatchedHoms(list(enumerate_group(U2F2)), 2).scan(AB, 6)
    assert len(general_linear_elements(F2, 2)) == 6
    assert all(u[w] for w, killed in gl.items() if killed)
    assert sum(gl.values()) < sum(u.values())


@pytest.mark.parametrize("kind", [Zassenhaus(2), LowerPCentral(2)], ids=str)
def test_cross_validate_exhaustive(kind):
    rep = cross_validate(kind, 3, 2, 6, "exhaustive")
    assert rep.words_tested == 1457
    assert rep.disagreements == 0 and rep.exemplars == []


def test_cross_validate_witness_lcs():
    rep = cross_validate(LOWER_CENTRAL, 3, 2, 6, "witness")
    assert rep.words_tested == 1457 and rep.disagreements == 0


def test_exhaustive_lcs_refused():
    with pytest.raises(KerIntError):
        cross_validate(LOWER_CENTRAL, 3, 2, 2, "exhaustive")


def test_report_json_and_detection():
    rep = cross_validate(Zassenhaus(3), 2, 2, 3, "exhaustive")
    data = json.loads(rep.to_json(timing=False))
    assert "elapsed" not in data and data["disagreements"] == 0
    assert data["words_tested"] == 53
    words = list(enumerate_reduced(AB, 3))
    assert cross_validate_words(Zassenhaus(2), 3, words, "exhaustive").ok
    assert cross_validate_words(LowerPCentral(2), 2, words, "witness").ok


def test_mismatched_levels_are_distinguishable():
    # the comparison is not vacuous: level 2 membership differs from the level 3 kernel
    words = list(enumerate_reduced(AB, 3))
    mismatch = [w for w in words if filtration_member(w, Zassenhaus(2), 2) != kerint_finite(w, U3F2)]
    assert mismatch
