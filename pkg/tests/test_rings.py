import random

import pytest

from freefilt.rings import (
    ZZ,
    IdealChain,
    RingError,
    annihilator_test,
    integers_mod,
    padic,
    parse_ring,
    prime_field,
    ring_arith,
    theta_reduce,
)


def test_ring_arith_examples():
    Z8, F5 = integers_mod(8), prime_field(5)
    assert ring_arith("add", Z8(5), Z8(7)).value == 4
    assert ring_arith("mul", F5(2), F5(3)).value == 1
    assert ring_arith("mul", ZZ(-1), ZZ(-1)).value == 1
    assert ring_arith("neg", Z8(3)).value == 5


def test_ring_mismatch():
    with pytest.raises(RingError):
        ring_arith("add", integers_mod(8)(1), integers_mod(9)(1))


def test_constructors_validate():
    with pytest.raises(RingError):
        prime_field(4)
    with pytest.raises(RingError):
        integers_mod(1)
    with pytest.raises(RingError):
        padic(6, 2)


@pytest.mark.parametrize("text", ["Z", "Z/8", "F5", "Zp:3,prec=4"])
def test_parse_ring_round_trip(text):
    assert str(parse_ring(text)) == text


def test_parse_ring_bad():
    with pytest.raises(RingError):
        parse_ring("Q")


def test_annihilator_examples():
    chain = IdealChain(ZZ, integers_mod(8), 2, 3)
    assert annihilator_test(chain, 2, 2)
    assert not annihilator_test(chain, 1, 2)
    with pytest.raises(RingError):
        annihilator_test(chain, 3, 0)
    for R in (ZZ, prime_field(3), integers_mod(8)):
        unit_chain = IdealChain(R, R, 1, 3)
        for c in range(-5, 6):
            for t in range(3):
                assert annihilator_test(unit_chain, t, R.canon(c)) == (R.canon(c) == 0)


@pytest.mark.parametrize("p", [2, 3])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_annihilator_matches_divisibility(p, n):
    chain = IdealChain.lower_p_central(p, n)
    for t in range(n):
        for c in range(p**n):
            assert annihilator_test(chain, t, c) == (c % p ** (n - t) == 0)
            assert chain.annihilator_modulus(t) == p ** (n - t)


def test_theta_examples():
    assert theta_reduce(IdealChain(ZZ, integers_mod(8), 1, 2), 13) == 5
    assert theta_reduce(IdealChain(ZZ, prime_field(3), 1, 2), -1) == 2
    for R in (ZZ, prime_field(5), integers_mod(6)):
        chain = IdealChain(R, R, 1, 2)
        assert all(theta_reduce(chain, R.canon(c)) == R.canon(c) for c in range(-10, 10))


def test_unsupported_theta():
    with pytest.raises(RingError):
        IdealChain(integers_mod(8), integers_mod(4), 1, 2)


@pytest.mark.parametrize("target", [integers_mod(8), prime_field(3), padic(3, 4), ZZ])
def test_theta_is_homomorphism(target):
    rng = random.Random(1)
    chain = IdealChain(ZZ, target, 1, 2)
    assert chain.theta(1) == target.canon(1)
    for _ in range(1000):
        x, y = rng.randint(-10**6, 10**6), rng.randint(-10**6, 10**6)
        assert chain.theta(x + y) == target.add(chain.theta(x), chain.theta(y))
        assert chain.theta(x * y) == target.mul(chain.theta(x), chain.theta(y))


def test_padic_matches_integers_mod():
    P, M = padic(2, 5), integers_mod(32)
    rng = random.Random(2)
    for _ in range(500):
        x, y = rng.randint(-999, 999), rng.randint(-999, 999)
        assert P.add(x, y) == M.add(x, y)
        assert P.mul(x, y) == M.mul(x, y)
    cp, cm = IdealChain(ZZ, P, 2, 5), IdealChain(ZZ, M, 2, 5)
    for t in range(5):
        for c in range(32):
            assert cp.annihilates(t, c) == cm.annihilates(t, c)


def test_ideal_elements_and_contains():
    chain = IdealChain.lower_p_central(2, 3)
    assert chain.ideal_elements(0) == list(range(8))
    assert chain.ideal_elements(1) == [0, 2, 4, 6]
    assert chain.ideal_elements(2) == [0, 4]
    assert chain.in_ideal(2, 4) and not chain.in_ideal(2, 2)
    z = IdealChain.lower_central(3)
    assert z.in_ideal(2, 17)


def test_big_integers_do_not_overflow():
    x = ZZ(2**200)
    assert (x * x).value == 2**400
