from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from polykrull.errors import NotPrime, ParseError
from polykrull.exactnum import (
    INF,
    AbelianGroupInv,
    canonicalize_group,
    check_prime,
    format_ext,
    is_prime,
    parse_ext,
    parse_group,
    parse_rational,
    primes_up_to,
    vp_rational,
)

nonzero_fracs = st.fractions(min_value=-10**6, max_value=10**6, max_denominator=10**6).filter(bool)
primes = st.sampled_from([2, 3, 5, 7, 11, 13])


def test_vp_examples():
    assert vp_rational(2, 8) == 3
    assert vp_rational(3, Fraction(1, 9)) == -2
    assert vp_rational(5, 0) is INF


def test_vp_rejects_composite():
    with pytest.raises(NotPrime):
        vp_rational(4, 8)
    with pytest.raises(NotPrime):
        check_prime(1 << 64)


def test_infinity_semantics():
    assert INF > Fraction(10**9)
    assert not INF < 5
    assert INF + Fraction(3) is INF
    assert min(INF, Fraction(2)) == 2
    assert str(INF) == "inf"
    assert parse_ext("inf") is INF and format_ext(INF) == "inf"


def test_rational_text():
    assert parse_rational("-3/4") == Fraction(-3, 4)
    assert parse_rational(" 6/8 ") == Fraction(3, 4)
    for bad in ["", "1/0", "x", "1.5"]:
        with pytest.raises(ParseError):
            parse_rational(bad)


def test_primality_against_sieve():
    small = set(primes_up_to(5000))
    assert all(is_prime(n) == (n in small) for n in range(5000))
    assert len(primes_up_to(200)) == 46
    assert is_prime(2**61 - 1) and not is_prime(3215031751)


@settings(max_examples=1000)
@given(primes, nonzero_fracs, nonzero_fracs)
def test_vp_multiplicative(p, x, y):
    assert vp_rational(p, x * y) == vp_rational(p, x) + vp_rational(p, y)


@settings(max_examples=500)
@given(primes, nonzero_fracs, nonzero_fracs)
def test_vp_ultrametric(p, x, y):
    vx, vy, vs = vp_rational(p, x), vp_rational(p, y), vp_rational(p, x + y)
    assert vs >= min(vx, vy)
    if vx != vy:
        assert vs == min(vx, vy)


def test_canonicalize_examples():
    assert canonicalize_group([1, 2, 0]) == AbelianGroupInv((2,), 1)
    assert canonicalize_group([2, 3]) == AbelianGroupInv((6,), 0)
    assert canonicalize_group([]).is_trivial
    assert str(canonicalize_group([2, 4, 0, 0])) == "Z/2 + Z/4 + Z^2"
    assert str(canonicalize_group([])) == "0"


def _element_orders(moduli):
    """Multiset of element orders of a finite product of cyclic groups (brute force)."""
    from math import gcd

    counts = {}
    elems = [()]
    for m in moduli:
        elems = [e + (i,) for e in elems for i in range(m)]
    for e in elems:
        order = 1
        for i, m in zip(e, moduli):
            o = m // gcd(i, m)
            order = order * o // gcd(order, o)
        counts[order] = counts.get(order, 0) + 1
    return counts


@pytest.mark.parametrize("moduli", [[2, 3], [4, 6], [2, 2, 3], [12, 18], [5, 10, 4]])
def test_canonicalize_preserves_isomorphism_type(moduli):
    g = canonicalize_group(moduli)
    assert _element_orders(moduli) == _element_orders(list(g.torsion))
    assert all(b % a == 0 for a, b in zip(g.torsion, g.torsion[1:]))


def test_canonicalize_idempotent_and_permutation_invariant():
    rng = random.Random(7)
    for _ in range(100):
        ms = [rng.choice([0, 1, 2, 3, 4, 6, 8, 9, 12]) for _ in range(rng.randint(0, 5))]
        g = canonicalize_group(ms)
        assert canonicalize_group(list(g.moduli())) == g
        for perm in list(permutations(ms))[:6]:
            assert canonicalize_group(list(perm)) == g


def test_group_invariants_enforced():
    with pytest.raises(ValueError):
        AbelianGroupInv((4, 2), 0)
    with pytest.raises(ValueError):
        AbelianGroupInv((1,), 0)


def test_parse_group():
    assert parse_group("2,6,0,0") == AbelianGroupInv((2, 6), 2)
    assert parse_group("3,2") == AbelianGroupInv((6,), 0)
    with pytest.raises(ParseError):
        parse_group("a,b")
