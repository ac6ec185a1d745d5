from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import p_adic_poly, rand_poly
from polykrull.errors import (
    AlgebraicAtInfinity,
    CenterNotIntegral,
    InsufficientPrecision,
    MinimalPairUnknown,
    NegativeRadius,
    RadiusExceedsPrecision,
)
from polykrull.exactnum import INF, vp_rational
from polykrull.monoval import (
    AlgebraicCenter,
    RationalCenter,
    TruncatedCenter,
    center_ideal,
    dvr_ram_index,
    make_dvr_spec,
    mono_val,
    order_compare,
    parse_center,
)
from polykrull.oracle import mono_val_direct
from polykrull.polyarith import X, Poly, parse_poly

P = parse_poly
RADII = [Fraction(0), Fraction(1), Fraction(2), Fraction(3), Fraction(4), Fraction(1, 2), Fraction(1, 3), Fraction(3, 2)]


def test_parse_center_forms():
    assert parse_center("rat:3/4") == RationalCenter(Fraction(3, 4))
    assert parse_center("alg:X^2-2") == AlgebraicCenter(P("X^2 - 2"))
    assert parse_center("trunc:a=5,N=20,e=1") == TruncatedCenter(Fraction(5), 20, 1)
    for c in ["rat:3/4", "alg:X^2-2", "trunc:a=5,N=20,e=2"]:
        assert parse_center(c).text() == c


def test_make_spec_examples():
    g = make_dvr_spec(2, "rat:1/3", 0)
    assert g.is_gauss and g.center == RationalCenter(Fraction(0))
    with pytest.raises(CenterNotIntegral):
        make_dvr_spec(2, "rat:1/2", 1)
    with pytest.raises(AlgebraicAtInfinity):
        make_dvr_spec(2, "alg:X^2-2", "inf")
    with pytest.raises(AlgebraicAtInfinity):
        make_dvr_spec(2, "rat:0", "inf")
    with pytest.raises(NegativeRadius):
        make_dvr_spec(2, "rat:0", "-1")
    with pytest.raises(RadiusExceedsPrecision):
        make_dvr_spec(2, "trunc:a=5,N=3", 4)
    assert make_dvr_spec(2, "trunc:a=5,N=3", 2).center == RationalCenter(Fraction(5))


def test_mono_val_examples():
    assert mono_val(make_dvr_spec(2, "rat:0", 1), P("X^2 + 2X + 8")) == 2
    assert mono_val(make_dvr_spec(3, "rat:0", 0), P("9X^2 + 3X + 1/3")) == -1
    s = make_dvr_spec(2, "alg:X^2-2", 1)
    assert mono_val(s, X) == Fraction(1, 2)
    assert mono_val(s, P("X^2 - 2")) == 2
    assert mono_val(s, Poly()) is INF


def test_mono_val_oracle_equivalence():
    rng = random.Random(101)
    for _ in range(1000):
        p = rng.choice([2, 3, 5, 7])
        a = Fraction(rng.randint(-40, 40), rng.choice([1, 1, 1, p + 2 if p != 2 else 3]))
        while vp_rational(p, a) < 0:
            a += 1
        delta = rng.choice(RADII)
        f = rand_poly(rng, 6, 60, 12)
        spec = make_dvr_spec(p, RationalCenter(a), delta)
        if delta == 0:
            a = Fraction(0)
        assert mono_val(spec, f) == mono_val_direct(p, a, delta, f)


def test_degree_one_algebraic_matches_rational():
    rng = random.Random(102)
    for _ in range(200):
        p = rng.choice([2, 3, 5])
        a = rng.randint(-20, 20)
        delta = rng.choice(RADII[1:])
        f = rand_poly(rng, 5, 40, 6)
        s_alg = make_dvr_spec(p, AlgebraicCenter(X - a), delta)
        assert mono_val(s_alg, f) == mono_val_direct(p, a, delta, f)


def test_gauss_is_min_coefficient_valuation():
    rng = random.Random(103)
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7])
        f = rand_poly(rng)
        assert mono_val(make_dvr_spec(p, "rat:0", 0), f) == min(vp_rational(p, c) for c in f.coeffs if c)


SPECS = [
    (2, "rat:0", "1/2"),
    (3, "rat:4", "2"),
    (2, "alg:X^2-2", "1"),
    (2, "alg:X^3-2", "1/2"),
    (2, "alg:X^2+X+1", "3/2"),
    (2, "alg:X^2+2X+2", "2"),
]


@pytest.mark.parametrize("p,center,radius", SPECS)
def test_valuation_axioms(p, center, radius):
    s = make_dvr_spec(p, center, radius)
    rng = random.Random(hash((p, center, radius)) & 0xFFFF)
    for _ in range(100):
        f = rand_poly(rng, 4, 30, 8) if rng.random() < 0.5 else p_adic_poly(rng, p, 0)
        g = rand_poly(rng, 4, 30, 8) if rng.random() < 0.5 else p_adic_poly(rng, p, 1)
        vf, vg = mono_val(s, f), mono_val(s, g)
        assert mono_val(s, f * g) == vf + vg
        vs = mono_val(s, f + g)
        assert vs >= min(vf, vg)
        if vf != vg:
            assert vs == min(vf, vg)
        c = Fraction(rng.randint(1, 50), rng.randint(1, 50))
        assert mono_val(s, f * c) == vp_rational(p, c) + vf


def test_truncated_at_infinity():
    s = make_dvr_spec(2, "trunc:a=5,N=10,e=1", "inf")
    assert mono_val(s, X - 1) == 2
    assert mono_val(s, P("X^2 + 1")) == 1
    with pytest.raises(InsufficientPrecision):
        mono_val(s, X - 5)
    with pytest.raises(InsufficientPrecision):
        mono_val(s, X - 5 - 2**10)


def test_ram_index_examples():
    assert dvr_ram_index(make_dvr_spec(2, "rat:0", "3/2")) == 2
    assert dvr_ram_index(make_dvr_spec(2, "alg:X^2+X+1", 2)) == 1
    assert dvr_ram_index(make_dvr_spec(2, "rat:0", 0)) == 1
    assert dvr_ram_index(make_dvr_spec(2, "trunc:a=5,N=10,e=3", "inf")) == 3
    # gamma = delta + min(delta, 3/2) = 4 with e0 = 2
    assert dvr_ram_index(make_dvr_spec(2, "alg:X^2-2", 2)) == 2
    assert dvr_ram_index(make_dvr_spec(2, "alg:X^2-2", "7/4")) == 4
    with pytest.raises(MinimalPairUnknown):
        dvr_ram_index(make_dvr_spec(2, "alg:X^2-2", 1))


@pytest.mark.parametrize("delta", ["1/2", "1/3", "2", "5/3"])
def test_unramified_ram_index_is_radius_denominator(delta):
    s = make_dvr_spec(2, "alg:X^2+X+1", delta)
    assert dvr_ram_index(s) == Fraction(delta).denominator


def test_center_ideal_examples():
    assert str(center_ideal(make_dvr_spec(5, "rat:0", 0))) == "(5)"
    assert center_ideal(make_dvr_spec(5, "rat:0", 0)).kind == "JustP"
    assert str(center_ideal(make_dvr_spec(2, "alg:X^2-2", "1/2"))) == "(2, X)"
    assert str(center_ideal(make_dvr_spec(2, "alg:X^2+X+1", 1))) == "(2, X^2 + X + 1)"
    assert str(center_ideal(make_dvr_spec(3, "rat:7/2", 1))) == "(3, X + 1)"


def test_order_compare_examples():
    s = lambda c, r, p=2: make_dvr_spec(p, c, r)
    assert order_compare(s("rat:0", 1), s("rat:0", 2)) == "Less"
    assert order_compare(s("rat:0", 2), s("rat:0", 1)) == "Greater"
    assert order_compare(s("rat:0", 1), s("rat:1", 1)) == "Incomparable"
    assert order_compare(s("alg:X^2-2", 1), s("alg:X^2-2", 1)) == "Equal"
    assert order_compare(s("rat:0", 1), s("rat:0", 1, 3)) == "DifferentPrime"
