from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conftest import rand_int_poly, rand_poly
from polykrull.errors import ParseError, ZeroPolynomial
from polykrull.exactnum import INF, vp_rational
from polykrull.oracle import resultant_sylvester
from polykrull.polyarith import (
    Poly,
    ValuationSpectrum,
    X,
    _binomial_shift_in_y,
    difference_polynomial,
    fp_irreducible,
    newton_root_valuations,
    normalize_primitive,
    parse_poly,
    resultant,
    shift_compose,
)

P = parse_poly


def test_parse_and_print_round_trip():
    for text in ["X^2 + 2*X + 8", "3/4*X", "-X^3 + 1/2", "0", "7"]:
        assert str(P(text)) == text
    assert P(" 2X ** 2 − 1 ") == 2 * X * X - 1
    assert P("(X^2+2X+8)/4") == (X * X + 2 * X + 8) * Fraction(1, 4)
    assert P("X/4 + 1") == X * Fraction(1, 4) + 1


@pytest.mark.parametrize("bad", ["", "X+", "Y^2", "2*", "(X)/0", "X^^2"])
def test_parse_errors(bad):
    with pytest.raises(ParseError):
        P(bad)


def test_zero_and_degree():
    z = Poly()
    assert z.degree == -1 and not z and z == 0
    assert Poly([0, 0, 0]) == z
    assert P("3X^4 - 1").degree == 4


def test_ring_arithmetic(rng):
    for _ in range(100):
        f, g, h = rand_poly(rng), rand_poly(rng), rand_poly(rng)
        assert (f + g) * h == f * h + g * h
        q, r = divmod(f * g + h, g)
        assert q * g + r == f * g + h and r.degree < g.degree
        a = rng.randint(-5, 5)
        assert (f * g)(a) == f(a) * g(a)


def test_content_primitive(rng):
    for _ in range(100):
        f = rand_poly(rng)
        c, pp = f.content, f.primitive_part
        assert c > 0 and pp * c == f
        assert pp.is_integral() and pp.content == 1


def test_shift_compose_examples():
    assert shift_compose(X * X, 1) == P("X^2 + 2X + 1")
    assert shift_compose(P("X^2 + 2X + 8"), 0) == P("X^2 + 2X + 8")
    assert shift_compose(P("2X + 3"), -1) == P("2X + 1")


def test_shift_compose_matches_evaluation(rng):
    for _ in range(100):
        f, a = rand_poly(rng), Fraction(rng.randint(-9, 9), rng.randint(1, 4))
        g = shift_compose(f, a)
        for x in range(-3, 4):
            assert g(x) == f(x + a)


def test_resultant_small_cases():
    assert resultant(list((X - 3).coeffs), list(((X + 1) ** 2).coeffs)) == 16
    q = P("X^2 - 2")
    assert resultant(list(q.coeffs), list(q.coeffs)) == 0


def test_difference_polynomial_examples():
    f = P("X^3 - X + 5")
    assert difference_polynomial(X - 2, f) == normalize_primitive(shift_compose(f, 2))
    assert difference_polynomial(P("X^2 - 2"), X) == P("X^2 - 2")
    assert difference_polynomial(P("X^2 - 2"), P("X^2 - 2")) == P("X^4 - 8X^2")
    with pytest.raises(ZeroPolynomial):
        difference_polynomial(P("X^2 - 2"), Poly())


def test_difference_polynomial_against_sylvester():
    rng = random.Random(11)
    one = Poly.const(1)
    for _ in range(200):
        q = rand_int_poly(rng, 5, 20, monic=True)
        f = rand_int_poly(rng, 5, 20)
        if f.degree < 1:
            f = f * X + 1
        qy = [Poly.const(c) for c in q.coeffs]
        expected = normalize_primitive(resultant_sylvester(qy, _binomial_shift_in_y(f), one=one))
        got = difference_polynomial(q, f)
        assert got == expected
        assert got.degree == q.degree * f.degree


def test_resultant_against_sylvester():
    rng = random.Random(12)
    for _ in range(200):
        f, g = rand_poly(rng, 5), rand_poly(rng, 5)
        if f.degree < 1 or g.degree < 1:
            continue
        assert resultant(list(f.coeffs), list(g.coeffs)) == resultant_sylvester(f, g)


def test_newton_examples():
    assert newton_root_valuations(2, P("X^2 - 2")) == ValuationSpectrum.from_pairs([(Fraction(1, 2), 2)])
    assert newton_root_valuations(2, P("X^2 + 2X + 8")).as_dict() == [["1", 1], ["2", 1]]
    assert newton_root_valuations(3, P("3X")) == ValuationSpectrum.from_pairs([(INF, 1)])
    with pytest.raises(ZeroPolynomial):
        newton_root_valuations(3, Poly())


def test_newton_multiplicative_union():
    rng = random.Random(13)
    for _ in range(300):
        p = rng.choice([2, 3, 5, 7])
        f, g = rand_poly(rng, 5, 60, 8), rand_poly(rng, 5, 60, 8)
        if f.degree < 1 or g.degree < 1:
            continue
        assert newton_root_valuations(p, f * g) == newton_root_valuations(p, f) | newton_root_valuations(p, g)


def test_newton_product_of_roots():
    rng = random.Random(14)
    for _ in range(300):
        p = rng.choice([2, 3, 5])
        f = rand_poly(rng, 6, 200, 30)
        if f.degree < 1 or not f[0]:
            continue
        spec = newton_root_valuations(p, f)
        assert spec.total == f.degree
        assert sum(v * m for v, m in spec) == vp_rational(p, f[0]) - vp_rational(p, f.lc)


def test_newton_nonnegative_for_monic_integral():
    rng = random.Random(15)
    for _ in range(200):
        p = rng.choice([2, 3, 5, 7])
        f = rand_int_poly(rng, 6, 50, monic=True)
        assert all(v >= 0 for v, _ in newton_root_valuations(p, f))


def test_fp_irreducible_examples():
    assert fp_irreducible(2, P("X^2 + X + 1"))
    assert not fp_irreducible(2, P("X^2 + 1"))
    assert fp_irreducible(3, X)


def _brute_irreducible(p, coeffs):
    """Irreducible iff no monic factor of degree 1..n//2 divides (trial division)."""
    from itertools import product

    from polykrull.polyarith import _fp_divmod, _fp_monic

    a = _fp_monic(p, list(coeffs))
    n = len(a) - 1
    for d in range(1, n // 2 + 1):
        for tail in product(range(p), repeat=d):
            _, r = _fp_divmod(p, a, list(tail) + [1])
            if not r:
                return False
    return True


def test_fp_irreducible_brute_force():
    rng = random.Random(16)
    for _ in range(300):
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 5)
        coeffs = [rng.randrange(p) for _ in range(n)] + [1]
        assert fp_irreducible(p, coeffs) == _brute_irreducible(p, coeffs)


def test_spectrum_divided():
    s = ValuationSpectrum.from_pairs([(Fraction(1, 2), 4), (INF, 2)])
    assert s.divided(2) == ValuationSpectrum.from_pairs([(Fraction(1, 2), 2), (INF, 1)])
    assert s.divided(3) is None
    assert s.max_value() is INF and s.count_at_least(1) == 2
