from __future__ import annotations

import random
import sys
from fractions import Fraction

import pytest

from polykrull.polyarith import Poly


def rand_fraction(rng: random.Random, num: int = 50, den: int = 12) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def rand_poly(rng: random.Random, max_deg: int = 6, num: int = 50, den: int = 12, nonzero: bool = True) -> Poly:
    while True:
        deg = rng.randint(0, max_deg)
        f = Poly(rand_fraction(rng, num, den) for _ in range(deg + 1))
        if f or not nonzero:
            return f


def rand_int_poly(rng: random.Random, max_deg: int = 5, bound: int = 20, monic: bool = False) -> Poly:
    while True:
        deg = rng.randint(1 if monic else 0, max_deg)
        coeffs = [rng.randint(-bound, bound) for _ in range(deg + 1)]
        if monic:
            coeffs[-1] = 1
        f = Poly(coeffs)
        if f:
            return f


def p_adic_poly(rng: random.Random, p: int, center, max_deg: int = 4) -> Poly:
    """Products of linear factors close to ``center``, times a random unit-ish constant."""
    f = Poly((rand_fraction(rng) or Fraction(1),))
    for _ in range(rng.randint(1, max_deg)):
        shift = p ** rng.randint(0, 3) * rng.randint(-3, 3)
        f = f * Poly((-(Fraction(center) + shift), Fraction(p ** rng.randint(0, 2))))
    return f


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    results = getattr(module, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        ok, detail = results[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")
