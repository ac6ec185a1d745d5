"""Slow, independent reference implementations used to cross-check fast paths.

Nothing here is called by the library or the CLI.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .exactnum import INF, ExtRational, vp_rational
from .monoval import DvrSpec, mono_val, order_compare
from .polyarith import Poly

__all__ = ["OrderCheckReport", "mono_val_direct", "order_sample_check", "resultant_sylvester"]


def mono_val_direct(p: int, a, delta, f: Poly) -> ExtRational:
    """min_i v_p(b_i) + i*delta where f(X + a) = sum b_i X^i, by binomial expansion."""
    a, delta = Fraction(a), Fraction(delta)
    n = f.degree
    if n < 0:
        return INF
    best: ExtRational = INF
    for i in range(n + 1):
        b = sum((f[k] * comb(k, i) * a ** (k - i) for k in range(i, n + 1)), Fraction(0))
        if b:
            best = min(best, vp_rational(p, b) + i * delta)
    return best


def _sylvester(f: list, g: list) -> list[list]:
    """Sylvester matrix of coefficient lists given highest degree first."""
    m, n = len(f) - 1, len(g) - 1
    zero = f[0] * 0
    size = m + n
    rows = []
    for i in range(n):
        rows.append([zero] * i + list(f) + [zero] * (size - m - 1 - i))
    for i in range(m):
        rows.append([zero] * i + list(g) + [zero] * (size - n - 1 - i))
    return rows


def _bareiss(mat: list[list]):
    """Fraction-free determinant; entries may be Fractions or Polys."""
    a = [row[:] for row in mat]
    n = len(a)
    if n == 0:
        return None
    sign = 1
    prev = None
    for k in range(n - 1):
        if not a[k][k]:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return a[k][k] * 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num if prev is None else _exact_div(num, prev)
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def _exact_div(a, b):
    if isinstance(a, Poly):
        return a.exquo(b) if isinstance(b, Poly) else a * (1 / Fraction(b))
    return a / b


def resultant_sylvester(f, g, one=Fraction(1)):
    """Res(f, g) as the Sylvester determinant.

    ``f`` and ``g`` are Polys over Q or coefficient lists (lowest degree
    first) whose entries live in a common ring with unit ``one``.
    """
    fc = list(f.coeffs) if isinstance(f, Poly) else list(f)
    gc = list(g.coeffs) if isinstance(g, Poly) else list(g)
    if not fc or not gc:
        raise ValueError("resultant of a zero polynomial")
    if len(fc) == 1 and len(gc) == 1:
        return one
    if len(fc) == 1:
        return fc[0] ** (len(gc) - 1)
    if len(gc) == 1:
        return gc[0] ** (len(fc) - 1)
    return _bareiss(_sylvester(fc[::-1], gc[::-1]))


@dataclass
class OrderCheckReport:
    relation: str
    trials: int
    violations: list[Poly] = field(default_factory=list)
    first_greater: Poly | None = None  # some f with w1(f) > w2(f)
    second_greater: Poly | None = None  # some f with w1(f) < w2(f)
    all_equal: bool = True

    @property
    def ok(self) -> bool:
        return not self.violations


def _random_fraction(rng: random.Random, bound: int = 1000) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def _sample_poly(rng: random.Random, p: int, centers: list[Fraction]) -> Poly:
    if rng.random() < 0.5:
        deg = rng.randint(0, 8)
        coeffs = [_random_fraction(rng) for _ in range(deg + 1)]
        if not coeffs[-1]:
            coeffs[-1] = Fraction(1)
        return Poly(coeffs)
    # products of linear factors near the centers, where valuations differ most
    f = Poly((_random_fraction(rng),)) or Poly((1,))
    for _ in range(rng.randint(1, 8)):
        c = rng.choice(centers) + p ** rng.randint(0, 4) * rng.randint(-3, 3)
        f = f * Poly((-Fraction(c), Fraction(p ** rng.randint(0, 2))))
    return f


def _sample_centers(spec: DvrSpec) -> list[Fraction]:
    c = spec.center
    if hasattr(c, "a"):
        return [Fraction(c.a)]
    q = c.q
    # integer approximations of algebraic centers are poor; still cover 0 and small shifts
    return [Fraction(-q[0]) if q.degree == 1 else Fraction(0)]


def order_sample_check(s1: DvrSpec, s2: DvrSpec, trials: int, seed: int) -> OrderCheckReport:
    """Sample polynomials and test the inequality implied by order_compare(s1, s2).

    W1 n Q[X] in W2 n Q[X] means w1(f) <= w2(f) for every f (Less); Equal
    means w1 = w2; Greater is the mirror image.
    """
    relation = order_compare(s1, s2)
    rng = random.Random(seed)
    centers = _sample_centers(s1) + _sample_centers(s2)
    report = OrderCheckReport(relation, trials)
    for _ in range(trials):
        f = _sample_poly(rng, s1.p, centers)
        if not f:
            continue
        w1, w2 = mono_val(s1, f), mono_val(s2, f)
        if w1 > w2 and report.first_greater is None:
            report.first_greater = f
        if w1 < w2 and report.second_greater is None:
            report.second_greater = f
        if w1 != w2:
            report.all_equal = False
        bad = (
            (relation == "Less" and w1 > w2)
            or (relation == "Greater" and w1 < w2)
            or (relation == "Equal" and w1 != w2)
        )
        if bad:
            report.violations.append(f)
    return report
