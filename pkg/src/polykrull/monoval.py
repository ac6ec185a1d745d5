"""DVR specifications (p, alpha, delta) of Q(X) and their monomial valuations.

A spec describes the valuation ring Z_(p),alpha,delta: the restriction to
Q(X) of the monomial valuation with center ``alpha`` (a p-adic integer,
possibly algebraic or transcendental) and radius ``delta``.

Three kinds of center are supported::

    rat:3/4                 a rational with v_p >= 0
    alg:X^2-2               a root of a certified Q_p-irreducible polynomial
    trunc:a=5,N=20,e=1      a transcendental element known modulo p^N,
                            with declared ramification index e

Algebraic centers at infinite radius give rank-2 valuations and are rejected.
Transcendental (truncated) centers are only used at infinite radius; at a
finite radius not exceeding their precision they collapse to the rational
truncation.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .algext import (
    QpCertificate,
    certify_qp_irreducible,
    minimal_pair_status,
    per_root_distances,
    ramification_residue,
    residue_min_poly,
    value_spectrum_sum,
)
from .errors import (
    AlgebraicAtInfinity,
    CenterNotIntegral,
    InsufficientPrecision,
    MinimalPairUnknown,
    NegativeRadius,
    ParseError,
    RadiusExceedsPrecision,
)
from .exactnum import (
    INF,
    ExtRational,
    _vp_fast,
    check_prime,
    format_ext,
    format_rational,
    parse_ext,
    parse_rational,
    vp_int,
)
from .polyarith import X, Poly, int_taylor_shift, parse_poly, shift_compose

__all__ = [
    "AlgebraicCenter",
    "Center",
    "CenterIdeal",
    "DvrSpec",
    "RationalCenter",
    "TruncatedCenter",
    "center_ideal",
    "dvr_ram_index",
    "make_dvr_spec",
    "mono_val",
    "order_compare",
    "parse_center",
]


@dataclass(frozen=True)
class RationalCenter:
    a: Fraction

    def text(self) -> str:
        return f"rat:{format_rational(self.a)}"

    def poly(self) -> Poly:
        return X - self.a


@dataclass(frozen=True)
class AlgebraicCenter:
    q: Poly
    cert: QpCertificate | None = None

    def text(self) -> str:
        return "alg:" + str(self.q).replace(" ", "")

    def poly(self) -> Poly:
        return self.q

    def __eq__(self, other):
        return isinstance(other, AlgebraicCenter) and self.q == other.q

    def __hash__(self):
        return hash(("alg", self.q))


@dataclass(frozen=True)
class TruncatedCenter:
    a: Fraction
    precision: int
    declared_e: int = 1

    def text(self) -> str:
        return f"trunc:a={format_rational(self.a)},N={self.precision},e={self.declared_e}"

    def poly(self) -> Poly:
        return X - self.a


Center = Union[RationalCenter, AlgebraicCenter, TruncatedCenter]

_TRUNC_RE = re.compile(r"^a=([^,]+),N=(\d+)(?:,e=(\d+))?$")


def parse_center(text: str) -> Center:
    """Parse ``rat:...``, ``alg:...`` or ``trunc:a=..,N=..,e=..``."""
    kind, _, body = text.strip().partition(":")
    body = body.strip()
    if kind == "rat":
        return RationalCenter(parse_rational(body))
    if kind == "alg":
        return AlgebraicCenter(parse_poly(body))
    if kind == "trunc":
        m = _TRUNC_RE.match(re.sub(r"\s+", "", body))
        if not m:
            raise ParseError(f"bad truncated center {text!r}")
        e = int(m.group(3) or 1)
        n = int(m.group(2))
        if n < 1 or e < 1:
            raise ParseError("precision and declared ramification must be positive")
        return TruncatedCenter(parse_rational(m.group(1)), n, e)
    raise ParseError(f"unknown center kind in {text!r}")


@dataclass(frozen=True)
class DvrSpec:
    """A validated triple (p, center, radius) in canonical form."""

    p: int
    center: Center
    radius: ExtRational

    @property
    def is_gauss(self) -> bool:
        return self.radius == 0

    def text(self) -> str:
        return f"p={self.p} center={self.center.text()} radius={format_ext(self.radius)}"

    def __str__(self):
        return f"({self.p}, {self.center.text()}, {format_ext(self.radius)})"


def make_dvr_spec(p: int, center: Center | str, radius: ExtRational | str | int) -> DvrSpec:
    check_prime(p)
    if isinstance(center, str):
        center = parse_center(center)
    if isinstance(radius, str):
        radius = parse_ext(radius)
    elif radius is not INF:
        radius = Fraction(radius)
    if radius is not INF and radius < 0:
        raise NegativeRadius(f"radius {radius} is negative")

    if isinstance(center, (RationalCenter, TruncatedCenter)):
        a = Fraction(center.a)
        if _vp_fast(p, a) < 0:
            raise CenterNotIntegral(f"center {format_rational(a)} has negative {p}-adic valuation")
    if radius == 0:
        return DvrSpec(p, RationalCenter(Fraction(0)), Fraction(0))

    if isinstance(center, TruncatedCenter):
        if radius is INF:
            return DvrSpec(p, center, INF)
        if radius > center.precision:
            raise RadiusExceedsPrecision(
                f"radius {radius} exceeds the precision {center.precision} of the truncated center"
            )
        return DvrSpec(p, RationalCenter(Fraction(center.a)), radius)
    if radius is INF:
        raise AlgebraicAtInfinity("an algebraic center at infinite radius gives a rank-2 valuation")
    if isinstance(center, RationalCenter):
        return DvrSpec(p, RationalCenter(Fraction(center.a)), radius)
    cert = certify_qp_irreducible(p, center.q)
    return DvrSpec(p, AlgebraicCenter(center.q, cert), radius)


def _rational_center_value(p: int, a: Fraction, delta: Fraction, f: Poly) -> ExtRational:
    # f = c * F with F primitive; for a = u/w (p prime to w) the coefficients of
    # F(X + a) and of the integer shift of sum F_k w^(n-k) Z^k by u have equal
    # p-adic valuations, so everything below stays in the integers.
    n = f.degree
    u, w = a.numerator, a.denominator
    coeffs = [int(x) * w ** (n - k) for k, x in enumerate(f.primitive_part.coeffs)]
    best: ExtRational = INF
    for i, c in enumerate(int_taylor_shift(coeffs, u)):
        if c:
            v = vp_int(p, c) + i * delta
            if v < best:
                best = v
    return best + _vp_fast(p, f.content)


def mono_val(spec: DvrSpec, f: Poly) -> ExtRational:
    """The valuation v_{p,alpha,delta}(f) of a polynomial f in Q[X]."""
    if not f:
        return INF
    p, c, delta = spec.p, spec.center, spec.radius
    if isinstance(c, RationalCenter):
        return _rational_center_value(p, c.a, delta, f)
    if isinstance(c, AlgebraicCenter):
        dist = per_root_distances(p, c.q, f)
        return _vp_fast(p, f.lc) + value_spectrum_sum(dist, delta)
    # truncated center
    if delta is not INF:
        if delta > c.precision:
            raise RadiusExceedsPrecision(f"radius {delta} exceeds precision {c.precision}")
        return _rational_center_value(p, c.a, delta, f)
    g = shift_compose(f, c.a)
    v0 = _vp_fast(p, g[0])
    n = c.precision
    rest = min((_vp_fast(p, x) + i * n for i, x in enumerate(g.coeffs) if i and x), default=INF)
    if v0 < rest:
        return v0
    raise InsufficientPrecision(
        f"value of {f} at the truncated center is not determined modulo {p}^{n}"
    )


def dvr_ram_index(spec: DvrSpec) -> int:
    """Ramification index e(W | Z_(p)) of the DVR described by ``spec``."""
    c, delta = spec.center, spec.radius
    if delta is INF:
        return c.declared_e
    if delta == 0 or isinstance(c, RationalCenter):
        return delta.denominator
    status = minimal_pair_status(spec.p, c.q, delta)
    if status.verdict != "Minimal":
        raise MinimalPairUnknown(f"{spec}: {status.reason}")
    e0, _ = ramification_residue(c.cert, c.q.degree)
    gamma = mono_val(spec, c.q)
    return e0 * (gamma * e0).denominator


@dataclass(frozen=True)
class CenterIdeal:
    """Contraction of the maximal ideal to Z_(p)[X]: (p) or (p, g)."""

    p: int
    gbar: Poly | None = None

    @property
    def kind(self) -> str:
        return "JustP" if self.gbar is None else "PAndG"

    def __str__(self):
        if self.gbar is None:
            return f"({self.p})"
        return f"({self.p}, {self.gbar})"


def _residue(p: int, a: Fraction) -> int:
    return a.numerator * pow(a.denominator, -1, p) % p


def center_ideal(spec: DvrSpec) -> CenterIdeal:
    p, c = spec.p, spec.center
    if spec.radius == 0:
        return CenterIdeal(p)
    if isinstance(c, AlgebraicCenter):
        return CenterIdeal(p, residue_min_poly(p, c.q))
    return CenterIdeal(p, Poly((-_residue(p, Fraction(c.a)) % p, 1)))


def order_compare(s1: DvrSpec, s2: DvrSpec) -> str:
    """Compare W1 n Q[X] and W2 n Q[X] by inclusion.

    Returns one of ``Equal``, ``Less`` (first contained in second),
    ``Greater``, ``Incomparable``, ``DifferentPrime``.
    """
    from .ballcalc import orbit_contains

    if s1.p != s2.p:
        return "DifferentPrime"
    less = orbit_contains(s1, s2)
    greater = orbit_contains(s2, s1)
    if less and greater:
        return "Equal"
    if less:
        return "Less"
    if greater:
        return "Greater"
    return "Incomparable"
