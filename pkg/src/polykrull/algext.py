"""Certified facts about algebraic elements of the p-adic integers.

An algebraic center is given by a monic integer polynomial ``q``.  We never
factor over Q_p: ``q`` is accepted only when one of four cheap criteria
proves it irreducible there (degree one, irreducible mod p, Eisenstein, or
a single Newton slope whose denominator is the degree).  Everything else is
rejected with :class:`CannotCertify`.

Distances between roots are computed from the Newton polygon of the
difference polynomial ``Res_Y(q(Y), f(X+Y))``; no arithmetic in extension
fields is ever needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import (
    CannotCertify,
    DegreeOneCenter,
    MultiplicityNotDivisible,
    ResidueNotPurePower,
    RootsNotIntegral,
    ZeroPolynomial,
)
from .exactnum import INF, ExtRational, _vp_fast, check_prime
from .polyarith import (
    Poly,
    ValuationSpectrum,
    difference_polynomial,
    fp_irreducible,
    fp_pow,
    fp_radical,
    fp_reduce,
    newton_root_valuations,
)

__all__ = [
    "MinimalPairStatus",
    "QpCertificate",
    "certify_qp_irreducible",
    "conjugates_in_ball",
    "krasner_bound",
    "minimal_pair_status",
    "per_root_distances",
    "ramification_residue",
    "residue_min_poly",
]

DEGREE_ONE = "DegreeOne"
UNRAMIFIED = "Unramified"
EISENSTEIN = "Eisenstein"
SINGLE_SLOPE = "SingleSlope"


@dataclass(frozen=True)
class QpCertificate:
    kind: str
    witness: str
    slope: Fraction | None = None

    def __str__(self):
        if self.kind == SINGLE_SLOPE:
            return f"SingleSlope({self.slope})"
        return self.kind


@dataclass(frozen=True)
class MinimalPairStatus:
    verdict: str  # "Minimal" | "NotMinimal" | "Unknown"
    reason: str


@lru_cache(maxsize=4096)
def certify_qp_irreducible(p: int, q: Poly) -> QpCertificate:
    """First criterion (in a fixed order) proving ``q`` irreducible over Q_p."""
    check_prime(p)
    if not q:
        raise ZeroPolynomial("center polynomial is zero")
    if q.degree < 1 or not q.is_monic():
        raise CannotCertify(f"{q} is not monic of positive degree")
    spectrum = newton_root_valuations(p, q)
    if any(v < 0 for v, _ in spectrum):
        raise RootsNotIntegral(f"{q} has a root of negative {p}-adic valuation")
    if not q.is_integral():
        raise CannotCertify(f"{q} does not have integer coefficients")
    n = q.degree
    if n == 1:
        return QpCertificate(DEGREE_ONE, "degree 1")
    if fp_irreducible(p, q):
        return QpCertificate(UNRAMIFIED, f"{q} is irreducible mod {p}")
    low = q.coeffs[:-1]
    if all(_vp_fast(p, c) >= 1 for c in low) and _vp_fast(p, low[0]) == 1:
        return QpCertificate(EISENSTEIN, f"Eisenstein at {p}")
    if len(spectrum) == 1:
        (v, m), = spectrum
        if v is not INF and v.denominator == n:
            return QpCertificate(SINGLE_SLOPE, f"one Newton slope {v} with denominator {n}", v)
    raise CannotCertify(f"no irreducibility criterion over Q_{p} applies to {q}")


def ramification_residue(cert: QpCertificate, n: int) -> tuple[int, int]:
    """(ramification index, residue degree) of Q_p(alpha) over Q_p."""
    if cert.kind == DEGREE_ONE:
        return 1, 1
    if cert.kind == UNRAMIFIED:
        return 1, n
    if cert.kind in (EISENSTEIN, SINGLE_SLOPE):
        return n, 1
    raise ValueError(f"unknown certificate kind {cert.kind!r}")


def residue_min_poly(p: int, q: Poly) -> Poly:
    """Monic irreducible g in F_p[X] with q = g^k mod p."""
    certify_qp_irreducible(p, q)
    qbar = fp_reduce(p, q)
    g = fp_radical(p, qbar)
    n, d = len(qbar) - 1, len(g) - 1
    if d < 1 or n % d or not fp_irreducible(p, g) or fp_pow(p, g, n // d) != qbar:
        raise ResidueNotPurePower(f"{q} mod {p} is not a power of an irreducible")
    return Poly(g)


@lru_cache(maxsize=8192)
def per_root_distances(p: int, q_from: Poly, q_to: Poly) -> ValuationSpectrum:
    """Multiset {v_p(alpha - beta)} over the roots beta of ``q_to``, for one root
    alpha of ``q_from`` (which must be irreducible over Q_p, or of degree one).
    """
    check_prime(p)
    if not q_to:
        raise ZeroPolynomial("per_root_distances target is zero")
    n = q_from.degree
    if n < 1 or not q_from.is_monic():
        raise ValueError("q_from must be monic of positive degree")
    if q_to.degree == 0:
        return ValuationSpectrum()
    spectrum = newton_root_valuations(p, difference_polynomial(q_from, q_to))
    per_root = spectrum.divided(n)
    if per_root is None:
        raise MultiplicityNotDivisible(
            f"distance multiplicities of {q_to} from roots of {q_from} are not divisible by {n}"
        )
    return per_root


def krasner_bound(p: int, q: Poly) -> Fraction:
    """omega(alpha): the largest v_p(alpha - alpha') over conjugates alpha' != alpha."""
    certify_qp_irreducible(p, q)
    if q.degree < 2:
        raise DegreeOneCenter("a degree-one center has no other conjugates")
    finite = per_root_distances(p, q, q).finite_values()
    return max(finite)


def conjugates_in_ball(p: int, q: Poly, delta) -> int:
    """Number of roots of q (alpha itself included) within distance delta of alpha."""
    certify_qp_irreducible(p, q)
    return per_root_distances(p, q, q).count_at_least(Fraction(delta))


def minimal_pair_status(p: int, center, delta) -> MinimalPairStatus:
    """Minimality of (alpha, delta); ``center`` is a rational or a center polynomial.

    Only exact answers are emitted as Minimal/NotMinimal; ramified centers
    inside their Krasner radius are reported Unknown.
    """
    delta = Fraction(delta)
    if not isinstance(center, Poly) or center.degree == 1:
        return MinimalPairStatus("Minimal", "degree-one center")
    cert = certify_qp_irreducible(p, center)
    omega = krasner_bound(p, center)
    if cert.kind == UNRAMIFIED:
        if delta > omega:
            return MinimalPairStatus("Minimal", "unramified center, radius above Krasner bound")
        return MinimalPairStatus("NotMinimal", "unramified center, radius at or below Krasner bound")
    if delta > omega:
        return MinimalPairStatus("Minimal", "radius above Krasner bound")
    return MinimalPairStatus("Unknown", "ramified center, radius at or below Krasner bound")


def value_spectrum_sum(spectrum: ValuationSpectrum, delta: ExtRational) -> ExtRational:
    """Sum over the multiset of min(delta, entry)."""
    total: ExtRational = Fraction(0)
    for v, m in spectrum:
        t = v if v < delta else delta
        if t is INF:
            return INF
        total += m * t
    return total
