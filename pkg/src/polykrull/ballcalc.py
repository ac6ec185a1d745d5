"""Ultrametric balls of C_p modulo the Galois group G_p.

The DVR spec (p, alpha, delta) corresponds to the Galois orbit of the closed
ball B(alpha, delta).  W_outer n Q[X] is contained in W_inner exactly when
B(alpha_inner, delta_inner) sits inside some conjugate of B(alpha_outer,
delta_outer); the existence of that conjugate is read off the largest
distance between alpha_inner and the roots of the outer center polynomial.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algext import per_root_distances
from .errors import DifferentPrime, InsufficientPrecision, RadiusExceedsPrecision
from .exactnum import INF, _vp_fast
from .monoval import DvrSpec, TruncatedCenter
from .polyarith import Poly

__all__ = ["BallOrbit", "orbit_contains", "orbit_equal", "reduce_family"]


def _singletons_conjugate(p: int, c1: TruncatedCenter, c2: TruncatedCenter) -> bool:
    # identical descriptions denote the same element
    if c1 == c2:
        return True
    if _vp_fast(p, c1.a - c2.a) < min(c1.precision, c2.precision):
        return False
    raise InsufficientPrecision(
        f"cannot decide conjugacy of {c1.text()} and {c2.text()} from their truncations"
    )


def _center_poly_within(spec: DvrSpec, bound) -> Poly:
    c = spec.center
    if isinstance(c, TruncatedCenter) and bound > c.precision:
        raise RadiusExceedsPrecision(
            f"radius {bound} exceeds the precision {c.precision} of {c.text()}"
        )
    return c.poly()


def orbit_contains(outer: DvrSpec, inner: DvrSpec) -> bool:
    """True iff W_outer n Q[X] is contained in W_inner n Q[X]."""
    if outer.p != inner.p:
        raise DifferentPrime(f"primes {outer.p} and {inner.p} differ")
    d_out, d_in = outer.radius, inner.radius
    if d_in < d_out:
        return False
    if d_out is INF:
        return _singletons_conjugate(outer.p, outer.center, inner.center)
    if d_out == 0:
        return True
    q_in = _center_poly_within(inner, d_out)
    q_out = outer.center.poly()
    return per_root_distances(outer.p, q_in, q_out).max_value() >= d_out


def orbit_equal(s1: DvrSpec, s2: DvrSpec) -> bool:
    if s1.p != s2.p:
        raise DifferentPrime(f"primes {s1.p} and {s2.p} differ")
    return s1.radius == s2.radius and orbit_contains(s1, s2)


@dataclass(frozen=True, eq=False)
class BallOrbit:
    """The Galois orbit [B_p(alpha, delta)], compared up to conjugation."""

    spec: DvrSpec

    def __eq__(self, other):
        if not isinstance(other, BallOrbit):
            return NotImplemented
        return self.spec.p == other.spec.p and orbit_equal(self.spec, other.spec)

    def __hash__(self):
        return hash((self.spec.p, self.spec.radius))

    def __le__(self, other: "BallOrbit") -> bool:
        """Ball containment: self sits inside a conjugate of other."""
        return orbit_contains(other.spec, self.spec)


def reduce_family(specs: list[DvrSpec]) -> tuple[list[DvrSpec], list[tuple[DvrSpec, str]]]:
    """Drop duplicate and superfluous DVRs from a family over one prime.

    A spec is superfluous when its ball lies inside the ball of another
    member: that member's ring is then already contained in it.  Returns
    ``(kept, removed)`` where ``removed`` pairs each dropped spec with a
    reason.
    """
    if not specs:
        return [], []
    p = specs[0].p
    if any(s.p != p for s in specs):
        raise DifferentPrime("reduce_family needs a single prime")
    distinct: list[DvrSpec] = []
    removed: list[tuple[DvrSpec, str]] = []
    for s in specs:
        twin = next((t for t in distinct if orbit_equal(t, s)), None)
        if twin is None:
            distinct.append(s)
        else:
            removed.append((s, f"duplicate of {twin}"))
    kept = []
    for s in distinct:
        host = next((t for t in distinct if t is not s and orbit_contains(t, s)), None)
        if host is None:
            kept.append(s)
        else:
            removed.append((s, f"ball inside that of {host}"))
    return kept, removed
