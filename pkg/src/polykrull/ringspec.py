"""Rings between Z[X] and Q[X] given as intersections of unitary DVRs with Q[X].

A :class:`RingSpec` holds a finite table ``p -> [DvrSpec, ...]`` and a
default rule applied at every prime outside the table:

* ``None``     -- nothing; the ring is Z_(p)-free outside the table,
* ``"gauss"``  -- the Gauss valuation, i.e. Z_(p)[X] at those primes,
* :class:`DefaultRule` -- the DVR with a fixed integer center and a fixed
  positive radius at every remaining prime.

The ring is R = Q[X] n (n over all listed DVRs).  With an empty table and no
default, R = Q[X]; with an empty table and the Gauss default, R = Z[X].
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd
from typing import Iterable, Mapping, Union

import sympy
from sympy import factorint

from .ballcalc import reduce_family
from .errors import (
    AlgebraicAtInfinity,
    ConstructionFailed,
    IndexOutOfRange,
    NotIrreducible,
    NotKrull,
    ParseError,
    PoolTooSmall,
    ZeroPolynomial,
)
from .exactnum import (
    INF,
    AbelianGroupInv,
    canonicalize_group,
    check_prime,
    format_ext,
    format_rational,
    parse_ext,
    primes_up_to,
    vp_int,
)
from .monoval import (
    DvrSpec,
    RationalCenter,
    TruncatedCenter,
    center_ideal,
    dvr_ram_index,
    make_dvr_spec,
    mono_val,
    parse_center,
)
from .algext import per_root_distances
from .polyarith import X, Poly

__all__ = [
    "GAUSS",
    "Classification",
    "DefaultRule",
    "MembershipResult",
    "ProbeReport",
    "RingSpec",
    "class_group",
    "classify",
    "construct_with_class_group",
    "make_ring",
    "member",
    "nonunitary_prime_is_maximal",
    "probe_finite_character",
    "ring_from_json",
    "ring_to_json",
    "spectrum_summary",
    "unitary_prime_is_maximal",
]

GAUSS = "gauss"


@dataclass(frozen=True)
class DefaultRule:
    """The DVR (p, center, radius) at every prime outside the table."""

    center: int
    radius: Fraction

    def spec_at(self, p: int) -> DvrSpec:
        return make_dvr_spec(p, RationalCenter(Fraction(self.center)), self.radius)

    def text(self) -> str:
        return f"rule(center=rat:{self.center}, radius={format_rational(self.radius)})"


Default = Union[None, str, DefaultRule]


def _spec_sort_key(s: DvrSpec):
    r = s.radius
    return ((1, Fraction(0)) if r is INF else (0, r), s.center.text())


@dataclass(frozen=True)
class RingSpec:
    table: tuple[tuple[int, tuple[DvrSpec, ...]], ...] = ()
    default: Default = None

    @property
    def primes(self) -> list[int]:
        return [p for p, _ in self.table]

    def family(self, p: int) -> tuple[DvrSpec, ...]:
        for q, fam in self.table:
            if q == p:
                return fam
        return ()

    def default_spec_at(self, p: int) -> DvrSpec | None:
        if p in self.primes or self.default is None:
            return None
        if self.default == GAUSS:
            return make_dvr_spec(p, RationalCenter(Fraction(0)), 0)
        return self.default.spec_at(p)

    def specs(self) -> Iterable[tuple[int, int, DvrSpec]]:
        """(p, j, spec) over the table, j counted from 1."""
        for p, fam in self.table:
            for j, s in enumerate(fam, 1):
                yield p, j, s

    def default_text(self) -> str:
        if self.default is None:
            return "none"
        if self.default == GAUSS:
            return "gauss"
        return self.default.text()


def _make_default(default) -> Default:
    if default is None or default == "none":
        return None
    if default == GAUSS:
        return GAUSS
    if isinstance(default, DefaultRule):
        return default
    if isinstance(default, Mapping):
        center = parse_center(str(default["center"]))
        radius = parse_ext(str(default["radius"]))
        if not isinstance(center, RationalCenter) or center.a.denominator != 1:
            raise ParseError("default rule center must be an integer rational center")
        if radius is INF:
            raise AlgebraicAtInfinity("a rational center at infinite radius is not a DVR")
        if radius < 0:
            raise ParseError("default rule radius must be nonnegative")
        if radius == 0:
            return GAUSS
        return DefaultRule(center.a.numerator, radius)
    raise ParseError(f"unknown default {default!r}")


def make_ring(table: Mapping[int, Iterable] | None = None, default=None) -> RingSpec:
    """Build a RingSpec; families may hold DvrSpecs or ``(center, radius)`` pairs."""
    rows = []
    for p, fam in sorted((table or {}).items()):
        p = check_prime(int(p))
        specs = []
        for item in fam:
            if isinstance(item, DvrSpec):
                if item.p != p:
                    raise ParseError(f"spec {item} filed under prime {p}")
                specs.append(item)
            else:
                center, radius = item
                specs.append(make_dvr_spec(p, center, radius))
        if not specs:
            raise ParseError(f"empty family at prime {p}")
        rows.append((p, tuple(sorted(specs, key=_spec_sort_key))))
    return RingSpec(tuple(rows), _make_default(default))


# -- serialization -----------------------------------------------------------


def ring_to_dict(ring: RingSpec) -> dict:
    table = {
        str(p): [{"center": s.center.text(), "radius": format_ext(s.radius)} for s in fam]
        for p, fam in ring.table
    }
    if ring.default is None:
        default = "none"
    elif ring.default == GAUSS:
        default = "gauss"
    else:
        default = {
            "center": f"rat:{ring.default.center}",
            "radius": format_rational(ring.default.radius),
        }
    return {"table": table, "default": default}


def ring_to_json(ring: RingSpec) -> str:
    return json.dumps(ring_to_dict(ring), sort_keys=True, indent=2) + "\n"


def ring_from_dict(doc: Mapping) -> RingSpec:
    if not isinstance(doc, Mapping):
        raise ParseError("ring spec must be a JSON object")
    raw_table = doc.get("table", {}) or {}
    table = {}
    for key, fam in raw_table.items():
        try:
            p = int(key)
        except ValueError:
            raise ParseError(f"table key {key!r} is not a prime") from None
        try:
            table[p] = [(str(e["center"]), str(e["radius"])) for e in fam]
        except (KeyError, TypeError):
            raise ParseError(f"family at {key} must be a list of {{center, radius}} objects") from None
    return make_ring(table, doc.get("default", "none"))


def ring_from_json(text: str) -> RingSpec:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return ring_from_dict(doc)


# -- membership ----------------------------------------------------------------


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    witness: dict

    def __bool__(self):
        return self.member


def _denominator_primes(f: Poly) -> list[int]:
    return sorted(factorint(f.denominator())) if f else []


def member(ring: RingSpec, f: Poly) -> MembershipResult:
    """Decide f in R.  Outside the table only denominator primes of f matter."""
    for p, j, s in ring.specs():
        v = mono_val(s, f)
        if v < 0:
            return MembershipResult(False, {"where": "table", "p": p, "j": j, "value": format_ext(v)})
    checked = []
    if ring.default is not None:
        for p in _denominator_primes(f):
            if p in ring.primes:
                continue
            checked.append(p)
            v = mono_val(ring.default_spec_at(p), f)
            if v < 0:
                return MembershipResult(False, {"where": "default", "p": p, "value": format_ext(v)})
    return MembershipResult(True, {"where": "pass", "default_primes_checked": checked})


# -- finite character ------------------------------------------------------------


@dataclass(frozen=True)
class ProbeReport:
    bound: int
    considered: tuple[int, ...]
    hits: tuple[int, ...]

    @property
    def verdict(self) -> str:
        if self.considered and len(self.hits) == len(self.considered):
            return "AllPrimesHit"
        return "FiniteSupport"

    @property
    def density(self) -> Fraction:
        if not self.considered:
            return Fraction(0)
        return Fraction(len(self.hits), len(self.considered))

    def as_dict(self) -> dict:
        return {
            "bound": self.bound,
            "considered": len(self.considered),
            "hits": list(self.hits),
            "density": format_rational(self.density),
            "verdict": self.verdict,
        }


def probe_finite_character(ring: RingSpec, g: Poly, bound: int) -> ProbeReport:
    """Primes p <= bound whose DVRs have g in their maximal ideal."""
    if not g:
        raise ZeroPolynomial("probe polynomial must be nonzero")
    if not g.is_integral():
        raise ParseError("probe polynomial must have integer coefficients")
    considered, hits = [], []
    content = g.content.numerator
    for p in primes_up_to(bound):
        fam = ring.family(p)
        if fam:
            hit = any(mono_val(s, g) > 0 for s in fam)
        elif ring.default is None:
            continue
        elif ring.default == GAUSS:
            hit = content % p == 0
        else:
            hit = g(Fraction(ring.default.center)) % p == 0
        considered.append(p)
        if hit:
            hits.append(p)
    return ProbeReport(bound, tuple(considered), tuple(hits))


# -- classification --------------------------------------------------------------


@dataclass(frozen=True)
class Classification:
    krull: str  # "Yes" | "No" | "ConditionalYes"
    krull_witness: str | None = None
    probe_bound: int | None = None
    dedekind: bool | None = None
    almost_dedekind: bool | None = None
    ufd: bool | None = None
    pure: bool | None = None
    class_group: AbelianGroupInv | None = None
    assumptions: tuple[str, ...] = ()
    reduced: tuple[tuple[int, int, int], ...] = field(default=())  # (p, m_before, m_after)

    def as_dict(self) -> dict:
        return {
            "krull": self.krull,
            "krull_witness": self.krull_witness,
            "probe_bound": self.probe_bound,
            "dedekind": self.dedekind,
            "almost_dedekind": self.almost_dedekind,
            "ufd": self.ufd,
            "pure": self.pure,
            "class_group": None if self.class_group is None else _group_dict(self.class_group),
            "assumptions": list(self.assumptions),
        }


def _group_dict(g: AbelianGroupInv) -> dict:
    return {"torsion": list(g.torsion), "free_rank": g.free_rank, "text": str(g)}


def _reduced_table(ring: RingSpec) -> list[tuple[int, list[DvrSpec], list]]:
    return [(p, *reduce_family(list(fam))) for p, fam in ring.table]


def _assumptions(ring: RingSpec) -> list[str]:
    out = []
    for p, j, s in ring.specs():
        if isinstance(s.center, TruncatedCenter):
            out.append(f"center {s.center.text()} at p={p} (j={j}) is assumed transcendental over Q")
            out.append(
                f"ramification index {s.center.declared_e} of {s.center.text()} over Q_{p} is declared, not verified"
            )
    return out


def _is_unramified_shape(s: DvrSpec) -> bool:
    c = s.center
    if s.radius is INF:
        return c.declared_e == 1
    if s.radius.denominator != 1:
        return False
    if isinstance(c, RationalCenter):
        return True
    return c.cert.kind in ("DegreeOne", "Unramified")


def _class_group_of(reduced) -> AbelianGroupInv:
    summands: list[int] = []
    for _, kept, _removed in reduced:
        d = 0
        for s in kept:
            d = gcd(d, dvr_ram_index(s))
        summands.append(d)
        summands.extend([0] * (len(kept) - 1))
    return canonicalize_group(summands)


def _rule_battery(rule: DefaultRule) -> list[Poly]:
    out = []
    for g in (X, X - 1, X + 1, X - rule.center):
        if g not in out:
            out.append(g)
    return out


def classify(ring: RingSpec, probe_bound: int = 100) -> Classification:
    reduced = _reduced_table(ring)
    notes = _assumptions(ring)
    shrink = tuple((p, len(ring.family(p)), len(kept)) for p, kept, _ in reduced)
    for p, before, after in shrink:
        if after < before:
            notes.append(f"removed {before - after} superfluous DVR(s) at p={p}")

    if isinstance(ring.default, DefaultRule):
        rule = ring.default
        notes.append(f"finite character probed up to {probe_bound}")
        notes.append("irredundance of the default part is assumed, only the table is reduced")
        for g in _rule_battery(rule):
            report = probe_finite_character(ring, g, probe_bound)
            if g(Fraction(rule.center)) == 0:
                witness = (
                    f"{g} lies in the center of the default DVR at every prime outside the table "
                    f"(probe: {len(report.hits)}/{len(report.considered)} primes <= {probe_bound} hit)"
                )
                return Classification("No", witness, probe_bound, assumptions=tuple(notes), reduced=shrink)
        return Classification("ConditionalYes", None, probe_bound, assumptions=tuple(notes), reduced=shrink)

    group = _class_group_of(reduced)
    kept_all = [s for _, kept, _ in reduced for s in kept]
    all_algebraic_residue = ring.default is None and all(s.radius is INF for s in kept_all)
    ufd = group.is_trivial and all(len(kept) == 1 and _is_unramified_shape(kept[0]) for _, kept, _ in reduced)
    return Classification(
        "Yes",
        dedekind=all_algebraic_residue,
        almost_dedekind=all_algebraic_residue,
        ufd=ufd,
        pure=all(s.radius is not INF for s in kept_all),
        class_group=group,
        assumptions=tuple(notes),
        reduced=shrink,
    )


def class_group(ring: RingSpec) -> AbelianGroupInv:
    """Divisor class group: sum over p of Z/d_p + Z^(m_p - 1)."""
    if isinstance(ring.default, DefaultRule):
        verdict = classify(ring)
        if verdict.krull == "No":
            raise NotKrull(verdict.krull_witness)
        raise NotKrull("class group undefined: finite character is only conditionally established")
    return _class_group_of(_reduced_table(ring))


# -- prime ideals ------------------------------------------------------------------


def unitary_prime_is_maximal(ring: RingSpec, p: int, j: int) -> bool:
    """M_{p,j} n R is maximal iff the DVR is residually algebraic (radius inf)."""
    fam = ring.family(p)
    if not 1 <= j <= len(fam):
        raise IndexOutOfRange(f"no DVR with index {j} at prime {p}")
    return fam[j - 1].radius is INF


def _check_irreducible_over_q(q: Poly) -> None:
    if q.degree < 1:
        raise NotIrreducible(f"{q} is constant")
    x = sympy.Symbol("x")
    sp = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(q.coeffs)], x, domain="QQ")
    if not sp.is_irreducible:
        raise NotIrreducible(f"{q} is reducible over Q")


def _root_in_ball(s: DvrSpec, qm: Poly) -> bool:
    if s.radius is INF:
        return False  # a transcendental singleton holds no algebraic root
    return per_root_distances(s.p, s.center.poly(), qm).max_value() >= s.radius


def nonunitary_witness(ring: RingSpec, q: Poly) -> dict | None:
    """Where a root of q meets one of the balls, or None if nowhere."""
    _check_irreducible_over_q(q)
    qm = q.monic()
    for p, j, s in ring.specs():
        if _root_in_ball(s, qm):
            return {"where": "table", "p": p, "j": j}
    if ring.default is None:
        return None
    bad = set(factorint(qm.denominator())) | set(ring.primes)
    if ring.default == GAUSS:
        p = 2
        while p in bad:
            p = int(sympy.nextprime(p))
        return {"where": "default", "p": p}
    rule = ring.default
    at_center = qm(Fraction(rule.center))
    if at_center == 0:
        p = 2
        while p in bad:
            p = int(sympy.nextprime(p))
        return {"where": "default", "p": p}
    candidates = set(factorint(abs(at_center.numerator))) | set(factorint(qm.denominator()))
    for p in sorted(candidates - set(ring.primes)):
        if _root_in_ball(rule.spec_at(p), qm):
            return {"where": "default", "p": p}
    return None


def nonunitary_prime_is_maximal(ring: RingSpec, q: Poly) -> bool:
    """qQ[X] n R is maximal iff no root of q lies in any of the balls."""
    return nonunitary_witness(ring, q) is None


# -- construction ----------------------------------------------------------------------


def construct_with_class_group(group: AbelianGroupInv, prime_pool: list[int]) -> RingSpec:
    """A pure Krull domain with the prescribed divisor class group.

    Each torsion factor but the last gets its own prime with the single ball
    B(0, 1/e_i); the last prime carries m+1 disjoint balls of radius
    N + 1/e_n around 0, 1, ..., m, where N bounds their pairwise distances.
    """
    factors = list(group.torsion) or [1]
    m = group.free_rank
    pool = [check_prime(int(p)) for p in prime_pool]
    if len(set(pool)) != len(pool):
        raise PoolTooSmall("prime pool has repeated primes")
    if len(pool) < len(factors):
        raise PoolTooSmall(f"need {len(factors)} primes, pool has {len(pool)}")
    table: dict[int, list] = {}
    for e, p in zip(factors[:-1], pool):
        table[p] = [(RationalCenter(Fraction(0)), Fraction(1, e))]
    last_p, last_e = pool[len(factors) - 1], factors[-1]
    n_top = max((vp_int(last_p, j - i) for i, j in combinations(range(m + 1), 2)), default=0)
    radius = n_top + Fraction(1, last_e)
    table[last_p] = [(RationalCenter(Fraction(i)), radius) for i in range(m + 1)]
    ring = make_ring(table, None)

    for p, kept, removed in _reduced_table(ring):
        if removed:
            raise ConstructionFailed(f"family at {p} is redundant")
    got = class_group(ring)
    if got != group:
        raise ConstructionFailed(f"constructed class group {got} differs from {group}")
    return ring


# -- spectrum ---------------------------------------------------------------------------


def spectrum_summary(ring: RingSpec) -> dict:
    unitary = []
    for p, kept, _ in _reduced_table(ring):
        fam = ring.family(p)
        for s in kept:
            j = fam.index(s) + 1
            unitary.append(
                {
                    "p": p,
                    "j": j,
                    "spec": str(s),
                    "maximal": s.radius is INF,
                    "center_ideal": str(center_ideal(s)),
                }
            )
    if ring.default is None:
        default = None
    elif ring.default == GAUSS:
        default = "at every prime p outside the table: pZ[X]-type prime pR, not maximal"
    else:
        default = (
            f"at every prime p outside the table: the center of the DVR {ring.default.text()}, "
            "not maximal"
        )
    return {
        "unitary": unitary,
        "default_unitary": default,
        "nonunitary": "{fQ[X] n R : f irreducible over Q}",
    }
