"""Exact numbers: rationals, p-adic valuations of rationals, the extended
value set Q u {inf}, and canonical forms of finitely generated abelian groups.

Rationals are :class:`fractions.Fraction`.  The point at infinity is the
singleton :data:`INF`; it is a tagged object, never a float.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd
from typing import Iterable, Union

from sympy import factorint

from .errors import NotPrime, ParseError

__all__ = [
    "INF",
    "Infinity",
    "ExtRational",
    "AbelianGroupInv",
    "as_fraction",
    "canonicalize_group",
    "check_prime",
    "format_ext",
    "format_rational",
    "is_prime",
    "parse_ext",
    "parse_group",
    "parse_rational",
    "primes_up_to",
    "vp_int",
    "vp_rational",
]


@total_ordering
class Infinity:
    """The value +inf: larger than every rational, absorbing under addition."""

    _instance: "Infinity | None" = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __hash__(self):
        return hash("polykrull.INF")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __gt__(self, other):
        return other is not self

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __reduce__(self):
        return (Infinity, ())


INF = Infinity()

ExtRational = Union[Fraction, Infinity]


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {x!r} as a rational")


_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``[sign]int[/posint]``, e.g. ``"-3/4"``."""
    m = _RATIONAL_RE.match(text.replace("−", "-"))
    if not m:
        raise ParseError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ParseError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def parse_ext(text: str) -> ExtRational:
    """Like :func:`parse_rational` but also accepts ``inf``."""
    if text.strip().lower() in ("inf", "infinity", "+inf"):
        return INF
    return parse_rational(text)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def format_ext(x: ExtRational) -> str:
    if x is INF:
        return "inf"
    return format_rational(x)


# Deterministic Miller-Rabin: these bases are exact for n < 3.3 * 10^24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_PRIME_LIMIT = 1 << 64


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p) -> int:
    """Return ``p`` as an int, or raise :class:`NotPrime`.

    Inputs of 2^64 or more are rejected even when prime.
    """
    if isinstance(p, bool) or not isinstance(p, int):
        raise NotPrime(f"{p!r} is not an integer")
    if p >= _PRIME_LIMIT:
        raise NotPrime(f"{p} exceeds the supported range (< 2^64)")
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    return p


def primes_up_to(bound: int) -> list[int]:
    if bound < 2:
        return []
    sieve = bytearray([1]) * (bound + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i, flag in enumerate(sieve) if flag]


def vp_int(p: int, n: int) -> int:
    """Exponent of ``p`` in the nonzero integer ``n``."""
    n = abs(n)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp_rational(p: int, x) -> ExtRational:
    """p-adic valuation of a rational; ``INF`` for zero."""
    check_prime(p)
    x = as_fraction(x)
    if x == 0:
        return INF
    return Fraction(vp_int(p, x.numerator) - vp_int(p, x.denominator))


def _vp_fast(p: int, x: Fraction) -> ExtRational:
    # internal variant for callers that already validated p
    if x == 0:
        return INF
    return Fraction(vp_int(p, x.numerator) - vp_int(p, x.denominator))


@dataclass(frozen=True)
class AbelianGroupInv:
    """Z/t_1 + ... + Z/t_k + Z^r with t_1 | t_2 | ... | t_k, every t_i >= 2."""

    torsion: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        if any(t < 2 for t in self.torsion):
            raise ValueError("invariant factors must be >= 2")
        if any(b % a for a, b in zip(self.torsion, self.torsion[1:])):
            raise ValueError("invariant factors must form a divisibility chain")
        if self.free_rank < 0:
            raise ValueError("free rank must be nonnegative")

    @property
    def is_trivial(self) -> bool:
        return not self.torsion and self.free_rank == 0

    def moduli(self) -> list[int]:
        """Encoding used on the command line: factors then one 0 per Z."""
        return list(self.torsion) + [0] * self.free_rank

    def __str__(self):
        parts = [f"Z/{t}" for t in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def canonicalize_group(summands: Iterable[int]) -> AbelianGroupInv:
    """Invariant-factor form of a direct sum of cyclic groups Z/dZ (d=0 is Z)."""
    free = 0
    by_prime: dict[int, list[int]] = {}
    for d in summands:
        d = int(d)
        if d < 0:
            raise ValueError(f"negative modulus {d}")
        if d == 0:
            free += 1
            continue
        for q, e in factorint(d).items():
            by_prime.setdefault(q, []).append(e)
    length = max((len(v) for v in by_prime.values()), default=0)
    factors = [1] * length
    for q, exps in by_prime.items():
        exps.sort(reverse=True)
        for i, e in enumerate(exps):
            factors[i] *= q**e
    return AbelianGroupInv(tuple(sorted(factors)), free)


def parse_group(text: str) -> AbelianGroupInv:
    """Parse a comma list of moduli (``"2,6,0,0"``); ``""`` is the trivial group."""
    text = text.strip()
    if not text:
        return AbelianGroupInv()
    try:
        moduli = [int(tok) for tok in text.split(",")]
    except ValueError:
        raise ParseError(f"bad group description {text!r}") from None
    if any(d < 0 for d in moduli):
        raise ParseError(f"negative modulus in {text!r}")
    return canonicalize_group(moduli)


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b
