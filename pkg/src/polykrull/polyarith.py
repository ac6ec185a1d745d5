"""Dense univariate polynomials over Q, resultants, Newton polygons and a
little arithmetic in F_p[X].

A :class:`Poly` stores its coefficients as a tuple of ``Fraction`` indexed by
exponent, with no trailing zeros; the zero polynomial has no coefficients.
Polynomials over F_p are plain lists of ints in ``range(p)``, low degree
first, and only live inside this module and :mod:`polykrull.algext`.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb, gcd
from typing import Iterable, Iterator, Sequence

from sympy import factorint

from .errors import ParseError, ZeroPolynomial
from .exactnum import INF, ExtRational, _vp_fast, check_prime, format_rational, lcm

__all__ = [
    "Poly",
    "ValuationSpectrum",
    "X",
    "difference_polynomial",
    "fp_irreducible",
    "fp_radical",
    "int_taylor_shift",
    "newton_root_valuations",
    "parse_poly",
    "resultant",
    "shift_compose",
]


class Poly:
    """Immutable polynomial in X with rational coefficients."""

    __slots__ = ("coeffs", "__dict__")

    def __init__(self, coeffs: Iterable = ()):
        c = [x if isinstance(x, Fraction) else Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def const(cls, c) -> "Poly":
        return cls((c,))

    @classmethod
    def monomial(cls, k: int, c=1) -> "Poly":
        return cls([0] * k + [c])

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        if not self.coeffs:
            raise ZeroPolynomial("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    # -- content ------------------------------------------------------------

    @cached_property
    def content(self) -> Fraction:
        """Positive rational c with self/c integral and primitive; 0 for zero."""
        if not self.coeffs:
            return Fraction(0)
        num = 0
        den = 1
        for c in self.coeffs:
            num = gcd(num, c.numerator)
            den = lcm(den, c.denominator)
        return Fraction(num, den)

    @cached_property
    def primitive_part(self) -> "Poly":
        if not self.coeffs:
            return self
        c = self.content
        return Poly(x / c for x in self.coeffs)

    def monic(self) -> "Poly":
        lc = self.lc
        return Poly(x / lc for x in self.coeffs)

    def denominator(self) -> int:
        d = 1
        for c in self.coeffs:
            d = lcm(d, c.denominator)
        return d

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _lift(other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other)
        return NotImplemented

    def __neg__(self):
        return Poly(-c for c in self.coeffs)

    def __add__(self, other):
        other = Poly._lift(other)
        if other is NotImplemented:
            return other
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return Poly(out)

    __radd__ = __add__

    def __sub__(self, other):
        other = Poly._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly()
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other: "Poly"):
        other = Poly._lift(other)
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return Poly(), self
        quo = [Fraction(0)] * (dq + 1)
        lc = other.coeffs[-1]
        db = len(other.coeffs) - 1
        for k in range(dq, -1, -1):
            c = rem[k + db] / lc
            quo[k] = c
            if c:
                for j, y in enumerate(other.coeffs):
                    rem[k + j] -= c * y
        return Poly(quo), Poly(rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exquo(self, other) -> "Poly":
        """Exact quotient; raises ArithmeticError if ``other`` does not divide."""
        if isinstance(other, (int, Fraction)):
            return Poly(c / other for c in self.coeffs)
        q, r = divmod(self, other)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, Poly) else Poly()
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "Poly":
        return Poly(i * c for i, c in enumerate(self.coeffs) if i)

    def low_order(self) -> int:
        """Multiplicity of X as a factor (the X-adic order); 0 for constants."""
        for i, c in enumerate(self.coeffs):
            if c:
                return i
        raise ZeroPolynomial("zero polynomial")

    # -- text ---------------------------------------------------------------

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = format_rational(a)
            else:
                mono = "X" if k == 1 else f"X^{k}"
                body = mono if a == 1 else f"{format_rational(a)}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"Poly({str(self)!r})"


X = Poly((0, 1))

_TERM_RE = re.compile(
    r"^(?:(?P<c>\d+(?:/\d+)?)(?:\*?(?P<x1>X)(?:\^(?P<e1>\d+))?)?|(?P<x2>X)(?:\^(?P<e2>\d+))?)$"
)


def parse_poly(text: str) -> Poly:
    """Parse ``"3/4*X^2 - X + 5"``-style input; whitespace is ignored."""
    s = re.sub(r"\s+", "", text).replace("−", "-").replace("**", "^").replace("x", "X")
    if not s:
        raise ParseError("empty polynomial")
    whole = re.fullmatch(r"\((.+)\)/(\d+)", s)
    if whole:
        d = int(whole.group(2))
        if d == 0:
            raise ParseError("division by zero")
        return parse_poly(whole.group(1)) * Fraction(1, d)
    terms = re.findall(r"[+-]?[^+-]+", s)
    if "".join(terms) != s:
        raise ParseError(f"cannot parse polynomial {text!r}")
    out: dict[int, Fraction] = {}
    for term in terms:
        sign = -1 if term[0] == "-" else 1
        body = term.lstrip("+-")
        scale = Fraction(1)
        tail = re.fullmatch(r"(.*X(?:\^\d+)?)/(\d+)", body)
        if tail:
            if int(tail.group(2)) == 0:
                raise ParseError("division by zero")
            body, scale = tail.group(1), Fraction(1, int(tail.group(2)))
        m = _TERM_RE.match(body)
        if not m:
            raise ParseError(f"bad term {term!r} in {text!r}")
        if m.group("x2"):
            c, e = Fraction(1), int(m.group("e2") or 1)
        else:
            c = Fraction(m.group("c"))
            e = int(m.group("e1") or 1) if m.group("x1") else 0
        out[e] = out.get(e, Fraction(0)) + sign * c * scale
    deg = max(out)
    return Poly(out.get(i, 0) for i in range(deg + 1))


# ---------------------------------------------------------------------------
# shift, resultants
# ---------------------------------------------------------------------------


def shift_compose(f: Poly, a) -> Poly:
    """Return f(X + a) by repeated synthetic division (Taylor shift)."""
    a = Fraction(a)
    c = list(f.coeffs)
    n = len(c) - 1
    if n <= 0 or a == 0:
        return f
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            c[j] += a * c[j + 1]
    return Poly(c)


def _exq(a, b):
    if isinstance(a, Poly):
        return a.exquo(b)
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division in resultant")
        return q
    return a / b


def _trim(v: list) -> list:
    while v and not v[-1]:
        v.pop()
    return v


def _prem(A: list, B: list) -> list:
    """Pseudo-remainder of A by B (coefficient lists, low degree first)."""
    R = list(A)
    db = len(B) - 1
    b = B[-1]
    e = len(A) - len(B) + 1
    while R and len(R) - 1 >= db:
        dr = len(R) - 1
        c = R[-1]
        R = [b * r for r in R]
        shift = dr - db
        for i, bi in enumerate(B):
            R[i + shift] = R[i + shift] - c * bi
        R.pop()
        _trim(R)
        e -= 1
    if e > 0:
        be = b**e
        R = [be * r for r in R]
    return R


def resultant(A: Sequence, B: Sequence, one=Fraction(1)):
    """Resultant of two polynomials given as coefficient lists over a domain.

    Coefficients may be ``Fraction`` or :class:`Poly` (for resultants of
    bivariate polynomials with respect to the outer variable).  Uses the
    subresultant pseudo-remainder sequence, so all divisions are exact.
    """
    A = _trim(list(A))
    B = _trim(list(B))
    zero = one * 0
    if not A or not B:
        return zero
    s = 1
    if len(A) < len(B):
        A, B = B, A
        if (len(A) - 1) % 2 and (len(B) - 1) % 2:
            s = -s
    g = one
    h = one
    while len(B) - 1 > 0:
        da, db = len(A) - 1, len(B) - 1
        d = da - db
        if da % 2 and db % 2:
            s = -s
        R = _prem(A, B)
        A = B
        div = g * h**d
        B = [_exq(r, div) for r in R]
        if not B:
            return zero
        g = A[-1]
        if d == 0:
            pass
        elif d == 1:
            h = g
        else:
            h = _exq(g**d, h ** (d - 1))
    da = len(A) - 1
    h = _exq(B[-1] ** da, h ** (da - 1)) if da >= 1 else one
    return h * s


def _binomial_shift_in_y(f: Poly) -> list[Poly]:
    """Coefficients (in Y, low first) of f(X + Y) as polynomials in X."""
    m = f.degree
    out = []
    for k in range(m + 1):
        out.append(Poly(comb(i, k) * f.coeffs[i] for i in range(k, m + 1)))
    return out


def normalize_primitive(f: Poly) -> Poly:
    """Primitive integer polynomial with positive leading coefficient."""
    if not f:
        return f
    g = f.primitive_part
    return -g if g.lc < 0 else g


def difference_polynomial(q: Poly, f: Poly) -> Poly:
    """Res_Y(q(Y), f(X+Y)): roots are beta - alpha' for f(beta) = q(alpha') = 0.

    ``q`` must be monic; the result is normalized to a primitive integer
    polynomial with positive leading coefficient.
    """
    if not f:
        raise ZeroPolynomial("difference_polynomial of the zero polynomial")
    if not q.is_monic() or q.degree < 1:
        raise ValueError("q must be monic of degree >= 1")
    if f.degree == 0:
        return Poly.const(1)
    if q.degree == 1:
        return normalize_primitive(shift_compose(f, -q.coeffs[0]))
    if not q.is_integral():
        qy = [Poly.const(c) for c in q.coeffs]
        return normalize_primitive(resultant(qy, _binomial_shift_in_y(f), one=Poly.const(1)))
    # R(X) has degree deg q * deg f: evaluate it at that many + 1 integers with
    # integer resultants and interpolate, which avoids rational arithmetic in X.
    qi = [int(c) for c in q.coeffs]
    fi = [int(c) for c in f.primitive_part.coeffs]
    npts = q.degree * f.degree + 1
    values = [resultant(qi, int_taylor_shift(fi, x), one=1) for x in range(npts)]
    return normalize_primitive(_interpolate_consecutive(values))


def int_taylor_shift(c: list[int], a: int) -> list[int]:
    """Coefficients (low first) of h(X + a) for an integer coefficient list h."""
    c = list(c)
    n = len(c) - 1
    for i in range(n):
        for j in range(n - 1, i - 1, -1):
            c[j] += a * c[j + 1]
    return c


def _interpolate_consecutive(values: list[int]) -> Poly:
    """The polynomial of degree < len(values) taking values[k] at X = k."""
    coef = [Fraction(v) for v in values]
    n = len(coef)
    for j in range(1, n):  # Newton divided differences at nodes 0, 1, ..., n-1
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / j
    out = [coef[-1]]
    for k in range(n - 2, -1, -1):  # Horner in the Newton basis: out * (X - k) + coef[k]
        shifted = [Fraction(0)] + out
        for i, c in enumerate(out):
            shifted[i] -= k * c
        shifted[0] += coef[k]
        out = shifted
    return Poly(out)


# ---------------------------------------------------------------------------
# Newton polygons
# ---------------------------------------------------------------------------


def _spectrum_key(entry):
    v = entry[0]
    return (1, 0) if v is INF else (0, v)


@dataclass(frozen=True)
class ValuationSpectrum:
    """Multiset of root valuations, as sorted ``(value, multiplicity)`` pairs."""

    entries: tuple[tuple[ExtRational, int], ...] = ()

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[ExtRational, int]]) -> "ValuationSpectrum":
        merged: dict = {}
        for v, m in pairs:
            if m < 0:
                raise ValueError("negative multiplicity")
            if m:
                merged[v] = merged.get(v, 0) + m
        return cls(tuple(sorted(merged.items(), key=_spectrum_key)))

    @property
    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def union(self, other: "ValuationSpectrum") -> "ValuationSpectrum":
        return ValuationSpectrum.from_pairs(self.entries + other.entries)

    __or__ = union

    def divided(self, k: int) -> "ValuationSpectrum | None":
        """Every multiplicity divided by k, or None when some is not divisible."""
        if any(m % k for _, m in self.entries):
            return None
        return ValuationSpectrum(tuple((v, m // k) for v, m in self.entries))

    def max_value(self) -> ExtRational | None:
        return self.entries[-1][0] if self.entries else None

    def finite_values(self) -> list[Fraction]:
        return [v for v, _ in self.entries if v is not INF]

    def count_at_least(self, bound) -> int:
        return sum(m for v, m in self.entries if v >= bound)

    def as_dict(self) -> list[list]:
        return [[str(v) if v is INF else format_rational(v), m] for v, m in self.entries]

    def __str__(self):
        inner = ", ".join(f"({'inf' if v is INF else format_rational(v)}, {m})" for v, m in self.entries)
        return "{" + inner + "}"


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_hull(points: Sequence[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    hull: list = []
    for pt in sorted(points):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()
        hull.append(pt)
    return hull


def newton_root_valuations(p: int, f: Poly) -> ValuationSpectrum:
    """Multiset of v_p over the roots of f in C_p, read off the Newton polygon."""
    if not f:
        raise ZeroPolynomial("Newton polygon of the zero polynomial")
    check_prime(p)
    k = f.low_order()
    pairs: list[tuple[ExtRational, int]] = [(INF, k)] if k else []
    pts = [(i, _vp_fast(p, c)) for i, c in enumerate(f.coeffs) if i >= k and c]
    hull = lower_hull(pts)
    for (i1, y1), (i2, y2) in zip(hull, hull[1:]):
        pairs.append(((y1 - y2) / (i2 - i1), i2 - i1))
    return ValuationSpectrum.from_pairs(pairs)


# ---------------------------------------------------------------------------
# F_p[X]
# ---------------------------------------------------------------------------


def fp_reduce(p: int, f: Poly) -> list[int]:
    """Image of a p-integral polynomial in F_p[X]."""
    out = []
    for c in f.coeffs:
        if c.denominator % p == 0:
            raise ValueError(f"coefficient {c} is not {p}-integral")
        out.append(c.numerator * pow(c.denominator, -1, p) % p)
    return _trim(out)


def fp_to_poly(h: Sequence[int]) -> Poly:
    return Poly(h)


def _fp_add(p, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    return _trim(out)


def _fp_sub(p, a, b):
    return _fp_add(p, a, [(-x) % p for x in b])


def _fp_mul(p, a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def _fp_divmod(p, a, b):
    if not b:
        raise ZeroDivisionError("division by zero in F_p[X]")
    rem = list(a)
    db = len(b) - 1
    inv = pow(b[-1], -1, p)
    if len(rem) - 1 < db:
        return [], _trim(rem)
    quo = [0] * (len(rem) - db)
    for k in range(len(rem) - 1 - db, -1, -1):
        c = rem[k + db] * inv % p
        quo[k] = c
        if c:
            for j, y in enumerate(b):
                rem[k + j] = (rem[k + j] - c * y) % p
    return _trim(quo), _trim(rem[:db])


def _fp_monic(p, a):
    if not a:
        return a
    inv = pow(a[-1], -1, p)
    return [x * inv % p for x in a]


def _fp_gcd(p, a, b):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, _fp_divmod(p, a, b)[1]
    return _fp_monic(p, a)


def _fp_powmod(p, base, e, mod):
    result = [1]
    base = _fp_divmod(p, base, mod)[1]
    while e:
        if e & 1:
            result = _fp_divmod(p, _fp_mul(p, result, base), mod)[1]
        base = _fp_divmod(p, _fp_mul(p, base, base), mod)[1]
        e >>= 1
    return result


def _fp_deriv(p, a):
    return _trim([i * x % p for i, x in enumerate(a)][1:])


def _fp_pth_root(p, a):
    # in F_p every coefficient is its own p-th root
    return _trim([a[i] for i in range(0, len(a), p)])


def fp_radical(p: int, f: Sequence[int]) -> list[int]:
    """Product of the distinct monic irreducible factors of f in F_p[X]."""
    f = _fp_monic(p, _trim(list(f)))
    if len(f) <= 1:
        return [1]
    d = _fp_deriv(p, f)
    if not d:
        return fp_radical(p, _fp_pth_root(p, f))
    g = _fp_gcd(p, f, d)
    w = _fp_divmod(p, f, g)[0]
    if len(g) <= 1:
        return _fp_monic(p, w)
    r = fp_radical(p, g)
    common = _fp_gcd(p, w, r)
    return _fp_monic(p, _fp_divmod(p, _fp_mul(p, w, r), common)[0])


def fp_pow(p: int, a: Sequence[int], n: int) -> list[int]:
    result = [1]
    for _ in range(n):
        result = _fp_mul(p, result, list(a))
    return result


def fp_irreducible(p: int, h) -> bool:
    """Rabin's irreducibility test in F_p[X].  ``h`` is a Poly or an int list."""
    check_prime(p)
    coeffs = fp_reduce(p, h) if isinstance(h, Poly) else _trim([x % p for x in h])
    n = len(coeffs) - 1
    if n < 1:
        return False
    if n == 1:
        return True
    f = _fp_monic(p, coeffs)
    x = [0, 1]
    if _fp_powmod(p, x, p**n, f) != _fp_divmod(p, x, f)[1]:
        return False
    for r in factorint(n):
        t = _fp_powmod(p, x, p ** (n // r), f)
        if len(_fp_gcd(p, _fp_sub(p, t, x), f)) > 1:
            return False
    return True
