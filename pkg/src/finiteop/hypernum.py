"""Scalar backends and terminating hypergeometric series.

Two backends are provided.  :data:`RATIONAL` works on :class:`fractions.Fraction`
values and is exact.  :class:`FloatBackend` wraps a private ``mpmath`` context
so that several precisions can coexist without touching global state.

Every routine below is written against plain arithmetic operators, so it runs
unchanged on either backend as long as its inputs were coerced first.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from numbers import Rational
from typing import Sequence

import mpmath

from .errors import DenominatorZero, GammaPole, InvalidArgument, IrrationalSqrt

DEFAULT_BITS = 256


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or a decimal literal such as ``"-0.125"`` exactly."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidArgument(f"not an exact rational literal: {text!r}") from exc


def format_scalar(x) -> str:
    if isinstance(x, Rational):
        return str(Fraction(x))
    return mpmath.nstr(x, 40, strip_zeros=True)


class RationalBackend:
    name = "rational"
    exact = True

    def coerce(self, x) -> Fraction:
        if isinstance(x, str):
            return parse_rational(x)
        if isinstance(x, Fraction):
            return x
        if isinstance(x, (int, Rational)):
            return Fraction(x)
        if isinstance(x, float):
            return Fraction(x)
        raise InvalidArgument(f"cannot represent {x!r} exactly")

    def sqrt(self, x: Fraction) -> Fraction:
        if x < 0:
            raise InvalidArgument("square root of a negative number")
        n, d = x.numerator, x.denominator
        rn, rd = isqrt(n), isqrt(d)
        if rn * rn != n or rd * rd != d:
            raise IrrationalSqrt(f"sqrt({x}) is not rational")
        return Fraction(rn, rd)

    def is_zero(self, x) -> bool:
        return x == 0

    def __repr__(self):
        return "RationalBackend()"

    def __eq__(self, other):
        return isinstance(other, RationalBackend)

    def __hash__(self):
        return hash("rational")


class FloatBackend:
    """Binary floating point with a fixed mantissa length (``bits`` >= 53)."""

    name = "float"
    exact = False

    def __init__(self, bits: int = DEFAULT_BITS):
        if bits < 53:
            raise InvalidArgument("float backend needs at least 53 bits")
        self.bits = bits
        self.ctx = mpmath.MPContext()
        self.ctx.prec = bits

    def coerce(self, x):
        if isinstance(x, str):
            x = parse_rational(x)
        if isinstance(x, Rational) and not isinstance(x, int):
            x = Fraction(x)
            return self.ctx.mpf(x.numerator) / self.ctx.mpf(x.denominator)
        return self.ctx.mpf(x)

    def sqrt(self, x):
        if x < 0:
            raise InvalidArgument("square root of a negative number")
        return self.ctx.sqrt(x)

    def is_zero(self, x) -> bool:
        return x == 0

    def __repr__(self):
        return f"FloatBackend(bits={self.bits})"

    def __eq__(self, other):
        return isinstance(other, FloatBackend) and other.bits == self.bits

    def __hash__(self):
        return hash(("float", self.bits))


RATIONAL = RationalBackend()


def as_integer(x) -> int | None:
    """Return ``x`` as an ``int`` when it is integral, else ``None``."""
    if isinstance(x, int):
        return x
    if isinstance(x, Rational):
        x = Fraction(x)
        return x.numerator if x.denominator == 1 else None
    try:
        if x == int(x):
            return int(x)
    except (TypeError, ValueError, OverflowError):
        pass
    return None


def is_nonpositive_integer(x) -> bool:
    k = as_integer(x)
    return k is not None and k <= 0


def pochhammer(a, n: int):
    """Rising factorial ``a (a+1) ... (a+n-1)``; equals 1 for ``n == 0``."""
    if n < 0:
        raise InvalidArgument("pochhammer length must be non-negative")
    result = a * 0 + 1
    for j in range(n):
        result *= a + j
    return result


@dataclass(frozen=True)
class HypTerminating:
    """A pFq series whose first upper parameter is a non-positive integer ``-n``.

    The sum stops at ``j = n``.  Other upper parameters may vanish earlier,
    which only makes later terms zero.
    """

    upper: tuple
    lower: tuple
    z: object

    def __post_init__(self):
        object.__setattr__(self, "upper", tuple(self.upper))
        object.__setattr__(self, "lower", tuple(self.lower))
        if not self.upper:
            raise InvalidArgument("at least one upper parameter is required")
        if not is_nonpositive_integer(self.upper[0]):
            raise InvalidArgument(
                f"first upper parameter must be a non-positive integer, got {self.upper[0]}")

    @property
    def length(self) -> int:
        """Index of the last term, ``n``."""
        return -as_integer(self.upper[0])

    @property
    def order(self) -> str:
        return f"{len(self.upper)}F{len(self.lower)}"


def hyp(upper: Sequence, lower: Sequence, z) -> HypTerminating:
    return HypTerminating(tuple(upper), tuple(lower), z)


def eval_terminating(h: HypTerminating):
    """Sum the series by the term-ratio recurrence.

    Raises :class:`DenominatorZero` when ``(c)_j`` vanishes for some lower
    parameter ``c`` and some ``j <= n``.
    """
    n = h.length
    for c in h.lower:
        for j in range(n):
            if c + j == 0:
                raise DenominatorZero(
                    f"lower parameter {c} gives a zero Pochhammer at j={j + 1} <= {n}")
    one = h.z * 0 + 1
    term = one
    total = one
    for j in range(n):
        num = one
        for a in h.upper:
            num *= a + j
        if num == 0:
            break
        den = one * (j + 1)
        for c in h.lower:
            den *= c + j
        term = term * num * h.z / den
        total += term
    return total


def pfaff_transform_rhs(a, b, c, z):
    """``(1-z)^(-b) 2F1(c-a, b; c; z/(z-1))`` for a non-positive integer ``b``.

    Equal to ``2F1(a, b; c; z)`` wherever both terminating sums are defined.
    """
    if not is_nonpositive_integer(b):
        raise InvalidArgument("pfaff_transform_rhs needs b to be a non-positive integer")
    if z == 1:
        raise InvalidArgument("z = 1 is outside the domain of the transformation")
    m = -as_integer(b)
    prefactor = (1 - z) ** m
    return prefactor * eval_terminating(hyp((b, c - a), (c,), z / (z - 1)))


def pfaff_lhs(a, b, c, z):
    """``2F1(a, b; c; z)`` terminated by ``b`` (same termination as the rhs)."""
    return eval_terminating(hyp((b, a), (c,), z))


def thomae_prefactor(a, b, c, d, e):
    """``G(d) G(d+e-a-b-c) / (G(d+e-a-b) G(d-c))`` for ``c = -n``, as ``(s)_n / (d)_n``.

    Here ``s = d+e-a-b``.  The Gamma quotient is reduced before evaluation so
    no transcendental function is needed.
    """
    if not is_nonpositive_integer(c):
        raise InvalidArgument("thomae_prefactor needs c to be a non-positive integer")
    n = -as_integer(c)
    s = d + e - a - b
    for arg in (d, s - c, s, d - c):
        if is_nonpositive_integer(arg):
            raise GammaPole(f"Gamma argument {arg} is a pole")
    return pochhammer(s, n) / pochhammer(d, n)


def thomae_transform_rhs(a, b, c, d, e):
    """Right-hand side of the terminating Thomae relation at unit argument.

    ``3F2(a, b, c; d, e; 1) = prefactor * 3F2(e-a, e-b, c; d+e-a-b, e; 1)``
    with ``c`` a non-positive integer.
    """
    pref = thomae_prefactor(a, b, c, d, e)
    one = d * 0 + 1
    return pref * eval_terminating(hyp((c, e - a, e - b), (d + e - a - b, e), one))


def thomae_lhs(a, b, c, d, e):
    one = d * 0 + 1
    return eval_terminating(hyp((c, a, b), (d, e), one))
