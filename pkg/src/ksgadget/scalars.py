"""Scalar tower used by vector sets.

Three kinds of numbers appear here:

* ``Fraction`` for rationals,
* ``Quad`` for ``a + b*sqrt(s)`` with rational ``a, b`` and squarefree ``s``,
* ``Approx`` for 128-bit binary floats held in a private mpmath context.

Arithmetic stays exact while it can. Mixing two different surds, or taking
the square root of a surd, falls back to ``Approx``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

import mpmath

ctx = mpmath.MPContext()
ctx.prec = 128

DIGITS = 40  # enough decimal digits to round-trip a 128-bit mantissa


def _squarefree_split(m: int) -> tuple[int, int] | None:
    """Return (k, s) with m = k*k*s and s squarefree, or None if m is too big."""
    if m == 0:
        return 0, 1
    k, s = 1, 1
    p = 2
    while p * p <= m and p < 100_000:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        k *= p ** (e // 2)
        if e % 2:
            s *= p
        p += 1 if p == 2 else 2
    if m > 1:
        r = math.isqrt(m)
        if r * r == m:
            k *= r
        elif p * p > m:
            s *= m
        else:
            return None
    return k, s


def to_mp(x) -> "mpmath.mpf":
    """Convert any scalar to an mpf of the private context."""
    if isinstance(x, Approx):
        return x.v
    if isinstance(x, Quad):
        return to_mp(x.a) + to_mp(x.b) * ctx.sqrt(x.s)
    if isinstance(x, Fraction):
        return ctx.mpf(x.numerator) / x.denominator
    if isinstance(x, int):
        return ctx.mpf(x)
    if isinstance(x, float):
        return ctx.mpf(x)
    if isinstance(x, str):
        return ctx.mpf(x)
    return ctx.mpf(x)


class Quad:
    """An element a + b*sqrt(s) of a real quadratic field."""

    __slots__ = ("a", "b", "s")

    def __new__(cls, a, b=0, s=2):
        a, b = Fraction(a), Fraction(b)
        if b == 0:
            return a
        split = _squarefree_split(int(s))
        if split is None:
            raise ValueError(f"cannot factor radicand {s}")
        k, s = split
        b *= k
        if s == 1:
            return a + b
        self = object.__new__(cls)
        self.a, self.b, self.s = a, b, s
        return self

    def __repr__(self) -> str:
        return f"Quad({self.a}, {self.b}, {self.s})"

    def __str__(self) -> str:
        return f"{self.a}+{self.b}*sqrt({self.s})"

    def _coerce(self, other):
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        if isinstance(other, Quad) and other.s == self.s:
            return other.a, other.b
        return None

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return _approx_binop(self, other, lambda x, y: x + y)
        return Quad(self.a + c[0], self.b + c[1], self.s)

    __radd__ = __add__

    def __neg__(self):
        return Quad(-self.a, -self.b, self.s)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return _approx_binop(self, other, lambda x, y: x * y)
        a, b = c
        return Quad(self.a * a + self.b * b * self.s, self.a * b + self.b * a, self.s)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        return _int_pow(self, k)

    def conj(self):
        return Quad(self.a, -self.b, self.s)

    def norm(self) -> Fraction:
        return self.a * self.a - self.b * self.b * self.s

    def inverse(self):
        n = self.norm()
        return Quad(self.a / n, -self.b / n, self.s)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Quad(self.a / other, self.b / other, self.s)
        if isinstance(other, Quad) and other.s == self.s:
            return self * other.inverse()
        return _approx_binop(self, other, lambda x, y: x / y)

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return _approx_binop(other, self, lambda x, y: x / y)

    def sign(self) -> int:
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sa == sb or sa == 0:
            return sb
        if sb == 0:
            return sa
        # opposite signs: compare a^2 with b^2 s
        d = self.a * self.a - self.b * self.b * self.s
        return sa if d > 0 else sb

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __eq__(self, other):
        if isinstance(other, Quad):
            return (self.a, self.b, self.s) == (other.a, other.b, other.s)
        return False

    def __hash__(self):
        return hash((self.a, self.b, self.s))

    def __lt__(self, other):
        return sign(self - other) < 0

    def __le__(self, other):
        return sign(self - other) <= 0

    def __gt__(self, other):
        return sign(self - other) > 0

    def __ge__(self, other):
        return sign(self - other) >= 0

    def __float__(self):
        return float(to_mp(self))


class Approx:
    """A 128-bit float. Results of inexact arithmetic land here."""

    __slots__ = ("v",)

    def __init__(self, v):
        self.v = to_mp(v)

    def __repr__(self) -> str:
        return f"Approx({ctx.nstr(self.v, 20)})"

    def __add__(self, other):
        return Approx(self.v + to_mp(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Approx(self.v - to_mp(other))

    def __rsub__(self, other):
        return Approx(to_mp(other) - self.v)

    def __mul__(self, other):
        return Approx(self.v * to_mp(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return Approx(self.v / to_mp(other))

    def __rtruediv__(self, other):
        return Approx(to_mp(other) / self.v)

    def __neg__(self):
        return Approx(-self.v)

    def __pow__(self, k: int):
        return Approx(self.v ** k)

    def __abs__(self):
        return Approx(abs(self.v))

    def __eq__(self, other):
        if isinstance(other, Approx):
            return self.v == other.v
        return False

    def __hash__(self):
        return hash(("approx", str(self.v)))

    def __lt__(self, other):
        return self.v < to_mp(other)

    def __le__(self, other):
        return self.v <= to_mp(other)

    def __gt__(self, other):
        return self.v > to_mp(other)

    def __ge__(self, other):
        return self.v >= to_mp(other)

    def __float__(self):
        return float(self.v)


Scalar = Union[Fraction, Quad, Approx]


def _int_pow(x, k: int):
    if not isinstance(k, int) or k < 0:
        raise ValueError("only non-negative integer powers are supported")
    out = Fraction(1)
    for _ in range(k):
        out = out * x
    return out


def _approx_binop(x, y, op):
    return Approx(op(to_mp(x), to_mp(y)))


def as_scalar(x) -> Scalar:
    """Lift ints, floats, strings and mpf values into the tower."""
    if isinstance(x, (Fraction, Quad, Approx)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Approx(x)


def is_exact(x) -> bool:
    return isinstance(x, (int, Fraction, Quad))


def sign(x) -> int:
    if isinstance(x, Quad):
        return x.sign()
    if isinstance(x, Approx):
        return int(ctx.sign(x.v))
    return (x > 0) - (x < 0)


def is_zero(x) -> bool:
    return sign(x) == 0


def sqrt(x) -> Scalar:
    """Square root, exact for non-negative rationals."""
    if isinstance(x, int):
        x = Fraction(x)
    if isinstance(x, Fraction):
        if x < 0:
            raise ValueError("square root of a negative number")
        m = x.numerator * x.denominator
        split = _squarefree_split(m)
        if split is None:
            return Approx(ctx.sqrt(to_mp(x)))
        k, s = split
        return Quad(0, Fraction(k, x.denominator), s)
    return Approx(ctx.sqrt(to_mp(x)))


def square(x) -> Scalar:
    return x * x


def to_json(x) -> dict:
    x = as_scalar(x)
    if isinstance(x, Fraction):
        return {"r": str(x)}
    if isinstance(x, Quad):
        return {"quad": {"a": str(x.a), "b": str(x.b), "s": x.s}}
    return {"f": ctx.nstr(x.v, DIGITS)}


def from_json(obj) -> Scalar:
    if isinstance(obj, (int, str)) and not isinstance(obj, bool):
        return Fraction(obj) if isinstance(obj, int) else Fraction(obj)
    if not isinstance(obj, dict) or len(obj) != 1:
        raise ValueError(f"malformed scalar entry: {obj!r}")
    if "r" in obj:
        return Fraction(obj["r"])
    if "quad" in obj:
        q = obj["quad"]
        return Quad(Fraction(q["a"]), Fraction(q["b"]), int(q["s"]))
    if "f" in obj:
        return Approx(ctx.mpf(obj["f"]))
    raise ValueError(f"malformed scalar entry: {obj!r}")
