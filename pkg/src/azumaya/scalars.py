"""Exact Gaussian-rational scalars and the bridge to floating point.

The base field of the whole engine is Q(i): numbers a + b*i with
arbitrary-precision rational a, b.  Everything downstream (matrices,
polynomials, ideals) stays in this field; floating point only enters
through :func:`to_approx` for eigenvalue work.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError

_INT_RE = re.compile(r"^[+-]?\d+$")
_FRAC_RE = re.compile(r"^[+-]?\d+/\d+$")


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"cannot build rational from {type(x).__name__}")


class GaussianRational:
    """a + b*i with exact rational components, stored in lowest terms."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", _as_fraction(re))
        object.__setattr__(self, "im", _as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    # -- basic predicates ------------------------------------------------

    def is_zero(self) -> bool:
        return not self.re and not self.im

    def is_one(self) -> bool:
        return self.re == 1 and not self.im

    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return not self.is_zero()

    # -- field arithmetic ------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        n = o.re * o.re + o.im * o.im
        if not n:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / n,
            (self.im * o.re - self.re * o.im) / n,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __pos__(self):
        return self

    def inverse(self) -> "GaussianRational":
        return GaussianRational(1) / self

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison / hashing ---------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    # -- display -----------------------------------------------------------

    def __repr__(self):
        return f"GaussianRational({self})"

    def __str__(self):
        return format_scalar(self)


ZERO = GaussianRational(0)
ONE = GaussianRational(1)
I = GaussianRational(0, 1)


def qi(re=0, im=0) -> GaussianRational:
    """Shorthand constructor accepting ints or Fractions."""
    return GaussianRational(re, im)


def to_approx(x: GaussianRational) -> complex:
    """Nearest double-precision complex to an exact scalar.

    float(Fraction) rounds correctly in CPython; componentwise rounding
    of re and im is therefore correct.  Magnitudes beyond double range
    overflow to inf, which signals the input is out of numeric-layer scope.
    """
    try:
        re = float(x.re)
    except OverflowError:
        re = float("inf") if x.re > 0 else float("-inf")
    try:
        im = float(x.im)
    except OverflowError:
        im = float("inf") if x.im > 0 else float("-inf")
    return complex(re, im)


def _format_fraction(f: Fraction) -> str:
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def format_scalar(x: GaussianRational) -> str:
    """Canonical text form: "a/b", "c/d*i", or "a/b+c/d*i"."""
    if x.is_zero():
        return "0"
    parts = []
    if x.re:
        parts.append(_format_fraction(x.re))
    if x.im:
        if x.im == 1:
            imtxt = "i"
        elif x.im == -1:
            imtxt = "-i"
        else:
            imtxt = f"{_format_fraction(x.im)}*i"
        if parts and not imtxt.startswith("-"):
            parts.append("+" + imtxt)
        else:
            parts.append(imtxt)
    return "".join(parts)


def _parse_rational(text: str) -> Fraction:
    if _INT_RE.match(text) or _FRAC_RE.match(text):
        return Fraction(text)
    raise ParseError(f"bad rational literal {text!r}")


def parse_scalar(text) -> GaussianRational:
    """Parse "a/b", "a/b+c/d*i", bare "i"/"-i", or plain integers.

    Integers are also accepted directly (JSON convenience).
    """
    if isinstance(text, GaussianRational):
        return text
    if isinstance(text, int):
        return GaussianRational(text)
    if not isinstance(text, str):
        raise ParseError(f"cannot parse scalar from {type(text).__name__}")
    s = text.replace(" ", "")
    if not s:
        raise ParseError("empty scalar")
    # split into at most two signed chunks
    chunks = []
    start = 0
    for k in range(1, len(s)):
        if s[k] in "+-" and s[k - 1] not in "+-/*^eE":
            chunks.append(s[start:k])
            start = k
    chunks.append(s[start:])
    if len(chunks) > 2:
        raise ParseError(f"too many terms in scalar {text!r}")
    re_part = Fraction(0)
    im_part = Fraction(0)
    seen_re = seen_im = False
    for chunk in chunks:
        sign = 1
        body = chunk
        while body and body[0] in "+-":
            if body[0] == "-":
                sign = -sign
            body = body[1:]
        if not body:
            raise ParseError(f"dangling sign in scalar {text!r}")
        if body.endswith("i"):
            if seen_im:
                raise ParseError(f"repeated imaginary part in {text!r}")
            seen_im = True
            core = body[:-1]
            if core.endswith("*"):
                core = core[:-1]
            im_part = sign * (_parse_rational(core) if core else Fraction(1))
        else:
            if seen_re:
                raise ParseError(f"repeated real part in {text!r}")
            seen_re = True
            re_part = sign * _parse_rational(body)
    return GaussianRational(re_part, im_part)
