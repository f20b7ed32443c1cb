"""Exact arithmetic in Q(sqrt(d)) and its complexification.

Every scalar that appears in the verification lives in the real quadratic
field Q(sqrt(d)) for a fixed square-free d, or in Q(sqrt(d)) + i*Q(sqrt(d)).
``RQuad`` stores a + b*sqrt(d) with rational a, b; ``CQuad`` is a complex
number with RQuad real and imaginary parts.  All comparisons are exact:
the sign of a + b*sqrt(d) is decided by squaring, never by floating point.

Floats only ever appear as a "shadow" for report margins and prefilters;
no verdict depends on them.
"""

from __future__ import annotations

import math
from fractions import Fraction


class FieldMismatchError(ValueError):
    """Two RQuad values with different square-free parts were combined."""


class NotInFieldError(ValueError):
    """A value was expected in Q(i*sqrt(d)) but has the wrong shape."""


def parse_rational(s: str | int | Fraction) -> Fraction:
    """Exact rational from an int, Fraction, "p/q" or finite decimal string."""
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    return Fraction(s.strip())


# ``parse_decimal`` is the same exact conversion, named for its main use:
# turning decimal point coordinates such as "0.630159" into 630159/1000000.
parse_decimal = parse_rational

_SQRT_CACHE: dict[int, float] = {}


def _sqrt_d(d: int) -> float:
    if d not in _SQRT_CACHE:
        _SQRT_CACHE[d] = math.sqrt(d)
    return _SQRT_CACHE[d]


class RQuad:
    """a + b*sqrt(d) with a, b in Q and d a fixed square-free integer > 1."""

    __slots__ = ("a", "b", "d")

    def __init__(self, a, b=0, d: int = 0):
        if d <= 1:
            raise ValueError("RQuad needs a square-free integer d > 1")
        self.a = a if isinstance(a, Fraction) else parse_rational(a)
        self.b = b if isinstance(b, Fraction) else parse_rational(b)
        self.d = d

    # -- construction helpers -------------------------------------------------

    @classmethod
    def of(cls, x, d: int) -> "RQuad":
        if isinstance(x, RQuad):
            if x.d != d:
                raise FieldMismatchError(f"sqrt({x.d}) value used in Q(sqrt({d}))")
            return x
        return cls(parse_rational(x), Fraction(0), d)

    @classmethod
    def root(cls, d: int, coef=1) -> "RQuad":
        """coef * sqrt(d)."""
        return cls(Fraction(0), parse_rational(coef), d)

    # -- ring/field operations -------------------------------------------------

    def _coerce(self, other) -> "RQuad":
        if isinstance(other, RQuad):
            if other.d != self.d:
                raise FieldMismatchError(
                    f"cannot mix sqrt({self.d}) and sqrt({other.d})"
                )
            return other
        if isinstance(other, (int, Fraction)):
            return RQuad(parse_rational(other), Fraction(0), self.d)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RQuad(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RQuad(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RQuad(-self.a, -self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RQuad(
            self.a * o.a + self.d * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.d,
        )

    __rmul__ = __mul__

    def inverse(self) -> "RQuad":
        # 1/(a+b*sqrt(d)) = (a-b*sqrt(d)) / (a^2 - d b^2); the norm is nonzero
        # for nonzero values because d is not a rational square.
        n = self.a * self.a - self.d * self.b * self.b
        if n == 0:
            if self.a == 0 and self.b == 0:
                raise ZeroDivisionError("inverse of zero in Q(sqrt(d))")
            raise ArithmeticError("zero norm for nonzero RQuad; d not square-free?")
        return RQuad(self.a / n, -self.b / n, self.d)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def conj_root(self) -> "RQuad":
        """Galois conjugate a - b*sqrt(d)."""
        return RQuad(self.a, -self.b, self.d)

    # -- order structure ---------------------------------------------------------

    def sign(self) -> int:
        """Exact sign of a + b*sqrt(d) via case analysis and squaring."""
        sa = (self.a > 0) - (self.a < 0)
        sb = (self.b > 0) - (self.b < 0)
        if sb == 0:
            return sa
        if sa == 0:
            return sb
        if sa == sb:
            return sa
        # Opposite signs: |a| vs |b|*sqrt(d); compare a^2 with d*b^2.
        lhs = self.a * self.a
        rhs = self.d * self.b * self.b
        if lhs == rhs:
            raise ArithmeticError("a^2 = d b^2 with a,b nonzero; d not square-free?")
        return sa if lhs > rhs else sb

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, RQuad):
            return NotImplemented
        return self.d == other.d and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b, self.d))

    def __lt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() < 0

    def __le__(self, other):
        o = self._coerce(other)
        return (self - o).sign() <= 0

    def __gt__(self, other):
        o = self._coerce(other)
        return (self - o).sign() > 0

    def __ge__(self, other):
        o = self._coerce(other)
        return (self - o).sign() >= 0

    def __abs__(self):
        return -self if self.sign() < 0 else self

    # -- export -------------------------------------------------------------------

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * _sqrt_d(self.d)

    def __repr__(self) -> str:
        if self.b == 0:
            return f"{self.a}"
        return f"{self.a}+{self.b}*sqrt({self.d})"

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b)}

    @classmethod
    def from_json(cls, obj: dict, d: int) -> "RQuad":
        return cls(parse_rational(obj["a"]), parse_rational(obj["b"]), d)


def rquad_sign(x: RQuad) -> int:
    """Exact sign of a + b*sqrt(d), in {-1, 0, +1}."""
    return x.sign()


class CQuad:
    """Complex number re + i*im with re, im in Q(sqrt(d))."""

    __slots__ = ("re", "im")

    def __init__(self, re: RQuad, im: RQuad):
        if re.d != im.d:
            raise FieldMismatchError("real and imaginary parts in different fields")
        self.re = re
        self.im = im

    @property
    def d(self) -> int:
        return self.re.d

    @classmethod
    def of(cls, x, d: int) -> "CQuad":
        if isinstance(x, CQuad):
            if x.d != d:
                raise FieldMismatchError("CQuad from different field")
            return x
        if isinstance(x, RQuad):
            return cls(RQuad.of(x, d), RQuad.of(0, d))
        return cls(RQuad.of(x, d), RQuad.of(0, d))

    @classmethod
    def zero(cls, d: int) -> "CQuad":
        return cls(RQuad.of(0, d), RQuad.of(0, d))

    @classmethod
    def one(cls, d: int) -> "CQuad":
        return cls(RQuad.of(1, d), RQuad.of(0, d))

    @classmethod
    def make(cls, rea, reb, ima, imb, d: int) -> "CQuad":
        return cls(RQuad(rea, reb, d), RQuad(ima, imb, d))

    def _coerce(self, other) -> "CQuad":
        if isinstance(other, CQuad):
            if other.d != self.d:
                raise FieldMismatchError("cannot mix CQuad fields")
            return other
        if isinstance(other, (int, Fraction, RQuad)):
            return CQuad.of(other, self.d)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CQuad(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CQuad(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return CQuad(-self.re, -self.im)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return CQuad(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def conj(self) -> "CQuad":
        return CQuad(self.re, -self.im)

    def norm_sq(self) -> RQuad:
        """|z|^2 = re^2 + im^2, exactly, as an RQuad."""
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "CQuad":
        n = self.norm_sq()
        if n.is_zero():
            raise ZeroDivisionError("inverse of zero CQuad")
        ninv = n.inverse()
        return CQuad(self.re * ninv, -self.im * ninv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return self * o.inverse()

    def is_zero(self) -> bool:
        return self.re.is_zero() and self.im.is_zero()

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, RQuad)):
            other = CQuad.of(other, self.d)
        if not isinstance(other, CQuad):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"({self.re!r})+({self.im!r})i"

    def to_json(self) -> dict:
        return {"re": self.re.to_json(), "im": self.im.to_json()}

    @classmethod
    def from_json(cls, obj: dict, d: int) -> "CQuad":
        return cls(RQuad.from_json(obj["re"], d), RQuad.from_json(obj["im"], d))


def _as_integer(x: Fraction) -> int | None:
    return x.numerator if x.denominator == 1 else None


def in_Od(z: CQuad, d: int) -> bool:
    """Membership in the ring of integers of Q(i*sqrt(d)).

    O_d = Z[i*sqrt(d)] for d = 1,2 mod 4 and Z[(1+i*sqrt(d))/2] for
    d = 3 mod 4.  The input must have rational real part and a rational
    multiple of sqrt(d) as imaginary part; anything else is rejected as
    not lying in the abstract field Q(i*sqrt(d)).
    """
    if z.re.b != 0 or z.im.a != 0:
        raise NotInFieldError("value is not in Q(i*sqrt(d))")
    if d % 4 in (1, 2):
        return z.re.a.denominator == 1 and z.im.b.denominator == 1
    # d = 3 mod 4: x/2 + i*sqrt(d)*y/2 with integers x = y mod 2.
    x = _as_integer(2 * z.re.a)
    y = _as_integer(2 * z.im.b)
    return x is not None and y is not None and (x - y) % 2 == 0


def integer_parts(z: CQuad, d: int) -> tuple[int, int] | None:
    """Integer coordinates of z on the relevant half-integer lattice.

    For d = 3 mod 4 returns (x, y) with z = x/2 + i*sqrt(d)*y/2; for
    d = 2 mod 4 returns (x, y) with z = x + i*sqrt(d)*y.  Returns None
    when no such integers exist.
    """
    if z.re.b != 0 or z.im.a != 0:
        return None
    if d % 4 == 3:
        x = _as_integer(2 * z.re.a)
        y = _as_integer(2 * z.im.b)
    else:
        x = _as_integer(z.re.a)
        y = _as_integer(z.im.b)
    if x is None or y is None:
        return None
    return (x, y)
