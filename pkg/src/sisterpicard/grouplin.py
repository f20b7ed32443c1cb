"""Matrices over Q(sqrt(d))[i], the signature-(2,1) Hermitian form, and
membership tests for the Picard modular group, its sister, and their
intersection.

The Hermitian form is the antidiagonal one,

    <z, w> = w* J z = z1*conj(w3) + z2*conj(w2) + z3*conj(w1),

so a matrix A is in U(2,1) iff A* J A = J entrywise.  Group membership is
decided from the integer lattice shape of the entries:

  Picard(d):       every entry in O_d;
  Sister(d), d=3 mod 4:
      z13 = x13/2 + i*y13/(2*sqrt(d)), x13 = y13 mod 2;
      all other z_jk = x_jk/2 + i*sqrt(d)*y_jk/2, x_jk = y_jk mod 2;
      d | x21, x31, x32;
  Sister(2):       z13 = x13 + i*y13/sqrt(2) with integer x13, y13;
      all other entries in Z[i*sqrt(2)]; 2 | x21, x31, x32;
  Intersection(d): Sister(d) and Picard(d) simultaneously.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactnum import CQuad, NotInFieldError, RQuad, in_Od


class PreconditionError(ValueError):
    """An operation was called outside its stated precondition."""


class UnboundGeneratorError(KeyError):
    """A word referenced a generator name that is not bound."""


Vec3 = tuple[CQuad, CQuad, CQuad]


def herm_inner(z: Vec3, w: Vec3) -> CQuad:
    """<z, w> = z1*conj(w3) + z2*conj(w2) + z3*conj(w1)."""
    return z[0] * w[2].conj() + z[1] * w[1].conj() + z[2] * w[0].conj()


class Mat3:
    """3x3 matrix over CQuad, row-major."""

    __slots__ = ("e",)

    def __init__(self, entries):
        e = tuple(entries)
        if len(e) != 9:
            raise ValueError("Mat3 needs 9 entries")
        self.e = e

    @property
    def d(self) -> int:
        return self.e[0].d

    @classmethod
    def identity(cls, d: int) -> "Mat3":
        one, zero = CQuad.one(d), CQuad.zero(d)
        return cls([one, zero, zero, zero, one, zero, zero, zero, one])

    @classmethod
    def from_rows(cls, rows) -> "Mat3":
        return cls([x for row in rows for x in row])

    def __getitem__(self, jk: tuple[int, int]) -> CQuad:
        j, k = jk
        return self.e[3 * j + k]

    def row(self, j: int) -> Vec3:
        return (self.e[3 * j], self.e[3 * j + 1], self.e[3 * j + 2])

    def col(self, k: int) -> Vec3:
        return (self.e[k], self.e[3 + k], self.e[6 + k])

    def __mul__(self, other: "Mat3") -> "Mat3":
        a, b = self.e, other.e
        out = []
        for j in range(3):
            for k in range(3):
                out.append(
                    a[3 * j] * b[k] + a[3 * j + 1] * b[3 + k] + a[3 * j + 2] * b[6 + k]
                )
        return Mat3(out)

    def apply(self, v: Vec3) -> Vec3:
        a = self.e
        return (
            a[0] * v[0] + a[1] * v[1] + a[2] * v[2],
            a[3] * v[0] + a[4] * v[1] + a[5] * v[2],
            a[6] * v[0] + a[7] * v[1] + a[8] * v[2],
        )

    def conj_transpose(self) -> "Mat3":
        a = self.e
        return Mat3(
            [
                a[0].conj(), a[3].conj(), a[6].conj(),
                a[1].conj(), a[4].conj(), a[7].conj(),
                a[2].conj(), a[5].conj(), a[8].conj(),
            ]
        )

    def det(self) -> CQuad:
        a = self.e
        return (
            a[0] * (a[4] * a[8] - a[5] * a[7])
            - a[1] * (a[3] * a[8] - a[5] * a[6])
            + a[2] * (a[3] * a[7] - a[4] * a[6])
        )

    def inverse_adjugate(self) -> "Mat3":
        a = self.e
        det = self.det()
        if det.is_zero():
            raise ZeroDivisionError("singular matrix")
        inv_det = det.inverse()
        cof = [
            a[4] * a[8] - a[5] * a[7],
            -(a[1] * a[8] - a[2] * a[7]),
            a[1] * a[5] - a[2] * a[4],
            -(a[3] * a[8] - a[5] * a[6]),
            a[0] * a[8] - a[2] * a[6],
            -(a[0] * a[5] - a[2] * a[3]),
            a[3] * a[7] - a[4] * a[6],
            -(a[0] * a[7] - a[1] * a[6]),
            a[0] * a[4] - a[1] * a[3],
        ]
        return Mat3([c * inv_det for c in cof])

    def inverse_unitary(self) -> "Mat3":
        """J A* J: the inverse of a J-unitary matrix (fast path)."""
        return _antitranspose(self.conj_transpose())

    def inverse(self) -> "Mat3":
        if is_unitary_J(self):
            return self.inverse_unitary()
        return self.inverse_adjugate()

    def __pow__(self, n: int) -> "Mat3":
        if n < 0:
            return self.inverse() ** (-n)
        out = Mat3.identity(self.d)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Mat3):
            return NotImplemented
        return all(x == y for x, y in zip(self.e, other.e))

    def __hash__(self):
        return hash(self.e)

    def __repr__(self) -> str:
        rows = [", ".join(repr(self.e[3 * j + k]) for k in range(3)) for j in range(3)]
        return "Mat3[" + " | ".join(rows) + "]"

    def scalar_value(self) -> CQuad | None:
        """lambda if this matrix is lambda*Id, else None."""
        a = self.e
        for off in (1, 2, 3, 5, 6, 7):
            if not a[off].is_zero():
                return None
        if a[0] == a[4] and a[4] == a[8]:
            return a[0]
        return None

    def to_json(self) -> list:
        return [x.to_json() for x in self.e]

    @classmethod
    def from_json(cls, obj: list, d: int) -> "Mat3":
        return cls([CQuad.from_json(x, d) for x in obj])


def _antitranspose(m: Mat3) -> Mat3:
    """J M J for the antidiagonal J: reverse rows and columns."""
    a = m.e
    return Mat3([a[8], a[7], a[6], a[5], a[4], a[3], a[2], a[1], a[0]])


def j_form(d: int) -> Mat3:
    one, zero = CQuad.one(d), CQuad.zero(d)
    return Mat3([zero, zero, one, zero, one, zero, one, zero, zero])


def is_unitary_J(a: Mat3) -> bool:
    """A* J A = J, checked entrywise and exactly."""
    j = j_form(a.d)
    return a.conj_transpose() * j * a == j


def proj_eq(a: Mat3, b: Mat3) -> bool:
    """Equality in PU(2,1): b^-1 a is a scalar lambda*Id with |lambda|^2 = 1."""
    try:
        m = b.inverse_adjugate() * a
    except ZeroDivisionError:
        raise PreconditionError("second matrix is singular") from None
    lam = m.scalar_value()
    if lam is None:
        return False
    return lam.norm_sq() == RQuad.of(1, a.d)


@dataclass(frozen=True)
class GroupTag:
    kind: str  # "picard" | "sister" | "intersection"
    d: int

    def __post_init__(self):
        if self.kind not in ("picard", "sister", "intersection"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.d not in (2, 7, 11):
            raise ValueError("d must be one of 2, 7, 11")


def Picard(d: int) -> GroupTag:
    return GroupTag("picard", d)


def Sister(d: int) -> GroupTag:
    return GroupTag("sister", d)


def Intersection(d: int) -> GroupTag:
    return GroupTag("intersection", d)


def _as_int(x: Fraction) -> int | None:
    return x.numerator if x.denominator == 1 else None


def od_parts(z: CQuad, d: int) -> tuple[int, int] | None:
    """(x, y) with z = x + i*sqrt(d)*y (d=2) or z = (x + i*sqrt(d)*y)/2 with
    x = y mod 2 (d = 3 mod 4); None if z is not of that shape."""
    if z.re.b != 0 or z.im.a != 0:
        return None
    if d % 4 == 3:
        x = _as_int(2 * z.re.a)
        y = _as_int(2 * z.im.b)
        if x is None or y is None or (x - y) % 2:
            return None
    else:
        x = _as_int(z.re.a)
        y = _as_int(z.im.b)
        if x is None or y is None:
            return None
    return (x, y)


def sister_corner_parts(z13: CQuad, d: int) -> tuple[int, int] | None:
    """(x13, y13) for the scaled top-right entry of a sister-group matrix.

    d = 3 mod 4: z13 = x13/2 + i*y13/(2*sqrt(d)), x13 = y13 mod 2;
    d = 2:       z13 = x13 + i*y13/sqrt(2), x13 and y13 plain integers.
    """
    if z13.re.b != 0 or z13.im.a != 0:
        return None
    if d % 4 == 3:
        x = _as_int(2 * z13.re.a)
        y = _as_int(2 * d * z13.im.b)  # im = y/(2*sqrt(d)) = y*sqrt(d)/(2d)
        if x is None or y is None or (x - y) % 2:
            return None
    else:
        x = _as_int(z13.re.a)
        y = _as_int(2 * z13.im.b)  # im = y/sqrt(2) = (y/2)*sqrt(2)
        if x is None or y is None:
            return None
    return (x, y)


def _in_picard(a: Mat3, d: int) -> bool:
    try:
        return all(in_Od(z, d) for z in a.e)
    except NotInFieldError:
        return False


_DIVISIBLE_SLOTS = ((1, 0), (2, 0), (2, 1))  # z21, z31, z32


def _in_sister(a: Mat3, d: int) -> bool:
    if sister_corner_parts(a[0, 2], d) is None:
        return False
    modulus = d if d % 4 == 3 else 2
    for j in range(3):
        for k in range(3):
            if (j, k) == (0, 2):
                continue
            parts = od_parts(a[j, k], d)
            if parts is None:
                return False
            if (j, k) in _DIVISIBLE_SLOTS and parts[0] % modulus:
                return False
    return True


def in_group(a: Mat3, tag: GroupTag) -> bool:
    """Lattice membership test; requires a J-unitary input."""
    if not is_unitary_J(a):
        raise PreconditionError("in_group requires a J-unitary matrix")
    return in_group_unchecked(a, tag)


def in_group_unchecked(a: Mat3, tag: GroupTag) -> bool:
    """Lattice membership without re-checking unitarity.

    For hot loops over products of known J-unitary matrices, where the
    precondition holds by construction.
    """
    if tag.kind == "picard":
        return _in_picard(a, tag.d)
    if tag.kind == "sister":
        return _in_sister(a, tag.d)
    return _in_sister(a, tag.d) and _in_picard(a, tag.d)


Word = list[tuple[str, int]]


def eval_word(gens: dict[str, Mat3], word: Word) -> Mat3:
    """Exact product of gens[name]**exp, left to right as written."""
    if not word:
        raise ValueError("empty word")
    out: Mat3 | None = None
    for name, exp in word:
        if name not in gens:
            raise UnboundGeneratorError(name)
        if exp == 0:
            raise ValueError(f"zero exponent for {name}")
        m = gens[name] ** exp
        out = m if out is None else out * m
    assert out is not None
    return out


def word_str(word: Word) -> str:
    parts = []
    for name, exp in word:
        parts.append(name if exp == 1 else f"{name}^{exp}")
    return "*".join(parts)
