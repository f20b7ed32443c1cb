"""Heisenberg group, Cygan metric, boundary action, and the projection
to plane isometries.

The boundary of the Siegel domain minus one point is the Heisenberg group
C x R with law (z1,t1)(z2,t2) = (z1+z2, t1+t2+2*Im(z1*conj(z2))).  A
boundary point (z, t) lifts to column ((-|z|^2 + i t)/2, z, 1); interior
points carry a height u > 0 and lift with -|z|^2 - u + i t in the first
slot.  Distance comparisons are done on fourth powers of the Cygan metric
so that everything stays inside Q(sqrt(d)).
"""

from __future__ import annotations

from fractions import Fraction

from .exactnum import CQuad, RQuad
from .grouplin import Mat3, PreconditionError, Vec3, is_unitary_J


class InfinityMark:
    """The distinguished boundary point at infinity (a value, not an error)."""

    _instance: "InfinityMark | None" = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITY"


INFINITY = InfinityMark()


class HeisPoint:
    """Boundary point (z, t) in Heisenberg coordinates."""

    __slots__ = ("z", "t")

    def __init__(self, z: CQuad, t: RQuad):
        if z.d != t.d:
            raise ValueError("z and t live in different fields")
        self.z = z
        self.t = t

    @property
    def d(self) -> int:
        return self.z.d

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeisPoint):
            return NotImplemented
        return self.z == other.z and self.t == other.t

    def __hash__(self):
        return hash((self.z, self.t))

    def __repr__(self):
        return f"({self.z!r}, {self.t!r})"

    def float_triple(self) -> tuple[float, float, float]:
        return (float(self.z.re), float(self.z.im), float(self.t))

    def to_json(self) -> dict:
        return {"z": self.z.to_json(), "t": self.t.to_json()}


class HSpacePoint:
    """Horospherical point (z, t, u) with height u >= 0; u = 0 is boundary."""

    __slots__ = ("z", "t", "u")

    def __init__(self, z: CQuad, t: RQuad, u: RQuad):
        if u.sign() < 0:
            raise ValueError("height u must be nonnegative")
        self.z = z
        self.t = t
        self.u = u

    @classmethod
    def boundary(cls, p: HeisPoint) -> "HSpacePoint":
        return cls(p.z, p.t, RQuad.of(0, p.d))

    @property
    def d(self) -> int:
        return self.z.d


def origin(d: int) -> HeisPoint:
    return HeisPoint(CQuad.zero(d), RQuad.of(0, d))


def heis_mul(p: HeisPoint, q: HeisPoint) -> HeisPoint:
    """Group law (z1+z2, t1+t2+2*Im(z1*conj(z2)))."""
    tw = p.z * q.z.conj()
    return HeisPoint(p.z + q.z, p.t + q.t + 2 * tw.im)


def heis_inv(p: HeisPoint) -> HeisPoint:
    return HeisPoint(-p.z, -p.t)


def cygan_gap(p: HeisPoint, q: HeisPoint) -> RQuad:
    """Fourth power of the Cygan distance rho0(p, q).

    rho0 = | |z1-z2|^2 - i t1 + i t2 - 2 i Im(z1*conj(z2)) |^(1/2); callers
    compare the returned value against r^4.
    """
    re = (p.z - q.z).norm_sq()
    im = -p.t + q.t - 2 * (p.z * q.z.conj()).im
    return re * re + im * im


def ext_cygan_gap(p: HSpacePoint, q: HSpacePoint) -> RQuad:
    """Fourth power of the extended Cygan distance, with the |u1-u2| term."""
    re = (p.z - q.z).norm_sq() + abs(p.u - q.u)
    im = -p.t + q.t - 2 * (p.z * q.z.conj()).im
    return re * re + im * im


def standard_lift(p: HSpacePoint) -> Vec3:
    """Column ((-|z|^2 - u + i t)/2, z, 1)."""
    d = p.d
    half = Fraction(1, 2)
    first = CQuad(
        (-p.z.norm_sq() - p.u) * half,
        p.t * half,
    )
    return (first, p.z, CQuad.one(d))


def q_infinity(d: int) -> Vec3:
    return (CQuad.one(d), CQuad.zero(d), CQuad.zero(d))


class BoundaryFormError(ValueError):
    """A matrix image of a boundary lift failed to have boundary shape."""


def act_boundary(a: Mat3, p: HeisPoint) -> HeisPoint | InfinityMark:
    """Apply a J-unitary matrix to a boundary point.

    Returns INFINITY when the image is the point at infinity; otherwise
    renormalizes the image lift and reads (z, t) back.  The first
    coordinate of the renormalized lift must be exactly (-|z|^2 + i t)/2,
    which holds for every J-unitary matrix.
    """
    if not is_unitary_J(a):
        raise PreconditionError("act_boundary requires a J-unitary matrix")
    v = a.apply(standard_lift(HSpacePoint.boundary(p)))
    if v[2].is_zero():
        return INFINITY
    scale = v[2].inverse()
    first = v[0] * scale
    z = v[1] * scale
    if 2 * first.re != -z.norm_sq():
        raise BoundaryFormError("image does not lie on the boundary")
    return HeisPoint(z, 2 * first.im)


# -- stabilizer matrices ---------------------------------------------------------


def translation_matrix(tau: CQuad, v: RQuad) -> Mat3:
    """Heisenberg translation by (tau, v):
    [[1, -conj(tau), -(|tau|^2 - i v)/2], [0, 1, tau], [0, 0, 1]]."""
    d = tau.d
    half = Fraction(1, 2)
    one, zero = CQuad.one(d), CQuad.zero(d)
    corner = CQuad(-tau.norm_sq() * half, v * half)
    return Mat3([one, -tau.conj(), corner, zero, one, tau, zero, zero, one])


def vertical_translation_matrix(v: RQuad) -> Mat3:
    return translation_matrix(CQuad.zero(v.d), v)


def rotation_matrix(rot: CQuad) -> Mat3:
    """Heisenberg rotation diag(1, e^(i theta), 1); rot must be unimodular."""
    d = rot.d
    if rot.norm_sq() != RQuad.of(1, d):
        raise ValueError("rotation factor must have |rot|^2 = 1")
    one, zero = CQuad.one(d), CQuad.zero(d)
    return Mat3([one, zero, zero, zero, rot, zero, zero, zero, one])


def dilation_matrix(r: RQuad) -> Mat3:
    """Heisenberg dilation diag(r, 1, 1/r) for r > 0."""
    if r.sign() <= 0:
        raise ValueError("dilation factor must be positive")
    d = r.d
    one, zero = CQuad.one(d), CQuad.zero(d)
    return Mat3(
        [CQuad(r, RQuad.of(0, d)), zero, zero,
         zero, one, zero,
         zero, zero, CQuad(r.inverse(), RQuad.of(0, d))]
    )


# -- projection to Isom(C) -------------------------------------------------------


class PlaneIsom:
    """w -> rot*w + trans on C, with |rot|^2 = 1."""

    __slots__ = ("rot", "trans")

    def __init__(self, rot: CQuad, trans: CQuad):
        if rot.norm_sq() != RQuad.of(1, rot.d):
            raise ValueError("rotation part must be unimodular")
        self.rot = rot
        self.trans = trans

    @classmethod
    def identity(cls, d: int) -> "PlaneIsom":
        return cls(CQuad.one(d), CQuad.zero(d))

    def apply(self, w: CQuad) -> CQuad:
        return self.rot * w + self.trans

    def compose(self, other: "PlaneIsom") -> "PlaneIsom":
        """self after other."""
        return PlaneIsom(self.rot * other.rot, self.rot * other.trans + self.trans)

    def is_identity(self) -> bool:
        return self.rot == CQuad.one(self.rot.d) and self.trans.is_zero()

    def fixed_point(self) -> CQuad:
        """Unique fixed point when rot != 1."""
        one = CQuad.one(self.rot.d)
        if self.rot == one:
            raise ValueError("a nontrivial translation has no fixed point")
        return self.trans * (one - self.rot).inverse()

    def __eq__(self, other) -> bool:
        if not isinstance(other, PlaneIsom):
            return NotImplemented
        return self.rot == other.rot and self.trans == other.trans

    def __repr__(self):
        return f"PlaneIsom(rot={self.rot!r}, trans={self.trans!r})"


def isom_parts(a: Mat3) -> tuple[CQuad, CQuad, RQuad]:
    """(rot, trans, vertical) of a Heisenberg isometry matrix.

    Accepts any unit-scalar multiple of the upper-triangular form
    [[1, -conj(z) rot, -(|z|^2 - i t)/2], [0, rot, z], [0, 0, 1]] and
    rejects dilations and everything else.
    """
    d = a.d
    m33 = a[2, 2]
    if m33.is_zero() or m33.norm_sq() != RQuad.of(1, d):
        raise PreconditionError("not a Heisenberg isometry matrix")
    s = m33.inverse()
    n = Mat3([x * s for x in a.e])
    if not (n[1, 0].is_zero() and n[2, 0].is_zero() and n[2, 1].is_zero()):
        raise PreconditionError("not upper triangular")
    if n[0, 0] != CQuad.one(d):
        raise PreconditionError("dilation or non-isometry (corner entry not 1)")
    rot = n[1, 1]
    if rot.norm_sq() != RQuad.of(1, d):
        raise PreconditionError("middle entry is not unimodular")
    trans = n[1, 2]
    if n[0, 1] != -trans.conj() * rot:
        raise PreconditionError("top-middle entry breaks the isometry shape")
    corner = n[0, 2]
    if 2 * corner.re != -trans.norm_sq():
        raise PreconditionError("corner entry breaks the isometry shape")
    vertical = 2 * corner.im
    return rot, trans, vertical


def pi_star(a: Mat3) -> PlaneIsom:
    """Image of a Heisenberg isometry in Isom(C): w -> rot*w + trans."""
    rot, trans, _ = isom_parts(a)
    return PlaneIsom(rot, trans)
