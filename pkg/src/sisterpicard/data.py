"""Loader for the embedded source-data file.

The JSON resource carries, per square-free d in {2, 7, 11}: the five
generator matrices, the stabilizer prism and its labeled points, the
side-pairing rows, the relator words, the expected plane rotations, the
sphere catalog definitions, and the coverage data (decomposition points,
interior-membership claims, cells, star unions).  Known misprints in the
source tables are stored twice: the operative corrected value in place
and the as-printed value under ``printed`` / ``printed_z`` so that both
can be tested and reported.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources

from .exactnum import CQuad, RQuad, parse_rational
from .grouplin import Mat3, Word
from .heis import HeisPoint

DS = (2, 7, 11)


def rq(pair, d: int) -> RQuad:
    return RQuad(parse_rational(pair[0]), parse_rational(pair[1]), d)


def cq(quad, d: int) -> CQuad:
    return CQuad(rq(quad[:2], d), rq(quad[2:], d))


def mat(entries, d: int) -> Mat3:
    return Mat3([cq(e, d) for e in entries])


def _word(raw) -> Word:
    return [(name, int(exp)) for name, exp in raw]


@dataclass
class LabeledPoint:
    label: str
    point: HeisPoint
    printed: HeisPoint | None = None          # as-printed variant, when different
    printed_outfield: dict | None = None      # printed value outside Q(sqrt(d))
    printed_malformed: str | None = None      # unusable printed coordinate tuple
    note: str | None = None

    @property
    def has_correction(self) -> bool:
        return (
            self.printed is not None
            or self.printed_outfield is not None
            or self.printed_malformed is not None
        )

    def printed_float(self) -> tuple[float, float, float] | None:
        """Float shadow of the printed coordinates, when they exist at all."""
        if self.printed is not None:
            return self.printed.float_triple()
        if self.printed_outfield is not None:
            info = self.printed_outfield
            x = float(parse_rational(info["x"]))
            y = float(parse_rational(info["y_coef"])) * float(info["y_root"]) ** 0.5
            return (x, y, float(self.point.t))
        return None


@dataclass
class SidePairing:
    word: Word
    maps: list[tuple[str, str]]


@dataclass
class Relator:
    rel_id: str
    word: Word
    open_question: bool = False
    variants: list[tuple[str, Word]] = field(default_factory=list)


@dataclass
class SphereDef:
    label: str
    iso_word: Word | None = None              # isometric sphere of this word
    base: str | None = None                   # or image of another sphere
    move: Word | None = None
    printed_matrix: Mat3 | None = None
    printed_matrix_expect_mismatch: bool = False
    printed_eq: tuple[CQuad, RQuad, RQuad] | None = None   # (center, t0, r4)
    printed_eq_expect_mismatch: bool = False
    note: str | None = None


@dataclass
class CoverageClaim:
    point: str
    sphere: str
    polarity: str = "inside"                  # "inside" | "outside"
    flag_kind: str | None = None              # "attribution" when the pair is a misprint
    flag_note: str | None = None


@dataclass
class Cell:
    name: str
    vertices: list[str]
    region: str
    note: str | None = None


@dataclass
class StarUnion:
    name: str
    spheres: list[str]
    center: str


@dataclass
class GroupData:
    d: int
    generators: dict[str, Mat3]
    generator_variants: dict[str, tuple[Mat3, str]]
    prism_vertices: dict[str, CQuad]          # v1, v2, v3 (stabilizer labels)
    t_max: RQuad
    table_points: dict[str, LabeledPoint]     # u/w/v labels with +- suffixes
    side_pairings: list[SidePairing]
    relators: list[Relator]
    plane_rotations: dict[str, dict]
    sphere_defs: dict[str, SphereDef]
    cov_vertices: dict[str, CQuad]            # coverage labels (may be relabeled)
    cov_points: dict[str, LabeledPoint]
    claims: list[CoverageClaim]
    outside_claims: list[CoverageClaim]
    cells: list[Cell]
    star_unions: dict[str, StarUnion]

    @property
    def omega(self) -> CQuad:
        """(1 + i*sqrt(d))/2."""
        return CQuad.make(Fraction(1, 2), 0, 0, Fraction(1, 2), self.d)

    def cov_point(self, label: str) -> HeisPoint:
        """Resolve a coverage label (decomposition point or prism corner)."""
        return self.cov_point_record(label).point

    def cov_point_record(self, label: str) -> LabeledPoint:
        if label in self.cov_points:
            return self.cov_points[label]
        if label.endswith(("+", "-")) and label[:-1] in self.cov_vertices:
            z = self.cov_vertices[label[:-1]]
            t = self.t_max if label.endswith("+") else -self.t_max
            return LabeledPoint(label, HeisPoint(z, t))
        raise KeyError(f"unknown coverage point {label!r}")

    def table_point(self, label: str) -> HeisPoint:
        return self.table_points[label].point


def _load_points_pm(raw_points: dict, t_max: RQuad, d: int) -> dict[str, LabeledPoint]:
    """Expand table entries u_k into u_k+ and u_k- at the cap heights."""
    out: dict[str, LabeledPoint] = {}
    for label, obj in raw_points.items():
        z = cq(obj["z"], d)
        printed_z = obj.get("printed_z")
        for sign, t in (("+", t_max), ("-", -t_max)):
            printed = None
            if printed_z is not None:
                printed = HeisPoint(cq(printed_z, d), t)
            out[label + sign] = LabeledPoint(
                label + sign, HeisPoint(z, t), printed=printed, note=obj.get("note")
            )
    return out


def _load_point(label: str, obj: dict, d: int) -> LabeledPoint:
    pt = HeisPoint(cq(obj["z"], d), rq(obj["t"], d))
    printed = None
    if "printed" in obj:
        printed = HeisPoint(cq(obj["printed"]["z"], d), rq(obj["printed"]["t"], d))
    return LabeledPoint(
        label,
        pt,
        printed=printed,
        printed_outfield=obj.get("printed_outfield"),
        printed_malformed=obj.get("printed_malformed"),
        note=obj.get("note"),
    )


def _load_group(d: int, raw: dict) -> GroupData:
    gens = {name: mat(m, d) for name, m in raw["generators"].items()}
    variants = {
        name: (mat(obj["matrix"], d), obj.get("note", ""))
        for name, obj in raw["generator_variants"].items()
    }
    prism = raw["prism"]
    t_max = rq(prism["t_max"], d)
    verts = {k: cq(v, d) for k, v in prism["vertices"].items()}

    table = _load_points_pm(prism["table_points"], t_max, d)
    for label, obj in prism["extra_points"].items():
        table[label] = _load_point(label, obj, d)
    for name, z in verts.items():
        for sign, t in (("+", t_max), ("-", -t_max)):
            table[name + sign] = LabeledPoint(name + sign, HeisPoint(z, t))

    pairings = [
        SidePairing(_word(row["word"]), [tuple(m) for m in row["maps"]])
        for row in raw["side_pairings"]
    ]
    relators = [
        Relator(
            obj["id"],
            _word(obj["word"]),
            obj.get("open_question", False),
            [(v["name"], _word(v["word"])) for v in obj.get("variants", [])],
        )
        for obj in raw["relators"]
    ]

    spheres: dict[str, SphereDef] = {}
    for label, obj in raw["spheres"].items():
        printed_eq = None
        if "printed_eq" in obj:
            eq = obj["printed_eq"]
            printed_eq = (cq(eq["z"], d), rq(eq["t"], d), rq(eq["r4"], d))
        spheres[label] = SphereDef(
            label,
            iso_word=_word(obj["iso_word"]) if "iso_word" in obj else None,
            base=obj.get("base"),
            move=_word(obj["move"]) if "move" in obj else None,
            printed_matrix=mat(obj["printed_matrix"], d) if "printed_matrix" in obj else None,
            printed_matrix_expect_mismatch=obj.get("printed_matrix_expect_mismatch", False),
            printed_eq=printed_eq,
            printed_eq_expect_mismatch=obj.get("printed_eq_expect_mismatch", False),
            note=obj.get("printed_matrix_note") or obj.get("printed_eq_note"),
        )

    cov = raw["coverage"]
    cov_verts = {k: cq(v, d) for k, v in cov["vertices"].items()}
    cov_points = {label: _load_point(label, obj, d) for label, obj in cov["points"].items()}

    flags = {(f["point"], f["sphere"]): f for f in cov.get("claim_flags", [])}
    claims: list[CoverageClaim] = []
    for group in cov["claims"]:
        for point in group["points"]:
            for sphere in group["spheres"]:
                f = flags.get((point, sphere))
                claims.append(
                    CoverageClaim(
                        point,
                        sphere,
                        flag_kind=f["kind"] if f else None,
                        flag_note=f["note"] if f else None,
                    )
                )
    outside = [
        CoverageClaim(point, group["sphere"], polarity="outside")
        for group in cov.get("outside_claims", [])
        for point in group["points"]
    ]

    cells = [
        Cell(c["name"], list(c["vertices"]), c["region"], c.get("note"))
        for c in cov["cells"]
    ]
    stars = {
        name: StarUnion(name, list(obj["spheres"]), obj["center"])
        for name, obj in cov["star_unions"].items()
    }

    return GroupData(
        d=d,
        generators=gens,
        generator_variants=variants,
        prism_vertices=verts,
        t_max=t_max,
        table_points=table,
        side_pairings=pairings,
        relators=relators,
        plane_rotations=raw["plane_rotations"],
        sphere_defs=spheres,
        cov_vertices=cov_verts,
        cov_points=cov_points,
        claims=claims,
        outside_claims=outside,
        cells=cells,
        star_unions=stars,
    )


_CACHE: dict[int, GroupData] = {}


def load_raw() -> dict:
    text = resources.files("sisterpicard").joinpath("data/paper_data.json").read_text()
    return json.loads(text)


def group_data(d: int) -> GroupData:
    if d not in _CACHE:
        raw = load_raw()
        if str(d) not in raw["groups"]:
            raise ValueError(f"no data for d={d}")
        _CACHE[d] = _load_group(d, raw["groups"][str(d)])
    return _CACHE[d]
