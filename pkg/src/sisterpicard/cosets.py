"""Coset decompositions of the Picard modular group and its sister
relative to their common subgroup H, plus the one-cusp witness.

H consists of the matrices lying in both groups.  Working with the
integer coordinates x_jk, y_jk of the entries, membership in H comes
down to divisibility of x21, x31, x32 (and of the scaled corner
coordinate y13 on the sister side).  The coset representative of an
element is found by the residue case analysis below and then re-checked
by an actual H-membership test; a verification failure would contradict
the index computation and is raised as a fatal inconsistency.

The quadratic congruences satisfied by every group element follow from
the unitarity relations of the first and last columns,

    conj(z11) z31 + z11 conj(z31) + |z21|^2 = 0,
    conj(z31) z33 + z31 conj(z33) + |z32|^2 = 0.

Expanding in integer coordinates and reducing mod d gives

    x21^2 = -2 x11 x31  and  x32^2 = -2 x31 x33   (mod d, d odd),

and for d = 2 (entries x + i*sqrt(2)*y) it forces x21, x32 even with

    y21^2 = -x11 x31  and  y32^2 = -x31 x33      (mod 2).

The source displays these with x in place of y and -1 in place of -2;
the forms above are the ones the unitarity rows actually yield, and the
case analysis of the coset classification goes through with them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .data import GroupData, group_data
from .exactnum import CQuad, RQuad
from .grouplin import (
    GroupTag,
    Intersection,
    Mat3,
    Picard,
    PreconditionError,
    Sister,
    Word,
    eval_word,
    in_group,
    is_unitary_J,
    od_parts,
    sister_corner_parts,
)
from .heis import INFINITY, act_boundary, origin, translation_matrix, vertical_translation_matrix


class CosetInconsistencyError(AssertionError):
    """The residue rule chose a representative that fails the H-test."""


# -- representatives ---------------------------------------------------------------


def _g1(d: int) -> Mat3:
    one, zero = CQuad.one(d), CQuad.zero(d)
    return Mat3([zero, zero, one, zero, -one, zero, one, zero, zero])


def _g2_d2() -> Mat3:
    d = 2
    one, zero = CQuad.one(d), CQuad.zero(d)
    isq2 = CQuad.make(0, 0, 0, 1, d)
    return Mat3([one, zero, zero, -isq2, -one, zero, -one, isq2, one])


def _g_lower(k: int, d: int) -> Mat3:
    """[[1,0,0],[k,1,0],[-k^2*omega_d,-k,1]] and its sign twin."""
    one, zero = CQuad.one(d), CQuad.zero(d)
    omega = CQuad.make(Fraction(1, 2), 0, 0, Fraction(1, 2), d)
    kk = CQuad.of(k, d)
    corner = -CQuad.of(k * k, d) * omega
    return Mat3([one, zero, zero, kk, one, zero, corner, -kk, one])


@dataclass
class CosetReps:
    d: int
    reps_picard: list[Mat3]
    reps_sister: list[Mat3]

    def __post_init__(self):
        for m in self.reps_picard:
            assert is_unitary_J(m) and in_group(m, Picard(self.d))
        for m in self.reps_sister:
            assert is_unitary_J(m) and in_group(m, Sister(self.d))


def coset_reps(d: int) -> CosetReps:
    """g_0 = Id, g_1, ... for both groups, as displayed in the index lemmas."""
    gd = group_data(d)
    i0, t = gd.generators["I0"], gd.generators["T"]
    if d == 2:
        picard = [Mat3.identity(2), _g1(2), _g2_d2()]
        sister = [Mat3.identity(2), i0, t]
    else:
        picard = [Mat3.identity(d), _g1(d)]
        sister = [Mat3.identity(d), i0]
        for k in range(1, (d - 1) // 2 + 1):
            picard.append(_g_lower(k, d))
            picard.append(_g_lower(-k, d))
            sister.append(t ** k)
            sister.append(t ** (-k))
    return CosetReps(d, picard, sister)


# -- integer coordinate profiles ---------------------------------------------------


@dataclass
class ResidueProfile:
    x: list[list[int]]
    y: list[list[int]]
    y13_sister: int | None  # corner coordinate in sister scaling, when applicable


def residue_profile(a: Mat3, d: int, sister_corner: bool = False) -> ResidueProfile:
    xs = [[0] * 3 for _ in range(3)]
    ys = [[0] * 3 for _ in range(3)]
    y13 = None
    for j in range(3):
        for k in range(3):
            if sister_corner and (j, k) == (0, 2):
                parts = sister_corner_parts(a[0, 2], d)
                if parts is None:
                    raise PreconditionError("corner entry not in the sister lattice")
                xs[0][2], y13 = parts
                continue
            parts = od_parts(a[j, k], d)
            if parts is None:
                raise PreconditionError(f"entry ({j},{k}) not in the O_d lattice")
            xs[j][k], ys[j][k] = parts
    return ResidueProfile(xs, ys, y13)


def congruence_check(a: Mat3, d: int) -> bool:
    """The two quadratic congruences derived from the unitarity rows."""
    if not is_unitary_J(a):
        raise PreconditionError("congruence_check requires a J-unitary matrix")
    if not in_group(a, Picard(d)):
        raise PreconditionError("congruence_check requires a Picard-group element")
    p = residue_profile(a, d)
    x, y = p.x, p.y
    if d == 2:
        return (
            x[1][0] % 2 == 0
            and x[2][1] % 2 == 0
            and (y[1][0] ** 2 + x[0][0] * x[2][0]) % 2 == 0
            and (y[2][1] ** 2 + x[2][0] * x[2][2]) % 2 == 0
        )
    return (
        (x[1][0] ** 2 + 2 * x[0][0] * x[2][0]) % d == 0
        and (x[2][1] ** 2 + 2 * x[2][0] * x[2][2]) % d == 0
    )


def congruence_check_printed(a: Mat3, d: int) -> bool:
    """The congruences in the form displayed in the source (for comparison)."""
    p = residue_profile(a, d)
    x = p.x
    if d == 2:
        return (
            (x[1][0] ** 2 + x[0][0] * x[2][0]) % 2 == 0
            and (x[2][1] ** 2 + x[2][0] * x[2][2]) % 2 == 0
        )
    return (
        (x[1][0] ** 2 - (d - 1) * x[0][0] * x[2][0]) % d == 0
        and (x[2][1] ** 2 - (d - 1) * x[2][0] * x[2][2]) % d == 0
    )


# -- classification -----------------------------------------------------------------


def coset_index_picard(g: Mat3, d: int, reps: CosetReps | None = None) -> int:
    if not in_group(g, Picard(d)):
        raise PreconditionError("not a Picard-group element")
    reps = reps or coset_reps(d)
    p = residue_profile(g, d)
    x = p.x
    if d == 2:
        if x[2][0] % 2 == 0:
            m = 0
        elif x[0][0] % 2 == 0:
            m = 1
        else:
            m = 2
    else:
        x21, x31, x11 = x[1][0] % d, x[2][0] % d, x[0][0] % d
        if x21 == 0:
            m = 0 if x31 == 0 else 1
        else:
            t = (x21 * pow(x11, -1, d)) % d
            m = 2 * t if t <= (d - 1) // 2 else 2 * (d - t) + 1
    if not in_group(reps.reps_picard[m].inverse() * g, Intersection(d)):
        raise CosetInconsistencyError(f"residue rule chose coset {m} but H-test fails")
    return m


def coset_index_sister(g: Mat3, d: int, reps: CosetReps | None = None) -> int:
    if not in_group(g, Sister(d)):
        raise PreconditionError("not a sister-group element")
    reps = reps or coset_reps(d)
    p = residue_profile(g, d, sister_corner=True)
    assert p.y13_sister is not None
    y13 = p.y13_sister
    x33 = p.x[2][2]
    modulus = 2 if d == 2 else d
    if y13 % modulus == 0:
        m = 0
    elif x33 % modulus == 0:
        m = 1
    elif d == 2:
        m = 2
    else:
        t = (y13 * pow(x33, -1, d)) % d
        m = 2 * t if t <= (d - 1) // 2 else 2 * (d - t) + 1
    if not in_group(reps.reps_sister[m].inverse() * g, Intersection(d)):
        raise CosetInconsistencyError(f"residue rule chose coset {m} but H-test fails")
    return m


def _h_failure_evidence(m: Mat3, d: int) -> str | None:
    """Why m is not in H, as a short condition string; None if it is in H."""
    if in_group(m, Intersection(d)):
        return None
    modulus = 2 if d == 2 else d
    try:
        p = residue_profile(m, d)
    except PreconditionError:
        return "an entry leaves the O_d lattice"
    slots = {"x21": p.x[1][0], "x31": p.x[2][0], "x32": p.x[2][1]}
    bad = [f"{name} = {val} not divisible by {modulus}"
           for name, val in slots.items() if val % modulus]
    return "; ".join(bad) if bad else "corner entry leaves the sister lattice"


def verify_coset_disjointness(d: int, reps: CosetReps | None = None) -> list[dict]:
    """Check reps[i]^-1 reps[j] is outside H for all i < j, both groups."""
    reps = reps or coset_reps(d)
    results = []
    for kind, rep_list in (("picard", reps.reps_picard), ("sister", reps.reps_sister)):
        for i in range(len(rep_list)):
            for j in range(i + 1, len(rep_list)):
                m = rep_list[i].inverse() * rep_list[j]
                ev = _h_failure_evidence(m, d)
                results.append(
                    {
                        "group": kind,
                        "pair": (i, j),
                        "disjoint": ev is not None,
                        "evidence": ev or "product lies in H",
                    }
                )
    return results


def one_cusp_witness(d: int) -> bool:
    """I0 is a sister-group element with I0(0) = infinity."""
    i0 = group_data(d).generators["I0"]
    return in_group(i0, Sister(d)) and act_boundary(i0, origin(d)) is INFINITY


# -- corpus generation ---------------------------------------------------------------


def _sqrt_d(d: int) -> RQuad:
    return RQuad.root(d)


def picard_alphabet(d: int) -> dict[str, Mat3]:
    """Generators for random Picard-group words: the coset representatives
    plus integral Heisenberg translations and the order-2 rotation."""
    gd = group_data(d)
    reps = coset_reps(d)
    alpha: dict[str, Mat3] = {"R1": gd.generators["R1"]}
    for i, m in enumerate(reps.reps_picard[1:], start=1):
        alpha[f"g{i}"] = m
    if d == 2:
        alpha["Ta"] = translation_matrix(CQuad.make(0, 0, 0, 1, d), RQuad.of(0, d))
        alpha["Tb"] = translation_matrix(CQuad.of(2, d), RQuad.of(0, d))
        alpha["Tv"] = vertical_translation_matrix(RQuad.root(d, 2))
    else:
        alpha["Ta"] = translation_matrix(CQuad.one(d), RQuad.root(d))
        alpha["Tb"] = translation_matrix(gd.omega, RQuad.root(d, 2))
        alpha["Tv"] = vertical_translation_matrix(RQuad.root(d, 2))
    for name, m in alpha.items():
        assert in_group(m, Picard(d)), name
    return alpha


def sister_alphabet(d: int) -> dict[str, Mat3]:
    return dict(group_data(d).generators)


def h_alphabet(d: int) -> dict[str, Mat3]:
    """Elements of H = sister intersect Picard, for coset-invariance tests."""
    gd = group_data(d)
    out = {"R1": gd.generators["R1"], "R3": gd.generators["R3"],
           "Td": gd.generators["T"] ** d}
    if d == 2:
        out["R2"] = gd.generators["R2"]
    for name, m in out.items():
        assert in_group(m, Intersection(d)), name
    return out


def random_words(alphabet: dict[str, Mat3], count: int, max_len: int, seed: int) -> list[Mat3]:
    rng = random.Random(seed)
    names = sorted(alphabet)
    out = []
    for _ in range(count):
        length = rng.randint(1, max_len)
        word: Word = [(rng.choice(names), rng.choice((-1, 1))) for _ in range(length)]
        out.append(eval_word(alphabet, word))
    return out


def classification_report(d: int, count: int, seed: int, max_len: int = 12) -> dict:
    """Classify seeded random words of both groups; every element must land
    in a coset whose representative clears it into H."""
    reps = coset_reps(d)
    picard_corpus = random_words(picard_alphabet(d), count, max_len, seed)
    sister_corpus = random_words(sister_alphabet(d), count, max_len, seed + 1)
    h_elems = list(h_alphabet(d).values())

    picard_hist = [0] * len(reps.reps_picard)
    for g in picard_corpus:
        assert in_group(g, Picard(d))
        assert congruence_check(g, d)
        picard_hist[coset_index_picard(g, d, reps)] += 1

    sister_hist = [0] * len(reps.reps_sister)
    for g in sister_corpus:
        assert in_group(g, Sister(d))
        sister_hist[coset_index_sister(g, d, reps)] += 1

    # Well-definedness on cosets: right multiplication by H fixes the index.
    rng = random.Random(seed + 2)
    for g in rng.sample(picard_corpus, min(60, len(picard_corpus))):
        h = rng.choice(h_elems)
        assert coset_index_picard(g * h, d, reps) == coset_index_picard(g, d, reps)
    for g in rng.sample(sister_corpus, min(60, len(sister_corpus))):
        h = rng.choice(h_elems)
        assert coset_index_sister(g * h, d, reps) == coset_index_sister(g, d, reps)

    return {
        "seed": seed,
        "count": count,
        "picard_histogram": picard_hist,
        "sister_histogram": sister_hist,
    }
