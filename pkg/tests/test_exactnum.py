from __future__ import annotations

import math
import random
from fractions import Fraction

import pytest

from sisterpicard.exactnum import (
    CQuad,
    FieldMismatchError,
    NotInFieldError,
    RQuad,
    in_Od,
    integer_parts,
    parse_decimal,
    rquad_sign,
)


def rq(a, b, d):
    return RQuad(Fraction(a), Fraction(b), d)


def test_sign_examples():
    assert rquad_sign(rq(0, 0, 2)) == 0
    assert rquad_sign(rq(-1, 1, 2)) == 1          # sqrt(2) > 1
    assert rquad_sign(rq(3, -1, 7)) == 1          # 3 > sqrt(7) since 9 > 7
    assert rquad_sign(rq(-3, 1, 7)) == -1
    assert rquad_sign(rq(1, -1, 2)) == -1         # 1 < sqrt(2)


def test_sign_agrees_with_float_on_random_inputs():
    rng = random.Random(0x5EED)
    for _ in range(10_000):
        d = rng.choice([2, 7, 11])
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
        b = Fraction(rng.randint(-50, 50), rng.randint(1, 30))
        x = RQuad(a, b, d)
        shadow = float(a) + float(b) * math.sqrt(d)
        if abs(shadow) > 1e-9:
            assert rquad_sign(x) == (1 if shadow > 0 else -1)
        else:
            # Too close to call in float; the exact sign must still be total.
            assert rquad_sign(x) in (-1, 0, 1)


def _random_rquad(rng, d):
    return RQuad(
        Fraction(rng.randint(-20, 20), rng.randint(1, 12)),
        Fraction(rng.randint(-20, 20), rng.randint(1, 12)),
        d,
    )


def test_field_axioms_random():
    rng = random.Random(1234)
    for _ in range(400):
        d = rng.choice([2, 7, 11])
        x, y, z = (_random_rquad(rng, d) for _ in range(3))
        assert (x + y) + z == x + (y + z)
        assert (x * y) * z == x * (y * z)
        assert x * (y + z) == x * y + x * z
        assert x + (-x) == RQuad.of(0, d)
        if not x.is_zero():
            assert x * x.inverse() == RQuad.of(1, d)


def test_complex_field_axioms_random():
    rng = random.Random(99)
    for _ in range(300):
        d = rng.choice([2, 7, 11])
        u = CQuad(_random_rquad(rng, d), _random_rquad(rng, d))
        v = CQuad(_random_rquad(rng, d), _random_rquad(rng, d))
        w = CQuad(_random_rquad(rng, d), _random_rquad(rng, d))
        assert (u * v) * w == u * (v * w)
        assert u * (v + w) == u * v + u * w
        assert u.conj().conj() == u
        assert (u * v).conj() == u.conj() * v.conj()
        assert u.norm_sq() == (u * u.conj()).re
        if not u.is_zero():
            assert u * u.inverse() == CQuad.one(d)


def test_field_mismatch_is_an_error():
    with pytest.raises(FieldMismatchError):
        rq(1, 1, 2) + rq(1, 1, 7)
    with pytest.raises(FieldMismatchError):
        rq(1, 1, 2) * rq(0, 1, 11)


def test_parse_decimal():
    assert parse_decimal("0.5") == Fraction(1, 2)
    assert parse_decimal("0.630159") == Fraction(630159, 1_000_000)
    assert parse_decimal("-0.283421") == Fraction(-283421, 1_000_000)
    assert parse_decimal("3/4") == Fraction(3, 4)
    with pytest.raises(ValueError):
        parse_decimal("0..5")


def test_in_Od_examples():
    # 1 + i*sqrt(2) generates Z[i*sqrt(2)].
    assert in_Od(CQuad.make(1, 0, 0, 1, 2), 2)
    # omega_7 = 1/2 + i*sqrt(7)/2 is integral for d = 7.
    assert in_Od(CQuad.make(Fraction(1, 2), 0, 0, Fraction(1, 2), 7), 7)
    # i/sqrt(2) = (1/2) * i*sqrt(2) is not integral.
    assert not in_Od(CQuad.make(0, 0, 0, Fraction(1, 2), 2), 2)
    # 1/2 alone is not integral for d = 7 (parity fails: x=1, y=0).
    assert not in_Od(CQuad.make(Fraction(1, 2), 0, 0, 0, 7), 7)
    with pytest.raises(NotInFieldError):
        in_Od(CQuad.make(0, 1, 0, 0, 2), 2)  # sqrt(2) real part


def test_in_Od_closed_under_ring_ops():
    rng = random.Random(7)
    for d in (2, 7, 11):
        members = []
        for _ in range(40):
            if d % 4 == 3:
                x, y = rng.randint(-6, 6), rng.randint(-6, 6)
                if (x - y) % 2:
                    y += 1
                members.append(CQuad.make(Fraction(x, 2), 0, 0, Fraction(y, 2), d))
            else:
                members.append(
                    CQuad.make(rng.randint(-6, 6), 0, 0, rng.randint(-6, 6), d)
                )
        for _ in range(200):
            u, v = rng.choice(members), rng.choice(members)
            assert in_Od(u + v, d)
            assert in_Od(u * v, d)


def test_integer_parts_examples_and_roundtrip():
    # omega_7 -> (1, 1)
    assert integer_parts(CQuad.make(Fraction(1, 2), 0, 0, Fraction(1, 2), 7), 7) == (1, 1)
    # 2 - i*sqrt(2) -> (2, -1)
    assert integer_parts(CQuad.make(2, 0, 0, -1, 2), 2) == (2, -1)
    # 3/2 + i*sqrt(11)/2 -> (3, 1)
    assert integer_parts(CQuad.make(Fraction(3, 2), 0, 0, Fraction(1, 2), 11), 11) == (3, 1)
    # Outside the lattice.
    assert integer_parts(CQuad.make(Fraction(1, 3), 0, 0, 0, 7), 7) is None
    assert integer_parts(CQuad.make(0, 1, 0, 0, 2), 2) is None

    rng = random.Random(11)
    for _ in range(300):
        d = rng.choice([2, 7, 11])
        x, y = rng.randint(-9, 9), rng.randint(-9, 9)
        if d % 4 == 3:
            z = CQuad.make(Fraction(x, 2), 0, 0, Fraction(y, 2), d)
        else:
            z = CQuad.make(x, 0, 0, y, d)
        assert integer_parts(z, d) == (x, y)


def test_division_and_order():
    x = rq(1, 1, 2)          # 1 + sqrt(2)
    y = rq(-1, 1, 2)         # sqrt(2) - 1 = 1/x
    assert x.inverse() == y
    assert x > 0 and y > 0
    assert rq(0, 1, 2) < rq(Fraction(3, 2), 0, 2)   # sqrt(2) < 3/2
    assert abs(rq(0, -1, 7)) == rq(0, 1, 7)
    assert float(rq(1, 1, 2)) == pytest.approx(1 + math.sqrt(2))


def test_json_roundtrip():
    x = rq(Fraction(3, 4), Fraction(-1, 7), 11)
    assert RQuad.from_json(x.to_json(), 11) == x
    z = CQuad(x, rq(0, Fraction(2, 3), 11))
    assert CQuad.from_json(z.to_json(), 11) == z
