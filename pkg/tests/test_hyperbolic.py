"""Frames, geodesics, wall predicates, cycle integrals."""

import math
import random

import pytest

from thetalift.lattice import Vector, equivalent, gamma0_action
from thetalift.hyperbolic import (
    crossed_walls,
    cycle_integral,
    geodesic_of,
    is_crossed,
    majorant,
    negative_vector,
    on_wall,
    p_component,
    q_component,
)
from thetalift.weilrep import CuspFormInput, delta_qexp


def test_frame_components_frozen():
    # the primitive isotropic vector toward the cusp at infinity
    ell = Vector(-1, 0, 0)
    for level in (1, 2, 3):
        for z in (1j, 0.3 + 0.7j, -1.5 + 2.2j):
            root = math.sqrt(2 * level)
            assert abs(p_component(ell, z, level) - 1 / (root * z.imag)) < 1e-14
            assert abs(q_component(ell, z, level) - 1 / root) < 1e-14


def test_negative_vector_normalization():
    for level in (1, 2):
        for z in (1j, 0.4 + 1.3j):
            a, b, c = negative_vector(z, level)
            # plug the float triple into the frame formulas directly
            x, y = z.real, z.imag
            p = -(c * level * (x * x + y * y) - b * x + a) / (math.sqrt(2 * level) * y)
            q = -(c * level * z * z - b * z + a) / math.sqrt(2 * level)
            assert abs(p - 1.0) < 1e-12
            assert abs(q) < 1e-12


def test_majorant_identity():
    rng = random.Random(23)
    for _ in range(30):
        level = rng.choice([1, 2, 3])
        vec = Vector(rng.randint(-5, 5), rng.randint(-8, 8), rng.randint(-5, 5))
        z = complex(rng.uniform(-2, 2), rng.uniform(0.2, 2.5))
        q_val = float(vec.quad(level))
        p = p_component(vec, z, level)
        assert abs(majorant(vec, z, level) - (q_val + p * p)) < 1e-9


def test_geodesic_shapes():
    vertical = geodesic_of(Vector(0, 1, 0), 1)
    assert vertical.vertical and vertical.foot == 0.0
    unit = geodesic_of(Vector(-1, 0, 1), 1)
    assert not unit.vertical
    assert unit.center == 0.0 and abs(unit.radius - 1.0) < 1e-15
    assert unit.endpoints() == (-1.0, 1.0)
    with pytest.raises(ValueError):
        geodesic_of(Vector(1, 0, 1), 1)  # negative norm


def test_orientation_rule():
    assert geodesic_of(Vector(1, 1, -1), 1).counterclockwise
    assert not geodesic_of(Vector(-1, 1, 1), 1).counterclockwise
    assert geodesic_of(Vector(0, 2, 1), 1).counterclockwise
    assert not geodesic_of(Vector(0, -2, 1), 1).counterclockwise


def test_is_crossed():
    unit = Vector(-1, 0, 1)
    assert is_crossed(unit, 0.5j, 1)
    assert not is_crossed(unit, 2j, 1)
    assert is_crossed(-unit, 0.5j, 1)
    assert not is_crossed(Vector(0, 1, 0), 0.5j, 1)  # vertical


def test_on_wall():
    unit = Vector(-1, 0, 1)
    assert on_wall(unit, 1j, 1)
    assert on_wall(unit, math.cos(1.0) + 1j * math.sin(1.0), 1)
    assert not on_wall(unit, 1.01j, 1)


def test_crossed_walls_frozen():
    walls = crossed_walls(1, 4, 0, 0.5j)
    assert sorted(walls, key=lambda v: (v.a, v.b, v.c)) == [
        Vector(-1, 0, 1), Vector(1, 0, -1),
    ]
    assert crossed_walls(1, 4, 0, 2j) == []


def test_crossed_walls_match_predicate():
    rng = random.Random(5)
    for _ in range(10):
        z = complex(rng.uniform(-1, 1), rng.uniform(0.2, 1.0))
        for disc, coset, level in ((4, 0, 1), (5, 1, 1), (8, 0, 2), (9, 1, 1)):
            got = set(crossed_walls(level, disc, coset, z))
            # brute force over a box
            brute = set()
            for a in range(-30, 31):
                for c in range(-12, 13):
                    bb = disc + 4 * level * a * c
                    if bb < 0:
                        continue
                    r = math.isqrt(bb)
                    if r * r != bb:
                        continue
                    for b in {r, -r}:
                        v = Vector(a, b, c)
                        if (b - coset) % (2 * level) == 0 and is_crossed(v, z, level):
                            brute.add(v)
            assert got == brute


# ---------------------------------------------------------------------------
# Cycle integrals against the weight 12 level 1 cusp form


DELTA_FORM = CuspFormInput(level=1, weight=12, coefficients=delta_qexp(40))


def test_cycle_integral_chart_agreement():
    vec = Vector(-1, -1, 1)
    by_angle = cycle_integral(DELTA_FORM, vec, 1, 6, "angle")
    by_length = cycle_integral(DELTA_FORM, vec, 1, 6, "arclength")
    assert abs(by_angle) > 1e-12
    assert abs(by_angle - by_length) < 1e-9 * abs(by_angle)


def test_cycle_integral_base_point_independence():
    vec = Vector(-1, -1, 1)
    default = cycle_integral(DELTA_FORM, vec, 1, 6)
    moved = cycle_integral(DELTA_FORM, vec, 1, 6, base_angle=1.1)
    assert abs(default - moved) < 1e-9 * abs(default)


def test_cycle_integral_representative_independence():
    vec = Vector(-1, -1, 1)
    base = cycle_integral(DELTA_FORM, vec, 1, 6)
    for g in (((1, 1), (0, 1)), ((0, -1), (1, 0)), ((2, 1), (1, 1))):
        other = gamma0_action(g, vec, 1)
        got = cycle_integral(DELTA_FORM, other, 1, 6)
        assert abs(got - base) < 1e-9 * abs(base)


def test_cycle_integral_negation():
    vec = Vector(-1, -1, 1)
    base = cycle_integral(DELTA_FORM, vec, 1, 6)
    neg = cycle_integral(DELTA_FORM, -vec, 1, 6)
    assert abs(neg - (-1) ** 6 * base) < 1e-9 * abs(base)


def test_split_cycle_charts_agree():
    # disc 1 vectors: one vertical, one semicircular, both improper
    upright = cycle_integral(DELTA_FORM, Vector(0, 1, 0), 1, 6)
    arc = cycle_integral(DELTA_FORM, Vector(0, 1, 1), 1, 6)
    assert abs(upright) > 1e-12
    if equivalent(1, Vector(0, 1, 0), Vector(0, 1, 1)):
        assert abs(upright - arc) < 1e-8 * abs(upright)


def test_split_cycle_translation_invariance():
    base = cycle_integral(DELTA_FORM, Vector(0, 1, 0), 1, 6)
    shifted = cycle_integral(DELTA_FORM, Vector(1, 1, 0), 1, 6)
    assert abs(base - shifted) < 1e-9 * abs(base)


def test_vertical_cycle_matches_completed_l_value():
    # folding y -> 1/y turns the cycle over the imaginary axis into
    # 2 sum_n a(n) Gamma(6, 2 pi n) / (2 pi n)^6, a rapidly convergent oracle
    from thetalift.arith import incomplete_gamma

    expected = 2 * sum(
        a * incomplete_gamma(6, 2 * math.pi * n) / (2 * math.pi * n) ** 6
        for n, a in DELTA_FORM.coefficients.items()
    )
    got = cycle_integral(DELTA_FORM, Vector(0, 1, 0), 1, 6)
    assert abs(got - expected) < 1e-10 * abs(expected)
