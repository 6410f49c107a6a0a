"""Lattice model, group actions, genus characters, Pell automorphs, orbits."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from thetalift.arith import DiscriminantPair
from thetalift.lattice import (
    SquareDiscriminantError,
    Vector,
    atkin_lehner_action,
    atkin_lehner_matrix,
    automorph,
    equivalent,
    gamma0_action,
    genus_character,
    gl_action,
    inner,
    merge_orbits,
    orbit_representatives,
    pell_fundamental,
    quad,
    vectors_with_disc,
)

T_MAT = ((1, 1), (0, 1))
S_MAT = ((0, -1), (1, 0))


def lower_gen(level):
    return ((1, 0), (level, 1))


def random_gamma0(level, rng, length=6):
    g = ((1, 0), (0, 1))
    for _ in range(length):
        h = random.choice([T_MAT, ((1, -1), (0, 1)), lower_gen(level), ((1, 0), (-level, 1))])
        g = (
            (g[0][0] * h[0][0] + g[0][1] * h[1][0], g[0][0] * h[0][1] + g[0][1] * h[1][1]),
            (g[1][0] * h[0][0] + g[1][1] * h[1][0], g[1][0] * h[0][1] + g[1][1] * h[1][1]),
        )
    return g


# ---------------------------------------------------------------------------
# Quadratic form and actions


def test_quad_and_inner():
    v = Vector(1, 2, 3)
    assert quad(v, 1) == Fraction(4 - 12, 4)
    assert quad(v, 2) == Fraction(4 - 24, 8)
    w = Vector(0, 2, 0)
    assert inner(v, w, 1) == Fraction(2 * 2, 2)
    # polarization: (x, x) = 2 Q(x)
    for level in (1, 2, 3):
        assert inner(v, v, level) == 2 * quad(v, level)


def test_translation_action():
    assert gamma0_action(T_MAT, Vector(0, 1, 0), 1) == Vector(1, 1, 0)


def test_inversion_action():
    assert gamma0_action(S_MAT, Vector(1, 0, 0), 1) == Vector(0, 0, 1)


def test_action_rejects_wrong_level():
    with pytest.raises(ValueError):
        gamma0_action(S_MAT, Vector(1, 0, 0), 2)
    with pytest.raises(ValueError):
        gamma0_action(((2, 0), (0, 1)), Vector(1, 0, 0), 1)


@given(
    st.integers(1, 4),
    st.integers(-5, 5), st.integers(-8, 8), st.integers(-5, 5),
    st.integers(0, 10 ** 6),
)
@settings(deadline=None, max_examples=80)
def test_action_preserves_form_and_coset(level, a, b, c, seed):
    rng = random.Random(seed)
    random.seed(seed)
    g = random_gamma0(level, rng, length=5)
    v = Vector(a, b, c)
    w = gamma0_action(g, v, level)
    assert w.form_disc(level) == v.form_disc(level)
    assert w.coset(level) == v.coset(level)
    # action by the inverse returns to the start
    ginv = ((g[1][1], -g[0][1]), (-g[1][0], g[0][0]))
    assert gamma0_action(ginv, w, level) == v


def test_fricke_involution():
    v = Vector(2, 3, 5)
    for level in (1, 2, 3, 4):
        w = atkin_lehner_action(level, v, level)
        assert w == Vector(5, -3, 2)
        assert atkin_lehner_action(level, w, level) == v
        assert w.form_disc(level) == v.form_disc(level)
        assert w.coset(level) == (-v.coset(level)) % (2 * level)


def test_partial_atkin_lehner():
    level = 6
    for m in (2, 3):
        mat = atkin_lehner_matrix(m, level)
        det = mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]
        assert det == m
        assert mat[1][0] % level == 0
        v = Vector(1, 4, -2)
        w = gl_action(mat, v, level)
        assert w.form_disc(level) == v.form_disc(level)
        # squaring W_m lands back in the same class
        w2 = gl_action(mat, w, level)
        assert w2.coset(level) == v.coset(level)
        assert equivalent(level, w2, v)


def test_atkin_lehner_rejects_non_exact_divisor():
    with pytest.raises(ValueError):
        atkin_lehner_matrix(2, 4)


# ---------------------------------------------------------------------------
# Genus character


def test_trivial_character():
    pair = DiscriminantPair(1, 1, 1)
    for v in [Vector(1, 1, 0), Vector(-3, 5, 2), Vector(0, 2, 0)]:
        assert genus_character(pair, v) == 1


def test_genus_character_frozen():
    pair = DiscriminantPair(5, 1, 1)
    assert genus_character(pair, Vector(-1, -1, 1)) == 1
    assert genus_character(pair, Vector(1, 1, -1)) == 1
    # disc 4 is not divisible by 5
    assert genus_character(pair, Vector(0, 2, 0)) == 0


def test_genus_character_negative_twist():
    pair = DiscriminantPair(-4, 2, 1)
    v = Vector(1, 4, 1)  # disc 12, quotient -3 = 1 mod 4
    assert genus_character(pair, v) == 1
    assert genus_character(pair, -v) == -1


def test_genus_character_odd_under_negation():
    pos = DiscriminantPair(5, 1, 1)
    neg = DiscriminantPair(-4, 2, 1)
    for v in vectors_with_disc(1, 20, 0, 4):
        assert genus_character(pos, -v) == genus_character(pos, v)
    for v in vectors_with_disc(1, 12, 0, 4):
        assert genus_character(neg, -v) == -genus_character(neg, v)


def test_genus_character_gamma_invariant():
    rng = random.Random(7)
    random.seed(7)
    for pair in [DiscriminantPair(5, 1, 1), DiscriminantPair(-4, 2, 1),
                 DiscriminantPair(8, 4, 2), DiscriminantPair(-7, 1, 2)]:
        level = pair.level
        disc = 4 * abs(pair.delta) * level  # m = 1 wall discriminant
        seeds = vectors_with_disc(level, disc, (pair.r) % (2 * level), 4)
        for v in seeds[:6]:
            chi = genus_character(pair, v)
            for _ in range(4):
                g = random_gamma0(level, rng, length=5)
                assert genus_character(pair, gamma0_action(g, v, level)) == chi


def test_genus_character_periodic_mod_delta_lattice():
    pair = DiscriminantPair(5, 1, 1)
    v = Vector(-1, -1, 1)
    chi = genus_character(pair, v)
    for shift in [Vector(5, 0, 0), Vector(0, 10, 0), Vector(0, 0, 5)]:
        w = Vector(v.a + shift.a, v.b + shift.b, v.c + shift.c)
        if w.form_disc(1) % 5 == 0:
            got = genus_character(pair, w)
            if got:
                assert got == chi


# ---------------------------------------------------------------------------
# Pell and automorphs


def test_pell_frozen():
    assert pell_fundamental(5) == (3, 1)
    assert pell_fundamental(8) == (6, 2)
    assert pell_fundamental(12) == (4, 1)
    assert pell_fundamental(13) == (11, 3)
    assert pell_fundamental(21) == (5, 1)


def brute_pell(disc, cap=4000):
    for u in range(1, cap):
        tt = disc * u * u + 4
        t = int(tt ** 0.5)
        for cand in (t - 1, t, t + 1):
            if cand > 0 and cand * cand == tt:
                return cand, u
    raise AssertionError("no solution in range")


@pytest.mark.parametrize("disc", [5, 8, 12, 13, 17, 20, 21, 24, 28, 29, 33, 40, 44, 60])
def test_pell_matches_brute_force(disc):
    assert pell_fundamental(disc) == brute_pell(disc)


def test_pell_rejects_squares():
    with pytest.raises(SquareDiscriminantError):
        pell_fundamental(16)
    with pytest.raises(SquareDiscriminantError):
        pell_fundamental(1)


def test_automorph_frozen():
    assert automorph(Vector(-1, -1, 1), 1) == ((1, 1), (1, 2))


@pytest.mark.parametrize("level,vec", [
    (1, Vector(-1, -1, 1)),
    (1, Vector(1, 1, -1)),
    (1, Vector(1, 2, -2)),
    (2, Vector(1, 4, -1)),
    (3, Vector(1, 6, 1)),
])
def test_automorph_stabilizes(level, vec):
    g = automorph(vec, level)
    det = g[0][0] * g[1][1] - g[0][1] * g[1][0]
    assert det == 1
    assert g[1][0] % level == 0
    assert gamma0_action(g, vec, level) == vec


# ---------------------------------------------------------------------------
# Enumeration and orbits


def test_vectors_with_disc_count():
    vecs = vectors_with_disc(1, 1, 1, 1)
    assert len(vecs) == 10
    for v in vecs:
        assert v.form_disc(1) == 1
        assert v.b % 2 == 1


def test_vectors_with_disc_empty_for_bad_coset():
    assert vectors_with_disc(1, 2, 0, 6) == []
    assert vectors_with_disc(2, 5, 0, 6) == []


def test_orbit_counts_level_one():
    assert len(orbit_representatives(1, 5, 1)) == 1
    assert len(orbit_representatives(1, 8, 0)) == 1
    # narrow class number of disc 12 is 2
    assert len(orbit_representatives(1, 12, 0)) == 2
    assert orbit_representatives(1, 2, 0) == []


def test_orbit_merging_detects_translates():
    rng = random.Random(11)
    random.seed(11)
    for level in (1, 2, 3):
        v = Vector(1, 2 * level + 2, 1)
        for _ in range(5):
            g = random_gamma0(level, rng, length=6)
            w = gamma0_action(g, v, level)
            assert equivalent(level, v, w)


def test_inequivalent_cosets():
    assert not equivalent(1, Vector(1, 1, 0), Vector(1, 2, 0))


def test_square_disc_orbits():
    # split classes exist: disc 1, level 1
    reps = orbit_representatives(1, 1, 1)
    assert len(reps) >= 1
    for r in reps:
        assert r.form_disc(1) == 1


def test_merge_orbits_separates_distinct_classes():
    reps = orbit_representatives(1, 12, 0)
    assert len(merge_orbits(1, reps, 64)) == 2
