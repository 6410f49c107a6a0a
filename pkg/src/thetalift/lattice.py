"""Integral binary quadratic forms of level N as a signature (2,1) lattice.

A vector is an integer triple (a, b, c) standing for the trace zero matrix

        [ b/2N   -a/N ]
        [  c    -b/2N ]

with quadratic form Q = (b^2 - 4Nac)/4N (so disc = 4N Q is the usual form
discriminant b^2 - 4Nac) and bilinear form (x, y) = b1 b2/2N - a1 c2 - a2 c1.
The even lattice L is the set of triples with 2N | b; its discriminant group
L'/L is cyclic of order 2N, a coset being determined by b mod 2N.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .arith import kronecker


def _as_int(x, what: str) -> int:
    if isinstance(x, Fraction):
        if x.denominator != 1:
            raise ValueError(f"{what} must be integral, got {x}")
        return int(x)
    f = int(x)
    if f != x:
        raise ValueError(f"{what} must be integral, got {x}")
    return f


@dataclass(frozen=True)
class Vector:
    """Lattice vector (a, b, c) in the dual lattice L' of level N."""

    a: int
    b: int
    c: int

    def __iter__(self):
        yield self.a
        yield self.b
        yield self.c

    def __neg__(self) -> "Vector":
        return Vector(-self.a, -self.b, -self.c)

    def form_disc(self, level: int) -> int:
        return self.b * self.b - 4 * level * self.a * self.c

    def quad(self, level: int) -> Fraction:
        return Fraction(self.b * self.b - 4 * level * self.a * self.c, 4 * level)

    def coset(self, level: int) -> int:
        return self.b % (2 * level)

    def primitive_part(self) -> tuple["Vector", int]:
        g = gcd(gcd(abs(self.a), abs(self.b)), abs(self.c))
        if g == 0:
            raise ValueError("zero vector has no primitive part")
        return Vector(self.a // g, self.b // g, self.c // g), g


def inner(x: Vector, y: Vector, level: int) -> Fraction:
    return Fraction(x.b * y.b, 2 * level) - x.a * y.c - x.c * y.a


def quad(x: Vector, level: int) -> Fraction:
    return x.quad(level)


# ---------------------------------------------------------------------------
# Group actions


def gamma0_action(g, vec: Vector, level: int) -> Vector:
    """Image of vec under conjugation by g in Gamma_0(N) (integer matrix,
    det 1, lower left divisible by N)."""
    p, q = g[0]
    s, t = g[1]
    if p * t - q * s != 1:
        raise ValueError("matrix must have determinant 1")
    if s % level:
        raise ValueError("matrix must be upper triangular modulo the level")
    a, b, c = vec.a, vec.b, vec.c
    a2 = a * p * p + b * p * q + c * level * q * q
    b2 = b * (p * t + q * s) + 2 * a * p * s + 2 * c * level * q * t
    c2 = (a * s * s + b * s * t) // level + c * t * t
    return Vector(a2, b2, c2)


def _conjugate(g, vec: Vector, level: int) -> Vector:
    # g M g^-1 on the matrix model, exact rationals; det(g) cancels
    p, q = Fraction(g[0][0]), Fraction(g[0][1])
    s, t = Fraction(g[1][0]), Fraction(g[1][1])
    det = p * t - q * s
    if det <= 0:
        raise ValueError("matrix must have positive determinant")
    m11 = Fraction(vec.b, 2 * level)
    m12 = Fraction(-vec.a, level)
    m21 = Fraction(vec.c)
    n11 = (p * (m11 * t - m12 * s) + q * (m21 * t + m11 * s)) / det
    n12 = (p * (-m11 * q + m12 * p) + q * (-m21 * q - m11 * p)) / det
    n21 = (s * (m11 * t - m12 * s) + t * (m21 * t + m11 * s)) / det
    return Vector(
        _as_int(-n12 * level, "a"),
        _as_int(n11 * 2 * level, "b"),
        _as_int(n21, "c"),
    )


def gl_action(g, vec: Vector, level: int) -> Vector:
    """Conjugation by a rational matrix of positive determinant.  The result
    must land back in L'; a ValueError flags fractional output.  Used for
    Atkin-Lehner involutions."""
    return _conjugate(g, vec, level)


def atkin_lehner_matrix(m: int, level: int):
    """A matrix of determinant m realizing the involution W_m, m || N."""
    if level % m or gcd(m, level // m) != 1:
        raise ValueError("W_m needs an exact divisor m of the level")
    if m == level:
        return ((0, -1), (level, 0))
    # alpha m - beta (N/m) = 1
    nm = level // m
    alpha, beta = _solve_bezout(m, nm)
    return ((alpha * m, beta), (level, m))


def _solve_bezout(m: int, nm: int):
    # alpha m - beta nm = 1 with small entries
    g, x, y = _xgcd(m, nm)
    if g != 1:
        raise ValueError("divisors are not coprime")
    return x, -y


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def atkin_lehner_action(m: int, vec: Vector, level: int) -> Vector:
    if m == level:
        return Vector(vec.c, -vec.b, vec.a)
    return gl_action(atkin_lehner_matrix(m, level), vec, level)


# ---------------------------------------------------------------------------
# Enumeration of vectors of fixed discriminant and coset


def vectors_with_disc(level: int, disc: int, coset: int, bound: int) -> list[Vector]:
    """All (a, b, c) with b^2 - 4Nac = disc, b = coset mod 2N, |a|, |c| <= bound."""
    out = []
    two_n = 2 * level
    if (coset * coset - disc) % (4 * level):
        return out
    for a in range(-bound, bound + 1):
        for c in range(-bound, bound + 1):
            bb = disc + 4 * level * a * c
            if bb < 0:
                continue
            r = isqrt(bb)
            if r * r != bb:
                continue
            for b in ({r, -r} if r else {0}):
                if (b - coset) % two_n == 0:
                    out.append(Vector(a, b, c))
    return out


# ---------------------------------------------------------------------------
# Genus characters


class CharacterSearchError(RuntimeError):
    pass


def _divisor_splittings(level: int):
    out = []
    for n1 in range(1, level + 1):
        if level % n1 == 0:
            out.append((n1, level // n1))
    return out


def genus_character(pair, vec: Vector) -> int:
    """Value of the genus character attached to (delta, r) on a lattice vector.

    Zero unless delta divides the form discriminant, the quotient is a square
    modulo 4N, and (a, b, c, delta) are coprime.  Otherwise it equals the
    Kronecker symbol (delta/n) for any n coprime to delta represented by one
    of the forms [N1 a, b, N2 c] with N1 N2 = N.
    """
    delta = pair.delta
    level = pair.level
    if delta == 1:
        return 1
    a, b, c = vec.a, vec.b, vec.c
    disc = b * b - 4 * level * a * c
    if disc % delta:
        return 0
    quot = disc // delta
    if not any((quot - s * s) % (4 * level) == 0 for s in range(2 * level)):
        return 0
    if gcd(gcd(gcd(abs(a), abs(b)), abs(c)), abs(delta)) != 1:
        return 0
    splittings = _divisor_splittings(level)
    box = 10
    while box <= 640:
        for x in range(-box, box + 1):
            for y in range(-box, box + 1):
                for n1, n2 in splittings:
                    n = n1 * a * x * x + b * x * y + n2 * c * y * y
                    if n and gcd(n, delta) == 1:
                        return kronecker(delta, n)
        box *= 4
    raise CharacterSearchError(f"no represented value coprime to {delta} for {vec}")


# ---------------------------------------------------------------------------
# Pell equation and automorphs


class SquareDiscriminantError(ValueError):
    """Raised when an automorph is requested for a split (square) discriminant."""


def _pell_pm1(m: int):
    # minimal (p, q), q >= 1, with p^2 - m q^2 = +-1, via continued fractions
    a0 = isqrt(m)
    if a0 * a0 == m:
        raise SquareDiscriminantError(f"{m} is a perfect square")
    p_prev, p_cur = 1, a0
    q_prev, q_cur = 0, 1
    pp, qq, aa = 0, 1, a0
    while True:
        val = p_cur * p_cur - m * q_cur * q_cur
        if val in (1, -1):
            return p_cur, q_cur, val
        pp = aa * qq - pp
        qq = (m - pp * pp) // qq
        aa = (a0 + pp) // qq
        p_prev, p_cur = p_cur, aa * p_cur + p_prev
        q_prev, q_cur = q_cur, aa * q_cur + q_prev


def pell_fundamental(disc: int) -> tuple[int, int]:
    """Smallest (t, u), u >= 1, with t^2 - disc u^2 = 4, for disc > 0 nonsquare."""
    if disc <= 0:
        raise ValueError("need a positive discriminant")
    r = isqrt(disc)
    if r * r == disc:
        raise SquareDiscriminantError(f"{disc} is a perfect square")
    if disc % 4 == 0:
        m = disc // 4
        p, q, norm = _pell_pm1(m)
        if norm == -1:
            p, q = p * p + m * q * q, 2 * p * q
        return 2 * p, q
    if disc % 4 != 1:
        raise ValueError("discriminants are 0 or 1 modulo 4")
    p, q, norm = _pell_pm1(disc)
    if norm == -1:
        p, q = p * p + disc * q * q, 2 * p * q
    # the minimal solution of t^2 - disc u^2 = 4 is either (2p, 2q) or its
    # exact cube root (t, u) with t^3 - 3t = 2p, u = 2q/(t^2 - 1)
    t = round((2 * p) ** (1.0 / 3.0)) if p < 10 ** 18 else round(math.exp(math.log(2 * p) / 3))
    for cand in (t - 1, t, t + 1, t + 2):
        if cand >= 3 and cand ** 3 - 3 * cand == 2 * p:
            if (2 * q) % (cand * cand - 1) == 0:
                u = (2 * q) // (cand * cand - 1)
                if cand * cand - disc * u * u == 4:
                    return cand, u
    return 2 * p, 2 * q


def automorph(vec: Vector, level: int):
    """Generator of the stabilizer of vec in Gamma_0(N) (up to sign),
    as a 2x2 integer tuple matrix."""
    a, b, c = vec.a, vec.b, vec.c
    disc = b * b - 4 * level * a * c
    t, u = pell_fundamental(disc)
    return ((t + b * u) // 2, -a * u), (c * level * u, (t - b * u) // 2)


# ---------------------------------------------------------------------------
# Orbits modulo Gamma_0(N)


def _p1_normalize(cd, level: int):
    c, d = cd[0] % level, cd[1] % level
    if level == 1:
        return (0, 0)
    best = None
    for unit in range(1, level):
        if gcd(unit, level) != 1:
            continue
        cand = ((unit * c) % level, (unit * d) % level)
        if best is None or cand < best:
            best = cand
    return best


_GEN_T = ((1, 1), (0, 1))
_GEN_TI = ((1, -1), (0, 1))
_GEN_S = ((0, -1), (1, 0))


def _row_times(cd, g):
    return (cd[0] * g[0][0] + cd[1] * g[1][0], cd[0] * g[0][1] + cd[1] * g[1][1])


_GEN_S_INV = ((0, 1), (-1, 0))


def _matrix_conj(g, triple):
    # conjugation of the integer trace zero matrix [[beta, gamma], [delta, -beta]]
    beta, gamma, delta = triple
    p, q = g[0]
    s, t = g[1]
    # rows of g P
    r11, r12 = p * beta + q * delta, p * gamma - q * beta
    r21, r22 = s * beta + t * delta, s * gamma - t * beta
    # times g^-1 = [[t, -q], [-s, p]]
    n11 = r11 * t - r12 * s
    n12 = -r11 * q + r12 * p
    n21 = r21 * t - r22 * s
    return n11, n12, n21


def merge_orbits(level: int, seeds: list[Vector], work_bound: int):
    """Partition seeds into Gamma_0(N) orbits.

    The full modular group does not preserve L' for N > 1, so the search runs
    on the integer trace zero matrices 2N times the matrix model (where any
    SL_2(Z) conjugation stays integral), tracking the right coset of
    Gamma_0(N) through the bottom row.  Two seeds are equivalent exactly when
    their identity coset states meet.  Paths are confined to entries bounded
    by roughly 2N times work_bound.
    """
    if not seeds:
        return []
    identity = _p1_normalize((0, 1), level)
    moves = ((_GEN_T, _GEN_TI), (_GEN_TI, _GEN_T), (_GEN_S, _GEN_S_INV))
    disc_cap = max(abs(v.form_disc(level)) for v in seeds)
    cap = 2 * level * work_bound + isqrt(disc_cap) + 2
    parent = {}

    def find(s):
        while parent[s] != s:
            parent[s] = parent[parent[s]]
            s = parent[s]
        return s

    def union(s, t):
        rs, rt = find(s), find(t)
        if rs != rt:
            parent[rs] = rt

    def state_of(v: Vector):
        return ((v.b, -2 * v.a, 2 * level * v.c), identity)

    seen = set()
    frontier = []
    for v in seeds:
        state = state_of(v)
        if state not in seen:
            seen.add(state)
            parent[state] = state
            frontier.append(state)
    while frontier:
        triple, coset = frontier.pop()
        for g, ginv in moves:
            nt = _matrix_conj(g, triple)
            if any(abs(x) > cap for x in nt):
                continue
            nc = _p1_normalize(_row_times(coset, ginv), level)
            state = (nt, nc)
            if state not in seen:
                seen.add(state)
                parent[state] = state
                frontier.append(state)
            union((triple, coset), state)
    groups = {}
    for v in seeds:
        root = find(state_of(v))
        groups.setdefault(root, []).append(v)
    return list(groups.values())


def orbit_representatives(level: int, disc: int, coset: int, start_bound: int | None = None):
    """Representatives of the Gamma_0(N) classes of vectors with the given
    form discriminant and coset, certified by box doubling."""
    if disc <= 0:
        raise ValueError("orbit enumeration needs a positive discriminant")
    bound = start_bound or max(isqrt(disc) + 1, 2 * level)
    prev_count = None
    for _ in range(8):
        seeds = vectors_with_disc(level, disc, coset, bound)
        orbits = merge_orbits(level, seeds, 4 * bound)
        size = lambda v: (max(abs(v.a), abs(v.c)), v.a, v.b, v.c)
        reps = sorted((min(orbit, key=size) for orbit in orbits), key=size)
        if prev_count is not None and len(reps) == prev_count:
            return reps
        prev_count = len(reps)
        bound *= 2
    raise RuntimeError("orbit count failed to stabilize")


def equivalent(level: int, x: Vector, y: Vector, work_bound: int | None = None) -> bool:
    if x.form_disc(level) != y.form_disc(level) or x.coset(level) != y.coset(level):
        return False
    bound = work_bound or 4 * max(
        isqrt(abs(x.form_disc(level))) + 1,
        abs(x.a), abs(x.c), abs(y.a), abs(y.c), 2 * level,
    )
    orbits = merge_orbits(level, [x, y], bound)
    return len(orbits) == 1
