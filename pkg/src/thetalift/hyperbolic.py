"""Upper half plane geometry attached to vectors: frames, walls, cycles.

For z = x + iy the one dimensional negative part of the quadratic space is
spanned by the norm -1/2 vector lam(z); the scalar components of a lattice
vector (a, b, c) along the moving frame are

    p_z = -(c N |z|^2 - b x + a) / (sqrt(2N) y)      (negative direction)
    q_z = -(c N z^2 - b z + a) / sqrt(2N)            (positive plane, complex)

with the positive definite majorant Q_z = p_z^2/2 + |q_z|^2/(2 y^2)
satisfying Q_z = Q + p_z^2.  Vectors of positive norm cut out geodesics
p_z = 0: vertical lines when c = 0 and semicircles otherwise.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from math import isqrt

from scipy.integrate import quad

from .lattice import SquareDiscriminantError, Vector, automorph

ON_WALL_TOL = 1e-12


def p_component(vec: Vector, z: complex, level: int) -> float:
    x, y = z.real, z.imag
    val = vec.c * level * (x * x + y * y) - vec.b * x + vec.a
    return -val / (math.sqrt(2 * level) * y)


def q_component(vec: Vector, z: complex, level: int) -> complex:
    val = vec.c * level * z * z - vec.b * z + vec.a
    return -val / math.sqrt(2 * level)


def majorant(vec: Vector, z: complex, level: int) -> float:
    p = p_component(vec, z, level)
    q = q_component(vec, z, level)
    return p * p / 2 + abs(q) ** 2 / (2 * z.imag ** 2)


def negative_vector(z: complex, level: int):
    """Components of the norm -1/2 vector spanning the negative line at z,
    as a rational-free float triple (a, b, c)."""
    x, y = z.real, z.imag
    s = math.sqrt(2 * level) * y
    return (-level * (x * x + y * y) / s, -2 * level * x / s, -1 / s)


# ---------------------------------------------------------------------------
# Geodesics


@dataclass(frozen=True)
class Geodesic:
    """The vanishing locus of p_z for a positive norm vector."""

    vec: Vector
    level: int
    vertical: bool
    foot: float = 0.0       # x coordinate of a vertical line
    center: float = 0.0     # center of a semicircle
    radius: float = 0.0

    @property
    def counterclockwise(self) -> bool:
        a, b = self.vec.a, self.vec.b
        if a != 0:
            return a > 0
        return b > 0

    def endpoints(self):
        if self.vertical:
            return (self.foot, math.inf)
        return (self.center - self.radius, self.center + self.radius)


def geodesic_of(vec: Vector, level: int) -> Geodesic:
    disc = vec.form_disc(level)
    if disc <= 0:
        raise ValueError("geodesics come from positive norm vectors")
    a, b, c = vec.a, vec.b, vec.c
    if c == 0:
        if b == 0:
            raise ValueError("degenerate vector")
        return Geodesic(vec, level, vertical=True, foot=a / b)
    center = b / (2 * c * level)
    radius = math.sqrt(disc) / (2 * abs(c) * level)
    return Geodesic(vec, level, vertical=False, center=center, radius=radius)


def is_crossed(vec: Vector, z: complex, level: int) -> bool:
    """Whether z lies strictly inside the semicircle of vec (vertical walls
    are never counted as crossed)."""
    if vec.c == 0:
        return False
    x, y = z.real, z.imag
    val = vec.c * level * (x * x + y * y) - vec.b * x + vec.a
    return val * vec.c < 0


def on_wall(vec: Vector, z: complex, level: int) -> bool:
    return abs(p_component(vec, z, level)) < ON_WALL_TOL


def crossed_walls(level: int, disc: int, coset: int, z: complex,
                  closure: bool = False) -> list[Vector]:
    """All vectors of the given discriminant and coset whose semicircle
    strictly contains z.  Finite: the radius must exceed y, bounding |c|.
    With closure=True, vectors whose wall passes through z are kept too."""
    out = []
    x, y = z.real, z.imag
    if disc <= 0:
        return out
    c_max = int(math.sqrt(disc) / (2 * level * y)) + 1
    two_n = 2 * level
    pad = 1e-9 if closure else 0.0
    for c in range(-c_max, c_max + 1):
        if c == 0:
            continue
        r_sq = disc / (4 * c * c * level * level)
        w_sq = r_sq - y * y
        if w_sq <= 0 and not closure:
            continue
        w = math.sqrt(max(w_sq, 0.0))
        lo = 2 * c * level * (x - w)
        hi = 2 * c * level * (x + w)
        if lo > hi:
            lo, hi = hi, lo
        b0 = math.ceil(lo - pad)
        for b in range(b0, math.floor(hi + pad) + 1):
            if (b - coset) % two_n:
                continue
            num = b * b - disc
            if num % (4 * level * c):
                continue
            vec = Vector(num // (4 * level * c), b, c)
            if is_crossed(vec, z, level) or (closure and on_wall(vec, z, level)):
                out.append(vec)
    return out


# ---------------------------------------------------------------------------
# Cycle integrals


def _complex_quad(f, lo, hi, tol=1e-11, limit=400, points=None):
    kw = dict(epsabs=tol, epsrel=tol, limit=limit)
    if points is not None:
        kw["points"] = [p for p in points if lo < p < hi] or None
    re, re_err = quad(lambda t: f(t).real, lo, hi, **kw)
    im, im_err = quad(lambda t: f(t).imag, lo, hi, **kw)
    return complex(re, im), re_err + im_err


def _integrand_factory(cusp_form, vec: Vector, level: int, k: int):
    a, b, c = vec.a, vec.b, vec.c

    def integrand(z: complex) -> complex:
        poly = c * level * z * z - b * z + a
        return cusp_form.evaluate(z) * poly ** (k - 1)

    return integrand


def _angle_of(z: complex, center: float, radius: float) -> float:
    return math.atan2(z.imag, z.real - center)


def cycle_integral(cusp_form, vec: Vector, level: int, k: int,
                   parametrization: str = "angle", tol: float = 1e-11,
                   base_angle: float = math.pi / 2) -> complex:
    """Integral of (c N z^2 - b z + a)^{k-1} g(z) dz along the geodesic cycle
    of vec (g of weight 2k).

    Closed cycles run from a base point to its image under the fundamental
    automorph.  Split (square) discriminants give an improper integral over
    the full geodesic, convergent by cuspidality.  parametrization chooses
    between the arc angle and hyperbolic arclength charts (they must agree,
    which is a useful cross check).
    """
    disc = vec.form_disc(level)
    geo = geodesic_of(vec, level)
    f = _integrand_factory(cusp_form, vec, level, k)
    root = isqrt(disc)
    if root * root == disc:
        return _improper_cycle(f, geo, tol)
    g = automorph(vec, level)
    if geo.vertical:
        # a closed vertical cycle would need a parabolic/hyperbolic fixing oo
        raise SquareDiscriminantError("vertical geodesics have split discriminant")
    z0 = complex(geo.center + geo.radius * math.cos(base_angle),
                 geo.radius * math.sin(base_angle))
    (p, q), (s, t) = g
    z1 = (p * z0 + q) / (s * z0 + t)
    if parametrization == "angle":
        th0 = _angle_of(z0, geo.center, geo.radius)
        th1 = _angle_of(z1, geo.center, geo.radius)

        def by_angle(th):
            z = complex(geo.center + geo.radius * math.cos(th),
                        geo.radius * math.sin(th))
            dz = geo.radius * complex(-math.sin(th), math.cos(th))
            return f(z) * dz

        value, _ = _complex_quad(by_angle, th0, th1, tol)
        return value
    if parametrization == "arclength":
        s0 = _arclength_of(z0, geo.center, geo.radius)
        s1 = _arclength_of(z1, geo.center, geo.radius)

        def by_length(s):
            tanh, sech = math.tanh(s), 1 / math.cosh(s)
            z = complex(geo.center + geo.radius * tanh, geo.radius * sech)
            dz = geo.radius * complex(sech * sech, -tanh * sech)
            return f(z) * dz

        value, _ = _complex_quad(by_length, s0, s1, tol)
        return value
    raise ValueError(f"unknown parametrization {parametrization!r}")


def _arclength_of(z: complex, center: float, radius: float) -> float:
    return math.atanh(max(-1 + 1e-15, min(1 - 1e-15, (z.real - center) / radius)))


def _improper_cycle(f, geo: Geodesic, tol: float) -> complex:
    # orient from the root (b - sqrt(D))/2cN toward (b + sqrt(D))/2cN, the
    # attracting end; explicit breakpoints keep the adaptive rule from
    # overlooking the localized bump of the cuspidal integrand
    marks = (-8.0, -4.0, -2.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0)
    if geo.vertical:
        sign = 1.0 if geo.vec.b > 0 else -1.0

        def by_height(t):
            z = complex(geo.foot, math.exp(t))
            return f(z) * 1j * math.exp(t)

        value, _ = _complex_quad(by_height, -14.0, 5.0, tol, points=marks)
        return sign * value
    sign = 1.0 if geo.vec.c > 0 else -1.0

    def by_length(s):
        tanh, sech = math.tanh(s), 1 / math.cosh(s)
        z = complex(geo.center + geo.radius * tanh, geo.radius * sech)
        dz = geo.radius * complex(sech * sech, -tanh * sech)
        return f(z) * dz

    value, _ = _complex_quad(by_length, -26.0, 26.0, tol, points=marks)
    return sign * value
