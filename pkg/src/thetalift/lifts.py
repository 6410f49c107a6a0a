"""Evaluation of the regularized theta lift from its closed Fourier
expansion, together with the wall-crossing corrections and the holomorphic
expansions attached to it (image under the antiholomorphic derivative,
weight 2k Shimura-type expansion, and half integral weight Shintani-type
coefficients given by cycle integrals)."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from .arith import (
    DiscriminantPair,
    dirichlet_l,
    e2pi,
    kronecker,
    lift_constants,
    periodic_bernoulli,
    polylog,
    shifted_incomplete_polylog,
)
from .hyperbolic import (
    crossed_walls,
    cycle_integral,
    on_wall,
    p_component,
    q_component,
)
from .lattice import Vector, genus_character, orbit_representatives
from .weilrep import CuspFormInput, FormInput

_BINOM_CACHE: dict = {}


def _binom(n: int, s: int) -> int:
    key = (n, s)
    if key not in _BINOM_CACHE:
        _BINOM_CACHE[key] = math.comb(n, s)
    return _BINOM_CACHE[key]


@dataclass(frozen=True)
class LiftConfig:
    """Evaluation parameters shared by the lift routines.

    modes caps the number of exponential frequencies kept in the decaying
    families (None lets each routine pick a cap from tol and Im z), tol is
    the target truncation error, and shintani_scale is the free global
    normalization of the cycle-integral coefficients (only coefficient
    ratios are pinned down; the scale depends on a Petersson-pairing
    convention that the caller fixes once).
    """

    level: int
    k: int
    pair: DiscriminantPair
    modes: int | None = None
    tol: float = 1e-10
    shintani_scale: complex = 1.0

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be positive")
        if self.k < 1:
            raise ValueError("need k >= 1")
        if self.level != self.pair.level:
            raise ValueError("level mismatch between config and twist datum")
        if self.modes is not None and self.modes < 1:
            raise ValueError("modes must be positive when given")


def _check_form(form: FormInput, cfg: LiftConfig):
    if form.level != cfg.level or form.k != cfg.k or form.pair != cfg.pair:
        raise ValueError("input form does not match the lift configuration")


def _auto_modes(y: float, k: int, tol: float, scale: float) -> int:
    """Frequency cap making scale * m^(2k-1) e^(-2 pi m y) < tol at the cap."""
    m = 8
    for _ in range(4):
        budget = math.log(max(scale, 1.0) / tol) + (2 * k - 1) * math.log(m + 2) + 5.0
        m = max(8, math.ceil(budget / (2.0 * math.pi * y)))
    return min(m, 20000)


# ---------------------------------------------------------------------------
# The lift itself


def phi(z: complex, form: FormInput, cfg: LiftConfig) -> complex:
    """Value of the lift at z, defined on all of the upper half plane by the
    unbounded-chamber expansion plus the wall corrections picked up between
    z and the region above every semicircular wall.

    Points on a wall get the average of the adjacent chamber values; for
    vertical walls that convention is built into the sawtooth factors, for
    semicircular ones into the sign factor of the correction term.
    """
    _check_form(form, cfg)
    if form.n0 < 0:
        return 0j
    total = top_chamber_expansion(z, form, cfg)
    total += chamber_correction(z, form, cfg)
    return total


def top_chamber_expansion(z: complex, form: FormInput, cfg: LiftConfig) -> complex:
    """The closed expansion valid above all semicircular walls: L-value
    constant, sawtooth-polynomial family from the principal part, and the
    exponentially decaying polylogarithm family from the non holomorphic
    part."""
    _check_form(form, cfg)
    if form.n0 < 0:
        return 0j
    cst = lift_constants(cfg.k, cfg.pair)
    total = 0j
    c00 = form.cp(0, 0)
    if c00:
        total += cst.c1 * c00 * dirichlet_l(cfg.k, cfg.pair.delta)
    total += _sawtooth_family(z, form, cfg, cst.c2)
    total += _polylog_family(z, form, cfg, cst.c3)
    return total


def _sawtooth_bracket(k: int, t: float, y_scaled: complex) -> complex:
    """sum_s binom(k,s) B_s(t) y_scaled^(k-s) with the midpoint sawtooth
    convention; for k = 1 only the s = 1 term is kept."""
    if k == 1:
        return complex(periodic_bernoulli(1, t))
    acc = 0j
    power = 1.0 + 0j
    for s in range(k, -1, -1):
        acc += _binom(k, s) * periodic_bernoulli(s, t) * power
        power *= y_scaled
    return acc


def _sawtooth_family(z: complex, form: FormInput, cfg: LiftConfig,
                     c2: complex) -> complex:
    level, k, pair = cfg.level, cfg.k, cfg.pair
    delta, adelta = pair.delta, pair.abs_delta
    x, y = z.real, z.imag
    acc = 0j
    m = 1
    while Fraction(adelta * m * m, 4 * level) <= form.n0:
        coeff = form.cp(-Fraction(adelta * m * m, 4 * level), pair.r * m)
        if coeff:
            iy = 1j * m * y
            inner = 0j
            for b in range(adelta):
                chi = kronecker(delta, b)
                if chi:
                    inner += chi * _sawtooth_bracket(k, m * x + b / delta, iy)
            acc += coeff * inner
        m += 1
    return -c2 * acc


def _polylog_family(z: complex, form: FormInput, cfg: LiftConfig,
                    c3: complex) -> complex:
    level, k, pair = cfg.level, cfg.k, cfg.pair
    delta, adelta = pair.delta, pair.abs_delta
    # Scale fixing the family against the divisor-sum expansion of its
    # image under the antiholomorphic derivative; certified numerically by
    # the adjoint-kernel identity together with the wall-anchored sawtooth
    # family, which leave no freedom in this constant.
    c3 = c3 * (-(2.0 ** (1 - k)))
    y = z.imag
    neg = [(-n, h) for (n, h), v in form.cminus.items() if v]
    if not neg:
        return 0j
    m_cap = 0
    for n_pos, _ in neg:
        m_cap = max(m_cap, math.isqrt((4 * level * n_pos) // adelta) + 1)
    sign = pair.sign * (-1) ** k
    acc = 0j
    for m in range(1, m_cap + 1):
        coeff = form.cm(-Fraction(adelta * m * m, 4 * level), pair.r * m)
        if not coeff:
            continue
        inner = 0j
        for b in range(adelta):
            chi = kronecker(delta, b)
            if not chi:
                continue
            shift = b / delta
            term = polylog(k, e2pi(m * z + shift))
            term += sign * shifted_incomplete_polylog(
                2 * k - 1, 1 - k, 4.0 * math.pi * m * y,
                e2pi(-(m * z - shift)))
            inner += chi * term
        acc += coeff * inner
    return c3 * acc


# ---------------------------------------------------------------------------
# Walls and chambers


def _wall_sign(vec: Vector, z: complex, level: int) -> int:
    if on_wall(vec, z, level):
        return 0
    return 1 if p_component(vec, z, level) > 0 else -1


def _principal_classes(form: FormInput, cfg: LiftConfig):
    """(coefficient, wall discriminant, coset) for each class of the
    principal part, wall discriminant 4N|n||delta| as an exact integer."""
    out = []
    for (n, h), coeff in form.cplus.items():
        if n >= 0 or not coeff:
            continue
        disc = Fraction(-4 * cfg.level * n * cfg.pair.abs_delta)
        if disc.denominator != 1:
            raise ValueError("principal exponent off the discriminant grid")
        out.append((coeff, int(disc), (cfg.pair.r * h) % (2 * cfg.level)))
    return out


def chamber_correction(z: complex, form: FormInput, cfg: LiftConfig) -> complex:
    """Jump polynomial relating the value at z to the expansion of the
    unbounded chamber directly above it: one term per semicircular wall
    separating z from that chamber, each a finite character-weighted sum
    over the lattice vectors cutting out the wall."""
    _check_form(form, cfg)
    level, k, pair = cfg.level, cfg.k, cfg.pair
    acc = 0j
    for coeff, disc, coset in _principal_classes(form, cfg):
        for vec in crossed_walls(level, disc, coset, z, closure=True):
            factor = _wall_sign(vec, z, level) + (1 if vec.c > 0 else -1)
            if not factor:
                continue
            chi = genus_character(pair, vec)
            if not chi:
                continue
            q = q_component(vec, z, level)
            acc += coeff * chi * factor * q ** (k - 1)
    return math.sqrt(pair.abs_delta / 2.0) * acc


def _parallel_class_members(wall: Vector, disc: int, level: int):
    """The vectors of the given discriminant lying on the wall of the given
    vector, tagged +1/-1 by orientation relative to it."""
    g = math.gcd(math.gcd(abs(wall.a), abs(wall.b)), abs(wall.c))
    prim = Vector(wall.a // g, wall.b // g, wall.c // g)
    base = prim.form_disc(level)
    if disc % base:
        return []
    t = math.isqrt(disc // base)
    if t * t * base != disc:
        return []
    plus = Vector(t * prim.a, t * prim.b, t * prim.c)
    minus = Vector(-t * prim.a, -t * prim.b, -t * prim.c)
    return [(plus, 1), (minus, -1)]


def wall_jump(wall: Vector, form: FormInput, cfg: LiftConfig,
              z: complex) -> complex:
    """Jump of the lift across the wall of the given vector at a point z of
    that wall: the limit from the side where p_z(wall) > 0 minus the limit
    from the other side.  A polynomial in z, so z may in fact sit anywhere;
    it is evaluated wherever given."""
    _check_form(form, cfg)
    level, k, pair = cfg.level, cfg.k, cfg.pair
    two_n = 2 * level
    acc = 0j
    for coeff, disc, coset in _principal_classes(form, cfg):
        for vec, orient in _parallel_class_members(wall, disc, level):
            if (vec.b - coset) % two_n:
                continue
            chi = genus_character(pair, vec)
            if not chi:
                continue
            q = q_component(vec, z, level)
            acc += coeff * chi * orient * q ** (k - 1)
    return math.sqrt(2.0 * pair.abs_delta) * acc


# ---------------------------------------------------------------------------
# Holomorphic expansions attached to the lift


def _divisors(m: int):
    out = [d for d in range(1, m + 1) if m % d == 0]
    return out


def xi_phi_coefficient(m: int, form: FormInput, cfg: LiftConfig) -> complex:
    """m-th coefficient of the weight 2k holomorphic expansion of the image
    of the lift under the antiholomorphic derivative, assembled as a twisted
    divisor sum over the conjugated non holomorphic coefficients."""
    _check_form(form, cfg)
    if m < 1:
        raise ValueError("coefficients start at m = 1")
    level, k, pair = cfg.level, cfg.k, cfg.pair
    adelta = pair.abs_delta
    acc = 0j
    for d in _divisors(m):
        chi = kronecker(pair.delta, d)
        if not chi:
            continue
        j = m // d
        cm = form.cm(-Fraction(adelta * j * j, 4 * level), pair.r * j)
        if cm:
            acc += chi * (m ** (2 * k - 1) / d ** k) * cm.conjugate()
    # The half factor puts the expansion at the normalization of the weight
    # 2k lift of the shadow, so the divisor sums here and in shimura_coeff
    # agree coefficient by coefficient.
    return 0.5 * lift_constants(k, pair).c4 * acc


def xi_phi_constant(form: FormInput, cfg: LiftConfig) -> complex:
    """Constant term of the same expansion; nonzero only in the untwisted
    k = 1 case, where it is a weighted conjugate sum over the principal
    part."""
    _check_form(form, cfg)
    if cfg.k != 1 or cfg.pair.delta != 1:
        return 0j
    level, k = cfg.level, cfg.k
    acc = 0j
    m = 1
    while Fraction(m * m, 4 * level) <= form.n0:
        cp = form.cp(-Fraction(m * m, 4 * level), cfg.pair.r * m)
        if cp:
            acc += m * cp.conjugate()
        m += 1
    scale = math.sqrt(2.0) / (1j * k) * (2 * level) ** (-(k - 1) / 2.0)
    return scale * acc


def xi_phi_expansion(z: complex, form: FormInput, cfg: LiftConfig) -> complex:
    """Value at z of the holomorphic weight 2k expansion (divisor-sum
    coefficients plus the degenerate constant), truncated to cfg.modes or to
    a cap chosen from cfg.tol and Im z."""
    _check_form(form, cfg)
    y = z.imag
    if y <= 0:
        raise ValueError("need a point of the upper half plane")
    scale = max((abs(v) for v in form.cminus.values()), default=0.0)
    if scale == 0.0:
        return xi_phi_constant(form, cfg)
    cap = cfg.modes or _auto_modes(y, cfg.k, cfg.tol, scale)
    acc = xi_phi_constant(form, cfg)
    for m in range(1, cap + 1):
        coeff = xi_phi_coefficient(m, form, cfg)
        if coeff:
            acc += coeff * e2pi(m * z)
    return acc


def shadow_coefficients(form: FormInput, cfg: LiftConfig) -> dict:
    """Coefficient table of the shadow cusp form of weight k + 1/2 obtained
    from the non holomorphic part via a(n, h) = -conj(c-(-n, h)) (4 pi n)^(k - 1/2)."""
    _check_form(form, cfg)
    out = {}
    for (n, h), value in form.cminus.items():
        if not value:
            continue
        out[(-n, h)] = -complex(value).conjugate() * \
            (-4.0 * math.pi * n) ** (cfg.k - 0.5)
    return out


def shimura_coeff(shadow: dict, m: int, cfg: LiftConfig) -> complex:
    """m-th coefficient of the weight 2k lift of a half integral weight
    shadow given by its coefficient table {(n, h): a}, as the twisted
    divisor sum with d^(k-1) weights."""
    if m < 1:
        raise ValueError("coefficients start at m = 1")
    level, k, pair = cfg.level, cfg.k, cfg.pair
    adelta = pair.abs_delta
    two_n = 2 * level
    acc = 0j
    for d in _divisors(m):
        chi = kronecker(pair.delta, d)
        if not chi:
            continue
        j = m // d
        key = (Fraction(adelta * j * j, 4 * level), (pair.r * j) % two_n)
        a = shadow.get(key, 0.0)
        if a:
            acc += chi * d ** (k - 1) * a
    return lift_constants(k, pair).c5 * acc


def shimura_constant(form: FormInput, cfg: LiftConfig) -> complex:
    """Constant term of the weight 2k lift in the degenerate untwisted
    k = 1 case, matching the constant of the antiholomorphic derivative
    expansion under the shared normalization."""
    return xi_phi_constant(form, cfg)


# ---------------------------------------------------------------------------
# Cycle-integral coefficients of the adjoint lift


def shintani_coeff(cusp_form: CuspFormInput, m, h: int, cfg: LiftConfig,
                   tol: float = 1e-11) -> complex:
    """Cycle-integral coefficient of the half integral weight image of a
    weight 2k cusp form, indexed by a negative class exponent m and coset h:
    a genus-character-weighted sum of cycle integrals over the classes of
    discriminant 4N|m||delta|, coset r h, times the global normalization
    cfg.shintani_scale."""
    if cusp_form.level != cfg.level or cusp_form.weight != 2 * cfg.k:
        raise ValueError("cusp form does not match the lift configuration")
    m = Fraction(m)
    if m >= 0:
        raise ValueError("cycle coefficients are indexed by negative exponents")
    disc = Fraction(-4 * cfg.level * m * cfg.pair.abs_delta)
    if disc.denominator != 1:
        raise ValueError("index off the discriminant grid")
    disc = int(disc)
    coset = (cfg.pair.r * h) % (2 * cfg.level)
    if (coset * coset - disc) % (4 * cfg.level):
        raise ValueError("index and coset are incompatible")
    acc = 0j
    for rep in orbit_representatives(cfg.level, disc, coset):
        chi = genus_character(cfg.pair, rep)
        if not chi:
            continue
        acc += chi * cycle_integral(cusp_form, rep, cfg.level, cfg.k, tol=tol)
    return cfg.shintani_scale * math.sqrt(cfg.pair.abs_delta / 2.0) * acc
