"""Twisted Siegel theta kernels and their partial Poisson resummations.

theta_components is the weight (k - 3/2) kernel: component h sums over
vectors (a, b, c) with b = r h mod 2N whose discriminant lies in the class
delta h^2 mod 4 N delta, weighted by the genus character,

    v^{3/2} chi(lam) p_z(lam) q_z(lam)^{k-1}
        e(Q(lam) u / |delta| + i Q_z(lam) v / |delta|),

theta_star_components the companion of weight (k + 1/2) with p q^{k-1}
replaced by (q_z/y^2)^k and a single power of v.  The remaining functions
implement the resummed shapes: hermite_theta (a one dimensional theta
series with Hermite polynomial weight), the rewritten kernel (sum over all
integer pairs (c, d)) and the Poincare form (sum over cosets of the
translation subgroup), which must reproduce theta_components point for
point.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np

from .arith import DiscriminantPair, e2pi, hermite
from .lattice import Vector, genus_character
from .weilrep import Metaplectic, word_for_matrix


@dataclass(frozen=True)
class KernelParams:
    level: int
    k: int
    pair: DiscriminantPair
    tol: float = 1e-12

    def __post_init__(self):
        if self.level != self.pair.level:
            raise ValueError("level mismatch")
        if self.k < 1:
            raise ValueError("need k >= 1")


@lru_cache(maxsize=None)
def _chi_mod(delta: int, r: int, level: int, a: int, b: int, c: int) -> int:
    pair = DiscriminantPair(delta, r, level)
    return genus_character(pair, Vector(a, b, c))


def _chi(params: KernelParams, a: int, b: int, c: int) -> int:
    delta = params.pair.delta
    if delta == 1:
        return 1
    ad = abs(delta)
    return _chi_mod(delta, params.pair.r, params.level,
                    a % ad, b % (2 * params.level * ad), c % ad)


def _frame_matrix(z: complex, level: int) -> np.ndarray:
    """Rows map (a, b, c) to (p, Re q/y, Im q/y); the majorant is half the
    squared euclidean norm of the image."""
    x, y = z.real, z.imag
    s = math.sqrt(2 * level)
    row_p = np.array([-1.0, x, -level * (x * x + y * y)]) / (s * y)
    # q = (-a + b z - c N z^2)/s
    re_q = np.array([-1.0, x, -level * (x * x - y * y)]) / s
    im_q = np.array([0.0, y, -level * 2 * x * y]) / s
    return np.vstack([row_p, re_q / y, im_q / y])


def _ellipsoid_ranges(mat: np.ndarray, radius: float):
    a_quad = mat.T @ mat
    inv = np.linalg.inv(a_quad)
    return [math.sqrt(max(2 * radius * inv[i, i], 0.0)) for i in range(3)]


def _theta_sum(tau: complex, z: complex, params: KernelParams, expand: float,
               star: bool) -> np.ndarray:
    level, k = params.level, params.k
    delta = params.pair.delta
    adelta = abs(delta)
    r_twist = params.pair.r
    u, v = tau.real, tau.imag
    x, y = z.real, z.imag
    two_n = 2 * level
    radius = expand * adelta * (-math.log(params.tol) + 16 + 4 * k) / (2 * math.pi * v)
    mat = _frame_matrix(z, level)
    bound_a, bound_b, bound_c = _ellipsoid_ranges(mat, radius)
    if bound_a * bound_b * bound_c > 5e7:
        raise RuntimeError("theta enumeration box too large")
    out = np.zeros(two_n, dtype=complex)
    s = math.sqrt(2 * level)
    col_a, col_b, col_c = mat[:, 0], mat[:, 1], mat[:, 2]
    bb_norm = float(col_b @ col_b)
    for a in range(-int(bound_a), int(bound_a) + 1):
        for c in range(-int(bound_c), int(bound_c) + 1):
            w = a * col_a + c * col_c
            # solve |w + b col_b|^2 <= 2 radius for b
            disc = (w @ col_b) ** 2 - bb_norm * (w @ w - 2 * radius)
            if disc <= 0:
                continue
            root = math.sqrt(disc)
            lo = (-(w @ col_b) - root) / bb_norm
            hi = (-(w @ col_b) + root) / bb_norm
            bs = np.arange(math.ceil(lo), math.floor(hi) + 1, dtype=np.int64)
            if bs.size == 0:
                continue
            disc_form = bs * bs - 4 * level * a * c
            p = (bs * x - c * level * (x * x + y * y) - a) / (s * y)
            q = (bs * z - c * level * z * z - a) / s
            q_form = disc_form / (4.0 * level)
            maj = q_form + p * p
            phase = np.exp(2j * math.pi * (q_form * u + 1j * maj * v) / adelta)
            if star:
                weight = (q / (y * y)) ** k
            else:
                weight = p * q ** (k - 1)
            for h in range(two_n):
                mask = ((bs - r_twist * h) % two_n == 0) & (
                    (disc_form - delta * h * h) % (4 * level * adelta) == 0
                )
                if not mask.any():
                    continue
                idx = np.nonzero(mask)[0]
                if delta == 1:
                    chis = np.ones(idx.size)
                else:
                    chis = np.array(
                        [_chi(params, a, int(bs[i]), c) for i in idx], dtype=float
                    )
                out[h] += np.sum(chis * weight[idx] * phase[idx])
    power = 0.5 if star else 1.5
    return v ** power * out


def theta_components(tau: complex, z: complex, params: KernelParams,
                     expand: float = 1.0) -> np.ndarray:
    return _theta_sum(tau, z, params, expand, star=False)


def theta_star_components(tau: complex, z: complex, params: KernelParams,
                          expand: float = 1.0) -> np.ndarray:
    return _theta_sum(tau, z, params, expand, star=True)


# ---------------------------------------------------------------------------
# One dimensional Hermite theta functions on the light cone frame


def _m_range(params: KernelParams, v: float, kappa: int, shift: float):
    adelta = abs(params.pair.delta)
    cap = 4 * params.level * adelta * (-math.log(params.tol) + 16 + 4 * max(kappa, 1)) / (
        2 * math.pi * v
    )
    half = math.sqrt(cap)
    return math.ceil(-shift - half), math.floor(-shift + half)


def hermite_theta(tau: complex, z: complex, params: KernelParams, kappa: int,
                  h: int, alpha: int, beta: int) -> complex:
    """The Hermite weighted theta series on the rank one sublattice frame.

    alpha, beta are the integer parameters produced by the partial Poisson
    summation (the unfolded pair (d, -c)); the series runs over m = r h
    mod 2N with an auxiliary character sum over t mod |delta|.
    """
    if kappa < 0:
        return 0j
    level = params.level
    delta = params.pair.delta
    adelta = abs(delta)
    r_twist = params.pair.r
    v = tau.imag
    x, y = z.real, z.imag
    tau_bar = tau.conjugate()
    denom = math.sqrt(adelta * v / level) / y
    two_n = 2 * level
    lo, hi = _m_range(params, v, kappa, 2 * level * beta * x)
    acc = 0j
    for m in range(lo, hi + 1):
        if (m - r_twist * h) % two_n:
            continue
        shifted = m + 2 * level * beta * x
        arg = math.sqrt(math.pi) * (alpha - beta * tau_bar + v * shifted / (level * y)) / denom
        herm = hermite(kappa, arg)
        q_shift = shifted * shifted / (4 * level)
        base = cmath.exp(
            2j * math.pi * (q_shift * tau - alpha * (m * x + beta * level * x * x)) / adelta
        )
        tsum = 0j
        for t in range(adelta):
            num = m * m - 4 * level * t * beta - delta * h * h
            if num % (4 * level * adelta):
                continue
            chi = _chi(params, -t, m, -beta)
            if chi:
                tsum += chi * e2pi(-alpha * t / adelta)
        if tsum:
            acc += herm * base * tsum
    return v ** (-kappa / 2) * acc


def hermite_theta_gauss(tau: complex, z: complex, params: KernelParams,
                        kappa: int, h: int, n: int) -> complex:
    """Closed form of hermite_theta at (alpha, beta) = (-n, 0): the character
    sum collapses to a quadratic Gauss sum."""
    if kappa < 0:
        return 0j
    level = params.level
    delta = params.pair.delta
    adelta = abs(delta)
    pair = params.pair
    r_twist = pair.r
    v = tau.imag
    x, y = z.real, z.imag
    front = _kron(delta, n) * pair.eps_delta * math.sqrt(adelta)
    if front == 0:
        return 0j
    denom = math.sqrt(adelta * v / level) / y
    two_n = 2 * level
    lo, hi = _m_range(params, v, kappa, 0.0)
    acc = 0j
    for m in range(lo, hi + 1):
        if (m - r_twist * h) % two_n:
            continue
        if (m * m - delta * h * h) % (4 * level * delta):
            continue
        arg = math.sqrt(math.pi) * (n + v * m / (level * y)) / denom
        herm = hermite(kappa, arg)
        q_val = m * m / (4 * level)
        acc += herm * cmath.exp(2j * math.pi * (q_val * tau - n * m * x) / adelta)
    return front * v ** (-kappa / 2) * acc


def _kron(a, b):
    from .arith import kronecker

    return kronecker(a, b)


# ---------------------------------------------------------------------------
# Rewritten kernel and Poincare form


def _c_weight(z: complex, params: KernelParams, j: int) -> complex:
    level, k = params.level, params.k
    adelta = abs(params.pair.delta)
    y = z.imag
    base = 1j * level * y * y / math.sqrt(2 * adelta)
    base *= (1j * y * math.sqrt(adelta) / (2 * math.sqrt(2 * math.pi))) ** (k - 1)
    if j:
        base *= (1 - k) * math.sqrt(adelta) / (y * math.sqrt(level * math.pi))
    return base


def rewritten_theta_components(tau: complex, z: complex,
                               params: KernelParams) -> np.ndarray:
    """The kernel reassembled after partial Poisson summation on the cusp
    frame: a sum over all integer pairs (c, d) of Gaussian weighted Hermite
    theta values.  Agrees with theta_components."""
    level, k = params.level, params.k
    adelta = abs(params.pair.delta)
    v = tau.imag
    y = z.imag
    two_n = 2 * level
    out = np.zeros(two_n, dtype=complex)
    # Gaussian weight exp(-pi N y^2 |c tau + d|^2/(|delta| v)); bound the box
    decay = math.pi * level * y * y / (adelta * v)
    cap = -math.log(params.tol) + 10
    height = math.sqrt(cap / decay)
    c_max = int(height / v) + 1
    span = int(height) + 1
    weights = [_c_weight(z, params, j) for j in (0, 1)]
    for c in range(-c_max, c_max + 1):
        center = -c * tau.real
        for d in range(math.ceil(center) - span, math.floor(center) + span + 1):
            w = c * tau + d
            mag2 = w.real * w.real + w.imag * w.imag
            if c == 0 and d == 0:
                if k >= 2:
                    for h in range(two_n):
                        out[h] += weights[1] * hermite_theta(
                            tau, z, params, k - 2, h, 0, 0
                        )
                continue
            if decay * mag2 > cap:
                continue
            gauss = math.exp(-decay * mag2)
            for j in (0, 1):
                kappa = k - 1 - j
                if kappa < 0:
                    continue
                coeff = weights[j] * w ** (1 - j) * gauss
                for h in range(two_n):
                    out[h] += coeff * hermite_theta(tau, z, params, kappa, h, d, -c)
    return out


def _coprime_pairs(height: int):
    for c in range(-height, height + 1):
        for d in range(-height, height + 1):
            if (c, d) != (0, 0) and gcd(c, d) == 1:
                yield c, d


def _completion_matrix(c: int, d: int):
    # (a, b) with a d - b c = 1
    g, xs, ys = _xgcd(d, c)
    assert g in (1, -1)
    a, b = xs * g, -ys * g
    return (a, b), (c, d)


def _xgcd(a: int, b: int):
    old_r, r = a, b
    old_s, s_ = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s_ = s_, old_s - q * s_
        old_t, t = t, old_t - q * t
    return old_r, old_s, old_t


def poincare_components(tau: complex, z: complex, params: KernelParams,
                        gauss_route: bool = True) -> np.ndarray:
    """The kernel as a sum over cosets of the translation subgroup of
    slashed Gaussian-Hermite seeds, plus the untransformed (c, d) = (0, 0)
    contribution.  Each matrix coset is visited once, which matches the
    half-weighted sum over the metaplectic double cover.  Agrees with
    theta_components."""
    level, k = params.level, params.k
    adelta = abs(params.pair.delta)
    conj_rep = params.pair.delta < 0
    v = tau.imag
    y = z.imag
    two_n = 2 * level
    two_w = 2 * k - 3
    out = np.zeros(two_n, dtype=complex)
    decay = math.pi * level * y * y / (adelta * v)
    cap = -math.log(params.tol) + 10
    height = int(math.sqrt(cap / decay) * (1 + abs(tau)) / v) + 1
    weights = [_c_weight(z, params, j) for j in (0, 1)]
    for c, d in _coprime_pairs(height):
        mat = _completion_matrix(c, d)
        word = word_for_matrix(mat)
        gtau = word.act(tau)
        gv = gtau.imag
        if decay * v / gv > cap:
            continue
        term = np.zeros(two_n, dtype=complex)
        n = 1
        while decay * n * n * v / gv <= cap:
            gauss = math.exp(-decay * n * n * v / gv)
            for j in (0, 1):
                kappa = k - 1 - j
                if kappa < 0:
                    continue
                coeff = weights[j] * (-n) ** (1 - j) * gauss
                sign = (-1) ** kappa if params.pair.delta > 0 else (-1) ** (kappa + 1)
                for h in range(two_n):
                    if gauss_route:
                        seed = sign * hermite_theta_gauss(
                            gtau, z, params, kappa, (-h) % two_n, n)
                    else:
                        seed = hermite_theta(gtau, z, params, kappa, h, -n, 0)
                    term[h] += coeff * seed
            n += 1
        if not term.any():
            continue
        rho = word.rho(level)
        if conj_rep:
            rho = rho.conj()
        phi = word.phi(tau)
        out += phi ** (-two_w) * (rho.conj().T @ term)
    if k >= 2:
        for h in range(two_n):
            out[h] += weights[1] * hermite_theta(tau, z, params, k - 2, h, 0, 0)
    return out
