"""Exact integer arithmetic and special functions used by the lift formulas.

Everything here is binary64 (plus exact Fraction arithmetic for Bernoulli
data).  Incomplete gamma values at negative arguments are only defined for
integer order, where the closed finite sum

    Gamma(n+1, x) = n! e^{-x} sum_{m=0}^{n} x^m / m!

is valid for every real x.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction

from scipy.special import gammaincc, psi
from scipy.special import zeta as _hurwitz_zeta

TWO_PI = 2.0 * math.pi


def e2pi(w) -> complex:
    """e(w) = exp(2 pi i w) for real or complex w."""
    return cmath.exp(2j * math.pi * w)


def sgn(x) -> int:
    return (x > 0) - (x < 0)


# ---------------------------------------------------------------------------
# Kronecker symbol and discriminants


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), full multiplicative extension of Jacobi.

    Conventions: (a/0) = 1 iff a = +-1 else 0, (a/-1) = -1 iff a < 0,
    (a/2) = 0, 1, -1 for a even, a = +-1 mod 8, a = +-3 mod 8.
    """
    a = int(a)
    n = int(n)
    if n == 0:
        return 1 if a in (1, -1) else 0
    result = 1
    if n < 0:
        n = -n
        if a < 0:
            result = -result
    t = 0
    while n % 2 == 0:
        n //= 2
        t += 1
    if t:
        if a % 2 == 0:
            return 0
        if t % 2 == 1 and a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd positive n by quadratic reciprocity.
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def is_squarefree(n: int) -> bool:
    n = abs(int(n))
    if n == 0:
        return False
    d = 2
    while d * d <= n:
        if n % (d * d) == 0:
            return False
        while n % d == 0:
            n //= d
        d += 1
    return True


def is_fundamental_discriminant(d: int) -> bool:
    """True for d = 1 and for fundamental discriminants of quadratic fields."""
    d = int(d)
    if d == 1:
        return True
    if d % 4 == 1:
        return is_squarefree(d)
    if d % 4 == 0:
        m = d // 4
        return is_squarefree(m) and m % 4 in (2, 3)
    return False


@dataclass(frozen=True)
class DiscriminantPair:
    """Twisting datum (delta, r) for level N: delta fundamental, delta = r^2 mod 4N."""

    delta: int
    r: int
    level: int

    def __post_init__(self):
        if self.level < 1:
            raise ValueError("level must be positive")
        if self.delta == 0 or not is_fundamental_discriminant(self.delta):
            raise ValueError(f"delta={self.delta} is not 1 or a fundamental discriminant")
        if (self.r * self.r - self.delta) % (4 * self.level) != 0:
            raise ValueError(
                f"delta={self.delta} is not a square modulo 4N={4 * self.level} via r={self.r}"
            )

    @property
    def sign(self) -> int:
        return 1 if self.delta > 0 else -1

    @property
    def abs_delta(self) -> int:
        return abs(self.delta)

    @property
    def sqrt_delta(self) -> complex:
        """Principal branch: sqrt(delta) = i sqrt(|delta|) for delta < 0."""
        if self.delta > 0:
            return complex(math.sqrt(self.delta))
        return 1j * math.sqrt(-self.delta)

    @property
    def eps_delta(self) -> complex:
        """1 for delta > 0 and i for delta < 0."""
        return 1.0 + 0j if self.delta > 0 else 1j


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials (exact rationals, cached to index 32)

_BERNOULLI_MAX = 32


def _bernoulli_table(top: int) -> list[Fraction]:
    table = [Fraction(1)]
    for m in range(1, top + 1):
        acc = Fraction(0)
        for j in range(m):
            acc += math.comb(m + 1, j) * table[j]
        table.append(-acc / (m + 1))
    return table


_BERNOULLI: list[Fraction] = _bernoulli_table(_BERNOULLI_MAX)


def bernoulli_number(n: int) -> Fraction:
    """B_n with B_1 = -1/2, exact, for 0 <= n <= 32."""
    if not 0 <= n <= _BERNOULLI_MAX:
        raise ValueError(f"bernoulli_number supports 0 <= n <= {_BERNOULLI_MAX}")
    return _BERNOULLI[n]


def bernoulli_poly(n: int, x):
    """B_n(x) = sum_j C(n,j) B_j x^(n-j); exact on Fraction input, complex otherwise."""
    if not 0 <= n <= _BERNOULLI_MAX:
        raise ValueError(f"bernoulli_poly supports 0 <= n <= {_BERNOULLI_MAX}")
    if n == 0:
        return 0 * x + 1
    acc = 0 * x
    for j in range(n + 1):
        coeff = math.comb(n, j) * _BERNOULLI[j]
        if isinstance(x, Fraction):
            acc += coeff * x ** (n - j)
        else:
            acc += float(coeff) * x ** (n - j)
    return acc


def _near_int(x: float, tol: float = 1e-12):
    r = round(x)
    return (abs(x - r) <= tol), r


def periodic_bernoulli(n: int, x: float) -> float:
    """Periodic Bernoulli function: B_n({x}) for n != 1, with the n = 1
    normalization 0 at integers and {x} - 1/2 off integers, and B_0 = 1."""
    if n == 0:
        return 1.0
    is_int, _ = _near_int(x)
    if n == 1:
        if is_int:
            return 0.0
        return (x - math.floor(x)) - 0.5
    frac = 0.0 if is_int else x - math.floor(x)
    return float(bernoulli_poly(n, frac))


# ---------------------------------------------------------------------------
# Hermite polynomials (physicists' convention)


def hermite(n: int, x):
    """H_n(x) by the three term recurrence; x may be complex."""
    if n < 0:
        raise ValueError("hermite needs n >= 0")
    h_prev = 1.0 + 0 * x
    if n == 0:
        return h_prev
    h_cur = 2 * x
    for m in range(1, n):
        h_prev, h_cur = h_cur, 2 * x * h_cur - 2 * m * h_prev
    return h_cur


# ---------------------------------------------------------------------------
# Incomplete gamma


def incomplete_gamma(s, x: float) -> float:
    """Upper incomplete gamma Gamma(s, x).

    Integer s >= 1 uses the exact finite sum and admits any real x.
    Other s > 0 (half odd integers in practice) require x >= 0.
    """
    if s <= 0:
        raise ValueError("incomplete_gamma requires s > 0")
    if float(s).is_integer():
        n = int(s) - 1
        term = 1.0
        acc = 1.0
        for m in range(1, n + 1):
            term *= x / m
            acc += term
        return math.factorial(n) * math.exp(-x) * acc
    if x < 0:
        raise ValueError("incomplete_gamma at negative argument needs integer s")
    return float(gammaincc(float(s), x)) * math.gamma(float(s))


# ---------------------------------------------------------------------------
# Polylogarithms


def polylog(kappa: int, s: complex, tol: float = 1e-15, max_terms: int = 200000) -> complex:
    """Li_kappa(s) = sum_{n>=1} s^n / n^kappa for |s| < 1.

    The stopping rule enforces the geometric tail bound
    |s|^(M+1) / (1 - |s|) (valid for kappa >= 0; for negative kappa the
    polynomial factor is bounded explicitly before stopping).
    """
    r = abs(s)
    if r >= 1.0:
        raise ValueError("polylog series requires |s| < 1")
    if r == 0.0:
        return 0j
    acc = 0j
    power = 1.0 + 0j
    for n in range(1, max_terms + 1):
        power *= s
        acc += power / (n ** kappa)
        if kappa >= 0:
            tail = r ** (n + 1) / (1.0 - r)
        else:
            growth = (1.0 + 1.0 / n) ** (-kappa)
            ratio = r * growth
            if ratio >= 1.0:
                continue
            tail = (r ** (n + 1)) * ((n + 1) ** (-kappa)) / (1.0 - ratio)
        if tail < tol and n > 4:
            return acc
    raise ValueError("polylog did not converge within max_terms")


def shifted_incomplete_polylog(kappa: int, r: int, b: float, s: complex) -> complex:
    """Li_{kappa,r}(b, s) = sum_{n>=1} s^n n^{-kappa-r} Gamma(kappa, n b)/Gamma(kappa).

    Expanding the integer order incomplete gamma as a finite sum turns this
    into sum_{m<kappa} (b^m/m!) Li_{kappa+r-m}(s e^{-b}); that form converges
    exactly when |s e^{-b}| < 1, which is the precondition enforced here.
    """
    if kappa < 1:
        raise ValueError("shifted_incomplete_polylog needs integer kappa >= 1")
    if b < 0:
        raise ValueError("shifted_incomplete_polylog needs b >= 0")
    w = s * math.exp(-b)
    if abs(w) >= 1.0:
        raise ValueError("shifted incomplete polylog diverges: |s e^{-b}| >= 1")
    acc = 0j
    bpow = 1.0
    for m in range(kappa):
        if m:
            bpow *= b / m
        acc += bpow * polylog(kappa + r - m, w)
    return acc


# ---------------------------------------------------------------------------
# Character sums and Dirichlet L values


def gauss_char_sum(delta: int, n: int) -> complex:
    """sum_{b mod delta} (delta/b) e(n b / delta), with the signed denominator."""
    acc = 0j
    for b in range(abs(delta)):
        chi = kronecker(delta, b)
        if chi:
            acc += chi * e2pi(Fraction(n * b, delta))
    return acc


def dirichlet_l(s: int, delta: int) -> float:
    """L(s, (delta/.)) for integer s >= 1 and fundamental delta.

    For s >= 2 the series is assembled from Hurwitz zeta values over one
    period; for s = 1 (non principal character only) the digamma formula
    L(1, chi) = -(1/|delta|) sum_b chi(b) psi(b/|delta|) is used.
    """
    if delta == 1:
        if s < 2:
            raise ValueError("L(s, trivial) diverges at s = 1")
        return float(_hurwitz_zeta(s, 1))
    q = abs(delta)
    if s == 1:
        acc = 0.0
        for b in range(1, q + 1):
            chi = kronecker(delta, b)
            if chi:
                acc += chi * psi(b / q)
        return -acc / q
    if s < 1:
        raise ValueError("dirichlet_l needs s >= 1")
    acc = 0.0
    for b in range(1, q + 1):
        chi = kronecker(delta, b)
        if chi:
            acc += chi * float(_hurwitz_zeta(s, b / q))
    return acc / q ** s


# ---------------------------------------------------------------------------
# The five constants of the Fourier expansion and the Shimura lifts


@dataclass(frozen=True)
class LiftConstants:
    c1: complex
    c2: complex
    c3: complex
    c4: complex
    c5: complex
    eps_delta: complex


def lift_constants(k: int, pair: DiscriminantPair) -> LiftConstants:
    """Normalizing constants of the lift expansion for weight parameter k."""
    if k < 1:
        raise ValueError("lift constants need k >= 1")
    n_level = pair.level
    delta = pair.delta
    adelta = abs(delta)
    eps = pair.eps_delta
    sqrt_delta = pair.sqrt_delta
    rt2n = math.sqrt(2.0 * n_level)
    rt2 = math.sqrt(2.0)
    c1 = eps * adelta * rt2 / (1j * math.pi) * (adelta / (1j * math.pi * 2.0 * rt2n)) ** (k - 1)
    c2 = 2.0 * rt2 * eps * sqrt_delta / k * (delta / rt2n) ** (k - 1)
    c3 = (
        rt2
        * eps
        * sqrt_delta
        * math.factorial(2 * k - 2)
        / (1j * math.sqrt(math.pi))
        * (delta / (8.0 * math.pi * 1j * rt2n)) ** (k - 1)
    )
    c4 = (
        eps.conjugate()
        * 4.0
        * math.sqrt(TWO_PI)
        * delta
        / 1j
        * (math.pi * delta / (1j * rt2n)) ** (k - 1)
    )
    c5 = (
        2j
        * eps
        * math.sqrt(2.0 * n_level * adelta)
        * (sgn(delta) * math.sqrt(n_level) / (1j * rt2)) ** (k - 1)
    )
    return LiftConstants(c1=c1, c2=c2, c3=c3, c4=c4, c5=c5, eps_delta=eps)
