"""Weil representation of the metaplectic group on C[L'/L] and form input.

The discriminant group of the level N lattice is cyclic of order 2N; the
representation is fixed by its values on the two standard generators

    T e_h = e(h^2/4N) e_h
    S e_h = e(-1/8)/sqrt(2N) sum_{h'} e(-h h'/2N) e_{h'}

and a metaplectic element is a word in these generators together with the
branch of sqrt(c tau + d) that the word evaluation produces.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import DiscriminantPair, e2pi

# word tokens: ("s",) and ("t", n)

_S = ((0, -1), (1, 0))


def _mat_mul(a, b):
    return (
        (a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
        (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]),
    )


def _apply_mobius(mat, tau: complex) -> complex:
    (a, b), (c, d) = mat
    return (a * tau + b) / (c * tau + d)


@dataclass(frozen=True)
class Metaplectic:
    """Word in the metaplectic generators; the product of the word tokens,
    leftmost factor first, is the underlying matrix."""

    word: tuple = ()

    @classmethod
    def identity(cls) -> "Metaplectic":
        return cls(())

    @classmethod
    def t_power(cls, n: int) -> "Metaplectic":
        return cls((("t", n),)) if n else cls(())

    @classmethod
    def s(cls) -> "Metaplectic":
        return cls((("s",),))

    def __mul__(self, other: "Metaplectic") -> "Metaplectic":
        return Metaplectic(self.word + other.word)

    @property
    def matrix(self):
        m = ((1, 0), (0, 1))
        for tok in self.word:
            if tok[0] == "t":
                m = _mat_mul(m, ((1, tok[1]), (0, 1)))
            else:
                m = _mat_mul(m, _S)
        return m

    def act(self, tau: complex) -> complex:
        return _apply_mobius(self.matrix, tau)

    def phi(self, tau: complex) -> complex:
        """The square root of c tau + d carried by the word, evaluated by
        composing the generator branches right to left."""
        phi = 1.0 + 0j
        w = ((1, 0), (0, 1))
        for tok in reversed(self.word):
            if tok[0] == "s":
                phi = cmath.sqrt(_apply_mobius(w, tau)) * phi
                w = _mat_mul(_S, w)
            else:
                w = _mat_mul(((1, tok[1]), (0, 1)), w)
        return phi

    def rho(self, level: int) -> np.ndarray:
        """Matrix of the Weil representation on C[Z/2NZ] for this word."""
        size = 2 * level
        out = np.eye(size, dtype=complex)
        t_diag = weil_t_diagonal(level)
        s_mat = weil_s_matrix(level)
        for tok in self.word:
            if tok[0] == "t":
                out = out @ np.diag(t_diag ** tok[1])
            else:
                out = out @ s_mat
        return out


def weil_t_diagonal(level: int) -> np.ndarray:
    return np.array([e2pi(Fraction(h * h, 4 * level)) for h in range(2 * level)])


def weil_s_matrix(level: int) -> np.ndarray:
    size = 2 * level
    scale = e2pi(-0.125) / math.sqrt(size)
    return scale * np.array(
        [[e2pi(Fraction(-h * hp, size)) for hp in range(size)] for h in range(size)]
    )


def word_for_matrix(mat) -> Metaplectic:
    """A metaplectic word whose underlying matrix equals mat exactly."""
    (a, b), (c, d) = mat
    if a * d - b * c != 1:
        raise ValueError("matrix must have determinant 1")
    word = Metaplectic.identity()
    # peel T^q S factors off the left until the lower left entry vanishes
    while c != 0:
        q = round(Fraction(a, c))
        word = word * Metaplectic.t_power(q) * Metaplectic.s()
        a, b, c, d = c, d, -(a - q * c), -(b - q * d)
    if a == 1:
        word = word * Metaplectic.t_power(b)
    else:
        # a = d = -1: -T^{-b} = S^2 T^{-b}
        word = word * Metaplectic.s() * Metaplectic.s() * Metaplectic.t_power(-b)
    return word


def slash(two_weight: int, level: int, conjugate_rep: bool, func, elem: Metaplectic, tau: complex):
    """[F |_w gamma](tau) = phi(tau)^{-2w} rho(gamma)^{-1} F(gamma tau).

    func maps a point of the upper half plane to the vector of components
    over L'/L; two_weight is 2w (integral for half integral w).
    conjugate_rep selects the conjugate representation, used for negative
    twist discriminants.
    """
    rho = elem.rho(level)
    if conjugate_rep:
        rho = rho.conj()
    phi = elem.phi(tau)
    values = np.asarray(func(elem.act(tau)), dtype=complex)
    return phi ** (-two_weight) * (rho.conj().T @ values)


# ---------------------------------------------------------------------------
# Input forms


class ParseError(ValueError):
    pass


class SupportViolation(ValueError):
    pass


class SymmetryViolation(ValueError):
    pass


def symmetry_sign(k: int, delta: int) -> int:
    """Sign s with c(n, -h) = s c(n, h) forced on the inputs of weight 3/2 - k."""
    return (-1) ** (k + (0 if delta > 0 else 1))


@dataclass
class FormInput:
    """Fourier data of a vector valued harmonic Maass form of weight 3/2 - k.

    cplus holds the coefficients of the holomorphic part, cminus those of the
    non holomorphic part (indexed by the exponent n as an exact Fraction and
    the coset h mod 2N).
    """

    level: int
    k: int
    pair: DiscriminantPair
    cplus: dict = field(default_factory=dict)
    cminus: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.level != self.pair.level:
            raise ValueError("level mismatch between form and twist datum")
        if self.k < 1:
            raise ValueError("need k >= 1")
        self._validate()

    def _validate(self):
        sign = self.pair.sign
        two_n = 2 * self.level
        s = symmetry_sign(self.k, self.pair.delta)
        for name, table in (("c+", self.cplus), ("c-", self.cminus)):
            for (n, h) in table:
                frac = n + Fraction(sign * h * h, 4 * self.level)
                if frac.denominator != 1:
                    raise SupportViolation(
                        f"{name}({n},{h}): exponent violates the support condition"
                    )
            for (n, h), value in table.items():
                mirror = table.get((n, (-h) % two_n), 0.0)
                if abs(value - s * mirror) > 1e-12 * max(1.0, abs(value)):
                    raise SymmetryViolation(
                        f"{name}({n},{h}) and {name}({n},{-h % two_n}) break the sign {s} pairing"
                    )
        for (n, h), value in self.cminus.items():
            if n >= 0 and value:
                raise SupportViolation(
                    f"c-({n},{h}): the non holomorphic part carries n < 0 only"
                )

    def cp(self, n, h) -> complex:
        return self.cplus.get((Fraction(n), h % (2 * self.level)), 0.0)

    def cm(self, n, h) -> complex:
        return self.cminus.get((Fraction(n), h % (2 * self.level)), 0.0)

    def principal_exponents(self):
        """Sorted exponents n < 0 (plus 0 if the constant term is present)
        carried by the holomorphic part."""
        out = {n for (n, h), v in self.cplus.items() if n <= 0 and v}
        return sorted(out)

    @property
    def n0(self) -> Fraction:
        exps = self.principal_exponents()
        return -min(exps) if exps else Fraction(-1)


def parse_vvmf(text: str) -> FormInput:
    """Parse the plain text coefficient format for vector valued input forms.

    Header: VVMF N=<int> K=<int> DELTA=<int> R=<int>
    Lines:  CP|CM <h> <num> <den> <re> <im>
    """
    lines = text.splitlines()
    header = None
    cplus, cminus = {}, {}
    level = k = delta = r = None
    for idx, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if parts[0] != "VVMF":
                raise ParseError(f"line {idx}: expected VVMF header")
            try:
                fields = dict(p.split("=") for p in parts[1:])
                level = int(fields["N"])
                k = int(fields["K"])
                delta = int(fields["DELTA"])
                r = int(fields["R"])
            except (ValueError, KeyError) as exc:
                raise ParseError(f"line {idx}: bad header: {exc}") from None
            header = True
            continue
        if parts[0] not in ("CP", "CM"):
            raise ParseError(f"line {idx}: unknown record {parts[0]!r}")
        if len(parts) != 6:
            raise ParseError(f"line {idx}: expected 6 fields, got {len(parts)}")
        try:
            h = int(parts[1])
            n = Fraction(int(parts[2]), int(parts[3]))
            value = complex(float(parts[4]), float(parts[5]))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"line {idx}: {exc}") from None
        table = cplus if parts[0] == "CP" else cminus
        table[(n, h % (2 * level))] = value
    if header is None:
        raise ParseError("missing VVMF header")
    pair = DiscriminantPair(delta, r, level)
    return FormInput(level=level, k=k, pair=pair, cplus=cplus, cminus=cminus)


def dump_vvmf(form: FormInput) -> str:
    out = [
        f"VVMF N={form.level} K={form.k} DELTA={form.pair.delta} R={form.pair.r}"
    ]
    for tag, table in (("CP", form.cplus), ("CM", form.cminus)):
        for (n, h), value in sorted(table.items()):
            out.append(
                f"{tag} {h} {n.numerator} {n.denominator} {value.real!r} {value.imag!r}"
            )
    return "\n".join(out) + "\n"


# ---------------------------------------------------------------------------
# Scalar cusp forms (the covariant side of the cycle integrals)


@dataclass
class CuspFormInput:
    """q-expansion of a weight 2k cusp form on Gamma_0(N)."""

    level: int
    weight: int
    coefficients: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.weight < 2 or self.weight % 2:
            raise ValueError("weight must be a positive even integer")
        for n in self.coefficients:
            if n < 1:
                raise ValueError("cusp forms have coefficients from n = 1 on")

    def evaluate_series(self, z: complex) -> complex:
        q = cmath.exp(2j * math.pi * z)
        acc = 0j
        for n, a in sorted(self.coefficients.items()):
            acc += a * q ** n
        return acc

    def evaluate(self, z: complex) -> complex:
        """Value at z; for level 1 the point is first moved into the standard
        fundamental domain so the series converges quickly."""
        if self.level == 1:
            z_red, mat = reduce_to_fundamental_domain(z)
            c, d = mat[1]
            return (c * z + d) ** (-self.weight) * self.evaluate_series(z_red)
        return self.evaluate_series(z)


def reduce_to_fundamental_domain(z: complex):
    """gamma in SL_2(Z) with gamma z in the standard fundamental domain;
    returns (gamma z, gamma)."""
    mat = ((1, 0), (0, 1))
    for _ in range(200):
        n = round(z.real)
        if n:
            z = z - n
            mat = _mat_mul(((1, -n), (0, 1)), mat)
        if abs(z) < 1 - 1e-15:
            z = -1 / z
            mat = _mat_mul(_S, mat)
        else:
            return z, mat
    raise RuntimeError("fundamental domain reduction failed to converge")


def delta_qexp(terms: int) -> dict:
    """Coefficients of the weight 12 discriminant cusp form q prod (1-q^n)^24."""
    # multiply out with exact integers
    poly = [0] * (terms + 1)
    poly[0] = 1
    for n in range(1, terms + 1):
        for _ in range(24):
            nxt = poly[:]
            for i in range(terms + 1 - n):
                if poly[i]:
                    nxt[i + n] -= poly[i]
            poly = nxt
    return {i + 1: poly[i] for i in range(terms) if poly[i]}


def parse_cusp(text: str) -> CuspFormInput:
    """Header: CUSP N=<int> WEIGHT=<int>; lines: A <n> <re> <im>."""
    lines = text.splitlines()
    header = None
    level = weight = None
    coeffs = {}
    for idx, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if parts[0] != "CUSP":
                raise ParseError(f"line {idx}: expected CUSP header")
            try:
                fields = dict(p.split("=") for p in parts[1:])
                level = int(fields["N"])
                weight = int(fields["WEIGHT"])
            except (ValueError, KeyError) as exc:
                raise ParseError(f"line {idx}: bad header: {exc}") from None
            header = True
            continue
        if parts[0] != "A" or len(parts) != 4:
            raise ParseError(f"line {idx}: expected 'A n re im'")
        try:
            n = int(parts[1])
            value = complex(float(parts[2]), float(parts[3]))
        except ValueError as exc:
            raise ParseError(f"line {idx}: {exc}") from None
        coeffs[n] = value
    if header is None:
        raise ParseError("missing CUSP header")
    return CuspFormInput(level=level, weight=weight, coefficients=coeffs)
