"""Real structures on the torus E = C / (Z + zeta Z), zeta a primitive 6th root of 1.

Automorphisms are z -> zeta^i z + a.  All arithmetic happens in Q(zeta_12), in
which zeta = zeta_12^2, sqrt(-1) = zeta_12^3 and the fixed square root of zeta is
xi = zeta_12.  Translations are stored reduced modulo the lattice: writing
a = u + v zeta with u, v real (they lie in Q(sqrt 3)), both are brought into [0, 1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product

from .cyclotomic import CyclotomicNumber

__all__ = [
    "EllAut",
    "ell_is_cocycle",
    "ell_twisted_conjugate",
    "ell_invariant",
    "ell_normalize",
    "ell_compose",
    "ell_inverse",
    "ell_twist",
    "lattice_coordinates",
    "in_lattice",
    "cocycle_family",
    "NormalizationFailed",
    "ID",
    "NEG",
]

M = 12
ZETA = CyclotomicNumber.root(M, 2)
XI = CyclotomicNumber.root(M, 1)
I_UNIT = CyclotomicNumber.root(M, 3)
ZERO = CyclotomicNumber.from_rational(M, 0)
ONE = CyclotomicNumber.from_rational(M, 1)
SQRT3 = CyclotomicNumber.root(M, 1) + CyclotomicNumber.root(M, 11)
_ZETA_IM = ZETA - ZETA.conjugate()  # sqrt(-3)

ID = "Id"
NEG = "Neg"
LABEL_NAMES = {ID: "H(3)", NEG: "H(1)"}


class NormalizationFailed(RuntimeError):
    pass


def _zeta_pow(k: int) -> CyclotomicNumber:
    return CyclotomicNumber.root(M, 2 * (k % 6))


def _real_split(x: CyclotomicNumber) -> tuple[Fraction, Fraction]:
    """(p, q) with x = p + q sqrt(3); x must be real."""
    if x != x.conjugate():
        raise ValueError(f"{x!r} is not real")
    # traces over Q: Tr(1) = 4, Tr(sqrt 3) = 0, Tr(3) = 12
    p = x.trace() / 4
    q = (x * SQRT3).trace() / 12
    return p, q


def _floor_real(x: CyclotomicNumber) -> int:
    p, q = _real_split(x)
    guess = math.floor(float(p) + float(q) * math.sqrt(3))
    # exact correction: want guess <= x < guess + 1
    while _sign_p_q(p - guess, q) < 0:
        guess -= 1
    while _sign_p_q(p - guess - 1, q) >= 0:
        guess += 1
    return guess


def _sign_p_q(a: Fraction, b: Fraction) -> int:
    """Sign of a + b sqrt(3)."""
    if a >= 0 and b >= 0:
        return 0 if a == 0 and b == 0 else 1
    if a <= 0 and b <= 0:
        return -1
    lhs, rhs = a * a, 3 * b * b
    if a > 0:
        return (lhs > rhs) - (lhs < rhs)
    return (rhs > lhs) - (rhs < lhs)


def lattice_coordinates(a: CyclotomicNumber) -> tuple[CyclotomicNumber, CyclotomicNumber]:
    """Real (u, v) with a = u + v zeta."""
    a = a.lift(M)
    v = (a - a.conjugate()) / _ZETA_IM
    u = a - v * ZETA
    return u, v


def in_lattice(a: CyclotomicNumber) -> bool:
    u, v = lattice_coordinates(a)
    return _is_integer(u) and _is_integer(v)


def _is_integer(x: CyclotomicNumber) -> bool:
    return x.is_rational() and x.to_fraction().denominator == 1


def reduce_mod_lattice(a: CyclotomicNumber) -> CyclotomicNumber:
    u, v = lattice_coordinates(a)
    return (u - _floor_real(u)) + (v - _floor_real(v)) * ZETA


@dataclass(frozen=True)
class EllAut:
    """z -> zeta^rotation z + translation, translation reduced mod the lattice."""

    rotation: int
    translation: CyclotomicNumber = ZERO

    def __post_init__(self):
        object.__setattr__(self, "rotation", self.rotation % 6)
        object.__setattr__(self, "translation", reduce_mod_lattice(self.translation.lift(M)))

    @classmethod
    def from_coordinates(cls, rotation: int, u, v) -> EllAut:
        return cls(rotation, ONE * Fraction(u) + ZETA * Fraction(v))

    @property
    def coordinates(self) -> tuple[tuple[Fraction, Fraction], tuple[Fraction, Fraction]]:
        """((p_u, q_u), (p_v, q_v)) with u = p_u + q_u sqrt 3 and likewise v."""
        u, v = lattice_coordinates(self.translation)
        return _real_split(u), _real_split(v)

    def apply(self, z: CyclotomicNumber) -> CyclotomicNumber:
        return reduce_mod_lattice(_zeta_pow(self.rotation) * z + self.translation)

    def to_dict(self) -> dict:
        (pu, qu), (pv, qv) = self.coordinates
        return {
            "rotation": self.rotation,
            "u": _fmt_sqrt3(pu, qu),
            "v": _fmt_sqrt3(pv, qv),
        }

    def __repr__(self):
        d = self.to_dict()
        return f"EllAut(i={d['rotation']}, u={d['u']}, v={d['v']})"


def _fmt_sqrt3(p: Fraction, q: Fraction) -> str:
    if q == 0:
        return str(p)
    surd = "sqrt(3)" if abs(q) == 1 else f"{abs(q)}*sqrt(3)"
    if p == 0:
        return surd if q > 0 else f"-{surd}"
    return f"{p} {'+' if q > 0 else '-'} {surd}"


IDENTITY = EllAut(0)


def ell_compose(f: EllAut, g: EllAut) -> EllAut:
    """f after g."""
    return EllAut(f.rotation + g.rotation, _zeta_pow(f.rotation) * g.translation + f.translation)


def ell_inverse(f: EllAut) -> EllAut:
    return EllAut(-f.rotation, -(_zeta_pow(-f.rotation) * f.translation))


def ell_twist(f: EllAut) -> EllAut:
    """rho . f . rho with rho(z) = conj(z)."""
    return EllAut(-f.rotation, f.translation.conjugate())


def ell_is_cocycle(alpha: EllAut) -> bool:
    """(alpha . rho)^2 = id, i.e. zeta^i conj(a) + a lies in the lattice."""
    a = alpha.translation
    return in_lattice(_zeta_pow(alpha.rotation) * a.conjugate() + a)


def ell_twisted_conjugate(phi: EllAut, alpha: EllAut) -> EllAut:
    """phi^{-1} . alpha . twist(phi).

    For phi = (j, b), alpha = (i, a) the result is
    (i - 2j, zeta^{-j} a - zeta^{-j} b + zeta^{i-j} conj(b)).
    """
    i, j = alpha.rotation, phi.rotation
    a, b = alpha.translation, phi.translation
    trans = _zeta_pow(-j) * a - _zeta_pow(-j) * b + _zeta_pow(i - j) * b.conjugate()
    return EllAut(i - 2 * j, trans)


def ell_invariant(alpha: EllAut) -> int:
    return alpha.rotation % 2


def _decompose(alpha: EllAut, bound: int = 2):
    """Lattice shift lam and w with a = w + lam and zeta^i conj(w) + w = 0."""
    zi = _zeta_pow(alpha.rotation)
    for p, q in sorted(product(range(-bound, bound + 1), repeat=2), key=lambda t: (abs(t[0]) + abs(t[1]), t)):
        lam = ONE * p + ZETA * q
        w = alpha.translation - lam
        if (zi * w.conjugate() + w).is_zero():
            return w, lam
    return None


def ell_normalize(alpha: EllAut, bound: int = 2) -> tuple[str, EllAut]:
    """Label (ID or NEG) and a conjugator phi taking alpha to z -> z or z -> -z.

    First a translation b = (1 - sqrt(-1))/2 * w removes the translation part
    (w = sqrt(-1) xi^i x in the notation of the torus), then a rotation brings
    the exponent to 0 or 3.  The result is recomputed and checked exactly.
    """
    if not ell_is_cocycle(alpha):
        raise ValueError(f"{alpha!r} is not a cocycle")
    split = _decompose(alpha, bound)
    if split is None:
        raise NormalizationFailed(f"no lattice shift with |p|, |q| <= {bound} decomposes {alpha!r}")
    w, _ = split
    half_one_minus_i = (ONE - I_UNIT) / 2
    step1 = EllAut(0, half_one_minus_i * w)
    mid = ell_twisted_conjugate(step1, alpha)
    if not mid.translation.is_zero():
        raise NormalizationFailed(f"translation step left {mid!r}")
    i = mid.rotation
    j = i // 2 if i % 2 == 0 else (i - 3) // 2
    step2 = EllAut(j)
    phi = ell_compose(step1, step2)
    target = EllAut(0) if i % 2 == 0 else EllAut(3)
    result = ell_twisted_conjugate(phi, alpha)
    if result != target:
        raise NormalizationFailed(f"conjugation produced {result!r}, expected {target!r}")
    return (ID if i % 2 == 0 else NEG), phi


def cocycle_family(max_den: int = 6) -> list[EllAut]:
    """Cocycles with small-denominator data, for certificates and tests.

    Two sources: translations u + v zeta with u, v in (1/max_den) Z that pass the
    cocycle test, and translations sqrt(-1) xi^i x with x in (1/max_den) Z.
    """
    seen = set()
    out = []
    grid = [Fraction(k, q) for q in range(1, max_den + 1) for k in range(q)]
    grid = sorted(set(grid))
    for i in range(6):
        for u, v in product(grid, repeat=2):
            alpha = EllAut.from_coordinates(i, u, v)
            if alpha not in seen and ell_is_cocycle(alpha):
                seen.add(alpha)
                out.append(alpha)
        for x in grid:
            alpha = EllAut(i, I_UNIT * XI ** i * x)
            if alpha not in seen:
                seen.add(alpha)
                out.append(alpha)
    return out
