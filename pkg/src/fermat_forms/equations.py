"""Real defining equations for the real forms labelled H(r), K(s,t) and L.

Each coordinate block of a canonical cocycle has an invariant linear form:

* a coordinate scaled by xi_d contributes Y = xi_{2d} X, so X^d = -Y^d;
* an untouched coordinate contributes Y = X;
* a swapped pair (X_j, X_k) contributes Y_j = (X_j + X_k)/2 and
  Y_k = i (X_j - X_k)/2, so X_j^d + X_k^d = (Y_j + iY_k)^d + (Y_j - iY_k)^d.

The last expression is expanded with integer coefficients by :func:`pair_block`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from math import comb

from .cohomology import Label, check_label, representative
from .cyclotomic import CyclotomicNumber
from .group import GroupParams
from .polynomial import Polynomial

__all__ = [
    "RealFormEquation",
    "pair_block",
    "emit_equation",
    "emit_all",
    "verify_equation",
    "coordinate_change",
    "L_DESCRIPTOR",
]

L_DESCRIPTOR = (
    "quotient Z^n_d of F^n_d by the twisted real structure rho' "
    "[z0:z1:...:z_{n+1}] -> [-conj(z1):conj(z0):...:-conj(z_n)]; empty real locus; "
    "not a hypersurface in the split real projective space"
)


@dataclass
class RealFormEquation:
    label: Label
    n: int
    d: int
    polynomial: Polynomial | None = None
    descriptor: str | None = None

    @property
    def nvars(self) -> int:
        return self.n + 2

    def to_text(self) -> str:
        if self.polynomial is None:
            return self.descriptor or ""
        return f"{self.polynomial.to_text()} = 0"

    def to_record(self) -> dict:
        rec = {"label": str(self.label), "n": self.n, "d": self.d}
        if self.polynomial is None:
            rec["descriptor"] = self.descriptor
            rec["terms"] = None
        else:
            rec["text"] = self.to_text()
            rec["terms"] = [[int(c), list(e)] for e, c in self.polynomial.sorted_terms()]
        return rec


def pair_block(d: int, j: int, k: int, nvars: int) -> Polynomial:
    """(Y_j + iY_k)^d + (Y_j - iY_k)^d with integer coefficients."""
    if d < 1:
        raise ValueError("pair_block needs d >= 1")
    terms = {}
    for m in range(0, d + 1, 2):
        e = [0] * nvars
        e[j] += d - m
        e[k] += m
        terms[tuple(e)] = 2 * (-1) ** (m // 2) * comb(d, m)
    return Polynomial(nvars, terms)


def _layout(label: Label, params: GroupParams):
    """(minus count, plus count); the remaining coordinates form swapped pairs."""
    if label.kind == "H":
        return 0, label.s
    return label.s, label.t


def emit_equation(label: Label | str, params: GroupParams) -> RealFormEquation:
    if isinstance(label, str):
        label = Label.parse(label)
    check_label(label, params)
    n, d = params.n, params.d
    if label.kind == "L":
        return RealFormEquation(label, n, d, descriptor=L_DESCRIPTOR)
    size = params.size
    minus, plus = _layout(label, params)
    poly = Polynomial(size)
    for i in range(minus + plus):
        e = [0] * size
        e[i] = d
        poly = poly + Polynomial.monomial(size, e, -1 if i < minus else 1)
    for j in range(minus + plus, size, 2):
        poly = poly + pair_block(d, j, j + 1, size)
    return RealFormEquation(label, n, d, polynomial=poly)


def emit_all(params: GroupParams) -> list[RealFormEquation]:
    from .cohomology import canonical_labels

    return [emit_equation(lab, params) for lab in canonical_labels(params)]


def _field_order(d: int) -> int:
    # contains xi_{2d} and sqrt(-1); a subfield of Q(zeta_{4d})
    return math.lcm(4, 2 * d)


def coordinate_change(label: Label, params: GroupParams) -> list[list[CyclotomicNumber]]:
    """Rows of T with Y = T X; entries in Q(zeta_m), m = lcm(4, 2d)."""
    check_label(label, params)
    if label.kind == "L":
        raise ValueError("L has no hypersurface coordinates")
    m = _field_order(params.d)
    size = params.size
    zero = CyclotomicNumber.from_rational(m, 0)
    one = CyclotomicNumber.from_rational(m, 1)
    half = CyclotomicNumber.from_rational(m, 1) / 2
    i_unit = CyclotomicNumber.root(m, m // 4)
    xi2d = CyclotomicNumber.root(m, m // (2 * params.d))
    minus, plus = _layout(label, params)
    rows = [[zero] * size for _ in range(size)]
    for k in range(minus):
        rows[k][k] = xi2d
    for k in range(minus, minus + plus):
        rows[k][k] = one
    for j in range(minus + plus, size, 2):
        k = j + 1
        rows[j][j], rows[j][k] = half, half
        rows[k][j], rows[k][k] = i_unit * half, -(i_unit * half)
    return rows


def _is_invariant(row, cocycle, m) -> bool:
    """Invariance of sum c_j X_j under X_j -> xi^{v_j} X_{perm j}, c -> conj(c)."""
    d = cocycle.d
    image = [CyclotomicNumber.from_rational(m, 0)] * len(row)
    for j, c in enumerate(row):
        if not c.is_zero():
            image[cocycle.perm[j]] = image[cocycle.perm[j]] + c.conjugate() * CyclotomicNumber.root(
                m, (m // d) * cocycle.vec[j]
            )
    return all(a == b for a, b in zip(image, row))


def _determinant(rows):
    a = [list(r) for r in rows]
    size = len(a)
    det = CyclotomicNumber.from_rational(a[0][0].order, 1)
    for col in range(size):
        piv = next((r for r in range(col, size) if not a[r][col].is_zero()), None)
        if piv is None:
            return CyclotomicNumber.from_rational(det.order, 0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det = det * a[col][col]
        inv = a[col][col].inverse()
        for r in range(col + 1, size):
            if not a[r][col].is_zero():
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return det


def verify_equation(eq: RealFormEquation, label: Label | str, params: GroupParams) -> bool:
    """Exact round trip: eq(T X) is a root of unity times the Fermat polynomial.

    Also checks that every row of T is fixed by the semilinear map of the
    canonical cocycle and that T is invertible.
    """
    if isinstance(label, str):
        label = Label.parse(label)
    if label.kind == "L" or eq.polynomial is None:
        raise ValueError("L-type forms carry a descriptor, not an equation")
    if eq.label != label or (eq.n, eq.d) != (params.n, params.d):
        raise ValueError("equation was not emitted for this label and (n, d)")
    rows = coordinate_change(label, params)
    m = _field_order(params.d)
    cocycle = representative(label, params)
    if not all(_is_invariant(r, cocycle, m) for r in rows):
        return False
    if _determinant(rows).is_zero():
        return False
    size = params.size
    forms = [
        Polynomial(size, {tuple(int(i == j) for i in range(size)): c for j, c in enumerate(r)})
        for r in rows
    ]
    image = eq.polynomial.substitute(forms)
    fermat_exps = [tuple(params.d * int(i == j) for i in range(size)) for j in range(size)]
    if set(image.terms) != set(fermat_exps):
        return False
    coeffs = {image.terms[e] for e in fermat_exps}
    if len(coeffs) != 1:
        return False
    (c,) = coeffs
    return c.root_of_unity_exponent() is not None
