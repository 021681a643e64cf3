"""Degree-2 Fermat hypersurfaces: quadric signatures and the two real-structure types."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cyclotomic import CyclotomicNumber

__all__ = [
    "Signature",
    "QuadraticForm",
    "signature",
    "quadric_expected_count",
    "quadric_real_forms",
    "structure_discriminator",
    "q_rs_matrix",
    "antidiagonal_structure",
    "sign_structure",
    "congruent",
    "determinant",
    "change_structure",
    "gaussian_inverse",
    "random_unimodular",
    "parse_matrix",
    "NotAStructure",
    "PLUS",
    "MINUS",
]

PLUS = "PlusType"
MINUS = "MinusType"


class NotAStructure(ValueError):
    pass


@dataclass(frozen=True)
class Signature:
    p: int
    q: int

    @property
    def rank(self) -> int:
        return self.p + self.q

    def __iter__(self):
        return iter((self.p, self.q))


class QuadraticForm:
    """Symmetric rational matrix."""

    def __init__(self, matrix: Sequence[Sequence]):
        rows = [[Fraction(x) for x in row] for row in matrix]
        size = len(rows)
        if any(len(r) != size for r in rows):
            raise ValueError("matrix must be square")
        for i in range(size):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i}, {j})")
        self.matrix = rows

    @property
    def size(self) -> int:
        return len(self.matrix)

    def determinant(self) -> Fraction:
        return determinant(self.matrix)

    def is_nondegenerate(self) -> bool:
        return self.determinant() != 0


def determinant(matrix: Sequence[Sequence]) -> Fraction:
    """Exact determinant by Gaussian elimination over Q."""
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if a[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            a[c], a[piv] = a[piv], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def signature(form: QuadraticForm | Sequence[Sequence]) -> Signature:
    """Exact (p, q) by symmetric Gaussian elimination over Q.

    A zero pivot with a nonzero entry a_ij is repaired by adding row/column j to
    row/column i, which makes the new diagonal entry 2 a_ij (plus a_jj).
    """
    if not isinstance(form, QuadraticForm):
        form = QuadraticForm(form)
    a = [list(r) for r in form.matrix]
    n = len(a)
    pos = neg = 0
    k = 0
    while k < n:
        if a[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if a[i][i] != 0), None)
            if piv is not None:
                a[k], a[piv] = a[piv], a[k]
                for row in a:
                    row[k], row[piv] = row[piv], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    k += 1  # zero row and column: contributes to the radical
                    continue
                # X_k -> X_k + X_j gives diagonal 2 a_kj + a_jj = 2 a_kj here
                a[k] = [x + y for x, y in zip(a[k], a[j])]
                for row in a:
                    row[k] += row[j]
        pivot = a[k][k]
        if pivot > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / pivot
            if f:
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        for i in range(k + 1, n):
            a[i][k] = Fraction(0)
            a[k][i] = Fraction(0)
        k += 1
    return Signature(pos, neg)


def q_rs_matrix(r: int, s: int) -> list[list[Fraction]]:
    """Diagonal matrix of X_0^2 + ... + X_{r-1}^2 - X_r^2 - ... - X_{r+s-1}^2."""
    size = r + s
    return [[Fraction(1 if i < r else -1) if i == j else Fraction(0) for j in range(size)] for i in range(size)]


def congruent(form: Sequence[Sequence], m: Sequence[Sequence]) -> list[list[Fraction]]:
    """M^T A M."""
    n = len(form)
    am = [[sum(form[i][k] * m[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
    return [[sum(m[k][i] * am[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def random_unimodular(size: int, rng: random.Random, steps: int | None = None) -> list[list[Fraction]]:
    """Product of random elementary matrices with small rational multipliers and signed permutations; det = +-1."""
    m = [[Fraction(int(i == j)) for j in range(size)] for i in range(size)]
    for _ in range(steps if steps is not None else 2 * size):
        i, j = rng.sample(range(size), 2) if size > 1 else (0, 0)
        kind = rng.random()
        if kind < 0.7 and size > 1:
            c = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            for row in m:
                row[j] += c * row[i]
        elif size > 1:
            for row in m:
                row[i], row[j] = row[j], -row[i]
    return m


def quadric_expected_count(n: int) -> int:
    """Number of real forms of the quadric X_0^2 + ... + X_{n+1}^2 = 0."""
    if n <= 0:
        raise ValueError(f"dimension must be >= 1, got {n}")
    if n == 1:
        return 2
    if n == 2:
        return 4
    return n // 2 + 3 if n % 2 == 0 else (n + 1) // 2 + 1


def quadric_real_forms(n: int) -> list[str]:
    """Names of the real forms for n >= 3 (n = 1, 2 from the classical list)."""
    if n == 1:
        return ["Q(2,0)", "Q(1,1)"]
    if n == 2:
        return ["Q(4,0)", "Q(3,1)", "Q(2,2)", "Q(3,0) x Q(2,1)"]
    if n <= 0:
        raise ValueError(f"dimension must be >= 1, got {n}")
    names = [f"Q({n + 2 - s},{s})" for s in range(0, (n + 2) // 2 + 1)]
    if n % 2 == 0:
        names.append(f"L_{n}")
    return names


# -- real structures as matrices over Q(i) ---------------------------------------


def _gauss(x) -> CyclotomicNumber:
    if isinstance(x, CyclotomicNumber):
        return x.lift(4)
    if isinstance(x, complex):
        return CyclotomicNumber(4, [Fraction(x.real), Fraction(x.imag)])
    return CyclotomicNumber.from_rational(4, x)


def _matmul(a, b):
    n = len(a)
    zero = CyclotomicNumber.from_rational(4, 0)
    return [[sum((a[i][k] * b[k][j] for k in range(n)), zero) for j in range(n)] for i in range(n)]


def _conj(a):
    return [[x.conjugate() for x in row] for row in a]


def structure_discriminator(matrix: Sequence[Sequence]) -> str:
    """PlusType if A conj(A) = I, MinusType if A conj(A) = -I.

    The first family are the real quadrics Q(r,s); the second is the twisted
    real structure of projective space, which only exists in even size.
    """
    a = [[_gauss(x) for x in row] for row in matrix]
    size = len(a)
    if any(len(r) != size for r in a):
        raise ValueError("matrix must be square")
    sq = _matmul(a, _conj(a))
    for i in range(size):
        for j in range(size):
            if i != j and not sq[i][j].is_zero():
                raise NotAStructure("A * conj(A) is not scalar: not a real-structure candidate")
    diag = {sq[i][i] for i in range(size)}
    if diag == {CyclotomicNumber.from_rational(4, 1)}:
        return PLUS
    if diag == {CyclotomicNumber.from_rational(4, -1)}:
        if size % 2:
            raise NotAStructure("A * conj(A) = -I is impossible in odd size")
        return MINUS
    raise NotAStructure("A * conj(A) is not +-I: not a real-structure candidate")


def sign_structure(r: int, s: int) -> list[list[int]]:
    """diag(-1 (s times), 1 (r times))."""
    size = r + s
    return [[(-1 if i < s else 1) if i == j else 0 for j in range(size)] for i in range(size)]


def antidiagonal_structure(size: int) -> list[list[int]]:
    """Block-diagonal copies of [[0, 1], [-1, 0]] (an odd trailing row gets a 1)."""
    m = [[0] * size for _ in range(size)]
    for k in range(0, size - 1, 2):
        m[k][k + 1] = 1
        m[k + 1][k] = -1
    if size % 2:
        m[size - 1][size - 1] = 1
    return m


def gaussian_inverse(matrix):
    a = [[_gauss(x) for x in row] for row in matrix]
    n = len(a)
    one = CyclotomicNumber.from_rational(4, 1)
    zero = CyclotomicNumber.from_rational(4, 0)
    aug = [row + [one if i == j else zero for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if not aug[r][c].is_zero()), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = aug[c][c].inverse()
        aug[c] = [x * inv for x in aug[c]]
        for r in range(n):
            if r != c and not aug[r][c].is_zero():
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return [row[n:] for row in aug]


def change_structure(matrix, p):
    """P^{-1} A conj(P): the same real structure in new coordinates."""
    a = [[_gauss(x) for x in row] for row in matrix]
    pm = [[_gauss(x) for x in row] for row in p]
    return _matmul(_matmul(gaussian_inverse(pm), a), _conj(pm))


def parse_matrix(text: str) -> QuadraticForm:
    """Parse ``n`` on the first line followed by n+2 rows of rationals ``p/q``."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty matrix file")
    try:
        n = int(lines[0])
    except ValueError as exc:
        raise ValueError(f"first line must be the dimension n, got {lines[0]!r}") from exc
    size = n + 2
    rows = [ln.split() for ln in lines[1:]]
    if len(rows) != size or any(len(r) != size for r in rows):
        raise ValueError(f"expected {size} rows of {size} entries for n = {n}")
    return QuadraticForm([[Fraction(x) for x in r] for r in rows])
