"""Sparse multivariate polynomials with exact coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

__all__ = ["Polynomial"]


class Polynomial:
    """Polynomial in ``nvars`` variables stored as {exponent tuple: coefficient}.

    Coefficients may be ints, Fractions or CyclotomicNumbers; anything that
    supports ``+``, ``*`` and ``== 0``.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | Iterable = ()):
        self.nvars = nvars
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean = {}
        for exps, c in items:
            exps = tuple(exps)
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} does not have {nvars} entries")
            clean[exps] = clean[exps] + c if exps in clean else c
        self.terms = {e: c for e, c in clean.items() if not _is_zero(c)}

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff=1) -> Polynomial:
        return cls(nvars, {tuple(exps): coeff})

    @classmethod
    def variable(cls, nvars: int, i: int, coeff=1) -> Polynomial:
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): coeff})

    @classmethod
    def constant(cls, nvars: int, c) -> Polynomial:
        return cls(nvars, {(0,) * nvars: c})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, degree: int | None = None) -> bool:
        degs = {sum(e) for e in self.terms}
        if degree is not None:
            return degs <= {degree}
        return len(degs) <= 1

    def sorted_terms(self) -> list[tuple[tuple[int, ...], object]]:
        """Terms in graded-lex order: higher total degree first, then lex descending."""
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), tuple(-x for x in kv[0])))

    def __add__(self, other: Polynomial) -> Polynomial:
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out[e] + c if e in out else c
        return Polynomial(self.nvars, out)

    def __neg__(self) -> Polynomial:
        return Polynomial(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            return Polynomial(self.nvars, {e: c * other for e, c in self.terms.items()})
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return Polynomial(self.nvars, out)

    def __rmul__(self, other) -> Polynomial:
        return self * other

    def __pow__(self, k: int) -> Polynomial:
        result = Polynomial.constant(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.nvars != other.nvars or self.terms.keys() != other.terms.keys():
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms)))

    def evaluate(self, point: Sequence):
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * x**k
            total = t + total
        return total

    def substitute(self, forms: Sequence[Polynomial]) -> Polynomial:
        """Replace variable i by ``forms[i]`` (all forms share one ring)."""
        if len(forms) != self.nvars:
            raise ValueError("need one substitution per variable")
        target = forms[0].nvars
        cache: dict = {}
        total = Polynomial(target)
        for e, c in self.terms.items():
            t = Polynomial.constant(target, c)
            for i, k in enumerate(e):
                if k:
                    if (i, k) not in cache:
                        cache[(i, k)] = forms[i] ** k
                    t = t * cache[(i, k)]
            total = total + t
        return total

    def to_text(self, names: Sequence[str] | None = None) -> str:
        if names is None:
            names = [f"Y{i}" for i in range(self.nvars)]
        if not self.terms:
            return "0"
        parts = []
        for k, (e, c) in enumerate(self.sorted_terms()):
            mono = "*".join(
                names[i] if p == 1 else f"{names[i]}^{p}" for i, p in enumerate(e) if p
            )
            neg = c < 0 if isinstance(c, (int, Fraction)) else False
            mag = -c if neg else c
            if mono and mag == 1:
                body = mono
            elif mono:
                body = f"{mag}*{mono}"
            else:
                body = f"{mag}"
            if k == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f"- {body}" if neg else f"+ {body}")
        return " ".join(parts)

    def __repr__(self):
        return f"Polynomial({self.to_text()})"


def _is_zero(c) -> bool:
    if hasattr(c, "is_zero"):
        return c.is_zero()
    return c == 0
