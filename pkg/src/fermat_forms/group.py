"""The automorphism group of a Fermat hypersurface and its Galois twist.

An element ``AutElement(vec, perm, d)`` is the projective linear map

    [X_0 : ... : X_{n+1}]  ->  [xi^{vec[0]} X_{perm[0]} : ... : xi^{vec[n+1]} X_{perm[n+1]}]

with ``xi = exp(2 pi i / d)``.  As a matrix this is ``D(vec) . P`` where P has a
1 in row i, column perm[i].  Composition is composition of maps,
``compose(g, h)(P) = g(h(P))``, so the point action is a left action.  With
this convention ``P_sigma D(w) = D(w o sigma) P_sigma`` and therefore

    (v, sigma) . (w, tau) = (v + w o sigma, tau o sigma).

Scalar matrices act trivially, so vectors are normalised to have last entry 0.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .cyclotomic import CyclotomicNumber

__all__ = [
    "GroupParams",
    "AutElement",
    "compose",
    "inverse",
    "twist",
    "act_on_point",
    "group_order",
    "canonical_vector",
    "cycle_type",
    "is_involution",
    "involutions",
    "fermat_value",
    "projectively_equal",
    "random_element",
    "iter_group",
]


class ParameterMismatch(ValueError):
    pass


@dataclass(frozen=True)
class GroupParams:
    n: int
    d: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"dimension n must be >= 1, got {self.n}")
        if self.d < 2:
            raise ValueError(f"degree d must be >= 2, got {self.d}")

    @property
    def linear_group_is_full(self) -> bool:
        """True when Aut F^n_d is exactly the diagonal-by-permutation group."""
        return self.d >= 3 and (self.n, self.d) not in {(1, 3), (2, 4)}

    @property
    def size(self) -> int:
        """Number of homogeneous coordinates, n + 2."""
        return self.n + 2


# -- permutations as image tuples ---------------------------------------------


def cycle_type(perm: Sequence[int]) -> tuple[int, ...]:
    """Cycle lengths in decreasing order (fixed points included)."""
    seen = [False] * len(perm)
    lengths = []
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        i = start
        while not seen[i]:
            seen[i] = True
            i = perm[i]
            length += 1
        lengths.append(length)
    return tuple(sorted(lengths, reverse=True))


def is_involution(perm: Sequence[int]) -> bool:
    return all(perm[perm[i]] == i for i in range(len(perm)))


def involutions(size: int) -> Iterator[tuple[int, ...]]:
    """All permutations of range(size) with square the identity, as image tuples."""

    def rec(images, free):
        if not free:
            yield tuple(images)
            return
        first, rest = free[0], free[1:]
        images[first] = first
        yield from rec(images, rest)
        for k, other in enumerate(rest):
            images[first], images[other] = other, first
            yield from rec(images, rest[:k] + rest[k + 1:])
            images[other] = other
        images[first] = first

    yield from rec(list(range(size)), list(range(size)))


def _check_perm(perm):
    if sorted(perm) != list(range(len(perm))):
        raise ValueError(f"not a permutation of 0..{len(perm) - 1}: {perm}")


# -- raw tuple kernels (used in hot loops) -------------------------------------


def canonical_vector(vec: Sequence[int], d: int) -> tuple[int, ...]:
    last = vec[-1]
    return tuple((x - last) % d for x in vec)


def _compose(v, p, w, q, d):
    last = v[-1] + w[p[-1]]
    return (
        tuple((v[i] + w[p[i]] - last) % d for i in range(len(v))),
        tuple(q[p[i]] for i in range(len(p))),
    )


def _inverse(v, p, d):
    size = len(p)
    inv = [0] * size
    u = [0] * size
    for i in range(size):
        inv[p[i]] = i
        u[p[i]] = -v[i]
    last = u[-1]
    return tuple((x - last) % d for x in u), tuple(inv)


def _twist(v, d):
    # negation commutes with the last-entry normalisation
    return tuple((-x) % d for x in v)


# -- public element type ---------------------------------------------------------


@dataclass(frozen=True, order=True)
class AutElement:
    """Element D(vec) . sigma of G^n_d x| S_{n+2}; ordered by (perm, vec)."""

    perm: tuple[int, ...]
    vec: tuple[int, ...]
    d: int

    def __post_init__(self):
        if len(self.perm) != len(self.vec):
            raise ValueError("vector and permutation sizes differ")
        _check_perm(self.perm)
        canon = canonical_vector(self.vec, self.d)
        if canon != tuple(self.vec):
            object.__setattr__(self, "vec", canon)

    @classmethod
    def _raw(cls, vec, perm, d):
        obj = cls.__new__(cls)
        object.__setattr__(obj, "perm", perm)
        object.__setattr__(obj, "vec", vec)
        object.__setattr__(obj, "d", d)
        return obj

    @classmethod
    def make(cls, vec: Sequence[int], perm: Sequence[int] | None, d: int) -> AutElement:
        if perm is None:
            perm = range(len(vec))
        return cls(tuple(perm), tuple(int(x) for x in vec), d)

    @classmethod
    def identity(cls, params: GroupParams) -> AutElement:
        return cls._raw((0,) * params.size, tuple(range(params.size)), params.d)

    @classmethod
    def diagonal(cls, params: GroupParams, vec: Sequence[int]) -> AutElement:
        if len(vec) != params.size:
            raise ParameterMismatch(f"expected {params.size} exponents, got {len(vec)}")
        return cls.make(vec, None, params.d)

    @classmethod
    def permutation(cls, params: GroupParams, perm: Sequence[int]) -> AutElement:
        if len(perm) != params.size:
            raise ParameterMismatch(f"expected a permutation of {params.size} points")
        return cls.make((0,) * params.size, perm, params.d)

    @classmethod
    def transposition(cls, params: GroupParams, i: int, j: int) -> AutElement:
        perm = list(range(params.size))
        perm[i], perm[j] = j, i
        return cls.permutation(params, perm)

    @classmethod
    def g(cls, params: GroupParams, i: int, j: int) -> AutElement:
        """Scale the i-th coordinate by xi^j."""
        vec = [0] * params.size
        vec[i] = j
        return cls.diagonal(params, vec)

    @property
    def n(self) -> int:
        return len(self.vec) - 2

    @property
    def params(self) -> GroupParams:
        return GroupParams(self.n, self.d)

    def is_identity(self) -> bool:
        return not any(self.vec) and all(self.perm[i] == i for i in range(len(self.perm)))

    def cycle_type(self) -> tuple[int, ...]:
        return cycle_type(self.perm)

    def key(self) -> tuple:
        return (self.perm, self.vec)

    def __mul__(self, other: AutElement) -> AutElement:
        return compose(self, other)

    def __repr__(self):
        return f"AutElement(vec={self.vec}, perm={self.perm}, d={self.d})"


def _same_group(g: AutElement, h: AutElement):
    if g.d != h.d or len(g.vec) != len(h.vec):
        raise ParameterMismatch(
            f"elements live in different groups: (n={g.n}, d={g.d}) vs (n={h.n}, d={h.d})"
        )


def compose(g: AutElement, h: AutElement, params: GroupParams | None = None) -> AutElement:
    """g . h, i.e. first apply h then g."""
    _same_group(g, h)
    if params is not None and (params.d != g.d or params.size != len(g.vec)):
        raise ParameterMismatch(f"{params} does not match element of size {len(g.vec)}, d={g.d}")
    v, p = _compose(g.vec, g.perm, h.vec, h.perm, g.d)
    return AutElement._raw(v, p, g.d)


def inverse(g: AutElement) -> AutElement:
    v, p = _inverse(g.vec, g.perm, g.d)
    return AutElement._raw(v, p, g.d)


def twist(g: AutElement) -> AutElement:
    """rho . g . rho^{-1} for rho the standard complex conjugation."""
    return AutElement._raw(_twist(g.vec, g.d), g.perm, g.d)


def group_order(params: GroupParams) -> int:
    return params.d ** (params.n + 1) * math.factorial(params.n + 2)


def iter_group(params: GroupParams) -> Iterator[AutElement]:
    size, d = params.size, params.d
    for perm in itertools.permutations(range(size)):
        for head in itertools.product(range(d), repeat=size - 1):
            yield AutElement._raw(head + (0,), perm, d)


def random_element(params: GroupParams, rng: random.Random) -> AutElement:
    perm = list(range(params.size))
    rng.shuffle(perm)
    vec = [rng.randrange(params.d) for _ in range(params.size)]
    return AutElement.make(vec, perm, params.d)


# -- batched kernels for exhaustive enumeration ---------------------------------


def all_canonical_vectors(params: GroupParams) -> np.ndarray:
    """Every normalised exponent vector, shape (d^{n+1}, n+2)."""
    size, d = params.size, params.d
    grids = np.indices((d,) * (size - 1)).reshape(size - 1, -1).T
    return np.hstack([grids, np.zeros((grids.shape[0], 1), dtype=grids.dtype)])


def compose_batch(v: np.ndarray, p: Sequence[int], w: np.ndarray, q: Sequence[int], d: int):
    """Vectorised :func:`compose` over rows of ``v`` and ``w`` sharing permutations."""
    p = np.asarray(p)
    out = v + w[:, p]
    out = (out - out[:, -1:]) % d
    return out, tuple(int(x) for x in np.asarray(q)[p])


# -- points ----------------------------------------------------------------


def act_on_point(g: AutElement, point: Sequence[CyclotomicNumber]) -> tuple[CyclotomicNumber, ...]:
    """Image of a projective point with coordinates in Q(zeta_m), d | m."""
    if len(point) != len(g.vec):
        raise ParameterMismatch(f"point has {len(point)} coordinates, expected {len(g.vec)}")
    m = _common_order(point)
    if m % g.d:
        raise ParameterMismatch(f"coordinates over Q(zeta_{m}) cannot carry d={g.d} roots of unity")
    if all(c.is_zero() for c in point):
        raise ValueError("the zero vector is not a projective point")
    pts = [c.lift(m) for c in point]
    step = m // g.d
    return tuple(CyclotomicNumber.root(m, step * g.vec[i]) * pts[g.perm[i]] for i in range(len(pts)))


def _common_order(point):
    m = 1
    for c in point:
        if not isinstance(c, CyclotomicNumber):
            raise TypeError("point coordinates must be CyclotomicNumber")
        m = math.lcm(m, c.order)
    return m


def projectively_equal(p: Sequence[CyclotomicNumber], q: Sequence[CyclotomicNumber]) -> bool:
    """True when p = c q for some nonzero scalar c."""
    if len(p) != len(q):
        return False
    k = next((i for i, c in enumerate(q) if not c.is_zero()), None)
    if k is None or p[k].is_zero():
        return False
    scale = p[k] / q[k]
    return all(a == scale * b for a, b in zip(p, q))


def fermat_value(point: Sequence[CyclotomicNumber], d: int) -> CyclotomicNumber:
    total = point[0] ** d
    for c in point[1:]:
        total = total + c**d
    return total
