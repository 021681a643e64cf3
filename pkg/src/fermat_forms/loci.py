"""Real loci of the real forms: emptiness, witness points, and curve components.

Plane curves are analysed on the boundary of the cube [-R, R]^3, which radial
projection identifies with the sphere S^2, the double cover of P^2(R).  Signs of
the ternary form are evaluated exactly at integer lattice points; marching
squares joins sign-change edges into closed curves and antipodal edges are then
identified to count components in the projective plane.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .cohomology import Label, check_label
from .equations import RealFormEquation, emit_equation
from .group import GroupParams

__all__ = [
    "TopologyDescriptor",
    "ComponentCount",
    "Witness",
    "expected_topology",
    "find_real_point",
    "prove_empty_allplus",
    "count_curve_components",
    "stable_component_count",
    "UnstableCount",
]

MAX_RESOLUTION = 2**10


class UnstableCount(RuntimeError):
    pass


@dataclass(frozen=True)
class TopologyDescriptor:
    kind: str  # Empty | Sphere | ProductOfProjectiveSpaces | ProjectiveSpace | DisjointSpheres | Unknown
    dim: int = 0
    i: int = 0
    j: int = 0
    count: int = 0

    def __post_init__(self):
        if self.kind == "DisjointSpheres" and self.count < 1:
            raise ValueError("DisjointSpheres needs count >= 1")

    def __str__(self):
        if self.kind == "Sphere":
            return f"S^{self.dim}"
        if self.kind == "ProjectiveSpace":
            return f"P^{self.dim}(R)"
        if self.kind == "ProductOfProjectiveSpaces":
            return f"P^{self.i}(R) x P^{self.j}(R)"
        if self.kind == "DisjointSpheres":
            return f"{self.count} x S^{self.dim}"
        return self.kind

    def component_count(self) -> int | None:
        """Number of connected components, or None when unknown."""
        return {
            "Empty": 0,
            "Sphere": 1,
            "ProjectiveSpace": 1,
            "ProductOfProjectiveSpaces": 1,
            "DisjointSpheres": self.count,
        }.get(self.kind)

    def to_dict(self) -> dict:
        return {"kind": self.kind, "text": str(self), "components": self.component_count()}


def expected_topology(label: Label | str, params: GroupParams) -> TopologyDescriptor:
    if isinstance(label, str):
        label = Label.parse(label)
    check_label(label, params)
    n, d = params.n, params.d
    if label.kind == "L":
        return TopologyDescriptor("Empty")
    if label.kind == "H":
        # d odd: any plain term makes the projection to the other coordinates bijective
        return TopologyDescriptor("ProjectiveSpace", dim=n) if label.s > 0 else TopologyDescriptor("Unknown")
    s, t = label.s, label.t
    pairs = (n + 2 - s - t) // 2
    if pairs == 0:
        if s == 0:
            return TopologyDescriptor("Empty")
        if s == 1:
            return TopologyDescriptor("Sphere", dim=n)
        return TopologyDescriptor("ProductOfProjectiveSpaces", dim=n, i=t - 1, j=s - 1)
    if pairs == 1 and s == 0:
        return TopologyDescriptor("DisjointSpheres", dim=n, count=d // 2)
    return TopologyDescriptor("Unknown")


# -- emptiness --------------------------------------------------------------------


def _positive_even_powers(poly) -> bool:
    """Every term is c * Y_i^e with c > 0 and e even: a positive definite form."""
    for e, c in poly.terms.items():
        nz = [k for k in e if k]
        if len(nz) != 1 or nz[0] % 2 or not c > 0:
            return False
    used = {next(i for i, k in enumerate(e) if k) for e in poly.terms}
    return len(used) == poly.nvars


def prove_empty_allplus(params: GroupParams) -> bool:
    """Certify that Y_0^d + ... + Y_{n+1}^d = 0 has no real points (d even)."""
    if params.d % 2:
        raise ValueError(f"d odd ({params.d}): the all-plus form has real points")
    eq = emit_equation(Label.K(0, params.n + 2), params)
    # a sum of positive multiples of even powers of all variables vanishes only at 0
    return _positive_even_powers(eq.polynomial)


# -- witnesses --------------------------------------------------------------------


@dataclass
class Witness:
    """A real point of the locus.

    Either ``coords`` are all rational and the equation vanishes exactly, or one
    coordinate (``free``) is an algebraic number isolated in ``interval`` where
    the restricted univariate polynomial changes sign (strictly, exactly).
    """

    coords: tuple[Fraction | None, ...]
    free: int | None = None
    interval: tuple[Fraction, Fraction] | None = None

    @property
    def exact(self) -> bool:
        return self.interval is None

    def to_dict(self) -> dict:
        return {
            "coords": [None if c is None else str(c) for c in self.coords],
            "free": self.free,
            "interval": None if self.interval is None else [str(x) for x in self.interval],
        }

    def verify(self, eq: RealFormEquation) -> bool:
        poly = eq.polynomial
        if self.exact:
            return poly.evaluate(self.coords) == 0
        lo, hi = self.interval
        pt_lo = list(self.coords)
        pt_hi = list(self.coords)
        pt_lo[self.free] = lo
        pt_hi[self.free] = hi
        a, b = poly.evaluate(pt_lo), poly.evaluate(pt_hi)
        return lo < hi and a * b < 0


def _restrict(poly, fixed: Sequence, free: int) -> list[Fraction]:
    """Univariate coefficients (low first) of poly with all but ``free`` substituted."""
    deg = max((e[free] for e in poly.terms), default=0)
    out = [Fraction(0)] * (deg + 1)
    for e, c in poly.terms.items():
        t = Fraction(c)
        for i, k in enumerate(e):
            if i != free and k:
                t *= fixed[i] ** k
        out[e[free]] += t
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return out


def _horner(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _divisors(k: int) -> list[int]:
    k = abs(k)
    small = [i for i in range(1, math.isqrt(k) + 1) if k % i == 0]
    return sorted(set(small + [k // i for i in small]))


def _rational_roots(coeffs: list[Fraction]) -> list[Fraction]:
    if all(c == 0 for c in coeffs):
        return []
    if coeffs[0] == 0:
        roots = [Fraction(0)]
        k = next(i for i, c in enumerate(coeffs) if c != 0)
        return roots + [r for r in _rational_roots(coeffs[k:]) if r != 0]
    if len(coeffs) < 2:
        return []
    lcm = math.lcm(*(c.denominator for c in coeffs))
    ints = [int(c * lcm) for c in coeffs]
    a0, an = ints[0], ints[-1]
    if abs(a0) > 10**8 or abs(an) > 10**8:
        return []
    cands = sorted(
        {Fraction(sgn * p, q) for p in _divisors(a0) for q in _divisors(an) for sgn in (1, -1)},
        key=lambda r: (abs(r), -r),
    )
    return [r for r in cands if _horner(coeffs, r) == 0]


def _sign_change_interval(coeffs: list[Fraction], samples: int = 256):
    if len(coeffs) < 2:
        return None
    bound = 1 + max(abs(c / coeffs[-1]) for c in coeffs[:-1])
    bound = Fraction(math.ceil(bound))
    prev_x, prev_v = -bound, _horner(coeffs, -bound)
    for k in range(1, samples + 1):
        x = -bound + 2 * bound * k / samples
        v = _horner(coeffs, x)
        if prev_v * v < 0:
            lo, hi = prev_x, x
            for _ in range(20):
                mid = (lo + hi) / 2
                vm = _horner(coeffs, mid)
                if vm == 0:
                    break
                if vm * _horner(coeffs, lo) < 0:
                    hi = mid
                else:
                    lo = mid
            return lo, hi
        prev_x, prev_v = x, v
    return None


def _height_values(height: int) -> list[Fraction]:
    vals = {Fraction(0)}
    for q in range(1, height + 1):
        for p in range(-height, height + 1):
            vals.add(Fraction(p, q))
    return sorted(vals, key=lambda x: (x.denominator + abs(x.numerator), abs(x), -x))


def find_real_point(eq: RealFormEquation, height: int = 2) -> Witness | None:
    """Search the affine charts for a real point of bounded height.

    Returns None when nothing is found; that is not a proof of emptiness.
    """
    if eq.polynomial is None:
        raise ValueError("L-type forms have no equation to search")
    poly = eq.polynomial
    nv = poly.nvars
    values = _height_values(height)
    for chart in range(nv):
        for free in range(nv):
            if free == chart:
                continue
            others = [i for i in range(nv) if i not in (chart, free)]
            for assignment in itertools.product(values, repeat=len(others)):
                fixed = [Fraction(0)] * nv
                fixed[chart] = Fraction(1)
                for i, x in zip(others, assignment):
                    fixed[i] = x
                coeffs = _restrict(poly, fixed, free)
                if len(coeffs) == 1:
                    if coeffs[0] == 0:
                        return Witness(tuple(fixed))
                    continue
                roots = _rational_roots(coeffs)
                if roots:
                    pt = list(fixed)
                    pt[free] = roots[0]
                    return Witness(tuple(pt))
                iv = _sign_change_interval(coeffs)
                if iv is not None:
                    pt = list(fixed)
                    pt[free] = None
                    return Witness(tuple(pt), free=free, interval=iv)
    return None


# -- curve components ----------------------------------------------------------------


@dataclass
class ComponentCount:
    count: int
    resolution: int
    stable: bool
    sphere_count: int = 0
    region_count: int | None = None
    lift_sizes: list[int] = field(default_factory=list)
    perturbation: int = 0
    history: list[tuple[int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "count": self.count,
            "resolution": self.resolution,
            "stable": self.stable,
            "sphere_count": self.sphere_count,
            "region_count": self.region_count,
            "lift_sizes": list(self.lift_sizes),
            "perturbation": self.perturbation,
            "history": [list(h) for h in self.history],
        }


# perturbation k evaluates f((3R I + k N) v); N is a fixed integer matrix
_PERTURB = np.array([[0, 1, 2], [2, 0, 1], [1, 2, 0]], dtype=np.int64)


class _ZeroHit(Exception):
    pass


def _face_points(R: int, axis: int, side: int):
    """Integer lattice points of one cube face, as three (2R+1, 2R+1) arrays."""
    u = np.arange(-R, R + 1, dtype=np.int64)
    U, V = np.meshgrid(u, u, indexing="ij")
    W = np.full_like(U, side * R)
    coords = [None, None, None]
    others = [a for a in range(3) if a != axis]
    coords[axis] = W
    coords[others[0]] = U
    coords[others[1]] = V
    return coords


class _SignOracle:
    """Exact signs of a ternary form at (perturbed) integer points."""

    def __init__(self, poly, R: int, k: int):
        self.terms = [(int(c), e) for e, c in poly.terms.items()]
        self.deg = poly.degree()
        self.M = 3 * R * np.eye(3, dtype=np.int64) + k * _PERTURB

    def _transform(self, X, Y, Z):
        M = self.M
        return (M[0, 0] * X + M[0, 1] * Y + M[0, 2] * Z,
                M[1, 0] * X + M[1, 1] * Y + M[1, 2] * Z,
                M[2, 0] * X + M[2, 1] * Y + M[2, 2] * Z)

    def signs(self, X, Y, Z) -> np.ndarray:
        A, B, C = self._transform(X, Y, Z)
        Af, Bf, Cf = (np.asarray(t, dtype=np.float64) for t in (A, B, C))
        val = np.zeros(Af.shape)
        mag = np.zeros(Af.shape)
        for c, (a, b, cc) in self.terms:
            t = c * Af**a * Bf**b * Cf**cc
            val += t
            mag += np.abs(t)
        # forward error bound for the float sum; undecided points go exact
        tol = 4 * (self.deg + len(self.terms) + 4) * np.finfo(np.float64).eps * mag
        sgn = np.sign(val).astype(np.int8)
        unsure = np.abs(val) <= tol
        if unsure.any():
            idx = np.nonzero(unsure)
            for pos in zip(*idx):
                a, b, cc = int(A[pos]), int(B[pos]), int(C[pos])
                v = sum(c * a**ea * b**eb * cc**ec for c, (ea, eb, ec) in self.terms)
                sgn[pos] = (v > 0) - (v < 0)
        return sgn

    def sign_at(self, x: int, y: int, z: int) -> int:
        s = self.signs(np.array([x]), np.array([y]), np.array([z]))
        return int(s[0])


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def add(self, x):
        self.parent.setdefault(x, x)

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def groups(self):
        out = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return out


def _edge(p, q):
    return (p, q) if p < q else (q, p)


def _neg_edge(e):
    (a, b) = e
    return _edge(tuple(-x for x in a), tuple(-x for x in b))


def _march(poly, R: int, k: int, regions: bool):
    oracle = _SignOracle(poly, R, k)
    uf = _UnionFind()
    faces = []
    for axis in range(3):
        for side in (1, -1):
            X, Y, Z = _face_points(R, axis, side)
            S = oracle.signs(X, Y, Z)
            if not S.all():
                raise _ZeroHit
            faces.append((X, Y, Z, S))
    saddles = []
    for X, Y, Z, S in faces:
        s00, s10, s01, s11 = S[:-1, :-1], S[1:, :-1], S[:-1, 1:], S[1:, 1:]
        mixed = ~((s00 == s10) & (s00 == s01) & (s00 == s11))
        for a, b in zip(*np.nonzero(mixed)):
            corners = [(a, b), (a + 1, b), (a + 1, b + 1), (a, b + 1)]
            pts = [(int(X[c]), int(Y[c]), int(Z[c])) for c in corners]
            sg = [int(S[c]) for c in corners]
            sides = [_edge(pts[i], pts[(i + 1) % 4]) for i in range(4)]
            crossing = [e for i, e in enumerate(sides) if sg[i] != sg[(i + 1) % 4]]
            for e in crossing:
                uf.add(e)
            if len(crossing) == 2:
                uf.union(crossing[0], crossing[1])
                continue
            # saddle: decide with the cell centre (doubled to stay integral)
            cx, cy, cz = (sum(p[t] for p in pts) // 2 for t in range(3))
            centre = oracle.sign_at(cx, cy, cz)
            if centre == 0:
                raise _ZeroHit
            # corners 0 and 2 share a sign; if the centre agrees they are joined
            # and the curve cuts off corners 1 and 3, otherwise corners 0 and 2
            if centre == sg[0]:
                uf.union(sides[0], sides[1])
                uf.union(sides[2], sides[3])
            else:
                uf.union(sides[3], sides[0])
                uf.union(sides[1], sides[2])
            saddles.append((pts, sg, centre))
    comps = uf.groups()
    root_of = {e: uf.find(e) for e in uf.parent}
    proj = _UnionFind()
    for r in comps:
        proj.add(r)
    for e, r in root_of.items():
        proj.union(r, root_of[_neg_edge(e)])
    lifts = sorted(len(v) for v in proj.groups().values())
    region_count = _count_regions(faces, saddles, R) if regions else None
    return len(proj.groups()), len(comps), lifts, region_count


def _count_regions(faces, saddles, R):
    """Connected same-sign regions of the sphere (independent of the curve graph)."""
    B = 2 * R + 1
    ids, signs, src, dst = [], [], [], []

    def enc(X, Y, Z):
        return ((X + R) * B + (Y + R)) * B + (Z + R)

    for X, Y, Z, S in faces:
        E = enc(X, Y, Z)
        ids.append(E.ravel())
        signs.append(S.ravel())
        for sl_a, sl_b in (((slice(None, -1), slice(None)), (slice(1, None), slice(None))),
                           ((slice(None), slice(None, -1)), (slice(None), slice(1, None)))):
            same = S[sl_a] == S[sl_b]
            src.append(E[sl_a][same])
            dst.append(E[sl_b][same])
    for pts, sg, centre in saddles:
        i, j = (0, 2) if centre == sg[0] else (1, 3)
        src.append(np.array([enc(*pts[i])]))
        dst.append(np.array([enc(*pts[j])]))
    all_ids, inv = np.unique(np.concatenate(ids), return_inverse=True)
    s = np.searchsorted(all_ids, np.concatenate(src))
    t = np.searchsorted(all_ids, np.concatenate(dst))
    g = coo_matrix((np.ones(len(s), dtype=np.int8), (s, t)), shape=(len(all_ids), len(all_ids)))
    ncomp, _ = connected_components(g, directed=False)
    return int(ncomp)


def _count_at(poly, resolution: int, regions: bool):
    if resolution < 4 or resolution % 4:
        raise ValueError("resolution (cells per great circle) must be a positive multiple of 4")
    R = resolution // 4
    for k in range(0, 8):
        try:
            return (*_march(poly, R, k, regions), k)
        except _ZeroHit:
            continue
    raise UnstableCount(f"could not avoid lattice zeros at resolution {resolution}")


def count_curve_components(eq: RealFormEquation, resolution: int = 64, regions: bool = False) -> ComponentCount:
    """Components of a real plane curve at ``resolution`` cells per great circle.

    ``stable`` compares against a rerun at twice the resolution.
    """
    if eq.polynomial is None or eq.polynomial.nvars != 3:
        raise ValueError("component counting needs a ternary form (n = 1)")
    c1, sph, lifts, reg, k = _count_at(eq.polynomial, resolution, regions)
    c2, *_ = _count_at(eq.polynomial, 2 * resolution, False)
    return ComponentCount(c1, resolution, c1 == c2, sph, reg, lifts, k,
                          [(resolution, c1), (2 * resolution, c2)])


def stable_component_count(
    eq: RealFormEquation,
    start: int = 16,
    max_resolution: int = MAX_RESOLUTION,
    regions: bool = False,
) -> ComponentCount:
    """Double the resolution until two consecutive counts agree."""
    if eq.polynomial is None or eq.polynomial.nvars != 3:
        raise ValueError("component counting needs a ternary form (n = 1)")
    history = []
    prev = None
    res = start
    while res <= max_resolution:
        count, sph, lifts, reg, k = _count_at(eq.polynomial, res, regions)
        history.append((res, count))
        if prev is not None and prev == count:
            return ComponentCount(count, res, True, sph, reg, lifts, k, history)
        prev = count
        res *= 2
    return ComponentCount(prev, history[-1][0], False, sph, reg, lifts, k, history)
