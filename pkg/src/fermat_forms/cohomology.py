"""First Galois cohomology of Aut F^n_d with respect to complex conjugation.

A cocycle is an automorphism ``a`` with ``a . twist(a) = id``; two cocycles are
equivalent when ``b = phi^{-1} . a . twist(phi)`` for some automorphism phi.
Classes are computed as orbits of this right action, found by breadth-first
closure under a generating set, and then matched against the canonical block
representatives H(r), K(s,t) and L.
"""

from __future__ import annotations

import logging
import os
import random
import re
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterable, Sequence

from .group import (
    AutElement,
    GroupParams,
    _compose,
    _inverse,
    _twist,
    all_canonical_vectors,
    canonical_vector,
    compose,
    compose_batch,
    group_order,
    inverse,
    involutions,
    is_involution,
    twist,
)

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 10**7
BUDGET_ENV = "FERMAT_FORMS_BUDGET"

F24_CAVEAT = (
    "Aut F^2_4 is strictly larger than the diagonal-by-permutation group; "
    "only the linear subgroup was classified. At least 4 non-isomorphic real "
    "forms are known and the full classification is open."
)
F13_CAVEAT = (
    "F^1_3 is an elliptic curve whose automorphism group contains translations; "
    "only the linear subgroup was classified here. See the `elliptic` command "
    "for the full two-class certificate."
)


class BudgetExceeded(RuntimeError):
    pass


class LabelingError(RuntimeError):
    pass


class OpenCase(ValueError):
    pass


def brute_force_budget() -> int:
    return int(os.environ.get(BUDGET_ENV, DEFAULT_BUDGET))


# -- labels ---------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Label:
    """Name of a canonical cocycle: ``H(r)``, ``K(s,t)`` or ``L``."""

    kind: str
    s: int = 0
    t: int = 0

    def __str__(self):
        if self.kind == "H":
            return f"H({self.s})"
        if self.kind == "K":
            return f"K({self.s},{self.t})"
        return self.kind

    @classmethod
    def H(cls, r: int) -> Label:
        return cls("H", r)

    @classmethod
    def K(cls, s: int, t: int) -> Label:
        return cls("K", s, t)

    @classmethod
    def L(cls) -> Label:
        return cls("L")

    @classmethod
    def parse(cls, text: str) -> Label:
        text = text.strip().replace(" ", "")
        if text == "L":
            return cls.L()
        m = re.fullmatch(r"H\((\d+)\)", text)
        if m:
            return cls.H(int(m.group(1)))
        m = re.fullmatch(r"K\((\d+),(\d+)\)", text)
        if m:
            return cls.K(int(m.group(1)), int(m.group(2)))
        raise ValueError(f"cannot parse class label {text!r}; expected H(r), K(s,t) or L")


def check_label(label: Label, params: GroupParams) -> None:
    """Raise ValueError unless ``label`` names a canonical class for (n, d)."""
    n, d = params.n, params.d
    if d < 3:
        raise ValueError("canonical labels are defined for d >= 3 only")
    if label.kind == "H":
        if d % 2 == 0:
            raise ValueError(f"{label} requires d odd (d={d})")
        r = label.s
        if not (0 <= r <= n + 2) or (r - n) % 2:
            raise ValueError(f"{label} needs 0 <= r <= n+2 and r = n mod 2 (n={n})")
    elif label.kind == "K":
        if d % 2:
            raise ValueError(f"{label} requires d even (d={d})")
        s, t = label.s, label.t
        if not (0 <= s <= t) or s + t > n + 2 or (s + t - n) % 2:
            raise ValueError(f"{label} needs 0 <= s <= t, s+t <= n+2, s+t = n mod 2 (n={n})")
    elif label.kind == "L":
        if d % 2 or n % 2:
            raise ValueError("L exists only for n and d both even")
    else:
        raise ValueError(f"unknown label kind {label.kind!r}")


# -- cocycle tests ----------------------------------------------------------------


def is_cocycle_direct(g: AutElement) -> bool:
    return compose(g, twist(g)).is_identity()


def is_cocycle_criterion(g: AutElement, params: GroupParams | None = None) -> bool:
    """Structural test: involutive permutation plus congruences on the exponents.

    With a fixed point every p_i - p_sigma(i) must vanish mod d.  Without one the
    differences must all agree and lie in {0, d/2}; for odd d only 0 qualifies.
    """
    if params is not None and (params.d != g.d or params.size != len(g.vec)):
        raise ValueError("element does not belong to the given parameters")
    p, v, d = g.perm, g.vec, g.d
    if not is_involution(p):
        return False
    diffs = {(v[i] - v[p[i]]) % d for i in range(len(p))}
    if any(p[i] == i for i in range(len(p))):
        return diffs == {0}
    if len(diffs) != 1:
        return False
    (delta,) = diffs
    return delta == 0 or (d % 2 == 0 and delta == d // 2)


def _check_classifiable(params: GroupParams):
    if params.d < 3:
        raise ValueError(
            f"Aut F^{params.n}_{params.d} is infinite for d = 2; use the quadric module instead"
        )


def _brute(params: GroupParams, budget: int) -> frozenset[AutElement]:
    order = group_order(params)
    if order > budget:
        raise BudgetExceeded(f"group order {order} exceeds brute-force budget {budget}")
    d = params.d
    vecs = all_canonical_vectors(params)
    twisted = (-vecs) % d
    identity = tuple(range(params.size))
    found = []
    for perm in permutations(range(params.size)):
        # row-wise g . twist(g) for every vector paired with this permutation
        prod, perm2 = compose_batch(vecs, perm, twisted, perm, d)
        if perm2 != identity:
            continue
        for row in vecs[~prod.any(axis=1)]:
            found.append(AutElement._raw(tuple(int(x) for x in row), perm, d))
    return frozenset(found)


def _criterion(params: GroupParams, perms: Iterable[Sequence[int]] | None = None) -> frozenset[AutElement]:
    d, size = params.d, params.size
    found = set()
    for perm in perms if perms is not None else involutions(size):
        perm = tuple(perm)
        fixed = [i for i in range(size) if perm[i] == i]
        pairs = [(i, perm[i]) for i in range(size) if perm[i] > i]
        if fixed:
            orbits = [(i,) for i in fixed] + pairs
            # the orbit through the last coordinate is pinned to 0 by normalisation
            last = next(k for k, o in enumerate(orbits) if size - 1 in o)
            free = [o for k, o in enumerate(orbits) if k != last]
            for values in product(range(d), repeat=len(free)):
                vec = [0] * size
                for o, x in zip(free, values):
                    for i in o:
                        vec[i] = x
                found.add(AutElement._raw(tuple(vec), perm, d))
        else:
            shifts = (0, d // 2) if d % 2 == 0 else (0,)
            for delta in shifts:
                for values in product(range(d), repeat=len(pairs)):
                    vec = [0] * size
                    for (i, j), x in zip(pairs, values):
                        vec[i] = x
                        vec[j] = (x - delta) % d
                    found.add(AutElement._raw(canonical_vector(vec, d), perm, d))
    return frozenset(found)


def _criterion_by_type(args):
    params, perms = args
    return _criterion(params, perms)


def enumerate_cocycles(
    params: GroupParams,
    method: str = "criterion",
    budget: int | None = None,
    workers: int = 1,
) -> frozenset[AutElement]:
    """All cocycles of the linear group, by exhaustive filter or by construction.

    ``workers > 1`` splits the constructive path across processes by cycle type.
    """
    _check_classifiable(params)
    if method == "brute":
        return _brute(params, brute_force_budget() if budget is None else budget)
    if method != "criterion":
        raise ValueError(f"unknown enumeration method {method!r}")
    if workers <= 1:
        return _criterion(params)
    by_type: dict[int, list] = {}
    for perm in involutions(params.size):
        swaps = sum(1 for i in range(params.size) if perm[i] > i)
        by_type.setdefault(swaps, []).append(perm)
    jobs = [(params, by_type[k]) for k in sorted(by_type)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(_criterion_by_type, jobs))
    return frozenset().union(*parts)


# -- twisted conjugation and orbits ---------------------------------------------------


def twisted_conjugate(phi: AutElement, alpha: AutElement) -> AutElement:
    """phi^{-1} . alpha . twist(phi); a right action on cocycles."""
    return compose(compose(inverse(phi), alpha), twist(phi))


def default_generators(params: GroupParams) -> list[AutElement]:
    """Adjacent transpositions together with every g(i, 1)."""
    gens = [AutElement.transposition(params, i, i + 1) for i in range(params.size - 1)]
    gens += [AutElement.g(params, i, 1) for i in range(params.size)]
    return gens


def orbits(
    cocycles: Iterable[AutElement],
    generators: Sequence[AutElement],
) -> list[frozenset[AutElement]]:
    """Partition ``cocycles`` into twisted-conjugacy orbits.

    Orbits are closed under the generator moves only; since the action is a
    group action of a finite group this yields whole orbits.  The result is
    sorted by the least member of each orbit.
    """
    cocycles = list(cocycles)
    if not cocycles:
        return []
    d = cocycles[0].d
    moves = []
    for phi in generators:
        inv_v, inv_p = _inverse(phi.vec, phi.perm, d)
        moves.append((inv_v, inv_p, _twist(phi.vec, d), phi.perm))
    pool = {c.key() for c in cocycles}
    seen: set = set()
    result = []
    for start in cocycles:
        key = start.key()
        if key in seen:
            continue
        seen.add(key)
        members = [key]
        queue = deque([key])
        while queue:
            perm, vec = queue.popleft()
            for inv_v, inv_p, tw_v, tw_p in moves:
                v1, p1 = _compose(inv_v, inv_p, vec, perm, d)
                v2, p2 = _compose(v1, p1, tw_v, tw_p, d)
                nk = (p2, v2)
                if nk not in seen:
                    if nk not in pool:
                        raise AssertionError(f"twisted conjugation left the cocycle set: {nk}")
                    seen.add(nk)
                    members.append(nk)
                    queue.append(nk)
        result.append(frozenset(AutElement._raw(v, p, d) for p, v in members))
    result.sort(key=lambda orb: min(orb).key())
    return result


# -- canonical representatives -------------------------------------------------------------


def _block_element(params: GroupParams, diag: Sequence[int], special: Sequence[int] | None = None) -> AutElement:
    """Diagonal exponents ``diag`` on the first coordinates, swap blocks after.

    ``special`` gives exponents for the swapped coordinates (used for L).
    """
    size = params.size
    head = len(diag)
    perm = list(range(size))
    for k in range(head, size, 2):
        perm[k], perm[k + 1] = k + 1, k
    vec = list(diag) + [0] * (size - head)
    if special is not None:
        vec[head:] = special
    return AutElement.make(vec, perm, params.d)


def representative(label: Label, params: GroupParams) -> AutElement:
    check_label(label, params)
    if label.kind == "H":
        return _block_element(params, [0] * label.s)
    if label.kind == "K":
        return _block_element(params, [1] * label.s + [0] * label.t)
    half = params.d // 2
    return _block_element(params, [], [0, half] * (params.size // 2))


def canonical_labels(params: GroupParams) -> list[Label]:
    _check_classifiable(params)
    n, d = params.n, params.d
    if d % 2:
        return [Label.H(r) for r in range(n % 2, n + 3, 2)]
    labels = [
        Label.K(s, t)
        for total in range(n % 2, n + 3, 2)
        for s in range(0, total // 2 + 1)
        for t in [total - s]
    ]
    labels.sort(key=lambda lab: (lab.s, lab.t))
    if n % 2 == 0:
        labels.append(Label.L())
    return labels


def canonical_representatives(params: GroupParams) -> list[tuple[Label, AutElement]]:
    return [(lab, representative(lab, params)) for lab in canonical_labels(params)]


def label_classes(
    classes: Sequence[Iterable[AutElement]],
    reps: Sequence[tuple[Label, AutElement]],
) -> list[Label]:
    """Assign to each orbit the unique canonical representative it contains."""
    where = {}
    for k, orb in enumerate(classes):
        for g in orb:
            where[g] = k
    assigned: list[list[Label]] = [[] for _ in classes]
    for lab, g in reps:
        if g not in where:
            raise LabelingError(f"representative {lab} = {g} is not among the cocycles")
        assigned[where[g]].append(lab)
    for k, labs in enumerate(assigned):
        if len(labs) != 1:
            raise LabelingError(
                f"orbit {k} received {len(labs)} labels ({', '.join(map(str, labs)) or 'none'})"
            )
    return [labs[0] for labs in assigned]


# -- counting ---------------------------------------------------------------------------


def expected_count(params: GroupParams) -> int:
    """Number of real forms of F^n_d predicted by the closed formulas."""
    n, d = params.n, params.d
    if d == 2:
        return (n + 1) // 2 + 1 if n % 2 else n // 2 + 3
    if (n, d) == (2, 4):
        raise OpenCase("the number of real forms of F^2_4 is not known (open case)")
    if d % 2:
        return n // 2 + 2
    if n % 2:
        return (n + 3) * (n + 5) // 8
    return (n + 4) * (n + 6) // 8 + 1


@dataclass
class CocycleClass:
    representative: AutElement
    orbit_size: int
    label: Label | None = None

    def to_dict(self) -> dict:
        return {
            "label": str(self.label) if self.label is not None else "Unlabeled",
            "orbit_size": self.orbit_size,
            "representative": {
                "vector": list(self.representative.vec),
                "permutation": list(self.representative.perm),
            },
        }


@dataclass
class ClassificationReport:
    params: GroupParams
    cocycle_count: int
    class_count: int
    expected_count: int | None
    classes: list[CocycleClass]
    complete: bool
    caveats: list[str] = field(default_factory=list)

    @property
    def match(self) -> bool | None:
        if self.expected_count is None:
            return None
        return self.class_count == self.expected_count

    def to_dict(self) -> dict:
        return {
            "n": self.params.n,
            "d": self.params.d,
            "cocycle_count": self.cocycle_count,
            "class_count": self.class_count,
            "expected_count": self.expected_count,
            "match": self.match,
            "complete": self.complete,
            "caveats": list(self.caveats),
            "classes": [c.to_dict() for c in self.classes],
        }


def classify(
    params: GroupParams,
    method: str = "criterion",
    generators: Sequence[AutElement] | None = None,
    budget: int | None = None,
    seed: int | None = None,
) -> ClassificationReport:
    """Twisted-conjugacy classes of cocycles in the linear automorphism group.

    ``seed`` shuffles enumeration and generator order; the report must not change.
    """
    _check_classifiable(params)
    cocycles = sorted(enumerate_cocycles(params, method=method, budget=budget))
    gens = list(generators) if generators is not None else default_generators(params)
    if seed is not None:
        rng = random.Random(seed)
        rng.shuffle(cocycles)
        rng.shuffle(gens)
    orbs = orbits(cocycles, gens)
    labels = label_classes(orbs, canonical_representatives(params))
    classes = [CocycleClass(min(orb), len(orb), lab) for orb, lab in zip(orbs, labels)]
    caveats = []
    try:
        expected = expected_count(params)
    except OpenCase:
        expected = None
    if (params.n, params.d) == (2, 4):
        caveats.append(F24_CAVEAT)
    elif (params.n, params.d) == (1, 3):
        caveats.append(F13_CAVEAT)
    report = ClassificationReport(
        params=params,
        cocycle_count=len(cocycles),
        class_count=len(orbs),
        expected_count=expected,
        classes=classes,
        complete=params.linear_group_is_full,
        caveats=caveats,
    )
    logger.debug("classified n=%d d=%d: %d cocycles, %d classes", params.n, params.d,
                 report.cocycle_count, report.class_count)
    return report


# -- sweeps ------------------------------------------------------------------------------


@dataclass
class SweepRow:
    n: int
    d: int
    cocycle_count: int | None = None
    class_count: int | None = None
    expected_count: int | None = None
    complete: bool | None = None
    match: bool | None = None
    error: str | None = None

    @property
    def applicable(self) -> bool:
        return self.error is None and bool(self.complete)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "cocycle_count": self.cocycle_count,
            "class_count": self.class_count,
            "expected_count": self.expected_count,
            "complete": self.complete,
            "match": self.match,
            "error": self.error,
        }


def _sweep_cell(nd) -> SweepRow:
    n, d = nd
    try:
        rep = classify(GroupParams(n, d))
    except (ValueError, BudgetExceeded, LabelingError) as exc:
        return SweepRow(n, d, error=f"{type(exc).__name__}: {exc}")
    return SweepRow(n, d, rep.cocycle_count, rep.class_count, rep.expected_count,
                    rep.complete, rep.match)


def sweep_report(n_range: Iterable[int], d_range: Iterable[int], workers: int = 1) -> list[SweepRow]:
    """Classify every (n, d) cell; rows are sorted by (n, d) regardless of workers."""
    cells = sorted(product(sorted(set(n_range)), sorted(set(d_range))))
    if workers > 1 and len(cells) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_sweep_cell, cells))
    else:
        rows = [_sweep_cell(c) for c in cells]
    return rows


def matrix_of(g: AutElement) -> list[list[int | None]]:
    """Exponent matrix of g: entry [i][perm[i]] = vec[i], None elsewhere."""
    size = len(g.vec)
    rows = [[None] * size for _ in range(size)]
    for i in range(size):
        rows[i][g.perm[i]] = g.vec[i]
    return rows


__all__ = [
    "Label",
    "check_label",
    "is_cocycle_direct",
    "is_cocycle_criterion",
    "enumerate_cocycles",
    "twisted_conjugate",
    "default_generators",
    "orbits",
    "representative",
    "canonical_labels",
    "canonical_representatives",
    "label_classes",
    "expected_count",
    "CocycleClass",
    "ClassificationReport",
    "classify",
    "SweepRow",
    "sweep_report",
    "BudgetExceeded",
    "LabelingError",
    "OpenCase",
]

