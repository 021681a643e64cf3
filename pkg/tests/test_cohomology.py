import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fermat_forms.cohomology import (
    BudgetExceeded,
    Label,
    LabelingError,
    OpenCase,
    canonical_labels,
    check_label,
    classify,
    default_generators,
    enumerate_cocycles,
    expected_count,
    is_cocycle_criterion,
    is_cocycle_direct,
    label_classes,
    orbits,
    representative,
    sweep_report,
    twisted_conjugate,
)
from fermat_forms.group import GroupParams, compose, iter_group, random_element, twist


def test_label_parse_roundtrip():
    for text in ["H(3)", "K(0,1)", "K(2,2)", "L"]:
        assert str(Label.parse(text)) == text
    assert Label.parse(" K( 1 , 2 ) ") == Label.K(1, 2)
    with pytest.raises(ValueError):
        Label.parse("M(1)")


@pytest.mark.parametrize(
    "label, nd",
    [("K(1,1)", (2, 5)), ("H(1)", (1, 4)), ("H(2)", (1, 3)), ("K(2,1)", (1, 4)), ("L", (1, 4)), ("K(0,5)", (2, 4))],
)
def test_check_label_rejects(label, nd):
    with pytest.raises(ValueError):
        check_label(Label.parse(label), GroupParams(*nd))


def test_criterion_matches_direct_on_whole_group():
    for nd in [(1, 3), (1, 4), (2, 3)]:
        for g in iter_group(GroupParams(*nd)):
            assert is_cocycle_direct(g) == is_cocycle_criterion(g)


def test_representatives_are_cocycles():
    for n in range(1, 5):
        for d in range(3, 9):
            p = GroupParams(n, d)
            for lab in canonical_labels(p):
                assert is_cocycle_direct(representative(lab, p)), (lab, p)


def test_enumeration_methods_agree_small():
    p = GroupParams(2, 4)
    assert enumerate_cocycles(p, "brute") == enumerate_cocycles(p, "criterion")


def test_parallel_enumeration_agrees():
    p = GroupParams(3, 4)
    assert enumerate_cocycles(p, workers=2) == enumerate_cocycles(p)


def test_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_cocycles(GroupParams(3, 6), "brute", budget=1000)


def test_budget_env(monkeypatch):
    monkeypatch.setenv("FERMAT_FORMS_BUDGET", "10")
    with pytest.raises(BudgetExceeded):
        enumerate_cocycles(GroupParams(1, 3), "brute")


def test_d2_rejected():
    with pytest.raises(ValueError, match="quadric"):
        classify(GroupParams(1, 2))


def test_unknown_method():
    with pytest.raises(ValueError):
        enumerate_cocycles(GroupParams(1, 3), "magic")


@pytest.mark.parametrize(
    "nd, expected",
    [((2, 6), 7), ((1, 4), 3), ((1, 5), 2), ((3, 4), 6), ((4, 6), 11), ((3, 3), 3), ((2, 3), 3)],
)
def test_counts(nd, expected):
    rep = classify(GroupParams(*nd))
    assert rep.class_count == expected == rep.expected_count
    assert rep.match and rep.complete


def test_open_case_reports_caveat():
    with pytest.raises(OpenCase):
        expected_count(GroupParams(2, 4))
    rep = classify(GroupParams(2, 4))
    assert rep.complete is False and rep.match is None and rep.caveats
    assert rep.class_count == 7


def test_elliptic_case_is_linear_only():
    rep = classify(GroupParams(1, 3))
    assert rep.complete is False and rep.class_count == 2 and rep.caveats


def test_labels_land_in_distinct_orbits():
    p = GroupParams(2, 6)
    rep = classify(p)
    labels = [c.label for c in rep.classes]
    assert sorted(labels) == sorted(canonical_labels(p))


def test_label_classes_detects_collisions():
    p = GroupParams(1, 4)
    orbs = orbits(sorted(enumerate_cocycles(p)), default_generators(p))
    lab = Label.K(0, 1)
    reps = [(lab, representative(lab, p)), (Label.K(0, 3), representative(lab, p))]
    with pytest.raises(LabelingError):
        label_classes(orbs, reps)


def test_seed_does_not_change_report():
    p = GroupParams(2, 6)
    base = classify(p).to_dict()
    for seed in range(3):
        assert classify(p, seed=seed).to_dict() == base


def test_sweep_sorted_and_errors_inline():
    rows = sweep_report([2, 1], [4, 3])
    assert [(r.n, r.d) for r in rows] == [(1, 3), (1, 4), (2, 3), (2, 4)]
    assert all(r.match for r in rows if r.applicable)
    assert not rows[0].applicable and not rows[3].applicable
    assert sweep_report([], []) == []


def test_sweep_parallel_identical():
    a = [r.to_dict() for r in sweep_report(range(1, 3), range(3, 6))]
    b = [r.to_dict() for r in sweep_report(range(1, 3), range(3, 6), workers=2)]
    assert a == b


CASES = [(1, 4), (1, 5), (2, 3), (2, 6), (3, 4)]
_cocycles = {nd: sorted(enumerate_cocycles(GroupParams(*nd))) for nd in CASES}
_orbit_of = {}
for _nd in CASES:
    _p = GroupParams(*_nd)
    for _k, _orb in enumerate(orbits(_cocycles[_nd], default_generators(_p))):
        for _g in _orb:
            _orbit_of[(_nd, _g)] = _k


@settings(max_examples=1000)
@given(st.sampled_from(CASES), st.integers(0, 2**32))
def test_orbit_partition_invariants(nd, seed):
    p = GroupParams(*nd)
    rng = random.Random(seed)
    alpha = rng.choice(_cocycles[nd])
    phi, psi = random_element(p, rng), random_element(p, rng)
    beta = twisted_conjugate(phi, alpha)
    # cocycles go to cocycles, inside the same orbit
    assert is_cocycle_direct(beta)
    assert _orbit_of[(nd, beta)] == _orbit_of[(nd, alpha)]
    # right action
    assert twisted_conjugate(psi, beta) == twisted_conjugate(compose(phi, psi), alpha)


@settings(max_examples=1000)
@given(st.sampled_from(CASES + [(2, 4), (3, 5)]), st.integers(0, 2**32))
def test_criterion_matches_direct_random(nd, seed):
    g = random_element(GroupParams(*nd), random.Random(seed))
    assert is_cocycle_criterion(g) == is_cocycle_direct(g)
    h = compose(g, twist(g))
    assert h.is_identity() == is_cocycle_direct(g)
