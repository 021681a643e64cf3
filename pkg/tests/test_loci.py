from fractions import Fraction

import pytest

from fermat_forms.cohomology import Label, canonical_labels
from fermat_forms.equations import emit_equation
from fermat_forms.group import GroupParams
from fermat_forms.loci import (
    TopologyDescriptor,
    count_curve_components,
    expected_topology,
    find_real_point,
    prove_empty_allplus,
    stable_component_count,
)
from fermat_forms.polynomial import Polynomial
from fermat_forms.equations import RealFormEquation


def topo(label, n, d):
    return str(expected_topology(label, GroupParams(n, d)))


def test_expected_topology_table():
    assert topo("K(0,3)", 1, 4) == "Empty"
    assert topo("K(1,2)", 1, 4) == "S^1"
    assert topo("K(0,1)", 1, 6) == "3 x S^1"
    assert topo("H(1)", 1, 5) == "P^1(R)"
    assert topo("L", 2, 4) == "Empty"
    assert topo("K(1,3)", 2, 6) == "S^2"
    assert topo("K(2,2)", 2, 6) == "P^1(R) x P^1(R)"
    assert topo("K(0,2)", 2, 6) == "3 x S^2"
    assert topo("K(1,1)", 2, 6) == "Unknown"
    assert expected_topology("H(0)", GroupParams(2, 3)).component_count() is None


def test_descriptor_validation():
    with pytest.raises(ValueError):
        TopologyDescriptor("DisjointSpheres", count=0)


def test_emptiness_proof():
    assert prove_empty_allplus(GroupParams(3, 6))
    with pytest.raises(ValueError):
        prove_empty_allplus(GroupParams(1, 5))


@pytest.mark.parametrize("d", [3, 4, 5, 6, 8])
def test_curve_counts(d):
    p = GroupParams(1, d)
    for lab in canonical_labels(p):
        eq = emit_equation(lab, p)
        res = stable_component_count(eq, regions=True)
        assert res.stable
        assert res.count == expected_topology(lab, p).component_count()
        # Jordan on the sphere: regions = lifted circles + 1
        assert res.region_count == res.sphere_count + 1


def test_antipodal_lifts():
    eq = emit_equation("K(0,1)", GroupParams(1, 8))
    res = count_curve_components(eq, 32)
    assert res.stable and res.count == 4 and res.lift_sizes == [2, 2, 2, 2]
    odd = count_curve_components(emit_equation("H(1)", GroupParams(1, 5)), 32)
    assert odd.lift_sizes == [1]


def test_counting_needs_ternary_form():
    with pytest.raises(ValueError):
        count_curve_components(emit_equation("K(1,3)", GroupParams(2, 4)))


def test_rational_witness():
    eq = emit_equation("K(1,2)", GroupParams(1, 4))
    w = find_real_point(eq)
    assert w.exact and w.verify(eq)
    assert eq.polynomial.evaluate(w.coords) == 0


def test_interval_witness():
    eq = emit_equation("K(0,1)", GroupParams(1, 4))
    w = find_real_point(eq)
    assert not w.exact and w.verify(eq)
    lo, hi = w.interval
    assert lo < hi and hi - lo < Fraction(1, 1000)


def test_no_witness_on_empty_form():
    assert find_real_point(emit_equation("K(0,3)", GroupParams(1, 4))) is None


@pytest.mark.parametrize("nd", [(2, 4), (3, 4), (3, 5)])
def test_higher_dim_witness(nd):
    p = GroupParams(*nd)
    for lab in canonical_labels(p):
        if lab.kind == "L" or lab == Label.K(0, p.size):
            continue
        eq = emit_equation(lab, p)
        w = find_real_point(eq)
        assert w is not None and w.verify(eq)


def test_no_witness_on_empty_surface():
    assert find_real_point(emit_equation("K(0,4)", GroupParams(2, 6))) is None


def test_circle_count():
    # X^2 + Y^2 - Z^2 style conic and two disjoint ovals built by hand
    conic = RealFormEquation(Label.K(1, 2), 1, 2, Polynomial(3, {(2, 0, 0): -1, (0, 2, 0): 1, (0, 0, 2): 1}))
    assert stable_component_count(conic).count == 1
