import pytest

from fermat_forms.cohomology import Label, canonical_labels, representative
from fermat_forms.cyclotomic import CyclotomicNumber
from fermat_forms.equations import (
    coordinate_change,
    emit_all,
    emit_equation,
    pair_block,
    verify_equation,
)
from fermat_forms.group import GroupParams


def texts(n, d):
    return {str(eq.label): eq.to_text() for eq in emit_all(GroupParams(n, d))}


def test_curve_table_d4():
    assert texts(1, 4) == {
        "K(0,1)": "Y0^4 + 2*Y1^4 - 12*Y1^2*Y2^2 + 2*Y2^4 = 0",
        "K(0,3)": "Y0^4 + Y1^4 + Y2^4 = 0",
        "K(1,2)": "-Y0^4 + Y1^4 + Y2^4 = 0",
    }


def test_surface_table_d3():
    assert texts(2, 3) == {
        "H(0)": "2*Y0^3 - 6*Y0*Y1^2 + 2*Y2^3 - 6*Y2*Y3^2 = 0",
        "H(2)": "Y0^3 + Y1^3 + 2*Y2^3 - 6*Y2*Y3^2 = 0",
        "H(4)": "Y0^3 + Y1^3 + Y2^3 + Y3^3 = 0",
    }


def test_surface_table_d6_has_descriptor_for_L():
    eqs = {str(eq.label): eq for eq in emit_all(GroupParams(2, 6))}
    assert len(eqs) == 7
    assert eqs["L"].polynomial is None and "empty real locus" in eqs["L"].descriptor
    assert eqs["K(2,2)"].to_text() == "-Y0^6 - Y1^6 + Y2^6 + Y3^6 = 0"
    assert eqs["K(0,0)"].to_text() == (
        "2*Y0^6 - 30*Y0^4*Y1^2 + 30*Y0^2*Y1^4 - 2*Y1^6 + 2*Y2^6 - 30*Y2^4*Y3^2 + 30*Y2^2*Y3^4 - 2*Y3^6 = 0"
    )


@pytest.mark.parametrize("d", range(2, 9))
def test_pair_block_expands_binomial(d):
    block = pair_block(d, 0, 1, 2)
    # evaluate at a few integer points against (a+ib)^d + (a-ib)^d
    for a, b in [(1, 2), (3, -1), (0, 5)]:
        z = complex(a, b)
        assert block.evaluate([a, b]) == round((z**d + z.conjugate() ** d).real)


@pytest.mark.parametrize("d", range(2, 9))
def test_pair_block_swap_symmetry(d):
    block = pair_block(d, 0, 1, 2)
    swapped = pair_block(d, 1, 0, 2)
    if d % 2 == 0:
        assert swapped == block * (-1) ** (d // 2)
    else:
        assert swapped != block and swapped != block * -1


def test_verify_all_small():
    for n in (1, 2, 3):
        for d in range(3, 9):
            p = GroupParams(n, d)
            for lab in canonical_labels(p):
                if lab.kind == "L":
                    continue
                assert verify_equation(emit_equation(lab, p), lab, p), (lab, n, d)


def test_verify_rejects_wrong_label():
    p = GroupParams(1, 4)
    eq = emit_equation("K(0,1)", p)
    with pytest.raises(ValueError):
        verify_equation(eq, "K(1,2)", p)
    with pytest.raises(ValueError):
        verify_equation(emit_equation("L", GroupParams(2, 4)), "L", GroupParams(2, 4))


def test_tampered_equation_fails():
    p = GroupParams(1, 4)
    eq = emit_equation("K(0,1)", p)
    eq.polynomial = eq.polynomial + pair_block(4, 1, 2, 3)
    assert not verify_equation(eq, Label.K(0, 1), p)


def test_pair_coordinates_are_invariant_with_plus_one_factor():
    # X1 - i X2 lies in the invariant ring only after scaling by (1 + i), not (1 - i)
    m = 8
    i = CyclotomicNumber.root(m, 2)
    one = CyclotomicNumber.from_rational(m, 1)
    swap = representative(Label.K(0, 1), GroupParams(1, 4))
    from fermat_forms.equations import _is_invariant

    good = [CyclotomicNumber.from_rational(m, 0), one + i, (one + i) * -i]
    bad = [CyclotomicNumber.from_rational(m, 0), one - i, (one - i) * -i]
    assert _is_invariant(good, swap, m)
    assert not _is_invariant(bad, swap, m)


def test_record_shape():
    rec = emit_equation("K(1,2)", GroupParams(1, 4)).to_record()
    assert rec["terms"] == [[-1, [4, 0, 0]], [1, [0, 4, 0]], [1, [0, 0, 4]]]
    rows = coordinate_change(Label.K(1, 2), GroupParams(1, 4))
    assert rows[0][0].root_of_unity_exponent() is not None
