import pytest

from fermat_forms.quadric import (
    MINUS,
    PLUS,
    NotAStructure,
    QuadraticForm,
    Signature,
    antidiagonal_structure,
    change_structure,
    congruent,
    determinant,
    parse_matrix,
    q_rs_matrix,
    quadric_expected_count,
    quadric_real_forms,
    random_unimodular,
    sign_structure,
    signature,
    structure_discriminator,
)


def test_simple_signatures():
    assert signature(q_rs_matrix(4, 0)) == Signature(4, 0)
    assert signature([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]]) == Signature(3, 1)


def test_zero_diagonal_pivot():
    assert signature([[0, 1], [1, 0]]) == Signature(1, 1)
    assert signature([[0, 2, 0], [2, 0, 0], [0, 0, -3]]) == Signature(1, 2)
    assert signature([[0, 0], [0, 0]]) == Signature(0, 0)


def test_rejects_asymmetric():
    with pytest.raises(ValueError):
        QuadraticForm([[1, 2], [3, 4]])


def test_random_congruence_oracle(rng):
    m = random_unimodular(4, rng)
    assert signature(congruent(q_rs_matrix(2, 2), m)) == Signature(2, 2)


def test_unimodular_det(rng):
    for _ in range(20):
        assert abs(determinant(random_unimodular(5, rng))) == 1
    assert QuadraticForm(q_rs_matrix(2, 1)).determinant() == -1


@pytest.mark.parametrize("n, count", [(1, 2), (2, 4), (3, 3), (4, 5), (12, 9), (11, 7)])
def test_counts(n, count):
    assert quadric_expected_count(n) == count == len(quadric_real_forms(n))


def test_count_domain():
    with pytest.raises(ValueError):
        quadric_expected_count(0)


def test_discriminator():
    assert structure_discriminator(sign_structure(3, 2)) == PLUS
    assert structure_discriminator(antidiagonal_structure(6)) == MINUS
    with pytest.raises(NotAStructure):
        structure_discriminator(antidiagonal_structure(5))
    with pytest.raises(NotAStructure):
        structure_discriminator([[2, 0], [0, 1]])


def test_discriminator_conjugation_stable(rng):
    for _ in range(30):
        p = [[complex(rng.randint(-2, 2), rng.randint(-2, 2)) for _ in range(4)] for _ in range(4)]
        try:
            a = change_structure(antidiagonal_structure(4), p)
            b = change_structure(sign_structure(1, 3), p)
        except ZeroDivisionError:
            continue
        assert structure_discriminator(a) == MINUS
        assert structure_discriminator(b) == PLUS


def test_parse_matrix():
    form = parse_matrix("1\n1 0 0\n0 1/2 0\n0 0 -3\n")
    assert signature(form) == Signature(2, 1)
    with pytest.raises(ValueError):
        parse_matrix("2\n1 0\n0 1\n")
    with pytest.raises(ValueError):
        parse_matrix("")
