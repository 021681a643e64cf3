from fractions import Fraction

from fermat_forms.polynomial import Polynomial


def test_arithmetic_and_text():
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    p = (x + y) ** 3 - x * y * 3 * (x + y)
    assert p == x**3 + y**3
    assert p.to_text(["a", "b"]) == "a^3 + b^3"
    assert (x - y * 2).to_text() == "Y0 - 2*Y1"
    assert Polynomial(2).to_text() == "0"


def test_evaluate_substitute():
    x = Polynomial.variable(2, 0)
    y = Polynomial.variable(2, 1)
    p = x**2 - y
    assert p.evaluate([Fraction(1, 2), Fraction(1, 4)]) == 0
    q = p.substitute([x + y, y])
    assert q == x**2 + x * y * 2 + y**2 - y
    assert p.is_homogeneous() is False and (x * y).is_homogeneous(2)


def test_cancellation_drops_terms():
    x = Polynomial.variable(1, 0)
    assert (x - x).is_zero() and (x - x).degree() == -1
