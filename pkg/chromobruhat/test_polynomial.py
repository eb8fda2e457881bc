import pytest
import sympy

from chromobruhat.polynomial import IntPolynomial, polynomial_from_json

CHI_4132 = IntPolynomial((0, -2, 5, -4, 1))


def test_normalizes_trailing_zeros():
    assert IntPolynomial((1, 2, 0, 0)).coefficients == (1, 2)
    assert IntPolynomial((0, 0)).is_zero
    assert IntPolynomial(()).degree == -1


def test_from_roots_and_evaluation():
    p = IntPolynomial.from_roots([0, 1, 1, 2])
    assert p == CHI_4132
    assert p(0) == p(1) == p(2) == 0
    assert p(3) == 3 * 2 * 2 * 1
    assert p(-1) == 12


def test_from_counts():
    assert IntPolynomial.from_counts([0, 1, 1, 3]) == IntPolynomial((1, 2, 0, 1))
    assert IntPolynomial.from_counts([]).is_zero


def test_arithmetic():
    a = IntPolynomial((1, 1))
    b = IntPolynomial((-1, 1))
    assert a * b == IntPolynomial((-1, 0, 1))
    assert a + b == IntPolynomial((0, 2))
    assert a - a == IntPolynomial(())
    assert 3 * a == IntPolynomial((3, 3))
    assert a.shift(2) == IntPolynomial((0, 0, 1, 1))


def test_reflect_at_minus_inverse():
    assert CHI_4132.reflect_at_minus_inverse(4) == IntPolynomial((1, 4, 5, 2))
    assert IntPolynomial.monomial(3).reflect_at_minus_inverse(3) == IntPolynomial.constant(1)
    with pytest.raises(ValueError):
        CHI_4132.reflect_at_minus_inverse(3)


def test_to_text():
    assert CHI_4132.to_text() == 't^4-4t^3+5t^2-2t'
    assert IntPolynomial((1, 4, 5, 2)).to_text('q') == '2q^3+5q^2+4q+1'
    assert IntPolynomial(()).to_text() == '0'
    assert IntPolynomial((0, -1)).to_text() == '-t'


def test_factor_text_expands_back():
    t = sympy.Symbol('t')
    factored = sympy.sympify(CHI_4132.factor_text(), locals={'t': t})
    assert sympy.expand(factored - (t ** 4 - 4 * t ** 3 + 5 * t ** 2 - 2 * t)) == 0
    assert '**2' in CHI_4132.factor_text()


def test_json():
    assert CHI_4132.to_json() == [0, -2, 5, -4, 1]
    assert polynomial_from_json([0, -2, 5, -4, 1]) == CHI_4132
