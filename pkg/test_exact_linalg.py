# test_exact_linalg.py
import random
from fractions import Fraction

import pytest
import sympy

from src.linalg.exact_linalg import (ExactMatrix, IntegerPolynomial, det_fraction_free, mat_inverse,
                                     mat_pow, poly_arith)
from src.utils.errors import DimensionError, ParameterError, SingularMatrixError

X = sympy.Symbol("x")


def _sympy_poly(p: IntegerPolynomial) -> sympy.Poly:
    return sympy.Poly(list(reversed(p.coeffs)) or [0], X, domain="ZZ")


def _random_poly(rng: random.Random) -> IntegerPolynomial:
    return IntegerPolynomial(tuple(rng.randint(-9, 9) for _ in range(rng.randint(0, 6))))


def test_polynomial_is_normalized():
    p = IntegerPolynomial((1, 2, 0, 0))
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert IntegerPolynomial(()).degree == -1
    assert IntegerPolynomial((0, 0)).is_zero()


def test_polynomial_arithmetic_matches_sympy():
    rng = random.Random(7)
    for _ in range(50):
        p, q = _random_poly(rng), _random_poly(rng)
        assert _sympy_poly(p + q) == _sympy_poly(p) + _sympy_poly(q)
        assert _sympy_poly(p - q) == _sympy_poly(p) - _sympy_poly(q)
        assert _sympy_poly(p * q) == _sympy_poly(p) * _sympy_poly(q)
        assert _sympy_poly(p ** 3) == _sympy_poly(p) ** 3


def test_poly_arith_operations():
    p = IntegerPolynomial((1, 1))
    q = IntegerPolynomial((-1, 1))
    assert poly_arith(p, q, "add").coeffs == (0, 2)
    assert poly_arith(p, q, "mul").coeffs == (-1, 0, 1)
    with pytest.raises(ParameterError):
        poly_arith(p, q, "div")


def test_evaluate_and_derivative():
    p = IntegerPolynomial((-1, 0, 1))
    assert p.evaluate(1) == 0
    assert p.evaluate(3) == 8
    assert p.evaluate(Fraction(1, 2)) == Fraction(-3, 4)
    assert p.derivative().coeffs == (0, 2)


def test_substitutions():
    p = IntegerPolynomial((-4, 1))
    assert p.inflate(3).coeffs == (-4, 0, 0, 1)
    assert p.shift(2).coeffs == (0, 0, -4, 1)
    assert p.shift(2).trailing_zeros() == 2
    assert p.shift(2).divide_by_x_power(2) == p
    g, h = IntegerPolynomial((1, 0, -3, 0, 1)).even_odd_split()
    assert g.coeffs == (1, -3, 1)
    assert h.is_zero()


def test_power_sums_by_newton():
    p = IntegerPolynomial.linear(1) * IntegerPolynomial.linear(2)
    assert p.power_sums(4) == [3, 5, 9, 17]
    zero_root = IntegerPolynomial.linear(0) * IntegerPolynomial.linear(3)
    assert zero_root.power_sums(3) == [3, 9, 27]


def test_power_sums_require_monic():
    with pytest.raises(ParameterError):
        IntegerPolynomial((1, 2)).power_sums(2)


def test_matrix_shape_errors():
    with pytest.raises(DimensionError):
        ExactMatrix.from_rows([[1, 2], [3]])
    with pytest.raises(DimensionError):
        det_fraction_free(ExactMatrix.from_rows([[1, 2, 3], [4, 5, 6]]))
    with pytest.raises(DimensionError):
        ExactMatrix.identity(2) @ ExactMatrix.identity(3)


def test_small_determinants():
    assert det_fraction_free(ExactMatrix(0, 0)) == 1
    assert det_fraction_free(ExactMatrix.from_rows([[2, 1], [1, 3]])) == 5
    assert det_fraction_free(ExactMatrix.from_rows([[0, 1], [1, 0]])) == -1
    assert det_fraction_free(ExactMatrix.from_rows([[Fraction(1, 2), 1], [1, 4]])) == 1


@pytest.mark.parametrize("size", [1, 2, 3, 5, 8])
def test_determinant_matches_sympy(size):
    rng = random.Random(size)
    for _ in range(10):
        rows = [[rng.randint(-5, 5) for _ in range(size)] for _ in range(size)]
        assert det_fraction_free(ExactMatrix.from_rows(rows)) == int(sympy.Matrix(rows).det(method="berkowitz"))


def test_rational_determinant_matches_sympy():
    rng = random.Random(11)
    rows = [[Fraction(rng.randint(-6, 6), rng.randint(1, 4)) for _ in range(4)] for _ in range(4)]
    expected = sympy.Matrix([[sympy.Rational(e.numerator, e.denominator) for e in row] for row in rows]).det()
    assert det_fraction_free(ExactMatrix.from_rows(rows)) == Fraction(int(expected.p), int(expected.q))


def test_inverse():
    M = ExactMatrix.from_rows([[2, 1, 0], [1, 3, 1], [0, 1, 4]])
    assert M @ mat_inverse(M) == ExactMatrix.identity(3)
    assert mat_inverse(M) @ M == ExactMatrix.identity(3)
    with pytest.raises(SingularMatrixError):
        mat_inverse(ExactMatrix.from_rows([[1, 2], [2, 4]]))


def test_matrix_power_and_minor():
    A = ExactMatrix.from_rows([[0, 1, 0], [1, 0, 1], [0, 1, 0]])
    assert mat_pow(A, 0) == ExactMatrix.identity(3)
    assert mat_pow(A, 2) == A @ A
    assert mat_pow(A, 5) == A @ A @ A @ A @ A
    assert A.minor(0, 0) == ExactMatrix.from_rows([[0, 1], [1, 0]])
    assert ExactMatrix.from_rows([[7]]).minor(0, 0).rows == 0
    with pytest.raises(ParameterError):
        mat_pow(A, -1)


def test_apply_and_transpose():
    M = ExactMatrix.from_rows([[1, 2], [3, 4]])
    assert M.apply([1, 1]) == [3, 7]
    assert M.transpose().to_rows() == [[1, 3], [2, 4]]
    assert M.is_integral()
    assert not M.scale(Fraction(1, 2)).is_integral()


def _cofactor_det(rows):
    if not rows:
        return Fraction(1)
    return sum((-1) ** c * rows[0][c] * _cofactor_det([row[:c] + row[c + 1:] for row in rows[1:]])
               for c in range(len(rows)))


def test_polynomial_product_is_commutative_and_associative():
    rng = random.Random(30)
    for _ in range(40):
        p, q, s = (IntegerPolynomial(tuple(rng.randint(-50, 50) for _ in range(rng.randint(0, 31))))
                   for _ in range(3))
        assert p * q == q * p
        assert (p * q) * s == p * (q * s)
        assert (p * q).degree == (-1 if p.is_zero() or q.is_zero() else p.degree + q.degree)


@pytest.mark.parametrize("size", range(1, 6))
def test_rational_determinant_matches_cofactor_expansion(size):
    rng = random.Random(100 + size)
    for _ in range(15):
        rows = [[Fraction(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(size)] for _ in range(size)]
        assert det_fraction_free(ExactMatrix.from_rows(rows)) == _cofactor_det(rows)
