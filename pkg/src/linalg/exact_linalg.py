# src/linalg/exact_linalg.py
"""
Точная арифметика: плотные многочлены с целыми коэффициентами и плотные
матрицы над рациональными числами. Все объекты неизменяемые.
"""
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

from sympy.polys.densearith import dup_add, dup_mul, dup_neg, dup_pow, dup_sub
from sympy.polys.densetools import dup_diff, dup_eval
from sympy.polys.domains import ZZ

from src.utils.errors import DimensionError, ParameterError, SingularMatrixError

Number = Union[int, Fraction]


def _to_dup(coeffs: Sequence[int]) -> list:
    # sympy хранит коэффициенты от старшего к младшему
    return [ZZ(c) for c in reversed(coeffs)]


def _from_dup(f: Sequence) -> Tuple[int, ...]:
    return tuple(int(c) for c in reversed(f))


def _strip(coeffs: Iterable[int]) -> Tuple[int, ...]:
    result = list(coeffs)
    while result and result[-1] == 0:
        result.pop()
    return tuple(result)


@dataclass(frozen=True)
class IntegerPolynomial:
    """
    Плотный многочлен одной переменной с целыми коэффициентами.
    coeffs[k] - коэффициент при x^k; нулевой многочлен - пустой кортеж.
    """

    coeffs: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _strip(int(c) for c in self.coeffs))

    @classmethod
    def monomial(cls, degree: int, coeff: int = 1) -> "IntegerPolynomial":
        return cls((0,) * degree + (coeff,))

    @classmethod
    def linear(cls, root: int) -> "IntegerPolynomial":
        """Многочлен x - root"""
        return cls((-root, 1))

    @property
    def degree(self) -> int:
        """Степень; у нулевого многочлена -1"""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __add__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        return IntegerPolynomial(_from_dup(dup_add(_to_dup(self.coeffs), _to_dup(other.coeffs), ZZ)))

    def __sub__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        return IntegerPolynomial(_from_dup(dup_sub(_to_dup(self.coeffs), _to_dup(other.coeffs), ZZ)))

    def __neg__(self) -> "IntegerPolynomial":
        return IntegerPolynomial(_from_dup(dup_neg(_to_dup(self.coeffs), ZZ)))

    def __mul__(self, other: "IntegerPolynomial") -> "IntegerPolynomial":
        return IntegerPolynomial(_from_dup(dup_mul(_to_dup(self.coeffs), _to_dup(other.coeffs), ZZ)))

    def __pow__(self, exponent: int) -> "IntegerPolynomial":
        if exponent < 0:
            raise ParameterError(f"Отрицательная степень многочлена: {exponent}")
        return IntegerPolynomial(_from_dup(dup_pow(_to_dup(self.coeffs), int(exponent), ZZ)))

    def evaluate(self, x: Number) -> Number:
        """Значение в точке x (точно для int и Fraction)"""
        if isinstance(x, int):
            return int(dup_eval(_to_dup(self.coeffs), ZZ(x), ZZ))
        result: Number = 0
        for c in reversed(self.coeffs):
            result = result * x + c
        return result

    def derivative(self) -> "IntegerPolynomial":
        return IntegerPolynomial(_from_dup(dup_diff(_to_dup(self.coeffs), 1, ZZ)))

    def even_odd_split(self) -> Tuple["IntegerPolynomial", "IntegerPolynomial"]:
        """
        Разложение f(x) = g(x^2) + x*h(x^2)

        Returns:
            Кортеж (g, h)
        """
        return IntegerPolynomial(self.coeffs[0::2]), IntegerPolynomial(self.coeffs[1::2])

    def inflate(self, r: int) -> "IntegerPolynomial":
        """Подстановка x -> x^r"""
        if not self.coeffs:
            return self
        result = [0] * (self.degree * r + 1)
        for k, c in enumerate(self.coeffs):
            result[k * r] = c
        return IntegerPolynomial(tuple(result))

    def shift(self, k: int) -> "IntegerPolynomial":
        """Умножение на x^k"""
        if not self.coeffs:
            return self
        return IntegerPolynomial((0,) * k + self.coeffs)

    def trailing_zeros(self) -> int:
        """Кратность корня 0"""
        count = 0
        for c in self.coeffs:
            if c != 0:
                break
            count += 1
        return count

    def divide_by_x_power(self, k: int) -> "IntegerPolynomial":
        if k > self.trailing_zeros() and self.coeffs:
            raise ParameterError(f"Многочлен не делится на x^{k}")
        return IntegerPolynomial(self.coeffs[k:])

    def power_sums(self, count: int) -> List[int]:
        """
        Степенные суммы корней p_1..p_count по тождествам Ньютона

        Args:
            count: Сколько сумм вычислить

        Returns:
            Список [p_1, ..., p_count]
        """
        if not self.is_monic():
            raise ParameterError("Степенные суммы определены только для приведённого многочлена")
        n = self.degree
        # e_i = (-1)^i * a_{n-i}
        elementary = [1] + [(-1) ** i * self.coeffs[n - i] for i in range(1, n + 1)]

        sums: List[int] = []
        for k in range(1, count + 1):
            value = (-1) ** (k - 1) * k * elementary[k] if k <= n else 0
            for i in range(1, min(k - 1, n) + 1):
                value += (-1) ** (i - 1) * elementary[i] * sums[k - i - 1]
            sums.append(value)
        return sums

    def __str__(self) -> str:
        return format_polynomial(self, "x")


def format_polynomial(p: IntegerPolynomial, var: str) -> str:
    """Человекочитаемая запись от старшей степени к младшей"""
    if p.is_zero():
        return "0"
    terms = []
    for k in range(p.degree, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        magnitude = abs(c)
        if k == 0:
            body = str(magnitude)
        else:
            power = var if k == 1 else f"{var}^{k}"
            body = power if magnitude == 1 else f"{magnitude}*{power}"
        terms.append((sign, body))
    first_sign, first_body = terms[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in terms[1:]:
        text += f" {sign} {body}"
    return text


def poly_arith(p: IntegerPolynomial, q: IntegerPolynomial, op: str) -> IntegerPolynomial:
    """
    Сложение или умножение многочленов

    Args:
        p: Первый многочлен
        q: Второй многочлен
        op: 'add' или 'mul'

    Returns:
        Нормализованный результат
    """
    if op == "add":
        return p + q
    if op == "mul":
        return p * q
    raise ParameterError(f"Неизвестная операция над многочленами: {op}")


@dataclass(frozen=True)
class ExactMatrix:
    """
    Плотная матрица над Q, элементы построчно.
    Fraction всегда хранится в несократимом виде с положительным знаменателем.
    """

    rows: int
    cols: int
    entries: Tuple[Fraction, ...] = field(default=())

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise DimensionError(f"Отрицательный размер матрицы: {self.rows}x{self.cols}")
        if len(self.entries) != self.rows * self.cols:
            raise DimensionError(
                f"Ожидалось {self.rows * self.cols} элементов, получено {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(Fraction(e) for e in self.entries))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Number]]) -> "ExactMatrix":
        n = len(rows)
        m = len(rows[0]) if n else 0
        if any(len(row) != m for row in rows):
            raise DimensionError("Строки матрицы разной длины")
        return cls(n, m, tuple(e for row in rows for e in row))

    @classmethod
    def identity(cls, n: int) -> "ExactMatrix":
        return cls(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "ExactMatrix":
        return cls(rows, cols, (0,) * (rows * cols))

    def __getitem__(self, index: Tuple[int, int]) -> Fraction:
        i, j = index
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Tuple[Fraction, ...]:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def to_rows(self) -> List[List[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def is_square(self) -> bool:
        return self.rows == self.cols

    def is_integral(self) -> bool:
        return all(e.denominator == 1 for e in self.entries)

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(self.cols, self.rows,
                           tuple(self[i, j] for j in range(self.cols) for i in range(self.rows)))

    def minor(self, i: int, j: int) -> "ExactMatrix":
        """Матрица без i-й строки и j-го столбца (индексы с нуля)"""
        return ExactMatrix.from_rows(
            [[e for c, e in enumerate(self.row(a)) if c != j] for a in range(self.rows) if a != i]
        ) if self.rows > 1 else ExactMatrix(0, 0)

    def scale(self, factor: Number) -> "ExactMatrix":
        return ExactMatrix(self.rows, self.cols, tuple(e * factor for e in self.entries))

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(self.rows, self.cols, tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        self._check_same_shape(other)
        return ExactMatrix(self.rows, self.cols, tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise DimensionError(f"Нельзя умножить {self.rows}x{self.cols} на {other.rows}x{other.cols}")
        columns = [other.column(j) for j in range(other.cols)]
        result = []
        for i in range(self.rows):
            row = self.row(i)
            for col in columns:
                result.append(sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)))
        return ExactMatrix(self.rows, other.cols, tuple(result))

    def apply(self, vector: Sequence[Number]) -> List[Fraction]:
        """Произведение матрицы на вектор-столбец"""
        if len(vector) != self.cols:
            raise DimensionError(f"Длина вектора {len(vector)} не равна числу столбцов {self.cols}")
        return [sum((a * Fraction(b) for a, b in zip(self.row(i), vector)), Fraction(0))
                for i in range(self.rows)]

    def _check_same_shape(self, other: "ExactMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionError(f"Размеры {self.rows}x{self.cols} и {other.rows}x{other.cols} не совпадают")


def _require_square(M: ExactMatrix) -> None:
    if not M.is_square():
        raise DimensionError(f"Ожидалась квадратная матрица, получена {M.rows}x{M.cols}")


def _det_bareiss(rows: List[List[int]]) -> int:
    # Бареисс: все промежуточные значения остаются целыми
    n = len(rows)
    sign = 1
    previous = 1
    for k in range(n - 1):
        if rows[k][k] == 0:
            for i in range(k + 1, n):
                if rows[i][k] != 0:
                    rows[k], rows[i] = rows[i], rows[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = rows[k][k]
        for i in range(k + 1, n):
            row_i = rows[i]
            factor = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (pivot * row_i[j] - factor * rows[k][j]) // previous
            row_i[k] = 0
        previous = pivot
    return sign * rows[n - 1][n - 1]


def _det_gauss(rows: List[List[Fraction]]) -> Fraction:
    n = len(rows)
    det = Fraction(1)
    for k in range(n):
        pivot_row = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != k:
            rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
            det = -det
        pivot = rows[k][k]
        det *= pivot
        for i in range(k + 1, n):
            factor = rows[i][k] / pivot
            if factor:
                for j in range(k, n):
                    rows[i][j] -= factor * rows[k][j]
    return det


def det_fraction_free(M: ExactMatrix) -> Fraction:
    """
    Точный определитель. Для целочисленных матриц - алгоритм Бареисса,
    иначе обычное исключение Гаусса над Q.

    Args:
        M: Квадратная матрица (допускается 0x0)

    Returns:
        Определитель; у матрицы 0x0 он равен 1
    """
    _require_square(M)
    if M.rows == 0:
        return Fraction(1)
    if M.is_integral():
        return Fraction(_det_bareiss([[int(e) for e in M.row(i)] for i in range(M.rows)]))
    return _det_gauss(M.to_rows())


def mat_pow(M: ExactMatrix, k: int) -> ExactMatrix:
    """
    Точная степень M^k двоичным возведением

    Args:
        M: Квадратная матрица
        k: Неотрицательный показатель

    Returns:
        M^k; при k = 0 единичная матрица
    """
    _require_square(M)
    if k < 0:
        raise ParameterError(f"Отрицательный показатель степени: {k}")
    result = ExactMatrix.identity(M.rows)
    base = M
    while k:
        if k & 1:
            result = result @ base
        k >>= 1
        if k:
            base = base @ base
    return result


def mat_inverse(M: ExactMatrix) -> ExactMatrix:
    """
    Точная обратная матрица методом Гаусса-Жордана над Q

    Args:
        M: Квадратная невырожденная матрица

    Returns:
        Обратная матрица
    """
    _require_square(M)
    n = M.rows
    rows = [list(M.row(i)) + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]

    for k in range(n):
        pivot_row = next((i for i in range(k, n) if rows[i][k] != 0), None)
        if pivot_row is None:
            raise SingularMatrixError(f"Матрица {n}x{n} вырождена (нет ведущего элемента в столбце {k})")
        rows[k], rows[pivot_row] = rows[pivot_row], rows[k]
        pivot = rows[k][k]
        rows[k] = [e / pivot for e in rows[k]]
        for i in range(n):
            if i != k and rows[i][k] != 0:
                factor = rows[i][k]
                rows[i] = [a - factor * b for a, b in zip(rows[i], rows[k])]

    return ExactMatrix.from_rows([row[n:] for row in rows])
