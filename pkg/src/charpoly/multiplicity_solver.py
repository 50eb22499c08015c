# src/charpoly/multiplicity_solver.py
"""
Кратности m_0, ..., m_l в факторизации характеристического многочлена C_l^(r).

Основной путь: m = r^{-1} * B * t, где B^{-1} задаётся явным целочисленным
шаблоном, а B получается его точным обращением. Путь через S (T = r*S*m)
оставлен как перекрёстная проверка.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Dict, List, Tuple

import numpy as np

from config import S_INVERSE_MAX_L, S_INVERSE_TOL
from src.linalg.exact_linalg import ExactMatrix, det_fraction_free, mat_inverse
from src.spectra.path_spectra import moment_column
from src.traces.trace_engine import H_matrix, t_vector, trace_vector
from src.utils.errors import ConsistencyError, ParameterError
from src.utils.report import CheckReport
from src.utils.validation import check_hypercycle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MultiplicityVector:
    """
    Кратности (m_0; m_1, ..., m_l) для C_l^(r)

    Инварианты: m_0 + r * sum i*m_i = l(r-1)^{l(r-1)}, все значения целые и неотрицательные,
    при r = 3 m_l = 0.
    """

    r: int
    l: int
    m0: int
    m: Tuple[int, ...]

    def __post_init__(self):
        if len(self.m) != self.l:
            raise ConsistencyError(f"Ожидалось {self.l} кратностей, получено {len(self.m)}")
        if self.m0 < 0 or any(value < 0 for value in self.m):
            raise ConsistencyError(f"Отрицательная кратность для r={self.r}, l={self.l}: {self.m0}, {self.m}")

    @property
    def degree(self) -> int:
        return self.m0 + self.r * sum(i * value for i, value in enumerate(self.m, start=1))


def total_degree(r: int, l: int) -> int:
    """Степень характеристического многочлена: n(r-1)^{n-1} при n = l(r-1)"""
    return l * (r - 1) ** (l * (r - 1))


def _check_length(l: int) -> None:
    if not isinstance(l, int) or l < 3:
        raise ParameterError(f"Длина l должна быть целой и не меньше 3: {l!r}")


def S_matrix(l: int) -> ExactMatrix:
    """
    Матрица моментов S_ij = sum_k lambda_{j,k}^{2i}

    Args:
        l: Длина цикла (l >= 3)

    Returns:
        Целочисленная матрица l x l
    """
    _check_length(l)
    return ExactMatrix.from_rows([[moment_column(j, i) for j in range(1, l + 1)] for i in range(1, l + 1)])


def b_inverse_matrix(l: int) -> ExactMatrix:
    """
    Целочисленная матрица B^{-1}: первый столбец (4, 6, ..., 2l, l),
    в строке i < l столбцы i+1..l заняты числами 2, 4, ..., 2(l-i)
    """
    _check_length(l)
    rows = [[0] * l for _ in range(l)]
    for i in range(l):
        rows[i][0] = 2 * (i + 2) if i < l - 1 else l
        if i < l - 1:
            for offset, column in enumerate(range(i + 1, l), start=1):
                rows[i][column] = 2 * offset
    return ExactMatrix.from_rows(rows)


def banded_b_matrix(l: int) -> ExactMatrix:
    """
    Ленточная запись B: первая строка e_l/l, в строках 2..l полоса (1/2, -1, 1/2),
    в позиции (l-1, l) стоит (l+1)/l
    """
    _check_length(l)
    rows = [[Fraction(0)] * l for _ in range(l)]
    rows[0][l - 1] = Fraction(1, l)
    for i in range(1, l):
        rows[i][i - 1] = Fraction(1, 2)
        rows[i][i] = Fraction(-1)
        if i + 1 < l:
            rows[i][i + 1] = Fraction(1, 2)
    rows[l - 2][l - 1] = Fraction(l + 1, l)
    return ExactMatrix.from_rows(rows)


def b_matrix(l: int) -> ExactMatrix:
    """
    B как точная обратная к b_inverse_matrix(l).
    При l >= 4 сверяется с ленточной записью.

    Args:
        l: Длина цикла

    Returns:
        Рациональная матрица l x l
    """
    inverse = mat_inverse(b_inverse_matrix(l))
    if l >= 4 and inverse != banded_b_matrix(l):
        raise ConsistencyError(f"Обратная к B^(-1) не совпала с ленточной записью B при l={l}")
    return inverse


def _as_integer(value: Fraction, what: str) -> int:
    if value.denominator != 1:
        raise ConsistencyError(f"{what} = {value} не является целым")
    return int(value)


def _finish(r: int, l: int, raw: List[Fraction]) -> MultiplicityVector:
    m = tuple(_as_integer(value, f"m_{i} для r={r}, l={l}") for i, value in enumerate(raw, start=1))
    if any(value < 0 for value in m):
        raise ConsistencyError(f"Отрицательная кратность для r={r}, l={l}: {m}")
    if r == 3 and m[-1] != 0:
        raise ConsistencyError(f"При r = 3 ожидалось m_l = 0, получено {m[-1]}")
    m0 = total_degree(r, l) - r * sum(i * value for i, value in enumerate(m, start=1))
    if m0 < 0:
        raise ConsistencyError(f"Отрицательная кратность нуля m_0 = {m0} для r={r}, l={l}")
    return MultiplicityVector(r=r, l=l, m0=m0, m=m)


def solve_multiplicities(r: int, l: int) -> MultiplicityVector:
    """
    m = r^{-1} * B * t, m_0 из подсчёта степени

    Args:
        r: Равномерность
        l: Длина цикла

    Returns:
        MultiplicityVector
    """
    check_hypercycle(r, l)
    raw = [value / r for value in b_matrix(l).apply(t_vector(r, l))]
    vector = _finish(r, l, raw)
    logger.debug("Кратности C_%d^(%d): m0=%d, m=%s", l, r, vector.m0, vector.m)
    return vector


def solve_via_s(r: int, l: int) -> MultiplicityVector:
    """Тот же вектор из T = r*S*m прямым обращением S"""
    check_hypercycle(r, l)
    traces = trace_vector(r, l).entries
    raw = [value / r for value in mat_inverse(S_matrix(l)).apply(traces)]
    return _finish(r, l, raw)


def mu_moment_check(r: int, l: int) -> bool:
    """Проверка T = r*S*m на точных целых"""
    vector = solve_multiplicities(r, l)
    expected = trace_vector(r, l).entries
    recomputed = [r * value for value in S_matrix(l).apply(vector.m)]
    return list(expected) == recomputed


def s_determinant_closed_form(l: int) -> int:
    return (-1) ** (l - 1) * 2 ** l * math.factorial(l + 1)


def verify_identities(l: int) -> CheckReport:
    """
    Точные проверки: S = H * B^{-1}, det S = (-1)^{l-1} 2^l (l+1)!, B * B^{-1} = I

    Args:
        l: Длина цикла

    Returns:
        CheckReport с тремя строками
    """
    _check_length(l)
    report = CheckReport(f"identities l={l}")
    S = S_matrix(l)
    b_inverse = b_inverse_matrix(l)

    product_matrix = H_matrix(l) @ b_inverse
    mismatch = next(((i, j) for i in range(l) for j in range(l) if S[i, j] != product_matrix[i, j]), None)
    detail = "" if mismatch is None else (
        f"({mismatch[0] + 1},{mismatch[1] + 1}): S={S[mismatch]} HB^-1={product_matrix[mismatch]}")
    report.add(f"S = H*B^-1 (l={l})", mismatch is None, detail)

    determinant = det_fraction_free(S)
    expected = s_determinant_closed_form(l)
    report.add(f"det S (l={l})", determinant == expected, f"det={determinant} expected={expected}")

    identity = b_matrix(l) @ b_inverse == ExactMatrix.identity(l)
    report.add(f"B*B^-1 = I (l={l})", identity)
    return report


def _squared_columns(l: int) -> List[List[float]]:
    # для первого столбца используется lambda_{1,1}^2 = 4
    columns = [[4.0]]
    for j in range(2, l + 1):
        columns.append([4.0 * math.cos(k * math.pi / (j + 1)) ** 2 for k in range(1, j + 1)])
    return columns


def _elementary(values: List[float]) -> np.ndarray:
    # e_0..e_n по коэффициентам prod (x - v)
    coefficients = np.poly(values) if values else np.array([1.0])
    return coefficients * np.array([(-1.0) ** k for k in range(len(coefficients))])


def _vandermonde(values: List[float]) -> float:
    return float(np.prod([values[h] - values[k] for k in range(len(values)) for h in range(k + 1, len(values))]))


def _check_s_inverse_range(l: int) -> None:
    if not isinstance(l, int) or l < 3 or l > S_INVERSE_MAX_L:
        raise ParameterError(f"Замкнутая формула S^-1 проверяется при 3 <= l <= {S_INVERSE_MAX_L}: {l!r}")


def s_inverse_closed_form(l: int) -> np.ndarray:
    """
    S^-1 по замкнутой формуле с суммой по alpha in [1] x ... x [l]:

    S^-1_ij = (-1)^{i+j-l+1} / i * sum_alpha sigma_{l-1}(x without x_i) sigma_{l-j}(x without x_i)
              * prod_{k<h; k,h != i} (x_h - x_k) / [2^l (l+1)!],   x_t = lambda_{t,alpha_t}^2

    Множитель 1/i снимает независимый от суммы выбор alpha_i.

    Args:
        l: Длина цикла (3 <= l <= 6)

    Returns:
        Матрица l x l (float)
    """
    _check_s_inverse_range(l)
    columns = _squared_columns(l)
    acc = np.zeros((l, l))
    for alpha in product(*(range(len(column)) for column in columns)):
        x = [columns[t][alpha[t]] for t in range(l)]
        for i in range(l):
            others = x[:i] + x[i + 1:]
            e = _elementary(others)
            weight = e[l - 1] * _vandermonde(others)
            for j in range(l):
                acc[i, j] += weight * e[l - 1 - j]
    denominator = 2 ** l * math.factorial(l + 1)
    result = np.zeros((l, l))
    for i in range(l):
        for j in range(l):
            sign = (-1) ** ((i + 1) + (j + 1) - l + 1)
            result[i, j] = sign * acc[i, j] / ((i + 1) * denominator)
    return result


def _exact_s_inverse(l: int) -> np.ndarray:
    inverse = mat_inverse(S_matrix(l))
    return np.array([[float(value) for value in row] for row in inverse.to_rows()])


def s_inverse_closed_form_check(l: int, tol: float = S_INVERSE_TOL) -> bool:
    """
    Сравнивает замкнутую формулу S^-1 с точной обратной поэлементно

    Args:
        l: Длина цикла (3 <= l <= 6)
        tol: Допуск

    Returns:
        True, если все элементы совпали в пределах tol
    """
    deviation = float(np.max(np.abs(s_inverse_closed_form(l) - _exact_s_inverse(l))))
    logger.debug("S^-1 по формуле при l=%d: отклонение %.3e", l, deviation)
    return deviation <= tol


def s_inverse_literal_deviation(l: int) -> float:
    """
    Отклонение буквального прочтения формулы S^-1 (sigma_{l-i} от набора без x_j,
    произведение разностей без индекса j, alpha_i учитывается в сумме) от точной обратной.
    Ненулевое значение означает, что буквальный вариант не является обратной к S.
    """
    _check_s_inverse_range(l)
    columns = _squared_columns(l)
    acc = np.zeros((l, l))
    for alpha in product(*(range(len(column)) for column in columns)):
        x = [columns[t][alpha[t]] for t in range(l)]
        for i in range(l):
            first = _elementary(x[:i] + x[i + 1:])[l - 1]
            for j in range(l):
                without_j = x[:j] + x[j + 1:]
                acc[i, j] += first * _elementary(without_j)[l - 1 - i] * _vandermonde(without_j)
    denominator = 2 ** l * math.factorial(l + 1)
    literal = np.array([[(-1) ** ((i + 1) + (j + 1) - l + 1) * acc[i, j] / denominator for j in range(l)]
                        for i in range(l)])
    return float(np.max(np.abs(literal - _exact_s_inverse(l))))


def corollary_closed_forms(r: int, l: int) -> Dict[int, Fraction]:
    """
    Явные формулы кратностей при l = 5 и l = 6 как многочлены от r

    Args:
        r: Равномерность (r >= 3)
        l: 5 или 6

    Returns:
        Словарь {i: m_i} для i = 0..l
    """
    check_hypercycle(r, l)
    half = Fraction(1, 2)

    def term(coefficient, a: int, b: int) -> Fraction:
        # coefficient * (r-1)^a * r^b
        return Fraction(coefficient) * (r - 1) ** a * Fraction(r) ** b

    if l == 5:
        c = 5 * half
        m = {
            1: term(1, 0, 5 * r - 11),
            2: term(c, 4 * r - 5, r - 2) - term(5, 3 * r - 4, 2 * r - 4) + term(c, 2 * r - 3, 3 * r - 6),
            3: term(c, 3 * r - 4, 2 * r - 4) - term(5, 2 * r - 3, 3 * r - 6) + term(c, r - 2, 4 * r - 8),
            4: term(c, 2 * r - 3, 3 * r - 6) - term(5, r - 2, 4 * r - 8) + term(6, 0, 5 * r - 11),
            5: term(c, r - 2, 4 * r - 8) - term(5, 0, 5 * r - 11),
        }
    elif l == 6:
        m = {
            1: term(1, 0, 6 * r - 13),
            2: term(3, 5 * r - 6, r - 2) - term(6, 4 * r - 5, 2 * r - 4) + term(3, 3 * r - 4, 3 * r - 6),
            3: term(3, 4 * r - 5, 2 * r - 4) - term(6, 3 * r - 4, 3 * r - 6) + term(3, 2 * r - 3, 4 * r - 8),
            4: term(3, 3 * r - 4, 3 * r - 6) - term(6, 2 * r - 3, 4 * r - 8) + term(3, r - 2, 5 * r - 10),
            5: term(3, 2 * r - 3, 4 * r - 8) - term(6, r - 2, 5 * r - 10) + term(7, 0, 6 * r - 13),
            6: term(3, r - 2, 5 * r - 10) - term(6, 0, 6 * r - 13),
        }
    else:
        raise ParameterError(f"Явные формулы есть только для l = 5 и l = 6: {l}")

    m[0] = (Fraction(total_degree(r, l))
            - term(l, (l - 1) * (r - 1) - 1, r - 1)
            + term(Fraction(l, 2), (l - 2) * (r - 1) - 1, 2 * r - 3))
    return dict(sorted(m.items()))


def corollary_check(r: int, l: int) -> bool:
    """Совпадение solve_multiplicities с явными формулами"""
    vector = solve_multiplicities(r, l)
    forms = corollary_closed_forms(r, l)
    solved = {0: vector.m0, **{i: value for i, value in enumerate(vector.m, start=1)}}
    return all(forms[i] == solved[i] for i in forms)
