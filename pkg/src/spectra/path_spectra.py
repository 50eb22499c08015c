# src/spectra/path_spectra.py
"""
Спектральные данные путей P_j и знаковых циклов.

Внимание: для j = 1 в столбце моментов используется соглашение
lambda_{1,1} = 2 (вклад положительного цикла), а не собственное число 0
пути P_1. Поэтому moment_column(1, i) = 4^i, а squared_spectrum_poly(1) = mu.
"""
import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from src.linalg.exact_linalg import ExactMatrix, IntegerPolynomial, mat_pow
from src.utils.errors import ParameterError


@dataclass(frozen=True)
class SquaredSpectrumPoly:
    """
    psi_j(mu) = prod_k (mu - lambda_{j,k}^2): приведённый, степени j.
    Свободный член равен нулю ровно при нечётном j.
    """

    j: int
    poly: IntegerPolynomial


@dataclass(frozen=True)
class SquaredValue:
    """Одно значение 4cos^2(k*pi/(j+1)) вместе с индексами; (0, 0) обозначает значение 4"""

    j: int
    k: int
    value: float


@lru_cache(maxsize=None)
def path_charpoly(j: int) -> IntegerPolynomial:
    """
    Характеристический многочлен пути P_j по трёхчленной рекурсии
    phi(P_j) = x*phi(P_{j-1}) - phi(P_{j-2}), phi(P_0) = 1, phi(P_1) = x

    Args:
        j: Число вершин пути (j >= 0)

    Returns:
        Приведённый многочлен степени j
    """
    if j < 0:
        raise ParameterError(f"Число вершин пути должно быть неотрицательным: {j}")
    if j == 0:
        return IntegerPolynomial((1,))
    if j == 1:
        return IntegerPolynomial((0, 1))
    return path_charpoly(j - 1).shift(1) - path_charpoly(j - 2)


@lru_cache(maxsize=None)
def squared_spectrum_poly(j: int) -> SquaredSpectrumPoly:
    """
    Многочлен от mu с корнями lambda_{j,k}^2, без плавающей точки:
    phi(P_j; x) = g(x^2) + x*h(x^2)  =>  psi_j(mu) = (-1)^j (g(mu)^2 - mu*h(mu)^2)

    Args:
        j: Число вершин пути (j >= 1)

    Returns:
        SquaredSpectrumPoly
    """
    if j < 1:
        raise ParameterError(f"Ожидалось j >= 1, получено {j}")
    g, h = path_charpoly(j).even_odd_split()
    poly = g * g - (h * h).shift(1)
    if j % 2:
        poly = -poly
    return SquaredSpectrumPoly(j=j, poly=poly)


def path_adjacency(j: int) -> ExactMatrix:
    """Матрица смежности пути P_j"""
    return ExactMatrix.from_rows([[1 if abs(a - b) == 1 else 0 for b in range(j)] for a in range(j)])


@lru_cache(maxsize=None)
def moment_column(j: int, i: int) -> int:
    """
    Элемент S_{ij} = sum_k lambda_{j,k}^{2i}

    Для j >= 2 это след A(P_j)^{2i}, то есть число замкнутых маршрутов
    длины 2i в P_j. Для j = 1 возвращается 4^i.

    Args:
        j: Номер столбца (число вершин пути)
        i: Номер строки (половина длины маршрута)

    Returns:
        Целое S_{ij}
    """
    if j < 1 or i < 1:
        raise ParameterError(f"Ожидалось j >= 1 и i >= 1, получено j={j}, i={i}")
    if j == 1:
        return 4 ** i
    power = mat_pow(path_adjacency(j), 2 * i)
    return int(sum(power[k, k] for k in range(j)))


def path_squared_values(j: int) -> List[SquaredValue]:
    """Значения 4cos^2(k*pi/(j+1)) для k = 1..j"""
    return [SquaredValue(j, k, 4.0 * math.cos(k * math.pi / (j + 1)) ** 2) for k in range(1, j + 1)]


def signed_cycle_squared_values(l: int, r_is_three: bool = False) -> List[SquaredValue]:
    """
    Мультимножество r-х степеней собственных чисел C_l^(r):
    {4} и все 4cos^2(k*pi/(j+1)), k in [j], j in [l] (для r = 3 j in [l-1])

    Args:
        l: Длина цикла (l >= 3)
        r_is_three: Вариант r = 3

    Returns:
        Список значений с индексами (j, k)
    """
    if l < 3:
        raise ParameterError(f"Длина гиперцикла должна быть не меньше 3: {l}")
    top = l - 1 if r_is_three else l
    values = [SquaredValue(0, 0, 4.0)]
    for j in range(1, top + 1):
        values.extend(path_squared_values(j))
    return values


def negative_cycle_values(l: int) -> List[float]:
    """Спектр отрицательного знакового цикла длины l: 2cos((2k-1)*pi/l)"""
    return [2.0 * math.cos((2 * k - 1) * math.pi / l) for k in range(1, l + 1)]


def negative_cycle_inside_path(l: int, tol: float = 1e-9) -> bool:
    """
    Квадраты спектра отрицательного цикла C_l содержатся
    среди квадратов спектра P_{l-1} и значения 4 (при нечётном l
    в спектре есть -2)
    """
    path = np.array([v.value for v in path_squared_values(l - 1)] + [4.0])
    return all(np.min(np.abs(path - value ** 2)) <= tol for value in negative_cycle_values(l))


def cycle_squared_values(t: int) -> List[float]:
    """Квадраты собственных чисел цикла C_t: 4cos^2(2k*pi/t), k = 1..t"""
    return [4.0 * math.cos(2 * k * math.pi / t) ** 2 for k in range(1, t + 1)]


def cycle_path_identity(t: int, tol: float = 1e-9) -> Tuple[bool, float]:
    """
    Для нечётного t квадраты спектра C_t совпадают с квадратами спектра
    P_{t-1} плюс значение 4

    Returns:
        (совпадает ли, максимальное отклонение после сортировки)
    """
    if t < 3 or t % 2 == 0:
        raise ParameterError(f"Тождество проверяется для нечётного t >= 3, получено {t}")
    cycle = np.sort(np.array(cycle_squared_values(t)))
    path = np.sort(np.array([v.value for v in path_squared_values(t - 1)] + [4.0]))
    deviation = float(np.max(np.abs(cycle - path)))
    return deviation <= tol, deviation
