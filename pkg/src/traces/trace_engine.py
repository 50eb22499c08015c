# src/traces/trace_engine.py
"""
Замкнутые формулы для следов тензора смежности A(C_l^(r)):
h(d;s), Tr_{dr} при 1 <= d <= l, векторы T и t, матрица H.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, prod
from typing import List, Tuple

from src.linalg.exact_linalg import ExactMatrix
from src.utils.errors import ConsistencyError, ParameterError, UnsupportedOrderError
from src.utils.validation import check_hypercycle

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Composition:
    """Упорядоченное разбиение числа на положительные слагаемые"""

    parts: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.parts)


@dataclass(frozen=True)
class TraceVector:
    """Вектор T = (Tr_r, Tr_{2r}, ..., Tr_{lr}) для C_l^(r)"""

    r: int
    l: int
    entries: Tuple[int, ...]


def compositions(d: int, s: int) -> List[Composition]:
    """
    Все композиции d на s положительных частей в лексикографическом порядке

    Args:
        d: Разбиваемое число
        s: Число частей (1 <= s <= d)

    Returns:
        Список из C(d-1, s-1) композиций
    """
    if s < 1 or s > d:
        raise ParameterError(f"Нужно 1 <= s <= d, получено d={d}, s={s}")
    result = []
    # точки разреза c_1 < ... < c_{s-1} из 1..d-1
    for cuts in combinations(range(1, d), s - 1):
        bounds = (0,) + cuts + (d,)
        result.append(Composition(tuple(b - a for a, b in zip(bounds, bounds[1:]))))
    return result


@lru_cache(maxsize=None)
def h_value(d: int, s: int) -> int:
    """
    h(d;s): при s = 1 равно 1, иначе
    d * sum_a [prod_{j=2}^{s-1} a_j * prod_{j=1}^{s-1} C(a_j+a_{j+1}, a_j)] / prod_{j=1}^{s-1} (a_j+a_{j+1})

    Отдельные слагаемые дробные, целой должна быть только сумма.

    Args:
        d: Порядок
        s: Число различных рёбер (1 <= s <= d)

    Returns:
        Целое h(d;s)
    """
    if s < 1 or s > d:
        raise ParameterError(f"Нужно 1 <= s <= d, получено d={d}, s={s}")
    if s == 1:
        return 1

    total = Fraction(0)
    for composition in compositions(d, s):
        a = composition.parts
        pairs = list(zip(a, a[1:]))
        numerator = prod(a[1:-1]) * prod(comb(x + y, x) for x, y in pairs)
        denominator = prod(x + y for x, y in pairs)
        total += Fraction(numerator, denominator)
    total *= d

    if total.denominator != 1:
        raise ConsistencyError(f"h({d};{s}) = {total} не является целым")
    return int(total)


def _path_term(r: int, l: int, d: int, s: int) -> int:
    return h_value(d, s) * l * r ** (s * (r - 2) + 1) * (r - 1) ** ((l - s) * (r - 1) - 1)


def trace_dr(r: int, l: int, d: int) -> int:
    """
    След Tr_{dr}(A(C_l^(r))) для 1 <= d <= l

    При d < l суммируются только гиперпути; при d = l добавляется
    вклад самого цикла 2(l+1)*l*r^{l(r-2)}.

    Args:
        r: Равномерность
        l: Длина цикла
        d: Порядок (след берётся порядка d*r)

    Returns:
        Точное целое значение следа
    """
    check_hypercycle(r, l)
    if d < 1:
        raise ParameterError(f"Порядок d должен быть положительным: {d}")
    if d > l:
        raise UnsupportedOrderError(f"Формула следа выведена только для d <= l (d={d}, l={l})")

    value = sum(_path_term(r, l, d, s) for s in range(1, min(d, l - 1) + 1))
    if d == l:
        value += 2 * (l + 1) * l * r ** (l * (r - 2))
    logger.debug("Tr_%d(C_%d^(%d)) = %d", d * r, l, r, value)
    return value


def trace_any(r: int, l: int, order: int) -> int:
    """
    След произвольного порядка 1 <= order <= l*r: ноль, если r не делит order

    Args:
        r: Равномерность
        l: Длина цикла
        order: Порядок следа

    Returns:
        Точное целое значение следа
    """
    check_hypercycle(r, l)
    if order < 1:
        raise ParameterError(f"Порядок следа должен быть положительным: {order}")
    if order > l * r:
        raise UnsupportedOrderError(f"Порядок {order} больше l*r = {l * r}")
    if order % r:
        return 0
    return trace_dr(r, l, order // r)


def trace_vector(r: int, l: int) -> TraceVector:
    return TraceVector(r=r, l=l, entries=tuple(trace_dr(r, l, d) for d in range(1, l + 1)))


def t_vector(r: int, l: int) -> List[int]:
    """
    Вектор t: t_s = l*r^{s(r-2)+1}*(r-1)^{(l-s)(r-1)-1} при s < l, t_l = l*r^{l(r-2)}
    """
    check_hypercycle(r, l)
    entries = [l * r ** (s * (r - 2) + 1) * (r - 1) ** ((l - s) * (r - 1) - 1) for s in range(1, l)]
    entries.append(l * r ** (l * (r - 2)))
    return entries


def H_matrix(l: int) -> ExactMatrix:
    """
    Нижнетреугольная матрица H: h_ij = h(i;j) при j <= i, кроме h_ll = 2(l+1)

    Args:
        l: Длина цикла

    Returns:
        Целочисленная матрица l x l
    """
    if l < 3:
        raise ParameterError(f"Длина l должна быть не меньше 3: {l}")
    rows = []
    for i in range(1, l + 1):
        row = []
        for j in range(1, l + 1):
            if j > i:
                row.append(0)
            elif i == j == l:
                row.append(2 * (l + 1))
            else:
                row.append(h_value(i, j))
        rows.append(row)
    return ExactMatrix.from_rows(rows)


def moment_bridge(j: int, i: int) -> int:
    """sum_{s=1}^{min(i, j-1)} 2(j-s) h(i;s) - число замкнутых маршрутов длины 2i в P_j"""
    return sum(2 * (j - s) * h_value(i, s) for s in range(1, min(i, j - 1) + 1))


def power_of_two_bridge(i: int) -> int:
    """sum_{s=1}^{i} 2(s+1) h(i;s), равно 4^i"""
    return sum(2 * (s + 1) * h_value(i, s) for s in range(1, i + 1))
