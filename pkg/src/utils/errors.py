# src/utils/errors.py
from typing import Any, List, Optional


class HypercycleError(Exception):
    """Базовое исключение проекта"""


class DimensionError(HypercycleError):
    """Несогласованные размеры матриц (например, неквадратная матрица)"""


class SingularMatrixError(HypercycleError):
    """Матрица вырождена, обратной не существует"""


class ParameterError(HypercycleError):
    """Недопустимые параметры (r < 3, l < 3, s > d и т.п.)"""


class UnsupportedOrderError(HypercycleError):
    """Порядок следа, для которого формула не выведена (d > l)"""


class ConsistencyError(HypercycleError):
    """
    Нарушен внутренний инвариант: нецелое или отрицательное значение,
    не выполнено тождество. Всегда означает ошибку в коде, а не в данных.
    """


class FeasibilityError(HypercycleError):
    """
    Вычисление превышает бюджет (перебор или раскрытие многочлена)

    Args:
        message: Текст ошибки
        estimate: Оценка объёма работы, из-за которой отказано
    """

    def __init__(self, message: str, estimate: Optional[int] = None):
        super().__init__(message)
        self.estimate = estimate


class VerificationError(HypercycleError):
    """
    Проверка тождеств не прошла

    Args:
        message: Текст ошибки
        failures: Список непрошедших строк отчёта
    """

    def __init__(self, message: str, failures: Optional[List[Any]] = None):
        super().__init__(message)
        self.failures = failures or []
