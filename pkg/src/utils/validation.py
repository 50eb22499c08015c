# src/utils/validation.py
from src.utils.errors import ParameterError


def check_hypercycle(r: int, l: int) -> None:
    """
    Проверка параметров гиперцикла C_l^(r)

    Args:
        r: Равномерность (r >= 3)
        l: Длина цикла (l >= 3)
    """
    if not isinstance(r, int) or r < 3:
        raise ParameterError(f"Равномерность r должна быть целой и не меньше 3: {r!r}")
    if not isinstance(l, int) or l < 3:
        raise ParameterError(f"Длина l должна быть целой и не меньше 3: {l!r}")
