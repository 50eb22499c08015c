# config.py
import os
from dotenv import load_dotenv

# Загружаем переменные окружения (влияют только на диагностику в stderr)
load_dotenv()

# Уровень логирования диагностических сообщений
LOG_LEVEL = os.getenv("HYPERCYCLE_LOG_LEVEL", "WARNING")
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"

# Ограничение на степень при раскрытии многочлена
MAX_EXPAND_DEGREE = 1_000_000

# Бюджет перебора для оракула следов (число групп индексных кортежей)
ENUMERATION_BUDGET = 100_000_000

# Допуски для численных проверок
SPECTRUM_TOL = 1e-9
S_INVERSE_TOL = 1e-6

# Число процессов для перебора по умолчанию
DEFAULT_JOBS = 1

# Диапазон l, для которого сумма по alpha-кортежам ещё обозрима (l! слагаемых)
S_INVERSE_MAX_L = 6
