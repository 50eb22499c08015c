# src/utils/logger.py
import logging
import sys
from typing import Optional

from config import LOG_FORMAT, LOG_LEVEL


def setup_logging(level: Optional[str] = None) -> None:
    """
    Настраивает корневой логгер: все сообщения идут в stderr,
    stdout остаётся только для результатов

    Args:
        level: Уровень логирования (по умолчанию из config.LOG_LEVEL)
    """
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(LOG_FORMAT))

    root = logging.getLogger()
    root.handlers.clear()
    root.addHandler(handler)
    root.setLevel((level or LOG_LEVEL).upper())
