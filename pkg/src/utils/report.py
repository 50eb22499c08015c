# src/utils/report.py
from dataclasses import dataclass, field
from typing import List


@dataclass(frozen=True)
class CheckResult:
    """Одна строка отчёта проверки"""

    name: str
    passed: bool
    detail: str = ""


@dataclass
class CheckReport:
    """
    Отчёт набора проверок

    Args:
        title: Название набора
        rows: Строки отчёта в порядке выполнения
    """

    title: str
    rows: List[CheckResult] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.rows.append(CheckResult(name, bool(passed), detail))

    def extend(self, other: "CheckReport") -> None:
        self.rows.extend(other.rows)

    @property
    def passed(self) -> bool:
        return all(row.passed for row in self.rows)

    @property
    def failures(self) -> List[CheckResult]:
        return [row for row in self.rows if not row.passed]
