# src/cli/suites.py
"""
Наборы проверок для команды verify. Каждый набор возвращает CheckReport;
сетки параметров по умолчанию можно сузить через r и l.
"""
import logging
import random
from typing import Callable, Dict, List, Optional

from config import DEFAULT_JOBS, ENUMERATION_BUDGET, S_INVERSE_TOL, SPECTRUM_TOL
from src.charpoly.charpoly_assembler import assemble, moment_closure, numeric_spectrum_check
from src.charpoly.multiplicity_solver import (b_inverse_matrix, b_matrix, corollary_check,
                                              mu_moment_check, s_inverse_closed_form_check,
                                              s_inverse_literal_deviation, solve_multiplicities,
                                              solve_via_s, total_degree, verify_identities)
from src.linalg.exact_linalg import ExactMatrix
from src.traces.brute_oracle import brute_trace, minor_determinant_check
from src.traces.trace_engine import trace_any, trace_vector
from src.utils.errors import ParameterError
from src.utils.report import CheckReport

logger = logging.getLogger(__name__)


def _grid(fixed: Optional[int], default: range) -> List[int]:
    return [fixed] if fixed is not None else list(default)


def identities_suite(l: Optional[int] = None, **_) -> CheckReport:
    """S = H*B^-1 и det S при l = 3..8, B*B^-1 = I при l = 3..10"""
    report = CheckReport("identities")
    for length in _grid(l, range(3, 9)):
        report.extend(verify_identities(length))
    for length in (range(9, 11) if l is None else []):
        identity = b_matrix(length) @ b_inverse_matrix(length) == ExactMatrix.identity(length)
        report.add(f"B*B^-1 = I (l={length})", identity)
    return report


def lemma_minors_suite(r: Optional[int] = None, draws: int = 100, seed: int = 0, **_) -> CheckReport:
    """Случайные проверки определителей p_s, c_l, c'_l против замкнутых формул"""
    report = CheckReport("lemma-minors")
    rng = random.Random(seed)
    uniformities = _grid(r, range(3, 6))
    for kind in ("p", "c", "cprime"):
        failed = []
        for _ in range(draws):
            uniformity = rng.choice(uniformities)
            if kind == "p":
                params = tuple(rng.randint(1, 5) for _ in range(rng.randint(1, 5)))
            elif kind == "c":
                params = tuple(rng.randint(1, 5) for _ in range(rng.randint(3, 5)))
            else:
                params = (rng.randint(3, 5), rng.randint(1, 5))
            if not minor_determinant_check(kind, uniformity, params):
                failed.append((uniformity, params))
        detail = f"{draws} draws" if not failed else f"first failure r={failed[0][0]} params={failed[0][1]}"
        report.add(f"minor {kind}", not failed, detail)
    return report


def oracle_suite(r: Optional[int] = None, l: Optional[int] = None, budget: int = ENUMERATION_BUDGET,
                 jobs: int = DEFAULT_JOBS, progress: bool = False, **_) -> CheckReport:
    """Перебор против формулы следа для всех порядков 1..l*r (по умолчанию C_3^(3))"""
    uniformity = 3 if r is None else r
    length = 3 if l is None else l
    report = CheckReport("oracle")
    for order in range(1, length * uniformity + 1):
        formula = trace_any(uniformity, length, order)
        brute = brute_trace(uniformity, length, order, budget=budget, jobs=jobs, progress=progress)
        report.add(f"Tr_{order} (r={uniformity}, l={length})", brute == formula,
                   f"formula={formula} brute={brute}")
    return report


def corollaries_suite(r: Optional[int] = None, l: Optional[int] = None, **_) -> CheckReport:
    """Явные формулы кратностей при l = 5, 6 и r = 3..12"""
    report = CheckReport("corollaries")
    if l is not None and l not in (5, 6):
        raise ParameterError(f"Явные формулы кратностей есть только при l = 5, 6, получено l={l}")
    lengths = _grid(l, range(5, 7))
    for length in lengths:
        for uniformity in _grid(r, range(3, 13)):
            report.add(f"m_i closed forms (r={uniformity}, l={length})", corollary_check(uniformity, length))
    return report


def moments_suite(r: Optional[int] = None, l: Optional[int] = None, **_) -> CheckReport:
    """T = r*S*m, степенные суммы собранного многочлена, степень и m_l при r = 3"""
    report = CheckReport("moments")
    for uniformity in _grid(r, range(3, 7)):
        for length in _grid(l, range(3, 9)):
            label = f"(r={uniformity}, l={length})"
            vector = solve_multiplicities(uniformity, length)
            report.add(f"T = r*S*m {label}", mu_moment_check(uniformity, length))
            report.add(f"S-route agrees {label}", solve_via_s(uniformity, length) == vector)
            f = assemble(uniformity, length)
            report.add(f"power sums {label}", moment_closure(f) == list(trace_vector(uniformity, length).entries))
            report.add(f"degree {label}", f.degree == total_degree(uniformity, length), f"degree={f.degree}")
            if uniformity == 3:
                report.add(f"m_l = 0 {label}", vector.m[-1] == 0)
    return report


def spectrum_suite(r: Optional[int] = None, l: Optional[int] = None, tol: float = SPECTRUM_TOL, **_) -> CheckReport:
    """Численная сверка корней при r = 3..5, l = 3..7"""
    report = CheckReport("spectrum")
    for uniformity in _grid(r, range(3, 6)):
        for length in _grid(l, range(3, 8)):
            result = numeric_spectrum_check(assemble(uniformity, length), tol)
            detail = "" if result.passed else (
                f"missing={result.missing} unexpected={result.unexpected} unaccounted={result.unaccounted}")
            report.add(f"spectrum (r={uniformity}, l={length})", result.passed, detail)
    return report


def s_inverse_suite(l: Optional[int] = None, s_inverse_tol: float = S_INVERSE_TOL, **_) -> CheckReport:
    """Замкнутая формула S^-1 против точной обратной при l = 3..5"""
    report = CheckReport("s-inverse")
    for length in _grid(l, range(3, 6)):
        passed = s_inverse_closed_form_check(length, s_inverse_tol)
        literal = s_inverse_literal_deviation(length)
        report.add(f"S^-1 closed form (l={length})", passed, f"literal reading deviation={literal:.3e}")
    return report


SUITES: Dict[str, Callable[..., CheckReport]] = {
    "identities": identities_suite,
    "lemma-minors": lemma_minors_suite,
    "oracle": oracle_suite,
    "corollaries": corollaries_suite,
    "moments": moments_suite,
    "spectrum": spectrum_suite,
    "s-inverse": s_inverse_suite,
}


def run_suite(name: str, **options) -> CheckReport:
    """
    Запуск набора по имени; 'all' выполняет все наборы подряд

    Args:
        name: Имя набора или 'all'
        **options: r, l, tol (spectrum), s_inverse_tol, budget, jobs, progress, draws, seed

    Returns:
        Объединённый CheckReport
    """
    if name == "all":
        report = CheckReport("all")
        for suite_name, suite in SUITES.items():
            if suite_name == "corollaries" and options.get("l") not in (None, 5, 6):
                logger.info("Набор corollaries пропущен: l=%s", options["l"])
                continue
            logger.info("Набор проверок %s", suite_name)
            report.extend(suite(**options))
        return report
    return SUITES[name](**options)


def format_report(report: CheckReport) -> str:
    lines = []
    for row in report.rows:
        mark = "✅ PASS" if row.passed else "❌ FAIL"
        lines.append(f"{mark}  {row.name}" + (f"  {row.detail}" if row.detail else ""))
    passed = sum(row.passed for row in report.rows)
    lines.append(f"{report.title}: {passed}/{len(report.rows)} passed")
    return "\n".join(lines)
