# src/charpoly/charpoly_assembler.py
"""
Сборка характеристического многочлена C_l^(r) в факторизованном виде

    phi(lambda) = lambda^{m_0} * prod_k f_k(lambda^r)^{e_k}

где f_k - приведённые многочлены от mu = lambda^r. Раскрытие в обычный
многочлен от lambda возможно только до заданной степени.
"""
import json
import logging
from dataclasses import dataclass, field
from typing import Dict, List, Tuple

import numpy as np
import sympy

from config import MAX_EXPAND_DEGREE, SPECTRUM_TOL
from src.charpoly.multiplicity_solver import solve_multiplicities, total_degree
from src.linalg.exact_linalg import IntegerPolynomial
from src.spectra.path_spectra import signed_cycle_squared_values, squared_spectrum_poly
from src.utils.errors import ConsistencyError, FeasibilityError, ParameterError
from src.utils.validation import check_hypercycle

logger = logging.getLogger(__name__)

MU = sympy.Symbol("mu")
Factor = Tuple[IntegerPolynomial, int]


@dataclass(frozen=True)
class FactoredCharPoly:
    """
    phi(lambda) = lambda^{lambda_exponent} * prod f_k(lambda^r)^{e_k}

    Args:
        r: Равномерность
        l: Длина цикла
        lambda_exponent: Показатель при lambda
        factors: Пары (приведённый многочлен от mu, показатель > 0) в порядке вывода
        canonical: Прошёл ли объект canonicalize
    """

    r: int
    l: int
    lambda_exponent: int
    factors: Tuple[Factor, ...] = field(default=())
    canonical: bool = False

    def __post_init__(self):
        if self.lambda_exponent < 0:
            raise ConsistencyError(f"Отрицательный показатель при lambda: {self.lambda_exponent}")
        for poly, exponent in self.factors:
            if not poly.is_monic():
                raise ConsistencyError(f"Множитель {poly} не приведённый")
            if exponent <= 0:
                raise ConsistencyError(f"Множитель {poly} с показателем {exponent}")

    @property
    def degree(self) -> int:
        return self.lambda_exponent + self.r * sum(poly.degree * exponent for poly, exponent in self.factors)


def assemble(r: int, l: int) -> FactoredCharPoly:
    """
    (mu - 4)^{m_1} * prod_{j=2}^{l} psi_j(mu)^{m_j} * lambda^{m_0}.
    При r = 3 множитель j = l отсутствует, так как m_l = 0.

    Args:
        r: Равномерность
        l: Длина цикла

    Returns:
        FactoredCharPoly
    """
    check_hypercycle(r, l)
    vector = solve_multiplicities(r, l)
    factors: List[Factor] = [(IntegerPolynomial.linear(4), vector.m[0])]
    for j in range(2, l + 1):
        exponent = vector.m[j - 1]
        if exponent > 0:
            factors.append((squared_spectrum_poly(j).poly, exponent))
    result = FactoredCharPoly(r, l, vector.m0, tuple(f for f in factors if f[1] > 0))

    if result.degree != total_degree(r, l):
        raise ConsistencyError(f"Степень {result.degree} не равна {total_degree(r, l)} для r={r}, l={l}")
    logger.info("Собран многочлен C_%d^(%d) степени %d", l, r, result.degree)
    return result


def _to_sympy(poly: IntegerPolynomial) -> sympy.Poly:
    return sympy.Poly(list(reversed(poly.coeffs)), MU, domain="ZZ")


def _from_sympy(poly: sympy.Poly) -> IntegerPolynomial:
    coeffs = [int(c) for c in reversed(poly.all_coeffs())]
    result = IntegerPolynomial(tuple(coeffs))
    return -result if result.leading < 0 else result


def _blocks(sym: sympy.Poly, split_rational: bool) -> List[Tuple[sympy.Poly, int]]:
    _, parts = sym.factor_list()
    if split_rational:
        return parts
    # линейные множители по отдельности, нелинейные неприводимые склеиваются по кратности
    blocks = [(part, multiplicity) for part, multiplicity in parts if part.degree() == 1]
    irrational: Dict[int, sympy.Poly] = {}
    for part, multiplicity in parts:
        if part.degree() > 1:
            irrational[multiplicity] = irrational[multiplicity] * part if multiplicity in irrational else part
    blocks.extend((block, multiplicity) for multiplicity, block in irrational.items())
    return blocks


def canonicalize(f: FactoredCharPoly, split_rational: bool = False) -> FactoredCharPoly:
    """
    Переносит корни mu = 0 в степень lambda и склеивает одинаковые блоки.

    По умолчанию рациональные корни выделяются в линейные множители
    (например, (mu-1)^2 -> (mu-1) с удвоенным показателем, mu^2-4mu+3 -> (mu-1)(mu-3)),
    а часть без рациональных корней остаётся одним блоком для каждой кратности
    (psi_4 = (mu^2-3mu+1)^2 не раскладывается на сомножители с иррациональными корнями).
    С split_rational и эта часть раскладывается на неприводимые над Q множители.

    Args:
        f: Исходный объект
        split_rational: Полное разложение над Q

    Returns:
        Канонический FactoredCharPoly той же степени
    """
    lambda_exponent = f.lambda_exponent
    merged: Dict[IntegerPolynomial, int] = {}
    for poly, exponent in f.factors:
        zeros = poly.trailing_zeros()
        lambda_exponent += f.r * zeros * exponent
        rest = poly.divide_by_x_power(zeros)
        if rest.degree < 1:
            continue
        for part, multiplicity in _blocks(_to_sympy(rest), split_rational):
            block = _from_sympy(part)
            merged[block] = merged.get(block, 0) + multiplicity * exponent

    result = FactoredCharPoly(f.r, f.l, lambda_exponent, tuple(merged.items()), canonical=True)
    if result.degree != f.degree:
        raise ConsistencyError(f"canonicalize изменил степень: {f.degree} -> {result.degree}")
    return result


def expand(f: FactoredCharPoly, cap: int = MAX_EXPAND_DEGREE) -> IntegerPolynomial:
    """
    Полностью раскрытый многочлен от lambda

    Args:
        f: Факторизованный многочлен
        cap: Наибольшая допустимая степень

    Returns:
        Приведённый IntegerPolynomial от lambda
    """
    degree = f.degree
    if degree > cap:
        raise FeasibilityError(f"Степень {degree} больше допустимой {cap} для раскрытия", estimate=degree)
    in_mu = IntegerPolynomial((1,))
    for poly, exponent in f.factors:
        in_mu = in_mu * poly ** exponent
    return in_mu.inflate(f.r).shift(f.lambda_exponent)


@dataclass(frozen=True)
class SpectrumReport:
    """
    Результат численной проверки корней mu

    Args:
        passed: Совпали ли множества значений и учтены ли все корни
        multiplicities: Пары (значение mu, кратность по mu); значение 0 несёт кратность по lambda
        missing: Ожидаемые значения, которых нет среди корней
        unexpected: Корни вне ожидаемого множества
        unaccounted: Число корней, не совпавших ни с одним кандидатом
    """

    r: int
    l: int
    passed: bool
    multiplicities: Tuple[Tuple[float, int], ...]
    missing: Tuple[float, ...] = ()
    unexpected: Tuple[float, ...] = ()
    unaccounted: int = 0


def _dedup(values: List[float], tol: float) -> List[float]:
    result: List[float] = []
    for value in sorted(0.0 if abs(v) <= tol else v for v in values):
        if not result or abs(value - result[-1]) > tol:
            result.append(value)
    return result


def expected_root_values(r: int, l: int, tol: float = SPECTRUM_TOL) -> List[float]:
    """Различные значения r-х степеней собственных чисел C_l^(r), без повторов"""
    return _dedup([item.value for item in signed_cycle_squared_values(l, r_is_three=(r == 3))], tol)


def _root_multiplicity(poly: IntegerPolynomial, candidate: float, tol: float) -> int:
    # число подряд обращающихся в ноль производных в точке candidate
    count = 0
    current = poly
    while current.degree >= 1:
        coeffs = np.array([float(c) for c in reversed(current.coeffs)])
        scale = float(np.polyval(np.abs(coeffs), max(1.0, abs(candidate))))
        if abs(np.polyval(coeffs, candidate)) > tol * scale:
            break
        count += 1
        current = current.derivative()
    return count


def numeric_spectrum_check(f: FactoredCharPoly, tol: float = SPECTRUM_TOL) -> SpectrumReport:
    """
    Сверяет корни каждого множителя с известными значениями 4cos^2(k*pi/(j+1)) и 4

    Args:
        f: Факторизованный многочлен
        tol: Допуск

    Returns:
        SpectrumReport
    """
    expected = expected_root_values(f.r, f.l, tol)
    pool = _dedup(expected + expected_root_values(4, f.l + 1, tol) + [0.0], tol)

    totals: Dict[float, int] = {}
    unaccounted = 0
    for poly, exponent in f.factors:
        found = 0
        for candidate in pool:
            multiplicity = _root_multiplicity(poly, candidate, tol)
            if multiplicity:
                totals[candidate] = totals.get(candidate, 0) + multiplicity * exponent
                found += multiplicity
        if found != poly.degree:
            logger.warning("Множитель %s: опознано %d корней из %d", poly, found, poly.degree)
            unaccounted += (poly.degree - found) * exponent
    if f.lambda_exponent:
        totals[0.0] = totals.get(0.0, 0) + f.lambda_exponent

    present = sorted(totals)
    missing = tuple(v for v in expected if all(abs(v - p) > tol for p in present))
    unexpected = tuple(p for p in present if all(abs(v - p) > tol for v in expected))
    passed = not missing and not unexpected and unaccounted == 0
    return SpectrumReport(
        r=f.r,
        l=f.l,
        passed=passed,
        multiplicities=tuple((value, totals[value]) for value in present),
        missing=missing,
        unexpected=unexpected,
        unaccounted=unaccounted,
    )


def _mu_terms(poly: IntegerPolynomial, r: int) -> List[Tuple[int, int]]:
    # (коэффициент, степень lambda) от старшей к младшей
    return [(c, k * r) for k, c in reversed(list(enumerate(poly.coeffs))) if c != 0]


def _text_poly(poly: IntegerPolynomial, r: int) -> str:
    pieces = []
    for index, (c, power) in enumerate(_mu_terms(poly, r)):
        magnitude = abs(c)
        if power == 0:
            body = str(magnitude)
        else:
            variable = "λ" if power == 1 else f"λ^{power}"
            body = variable if magnitude == 1 else f"{magnitude}{variable}"
        if index == 0:
            pieces.append(("−" if c < 0 else "") + body)
        else:
            pieces.append(("− " if c < 0 else "+ ") + body)
    return " ".join(pieces)


def _latex_power(power: int) -> str:
    if power == 1:
        return r"\lambda"
    digits = str(power)
    return rf"\lambda^{digits}" if len(digits) == 1 else rf"\lambda^{{{digits}}}"


def _latex_poly(poly: IntegerPolynomial, r: int) -> str:
    text = ""
    for index, (c, power) in enumerate(_mu_terms(poly, r)):
        magnitude = abs(c)
        if power == 0:
            body = str(magnitude)
        else:
            body = _latex_power(power) if magnitude == 1 else f"{magnitude}{_latex_power(power)}"
        sign = "-" if c < 0 else ("" if index == 0 else "+")
        text += sign + body
    return text


def to_payload(f: FactoredCharPoly) -> dict:
    return {
        "r": f.r,
        "l": f.l,
        "degree": str(f.degree),
        "lambda_exponent": str(f.lambda_exponent),
        "factors": [
            {"mu_coeffs_low_to_high": [str(c) for c in poly.coeffs], "exponent": str(exponent)}
            for poly, exponent in f.factors
        ],
        "canonical": f.canonical,
    }


def render(f: FactoredCharPoly, fmt: str = "text") -> str:
    """
    Текстовое, LaTeX или JSON представление; mu заменяется на lambda^r

    Args:
        f: Факторизованный многочлен
        fmt: 'text', 'latex' или 'json'

    Returns:
        Строка без завершающего перевода строки
    """
    if fmt == "json":
        return json.dumps(to_payload(f), ensure_ascii=False, indent=2)
    if fmt == "text":
        parts = []
        if f.lambda_exponent:
            parts.append("λ" if f.lambda_exponent == 1 else f"λ^{f.lambda_exponent}")
        for poly, exponent in f.factors:
            block = f"({_text_poly(poly, f.r)})"
            parts.append(block if exponent == 1 else f"{block}^{exponent}")
        return " · ".join(parts) if parts else "1"
    if fmt == "latex":
        text = ""
        if f.lambda_exponent:
            text += r"\lambda" if f.lambda_exponent == 1 else rf"\lambda^{{{f.lambda_exponent}}}"
        for poly, exponent in f.factors:
            block = f"({_latex_poly(poly, f.r)})"
            text += block if exponent == 1 else f"{block}^{{{exponent}}}"
        return text or "1"
    raise ParameterError(f"Неизвестный формат вывода: {fmt}")


def parse_json(text: str) -> FactoredCharPoly:
    """
    Обратное к render(f, 'json')

    Args:
        text: JSON-документ

    Returns:
        FactoredCharPoly
    """
    try:
        payload = json.loads(text)
        factors = tuple(
            (IntegerPolynomial(tuple(int(c) for c in item["mu_coeffs_low_to_high"])), int(item["exponent"]))
            for item in payload["factors"]
        )
        result = FactoredCharPoly(
            r=int(payload["r"]),
            l=int(payload["l"]),
            lambda_exponent=int(payload["lambda_exponent"]),
            factors=factors,
            canonical=bool(payload["canonical"]),
        )
        declared = int(payload["degree"])
    except (KeyError, TypeError, ValueError) as e:
        raise ParameterError(f"Некорректный JSON многочлена: {e}") from e
    if declared != result.degree:
        raise ParameterError(f"Заявленная степень {declared} не равна вычисленной {result.degree}")
    return result


def moment_closure(f: FactoredCharPoly) -> List[int]:
    """
    Следы порядков r, 2r, ..., l*r как степенные суммы корней:
    Tr_{dr} = r * sum_k e_k * p_d(f_k)

    Returns:
        Список из l целых
    """
    totals = [0] * f.l
    for poly, exponent in f.factors:
        for d, value in enumerate(poly.power_sums(f.l)):
            totals[d] += exponent * value
    return [f.r * value for value in totals]


def corollary_presentation(r: int, l: int) -> FactoredCharPoly:
    """
    Полностью разложенный над Q вид при l = 5 и l = 6: нули нечётных путей
    уходят в степень lambda, блоки (mu-1), (mu-2), (mu-3) склеиваются
    """
    if l not in (5, 6):
        raise ParameterError(f"Развёрнутое представление строится для l = 5 и l = 6: {l}")
    return canonicalize(assemble(r, l), split_rational=True)

