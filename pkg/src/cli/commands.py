# src/cli/commands.py
"""
Командная строка: compute, trace, verify, spectrum.

Коды выхода: 0 - успех, 1 - проверка не прошла, 2 - ошибка использования,
3 - превышен бюджет перебора или раскрытия.
"""
import argparse
import json
import logging
import sys
from typing import List, Optional

from config import DEFAULT_JOBS, ENUMERATION_BUDGET, MAX_EXPAND_DEGREE, SPECTRUM_TOL
from src.charpoly.charpoly_assembler import (assemble, canonicalize, expand, numeric_spectrum_check,
                                             render)
from src.cli.suites import SUITES, format_report, run_suite
from src.linalg.exact_linalg import format_polynomial
from src.traces.brute_oracle import brute_trace
from src.traces.trace_engine import trace_any
from src.utils.errors import (FeasibilityError, HypercycleError, ParameterError, UnsupportedOrderError,
                              VerificationError)
from src.utils.logger import setup_logging

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_FEASIBILITY = 3


class _UsageError(Exception):
    pass


class CliParser(argparse.ArgumentParser):
    """argparse с сообщениями об ошибках в формате 'error: ...'"""

    def error(self, message: str):
        raise _UsageError(message)


def _at_least_three(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"ожидалось целое число, получено {text!r}")
    if value < 3:
        raise argparse.ArgumentTypeError(f"значение должно быть не меньше 3, получено {value}")
    return value


def _positive(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"ожидалось целое число, получено {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"значение должно быть положительным, получено {value}")
    return value


def build_parser() -> CliParser:
    parser = CliParser(prog="hypercycle-charpoly",
                       description="Характеристический многочлен гиперцикла C_l^(r) в точной арифметике")
    parser.add_argument("--log-level", default=None, help="уровень диагностики в stderr")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=CliParser)

    compute = sub.add_parser("compute", help="факторизованный характеристический многочлен")
    compute.add_argument("--r", type=_at_least_three, required=True)
    compute.add_argument("--l", type=_at_least_three, required=True)
    compute.add_argument("--canonical", action="store_true")
    compute.add_argument("--split-rational", action="store_true",
                         help="полное разложение множителей над Q (включает --canonical)")
    compute.add_argument("--expand", action="store_true")
    compute.add_argument("--max-expand-degree", type=_positive, default=MAX_EXPAND_DEGREE)
    compute.add_argument("--format", choices=("text", "latex", "json"), default="text")
    compute.add_argument("--out", default=None)

    trace = sub.add_parser("trace", help="след Tr_{d*r} по формуле и перебором")
    trace.add_argument("--r", type=_at_least_three, required=True)
    trace.add_argument("--l", type=_at_least_three, required=True)
    order = trace.add_mutually_exclusive_group(required=True)
    order.add_argument("--d", type=_positive, help="порядок следа d*r")
    order.add_argument("--order", type=_positive, help="произвольный порядок следа")
    trace.add_argument("--brute", action="store_true")
    trace.add_argument("--budget", type=_positive, default=ENUMERATION_BUDGET)
    trace.add_argument("--jobs", type=_positive, default=DEFAULT_JOBS)
    trace.add_argument("--progress", action="store_true")
    trace.add_argument("--out", default=None)

    verify = sub.add_parser("verify", help="наборы проверок")
    verify.add_argument("--suite", choices=tuple(SUITES) + ("all",), required=True)
    verify.add_argument("--r", type=_at_least_three, default=None)
    verify.add_argument("--l", type=_at_least_three, default=None)
    verify.add_argument("--tol", type=float, default=None, help="допуск набора spectrum")
    verify.add_argument("--s-inverse-tol", type=float, default=None, help="допуск набора s-inverse")
    verify.add_argument("--budget", type=_positive, default=ENUMERATION_BUDGET)
    verify.add_argument("--jobs", type=_positive, default=DEFAULT_JOBS)
    verify.add_argument("--draws", type=_positive, default=100)
    verify.add_argument("--seed", type=int, default=0)
    verify.add_argument("--progress", action="store_true")
    verify.add_argument("--out", default=None)

    spectrum = sub.add_parser("spectrum", help="корни mu = lambda^r с кратностями")
    spectrum.add_argument("--r", type=_at_least_three, required=True)
    spectrum.add_argument("--l", type=_at_least_three, required=True)
    spectrum.add_argument("--tol", type=float, default=SPECTRUM_TOL)
    spectrum.add_argument("--format", choices=("text", "json"), default="text")
    spectrum.add_argument("--out", default=None)
    return parser


def _emit(payload: str, out: Optional[str]) -> None:
    print(payload)
    if out:
        with open(out, "w", encoding="utf-8") as file:
            file.write(payload + "\n")


def _compute(args) -> int:
    f = assemble(args.r, args.l)
    if args.canonical or args.split_rational:
        f = canonicalize(f, split_rational=args.split_rational)
    payload = render(f, args.format)
    if args.expand:
        expanded = expand(f, cap=args.max_expand_degree)
        if args.format == "json":
            document = json.loads(payload)
            document["expanded_coeffs_low_to_high"] = [str(c) for c in expanded.coeffs]
            payload = json.dumps(document, ensure_ascii=False, indent=2)
        else:
            payload += "\n" + format_polynomial(expanded, "λ")
    _emit(payload, args.out)
    return EXIT_OK


def _trace(args) -> int:
    order = args.order if args.order is not None else args.d * args.r
    formula = trace_any(args.r, args.l, order)
    if not args.brute:
        _emit(f"formula={formula}", args.out)
        return EXIT_OK
    brute = brute_trace(args.r, args.l, order, budget=args.budget, jobs=args.jobs, progress=args.progress)
    agree = brute == formula
    _emit(f"formula={formula} brute={brute} {'OK' if agree else 'MISMATCH'}", args.out)
    return EXIT_OK if agree else EXIT_FAILED


def _verify(args) -> int:
    options = {"r": args.r, "l": args.l, "budget": args.budget, "jobs": args.jobs,
               "draws": args.draws, "seed": args.seed, "progress": args.progress}
    if args.tol is not None:
        options["tol"] = args.tol
    if args.s_inverse_tol is not None:
        options["s_inverse_tol"] = args.s_inverse_tol
    report = run_suite(args.suite, **options)
    _emit(format_report(report), args.out)
    if not report.passed:
        raise VerificationError(f"набор {args.suite}: не прошло {len(report.failures)} проверок",
                                failures=report.failures)
    return EXIT_OK


def _spectrum(args) -> int:
    result = numeric_spectrum_check(assemble(args.r, args.l), args.tol)
    if args.format == "json":
        payload = json.dumps({
            "r": result.r,
            "l": result.l,
            "passed": result.passed,
            "roots": [{"mu": repr(value), "multiplicity": str(count)} for value, count in result.multiplicities],
        }, ensure_ascii=False, indent=2)
    else:
        lines = [f"mu={value:.12f} multiplicity={count}" for value, count in result.multiplicities]
        lines.append(f"check: {'OK' if result.passed else 'MISMATCH'}")
        payload = "\n".join(lines)
    _emit(payload, args.out)
    if not result.passed:
        raise VerificationError(
            f"корни не совпали: missing={result.missing} unexpected={result.unexpected} "
            f"unaccounted={result.unaccounted}")
    return EXIT_OK


COMMANDS = {
    "compute": _compute,
    "trace": _trace,
    "verify": _verify,
    "spectrum": _spectrum,
}


def run(argv: Optional[List[str]] = None) -> int:
    """
    Точка входа CLI

    Args:
        argv: Аргументы без имени программы (по умолчанию sys.argv[1:])

    Returns:
        Код выхода
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help
        return int(e.code or 0)

    setup_logging(args.log_level)
    try:
        return COMMANDS[args.command](args)
    except (ParameterError, UnsupportedOrderError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except FeasibilityError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FEASIBILITY
    except VerificationError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAILED
    except HypercycleError as e:
        print(f"error: {e}", file=sys.stderr)
        logger.debug("Внутренняя ошибка", exc_info=True)
        return EXIT_FAILED
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
