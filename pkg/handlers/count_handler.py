"""
Обработчик команды count: r(1^k m^k; n) тремя способами
"""
import argparse
import logging
from typing import Dict

from pydantic import ValidationError

from config import CliConfig
from handlers.exit_codes import EXIT_OK, EXIT_USAGE
from services.repcount import FormSpec, RepresentationError, brute_count, enumerate_count, gen_series
from services.solver_service import SolverError, evaluate_formula, get_solver
from utils.validators import nonnegative_int, positive_int, validate_m

logger = logging.getLogger(__name__)

METHODS = ("formula", "series", "enumerate")

# Прямой перебор 2k переменных выполняется только для малых n
DIRECT_ENUMERATION_LIMIT = 20


def register(subparsers):
    parser = subparsers.add_parser("count", help="Число представлений n формой")
    parser.add_argument("-k", type=positive_int, required=True)
    parser.add_argument("-m", type=validate_m, required=True)
    parser.add_argument("-n", type=nonnegative_int, required=True)
    parser.add_argument("--method", choices=METHODS, default="formula")
    parser.add_argument("--check-all", action="store_true", help="Посчитать всеми способами и сравнить")
    parser.add_argument("--order", type=int, default=None)
    parser.set_defaults(handler=handle)


def count_by_formula(spec: FormSpec, n: int, order: int) -> int:
    solver = get_solver()
    order = max(order, n + 1)
    formula = solver.emit_formula(spec, order)
    provider = solver.correction_provider(spec, order) if formula.ell else None
    return evaluate_formula(formula, n, provider)


def count_by_series(spec: FormSpec, n: int) -> int:
    value = gen_series(spec, n + 1).coefficient(n)
    return value.numerator


def count_by_enumeration(spec: FormSpec, n: int) -> int:
    return brute_count(spec, n)


def handle(args: argparse.Namespace) -> int:
    """Команда: count -k K -m M -n N [--method ...] [--check-all]"""
    try:
        config = CliConfig.from_args(args)
        spec = FormSpec(config.k, config.m)
        n = config.n
        if not args.check_all:
            if args.method == "formula":
                value = count_by_formula(spec, n, config.order)
            elif args.method == "series":
                value = count_by_series(spec, n)
            else:
                value = count_by_enumeration(spec, n)
            print(value)
            return EXIT_OK

        results: Dict[str, int] = {
            "formula": count_by_formula(spec, n, config.order),
            "series": count_by_series(spec, n),
            "enumerate": count_by_enumeration(spec, n),
        }
        if n <= DIRECT_ENUMERATION_LIMIT:
            results["direct"] = enumerate_count(spec, n)
    except ValidationError as e:
        logger.error(f"❌ Некорректные параметры: {e}")
        return EXIT_USAGE
    except (RepresentationError, SolverError) as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE

    if len(set(results.values())) != 1:
        details = ", ".join(f"{name}={value}" for name, value in results.items())
        logger.error(f"❌ Способы подсчёта расходятся для {spec}, n = {n}: {details}")
        return EXIT_USAGE
    logger.info(f"✅ Все способы дали {results['formula']}")
    print(results["formula"])
    return EXIT_OK
