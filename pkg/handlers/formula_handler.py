"""
Обработчик команды formula: вывод формулы для r(1^k m^k; n)
"""
import argparse
import logging

from pydantic import ValidationError

from config import CliConfig
from handlers.exit_codes import EXIT_OK, EXIT_USAGE
from services.repcount import FormSpec
from services.solver_service import SolverError, get_solver
from utils.validators import positive_int, validate_m

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("formula", help="Формула для числа представлений")
    parser.add_argument("-k", type=positive_int, required=True)
    parser.add_argument("-m", type=validate_m, required=True)
    parser.add_argument("--order", type=int, default=None)
    parser.add_argument("--format", choices=("text", "json"), default=None)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    """Команда: formula -k K -m M [--format text|json]"""
    try:
        config = CliConfig.from_args(args)
        spec = FormSpec(config.k, config.m)
        formula = get_solver().emit_formula(spec, config.order)
    except ValidationError as e:
        logger.error(f"❌ Некорректные параметры: {e}")
        return EXIT_USAGE
    except SolverError as e:
        logger.error(f"❌ Не удалось вывести формулу: {e}")
        return EXIT_USAGE

    if config.output_format == "json":
        print(formula.to_json())
    else:
        print(formula.to_text())
    return EXIT_OK
