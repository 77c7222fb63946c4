"""
Обработчик команды eta: условия модулярности, характер и порядок в каспе
"""
import argparse
import logging

from config import settings
from handlers.exit_codes import EXIT_OK, EXIT_PRECONDITION, EXIT_USAGE
from services.eta_quotients import (
    CuspLabel,
    EtaQuotient,
    EtaQuotientError,
    check_gamma0_conditions,
    cusp_order_table,
    ligozat_order,
)
from utils.formatters import format_cusp_table, format_eta_report

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("eta", help="Анализ эта-частного")
    parser.add_argument("--spec", default=None, help="'1:-2,2:3,4:3,8:-2'")
    parser.add_argument("--level", type=int, default=None)
    parser.add_argument("--cusp", default=None, help="'a/c'")
    parser.add_argument("--table", action="store_true", help="Таблица порядков theta*theta(m tau) и x_m")
    parser.add_argument("--format", choices=("text", "json"), default=None)
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    """Команда: eta --spec S --level N --cusp a/c | eta --table"""
    output_format = args.format or settings.OUTPUT_FORMAT
    if args.table:
        print(format_cusp_table(cusp_order_table(), output_format))
        return EXIT_OK
    if not args.spec or not args.cusp:
        logger.error("❌ Нужны --spec и --cusp (или --table)")
        return EXIT_USAGE

    try:
        quotient = EtaQuotient.parse(args.spec, args.level)
        cusp = CuspLabel.parse(args.cusp, quotient.level)
    except EtaQuotientError as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE

    report = check_gamma0_conditions(quotient)
    if not report.passes:
        logger.error(f"❌ Условия модулярности не выполнены для {quotient.to_text()}")
        print(format_eta_report(quotient, report, cusp, None, output_format))
        return EXIT_PRECONDITION

    order = ligozat_order(quotient, cusp)
    print(format_eta_report(quotient, report, cusp, order, output_format))
    return EXIT_OK
