"""
Обработчик команды verify: проверка тождеств по сетке (k, m)
"""
import argparse
import asyncio
import logging
from concurrent.futures import ProcessPoolExecutor
from typing import List, Optional

from pydantic import ValidationError

from config import CliConfig, settings
from handlers.exit_codes import EXIT_OK, EXIT_USAGE, EXIT_VERIFICATION_FAILED
from services.repcount import FormSpec, RepresentationError
from services.solver_service import SolverError, VerificationReport, get_solver
from utils.formatters import format_verification_table
from utils.validators import parse_k_range, parse_m_list, positive_int

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("verify", help="Проверить тождества для набора (k, m)")
    parser.add_argument("-k", type=parse_k_range, default=parse_k_range("1..8"), help="'1..8' или '1,3,5'")
    parser.add_argument("-m", type=parse_m_list, default=parse_m_list("1,2,4"), help="'1,2,4'")
    parser.add_argument("--order", type=int, default=None)
    parser.add_argument("--format", choices=("text", "json"), default=None)
    parser.add_argument("--workers", type=positive_int, default=None)
    parser.set_defaults(handler=handle)


def verify_one(k: int, m: int, order: int) -> VerificationReport:
    """Проверка одной пары (k, m); выполняется и в дочерних процессах"""
    return get_solver().verify_identity(FormSpec(k, m), order)


async def verify_all(specs: List[FormSpec], order: int, workers: int) -> List[VerificationReport]:
    """Параллельная проверка; порядок результатов совпадает с порядком specs"""
    loop = asyncio.get_running_loop()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        tasks = [loop.run_in_executor(pool, verify_one, spec.k, spec.m, order) for spec in specs]
        return list(await asyncio.gather(*tasks))


def run_verification(specs: List[FormSpec], order: int, workers: Optional[int] = None) -> List[VerificationReport]:
    workers = workers or settings.WORKERS
    if workers > 1 and len(specs) > 1:
        logger.info(f"🚀 Проверка {len(specs)} пар в {workers} процессах")
        return asyncio.run(verify_all(specs, order, workers))
    return [verify_one(spec.k, spec.m, order) for spec in specs]


def handle(args: argparse.Namespace) -> int:
    """Команда: verify -k 1..8 -m 1,2,4 [--order N]"""
    try:
        config = CliConfig.from_args(args, k=None, m=None)
        specs = [FormSpec(k, m) for k in args.k for m in args.m]
        reports = run_verification(specs, config.order, args.workers)
    except ValidationError as e:
        logger.error(f"❌ Некорректные параметры: {e}")
        return EXIT_USAGE
    except (RepresentationError, SolverError) as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE

    print(format_verification_table(reports, config.output_format))
    failed = [r for r in reports if not r.ok]
    if failed:
        logger.error(f"❌ Не выполнено тождеств: {len(failed)} из {len(reports)}")
        return EXIT_VERIFICATION_FAILED
    logger.info(f"✅ Все {len(reports)} тождеств выполнены")
    return EXIT_OK
