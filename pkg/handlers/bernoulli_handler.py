"""
Обработчик команды bernoulli
"""
import argparse
import logging

from handlers.exit_codes import EXIT_OK, EXIT_USAGE
from services.arith_nt import CharacterId, NumberTheoryError, bernoulli, gen_bernoulli
from services.series_core import rational_to_str
from utils.validators import nonnegative_int

logger = logging.getLogger(__name__)


def register(subparsers):
    parser = subparsers.add_parser("bernoulli", help="Числа Бернулли B_k и B_{k,chi}")
    parser.add_argument("-k", type=nonnegative_int, required=True)
    parser.add_argument("--character", type=int, default=None, metavar="D", help="-4 или -2")
    parser.set_defaults(handler=handle)


def handle(args: argparse.Namespace) -> int:
    """Команда: bernoulli -k K [--character D]"""
    try:
        if args.character is None:
            value = bernoulli(args.k)
        else:
            chi = CharacterId.from_discriminant(args.character)
            # характеры (-4/.) и (-2/.) нечётные
            if args.k % 2 == 0:
                logger.error(f"❌ Для нечётного характера k должно быть нечётным, получено k = {args.k}")
                return EXIT_USAGE
            value = gen_bernoulli(args.k, chi)
    except NumberTheoryError as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE

    print(rational_to_str(value))
    return EXIT_OK
