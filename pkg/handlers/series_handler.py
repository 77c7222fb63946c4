"""
Обработчик команды series: печать q-разложений
"""
import argparse
import logging

from pydantic import ValidationError

from config import CliConfig
from handlers.exit_codes import EXIT_OK, EXIT_USAGE
from services.arith_nt import CharacterId, NumberTheoryError
from services.eisenstein import EisensteinError, EisensteinFamily, EisensteinSpec, build_F, eisenstein_series
from services.eta_quotients import EtaQuotient, EtaQuotientError, quotient_expand
from services.repcount import (
    FormSpec,
    RepresentationError,
    correction_series,
    gen_series,
    theta_series,
    x_series,
)
from utils.formatters import format_series_json, format_series_text
from utils.validators import positive_int, validate_m

logger = logging.getLogger(__name__)

KINDS = ("theta", "gen", "x", "correction", "eta", "eisenstein", "F")


def register(subparsers):
    parser = subparsers.add_parser("series", help="q-разложение ряда")
    parser.add_argument("kind", choices=KINDS)
    parser.add_argument("-k", type=positive_int, default=None)
    parser.add_argument("-m", type=validate_m, default=None)
    parser.add_argument("-j", type=positive_int, default=None)
    parser.add_argument("--spec", default=None, help="эта-частное 'd:r,...'")
    parser.add_argument("--family", choices=[f.value for f in EisensteinFamily], default="level_one")
    parser.add_argument("--character", type=int, default=None, metavar="D")
    parser.add_argument("--dilation", type=positive_int, default=1)
    parser.add_argument("--order", type=int, default=None)
    parser.add_argument("--format", choices=("text", "json"), default=None)
    parser.set_defaults(handler=handle)


def _require(value, name: str):
    if value is None:
        raise ValueError(f"Нужен параметр {name}")
    return value


def build_series(args: argparse.Namespace, config: CliConfig):
    order = config.order
    if args.kind == "theta":
        return theta_series(order)
    if args.kind == "gen":
        return gen_series(FormSpec(_require(config.k, "-k"), _require(config.m, "-m")), order)
    if args.kind == "x":
        return x_series(_require(config.m, "-m"), order)
    if args.kind == "correction":
        spec = FormSpec(_require(config.k, "-k"), _require(config.m, "-m"))
        return correction_series(_require(config.j, "-j"), spec, order)
    if args.kind == "eta":
        return quotient_expand(EtaQuotient.parse(_require(args.spec, "--spec")), order)
    if args.kind == "F":
        return build_F(_require(config.m, "-m"), _require(config.k, "-k"), order)[1]
    character = CharacterId.from_discriminant(args.character) if args.character is not None else None
    spec = EisensteinSpec(EisensteinFamily(args.family), _require(config.k, "-k"), character, args.dilation)
    return eisenstein_series(spec, order)


def handle(args: argparse.Namespace) -> int:
    """Команда: series KIND [selectors] [--order N] [--format text|json]"""
    try:
        config = CliConfig.from_args(args)
        series = build_series(args, config)
    except ValidationError as e:
        logger.error(f"❌ Некорректные параметры: {e}")
        return EXIT_USAGE
    except (ValueError, RepresentationError, EtaQuotientError, EisensteinError, NumberTheoryError) as e:
        logger.error(f"❌ {e}")
        return EXIT_USAGE

    if config.output_format == "json":
        print(format_series_json(series))
    else:
        print(format_series_text(series))
    return EXIT_OK
