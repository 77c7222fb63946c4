"""
qform: формулы для числа представлений формами
x_1^2 + ... + x_k^2 + m(x_{k+1}^2 + ... + x_{2k}^2), m = 1, 2, 4
"""
import logging
import sys
from typing import List, Optional

from config import settings
from handlers import setup_parsers
from handlers.exit_codes import EXIT_USAGE

logger = logging.getLogger(__name__)


def setup_logging():
    """Логи идут в stderr (и в файл, если задан QFORM_LOG_FILE): stdout занят результатом"""
    handlers: List[logging.Handler] = [logging.StreamHandler(sys.stderr)]
    if settings.LOG_FILE:
        handlers.append(logging.FileHandler(settings.LOG_FILE, encoding="utf-8"))
    logging.basicConfig(
        level=getattr(logging, settings.LOG_LEVEL, logging.INFO),
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
        force=True,
    )


def main(argv: Optional[List[str]] = None) -> int:
    """Главная функция: разбор аргументов и запуск подкоманды (логирование настраивает вызывающий код)"""
    try:
        settings.validate()
    except ValueError as e:
        logger.error(f"❌ Ошибка конфигурации: {e}")
        return EXIT_USAGE

    parser = setup_parsers()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logger.debug(f"🤖 Команда {args.command}")
    return args.handler(args)


if __name__ == "__main__":
    setup_logging()
    sys.exit(main())
