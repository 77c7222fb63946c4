"""
Инициализация всех обработчиков
"""
import argparse

from . import (
    formula_handler,
    count_handler,
    verify_handler,
    eta_handler,
    bernoulli_handler,
    series_handler,
)


def setup_parsers() -> argparse.ArgumentParser:
    """Настройка парсера со всеми подкомандами"""
    parser = argparse.ArgumentParser(
        prog="qform",
        description="Формулы для числа представлений формами x_1^2 + ... + x_k^2 + m(x_{k+1}^2 + ... + x_{2k}^2)",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    # Регистрируем все подкоманды
    formula_handler.register(subparsers)
    count_handler.register(subparsers)
    verify_handler.register(subparsers)
    eta_handler.register(subparsers)
    bernoulli_handler.register(subparsers)
    series_handler.register(subparsers)

    return parser


__all__ = ["setup_parsers"]
