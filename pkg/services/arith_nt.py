"""
Арифметические примитивы: символ Кронекера, делительные суммы
(обычные и с характером) и числа Бернулли (обычные и обобщённые).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Optional, Union

from sympy import divisors, factorint, jacobi_symbol

from services.series_core import QSeries, inverse, mul

logger = logging.getLogger(__name__)


class NumberTheoryError(ValueError):
    """Базовая ошибка арифметического модуля"""


class UnsupportedCharacter(NumberTheoryError):
    """Характер вне поддерживаемого набора {(-4/.), (-2/.)}"""


# ----------------------------- characters -----------------------------


def kronecker(D: int, n: int) -> int:
    """
    Символ Кронекера (D/n)

    Нечётная часть n считается через символ Якоби (sympy), множитель 2
    по второму дополнительному закону, знак n через знак D.
    """
    if n == 0:
        return 1 if abs(D) == 1 else 0
    result = 1
    if n < 0:
        n = -n
        if D < 0:
            result = -1
    twos = 0
    while n % 2 == 0:
        n //= 2
        twos += 1
    if twos:
        if D % 2 == 0:
            return 0
        if D % 8 in (3, 5) and twos % 2:
            result = -result
    if n == 1:
        return result
    return result * int(jacobi_symbol(D % n, n))


@dataclass(frozen=True)
class CharacterId:
    """Характер Кронекера chi_D = (D/.) и его модуль"""
    discriminant: int
    modulus: int

    @classmethod
    def from_discriminant(cls, D: int) -> "CharacterId":
        for character in SUPPORTED_CHARACTERS:
            if character.discriminant == D:
                return character
        raise UnsupportedCharacter(f"Поддерживаются только D = -2 и D = -4, получено D = {D}")

    def __call__(self, n: int) -> int:
        return kronecker(self.discriminant, n)

    @property
    def label(self) -> str:
        return f"chi={self.discriminant}"


CHI_MINUS_4 = CharacterId(discriminant=-4, modulus=4)
CHI_MINUS_2 = CharacterId(discriminant=-2, modulus=8)
SUPPORTED_CHARACTERS = (CHI_MINUS_4, CHI_MINUS_2)


# ----------------------------- divisor sums -----------------------------


class DivisorSumVariant(Enum):
    """Тип делительной суммы"""
    PLAIN = "sigma"
    TWISTED_INF = "sigma_inf"
    TWISTED_0 = "sigma_0"


@dataclass(frozen=True)
class DivisorSumKind:
    """sigma_k, sigma^inf_{k,chi} или sigma^0_{k,chi}"""
    variant: DivisorSumVariant
    weight: int
    character: Optional[CharacterId] = None

    def __post_init__(self):
        if self.weight < 0:
            raise NumberTheoryError(f"Вес делительной суммы должен быть неотрицательным: {self.weight}")
        if (self.variant is DivisorSumVariant.PLAIN) != (self.character is None):
            raise NumberTheoryError("Характер задаётся тогда и только тогда, когда сумма скрученная")

    @property
    def label(self) -> str:
        text = f"{self.variant.value}_{self.weight}"
        if self.character is not None:
            text += f"[{self.character.label}]"
        return text

    def canonical(self) -> "DivisorSumKind":
        """При весе 0 sigma^0 совпадает с sigma^inf (замена d -> n/d)"""
        if self.variant is DivisorSumVariant.TWISTED_0 and self.weight == 0:
            return DivisorSumKind(DivisorSumVariant.TWISTED_INF, 0, self.character)
        return self


@lru_cache(maxsize=None)
def _divisor_sum_int(kind: DivisorSumKind, n: int) -> int:
    k = kind.weight
    if kind.variant is DivisorSumVariant.PLAIN:
        return sum(d ** k for d in divisors(n))
    chi = kind.character
    if kind.variant is DivisorSumVariant.TWISTED_INF:
        return sum(chi(d) * d ** k for d in divisors(n))
    return sum(chi(n // d) * d ** k for d in divisors(n))


def divisor_sum(kind: DivisorSumKind, n: Union[int, Fraction]) -> int:
    """Делительная сумма; 0, если n не является натуральным числом"""
    n = Fraction(n)
    if n.denominator != 1 or n <= 0:
        return 0
    return _divisor_sum_int(kind, n.numerator)


def square_free_kernel(value: Union[int, Fraction]) -> int:
    """Бесквадратная часть рационального числа (со знаком): 8 -> 2, -8 -> -2, 1/2 -> 2"""
    value = Fraction(value)
    if value == 0:
        raise NumberTheoryError("У нуля нет бесквадратной части")
    kernel = -1 if value < 0 else 1
    for part in (abs(value.numerator), value.denominator):
        for p, e in factorint(part).items():
            if e % 2:
                kernel *= p
    return kernel


# ----------------------------- Bernoulli numbers -----------------------------


def _egf_coefficient(numerator: QSeries, denominator: QSeries, k: int) -> Fraction:
    """k! * [t^k] numerator/denominator"""
    return mul(numerator, inverse(denominator)).coefficient(k) * factorial(k)


@lru_cache(maxsize=None)
def bernoulli(k: int) -> Fraction:
    """Число Бернулли B_k из t/(e^t - 1) (B_1 = -1/2, B_2 = 1/6, B_4 = -1/30)"""
    if k < 0:
        raise NumberTheoryError(f"Индекс числа Бернулли должен быть неотрицательным: {k}")
    order = k + 1
    # (e^t - 1)/t = sum t^n/(n+1)!
    denominator = QSeries.from_coefficients([Fraction(1, factorial(n + 1)) for n in range(order)], order)
    return _egf_coefficient(QSeries.constant(1, order * 24), denominator, k)


@lru_cache(maxsize=None)
def gen_bernoulli(k: int, chi: CharacterId) -> Fraction:
    """
    Обобщённое число Бернулли B_{k,f} из производящей функции
    t/(e^{ft} - 1) * sum_{j=1..f} chi(j) e^{jt}

    Args:
        k: индекс
        chi: характер (-4/.) с модулем 4 или (-2/.) с модулем 8

    Returns:
        Fraction: точное значение B_{k,f}
    """
    if chi not in SUPPORTED_CHARACTERS:
        raise UnsupportedCharacter(f"Неподдерживаемый характер: {chi}")
    if k < 0:
        raise NumberTheoryError(f"Индекс числа Бернулли должен быть неотрицательным: {k}")
    f = chi.modulus
    order = k + 1
    # (e^{ft} - 1)/t = sum f^{n+1} t^n/(n+1)!
    denominator = QSeries.from_coefficients(
        [Fraction(f ** (n + 1), factorial(n + 1)) for n in range(order)], order
    )
    numerator = QSeries.from_coefficients(
        [Fraction(sum(chi(j) * j ** n for j in range(1, f + 1)), factorial(n)) for n in range(order)],
        order,
    )
    value = _egf_coefficient(numerator, denominator, k)
    logger.debug(f"🧮 B_({k},{f}) = {value}")
    return value


__all__ = [
    "NumberTheoryError",
    "UnsupportedCharacter",
    "kronecker",
    "CharacterId",
    "CHI_MINUS_4",
    "CHI_MINUS_2",
    "SUPPORTED_CHARACTERS",
    "DivisorSumVariant",
    "DivisorSumKind",
    "divisor_sum",
    "square_free_kernel",
    "bernoulli",
    "gen_bernoulli",
]
