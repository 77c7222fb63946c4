"""
Eisenstein Series
q-разложения E_k, E^inf_{k,chi}, E^0_{k,chi}, их линейные комбинации F_{k,m}
(делительная часть формулы для r(1^k m^k; n)) и проверки сдвига tau -> tau + 1/2.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from enum import Enum
from fractions import Fraction
from typing import List, Optional, Tuple

from services.arith_nt import (
    CHI_MINUS_2,
    CHI_MINUS_4,
    SUPPORTED_CHARACTERS,
    CharacterId,
    DivisorSumKind,
    DivisorSumVariant,
    UnsupportedCharacter,
    bernoulli,
    divisor_sum,
    gen_bernoulli,
)
from services.series_core import QSeries, add, agrees_with, half_shift, scale

logger = logging.getLogger(__name__)


class EisensteinError(ValueError):
    """Базовая ошибка модуля рядов Эйзенштейна"""


class ParityMismatch(EisensteinError):
    """Чётность веса не соответствует семейству"""


class WeightTooSmall(EisensteinError):
    """Вес меньше допустимого"""


class ConstantTermNotOne(EisensteinError):
    """Свободный член комбинации F_{k,m} не равен 1"""


class EisensteinFamily(Enum):
    """Семейства рядов Эйзенштейна"""
    LEVEL_ONE = "level_one"
    TWISTED_INF = "twisted_inf"
    TWISTED_0 = "twisted_0"


_DIVISOR_VARIANTS = {
    EisensteinFamily.LEVEL_ONE: DivisorSumVariant.PLAIN,
    EisensteinFamily.TWISTED_INF: DivisorSumVariant.TWISTED_INF,
    EisensteinFamily.TWISTED_0: DivisorSumVariant.TWISTED_0,
}


# ----------------------------- data model -----------------------------


@dataclass(frozen=True)
class EisensteinSpec:
    """Ряд Эйзенштейна веса weight, растянутый на dilation (tau -> t*tau)"""
    family: EisensteinFamily
    weight: int
    character: Optional[CharacterId] = None
    dilation: int = 1

    def __post_init__(self):
        if self.dilation < 1:
            raise EisensteinError(f"Растяжение должно быть положительным: {self.dilation}")
        if self.family is EisensteinFamily.LEVEL_ONE:
            if self.character is not None:
                raise EisensteinError("Ряд уровня 1 не имеет характера")
            if self.weight % 2:
                raise ParityMismatch(f"E_k уровня 1 требует чётного k, получено k = {self.weight}")
            # E_2 квазимодулярен, но как q-ряд допустим
            if self.weight < 2:
                raise WeightTooSmall(f"E_k уровня 1 требует k >= 2, получено k = {self.weight}")
            return
        if self.character not in SUPPORTED_CHARACTERS:
            raise UnsupportedCharacter(f"Скрученный ряд требует характер (-4/.) или (-2/.): {self.character}")
        if self.weight < 1:
            raise WeightTooSmall(f"Вес должен быть положительным: {self.weight}")
        if self.weight % 2 == 0:
            raise ParityMismatch(f"Нечётный характер требует нечётного k, получено k = {self.weight}")

    @property
    def bernoulli_number(self) -> Fraction:
        if self.family is EisensteinFamily.LEVEL_ONE:
            return bernoulli(self.weight)
        return gen_bernoulli(self.weight, self.character)

    @property
    def normalizer(self) -> Fraction:
        """-2k/B: множитель при делительной сумме"""
        return Fraction(-2 * self.weight) / self.bernoulli_number

    @property
    def constant_term(self) -> Fraction:
        if self.family is EisensteinFamily.TWISTED_0:
            return Fraction(1 if self.weight == 1 else 0)
        return Fraction(1)

    @property
    def divisor_kind(self) -> DivisorSumKind:
        return DivisorSumKind(_DIVISOR_VARIANTS[self.family], self.weight - 1, self.character)

    def dilated(self, t: int) -> "EisensteinSpec":
        return replace(self, dilation=self.dilation * t)

    @property
    def label(self) -> str:
        name = {
            EisensteinFamily.LEVEL_ONE: "E",
            EisensteinFamily.TWISTED_INF: "Einf",
            EisensteinFamily.TWISTED_0: "E0",
        }[self.family]
        text = f"{name}_{self.weight}"
        if self.character is not None:
            text += f"[{self.character.label}]"
        return f"{text}({self.dilation}tau)" if self.dilation != 1 else f"{text}(tau)"


@dataclass(frozen=True)
class FCombination:
    """
    F_{k,m} = normalization * sum coefficient * E(spec)

    Свободный член обязан быть равен 1, проверяется при построении.
    """
    m: int
    k: int
    terms: Tuple[Tuple[Fraction, EisensteinSpec], ...]
    normalization: Fraction = field(default=Fraction(1))

    def constant_term(self) -> Fraction:
        return self.normalization * sum((c * spec.constant_term for c, spec in self.terms), Fraction(0))

    def divisor_terms(self) -> List[Tuple[Fraction, DivisorSumKind, int]]:
        """Коэффициенты при sigma(n/scale) с уже внесёнными -2k/B и нормировкой"""
        return [
            (self.normalization * c * spec.normalizer, spec.divisor_kind, spec.dilation)
            for c, spec in self.terms
        ]


# ----------------------------- series -----------------------------


def eisenstein_series(spec: EisensteinSpec, order: int) -> QSeries:
    """q-разложение ряда Эйзенштейна до O(q^order), сразу с растяжением"""
    kind = spec.divisor_kind
    normalizer = spec.normalizer
    t = spec.dilation
    coeffs = [spec.constant_term]
    for n in range(1, order):
        if n % t:
            coeffs.append(Fraction(0))
        else:
            coeffs.append(normalizer * divisor_sum(kind, n // t))
    return QSeries.from_coefficients(coeffs, order)


def combination_series(combo: FCombination, order: int) -> QSeries:
    total = QSeries.zero(order)
    for c, spec in combo.terms:
        total = add(total, scale(eisenstein_series(spec, order), c))
    return scale(total, combo.normalization)


def _level_one(k: int, t: int = 1) -> EisensteinSpec:
    return EisensteinSpec(EisensteinFamily.LEVEL_ONE, k, None, t)


def _twisted_inf(k: int, chi: CharacterId, t: int = 1) -> EisensteinSpec:
    return EisensteinSpec(EisensteinFamily.TWISTED_INF, k, chi, t)


def _twisted_0(k: int, chi: CharacterId, t: int = 1) -> EisensteinSpec:
    return EisensteinSpec(EisensteinFamily.TWISTED_0, k, chi, t)


def f_combination(m: int, k: int) -> FCombination:
    """Линейная комбинация рядов Эйзенштейна для (theta(tau) theta(m tau))^k"""
    if k < 1:
        raise WeightTooSmall(f"k должно быть положительным: {k}")
    F = Fraction
    delta = 1 if k == 1 else 0
    if m == 1:
        if k % 2 == 0:
            s = (-1) ** (k // 2)
            terms = ((F(s), _level_one(k)), (F(-1 - s), _level_one(k, 2)), (F(2 ** k), _level_one(k, 4)))
            return FCombination(1, k, tuple(t for t in terms if t[0]), F(1, 2 ** k - 1))
        # sigma^0 в точке n, не n/4
        terms = (
            (F(1), _twisted_inf(k, CHI_MINUS_4)),
            (F((-1) ** ((k - 1) // 2) * 2 ** (k - 1)), _twisted_0(k, CHI_MINUS_4)),
        )
        return FCombination(1, k, terms, F(1, 1 + delta))
    if m == 2:
        if k % 2:
            terms = (
                (F(1), _twisted_inf(k, CHI_MINUS_2)),
                (F((-8) ** ((k - 1) // 2)), _twisted_0(k, CHI_MINUS_2)),
            )
            return FCombination(2, k, terms, F(1, 1 + delta))
        s = (-1) ** (k // 2)
        terms = (
            (F(s), _level_one(k)),
            (F(-s), _level_one(k, 2)),
            (F(-(2 ** (k // 2))), _level_one(k, 4)),
            (F(8 ** (k // 2)), _level_one(k, 8)),
        )
        return FCombination(2, k, terms, F(1, 2 ** (k // 2) * (2 ** k - 1)))
    if m == 4:
        if k == 1:
            # в формуле k = 1 характер везде (-4/.)
            terms = (
                (F(1), _twisted_inf(1, CHI_MINUS_4)),
                (F(-1), _twisted_inf(1, CHI_MINUS_4, 2)),
                (F(2), _twisted_inf(1, CHI_MINUS_4, 4)),
            )
            return FCombination(4, 1, terms, F(1, 2))
        if k % 2:
            s = (-1) ** ((k + 1) // 2)
            terms = (
                (F(s), _twisted_inf(k, CHI_MINUS_4)),
                (F(-s), _twisted_inf(k, CHI_MINUS_4, 2)),
                (F(2), _twisted_inf(k, CHI_MINUS_4, 4)),
                (F(-s), _twisted_0(k, CHI_MINUS_4)),
                (F(2 ** (k - 1)), _twisted_0(k, CHI_MINUS_4, 2)),
                (F(-(2 ** (2 * k - 1))), _twisted_0(k, CHI_MINUS_4, 4)),
            )
            return FCombination(4, k, terms, F(1, 2))
        s = (-1) ** (k // 2)
        terms = (
            (F(s), _level_one(k)),
            (F(-s), _level_one(k, 2)),
            (F(-(2 ** k)), _level_one(k, 8)),
            (F(4 ** k), _level_one(k, 16)),
        )
        return FCombination(4, k, terms, F(1, 2 ** k * (2 ** k - 1)))
    raise EisensteinError(f"m должно быть 1, 2 или 4; получено {m}")


def build_F(m: int, k: int, order: int) -> Tuple[FCombination, QSeries]:
    """
    Построить F_{k,m} и его q-разложение

    Raises:
        ConstantTermNotOne: свободный член не равен 1 (ошибка построения)
    """
    combo = f_combination(m, k)
    if combo.constant_term() != 1:
        raise ConstantTermNotOne(f"F_({k},{m}): свободный член {combo.constant_term()} != 1")
    series = combination_series(combo, order)
    if series.coefficient(0) != 1:
        raise ConstantTermNotOne(f"F_({k},{m}): свободный член ряда {series.coefficient(0)} != 1")
    logger.debug(f"🧮 F_({k},{m}) построен до O(q^{order})")
    return combo, series


# ----------------------------- tau -> tau + 1/2 -----------------------------


def half_period_rhs(spec: EisensteinSpec) -> List[Tuple[Fraction, int]]:
    """Правая часть тождества для E(tau + 1/2): [(коэффициент, растяжение), ...]"""
    k = spec.weight
    if spec.family is EisensteinFamily.LEVEL_ONE:
        return [(Fraction(-1), 1), (Fraction(2 ** k + 2), 2), (Fraction(-(2 ** k)), 4)]
    if spec.family is EisensteinFamily.TWISTED_INF:
        return [(Fraction(-1), 1), (Fraction(2), 2)]
    return [(Fraction(-1), 1), (Fraction(2 ** k), 2)]


def check_half_period(spec: EisensteinSpec, order: int) -> bool:
    """Проверить тождество для E(tau + 1/2) как тождество рядов при q -> -q"""
    if order < 8:
        raise EisensteinError(f"Порядок должен быть не меньше 8: {order}")
    base = replace(spec, dilation=1)
    lhs = half_shift(eisenstein_series(base, order))
    rhs = QSeries.zero(order)
    for c, t in half_period_rhs(base):
        rhs = add(rhs, scale(eisenstein_series(base.dilated(t), order), c))
    ok = agrees_with(lhs, rhs)
    if not ok:
        logger.error(f"❌ Тождество сдвига на 1/2 не выполнено для {base.label}")
    return ok
