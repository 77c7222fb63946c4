"""
Eta Quotients
Эта-частные prod_{d|N} eta(d*tau)^{r_d}: построение, q-разложение,
условия модулярности на Gamma_0(N), характер, ширины касповых точек
и порядок обращения в ноль в каспе a/c (формула Лигоза).
"""
from __future__ import annotations

import logging
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Dict, List, Mapping, Optional, Tuple

from services.arith_nt import kronecker, square_free_kernel
from services.series_core import QSeries, dilate, mul, series_pow, shift, truncate

logger = logging.getLogger(__name__)

_QUOTIENT_PATTERN = re.compile(r"^\d+:-?\d+(,\d+:-?\d+)*$")


class EtaQuotientError(ValueError):
    """Базовая ошибка модуля эта-частных"""


class InvalidEtaQuotient(EtaQuotientError):
    """Некорректная запись эта-частного"""


class InvalidCusp(EtaQuotientError):
    """Некорректная касповая точка"""


class ConditionsNotMet(EtaQuotientError):
    """Не выполнены условия модулярности на Gamma_0(N)"""


# ----------------------------- data model -----------------------------


@dataclass(frozen=True)
class EtaQuotient:
    """Эта-частное уровня level: пары (d, r_d) по возрастанию d, r_d != 0"""
    level: int
    exponents: Tuple[Tuple[int, int], ...]

    def __post_init__(self):
        if self.level < 1:
            raise InvalidEtaQuotient(f"Уровень должен быть положительным: {self.level}")
        previous = 0
        for d, r in self.exponents:
            if d <= previous:
                raise InvalidEtaQuotient("Делители должны идти строго по возрастанию")
            if self.level % d:
                raise InvalidEtaQuotient(f"{d} не делит уровень {self.level}")
            if r == 0:
                raise InvalidEtaQuotient(f"Нулевой показатель при d = {d}")
            previous = d

    @classmethod
    def from_map(cls, level: int, mapping: Mapping[int, int]) -> "EtaQuotient":
        items = tuple(sorted((int(d), int(r)) for d, r in mapping.items() if r))
        return cls(level, items)

    @classmethod
    def parse(cls, text: str, level: Optional[int] = None) -> "EtaQuotient":
        """Разбор строки вида "1:-2,2:3,4:3,8:-2" (по умолчанию уровень равен НОК делителей)"""
        text = text.strip()
        if not _QUOTIENT_PATTERN.match(text):
            raise InvalidEtaQuotient(f"Ожидается формат 'd:r,d:r,...', получено '{text}'")
        mapping: Dict[int, int] = {}
        for chunk in text.split(","):
            d, r = (int(x) for x in chunk.split(":"))
            if d < 1:
                raise InvalidEtaQuotient(f"Делитель должен быть положительным: {d}")
            if d in mapping:
                raise InvalidEtaQuotient(f"Делитель {d} указан дважды")
            mapping[d] = r
        if level is None:
            level = 1
            for d in mapping:
                level = lcm(level, d)
        return cls.from_map(level, mapping)

    def to_text(self) -> str:
        return ",".join(f"{d}:{r}" for d, r in self.exponents)

    def as_dict(self) -> Dict[int, int]:
        return dict(self.exponents)

    def r(self, d: int) -> int:
        return self.as_dict().get(d, 0)

    @property
    def weight(self) -> Fraction:
        return Fraction(sum(r for _, r in self.exponents), 2)

    @property
    def prefactor24(self) -> int:
        """Числитель степени q^{sum d r_d / 24} перед произведением"""
        return sum(d * r for d, r in self.exponents)

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        merged = self.as_dict()
        for d, r in other.exponents:
            merged[d] = merged.get(d, 0) + r
        return EtaQuotient.from_map(lcm(self.level, other.level), merged)

    def __pow__(self, e: int) -> "EtaQuotient":
        return EtaQuotient.from_map(self.level, {d: r * e for d, r in self.exponents})

    def dilate(self, t: int) -> "EtaQuotient":
        """f(tau) -> f(t*tau)"""
        return EtaQuotient.from_map(self.level * t, {d * t: r for d, r in self.exponents})


@dataclass(frozen=True)
class CuspLabel:
    """Касп a/c группы Gamma_0(N)"""
    a: int
    c: int
    level: int

    def __post_init__(self):
        if self.c < 1 or self.level % self.c:
            raise InvalidCusp(f"Знаменатель {self.c} должен делить уровень {self.level}")
        if gcd(self.a, self.c) != 1:
            raise InvalidCusp(f"gcd({self.a}, {self.c}) != 1")

    @classmethod
    def parse(cls, text: str, level: int) -> "CuspLabel":
        match = re.match(r"^\s*(-?\d+)\s*/\s*(\d+)\s*$", text)
        if not match:
            raise InvalidCusp(f"Ожидается касп вида 'a/c', получено '{text}'")
        return cls(int(match.group(1)), int(match.group(2)), level)

    @property
    def width(self) -> int:
        return cusp_width(self.c, self.level)

    def __str__(self) -> str:
        return f"{self.a}/{self.c}"


@dataclass(frozen=True)
class GammaZeroReport:
    """Результат проверки условий модулярности эта-частного"""
    level: int
    sum_d_rd_mod24: int
    sum_Nd_rd_mod24: int
    passes: bool
    character_s: Fraction
    weight: Fraction
    character_kernel: Optional[int]

    @property
    def weight_is_integral(self) -> bool:
        return self.weight.denominator == 1


@dataclass(frozen=True)
class CuspOrderRow:
    name: str
    quotient: EtaQuotient
    cusp: CuspLabel
    order: Fraction
    width: int


# ----------------------------- expansions -----------------------------


def euler_product(order: int) -> QSeries:
    """prod_{j>=1} (1 - q^j) + O(q^order) по пентагональной теореме Эйлера"""
    if order < 1:
        raise EtaQuotientError(f"Порядок должен быть положительным: {order}")
    coeffs = [0] * order
    coeffs[0] = 1
    k = 1
    while True:
        first = k * (3 * k - 1) // 2
        if first >= order:
            break
        sign = -1 if k % 2 else 1
        coeffs[first] += sign
        second = k * (3 * k + 1) // 2
        if second < order:
            coeffs[second] += sign
        k += 1
    return QSeries.from_coefficients(coeffs, order)


def eta_expand(order: int) -> QSeries:
    """eta(tau) = q^{1/24} prod (1 - q^j); известно до q^{order + 1/24}"""
    return shift(euler_product(order), 1)


def quotient_expand(f: EtaQuotient, order: int) -> QSeries:
    """q-разложение эта-частного до O(q^order)"""
    if order < 1:
        raise EtaQuotientError(f"Порядок должен быть положительным: {order}")
    target = 24 * order
    relative = max(1, -(-(target - f.prefactor24) // 24))
    base = euler_product(relative)
    product = QSeries.constant(1, 24 * relative)
    for d, r in f.exponents:
        product = mul(product, series_pow(dilate(base, d), r))
    result = shift(product, f.prefactor24)
    if result.order24 > target:
        result = truncate(result, target)
    return result


# ----------------------------- modularity -----------------------------


def check_gamma0_conditions(f: EtaQuotient) -> GammaZeroReport:
    """Условия sum d r_d = 0 и sum (N/d) r_d = 0 (mod 24), а также s = prod d^{r_d}"""
    N = f.level
    first = f.prefactor24 % 24
    second = sum((N // d) * r for d, r in f.exponents) % 24
    s = Fraction(1)
    for d, r in f.exponents:
        s *= Fraction(d) ** r
    weight = f.weight
    kernel = None
    if weight.denominator == 1:
        kernel = square_free_kernel(s * (-1) ** int(weight))
    return GammaZeroReport(
        level=N,
        sum_d_rd_mod24=first,
        sum_Nd_rd_mod24=second,
        passes=first == 0 and second == 0,
        character_s=s,
        weight=weight,
        character_kernel=kernel,
    )


def eta_character(f: EtaQuotient, d: int) -> int:
    """chi(d) = (((-1)^k s)/d) для d, взаимно простого с уровнем"""
    report = check_gamma0_conditions(f)
    if not report.weight_is_integral:
        raise ConditionsNotMet(f"Вес {report.weight} не целый, характер не определён")
    if gcd(d, f.level) != 1:
        raise EtaQuotientError(f"d = {d} должно быть взаимно просто с уровнем {f.level}")
    s = report.character_s
    sign = (-1) ** int(report.weight)
    return kronecker(sign * s.numerator * s.denominator, d)


def cusp_width(c: int, N: int) -> int:
    """Ширина каспа a/c на Gamma_0(N): N / gcd(c^2, N)"""
    if c < 1 or N % c:
        raise InvalidCusp(f"{c} не делит {N}")
    return N // gcd(c * c, N)


def ligozat_order(f: EtaQuotient, cusp: CuspLabel) -> Fraction:
    """
    Порядок обращения в ноль эта-частного в каспе a/c:
    (N/24) * sum_d gcd(c,d)^2 r_d / (gcd(c, N/c) c d)

    Raises:
        ConditionsNotMet: если эта-частное не удовлетворяет условиям на Gamma_0(N)
    """
    if cusp.level != f.level:
        raise InvalidCusp(f"Касп задан на уровне {cusp.level}, а эта-частное на уровне {f.level}")
    report = check_gamma0_conditions(f)
    if not report.passes:
        raise ConditionsNotMet(
            f"sum d r_d = {report.sum_d_rd_mod24}, sum (N/d) r_d = {report.sum_Nd_rd_mod24} (mod 24)"
        )
    N, c = f.level, cusp.c
    inner = gcd(c, N // c)
    total = sum(Fraction(gcd(c, d) ** 2 * r, inner * c * d) for d, r in f.exponents)
    return Fraction(N, 24) * total


# ----------------------------- named quotients -----------------------------


def theta_quotient() -> EtaQuotient:
    """theta(tau) = eta_2^5 / (eta_1^2 eta_4^2)"""
    return EtaQuotient.from_map(4, {1: -2, 2: 5, 4: -2})


def theta_product_quotient(m: int) -> EtaQuotient:
    """theta(tau) theta(m tau) на уровне 4m"""
    theta = theta_quotient()
    return theta * theta.dilate(m)


_X_QUOTIENTS = {
    1: (4, {1: 24, 2: -48, 4: 24}),
    2: (8, {1: 8, 2: -8, 4: -8, 8: 8}),
    4: (16, {1: 4, 2: -6, 4: 4, 8: -6, 16: 4}),
}


def x_quotient(m: int) -> EtaQuotient:
    """x_m: обратная величина к хауптмодулю Gamma_0(4m)^+"""
    if m not in _X_QUOTIENTS:
        raise InvalidEtaQuotient(f"x_m определено только для m = 1, 2, 4; получено {m}")
    level, mapping = _X_QUOTIENTS[m]
    return EtaQuotient.from_map(level, mapping)


def correction_quotient(j: int, k: int, m: int) -> EtaQuotient:
    """(theta(tau) theta(m tau))^k * x_m^j"""
    return theta_product_quotient(m) ** k * x_quotient(m) ** j


def cusp_order_table() -> List[CuspOrderRow]:
    """Порядки theta*theta(m tau) и x_m в каспах 1/2 и 1/4"""
    rows = []
    for name, quotient, cusp_text in (
        ("theta*theta(2tau)", theta_product_quotient(2), "1/2"),
        ("theta*theta(4tau)", theta_product_quotient(4), "1/2"),
        ("theta*theta(4tau)", theta_product_quotient(4), "1/4"),
        ("x_2", x_quotient(2), "1/2"),
        ("x_4", x_quotient(4), "1/2"),
        ("x_4", x_quotient(4), "1/4"),
    ):
        cusp = CuspLabel.parse(cusp_text, quotient.level)
        rows.append(CuspOrderRow(name, quotient, cusp, ligozat_order(quotient, cusp), cusp.width))
    return rows
