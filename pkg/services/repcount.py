"""
Representation Counts
Числа представлений r(1^k m^k; n) формой x_1^2 + ... + x_k^2 + m(x_{k+1}^2 + ... + x_{2k}^2):
перебор (эталон), тета-ряд, производящий ряд (theta(tau) theta(m tau))^k,
ряд x_m и корректирующие ряды a_{j,k,m}.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import List, Tuple

from services.eta_quotients import correction_quotient, quotient_expand, x_quotient
from services.series_core import QSeries, dilate, first_difference, mul, series_pow, truncate

logger = logging.getLogger(__name__)

SUPPORTED_M = (1, 2, 4)


class RepresentationError(ValueError):
    """Базовая ошибка модуля чисел представлений"""


class InvalidFormSpec(RepresentationError):
    """Недопустимые k или m"""


class CountIntegrityError(RepresentationError):
    """Производящий ряд дал отрицательный или дробный коэффициент"""


class CorrectionMismatch(CountIntegrityError):
    """Два способа вычисления a_{j,k,m} расходятся"""


@dataclass(frozen=True)
class FormSpec:
    """Форма с k единичными и k квадратами с коэффициентом m"""
    k: int
    m: int

    def __post_init__(self):
        if self.k < 1:
            raise InvalidFormSpec(f"k должно быть положительным: {self.k}")
        if self.m not in SUPPORTED_M:
            raise InvalidFormSpec(f"m должно быть одним из {SUPPORTED_M}, получено {self.m}")

    @property
    def variables(self) -> int:
        return 2 * self.k

    @property
    def weights(self) -> Tuple[int, ...]:
        return (1,) * self.k + (self.m,) * self.k

    def __str__(self) -> str:
        return f"(k={self.k}, m={self.m})"


# ----------------------------- brute force -----------------------------


def _square_counts(limit: int, weight: int) -> List[int]:
    """Число целых t с weight * t^2 = n для n = 0..limit"""
    counts = [0] * (limit + 1)
    counts[0] = 1
    t = 1
    while weight * t * t <= limit:
        counts[weight * t * t] += 2
        t += 1
    return counts


@lru_cache(maxsize=64)
def _brute_table(spec: FormSpec, limit: int) -> Tuple[int, ...]:
    table = [0] * (limit + 1)
    table[0] = 1
    for weight in spec.weights:
        squares = [(s, c) for s, c in enumerate(_square_counts(limit, weight)) if c]
        step = [0] * (limit + 1)
        for n, value in enumerate(table):
            if not value:
                continue
            for s, c in squares:
                if n + s > limit:
                    break
                step[n + s] += value * c
        table = step
    return tuple(table)


def brute_counts(spec: FormSpec, limit: int) -> List[int]:
    """r(1^k m^k; n) для n = 0..limit послойной свёрткой по одной переменной"""
    if limit < 0:
        raise RepresentationError(f"n должно быть неотрицательным: {limit}")
    return list(_brute_table(spec, limit))


def brute_count(spec: FormSpec, n: int) -> int:
    if n < 0:
        raise RepresentationError(f"n должно быть неотрицательным: {n}")
    return _brute_table(spec, n)[n]


def enumerate_count(spec: FormSpec, n: int) -> int:
    """Прямой перебор целых наборов (независимая проверка свёртки, для малых n)"""
    if n < 0:
        raise RepresentationError(f"n должно быть неотрицательным: {n}")
    weights = spec.weights

    def walk(index: int, remaining: int) -> int:
        if index == len(weights):
            return 1 if remaining == 0 else 0
        weight = weights[index]
        bound = isqrt(remaining // weight)
        total = 0
        for x in range(-bound, bound + 1):
            total += walk(index + 1, remaining - weight * x * x)
        return total

    return walk(0, n)


# ----------------------------- series -----------------------------


def theta_series(order: int) -> QSeries:
    """theta(tau) = 1 + 2 sum q^{n^2} + O(q^order)"""
    if order < 1:
        raise RepresentationError(f"Порядок должен быть положительным: {order}")
    coeffs = [0] * order
    coeffs[0] = 1
    t = 1
    while t * t < order:
        coeffs[t * t] = 2
        t += 1
    return QSeries.from_coefficients(coeffs, order)


def gen_series(spec: FormSpec, order: int) -> QSeries:
    """
    (theta(tau) theta(m tau))^k + O(q^order)

    Raises:
        CountIntegrityError: если коэффициент не является неотрицательным целым
    """
    theta = theta_series(order)
    product = mul(theta, dilate(theta, spec.m))
    series = series_pow(product, spec.k)
    for n, c in enumerate(series.integral_coefficients()):
        if c.denominator != 1 or c < 0:
            raise CountIntegrityError(f"{spec}: коэффициент при q^{n} равен {c}")
    return series


def x_series(m: int, order: int) -> QSeries:
    """x_m(tau) как эта-частное; ведущий член q"""
    if order < 2:
        raise RepresentationError(f"Порядок x_m должен быть не меньше 2: {order}")
    return quotient_expand(x_quotient(m), order)


def _correction_product(j: int, spec: FormSpec, order: int) -> QSeries:
    product = mul(gen_series(spec, order), series_pow(x_series(spec.m, order), j))
    return truncate(product, 24 * order)


def correction_series(j: int, spec: FormSpec, order: int) -> QSeries:
    """
    sum a_{j,k,m}(n) q^n = (theta(tau) theta(m tau))^k * x_m^j

    Произведение рядов сверяется с разложением объединённого эта-частного.

    Raises:
        CorrectionMismatch: если два способа расходятся
    """
    if j < 1:
        raise RepresentationError(f"j должно быть положительным: {j}")
    direct = _correction_product(j, spec, order)
    merged = correction_series_via_eta(j, spec, order)
    mismatch = first_difference(direct, merged)
    if mismatch is not None:
        raise CorrectionMismatch(f"a_({j},{spec.k},{spec.m}): расхождение при q^{mismatch}")
    return direct


def correction_series_via_eta(j: int, spec: FormSpec, order: int) -> QSeries:
    """Тот же ряд через разложение объединённого эта-частного"""
    if j < 1:
        raise RepresentationError(f"j должно быть положительным: {j}")
    return quotient_expand(correction_quotient(j, spec.k, spec.m), order)
