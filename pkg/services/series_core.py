"""
Series Core
Усечённые формальные степенные ряды по q с точными рациональными коэффициентами.

Показатели хранятся в единицах 1/24 (префактор q^{1/24} у функции eta), поэтому
ряд q^{1/24}(1 - q - q^2 + ...) и обычный ряд по целым степеням q живут в одном типе.
Коэффициенты лежат на сетке offset24 + i*step24; всё, что между узлами сетки, равно нулю.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

Scalar = Union[int, Fraction]

EXPONENT_DENOMINATOR = 24


class SeriesError(ValueError):
    """Базовая ошибка арифметики рядов"""


class ZeroLeadingCoefficient(SeriesError):
    """Старший коэффициент равен нулю, ряд необратим"""


class NonIntegralSeries(SeriesError):
    """В ряде есть ненулевой коэффициент при дробной степени q"""


class BeyondTruncation(SeriesError):
    """Запрошен коэффициент за пределами известного порядка"""


class TruncationMismatch(SeriesError):
    """Попытка расширить порядок усечения"""


# ----------------------------- utils -----------------------------


def _ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _grid_length(offset24: int, order24: int, step24: int) -> int:
    return max(0, _ceil_div(order24 - offset24, step24))


def _common_denominator(coeffs: Sequence[Fraction]) -> Tuple[List[int], int]:
    """Привести коэффициенты к общему знаменателю: (числители, знаменатель)"""
    den = 1
    for c in coeffs:
        d = c.denominator
        if d != 1 and den % d:
            den = den * d // gcd(den, d)
    if den == 1:
        return [c.numerator for c in coeffs], 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _from_integers(values: Iterable[int], den: int = 1) -> Tuple[Fraction, ...]:
    if den == 1:
        return tuple(Fraction(v) for v in values)
    return tuple(Fraction(v, den) for v in values)


def rational_to_str(value: Scalar) -> str:
    """Рациональное число в виде "p/q" (или "p", если q = 1)"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rational_from_str(text: str) -> Fraction:
    """Обратное к rational_to_str; принимает только "p" и "p/q" """
    text = text.strip()
    if not text or any(ch not in "0123456789-/" for ch in text):
        raise ValueError(f"Некорректное рациональное число: '{text}'")
    return Fraction(text)


# ----------------------------- data model -----------------------------


@dataclass(frozen=True)
class QSeries:
    """
    Ряд sum_i coeffs[i] * q^{(offset24 + i*step24)/24} + O(q^{order24/24})

    Длина coeffs всегда равна числу узлов сетки ниже order24, так что
    известная часть ряда определяется тремя целыми числами и списком.
    """
    offset24: int
    coeffs: Tuple[Fraction, ...]
    order24: int
    step24: int = EXPONENT_DENOMINATOR

    def __post_init__(self):
        if self.step24 <= 0:
            raise SeriesError(f"Шаг сетки должен быть положительным, получено {self.step24}")
        expected = _grid_length(self.offset24, self.order24, self.step24)
        if len(self.coeffs) != expected:
            raise SeriesError(
                f"Число коэффициентов {len(self.coeffs)} не совпадает с сеткой ({expected})"
            )

    # ==================== КОНСТРУКТОРЫ ====================

    @classmethod
    def build(
        cls,
        offset24: int,
        coeffs: Iterable[Scalar],
        order24: int,
        step24: int = EXPONENT_DENOMINATOR,
    ) -> "QSeries":
        """Создать ряд, дополнив нулями или обрезав коэффициенты по order24"""
        n = _grid_length(offset24, order24, step24)
        values = [Fraction(c) for c in coeffs][:n]
        values.extend([Fraction(0)] * (n - len(values)))
        return cls(offset24, tuple(values), order24, step24)

    @classmethod
    def from_coefficients(cls, coeffs: Sequence[Scalar], order: int, offset: int = 0) -> "QSeries":
        """Ряд по целым степеням: coeffs[i] при q^{offset+i}, известен до O(q^order)"""
        return cls.build(offset * 24, coeffs, order * 24)

    @classmethod
    def constant(cls, value: Scalar, order24: int) -> "QSeries":
        return cls.build(0, [value], order24)

    @classmethod
    def zero(cls, order: int) -> "QSeries":
        return cls.build(0, [], order * 24)

    @classmethod
    def monomial(cls, value: Scalar, exponent24: int, order24: int) -> "QSeries":
        return cls.build(exponent24, [value], order24)

    # ==================== ДОСТУП ====================

    @property
    def order(self) -> Fraction:
        """Порядок усечения как рациональная степень q"""
        return Fraction(self.order24, 24)

    def terms24(self) -> Iterator[Tuple[int, Fraction]]:
        """Ненулевые члены: (показатель * 24, коэффициент) по возрастанию"""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.offset24 + i * self.step24, c

    def coefficient24(self, exponent24: int) -> Fraction:
        if exponent24 >= self.order24:
            raise BeyondTruncation(
                f"Коэффициент при q^({exponent24}/24) за пределами O(q^({self.order24}/24))"
            )
        shift = exponent24 - self.offset24
        if shift < 0 or shift % self.step24:
            return Fraction(0)
        return self.coeffs[shift // self.step24]

    def coefficient(self, n: int) -> Fraction:
        return self.coefficient24(n * 24)

    def valuation24(self) -> Optional[int]:
        """Показатель первого ненулевого члена (None для нулевого ряда)"""
        for e24, _ in self.terms24():
            return e24
        return None

    def is_integral(self) -> bool:
        return all(e24 % 24 == 0 for e24, _ in self.terms24())

    def integral_coefficients(self, count: Optional[int] = None) -> List[Fraction]:
        """Коэффициенты при q^0, q^1, ..., q^{count-1} (по умолчанию все известные)"""
        if not self.is_integral():
            raise NonIntegralSeries("Ряд содержит дробные степени q")
        known = _ceil_div(self.order24, 24)
        if count is None:
            count = known
        return [self.coefficient(n) for n in range(count)]

    # ==================== ОПЕРАТОРЫ ====================

    def _promote(self, other: Union["QSeries", Scalar]) -> "QSeries":
        if isinstance(other, QSeries):
            return other
        return QSeries.constant(other, self.order24)

    def __add__(self, other):
        return add(self, self._promote(other))

    __radd__ = __add__

    def __neg__(self):
        return scale(self, -1)

    def __sub__(self, other):
        return add(self, scale(self._promote(other), -1))

    def __rsub__(self, other):
        return add(self._promote(other), scale(self, -1))

    def __mul__(self, other):
        if isinstance(other, QSeries):
            return mul(self, other)
        return scale(self, other)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        return series_pow(self, e)

    def __str__(self) -> str:
        parts = []
        for e24, c in list(self.terms24())[:8]:
            exponent = rational_to_str(Fraction(e24, 24))
            parts.append(f"{rational_to_str(c)}*q^{exponent}")
        body = " + ".join(parts) if parts else "0"
        return f"{body} + O(q^{rational_to_str(self.order)})"


# ----------------------------- arithmetic -----------------------------


def _compact(offset24: int, values: List[Fraction], order24: int, step24: int) -> QSeries:
    """Укрупнить шаг сетки, если все ненулевые члены лежат на более редкой сетке"""
    g = 0
    for i, c in enumerate(values):
        if c and i:
            g = gcd(g, i)
            if g == 1:
                break
    if g > 1:
        step = step24 * g
        return QSeries.build(offset24, values[::g], order24, step)
    return QSeries(offset24, tuple(values), order24, step24)


def add(a: QSeries, b: QSeries) -> QSeries:
    """Почленная сумма; порядок равен минимальному из двух"""
    offset = min(a.offset24, b.offset24)
    order = min(a.order24, b.order24)
    step = gcd(gcd(a.step24, b.step24), abs(a.offset24 - b.offset24))
    n = _grid_length(offset, order, step)
    values = [Fraction(0)] * n
    for s in (a, b):
        base = (s.offset24 - offset) // step
        ratio = s.step24 // step
        for i, c in enumerate(s.coeffs):
            idx = base + i * ratio
            if idx >= n:
                break
            if c:
                values[idx] += c
    return _compact(offset, values, order, step)


def scale(a: QSeries, c: Scalar) -> QSeries:
    c = Fraction(c)
    return QSeries(a.offset24, tuple(x * c for x in a.coeffs), a.order24, a.step24)


def mul(a: QSeries, b: QSeries) -> QSeries:
    """Произведение Коши, усечённое по наименьшему гарантированному порядку"""
    offset = a.offset24 + b.offset24
    order = min(a.offset24 + b.order24, b.offset24 + a.order24)
    step = gcd(a.step24, b.step24)
    n = _grid_length(offset, order, step)
    left, den_a = _common_denominator(a.coeffs)
    right, den_b = _common_denominator(b.coeffs)
    ra, rb = a.step24 // step, b.step24 // step
    out = [0] * n
    for i, x in enumerate(left):
        pos = i * ra
        if pos >= n:
            break
        if not x:
            continue
        limit = min(len(right), _ceil_div(n - pos, rb))
        for j in range(limit):
            y = right[j]
            if y:
                out[pos + j * rb] += x * y
    return QSeries(offset, _from_integers(out, den_a * den_b), order, step)


def _drop_leading_zeros(a: QSeries) -> QSeries:
    """Тот же ряд, но сетка начинается с первого ненулевого члена"""
    v = a.valuation24()
    if v is None:
        raise ZeroLeadingCoefficient(f"Ряд равен нулю до O(q^({a.order24}/24)), обратного нет")
    if v == a.offset24:
        return a
    return QSeries(v, a.coeffs[(v - a.offset24) // a.step24:], a.order24, a.step24)


def inverse(a: QSeries) -> QSeries:
    """
    Обратный ряд: a * inverse(a) = 1 + O(q^order)

    Ведущие нули отбрасываются: для a = c q^v + ... результат начинается с q^{-v}/c.
    """
    a = _drop_leading_zeros(a)
    values, den = _common_denominator(a.coeffs)
    n = len(values)
    a0 = values[0]
    # b_t * a0^(t+1) целые: B_t = -sum_{i=1..t} A_i * a0^(i-1) * B_{t-i}
    powers = [1] * (n + 1)
    for i in range(1, n + 1):
        powers[i] = powers[i - 1] * a0
    scaled = [values[i] * powers[i - 1] if i else 0 for i in range(n)]
    inv = [0] * n
    inv[0] = 1
    for t in range(1, n):
        s = 0
        for i in range(1, t + 1):
            x = scaled[i]
            if x:
                s += x * inv[t - i]
        inv[t] = -s
    coeffs = tuple(Fraction(den * inv[t], powers[t + 1]) for t in range(n))
    offset = -a.offset24
    return QSeries(offset, coeffs, offset + (a.order24 - a.offset24), a.step24)


def series_pow(a: QSeries, e: int) -> QSeries:
    """Целая степень (бинарное возведение; отрицательная через inverse)"""
    if e == 0:
        return QSeries.constant(1, a.order24 - a.offset24)
    base = inverse(a) if e < 0 else a
    e = abs(e)
    result: Optional[QSeries] = None
    while e:
        if e & 1:
            result = base if result is None else mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def dilate(a: QSeries, t: int) -> QSeries:
    """f(tau) -> f(t*tau), то есть q -> q^t"""
    if t < 1:
        raise SeriesError(f"Коэффициент растяжения должен быть положительным, получено {t}")
    return QSeries(a.offset24 * t, a.coeffs, a.order24 * t, a.step24 * t)


def half_shift(a: QSeries) -> QSeries:
    """tau -> tau + 1/2, то есть q -> -q (только для рядов по целым степеням)"""
    values = []
    for i, c in enumerate(a.coeffs):
        exponent24 = a.offset24 + i * a.step24
        if c and exponent24 % 24:
            raise NonIntegralSeries(f"Ненулевой коэффициент при q^({exponent24}/24)")
        values.append(-c if c and (exponent24 // 24) % 2 else c)
    return QSeries(a.offset24, tuple(values), a.order24, a.step24)


def shift(a: QSeries, exponent24: int) -> QSeries:
    """Умножение на q^{exponent24/24}"""
    return QSeries(a.offset24 + exponent24, a.coeffs, a.order24 + exponent24, a.step24)


def truncate(a: QSeries, order24: int) -> QSeries:
    if order24 > a.order24:
        raise TruncationMismatch(f"Нельзя поднять порядок с {a.order24}/24 до {order24}/24")
    n = _grid_length(a.offset24, order24, a.step24)
    return QSeries(a.offset24, a.coeffs[:n], order24, a.step24)


def coefficient(a: QSeries, n: int) -> Fraction:
    return a.coefficient(n)


def first_difference(a: QSeries, b: QSeries) -> Optional[Fraction]:
    """Наименьший показатель, где ряды расходятся (в пределах общего порядка)"""
    e24 = (a - b).valuation24()
    return None if e24 is None else Fraction(e24, 24)


def agrees_with(a: QSeries, b: QSeries) -> bool:
    return first_difference(a, b) is None


# ----------------------------- serialization -----------------------------


def to_pairs(a: QSeries) -> List[Tuple[int, str]]:
    """[(числитель показателя над 24, "p/q"), ...] по возрастанию показателя"""
    return [(e24, rational_to_str(c)) for e24, c in a.terms24()]


def from_pairs(pairs: Iterable[Tuple[int, str]], order24: int) -> QSeries:
    pairs = sorted((int(e24), rational_from_str(str(c))) for e24, c in pairs)
    offset = pairs[0][0] if pairs else 0
    step = 0
    for e24, _ in pairs:
        step = gcd(step, e24 - offset)
    step = step or EXPONENT_DENOMINATOR
    n = _grid_length(offset, order24, step)
    values = [Fraction(0)] * n
    for e24, c in pairs:
        idx = (e24 - offset) // step
        if idx < n:
            values[idx] = c
    return QSeries(offset, tuple(values), order24, step)
