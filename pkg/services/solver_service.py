"""
Сервис вывода формул для r(1^k m^k; n)
Находит коэффициенты c_{j,k,m} треугольным исключением, собирает формулу
(делительные суммы + поправки a_{j,k,m}), вычисляет её и проверяет тождество
(theta(tau) theta(m tau))^k = F_{k,m} + (theta(tau) theta(m tau))^k sum c_j x_m^j.
"""
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, ValidationError, field_validator

from services.arith_nt import (
    CharacterId,
    DivisorSumKind,
    DivisorSumVariant,
    divisor_sum,
)
from services.eisenstein import FCombination, build_F
from services.repcount import FormSpec, gen_series, x_series
from services.series_core import (
    QSeries,
    add,
    inverse,
    mul,
    rational_from_str,
    rational_to_str,
    scale,
    series_pow,
    truncate,
)

logger = logging.getLogger(__name__)

# Запас коэффициентов сверх ell для проверки остатка
RESIDUAL_SLACK = 10

CorrectionProvider = Callable[[int, int], Fraction]


class SolverError(ValueError):
    """Базовая ошибка решателя"""


class ResidualNonzero(SolverError):
    """После вычитания поправок остаток не обнулился"""

    def __init__(self, message: str, first_failing_n: int):
        super().__init__(message)
        self.first_failing_n = first_failing_n


class NotUnitTriangular(SolverError):
    """Матрица [a_i(j)] не является нижней унитреугольной"""


class NonIntegerResult(SolverError):
    """Значение формулы не целое"""


_VARIANT_RANK = {
    DivisorSumVariant.PLAIN: 0,
    DivisorSumVariant.TWISTED_INF: 1,
    DivisorSumVariant.TWISTED_0: 2,
}


def ell(k: int, m: int) -> int:
    """Число поправочных членов ell_m (для k = 1, m = 4 формула даёт -1, берём 0)"""
    if k < 1:
        raise SolverError(f"k должно быть положительным: {k}")
    if m == 1:
        return (k - 1) // 4
    if m == 2:
        return (k - 1) // 2 if k % 2 else (k - 2) // 2
    if m == 4:
        return max(0, k - 2) if k % 2 else k - 1
    raise SolverError(f"m должно быть 1, 2 или 4; получено {m}")


# ----------------------------- formula -----------------------------


@dataclass(frozen=True)
class EisensteinTerm:
    """coeff * sigma_kind(n / scale)"""
    coeff: Fraction
    kind: DivisorSumKind
    scale: int

    def sort_key(self) -> Tuple[int, int, int, int]:
        discriminant = self.kind.character.discriminant if self.kind.character else 0
        return (_VARIANT_RANK[self.kind.variant], self.kind.weight, -discriminant, self.scale)

    def argument(self) -> str:
        return "n" if self.scale == 1 else f"n/{self.scale}"


class _TermPayload(BaseModel):
    coeff: str
    kind: Literal["sigma", "sigma_inf", "sigma_0"]
    weight: int = Field(ge=0)
    character: Optional[Literal[-2, -4]] = None
    scale: int = Field(ge=1)

    @field_validator("coeff")
    @classmethod
    def _rational(cls, value: str) -> str:
        rational_from_str(value)
        return value


class _CorrectionPayload(BaseModel):
    j: int = Field(ge=1)
    c: str

    @field_validator("c")
    @classmethod
    def _rational(cls, value: str) -> str:
        rational_from_str(value)
        return value


class _FormulaPayload(BaseModel):
    k: int = Field(ge=1)
    m: Literal[1, 2, 4]
    ell: int = Field(ge=0)
    eisenstein_terms: List[_TermPayload]
    corrections: List[_CorrectionPayload]


@dataclass(frozen=True)
class RepFormula:
    """
    r(1^k m^k; n) = sum coeff * sigma_kind(n/scale) + sum_{j=1..ell} c_j * a_{j,k,m}(n)

    Нулевые c_j сохраняются: длина corrections всегда равна ell.
    """
    k: int
    m: int
    eisenstein_terms: Tuple[EisensteinTerm, ...]
    corrections: Tuple[Tuple[int, Fraction], ...]
    ell: int

    def __post_init__(self):
        if [j for j, _ in self.corrections] != list(range(1, self.ell + 1)):
            raise SolverError(f"Поправки должны идти по j = 1..{self.ell}")

    @property
    def coefficients(self) -> List[Fraction]:
        return [c for _, c in self.corrections]

    # ==================== СЕРИАЛИЗАЦИЯ ====================

    def to_dict(self) -> Dict:
        return {
            "k": self.k,
            "m": self.m,
            "ell": self.ell,
            "eisenstein_terms": [
                {
                    "coeff": rational_to_str(t.coeff),
                    "kind": t.kind.variant.value,
                    "weight": t.kind.weight,
                    "character": t.kind.character.discriminant if t.kind.character else None,
                    "scale": t.scale,
                }
                for t in self.eisenstein_terms
            ],
            "corrections": [{"j": j, "c": rational_to_str(c)} for j, c in self.corrections],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False, indent=2)

    @classmethod
    def from_dict(cls, data: Dict) -> "RepFormula":
        try:
            payload = _FormulaPayload.model_validate(data)
        except ValidationError as e:
            raise SolverError(f"Некорректное описание формулы: {e}") from e
        terms = []
        for t in payload.eisenstein_terms:
            character = CharacterId.from_discriminant(t.character) if t.character is not None else None
            kind = DivisorSumKind(DivisorSumVariant(t.kind), t.weight, character)
            terms.append(EisensteinTerm(rational_from_str(t.coeff), kind, t.scale))
        corrections = tuple((c.j, rational_from_str(c.c)) for c in payload.corrections)
        return cls(payload.k, payload.m, tuple(terms), corrections, payload.ell)

    @classmethod
    def from_json(cls, text: str) -> "RepFormula":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        """4*sigma_3(n) - 4*sigma_3(n/2) - ... + 4*a(1)"""
        parts: List[Tuple[Fraction, str]] = [
            (t.coeff, f"{t.kind.label}({t.argument()})") for t in self.eisenstein_terms
        ]
        parts.extend((c, f"a({j})") for j, c in self.corrections)
        text = ""
        for i, (coeff, body) in enumerate(parts):
            sign = "-" if coeff < 0 else "+"
            magnitude = abs(coeff)
            term = body if magnitude == 1 else f"{rational_to_str(magnitude)}*{body}"
            if i == 0:
                text = f"-{term}" if sign == "-" else term
            else:
                text += f" {sign} {term}"
        return text or "0"


def formula_from_combination(combo: FCombination, coefficients: List[Fraction]) -> RepFormula:
    """Собрать RepFormula: свести sigma^0 веса 0 к sigma^inf, сложить подобные, убрать нули"""
    merged: Dict[Tuple[DivisorSumKind, int], Fraction] = {}
    for coeff, kind, t in combo.divisor_terms():
        key = (kind.canonical(), t)
        merged[key] = merged.get(key, Fraction(0)) + coeff
    terms = sorted(
        (EisensteinTerm(c, kind, t) for (kind, t), c in merged.items() if c),
        key=EisensteinTerm.sort_key,
    )
    corrections = tuple((j, Fraction(c)) for j, c in enumerate(coefficients, start=1))
    return RepFormula(combo.k, combo.m, tuple(terms), corrections, len(coefficients))


def evaluate_formula(
    formula: RepFormula,
    n: int,
    correction_values: Optional[CorrectionProvider] = None,
) -> int:
    """
    Значение формулы в n

    Args:
        formula: формула
        n: неотрицательное целое
        correction_values: (j, n) -> a_{j,k,m}(n); нужен, только если ell > 0

    Raises:
        NonIntegerResult: итоговая сумма не целая
    """
    if n < 0:
        raise SolverError(f"n должно быть неотрицательным: {n}")
    if n == 0:
        return 1
    total = Fraction(0)
    for term in formula.eisenstein_terms:
        total += term.coeff * divisor_sum(term.kind, Fraction(n, term.scale))
    for j, c in formula.corrections:
        if not c:
            continue
        if correction_values is None:
            raise SolverError(f"Для n = {n} нужны значения a_({j},{formula.k},{formula.m})")
        total += c * correction_values(j, n)
    if total.denominator != 1:
        raise NonIntegerResult(f"r(1^{formula.k} {formula.m}^{formula.k}; {n}) = {total} не целое")
    return total.numerator


# ----------------------------- verification -----------------------------


@dataclass(frozen=True)
class VerificationReport:
    """Результат проверки тождества для одного (k, m)"""
    k: int
    m: int
    order: int
    ell: int
    ok: bool
    first_mismatch: Optional[int]
    coefficients: List[Fraction] = field(default_factory=list)
    pole_order: Optional[int] = None

    def to_dict(self) -> Dict:
        return {
            "k": self.k,
            "m": self.m,
            "order": self.order,
            "ell": self.ell,
            "ok": self.ok,
            "first_mismatch": self.first_mismatch,
            "coefficients": [rational_to_str(c) for c in self.coefficients],
            "pole_order": self.pole_order,
        }


@dataclass
class _Expansions:
    gen: QSeries
    combo: FCombination
    F: QSeries
    corrections: List[QSeries]


def _first_nonzero_integral(series: QSeries) -> Optional[int]:
    e24 = series.valuation24()
    return None if e24 is None else e24 // 24


class FormulaSolverService:
    """Вывод и проверка формул; разложения кэшируются по (k, m, order)"""

    def __init__(self):
        self._cache: Dict[Tuple[int, int, int], _Expansions] = {}

    def _check_order(self, spec: FormSpec, order: int) -> int:
        needed = ell(spec.k, spec.m)
        if order <= needed + RESIDUAL_SLACK:
            raise SolverError(
                f"Порядок {order} слишком мал для {spec}: нужно больше {needed + RESIDUAL_SLACK}"
            )
        return needed

    def expansions(self, spec: FormSpec, order: int) -> _Expansions:
        key = (spec.k, spec.m, order)
        cached = self._cache.get(key)
        if cached is not None:
            return cached
        needed = self._check_order(spec, order)
        logger.info(f"🧮 Разложения для {spec} до O(q^{order})")
        gen = gen_series(spec, order)
        combo, F = build_F(spec.m, spec.k, order)
        corrections = []
        if needed:
            x = x_series(spec.m, order)
            current = gen
            for _ in range(needed):
                current = truncate(mul(current, x), 24 * order)
                corrections.append(current)
        result = _Expansions(gen, combo, F, corrections)
        self._cache[key] = result
        return result

    def correction_provider(self, spec: FormSpec, order: int) -> CorrectionProvider:
        corrections = self.expansions(spec, order).corrections

        def provide(j: int, n: int) -> Fraction:
            if not 1 <= j <= len(corrections):
                raise SolverError(f"a_({j},{spec.k},{spec.m}) не входит в формулу")
            return corrections[j - 1].coefficient(n)

        return provide

    # ==================== РЕШЕНИЕ ====================

    def residual(self, spec: FormSpec, coefficients: List[Fraction], order: int) -> QSeries:
        """gen - F - sum c_j a_j"""
        data = self.expansions(spec, order)
        rest = add(data.gen, scale(data.F, -1))
        for c, a in zip(coefficients, data.corrections):
            if c:
                rest = add(rest, scale(a, -c))
        return rest

    def _assert_unit_triangular(self, spec: FormSpec, corrections: List[QSeries]):
        for i, a in enumerate(corrections, start=1):
            for j in range(1, len(corrections) + 1):
                value = a.coefficient(j)
                expected = 1 if j == i else 0
                if j <= i and value != expected:
                    raise NotUnitTriangular(f"{spec}: a_{i}({j}) = {value}, ожидалось {expected}")

    def solve_c(self, spec: FormSpec, order: int) -> List[Fraction]:
        """
        Единственные рациональные c_{j,k,m}, j = 1..ell

        Raises:
            ResidualNonzero: остаток не равен нулю до порядка усечения
        """
        data = self.expansions(spec, order)
        corrections = data.corrections
        self._assert_unit_triangular(spec, corrections)
        D = add(data.gen, scale(data.F, -1))
        coefficients: List[Fraction] = []
        for j in range(1, len(corrections) + 1):
            value = D.coefficient(j)
            for i, c in enumerate(coefficients, start=1):
                value -= c * corrections[i - 1].coefficient(j)
            coefficients.append(value)
        rest = self.residual(spec, coefficients, order)
        failing = _first_nonzero_integral(rest)
        if failing is not None:
            raise ResidualNonzero(
                f"{spec}: остаток не равен нулю при q^{failing} (значение {rest.coefficient(failing)})",
                failing,
            )
        logger.info(f"✅ {spec}: c = [{', '.join(rational_to_str(c) for c in coefficients)}]")
        return coefficients

    def emit_formula(self, spec: FormSpec, order: int) -> RepFormula:
        coefficients = self.solve_c(spec, order)
        return formula_from_combination(self.expansions(spec, order).combo, coefficients)

    def hauptmodul_polynomial(self, spec: FormSpec, order: int) -> List[Fraction]:
        """b_0..b_ell с F / (theta theta_m)^k = sum b_j x_m^j; b_0 = 1, b_j = -c_j"""
        return [Fraction(1)] + [-c for c in self.solve_c(spec, order)]

    def pole_order(self, spec: FormSpec, order: int) -> int:
        """Ведущий показатель F / ((theta theta_m)^k x_m^ell)"""
        data = self.expansions(spec, order)
        needed = len(data.corrections)
        denominator = data.corrections[-1] if needed else data.gen
        quotient = mul(data.F, inverse(denominator))
        e24 = quotient.valuation24()
        if e24 is None:
            raise SolverError(f"{spec}: частное обратилось в ноль до порядка усечения")
        return e24 // 24

    def verify_identity(self, spec: FormSpec, order: int) -> VerificationReport:
        """Обе части тождества раскладываются независимо и сравниваются до O(q^order)"""
        needed = ell(spec.k, spec.m)
        try:
            coefficients = self.solve_c(spec, order)
        except ResidualNonzero as e:
            logger.error(f"❌ {e}")
            return VerificationReport(spec.k, spec.m, order, needed, False, e.first_failing_n)
        data = self.expansions(spec, order)
        # правая часть: F + gen * sum c_j x^j
        x_sum = QSeries.zero(order)
        if needed:
            x = x_series(spec.m, order)
            for j, c in enumerate(coefficients, start=1):
                if c:
                    x_sum = add(x_sum, scale(truncate(series_pow(x, j), 24 * order), c))
        rhs = add(data.F, truncate(mul(data.gen, x_sum), 24 * order))
        mismatch = _first_nonzero_integral(add(data.gen, scale(rhs, -1)))
        ok = mismatch is None
        pole = self.pole_order(spec, order)
        if ok:
            logger.info(f"✅ Тождество для {spec} выполнено до O(q^{order})")
        else:
            logger.error(f"❌ Тождество для {spec} нарушено при q^{mismatch}")
        return VerificationReport(spec.k, spec.m, order, needed, ok, mismatch, coefficients, pole)


_solver: Optional[FormulaSolverService] = None


def get_solver() -> FormulaSolverService:
    global _solver
    if _solver is None:
        _solver = FormulaSolverService()
    return _solver


def solve_c(spec: FormSpec, order: int) -> List[Fraction]:
    return get_solver().solve_c(spec, order)


def emit_formula(spec: FormSpec, order: int) -> RepFormula:
    return get_solver().emit_formula(spec, order)


def verify_identity(spec: FormSpec, order: int) -> VerificationReport:
    return get_solver().verify_identity(spec, order)
