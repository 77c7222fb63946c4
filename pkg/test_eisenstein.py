"""
Тестирование рядов Эйзенштейна и комбинаций F_{k,m}
"""
from fractions import Fraction

import pytest

from services.arith_nt import CHI_MINUS_2, CHI_MINUS_4, UnsupportedCharacter, bernoulli, gen_bernoulli
from services.eisenstein import (
    EisensteinFamily,
    EisensteinSpec,
    ParityMismatch,
    WeightTooSmall,
    build_F,
    check_half_period,
    eisenstein_series,
    f_combination,
    half_period_rhs,
)
from services.series_core import agrees_with, dilate

LEVEL_ONE = EisensteinFamily.LEVEL_ONE
INF = EisensteinFamily.TWISTED_INF
ZERO = EisensteinFamily.TWISTED_0


def coefficients(spec, count):
    return eisenstein_series(spec, count).integral_coefficients()


def test_level_one_series():
    assert coefficients(EisensteinSpec(LEVEL_ONE, 2), 3) == [1, -24, -72]
    assert coefficients(EisensteinSpec(LEVEL_ONE, 4), 4) == [1, 240, 2160, 6720]
    assert coefficients(EisensteinSpec(LEVEL_ONE, 6), 2) == [1, -504]


def test_weight_one_twisted_series_is_theta_squared():
    assert coefficients(EisensteinSpec(INF, 1, CHI_MINUS_4), 6) == [1, 4, 4, 0, 4, 8]


def test_weight_three_twisted_series():
    assert coefficients(EisensteinSpec(INF, 3, CHI_MINUS_4), 2) == [1, -4]
    assert coefficients(EisensteinSpec(ZERO, 3, CHI_MINUS_4), 3) == [0, -4, -16]


def test_dilated_series():
    spec = EisensteinSpec(LEVEL_ONE, 4, dilation=2)
    assert coefficients(spec, 5) == [1, 0, 240, 0, 2160]
    assert spec.label == "E_4(2tau)"


def test_spec_validation():
    with pytest.raises(ParityMismatch):
        EisensteinSpec(LEVEL_ONE, 3)
    with pytest.raises(ParityMismatch):
        EisensteinSpec(INF, 2, CHI_MINUS_4)
    with pytest.raises(WeightTooSmall):
        EisensteinSpec(LEVEL_ONE, 0)
    with pytest.raises(UnsupportedCharacter):
        EisensteinSpec(INF, 1, None)


@pytest.mark.parametrize("m", [1, 2, 4])
@pytest.mark.parametrize("k", range(1, 9))
def test_combination_has_constant_term_one(m, k):
    combo, series = build_F(m, k, 10)
    assert combo.constant_term() == 1
    assert series.coefficient(0) == 1


@pytest.mark.parametrize(
    "m, k, expected",
    [
        (1, 1, [1, 4, 4, 0, 4, 8]),
        (1, 2, [1, 8, 24, 32, 24, 48]),
        (1, 3, [1, 12, 60, 160, 252, 312]),
        (1, 4, [1, 16, 112, 448, 1136, 2016]),
        (2, 1, [1, 2, 2, 4, 2, 0, 4, 0, 2]),
        (2, 2, [1, 4, 8, 16, 24, 24, 32, 32, 24]),
        (4, 1, [1, 2, 0, 0, 4, 4]),
    ],
)
def test_combination_without_corrections_counts_representations(m, k, expected):
    _, series = build_F(m, k, len(expected))
    assert series.integral_coefficients() == expected


def test_combination_divisor_terms_fold_normalizers():
    terms = f_combination(2, 2).divisor_terms()
    assert [(c, t) for c, _, t in terms] == [
        (Fraction(4), 1), (Fraction(-4), 2), (Fraction(8), 4), (Fraction(-32), 8),
    ]


def test_even_m1_combination_drops_vanishing_term():
    combo = f_combination(1, 2)
    assert [spec.dilation for _, spec in combo.terms] == [1, 4]


HALF_PERIOD_GRID = [EisensteinSpec(LEVEL_ONE, k) for k in (2, 4, 6)] + [
    EisensteinSpec(family, k, chi)
    for family in (INF, ZERO)
    for chi in (CHI_MINUS_4, CHI_MINUS_2)
    for k in (1, 3, 5)
]


@pytest.mark.parametrize("spec", HALF_PERIOD_GRID, ids=lambda spec: spec.label)
def test_half_period_identities(spec):
    assert check_half_period(spec, 200)


@pytest.mark.parametrize("t", [2, 3, 4])
@pytest.mark.parametrize("spec", HALF_PERIOD_GRID, ids=lambda spec: spec.label)
def test_dilated_series_is_dilated_expansion(spec, t):
    order = 40
    direct = eisenstein_series(spec.dilated(t), order * t)
    assert agrees_with(direct, dilate(eisenstein_series(spec, order), t))


def test_half_period_right_hand_sides():
    assert half_period_rhs(EisensteinSpec(LEVEL_ONE, 4)) == [(-1, 1), (18, 2), (-16, 4)]
    assert half_period_rhs(EisensteinSpec(INF, 3, CHI_MINUS_4)) == [(-1, 1), (2, 2)]
    assert half_period_rhs(EisensteinSpec(ZERO, 3, CHI_MINUS_4)) == [(-1, 1), (8, 2)]


def chi_minus_2(d):
    return (0, 1, 0, 1, 0, -1, 0, -1)[d % 8]


def plain_sigma(s, n):
    if n.denominator != 1 or n <= 0:
        return 0
    n = n.numerator
    return sum(d ** s for d in range(1, n + 1) if n % d == 0)


def twisted_sigma_inf(s, n):
    return sum(chi_minus_2(d) * d ** s for d in range(1, n + 1) if n % d == 0)


def twisted_sigma_0(s, n):
    return sum(chi_minus_2(n // d) * d ** s for d in range(1, n + 1) if n % d == 0)


def m2_divisor_part(k, n):
    """Коэффициент при q^n в F_{k,2}, выписанный через делительные суммы"""
    if k % 2:
        delta = 1 if k == 1 else 0
        inner = 2 * twisted_sigma_inf(k - 1, n) + 2 * (-8) ** ((k - 1) // 2) * twisted_sigma_0(k - 1, n)
        return -k / gen_bernoulli(k, CHI_MINUS_2) * inner / (1 + delta)
    s = (-1) ** (k // 2)
    n = Fraction(n)
    inner = (
        s * plain_sigma(k - 1, n)
        - s * plain_sigma(k - 1, n / 2)
        - 2 ** (k // 2) * plain_sigma(k - 1, n / 4)
        + 8 ** (k // 2) * plain_sigma(k - 1, n / 8)
    )
    return -k / bernoulli(k) * inner / (2 ** (k // 2 - 1) * (2 ** k - 1))


@pytest.mark.parametrize("k", range(1, 9))
def test_m2_combination_matches_divisor_expression(k):
    _, series = build_F(2, k, 101)
    for n in range(1, 101):
        assert series.coefficient(n) == m2_divisor_part(k, n), n
