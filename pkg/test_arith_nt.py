"""
Тестирование арифметических примитивов: символ Кронекера, делительные суммы, числа Бернулли
"""
import random
from fractions import Fraction

import pytest

from services.arith_nt import (
    CHI_MINUS_2,
    CHI_MINUS_4,
    CharacterId,
    DivisorSumKind,
    DivisorSumVariant,
    NumberTheoryError,
    UnsupportedCharacter,
    bernoulli,
    divisor_sum,
    gen_bernoulli,
    kronecker,
    square_free_kernel,
)

PLAIN = DivisorSumVariant.PLAIN
INF = DivisorSumVariant.TWISTED_INF
ZERO = DivisorSumVariant.TWISTED_0


@pytest.mark.parametrize(
    "D, values",
    [
        (-4, {1: 1, 2: 0, 3: -1, 5: 1, 7: -1, 9: 1}),
        (-2, {1: 1, 2: 0, 3: 1, 5: -1, 7: -1, 9: 1}),
        (-8, {1: 1, 3: 1, 5: -1, 7: -1}),
        (5, {2: -1, 3: -1, 4: 1}),
        (-7, {2: 1}),
    ],
)
def test_kronecker_values(D, values):
    for n, expected in values.items():
        assert kronecker(D, n) == expected, (D, n)


def test_kronecker_edge_arguments():
    assert kronecker(-4, -1) == -1
    assert kronecker(1, 0) == 1
    assert kronecker(-4, 0) == 0


def chi_minus_4_table(d):
    return (0, 1, 0, -1)[d % 4]


def chi_minus_2_table(d):
    return (0, 1, 0, 1, 0, -1, 0, -1)[d % 8]


def test_characters_match_explicit_tables():
    for n in range(1, 1001):
        assert CHI_MINUS_4(n) == chi_minus_4_table(n), n
        assert CHI_MINUS_2(n) == chi_minus_2_table(n), n


@pytest.mark.parametrize("D, period", [(-4, 4), (-2, 8), (-8, 8), (-3, 3), (5, 5), (-7, 7), (12, 12)])
def test_kronecker_is_periodic_on_odd_arguments(D, period):
    for n in range(1, 1001, 2):
        assert kronecker(D, n) == kronecker(D, n + period), (D, n)


@pytest.mark.parametrize("D", [-4, -3, -2, -7, -8, 5, 8, 12, 13])
def test_kronecker_is_multiplicative(D):
    rng = random.Random(D)
    for _ in range(200):
        a, b = rng.randint(1, 500), rng.randint(1, 500)
        assert kronecker(D, a * b) == kronecker(D, a) * kronecker(D, b), (D, a, b)


def test_character_lookup():
    assert CharacterId.from_discriminant(-4) is CHI_MINUS_4
    assert CHI_MINUS_2.label == "chi=-2"
    with pytest.raises(UnsupportedCharacter):
        CharacterId.from_discriminant(-3)


def test_plain_divisor_sums():
    assert divisor_sum(DivisorSumKind(PLAIN, 1), 6) == 12
    assert divisor_sum(DivisorSumKind(PLAIN, 3), 2) == 9
    assert divisor_sum(DivisorSumKind(PLAIN, 0), 12) == 6


def test_twisted_divisor_sums():
    assert divisor_sum(DivisorSumKind(INF, 0, CHI_MINUS_4), 5) == 2
    assert divisor_sum(DivisorSumKind(INF, 0, CHI_MINUS_4), 3) == 0
    assert divisor_sum(DivisorSumKind(INF, 2, CHI_MINUS_4), 3) == -8
    assert divisor_sum(DivisorSumKind(ZERO, 2, CHI_MINUS_4), 3) == 8
    assert divisor_sum(DivisorSumKind(ZERO, 2, CHI_MINUS_4), 2) == 4


def test_divisor_sum_vanishes_off_the_positive_integers():
    kind = DivisorSumKind(PLAIN, 1)
    assert divisor_sum(kind, Fraction(3, 2)) == 0
    assert divisor_sum(kind, 0) == 0
    assert divisor_sum(kind, Fraction(8, 4)) == 3


def test_weight_zero_twisted_sums_coincide():
    inf = DivisorSumKind(INF, 0, CHI_MINUS_2)
    zero = DivisorSumKind(ZERO, 0, CHI_MINUS_2)
    assert zero.canonical() == inf
    for n in range(1, 60):
        assert divisor_sum(zero, n) == divisor_sum(inf, n)


def test_divisor_kind_validation():
    with pytest.raises(NumberTheoryError):
        DivisorSumKind(PLAIN, 1, CHI_MINUS_4)
    with pytest.raises(NumberTheoryError):
        DivisorSumKind(INF, 1)
    with pytest.raises(NumberTheoryError):
        DivisorSumKind(PLAIN, -1)


def test_divisor_kind_labels():
    assert DivisorSumKind(PLAIN, 3).label == "sigma_3"
    assert DivisorSumKind(INF, 0, CHI_MINUS_2).label == "sigma_inf_0[chi=-2]"
    assert DivisorSumKind(ZERO, 2, CHI_MINUS_4).label == "sigma_0_2[chi=-4]"


def test_square_free_kernel():
    assert square_free_kernel(8) == 2
    assert square_free_kernel(-8) == -2
    assert square_free_kernel(Fraction(1, 2)) == 2
    assert square_free_kernel(12) == 3
    assert square_free_kernel(1) == 1
    with pytest.raises(NumberTheoryError):
        square_free_kernel(0)


@pytest.mark.parametrize(
    "k, expected",
    [
        (0, Fraction(1)),
        (1, Fraction(-1, 2)),
        (2, Fraction(1, 6)),
        (3, Fraction(0)),
        (4, Fraction(-1, 30)),
        (6, Fraction(1, 42)),
        (8, Fraction(-1, 30)),
        (12, Fraction(-691, 2730)),
    ],
)
def test_bernoulli_numbers(k, expected):
    assert bernoulli(k) == expected


@pytest.mark.parametrize(
    "k, chi, expected",
    [
        (1, CHI_MINUS_4, Fraction(-1, 2)),
        (3, CHI_MINUS_4, Fraction(3, 2)),
        (5, CHI_MINUS_4, Fraction(-25, 2)),
        (1, CHI_MINUS_2, Fraction(-1)),
        (3, CHI_MINUS_2, Fraction(9)),
        (2, CHI_MINUS_4, Fraction(0)),
    ],
)
def test_generalized_bernoulli_numbers(k, chi, expected):
    assert gen_bernoulli(k, chi) == expected


def test_generalized_bernoulli_rejects_foreign_character():
    with pytest.raises(UnsupportedCharacter):
        gen_bernoulli(1, CharacterId(-3, 3))
    with pytest.raises(NumberTheoryError):
        bernoulli(-1)


def divisor_sum_by_definition(variant, weight, table, n):
    total = 0
    for d in range(1, n + 1):
        if n % d:
            continue
        if variant is PLAIN:
            total += d ** weight
        elif variant is INF:
            total += table(d) * d ** weight
        else:
            total += table(n // d) * d ** weight
    return total


DIVISOR_KINDS = [(PLAIN, w, None, None) for w in range(4)] + [
    (variant, w, chi, table)
    for variant in (INF, ZERO)
    for chi, table in ((CHI_MINUS_4, chi_minus_4_table), (CHI_MINUS_2, chi_minus_2_table))
    for w in range(5)
]


@pytest.mark.parametrize("variant, weight, chi, table", DIVISOR_KINDS)
def test_divisor_sums_match_definition(variant, weight, chi, table):
    kind = DivisorSumKind(variant, weight, chi)
    for n in range(1, 201):
        assert divisor_sum(kind, n) == divisor_sum_by_definition(variant, weight, table, n), n


@pytest.mark.parametrize("chi", [CHI_MINUS_4, CHI_MINUS_2])
def test_generalized_bernoulli_vanishes_for_even_index(chi):
    for k in range(0, 11, 2):
        assert gen_bernoulli(k, chi) == 0, k
