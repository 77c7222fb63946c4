"""
Тестирование решателя: коэффициенты c_{j,k,m}, формулы, их вычисление и проверка тождеств
"""
import json
import random
from dataclasses import replace
from fractions import Fraction

import pytest

from services.arith_nt import CHI_MINUS_2, CHI_MINUS_4, DivisorSumKind, DivisorSumVariant
from services.repcount import FormSpec, brute_counts, gen_series
from services.series_core import QSeries, add
from services.solver_service import (
    EisensteinTerm,
    FormulaSolverService,
    NonIntegerResult,
    RepFormula,
    ResidualNonzero,
    SolverError,
    ell,
    evaluate_formula,
)

PLAIN = DivisorSumVariant.PLAIN
INF = DivisorSumVariant.TWISTED_INF
ZERO = DivisorSumVariant.TWISTED_0
ORDER = 60


@pytest.fixture(scope="module")
def solver():
    return FormulaSolverService()


def terms_of(formula):
    return [(t.coeff, t.kind.label, t.scale) for t in formula.eisenstein_terms]


@pytest.mark.parametrize(
    "k, m, expected",
    [
        (1, 1, 0), (4, 1, 0), (5, 1, 1), (9, 1, 2),
        (1, 2, 0), (2, 2, 0), (3, 2, 1), (4, 2, 1), (5, 2, 2), (8, 2, 3),
        (1, 4, 0), (2, 4, 1), (3, 4, 1), (4, 4, 3), (5, 4, 3), (8, 4, 7),
    ],
)
def test_number_of_corrections(k, m, expected):
    assert ell(k, m) == expected


@pytest.mark.parametrize(
    "k, m, expected",
    [
        (2, 4, [2]),
        (3, 2, [Fraction(4, 3)]),
        (3, 4, [6]),
        (4, 2, [4]),
        (4, 4, [7, -12, 4]),
        (2, 2, []),
        (1, 4, []),
    ],
)
def test_solved_coefficients(solver, k, m, expected):
    assert solver.solve_c(FormSpec(k, m), ORDER) == expected


def test_order_must_leave_room_for_residual(solver):
    with pytest.raises(SolverError):
        solver.solve_c(FormSpec(4, 4), 13)


def test_formula_for_four_variables_with_m2(solver):
    formula = solver.emit_formula(FormSpec(2, 2), ORDER)
    assert terms_of(formula) == [
        (4, "sigma_1", 1), (-4, "sigma_1", 2), (8, "sigma_1", 4), (-32, "sigma_1", 8),
    ]
    assert formula.corrections == ()
    assert formula.ell == 0


def test_formula_for_two_variables_with_m4(solver):
    formula = solver.emit_formula(FormSpec(1, 4), ORDER)
    assert terms_of(formula) == [
        (2, "sigma_inf_0[chi=-4]", 1), (-2, "sigma_inf_0[chi=-4]", 2), (4, "sigma_inf_0[chi=-4]", 4),
    ]


def test_formula_for_eight_variables_with_m2(solver):
    formula = solver.emit_formula(FormSpec(4, 2), ORDER)
    assert formula.to_text() == (
        "4*sigma_3(n) - 4*sigma_3(n/2) - 16*sigma_3(n/4) + 256*sigma_3(n/8) + 4*a(1)"
    )


def test_printed_coefficient_64_contradicts_the_series(solver):
    """Коэффициент 64 при sigma_3(n/8) потребовал бы a_{1,4,2}(8) = 48, а разложение даёт 0"""
    spec = FormSpec(4, 2)
    formula = solver.emit_formula(spec, ORDER)
    provider = solver.correction_provider(spec, ORDER)
    assert provider(1, 8) == 0
    assert evaluate_formula(formula, 8, provider) == 2160

    printed = replace(
        formula,
        eisenstein_terms=tuple(
            replace(t, coeff=Fraction(64)) if t.scale == 8 else t for t in formula.eisenstein_terms
        ),
    )
    assert evaluate_formula(printed, 8, provider) != 2160
    assert (Fraction(256) - 64) / formula.coefficients[0] == 48


def test_printed_eight_variable_m4_formula_misses_third_correction(solver):
    """Без слагаемого 4*a_{3,4,4}(n) формула расходится с перебором ровно на 4*a_{3,4,4}(n)"""
    spec = FormSpec(4, 4)
    formula = solver.emit_formula(spec, ORDER)
    assert terms_of(formula) == [
        (1, "sigma_3", 1), (-1, "sigma_3", 2), (-16, "sigma_3", 8), (256, "sigma_3", 16),
    ]
    assert formula.coefficients == [7, -12, 4]

    provider = solver.correction_provider(spec, ORDER)
    printed = replace(formula, corrections=((1, Fraction(7)), (2, Fraction(-12)), (3, Fraction(0))))
    counts = brute_counts(spec, 29)
    for n in range(1, 30):
        assert counts[n] - evaluate_formula(printed, n, provider) == 4 * provider(3, n), n
    assert provider(3, 3) == 1
    assert counts[3] - evaluate_formula(printed, 3, provider) == 4


def test_two_variable_formula_rendering(solver):
    assert solver.emit_formula(FormSpec(1, 2), ORDER).to_text() == "2*sigma_inf_0[chi=-2](n)"


@pytest.mark.parametrize(
    "k, expected",
    [
        (1, [(4, "sigma_inf_0[chi=-4]", 1)]),
        (2, [(8, "sigma_1", 1), (-32, "sigma_1", 4)]),
        (3, [(-4, "sigma_inf_2[chi=-4]", 1), (16, "sigma_0_2[chi=-4]", 1)]),
        (4, [(16, "sigma_3", 1), (-32, "sigma_3", 2), (256, "sigma_3", 4)]),
    ],
)
def test_classical_sums_of_squares(solver, k, expected):
    formula = solver.emit_formula(FormSpec(k, 1), ORDER)
    assert terms_of(formula) == expected
    assert formula.corrections == ()


def test_evaluation_examples(solver):
    formula = solver.emit_formula(FormSpec(1, 2), ORDER)
    assert evaluate_formula(formula, 3) == 4
    assert evaluate_formula(formula, 0) == 1

    spec = FormSpec(3, 4)
    formula = solver.emit_formula(spec, ORDER)
    assert evaluate_formula(formula, 1, solver.correction_provider(spec, ORDER)) == 6


def test_evaluation_needs_correction_values(solver):
    formula = solver.emit_formula(FormSpec(3, 4), ORDER)
    with pytest.raises(SolverError):
        evaluate_formula(formula, 5)


def test_evaluation_rejects_fractional_total():
    kind = DivisorSumKind(INF, 0, CHI_MINUS_4)
    formula = RepFormula(1, 1, (EisensteinTerm(Fraction(1, 2), kind, 1),), (), 0)
    with pytest.raises(NonIntegerResult):
        evaluate_formula(formula, 1)


@pytest.mark.parametrize("m", [1, 2, 4])
@pytest.mark.parametrize("k", range(1, 7))
def test_formula_matches_series(solver, k, m):
    spec = FormSpec(k, m)
    order = 101
    formula = solver.emit_formula(spec, order)
    provider = solver.correction_provider(spec, order)
    gen = gen_series(spec, order)
    for n in range(order):
        assert evaluate_formula(formula, n, provider) == gen.coefficient(n), n


@pytest.mark.parametrize("m", [1, 2, 4])
@pytest.mark.parametrize("k", range(1, 5))
def test_formula_matches_lattice_count(solver, k, m):
    spec = FormSpec(k, m)
    formula = solver.emit_formula(spec, 61)
    provider = solver.correction_provider(spec, 61)
    counts = brute_counts(spec, 60)
    assert [evaluate_formula(formula, n, provider) for n in range(61)] == counts


@pytest.mark.parametrize("k", range(1, 5))
def test_sums_of_squares_formulas_to_200(solver, k):
    spec = FormSpec(k, 1)
    formula = solver.emit_formula(spec, 201)
    assert formula.ell == 0
    counts = brute_counts(spec, 200)
    assert [evaluate_formula(formula, n) for n in range(201)] == counts


@pytest.mark.parametrize("k, m", [(4, 4), (5, 2), (6, 4), (7, 1)])
def test_coefficients_are_unique(solver, k, m):
    spec = FormSpec(k, m)
    coefficients = solver.solve_c(spec, ORDER)
    rng = random.Random(k * 10 + m)
    for _ in range(3):
        j = rng.randrange(len(coefficients))
        delta = Fraction(rng.randint(1, 9), rng.randint(1, 9)) * rng.choice((-1, 1))
        perturbed = list(coefficients)
        perturbed[j] += delta
        rest = solver.residual(spec, perturbed, ORDER)
        assert rest.valuation24() == 24 * (j + 1)
        assert rest.coefficient(j + 1) == -delta


def test_corrupted_expansion_is_reported():
    service = FormulaSolverService()
    spec = FormSpec(2, 2)
    data = service.expansions(spec, ORDER)
    data.F = add(data.F, QSeries.monomial(1, 30 * 24, ORDER * 24))
    with pytest.raises(ResidualNonzero) as error:
        service.solve_c(spec, ORDER)
    assert error.value.first_failing_n == 30

    report = service.verify_identity(spec, ORDER)
    assert not report.ok
    assert report.first_mismatch == 30


def test_hauptmodul_polynomial(solver):
    assert solver.hauptmodul_polynomial(FormSpec(4, 4), ORDER) == [1, -7, 12, -4]
    assert solver.hauptmodul_polynomial(FormSpec(2, 2), ORDER) == [1]


@pytest.mark.parametrize("k, m", [(1, 4), (4, 2), (4, 4), (5, 1)])
def test_pole_order(solver, k, m):
    assert solver.pole_order(FormSpec(k, m), ORDER) == -ell(k, m)


def test_formula_json(solver):
    formula = solver.emit_formula(FormSpec(2, 4), ORDER)
    data = json.loads(formula.to_json())
    assert data["corrections"] == [{"j": 1, "c": "2"}]
    assert data["ell"] == 1
    assert data["eisenstein_terms"][0] == {
        "coeff": "2", "kind": "sigma", "weight": 1, "character": None, "scale": 1,
    }
    assert RepFormula.from_json(formula.to_json()).to_json() == formula.to_json()


def test_twisted_formula_json_keeps_character(solver):
    formula = solver.emit_formula(FormSpec(3, 2), ORDER)
    data = formula.to_dict()
    assert {t["character"] for t in data["eisenstein_terms"]} == {-2}
    assert data["corrections"] == [{"j": 1, "c": "4/3"}]
    assert RepFormula.from_dict(data) == formula


def test_formula_json_validation():
    with pytest.raises(SolverError):
        RepFormula.from_dict({"k": 1, "m": 3, "ell": 0, "eisenstein_terms": [], "corrections": []})
    with pytest.raises(SolverError):
        RepFormula(1, 2, (), ((2, Fraction(1)),), 1)


@pytest.mark.parametrize("k, m", [(5, 2), (1, 4), (8, 4), (6, 1), (7, 2)])
def test_identity_holds(solver, k, m):
    report = solver.verify_identity(FormSpec(k, m), 120)
    assert report.ok
    assert report.first_mismatch is None
    assert report.pole_order == -report.ell
    assert len(report.coefficients) == report.ell


@pytest.mark.slow
@pytest.mark.parametrize("m", [1, 2, 4])
@pytest.mark.parametrize("k", range(1, 9))
def test_identity_holds_to_order_300(k, m):
    report = FormulaSolverService().verify_identity(FormSpec(k, m), 300)
    assert report.ok


def test_character_constants_in_formulas(solver):
    kinds = {t.kind for t in solver.emit_formula(FormSpec(5, 2), ORDER).eisenstein_terms}
    assert all(kind.character == CHI_MINUS_2 for kind in kinds)
    assert {kind.variant for kind in kinds} == {INF, ZERO}
    kinds = {t.kind for t in solver.emit_formula(FormSpec(6, 4), ORDER).eisenstein_terms}
    assert {kind.variant for kind in kinds} == {PLAIN}
