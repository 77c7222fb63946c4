"""
Утилиты для форматирования вывода CLI
"""
import json
from fractions import Fraction
from typing import Any, Dict, Iterable, List

from services.eta_quotients import CuspLabel, CuspOrderRow, EtaQuotient, GammaZeroReport
from services.series_core import QSeries, rational_to_str, to_pairs
from services.solver_service import VerificationReport


def format_json(data: Any) -> str:
    """Детерминированный JSON: порядок ключей фиксирован, отступ 2"""
    return json.dumps(data, indent=2, ensure_ascii=False)


def format_exponent(e24: int) -> str:
    return rational_to_str(Fraction(e24, 24))


def format_series_text(series: QSeries) -> str:
    """Ненулевые члены "c*q^e", по одному на строку, затем порядок усечения"""
    lines = [f"{rational_to_str(c)}*q^{format_exponent(e24)}" for e24, c in series.terms24()]
    lines.append(f"O(q^{rational_to_str(series.order)})")
    return "\n".join(lines)


def format_series_json(series: QSeries) -> str:
    return format_json({"order24": series.order24, "terms": [list(pair) for pair in to_pairs(series)]})


def format_verification_row(report: VerificationReport) -> str:
    status = "ok" if report.ok else f"FAIL at n={report.first_mismatch}"
    coefficients = ", ".join(rational_to_str(c) for c in report.coefficients)
    text = f"k={report.k} m={report.m} order={report.order} ell={report.ell} {status}"
    if report.ok:
        text += f" c=[{coefficients}] pole={report.pole_order}"
    if report.ell == 0:
        text += " (no corrections)"
    return text


def format_verification_table(reports: Iterable[VerificationReport], output_format: str) -> str:
    reports = list(reports)
    if output_format == "json":
        return format_json([r.to_dict() for r in reports])
    return "\n".join(format_verification_row(r) for r in reports)


def gamma0_report_dict(quotient: EtaQuotient, report: GammaZeroReport) -> Dict[str, Any]:
    return {
        "spec": quotient.to_text(),
        "level": report.level,
        "sum_d_rd_mod24": report.sum_d_rd_mod24,
        "sum_Nd_rd_mod24": report.sum_Nd_rd_mod24,
        "passes": report.passes,
        "weight": rational_to_str(report.weight),
        "character_s": rational_to_str(report.character_s),
        "character_kernel": report.character_kernel,
    }


def format_eta_report(
    quotient: EtaQuotient,
    report: GammaZeroReport,
    cusp: CuspLabel,
    order,
    output_format: str,
) -> str:
    data = gamma0_report_dict(quotient, report)
    data["cusp"] = str(cusp)
    data["width"] = cusp.width
    data["order"] = rational_to_str(order) if order is not None else None
    if output_format == "json":
        return format_json(data)
    lines = [
        f"eta quotient: {data['spec']} (level {data['level']})",
        f"sum d*r_d mod 24: {data['sum_d_rd_mod24']}",
        f"sum (N/d)*r_d mod 24: {data['sum_Nd_rd_mod24']}",
        f"conditions: {'pass' if data['passes'] else 'fail'}",
        f"weight: {data['weight']}",
        f"s: {data['character_s']}",
        f"character kernel: {data['character_kernel']}",
        f"cusp: {data['cusp']} (width {data['width']})",
    ]
    if data["order"] is not None:
        lines.append(f"order: {data['order']}")
    return "\n".join(lines)


def format_cusp_table(rows: List[CuspOrderRow], output_format: str) -> str:
    data = [
        {
            "name": row.name,
            "spec": row.quotient.to_text(),
            "level": row.quotient.level,
            "cusp": str(row.cusp),
            "width": row.width,
            "order": rational_to_str(row.order),
        }
        for row in rows
    ]
    if output_format == "json":
        return format_json(data)
    return "\n".join(
        f"{d['name']:<20} level={d['level']:<3} cusp={d['cusp']:<4} width={d['width']:<3} order={d['order']}"
        for d in data
    )
