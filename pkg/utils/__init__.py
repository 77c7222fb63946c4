from .formatters import *
from .validators import *

__all__ = [
    "format_json",
    "format_exponent",
    "format_series_text",
    "format_series_json",
    "format_verification_row",
    "format_verification_table",
    "gamma0_report_dict",
    "format_eta_report",
    "format_cusp_table",
    "parse_k_range",
    "parse_m_list",
    "validate_m",
    "positive_int",
    "nonnegative_int",
]
