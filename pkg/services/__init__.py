"""
Services для qform
Ряды, арифметика, эта-частные, ряды Эйзенштейна, числа представлений и решатель
"""

from .series_core import QSeries, SeriesError
from .arith_nt import NumberTheoryError
from .eta_quotients import EtaQuotient, EtaQuotientError
from .eisenstein import EisensteinError, build_F
from .repcount import RepresentationError
from .solver_service import FormulaSolverService, SolverError, get_solver

__all__ = [
    # Ряды
    "QSeries",
    "SeriesError",

    # Арифметика
    "NumberTheoryError",

    # Эта-частные
    "EtaQuotient",
    "EtaQuotientError",

    # Ряды Эйзенштейна
    "EisensteinError",
    "build_F",

    # Числа представлений
    "RepresentationError",

    # Решатель формул
    "FormulaSolverService",
    "SolverError",
    "get_solver",
]
