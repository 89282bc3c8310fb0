from .ratfunc import (
    CTX, NAMES, NVARS, ONE, ZERO, Q, QT, R, S, T, U1, W, Z,
    AlgebraError, Polynomial, RationalFunction, rf_const, rf_sum, rf_var,
    substitute_mobius, var_index, var_name,
)
from .series import (
    LaurentSeries, NonIsolatedSingularityError, laurent_expand, pole_order,
    residue_at, residue_by_differentiation,
)
from .primitive import (
    LogExtendedFunction, NotIntegrableAtInfinity, UnsupportedLogError,
    primitive_from_infinity, residue_with_logs,
)

__all__ = [
    "CTX",
    "NAMES",
    "NVARS",
    "ONE",
    "ZERO",
    "Q",
    "QT",
    "R",
    "S",
    "T",
    "U1",
    "W",
    "Z",
    "AlgebraError",
    "Polynomial",
    "RationalFunction",
    "rf_const",
    "rf_sum",
    "rf_var",
    "substitute_mobius",
    "var_index",
    "var_name",
    "LaurentSeries",
    "NonIsolatedSingularityError",
    "laurent_expand",
    "pole_order",
    "residue_at",
    "residue_by_differentiation",
    "LogExtendedFunction",
    "NotIntegrableAtInfinity",
    "UnsupportedLogError",
    "primitive_from_infinity",
    "residue_with_logs",
]
