"""
Reference tables of exact moments and traces.

Provides:
- t, value, ratio rows for fixed k (ratio cut to three decimals)
- k = 3 values divided by t!(t-1)! floor(t/3)! floor(t/4)! floor(t/5)! floor(t/7)!
- Nonzero RC traces with prime factorizations
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import factorial, prod

import sympy

from permoments.config import Settings
from permoments.schemas.base import format_exact, format_significant, format_truncated
from permoments.schemas.trace import GridSpec, TraceKind
from permoments.services.export.export_service import render_csv
from permoments.services.moments.gaussian import gaussian_moment_series
from permoments.services.traces.trace_service import TraceService

logger = logging.getLogger('permoments.export')


@dataclass
class TableRow:
    t: int
    value: int
    ratio: Fraction


def moment_rows(k: int, t_max: int, settings: Settings | None = None) -> list[TableRow]:
    return [
        TableRow(t=r.t, value=int(r.value), ratio=r.ratio_exact)
        for r in gaussian_moment_series(k, t_max, settings)
    ]


def moment_table_csv(k: int, t_max: int, settings: Settings | None = None) -> str:
    """t,value,ratio with the ratio truncated to three decimals."""
    return render_csv(
        ["t", "value", "ratio"],
        (
            [row.t, row.value, format_truncated(row.ratio, 3)]
            for row in moment_rows(k, t_max, settings)
        ),
    )


def k3_normalizer(t: int) -> int:
    """t!(t-1)! floor(t/3)! floor(t/4)! floor(t/5)! floor(t/7)!"""
    return prod(
        factorial(x) for x in (t, t - 1, t // 3, t // 4, t // 5, t // 7)
    )


def normalized_k3_csv(t_max: int, settings: Settings | None = None) -> str:
    """t, value / normalizer, ratio at 15 significant digits."""
    lines = []
    for row in moment_rows(3, t_max, settings):
        quotient, remainder = divmod(row.value, k3_normalizer(row.t))
        if remainder:
            raise ArithmeticError(f"Normalizer does not divide the t={row.t} moment")
        lines.append([row.t, quotient, format_significant(row.ratio, 15)])
    return render_csv(["t", "normalized_value", "ratio"], lines)


def factorization(value: int | Fraction) -> str:
    """'2^13 * 3^7' style prime factorization of a positive integer."""
    value = Fraction(value)
    if value.denominator != 1 or value <= 0:
        return format_exact(value)
    if value == 1:
        return "1"
    factors = sympy.factorint(int(value))
    return " * ".join(
        f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(factors.items())
    )


def trace_factor_csv(k: int, t: int, settings: Settings | None = None) -> str:
    """Nonzero tr rho_lam(RC) on a k x t grid, with factorizations."""
    table = TraceService(settings).build_table(GridSpec(k=k, t=t), TraceKind.RC)
    nonzero = table.nonzero()
    logger.info(f"{k}x{t}: {len(nonzero.entries)} nonzero RC traces")
    return render_csv(
        ["shape", "value", "factorization"],
        (
            [str(e.partition), format_exact(e.value), factorization(e.value)]
            for e in nonzero.entries
        ),
    )
