from fractions import Fraction
from typing import Optional, Sequence

def format_phase(phase: Fraction) -> str:
    """Exact phase as "numerator/denominator" (never floating point)"""
    return f"{phase.numerator}/{phase.denominator}"

def format_int_list(values: Sequence[int]) -> str:
    """[3, 4, 4, 5] -> "3,4,4,5" (the CLI list syntax)"""
    return ",".join(str(v) for v in values)

def format_percent(count: int, total: int) -> str:
    """Share of total as a percentage, e.g. 29.0%"""
    if total <= 0:
        return "n/a"
    return f"{100.0 * count / total:.1f}%"

def format_outcome(factor: Optional[int], N: int, period: Optional[int] = None) -> str:
    """One-line summary of a run"""
    if factor is None:
        return f"No non-trivial factor of {N} found"
    line = f"{N} = {factor} x {N // factor}"
    if period is not None:
        line += f" (period r={period})"
    return line
