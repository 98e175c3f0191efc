"""Sign-change bracketing and bisection shared by the equilibrium finders."""

from __future__ import annotations

from typing import Callable, Sequence

__all__ = ["sign_change_brackets", "bisect_relative"]


def sign_change_brackets(f: Callable[[float], float],
                         grid: Sequence[float]) -> list[tuple[float, float, float, float]]:
    """Scan a grid for strict sign changes of f.

    Returns (lo, hi, f_lo, f_hi) tuples.  A probe value of exactly zero
    never brackets (an identically vanishing f yields no intervals).
    """
    vals = [f(x) for x in grid]
    out = []
    for lo, hi, flo, fhi in zip(grid, grid[1:], vals, vals[1:]):
        if flo * fhi < 0.0:
            out.append((lo, hi, flo, fhi))
    return out


def bisect_relative(f: Callable[[float], float], lo: float, hi: float,
                    f_lo: float, rel_width: float = 1e-8,
                    max_iter: int = 200) -> float:
    """Bisect a bracketed root of f until hi - lo <= rel_width * midpoint."""
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        if hi - lo <= rel_width * mid:
            return mid
        f_mid = f(mid)
        if f_mid == 0.0:
            return mid
        if (f_lo < 0.0) == (f_mid < 0.0):
            lo, f_lo = mid, f_mid
        else:
            hi = mid
    raise ArithmeticError(
        f"bisection did not reach relative width {rel_width} "
        f"within {max_iter} iterations on [{lo}, {hi}]")
