"""Least-squares helpers for log-log slope estimates."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LineFit:
    slope: float
    intercept: float
    r2: float


def ols_line(x, y) -> LineFit:
    """Ordinary least squares y = slope*x + intercept with R^2."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < 2:
        raise ValueError("need at least two points")
    xm, ym = x.mean(), y.mean()
    sxx = float(np.sum((x - xm) ** 2))
    if sxx == 0.0:
        raise ValueError("degenerate abscissa")
    slope = float(np.sum((x - xm) * (y - ym)) / sxx)
    intercept = ym - slope * xm
    resid = y - (slope * x + intercept)
    ss_res = float(np.sum(resid**2))
    ss_tot = float(np.sum((y - ym) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return LineFit(slope=slope, intercept=intercept, r2=r2)


def ols_loglog(x, y) -> LineFit:
    """Slope of log(y) against log(x); inputs must be positive."""
    lx = [math.log(v) for v in x]
    ly = [math.log(v) for v in y]
    return ols_line(lx, ly)
