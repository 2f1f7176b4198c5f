"""Smallest values of |Q(v + alpha) - xi| over integer vectors in a ball.

The engine enumerates prefixes (all coordinates except one pivot) inside
the ball and solves for the pivot coordinate in closed form: the value as
a function of the pivot is a real quadratic (linear when the pivot's
diagonal entry vanishes), so the minimizing integer lies among the
integers adjacent to its roots and vertex plus the admissible endpoints.
Everything is vectorized over prefix chunks; reported gaps are recomputed
once with compensated summation.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSeries, EmptyBall, PrecisionLossWarning, SearchTooLarge
from .fitting import ols_loglog
from .forms import QuadraticForm

_CHUNK_ROWS = 1 << 19
_BRUTE_NODE_CAP = 10**8
_PRECISION_CAP = 2.0**52


@dataclass(frozen=True)
class SearchProblem:
    """One instance: form, shift, target value, radius, optional threshold.

    The threshold is either an absolute eps or a decay rate kappa standing
    for eps = t**(-kappa). The radius t may be any nonnegative real
    (t = 0 leaves only v = 0).
    """

    form: QuadraticForm
    alpha: tuple[float, ...]
    xi: float
    t: float
    eps: float | None = None
    kappa: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "alpha", tuple(float(a) for a in self.alpha))
        if len(self.alpha) != self.form.n:
            raise ValueError(f"shift has length {len(self.alpha)}, form has n={self.form.n}")
        if self.eps is not None and self.kappa is not None:
            raise ValueError("give eps or kappa, not both")
        if self.eps is not None and self.eps <= 0:
            raise ValueError("eps must be positive")
        if self.kappa is not None and self.kappa <= 0:
            raise ValueError("kappa must be positive")

    @property
    def effective_eps(self) -> float | None:
        if self.eps is not None:
            return self.eps
        if self.kappa is not None:
            return float(self.t) ** (-self.kappa)
        return None


@dataclass(frozen=True)
class GapResult:
    v_best: tuple[int, ...]
    gap: float
    nodes: int
    solutions_within: int | None = None


@dataclass(frozen=True)
class FitResult:
    kappa_hat: float
    r2: float
    dropped: int


# ---------------------------------------------------------------------------
# ball enumeration


def _isqrt_leq(rem: np.ndarray) -> np.ndarray:
    """Largest c >= 0 with c*c <= rem, elementwise (rem >= 0)."""
    c = np.floor(np.sqrt(np.maximum(rem, 0.0))).astype(np.int64)
    c += ((c + 1.0) * (c + 1.0) <= rem).astype(np.int64)
    c -= (c.astype(float) * c.astype(float) > rem).astype(np.int64)
    return np.maximum(c, 0)


def _expand(v: np.ndarray, norms: np.ndarray, r2: float) -> tuple[np.ndarray, np.ndarray]:
    """Append one coordinate to each row, keeping squared norm <= r2."""
    cmax = _isqrt_leq(r2 - norms.astype(float))
    counts = 2 * cmax + 1
    total = int(counts.sum())
    starts = np.cumsum(counts) - counts
    idx = np.arange(total, dtype=np.int64) - np.repeat(starts, counts)
    vals = idx - np.repeat(cmax, counts)
    out = np.concatenate([np.repeat(v, counts, axis=0), vals[:, None]], axis=1)
    return out, np.repeat(norms, counts) + vals * vals


def _ball_chunks(k: int, t: float, chunk_rows: int = _CHUNK_ROWS):
    """Yield (V, norm_sq) chunks covering the integer ball of radius t in Z^k."""
    if k == 0:
        yield np.zeros((1, 0), dtype=np.int64), np.zeros(1, dtype=np.int64)
        return
    t2 = float(t) * float(t)
    c0 = int(_isqrt_leq(np.array([t2]))[0])
    vals0 = np.arange(-c0, c0 + 1, dtype=np.int64)
    per_v0 = max(1.0, (2.0 * t + 1.0) ** (k - 1))
    band = max(1, int(chunk_rows / per_v0))
    for lo in range(0, len(vals0), band):
        v = vals0[lo : lo + band, None]
        norms = (v * v).ravel()
        for _ in range(k - 1):
            v, norms = _expand(v, norms, t2)
        if len(v):
            yield v, norms


# ---------------------------------------------------------------------------
# per-chunk kernels


def _rows_quad(jsub: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Row-wise x J x^T, skipping zero entries of J."""
    out = np.zeros(x.shape[0])
    k = jsub.shape[0]
    for i in range(k):
        if jsub[i, i] != 0.0:
            out += jsub[i, i] * x[:, i] * x[:, i]
        for l in range(i + 1, k):
            if jsub[i, l] != 0.0:
                out += (2.0 * jsub[i, l]) * x[:, i] * x[:, l]
    return out


def _pivot(j_mat: np.ndarray) -> int:
    """Coordinate with the largest |diagonal|; densest column if all vanish."""
    diag = np.abs(np.diag(j_mat))
    if float(diag.max()) > 0.0:
        return int(np.argmax(diag))
    return int(np.argmax(np.abs(j_mat).sum(axis=0)))


def _pivot_coeffs(j_mat, alpha, xi, j, rest, p, pnorm, t2):
    """Quadratic a*x^2 + b*x + c in the pivot variable x = v_j + alpha_j.

    Returns (a, b, c, hi) with hi the admissible |v_j| bound per prefix row.
    """
    x = p.astype(float) + alpha[rest]
    a = float(j_mat[j, j])
    b = 2.0 * (x @ j_mat[rest, j])
    c = _rows_quad(j_mat[np.ix_(rest, rest)], x) - xi
    hi = _isqrt_leq(t2 - pnorm.astype(float))
    return a, b, c, hi


def _candidate_values(a, b, c, hi, alpha_j):
    """Integer pivot candidates per row: around roots, vertex, endpoints."""
    hi_f = hi.astype(float)
    if a != 0.0:
        disc = b * b - 4.0 * a * c
        sq = np.sqrt(np.maximum(disc, 0.0))
        qq = -0.5 * (b + np.copysign(sq, b))
        safe = np.where(qq != 0.0, qq, 1.0)
        with np.errstate(divide="ignore", invalid="ignore"):
            x1 = qq / a
            x2 = np.where(qq != 0.0, c / safe, 0.0)
        xv = -b / (2.0 * a)
        neg = disc < 0.0
        x1 = np.where(neg, xv, x1)
        x2 = np.where(neg, xv, x2)
        roots = np.stack([x1, x2, xv], axis=1) - alpha_j
    else:
        safe = np.where(b != 0.0, b, 1.0)
        root = np.where(b != 0.0, -c / safe, 0.0)
        roots = (root - alpha_j)[:, None]
    roots = np.nan_to_num(roots, nan=0.0, posinf=1e18, neginf=-1e18)
    base = np.floor(roots)
    w = np.concatenate([base, base + 1.0, -hi_f[:, None], hi_f[:, None]], axis=1)
    return np.clip(w, -hi_f[:, None], hi_f[:, None])


def _eval_pivot(a, b, c, w, alpha_j):
    x = w + alpha_j
    return np.abs((a * x + b[:, None]) * x + c[:, None])


def _lex_min_rows(v: np.ndarray) -> np.ndarray:
    order = np.lexsort(v.T[::-1])
    return v[order[0]]


def _assemble(p_rows: np.ndarray, w: np.ndarray, j: int) -> np.ndarray:
    """Insert pivot values into prefix rows at coordinate j."""
    m, k = p_rows.shape
    out = np.empty((m, k + 1), dtype=np.int64)
    out[:, :j] = p_rows[:, :j]
    out[:, j] = w
    out[:, j + 1 :] = p_rows[:, j:]
    return out


# ---------------------------------------------------------------------------
# public operations


def min_gap(prob: SearchProblem) -> GapResult:
    """Exact minimum of |Q(v + alpha) - xi| over the integer ball of radius t."""
    if prob.t < 0:
        raise EmptyBall(f"negative radius t={prob.t}")
    form = prob.form
    n = form.n
    j_mat = form.J_float
    alpha = np.asarray(prob.alpha, dtype=float)
    j = _pivot(j_mat)
    rest = [i for i in range(n) if i != j]
    t2 = float(prob.t) * float(prob.t)

    best_gap = math.inf
    best_v: np.ndarray | None = None
    nodes = 0
    peak = 0.0
    for p_rows, pnorm in _ball_chunks(n - 1, prob.t):
        nodes += p_rows.shape[0]
        a, b, c, hi = _pivot_coeffs(j_mat, alpha, prob.xi, j, rest, p_rows, pnorm, t2)
        w = _candidate_values(a, b, c, hi, alpha[j])
        f = _eval_pivot(a, b, c, w, alpha[j])
        chunk_min = float(f.min())
        peak = max(peak, float(np.abs(c).max(initial=0.0)))
        if chunk_min > best_gap:
            continue
        rows, cols = np.nonzero(f == chunk_min)
        ties = _assemble(p_rows[rows], w[rows, cols].astype(np.int64), j)
        cand = _lex_min_rows(ties)
        if chunk_min < best_gap or (best_v is not None and tuple(cand) < tuple(best_v)):
            best_gap = chunk_min
            best_v = cand
    assert best_v is not None
    if peak + abs(prob.xi) > _PRECISION_CAP:
        warnings.warn(
            "form values exceed 2**52; gap digits may be unreliable", PrecisionLossWarning
        )
    gap = abs(form.evaluate(best_v.astype(float) + alpha) - prob.xi)
    count = count_solutions(prob) if prob.effective_eps is not None else None
    return GapResult(v_best=tuple(int(x) for x in best_v), gap=gap, nodes=nodes, solutions_within=count)


def brute_force_min_gap(prob: SearchProblem) -> GapResult:
    """Exhaustive scan of the integer ball; the testing oracle for min_gap."""
    if prob.t < 0:
        raise EmptyBall(f"negative radius t={prob.t}")
    form = prob.form
    n = form.n
    if (2 * math.floor(prob.t) + 1) ** n > _BRUTE_NODE_CAP:
        raise SearchTooLarge(f"box (2*{math.floor(prob.t)}+1)^{n} exceeds {_BRUTE_NODE_CAP}")
    j_mat = form.J_float
    alpha = np.asarray(prob.alpha, dtype=float)
    best_gap = math.inf
    best_v: np.ndarray | None = None
    nodes = 0
    count = 0
    eps = prob.effective_eps
    for v_rows, _ in _ball_chunks(n, prob.t):
        nodes += v_rows.shape[0]
        vals = _rows_quad(j_mat, v_rows.astype(float) + alpha) - prob.xi
        gaps = np.abs(vals)
        if eps is not None:
            count += int((gaps < eps).sum())
        chunk_min = float(gaps.min())
        if chunk_min > best_gap:
            continue
        ties = v_rows[gaps == chunk_min]
        cand = _lex_min_rows(ties)
        if chunk_min < best_gap or (best_v is not None and tuple(cand) < tuple(best_v)):
            best_gap = chunk_min
            best_v = cand
    assert best_v is not None
    gap = abs(form.evaluate(best_v.astype(float) + alpha) - prob.xi)
    return GapResult(
        v_best=tuple(int(x) for x in best_v),
        gap=gap,
        nodes=nodes,
        solutions_within=count if eps is not None else None,
    )


def _count_open_interval(lo, hi, bound, coeffs):
    """Integers v in the open interval (lo, hi) intersected with [-bound, bound]
    satisfying |A v^2 + B v + C| < eps. Interior integers are counted by
    formula; the four integers nearest each end are checked by evaluation."""
    a2, b2, c2, eps = coeffs
    bound_f = bound.astype(float)
    i0 = np.maximum(np.floor(lo) + 1.0, -bound_f)
    i1 = np.minimum(np.ceil(hi) - 1.0, bound_f)
    interior = np.maximum(i1 - i0 - 3.0, 0.0)
    cand = np.stack([i0, i0 + 1.0, i1 - 1.0, i1], axis=1)
    valid = np.stack(
        [i1 >= i0, i1 >= i0 + 1.0, i1 >= i0 + 3.0, i1 >= i0 + 3.0], axis=1
    )
    vals = np.abs((a2[:, None] * cand + b2[:, None]) * cand + c2[:, None])
    fringe = (valid & (vals < eps)).sum(axis=1)
    return interior + fringe


def count_solutions(prob: SearchProblem) -> int:
    """Number of v in the ball with |Q(v + alpha) - xi| < eps."""
    eps = prob.effective_eps
    if eps is None:
        raise ValueError("count_solutions needs eps or kappa on the problem")
    if prob.t < 0:
        raise EmptyBall(f"negative radius t={prob.t}")
    form = prob.form
    n = form.n
    j_mat = form.J_float
    alpha = np.asarray(prob.alpha, dtype=float)
    j = _pivot(j_mat)
    rest = [i for i in range(n) if i != j]
    t2 = float(prob.t) * float(prob.t)
    aj = alpha[j]

    total = 0
    for p_rows, pnorm in _ball_chunks(n - 1, prob.t):
        a, b, c, hi = _pivot_coeffs(j_mat, alpha, prob.xi, j, rest, p_rows, pnorm, t2)
        # polynomial in the integer pivot variable v: A v^2 + B v + C
        a2 = np.full(len(b), a)
        b2 = 2.0 * a * aj + b
        c2 = (a * aj + b) * aj + c
        if a < 0.0:
            a2, b2, c2 = -a2, -b2, -c2
        counts = np.zeros(len(b))
        coeffs = (a2, b2, c2, eps)
        if a != 0.0:
            aa = abs(a)
            d1 = b2 * b2 - 4.0 * aa * (c2 - eps)
            d2 = b2 * b2 - 4.0 * aa * (c2 + eps)
            has = d1 > 0.0
            sq1 = np.sqrt(np.maximum(d1, 0.0))
            u1 = (-b2 - sq1) / (2.0 * aa)
            u2 = (-b2 + sq1) / (2.0 * aa)
            sq2 = np.sqrt(np.maximum(d2, 0.0))
            w1 = (-b2 - sq2) / (2.0 * aa)
            w2 = (-b2 + sq2) / (2.0 * aa)
            inner = d2 > 0.0
            lo_a, hi_a = u1, np.where(inner, np.minimum(w1, u2), u2)
            lo_b, hi_b = np.where(inner, np.maximum(w2, u1), u2), u2
            counts = np.where(
                has,
                _count_open_interval(lo_a, hi_a, hi, coeffs)
                + np.where(inner, _count_open_interval(lo_b, hi_b, hi, coeffs), 0.0),
                0.0,
            )
        else:
            lin = b2 != 0.0
            safe = np.where(lin, b2, 1.0)
            r1 = (-eps - c2) / safe
            r2 = (eps - c2) / safe
            lo_r = np.minimum(r1, r2)
            hi_r = np.maximum(r1, r2)
            lin_counts = _count_open_interval(lo_r, hi_r, hi, coeffs)
            flat = (2.0 * hi.astype(float) + 1.0) * (np.abs(c2) < eps)
            counts = np.where(lin, lin_counts, flat)
        total += int(round(float(counts.sum())))
    return total


def decay_series(form: QuadraticForm, xi: float, alpha, t_grid) -> list[tuple[float, float]]:
    """Gap at each radius of an increasing grid; non-increasing by nesting."""
    grid = [float(t) for t in t_grid]
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("t_grid must be strictly increasing")
    out = []
    for t in grid:
        res = min_gap(SearchProblem(form=form, alpha=tuple(alpha), xi=xi, t=t))
        out.append((t, res.gap))
    return out


def degenerate_zero(series) -> bool:
    """True when every gap in the series is exactly zero."""
    return all(g == 0.0 for _, g in series)


def fit_exponent(series) -> FitResult:
    """OLS slope of log(gap) against log(t), sign-flipped to a decay rate."""
    pts = [(t, g) for t, g in series if g > 0.0]
    dropped = len(list(series)) - len(pts)
    if len(pts) < 3:
        raise DegenerateSeries(f"need >= 3 positive gaps, have {len(pts)} ({dropped} dropped)")
    fit = ols_loglog([t for t, _ in pts], [g for _, g in pts])
    return FitResult(kappa_hat=-fit.slope, r2=fit.r2, dropped=dropped)
