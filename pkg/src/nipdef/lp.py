"""Zero-sum games on nonnegative matrices.

``B`` is an ``n x h`` matrix; the column player picks a mixed strategy
``nu`` to maximise ``min_i (B nu)_i``, the row player picks ``mu`` to
minimise ``max_j (mu^T B)_j``.  The exact route is a Fraction simplex on

    maximise sum(x)  subject to  B^T x <= 1,  x >= 0

whose origin is feasible, so no phase 1 is needed.  The optimal ``x``
rescales to ``mu``, the slack prices rescale to ``nu`` and the value is
``1 / sum(x)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

import numpy as np

__all__ = ["GameSolverError", "exact_zero_sum", "mwu_zero_sum", "payoff_bounds"]

Matrix = Sequence[Sequence[int]]


class GameSolverError(RuntimeError):
    pass


def payoff_bounds(B: Matrix, nu: Sequence[Fraction], mu: Sequence[Fraction]) -> tuple[Fraction, Fraction]:
    """``(min_i (B nu)_i, max_j (mu^T B)_j)``; the game value lies between them."""
    lower = min(sum((nu[j] for j, b in enumerate(row) if b), Fraction(0)) for row in B)
    upper = max(
        sum((mu[i] for i in range(len(B)) if B[i][j]), Fraction(0)) for j in range(len(B[0]))
    )
    return lower, upper


def _simplex_max(B: Matrix) -> tuple[list[Fraction], list[Fraction], Fraction]:
    n, h = len(B), len(B[0])
    width = n + h
    # one constraint row per column of B, slack variable n + j
    T = []
    for j in range(h):
        row = [Fraction(B[i][j]) for i in range(n)] + [Fraction(0)] * h + [Fraction(1)]
        row[n + j] = Fraction(1)
        T.append(row)
    obj = [Fraction(1)] * n + [Fraction(0)] * h + [Fraction(0)]
    basis = [n + j for j in range(h)]

    while True:
        # Bland's rule on entering and leaving variables; no cycling
        enter = next((c for c in range(width) if obj[c] > 0), None)
        if enter is None:
            break
        best = None
        for r in range(h):
            a = T[r][enter]
            if a > 0:
                key = (T[r][-1] / a, basis[r])
                if best is None or key < best[0]:
                    best = (key, r)
        if best is None:
            raise GameSolverError("unbounded program; some row of B is all zero")
        r = best[1]
        prow = T[r]
        piv = prow[enter]
        if piv != 1:
            prow = [v / piv for v in prow]
            T[r] = prow
        nz = [c for c, v in enumerate(prow) if v]
        for rr in range(h):
            if rr == r:
                continue
            f = T[rr][enter]
            if f:
                row = T[rr]
                for c in nz:
                    row[c] -= f * prow[c]
        f = obj[enter]
        for c in nz:
            obj[c] -= f * prow[c]
        basis[r] = enter

    x = [Fraction(0)] * n
    for r, var in enumerate(basis):
        if var < n:
            x[var] = T[r][-1]
    y = [-obj[n + j] for j in range(h)]
    return x, y, -obj[-1]


def exact_zero_sum(B: Matrix) -> tuple[Fraction, list[Fraction], list[Fraction]]:
    """Exact value and optimal strategies ``(value, nu, mu)``."""
    if not B or not B[0]:
        raise ValueError("empty game matrix")
    n, h = len(B), len(B[0])
    if any(len(row) != h for row in B):
        raise ValueError("ragged game matrix")
    if any(v < 0 for row in B for v in row):
        raise ValueError("game matrix must be nonnegative")
    zero_rows = [i for i, row in enumerate(B) if not any(row)]
    if zero_rows:
        # the row player plays an all-zero row; value 0
        mu = [Fraction(int(i == zero_rows[0])) for i in range(n)]
        nu = [Fraction(1, h)] * h
        return Fraction(0), nu, mu
    x, y, z = _simplex_max(B)
    if z <= 0 or sum(x) != z or sum(y) != z:
        raise GameSolverError("simplex returned an inconsistent optimum")
    mu = [v / z for v in x]
    nu = [v / z for v in y]
    return 1 / z, nu, mu


def _to_simplex(p: np.ndarray, den: int) -> list[Fraction]:
    # largest-remainder rounding onto the grid 1/den
    scaled = p / p.sum() * den
    base = np.floor(scaled).astype(np.int64)
    short = den - int(base.sum())
    for j in np.argsort(-(scaled - base), kind="stable")[:short]:
        base[j] += 1
    return [Fraction(int(k), den) for k in base]


def mwu_zero_sum(
    B: Matrix,
    tolerance: Fraction = Fraction(1, 48),
    *,
    eta: float = 1.0,
    max_iter: int = 200_000,
    den: int = 10**6,
) -> tuple[Fraction, list[Fraction], list[Fraction], Fraction]:
    """Approximate solution by multiplicative weights, with an exact certificate.

    Both players run optimistic Hedge (step ``eta``, each update uses the
    last loss counted twice minus the one before), which makes the averaged
    strategies converge at rate ``O(1/T)``.  The averages are rounded to
    rationals and the gap ``max_j (mu^T B)_j - min_i (B nu)_i`` is computed
    exactly.  Returns ``(lower, nu, mu, gap)`` once the gap is at most
    ``tolerance``; ``lower`` is then within ``tolerance`` of the value.
    """
    tolerance = Fraction(tolerance)
    M = np.asarray(B, dtype=float)
    n, h = M.shape
    w_row = np.zeros(n)  # log weights, row player minimises
    w_col = np.zeros(h)
    prev_row = np.zeros(n)
    prev_col = np.zeros(h)
    avg_row = np.zeros(n)
    avg_col = np.zeros(h)
    t = 0
    check = 16
    while t < max_iter:
        for _ in range(check):
            t += 1
            p = np.exp(w_row - w_row.max())
            p /= p.sum()
            q = np.exp(w_col - w_col.max())
            q /= q.sum()
            avg_row += p
            avg_col += q
            loss_row = M @ q
            gain_col = p @ M
            w_row -= eta * (2 * loss_row - prev_row)
            w_col += eta * (2 * gain_col - prev_col)
            prev_row, prev_col = loss_row, gain_col
        mu = _to_simplex(avg_row, den)
        nu = _to_simplex(avg_col, den)
        lower, upper = payoff_bounds(B, nu, mu)
        if upper - lower <= tolerance:
            return lower, nu, mu, upper - lower
        check *= 2
    raise GameSolverError(f"no certificate within tolerance {tolerance} after {t} iterations")
