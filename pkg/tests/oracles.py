"""Brute-force reference implementations.

Plain loops over row tuples; nothing here imports the library, so the
library is checked against code that shares none of its shortcuts.
"""

from __future__ import annotations

import itertools
from fractions import Fraction


def traces(rows, X):
    return {tuple(r[j] for j in X) for r in rows}


def shatters(rows, X):
    return len(traces(rows, X)) == 2 ** len(X)


def vc_dim(rows):
    n = len(rows[0])
    best = 0
    # no pruning: try every subset of every size
    for d in range(n + 1):
        if any(shatters(rows, X) for X in itertools.combinations(range(n), d)):
            best = d
    return best


def transpose(rows):
    return sorted(set(zip(*rows)))


def measure_of(mu, row):
    return sum((w for w, b in zip(mu, row) if b), Fraction(0))


def error(rows, mu, Y):
    Y = list(Y)
    worst = Fraction(0)
    for r in rows:
        freq = Fraction(sum(r[y] for y in Y), len(Y))
        worst = max(worst, abs(measure_of(mu, r) - freq))
    return worst


def min_approx_size(rows, mu, eps, max_size=12):
    n = len(rows[0])
    for size in range(1, max_size + 1):
        for Y in itertools.combinations_with_replacement(range(n), size):
            if error(rows, mu, Y) <= eps:
                return size
    return None


def is_teaching_set(rows, concept, points):
    target = tuple(rows[concept][j] for j in points)
    return all(tuple(r[j] for j in points) != target or r == rows[concept] for r in rows)


def min_teaching_size(rows, concept):
    n = len(rows[0])
    for size in range(n + 1):
        if any(is_teaching_set(rows, concept, X) for X in itertools.combinations(range(n), size)):
            return size


def satisfies(row, pairs):
    # sign 0 asks for bit 1
    return all(row[j] == 1 - s for j, s in pairs)


def game_value_grid(B, steps=120):
    """max over a grid of column mixtures of min row payoff; only for two columns."""
    best = Fraction(-1)
    for k in range(steps + 1):
        x = Fraction(k, steps)
        best = max(best, min(x * r[0] + (1 - x) * r[1] for r in B))
    return best
