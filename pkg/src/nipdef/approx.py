"""Epsilon-approximations of set systems under rational probability measures.

A multiset ``Y`` of points is an eps-approximation of ``S`` under ``mu`` if
``|mu(s) - |Y & s| / |Y|| <= eps`` for every row ``s``.  Everything is exact:
measures are :class:`fractions.Fraction` vectors and errors are Fractions.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, floor, lcm
from typing import Iterable, Iterator, Sequence

import numpy as np

from .setsystem import SetSystem

__all__ = [
    "ApproximationNotFound",
    "Measure",
    "Multiset",
    "SearchTooLarge",
    "approx_error",
    "deviations",
    "find_approximation",
    "min_approximation_size",
    "EXHAUSTIVE_CUTOFF",
]

EXHAUSTIVE_CUTOFF = 2_000_000


class ApproximationNotFound(RuntimeError):
    """No verified approximation within the budget.  Says nothing about existence."""


class SearchTooLarge(ValueError):
    """The exhaustive oracle refuses instances above its cutoff."""


@dataclass(frozen=True)
class Measure:
    """A probability vector with exact rational weights.

    Also used for mixed strategies of the agreement game.
    """

    weights: tuple[Fraction, ...]

    def __post_init__(self):
        w = tuple(Fraction(x) for x in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise ValueError("empty measure")
        if any(x < 0 for x in w):
            raise ValueError("negative weight")
        if sum(w) != 1:
            raise ValueError(f"weights sum to {sum(w)}, not 1")

    @classmethod
    def uniform(cls, n: int) -> Measure:
        return cls((Fraction(1, n),) * n)

    @classmethod
    def point(cls, n: int, i: int) -> Measure:
        return cls(tuple(Fraction(int(j == i)) for j in range(n)))

    @classmethod
    def from_strings(cls, items: Iterable[str]) -> Measure:
        return cls(tuple(Fraction(s) for s in items))

    def to_strings(self) -> list[str]:
        return [f"{w.numerator}/{w.denominator}" for w in self.weights]

    def __len__(self):
        return len(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def of_mask(self, mask: int) -> Fraction:
        return sum((w for j, w in enumerate(self.weights) if mask >> j & 1), Fraction(0))

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(j for j, w in enumerate(self.weights) if w)


@dataclass(frozen=True)
class Multiset:
    """A counted collection of indices, stored as sorted ``(index, count)`` pairs."""

    counts: tuple[tuple[int, int], ...]

    def __post_init__(self):
        merged: Counter = Counter()
        for i, c in self.counts:
            if c < 0:
                raise ValueError("negative multiplicity")
            merged[int(i)] += int(c)
        pairs = tuple(sorted((i, c) for i, c in merged.items() if c))
        if not pairs:
            raise ValueError("multiset must have at least one element")
        if pairs[0][0] < 0:
            raise ValueError("negative index")
        object.__setattr__(self, "counts", pairs)

    @classmethod
    def from_indices(cls, indices: Iterable[int]) -> Multiset:
        return cls(tuple(Counter(indices).items()))

    @property
    def size(self) -> int:
        return sum(c for _, c in self.counts)

    def __len__(self):
        return self.size

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, _ in self.counts)

    def count(self, i: int) -> int:
        return dict(self.counts).get(i, 0)

    def elements(self) -> list[int]:
        return [i for i, c in self.counts for _ in range(c)]

    def count_in(self, mask: int) -> int:
        return sum(c for i, c in self.counts if mask >> i & 1)

    def to_pairs(self) -> list[list[int]]:
        return [[i, c] for i, c in self.counts]


def _check(S: SetSystem, mu: Measure, Y: Multiset | None = None):
    if len(mu) != S.ncols:
        raise ValueError(f"measure has {len(mu)} weights for {S.ncols} columns")
    if Y is not None and Y.counts[-1][0] >= S.ncols:
        raise IndexError("multiset index out of range")


def deviations(S: SetSystem, mu: Measure, Y: Multiset) -> list[Fraction]:
    """Signed ``mu(s) - freq_Y(s)`` for every row ``s``."""
    _check(S, mu, Y)
    n = Y.size
    return [mu.of_mask(m) - Fraction(Y.count_in(m), n) for m in S.masks]


def approx_error(S: SetSystem, mu: Measure, Y: Multiset) -> Fraction:
    return max(abs(d) for d in deviations(S, mu, Y))


class _Scaled:
    """Integer form of the test ``|mu(s) - c/size| <= eps``.

    With ``mu(s) = a_s / D`` and ``eps = p/q`` the test becomes
    ``q * |a_s * size - c * D| <= p * D * size``.
    """

    def __init__(self, S: SetSystem, mu: Measure, eps: Fraction, max_size: int):
        self.D = lcm(*(w.denominator for w in mu.weights))
        self.p, self.q = eps.numerator, eps.denominator
        a = [mu.of_mask(m) * self.D for m in S.masks]
        big = self.q * self.D * max_size * 4 + self.p * self.D * max_size
        dtype = np.int64 if big < 2**62 else object
        self.a = np.array([int(x) for x in a], dtype=dtype)
        self.incidence = np.array(S.rows, dtype=dtype).T  # (ncols, nrows)
        self.dtype = dtype

    def first_ok(self, combos: np.ndarray, size: int) -> int | None:
        counts = self.incidence[combos].sum(axis=1)
        lhs = self.q * np.abs(self.a * size - counts * self.D)
        ok = np.all(lhs <= self.p * self.D * size, axis=1)
        hits = np.flatnonzero(ok)
        return int(hits[0]) if hits.size else None


def _combos(ncols: int, size: int, chunk: int = 50_000) -> Iterator[np.ndarray]:
    it = itertools.combinations_with_replacement(range(ncols), size)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.intp)


def _search_size(scaled: _Scaled, ncols: int, size: int) -> Multiset | None:
    for block in _combos(ncols, size):
        k = scaled.first_ok(block, size)
        if k is not None:
            return Multiset.from_indices(block[k].tolist())
    return None


def _n_multisets(ncols: int, size: int) -> int:
    return comb(ncols + size - 1, size)


def _proportional(mu: Measure, size: int) -> Multiset | None:
    # largest-remainder rounding of size * mu
    exact = [w * size for w in mu.weights]
    base = [floor(x) for x in exact]
    rest = size - sum(base)
    order = sorted(range(len(exact)), key=lambda j: (-(exact[j] - base[j]), j))
    for j in order[:rest]:
        base[j] += 1
    pairs = tuple((j, c) for j, c in enumerate(base) if c)
    return Multiset(pairs) if pairs else None


def _sizes(budget: int) -> list[int]:
    out, s = [], 1
    while s < budget:
        out.append(s)
        s *= 2
    out.append(budget)
    return out


def find_approximation(
    S: SetSystem,
    mu: Measure,
    eps: Fraction | int | str,
    budget: int,
    seed: int = 0,
    *,
    tries: int = 64,
    cutoff: int = EXHAUSTIVE_CUTOFF,
) -> Multiset:
    """Return a verified eps-approximation of size at most ``budget``.

    Small instances are searched exhaustively by increasing size, so the
    result is then of minimum size.  Larger ones sample from ``mu`` with a
    seeded generator at sizes 1, 2, 4, ... up to ``budget``; at each size
    the rounded proportional multiset is tried before ``tries`` random draws.
    """
    eps = Fraction(eps)
    if not 0 <= eps <= 1:
        raise ValueError("eps must lie in [0, 1]")
    if budget < 1:
        raise ValueError("budget must be at least 1")
    _check(S, mu)
    n = S.ncols
    space = sum(_n_multisets(n, s) for s in range(1, budget + 1))
    if space <= cutoff:
        scaled = _Scaled(S, mu, eps, budget)
        for size in range(1, budget + 1):
            Y = _search_size(scaled, n, size)
            if Y is not None:
                assert approx_error(S, mu, Y) <= eps
                return Y
        raise ApproximationNotFound(f"no {eps}-approximation of size <= {budget}")

    rng = random.Random(seed)
    support = list(mu.support)
    weights = [float(mu[j]) for j in support]
    for size in _sizes(budget):
        candidates = [_proportional(mu, size)]
        candidates += [Multiset.from_indices(rng.choices(support, weights, k=size)) for _ in range(tries)]
        for Y in candidates:
            if Y is not None and approx_error(S, mu, Y) <= eps:
                return Y
    raise ApproximationNotFound(f"no verified {eps}-approximation found with budget {budget}")


def min_approximation_size(
    S: SetSystem,
    mu: Measure,
    eps: Fraction | int | str,
    *,
    cutoff: int = EXHAUSTIVE_CUTOFF,
) -> int:
    """Exact minimum size of an eps-approximation, by exhaustive enumeration.

    The proportional multiset of size ``lcm`` of the weight denominators has
    error 0, so the search always terminates; it refuses with
    :class:`SearchTooLarge` once the enumerated candidates pass ``cutoff``.
    """
    eps = Fraction(eps)
    _check(S, mu)
    ceiling = lcm(*(w.denominator for w in mu.weights))
    scaled = _Scaled(S, mu, eps, ceiling)
    spent = 0
    for size in range(1, ceiling + 1):
        spent += _n_multisets(S.ncols, size)
        if spent > cutoff:
            raise SearchTooLarge(f"more than {cutoff} candidate multisets")
        if _search_size(scaled, S.ncols, size) is not None:
            return size
    return ceiling


def brute_force_error(S: SetSystem, mu: Measure, Y: Sequence[int]) -> Fraction:
    """Plain-loop error of an index list; an oracle kept apart from the scaled test."""
    n = len(Y)
    worst = Fraction(0)
    for row in S.rows:
        m = sum((mu[j] for j, b in enumerate(row) if b), Fraction(0))
        c = sum(1 for y in Y if row[y])
        worst = max(worst, abs(m - Fraction(c, n)))
    return worst
