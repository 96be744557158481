"""Teaching sets: isolating one concept by its trace on a few points.

The recursion behind :func:`isolate`: with ``n`` the VC dimension of the
family and ``k = 2**n * (n - 1) + 1``, pick ``c <= b`` with ``|b| = k`` such
that the nonempty subfamily ``{F : F & b == c}`` is as small as possible.
That subfamily has VC dimension below ``n``, so recursing on it and adding
``b`` to the points gives a teaching set of size at most ``t(n)`` where
``t(n) = t(n-1) + k``.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .setsystem import SetSystem, TypeOverA, dual, vc_dim

__all__ = [
    "ConstraintIsolation",
    "SignedTuple",
    "TeachingSet",
    "UnsatisfiableConstraint",
    "isolate",
    "isolate_under_constraint",
    "k_budget",
    "min_teaching_set",
    "t_budget",
    "teaching_sequence",
    "is_teaching_set",
]

log = logging.getLogger(__name__)

MIN_TEACHING_MAX_COLUMNS = 24


class UnsatisfiableConstraint(ValueError):
    pass


@lru_cache(maxsize=None)
def t_budget(n: int) -> int:
    """``t(0) = 0``, ``t(n) = t(n-1) + 2**n * (n-1) + 1``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n == 0:
        return 0
    return t_budget(n - 1) + 2**n * (n - 1) + 1


def k_budget(n: int, m: int) -> int:
    """Size bound for isolation under an ``m``-column constraint when the
    parameters' family has VC dimension ``n``: ``t(2**(n+1) - 1) + m``."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    return t_budget(2 ** (n + 1) - 1) + m


@dataclass(frozen=True)
class TeachingSet:
    concept: int
    points: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"concept": self.concept, "points": list(self.points)}


@dataclass(frozen=True)
class SignedTuple:
    """Sign constraints on columns.  Sign 0 asks for bit 1, sign 1 for bit 0.

    Construction sorts by column and merges repeats; a column asked for both
    signs is kept once (with sign 0) and :attr:`contradictory` is set.
    """

    pairs: tuple[tuple[int, int], ...]
    contradictory: bool = False

    def __post_init__(self):
        seen: dict[int, set[int]] = {}
        for col, sign in self.pairs:
            if sign not in (0, 1):
                raise ValueError(f"sign must be 0 or 1, got {sign}")
            if col < 0:
                raise ValueError("negative column index")
            seen.setdefault(int(col), set()).add(int(sign))
        pairs = tuple((c, min(s)) for c, s in sorted(seen.items()))
        object.__setattr__(self, "pairs", pairs)
        if any(len(s) > 1 for s in seen.values()):
            object.__setattr__(self, "contradictory", True)

    @classmethod
    def of(cls, pairs: Iterable[Sequence[int]]) -> SignedTuple:
        return cls(tuple((int(c), int(s)) for c, s in pairs))

    @property
    def columns(self) -> tuple[int, ...]:
        return tuple(c for c, _ in self.pairs)

    def __len__(self):
        return len(self.pairs)

    @property
    def masks(self) -> tuple[int, int]:
        """``(column mask, required bits)``."""
        cm = bits = 0
        for c, s in self.pairs:
            cm |= 1 << c
            if s == 0:
                bits |= 1 << c
        return cm, bits

    def satisfied_by(self, row: Sequence[int] | int) -> bool:
        if self.contradictory:
            return False
        if isinstance(row, int):
            cm, bits = self.masks
            return row & cm == bits
        return all(row[c] == 1 - s for c, s in self.pairs)

    def satisfying_rows(self, S: SetSystem) -> list[int]:
        if self.contradictory:
            return []
        cm, bits = self.masks
        return [i for i, m in enumerate(S.masks) if m & cm == bits]

    def to_list(self) -> list[list[int]]:
        return [[c, s] for c, s in self.pairs]


@dataclass(frozen=True)
class ConstraintIsolation:
    p0: TypeOverA
    A0: tuple[int, ...]
    k_budget: int
    sharper_budget: int

    def to_dict(self) -> dict:
        return {"p0": list(self.p0.bits), "A0": list(self.A0), "budget": self.k_budget}


def is_teaching_set(masks: Sequence[int], concept: int, points: Iterable[int]) -> bool:
    """True iff every row agreeing with ``concept`` on ``points`` equals it."""
    pm = sum(1 << j for j in points)
    target = masks[concept]
    return all(m == target for m in masks if m & pm == target & pm)


def _isolate_masks(masks: list[int], ncols: int) -> tuple[int, int]:
    """Isolate within a list of distinct masks; returns ``(mask, points_mask)``."""
    points = 0
    fam = masks
    while len(fam) > 1:
        n = vc_dim(SetSystem.from_masks(fam, ncols))
        k = min(2**n * (n - 1) + 1, ncols)
        best = None  # (size, b, c)
        for b in itertools.combinations(range(ncols), k):
            bm = sum(1 << j for j in b)
            groups = Counter(m & bm for m in fam)
            # smallest class, then smallest c by its sorted index tuple
            size, _, cmask = min((cnt, tuple(j for j in b if c >> j & 1), c) for c, cnt in groups.items())
            if best is None or size < best[0]:
                best = (size, bm, cmask)
                if size == 1:
                    break
        _, bm, cmask = best
        points |= bm
        fam = [m for m in fam if m & bm == cmask]
    return fam[0], points


def isolate(S: SetSystem) -> TeachingSet:
    """A concept of ``S`` and a teaching set for it of size ``<= t(vc_dim(S))``.

    ``concept`` indexes the first row of ``S`` carrying the isolated trace.
    """
    masks = sorted(set(S.masks))
    mask, pm = _isolate_masks(masks, S.ncols)
    points = tuple(j for j in range(S.ncols) if pm >> j & 1)
    concept = S.masks.index(mask)
    if not is_teaching_set(S.masks, concept, points):
        raise AssertionError("isolation produced a non-teaching set")
    return TeachingSet(concept, points)


def min_teaching_set(S: SetSystem, concept: int) -> tuple[int, ...]:
    """Smallest point set on which ``concept`` differs from every other row."""
    if S.ncols > MIN_TEACHING_MAX_COLUMNS:
        raise ValueError(f"exhaustive search refused above {MIN_TEACHING_MAX_COLUMNS} columns")
    masks = S.masks
    target = masks[concept]
    others = {m ^ target for m in masks if m != target}
    for size in range(S.ncols + 1):
        for X in itertools.combinations(range(S.ncols), size):
            xm = sum(1 << j for j in X)
            if all(d & xm for d in others):
                return X
    raise AssertionError("unreachable: the full column set separates distinct rows")


def teaching_sequence(S: SetSystem) -> list[TeachingSet]:
    """Isolate, drop the isolated row, repeat until no rows remain.

    Each teaching set is valid relative to the rows not yet removed.
    """
    remaining = sorted(set(S.masks))
    out = []
    while remaining:
        mask, pm = _isolate_masks(remaining, S.ncols)
        out.append(TeachingSet(S.masks.index(mask), tuple(j for j in range(S.ncols) if pm >> j & 1)))
        remaining.remove(mask)
    return out


def isolate_under_constraint(S: SetSystem, chi: SignedTuple, *, dual_vc: int | None = None) -> ConstraintIsolation:
    """A type satisfying ``chi`` together with a small set ``A0`` that pins it down.

    The rows satisfying ``chi`` are restricted to the columns outside ``chi``
    and isolated there; ``A0`` is the resulting teaching set plus ``chi``'s
    columns.  Any row agreeing with ``p0`` on ``A0`` has ``p0``'s full trace.
    ``dual_vc`` (the VC dimension of the column family) may be passed to
    avoid recomputing it.
    """
    if chi.contradictory:
        raise UnsatisfiableConstraint("constraint asks for both signs on one column")
    if chi.pairs and chi.pairs[-1][0] >= S.ncols:
        raise IndexError("constraint column out of range")
    sat = chi.satisfying_rows(S)
    if not sat:
        raise UnsatisfiableConstraint("no row satisfies the constraint")
    cm, _ = chi.masks
    rest = [j for j in range(S.ncols) if not cm >> j & 1]
    fam = sorted({S.masks[i] for i in sat})
    if len(fam) == 1 or not rest:
        mask, X0, fam_vc = fam[0], (), 0
    else:
        # project onto the free columns; distinct satisfying rows stay distinct
        proj = {}
        for m in fam:
            proj[sum(((m >> j) & 1) << t for t, j in enumerate(rest))] = m
        pmasks = sorted(proj)
        sub_mask, sub_points = _isolate_masks(pmasks, len(rest))
        mask = proj[sub_mask]
        X0 = tuple(rest[t] for t in range(len(rest)) if sub_points >> t & 1)
        fam_vc = vc_dim(SetSystem.from_masks(pmasks, len(rest)))

    A0 = tuple(sorted(set(X0) | set(chi.columns)))
    n = vc_dim(dual(S)) if dual_vc is None else dual_vc
    bound = k_budget(n, len(chi))
    sharper = t_budget(min(fam_vc, 2 ** (n + 1) - 1)) + len(chi)
    log.debug("isolation |A0|=%d budget=%d sharper=%d", len(A0), bound, sharper)
    if len(A0) > sharper:
        raise AssertionError(f"|A0|={len(A0)} exceeds t(vc)+m={sharper}")
    realizer = S.masks.index(mask)
    if not is_teaching_set(S.masks, realizer, A0):
        raise AssertionError("A0 does not determine p0")
    return ConstraintIsolation(TypeOverA.of_row(S, realizer), A0, bound, sharper)
