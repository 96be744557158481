"""Finite set systems stored as 0/1 concept matrices.

Rows are concepts (the traces of one element on the parameter set), columns
are the points of the ground set.  Internally every row is also kept as an
integer bitmask where bit ``j`` is the entry in column ``j``; all the
combinatorics below runs on those masks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import comb
from typing import Iterable, Sequence

__all__ = [
    "SetSystem",
    "TypeOverA",
    "complement",
    "dual",
    "restrict",
    "shatters",
    "symmetric_difference_family",
    "trace_count",
    "vc_dim",
    "sauer_shelah_bound",
    "shattered_witness",
]


def _to_mask(bits: Sequence[int]) -> int:
    m = 0
    for j, b in enumerate(bits):
        if b:
            m |= 1 << j
    return m


def _to_bits(mask: int, ncols: int) -> tuple[int, ...]:
    return tuple((mask >> j) & 1 for j in range(ncols))


@dataclass(frozen=True)
class SetSystem:
    """A finite set system.

    ``columns`` holds opaque labels, ``rows`` the bit vectors.  Duplicate
    rows are accepted; :meth:`canonical` removes them and sorts the rest
    lexicographically.
    """

    columns: tuple[str, ...]
    rows: tuple[tuple[int, ...], ...]
    canonical_flag: bool = field(default=False, compare=False)

    def __post_init__(self):
        cols = tuple(str(c) for c in self.columns)
        rows = tuple(tuple(int(b) for b in r) for r in self.rows)
        object.__setattr__(self, "columns", cols)
        object.__setattr__(self, "rows", rows)
        if not cols:
            raise ValueError("a set system needs at least one column")
        if not rows:
            raise ValueError("a set system needs at least one row")
        for i, r in enumerate(rows):
            if len(r) != len(cols):
                raise ValueError(f"row {i} has length {len(r)}, expected {len(cols)}")
            if any(b not in (0, 1) for b in r):
                raise ValueError(f"row {i} contains a value other than 0/1")
        if self.canonical_flag:
            if any(a >= b for a, b in zip(rows, rows[1:])):
                raise ValueError("canonical rows must be distinct and sorted")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], columns: Sequence[str] | None = None) -> SetSystem:
        rows = [tuple(r) for r in rows]
        if columns is None:
            columns = [str(j) for j in range(len(rows[0]) if rows else 0)]
        return cls(tuple(columns), tuple(rows))

    @classmethod
    def from_masks(cls, masks: Iterable[int], ncols: int, columns: Sequence[str] | None = None) -> SetSystem:
        if columns is None:
            columns = [str(j) for j in range(ncols)]
        return cls(tuple(columns), tuple(_to_bits(m, ncols) for m in masks))

    @property
    def ncols(self) -> int:
        return len(self.columns)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @cached_property
    def masks(self) -> tuple[int, ...]:
        return tuple(_to_mask(r) for r in self.rows)

    @property
    def full_mask(self) -> int:
        return (1 << self.ncols) - 1

    def canonical(self) -> SetSystem:
        if self.canonical_flag:
            return self
        return SetSystem(self.columns, tuple(sorted(set(self.rows))), canonical_flag=True)

    def is_canonical(self) -> bool:
        return all(a < b for a, b in zip(self.rows, self.rows[1:]))

    def row_index(self, bits: Sequence[int]) -> int:
        """Index of the first row equal to ``bits``; ``ValueError`` if absent."""
        return self.rows.index(tuple(bits))

    def types(self) -> list[TypeOverA]:
        """One realized type per distinct row, in row order."""
        seen = set()
        out = []
        for i, r in enumerate(self.rows):
            if r not in seen:
                seen.add(r)
                out.append(TypeOverA(r, i))
        return out

    def __str__(self):
        body = "\n".join("".join(map(str, r)) for r in self.rows)
        return f"{self.nrows} {self.ncols}\n{body}"


@dataclass(frozen=True)
class TypeOverA:
    """A realized type: a bit vector over the columns and a row realizing it."""

    bits: tuple[int, ...]
    realizer: int

    def __post_init__(self):
        object.__setattr__(self, "bits", tuple(int(b) for b in self.bits))

    @classmethod
    def of_row(cls, S: SetSystem, index: int) -> TypeOverA:
        if not 0 <= index < S.nrows:
            raise IndexError(f"row {index} out of range")
        return cls(S.rows[index], index)

    @classmethod
    def of_bits(cls, S: SetSystem, bits: Sequence[int]) -> TypeOverA:
        try:
            return cls(tuple(bits), S.row_index(bits))
        except ValueError:
            raise ValueError("type is not realized by any row") from None

    def check(self, S: SetSystem) -> None:
        if not 0 <= self.realizer < S.nrows or S.rows[self.realizer] != self.bits:
            raise ValueError("realizer does not carry the type's bits")

    @property
    def mask(self) -> int:
        return _to_mask(self.bits)


def _point_mask(S: SetSystem, X: Iterable[int]) -> tuple[int, int]:
    X = list(X)
    if len(set(X)) != len(X):
        raise ValueError("point set contains duplicates")
    m = 0
    for j in X:
        if not 0 <= j < S.ncols:
            raise IndexError(f"column {j} out of range for {S.ncols} columns")
        m |= 1 << j
    return m, len(X)


def _shatters_mask(masks: Iterable[int], xmask: int, size: int) -> bool:
    if size == 0:
        return True
    target = 1 << size
    seen = set()
    for m in masks:
        seen.add(m & xmask)
        if len(seen) == target:
            return True
    return False


def shatters(S: SetSystem, X: Iterable[int]) -> bool:
    """True iff every sign pattern on ``X`` is the trace of some row."""
    xmask, size = _point_mask(S, X)
    return _shatters_mask(S.masks, xmask, size)


def trace_count(S: SetSystem, X: Iterable[int]) -> int:
    """Number of distinct row traces on ``X``."""
    xmask, _ = _point_mask(S, X)
    return len({m & xmask for m in S.masks})


@lru_cache(maxsize=4096)
def _vc_of_masks(masks: frozenset[int], ncols: int) -> tuple[int, tuple[int, ...]]:
    # Level-wise search: a set of size d+1 can only be shattered if its
    # d-subsets are, so only extensions of shattered sets are tried.
    level: list[tuple[int, ...]] = [()]
    shattered = {()}
    d = 0
    while (1 << (d + 1)) <= len(masks):
        nxt = []
        for X in level:
            for j in range(X[-1] + 1 if X else 0, ncols):
                Y = X + (j,)
                if any(Y[:i] + Y[i + 1:] not in shattered for i in range(d)):
                    continue
                ymask = sum(1 << y for y in Y)
                if _shatters_mask(masks, ymask, d + 1):
                    nxt.append(Y)
        if not nxt:
            break
        level, shattered = nxt, set(nxt)
        d += 1
    return d, level[0]


def vc_dim(S: SetSystem) -> int:
    """Size of the largest shattered point set (exhaustive search)."""
    return _vc_of_masks(frozenset(S.masks), S.ncols)[0]


def shattered_witness(S: SetSystem) -> tuple[int, ...]:
    """Lexicographically first shattered set of maximum size."""
    return _vc_of_masks(frozenset(S.masks), S.ncols)[1]


def sauer_shelah_bound(npoints: int, d: int) -> int:
    return sum(comb(npoints, i) for i in range(min(d, npoints) + 1))


def dual(S: SetSystem) -> SetSystem:
    """Transpose: points become the rows of ``S``, concepts its columns."""
    C = S.canonical()
    cols = tuple("".join(map(str, r)) for r in C.rows)
    rows = tuple(tuple(r[j] for r in C.rows) for j in range(C.ncols))
    return SetSystem(cols, rows).canonical()


def complement(S: SetSystem) -> SetSystem:
    return SetSystem(S.columns, tuple(tuple(1 - b for b in r) for r in S.rows))


def symmetric_difference_family(S: SetSystem) -> SetSystem:
    """All pairwise XORs of rows, canonicalized."""
    ms = sorted(set(S.masks))
    out = {a ^ b for a, b in itertools.combinations_with_replacement(ms, 2)}
    return SetSystem.from_masks(sorted(out), S.ncols, S.columns).canonical()


def restrict(S: SetSystem, X: Sequence[int]) -> SetSystem:
    """Restrict to the columns ``X`` (in the given order) and deduplicate."""
    X = list(X)
    if not X:
        raise ValueError("cannot restrict to an empty point set")
    _point_mask(S, X)
    cols = tuple(S.columns[j] for j in X)
    rows = tuple(tuple(r[j] for j in X) for r in S.rows)
    return SetSystem(cols, rows).canonical()
