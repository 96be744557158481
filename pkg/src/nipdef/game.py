"""Hypothesis pools, the agreement game and majority committees.

For a target type ``p`` (realized by row ``c``), every small tuple of
columns ``a`` yields a constraint ``chi = signs of c on a``; a Skolem table
answers each constraint with a witness row ``h_a``.  The agreement matrix
``B[i][j] = [h_j agrees with p at column i]`` defines a zero-sum game.  Once
its value reaches 2/3, an optimal hypothesis distribution ``nu`` is
compressed to a finite committee by a 1/8-approximation, and the committee's
pointwise majority reproduces ``p`` on every column.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .approx import ApproximationNotFound, Measure, Multiset, find_approximation
from .lp import exact_zero_sum, mwu_zero_sum, payoff_bounds
from .setsystem import SetSystem, TypeOverA, dual, symmetric_difference_family, vc_dim
from .teaching import SignedTuple, UnsatisfiableConstraint, isolate_under_constraint

__all__ = [
    "CertificationError",
    "Committee",
    "GameMatrix",
    "GameSolution",
    "HypothesisPool",
    "SkolemTable",
    "Witness",
    "adaptive_pool",
    "build_committee",
    "build_pool",
    "claimN_tuple",
    "game_value",
    "induced_signs",
    "COMMITTEE_EPS",
    "APPROX_TOLERANCE",
    "TARGET_VALUE",
]

TARGET_VALUE = Fraction(2, 3)
COMMITTEE_EPS = Fraction(1, 8)
APPROX_TOLERANCE = Fraction(1, 48)
EXACT_SIZE_CUTOFF = 2000


class CertificationError(RuntimeError):
    """A guarantee that must hold by construction failed; indicates a bug."""


def induced_signs(columns: Sequence[int], b: Sequence[int] | TypeOverA) -> SignedTuple:
    """The sign vector that ``b`` satisfies on ``columns``."""
    bits = b.bits if isinstance(b, TypeOverA) else b
    return SignedTuple(tuple((j, 1 - bits[j]) for j in columns))


@dataclass(frozen=True)
class Witness:
    row: int
    A0: tuple[int, ...] | None = None


class SkolemTable:
    """Witness choice for sign constraints, populated on demand.

    ``"first"`` mode answers with the least satisfying row.  ``"isolated"``
    mode answers with the realizer of :func:`isolate_under_constraint` and
    keeps the determining set ``A0`` with it.
    """

    MODES = ("first", "isolated")

    def __init__(self, S: SetSystem, mode: str = "isolated"):
        if mode not in self.MODES:
            raise ValueError(f"mode must be one of {self.MODES}")
        self.S = S
        self.mode = mode
        self._entries: dict[SignedTuple, Witness] = {}
        self._lock = threading.Lock()
        self._dual_vc: int | None = None

    @property
    def dual_vc(self) -> int:
        if self._dual_vc is None:
            self._dual_vc = vc_dim(dual(self.S))
        return self._dual_vc

    def __len__(self):
        return len(self._entries)

    @property
    def entries(self) -> dict[SignedTuple, Witness]:
        return dict(self._entries)

    def query(self, chi: SignedTuple) -> Witness:
        """Witness for ``chi``; raises :class:`UnsatisfiableConstraint` if none exists."""
        hit = self._entries.get(chi)
        if hit is not None:
            return hit
        if self.mode == "first":
            sat = chi.satisfying_rows(self.S)
            if not sat:
                raise UnsatisfiableConstraint(f"no row satisfies {chi.to_list()}")
            w = Witness(sat[0])
        else:
            iso = isolate_under_constraint(self.S, chi, dual_vc=self.dual_vc)
            w = Witness(iso.p0.realizer, iso.A0)
        with self._lock:
            return self._entries.setdefault(chi, w)


@dataclass(frozen=True)
class HypothesisPool:
    hypotheses: tuple[int, ...]
    provenance: tuple[SignedTuple, ...]
    traces: tuple[tuple[int, ...], ...]
    A0s: tuple[tuple[int, ...] | None, ...]

    def __len__(self):
        return len(self.hypotheses)


def build_pool(S: SetSystem, p: TypeOverA, table: SkolemTable, N: int) -> HypothesisPool:
    """Witnesses of ``p``'s own signs on every column subset of size ``<= N``.

    Subsets are enumerated by size, then lexicographically; hypotheses are
    deduplicated by trace, keeping the first provenance.
    """
    p.check(S)
    if N < 0:
        raise ValueError("N must be nonnegative")
    seen: dict[tuple[int, ...], int] = {}
    hyps, prov, traces, a0s = [], [], [], []
    for size in range(min(N, S.ncols) + 1):
        for cols in itertools.combinations(range(S.ncols), size):
            chi = induced_signs(cols, p)
            w = table.query(chi)
            tr = S.rows[w.row]
            if tr in seen:
                continue
            seen[tr] = len(hyps)
            hyps.append(w.row)
            prov.append(chi)
            traces.append(tr)
            a0s.append(w.A0)
    return HypothesisPool(tuple(hyps), tuple(prov), tuple(traces), tuple(a0s))


@dataclass(frozen=True)
class GameMatrix:
    """``entries[i][j] == 1`` iff hypothesis ``j`` agrees with the target at column ``i``."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise ValueError("game matrix must be nonempty")
        w = len(self.entries[0])
        if any(len(r) != w for r in self.entries):
            raise ValueError("ragged game matrix")

    @classmethod
    def agreement(cls, p: TypeOverA, pool: HypothesisPool) -> GameMatrix:
        return cls(tuple(tuple(int(tr[i] == p.bits[i]) for tr in pool.traces) for i in range(len(p.bits))))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    def __getitem__(self, i):
        return self.entries[i]


@dataclass(frozen=True)
class GameSolution:
    """``value`` is the payoff ``nu`` guarantees, ``min_i (B nu)_i``.

    ``gap`` is ``max_j (mu^T B)_j - value``: zero for the exact solver, at
    most the tolerance for the approximate one.
    """

    value: Fraction
    nu: Measure
    mu: Measure
    gap: Fraction = Fraction(0)
    method: str = "exact"

    def __iter__(self):
        return iter((self.value, self.nu, self.mu))

    def to_dict(self) -> dict:
        v = self.value
        return {
            "value": f"{v.numerator}/{v.denominator}",
            "nu": self.nu.to_strings(),
            "mu": self.mu.to_strings(),
        }


def _undominated_columns(B: Sequence[Sequence[int]]) -> list[int]:
    # column j is dropped if another column is >= it everywhere (first copy kept)
    h = len(B[0])
    cm = [sum(1 << i for i in range(len(B)) if B[i][j]) for j in range(h)]
    keep = []
    for j in range(h):
        dominated = any(
            cm[j] & ~cm[k] == 0 and (cm[j] != cm[k] or k < j) for k in range(h) if k != j
        )
        if not dominated:
            keep.append(j)
    return keep


def game_value(
    B: GameMatrix | Sequence[Sequence[int]],
    method: str = "auto",
    tolerance: Fraction = APPROX_TOLERANCE,
) -> GameSolution:
    """Solve the agreement game.

    ``method`` is ``"exact"``, ``"approx"`` or ``"auto"`` (exact unless the
    matrix exceeds the 2000 x 2000 cutoff).
    """
    rows = B.entries if isinstance(B, GameMatrix) else tuple(tuple(r) for r in B)
    if not rows or not rows[0]:
        raise ValueError("empty game matrix")
    n, h = len(rows), len(rows[0])
    if method == "auto":
        method = "exact" if max(n, h) <= EXACT_SIZE_CUTOFF else "approx"
    if method == "exact":
        keep = _undominated_columns(rows)
        reduced = [[r[j] for j in keep] for r in rows]
        value, nu_r, mu = exact_zero_sum(reduced)
        nu = [Fraction(0)] * h
        for j, w in zip(keep, nu_r):
            nu[j] = w
        lower, upper = payoff_bounds(rows, nu, mu)
        if not lower == value == upper:
            raise CertificationError(f"duality gap: {lower} < {value} < {upper}")
        return GameSolution(value, Measure(tuple(nu)), Measure(tuple(mu)), Fraction(0), "exact")
    if method == "approx":
        lower, nu, mu, gap = mwu_zero_sum(rows, tolerance)
        return GameSolution(lower, Measure(tuple(nu)), Measure(tuple(mu)), gap, "approx")
    raise ValueError(f"unknown method {method!r}")


def adaptive_pool(
    S: SetSystem,
    p: TypeOverA,
    table: SkolemTable,
    *,
    max_n: int | None = None,
    method: str = "auto",
    tolerance: Fraction = APPROX_TOLERANCE,
) -> tuple[int, HypothesisPool, GameMatrix, GameSolution]:
    """Grow ``N`` through 1, 2, 4, ... until the game value reaches 2/3.

    With the approximate solver the stopping threshold is ``2/3 - tolerance``.
    ``N`` is capped at ``max_n`` (default: the number of columns); hitting
    the cap without success raises :class:`CertificationError`.
    """
    cap = S.ncols if max_n is None else min(max_n, S.ncols)
    N = min(1, cap)
    while True:
        pool = build_pool(S, p, table, N)
        B = GameMatrix.agreement(p, pool)
        sol = game_value(B, method, tolerance)
        target = TARGET_VALUE if sol.method == "exact" else TARGET_VALUE - tolerance
        if sol.value >= target:
            return N, pool, B, sol
        if N >= cap:
            raise CertificationError(f"game value {sol.value} < {target} at the cap N={cap}")
        N = min(2 * N, cap)


def claimN_tuple(
    S: SetSystem,
    p: TypeOverA,
    mu: Measure,
    table: SkolemTable,
    budget: int,
    *,
    seed: int = 0,
    relative: bool = True,
) -> list[int]:
    """A column tuple whose witness agrees with ``p`` on measure at least 2/3.

    A 1/3-approximation ``E`` of the symmetric differences ``row ^ c`` (or,
    with ``relative=False``, of all pairwise differences) is found under
    ``mu``; its support is the tuple.  The witness for ``p``'s signs on the
    tuple agrees with ``c`` on ``E``, so its disagreement set has measure at
    most 1/3.
    """
    p.check(S)
    if relative:
        c = S.masks[p.realizer]
        fam = SetSystem.from_masks(sorted({m ^ c for m in S.masks}), S.ncols, S.columns)
    else:
        fam = symmetric_difference_family(S)
    E = find_approximation(fam, mu, Fraction(1, 3), budget, seed)
    tup = list(E.support)
    w = table.query(induced_signs(tup, p))
    disagree = S.masks[w.row] ^ S.masks[p.realizer]
    agree = 1 - mu.of_mask(disagree)
    if agree < TARGET_VALUE:
        raise CertificationError(f"witness agrees on measure {agree} < 2/3")
    return tup


@dataclass(frozen=True)
class Committee:
    """A multiset of hypothesis rows (indices into the ambient system)."""

    members: Multiset
    pool_positions: Multiset = field(compare=False)

    @property
    def m(self) -> int:
        return self.members.size

    def to_dict(self) -> dict:
        return {"members": self.members.to_pairs(), "m": self.m}


def majority_counts(B: GameMatrix, positions: Multiset) -> list[int]:
    """Per column of the target, how many members (with multiplicity) agree."""
    return [positions.count_in(sum(1 << j for j, v in enumerate(row) if v)) for row in B.entries]


def build_committee(
    B: GameMatrix,
    nu: Measure,
    pool: HypothesisPool,
    *,
    seed: int = 0,
    max_budget: int = 4096,
) -> Committee:
    """Compress ``nu`` to a committee with a strict majority on every column.

    The hypotheses are the points and each column ``a`` contributes the set
    of hypotheses with bit 1 at ``a``.  A 1/8-approximation of that family
    under ``nu`` also approximates the complements, hence every agreement
    set; with ``min_i (B nu)_i >= 2/3`` the agreeing fraction is at least
    2/3 - 1/8 > 1/2.  Budgets double from 1 up to ``max_budget``.
    """
    n, h = B.shape
    if len(nu) != h or len(pool) != h:
        raise ValueError("strategy, pool and game matrix disagree in size")
    lower, _ = payoff_bounds(B.entries, nu.weights, [Fraction(1, n)] * n)
    if lower < TARGET_VALUE - APPROX_TOLERANCE:
        raise ValueError(f"nu only guarantees {lower}; need at least 2/3 - 1/48")
    containment = SetSystem(
        tuple(str(r) for r in pool.hypotheses),
        tuple(tuple(tr[a] for tr in pool.traces) for a in range(n)),
    )
    budget = 1
    while True:
        try:
            F = find_approximation(containment, nu, COMMITTEE_EPS, budget, seed)
            break
        except ApproximationNotFound:
            if budget >= max_budget:
                raise
            budget = min(2 * budget, max_budget)
    counts = majority_counts(B, F)
    m = F.size
    bad = [i for i, c in enumerate(counts) if 2 * c <= m]
    if bad:
        raise CertificationError(f"no strict majority at columns {bad}")
    rows = Multiset(tuple((pool.hypotheses[j], c) for j, c in F.counts))
    return Committee(rows, F)
