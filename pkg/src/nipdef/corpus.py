"""Deterministic benchmark families.

A family is named by a spec string ``kind:key=value,...``, e.g.
``thresholds:n=6`` or ``k-interval-unions:n=6,k=2``.

==================  =========================  ============================
kind                parameters                 VC dimension
==================  =========================  ============================
powerset            n (1..12)                  n
thresholds          n (1..64)                  1
intervals           n (1..64)                  2 (1 when n = 1)
k-interval-unions   n (1..16), k (1..n)        min(2k, n)
halfplane-grid      w, h (1..6)                3 once w, h >= 2
mod-classes         n (2..32), q (2..n)        see tests
random              rows, cols, seed           whatever comes out
==================  =========================  ============================
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .setsystem import SetSystem

__all__ = ["FamilySpec", "generate", "parse_spec", "standard_corpus", "KINDS"]

KINDS = ("powerset", "thresholds", "intervals", "k-interval-unions", "halfplane-grid", "mod-classes", "random")

_RANGES = {
    "powerset": {"n": (1, 12)},
    "thresholds": {"n": (1, 64)},
    "intervals": {"n": (1, 64)},
    "k-interval-unions": {"n": (1, 16), "k": (1, 16)},
    "halfplane-grid": {"w": (1, 6), "h": (1, 6)},
    "mod-classes": {"n": (2, 32), "q": (2, 32)},
    "random": {"rows": (1, 4096), "cols": (1, 16), "seed": (-(2**63), 2**63)},
}


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[tuple[str, int], ...] = field(default=())

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown family {self.kind!r}")
        params = tuple(sorted((str(k), int(v)) for k, v in dict(self.params).items()))
        object.__setattr__(self, "params", params)
        ranges = _RANGES[self.kind]
        given = dict(params)
        if set(given) != set(ranges):
            raise ValueError(f"{self.kind} takes parameters {sorted(ranges)}, got {sorted(given)}")
        for k, (lo, hi) in ranges.items():
            if not lo <= given[k] <= hi:
                raise ValueError(f"{self.kind}: {k}={given[k]} outside [{lo}, {hi}]")
        if self.kind == "k-interval-unions" and given["k"] > given["n"]:
            raise ValueError("k-interval-unions needs k <= n")
        if self.kind == "mod-classes" and given["q"] > given["n"]:
            raise ValueError("mod-classes needs q <= n")

    @classmethod
    def make(cls, kind: str, **params: int) -> FamilySpec:
        return cls(kind, tuple(params.items()))

    def __getitem__(self, key: str) -> int:
        return dict(self.params)[key]

    def __str__(self):
        return self.kind + ":" + ",".join(f"{k}={v}" for k, v in self.params)


def parse_spec(text: str) -> FamilySpec:
    text = text.strip()
    kind, _, rest = text.partition(":")
    params = {}
    for item in filter(None, (s.strip() for s in rest.split(","))):
        key, eq, val = item.partition("=")
        if not eq:
            raise ValueError(f"bad parameter {item!r} in {text!r}")
        try:
            params[key.strip()] = int(val)
        except ValueError:
            raise ValueError(f"parameter {key.strip()} must be an integer") from None
    return FamilySpec(kind.strip(), tuple(params.items()))


def _interval_unions(n: int, k: int) -> set[tuple[int, ...]]:
    # a row is a union of at most k intervals iff it has at most k maximal runs of ones
    out = set()
    for bits in itertools.product((0, 1), repeat=n):
        runs = sum(1 for j in range(n) if bits[j] and (j == 0 or not bits[j - 1]))
        if runs <= k:
            out.add(bits)
    return out


def _halfplanes(w: int, h: int) -> set[tuple[int, ...]]:
    pts = [(x, y) for y in range(h) for x in range(w)]
    out = {tuple([0] * len(pts)), tuple([1] * len(pts))}
    lines = []
    for (x1, y1), (x2, y2) in itertools.combinations(pts, 2):
        lines.append((y1 - y2, x2 - x1, x1 * y2 - x2 * y1))  # a x + b y + c = 0
    # axis-aligned cuts between grid lines cover the degenerate one-row or one-column grids
    lines += [(2, 0, -(2 * x + 1)) for x in range(w - 1)]
    lines += [(0, 2, -(2 * y + 1)) for y in range(h - 1)]
    for a, b, c in lines:
        vals = [a * x + b * y + c for x, y in pts]
        for side in (1, -1):
            out.add(tuple(int(side * v > 0) for v in vals))
            out.add(tuple(int(side * v >= 0) for v in vals))
    return out


def generate(spec: FamilySpec | str) -> SetSystem:
    """The canonical set system described by ``spec``."""
    if isinstance(spec, str):
        spec = parse_spec(spec)
    p = dict(spec.params)
    kind = spec.kind
    if kind == "powerset":
        n = p["n"]
        rows = set(itertools.product((0, 1), repeat=n))
        cols = [str(j) for j in range(n)]
    elif kind == "thresholds":
        n = p["n"]
        rows = {tuple(int(x < t) for x in range(n)) for t in range(n + 1)}
        cols = [str(j) for j in range(n)]
    elif kind == "intervals":
        n = p["n"]
        rows = {tuple([0] * n)}
        rows |= {tuple(int(i <= x <= j) for x in range(n)) for i in range(n) for j in range(i, n)}
        cols = [str(j) for j in range(n)]
    elif kind == "k-interval-unions":
        n = p["n"]
        rows = _interval_unions(n, p["k"])
        cols = [str(j) for j in range(n)]
    elif kind == "halfplane-grid":
        rows = _halfplanes(p["w"], p["h"])
        cols = [f"({x},{y})" for y in range(p["h"]) for x in range(p["w"])]
    elif kind == "mod-classes":
        n, q = p["n"], p["q"]
        rows = {tuple(int(x % d == r) for x in range(n)) for d in range(2, q + 1) for r in range(d)}
        cols = [str(j) for j in range(n)]
    else:
        rng = random.Random(p["seed"])
        cols = [str(j) for j in range(p["cols"])]
        rows = [tuple(rng.getrandbits(1) for _ in cols) for _ in range(p["rows"])]
    return SetSystem(tuple(cols), tuple(rows)).canonical()


STANDARD_SPECS = (
    "thresholds:n=4",
    "thresholds:n=6",
    "thresholds:n=14",
    "intervals:n=4",
    "intervals:n=5",
    "intervals:n=14",
    "powerset:n=2",
    "powerset:n=3",
    "k-interval-unions:n=8,k=1",
    "halfplane-grid:w=2,h=2",
    "halfplane-grid:w=3,h=3",
    "halfplane-grid:w=4,h=3",
    "mod-classes:n=8,q=3",
    "mod-classes:n=14,q=5",
    "random:rows=10,cols=6,seed=1",
    "random:rows=16,cols=8,seed=2",
)


def standard_corpus() -> list[tuple[FamilySpec, SetSystem]]:
    """The benchmark corpus: every system has VC dimension at most 3."""
    out = []
    for text in STANDARD_SPECS:
        spec = parse_spec(text)
        out.append((spec, generate(spec)))
    return out
