"""Batch runs over families with CSV output."""

from __future__ import annotations

import csv
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, fields
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence, TextIO

from .certificate import compress_type, count_types_check, make_template, verify_certificate
from .corpus import FamilySpec, generate, parse_spec
from .game import APPROX_TOLERANCE, SkolemTable
from .setsystem import dual, vc_dim
from .teaching import isolate, t_budget

__all__ = ["ExperimentRecord", "read_csv", "read_specfile", "run_experiment", "write_csv"]


@dataclass(frozen=True)
class ExperimentRecord:
    family: str
    columns: int
    rows: int
    vc: int
    dual_vc: int
    N_used: int
    pool_size: int
    game_value: Fraction
    m: int
    k_max: int
    K: int
    runtime_ms: int | None
    verification: str


FIELDS = [f.name for f in fields(ExperimentRecord)]


def _run_one(spec: FamilySpec, seed: int, max_n, method: str, tolerance: Fraction, timing: bool) -> ExperimentRecord:
    start = time.perf_counter()
    base = dict(family=str(spec), columns=0, rows=0, vc=0, dual_vc=0, N_used=0, pool_size=0,
                game_value=Fraction(0), m=0, k_max=0, K=0)
    try:
        S = generate(spec)
        base.update(columns=S.ncols, rows=S.nrows, vc=vc_dim(S), dual_vc=vc_dim(dual(S)))
        table = SkolemTable(S, "isolated")
        certs = [
            compress_type(S, p, table=table, max_n=max_n, method=method, tolerance=tolerance, seed=seed)
            for p in S.types()
        ]
        failures = []
        for cert in certs:
            rep = verify_certificate(S, cert)
            if not rep.ok:
                failures.append(f"type {''.join(map(str, cert.info['type']))}: {rep.failures[0]}")
        if len(isolate(S).points) > t_budget(base["vc"]):
            failures.append("teaching set above t(vc)")
        template, _ = make_template(certs)
        if not count_types_check(S, template.K).ok:
            failures.append("type counting check failed")
        base.update(
            N_used=max(c.info["N"] for c in certs),
            pool_size=max(c.info["pool_size"] for c in certs),
            game_value=min(c.info["game_value"] for c in certs),
            m=max(c.m for c in certs),
            k_max=max(c.k_max for c in certs),
            K=template.K,
        )
        status = "pass" if not failures else "fail: " + "; ".join(failures)
    except Exception as e:  # recorded, never aborts the batch
        status = f"fail: {type(e).__name__}: {e}"
    ms = round((time.perf_counter() - start) * 1000) if timing else None
    return ExperimentRecord(runtime_ms=ms, verification=status, **base)


def run_experiment(
    specs: Sequence[FamilySpec | str],
    *,
    seed: int = 0,
    max_n: int | None = None,
    method: str = "auto",
    tolerance: Fraction = APPROX_TOLERANCE,
    timing: bool = True,
    workers: int = 1,
) -> list[ExperimentRecord]:
    """One record per family, in input order.  ``workers > 1`` uses processes."""
    specs = [parse_spec(s) if isinstance(s, str) else s for s in specs]
    args = [(s, seed, max_n, method, Fraction(tolerance), timing) for s in specs]
    if workers > 1 and len(specs) > 1:
        with ProcessPoolExecutor(workers) as ex:
            return list(ex.map(_run_one, *zip(*args)))
    return [_run_one(*a) for a in args]


def _fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    return str(v)


def write_csv(records: Iterable[ExperimentRecord], out: TextIO | str | Path) -> None:
    if isinstance(out, (str, Path)):
        with open(out, "w", newline="") as fh:
            write_csv(records, fh)
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(FIELDS)
    for r in records:
        w.writerow([_fmt(getattr(r, f)) for f in FIELDS])


def read_csv(src: TextIO | str | Path) -> list[ExperimentRecord]:
    if isinstance(src, (str, Path)):
        with open(src, newline="") as fh:
            return read_csv(fh)
    out = []
    for row in csv.DictReader(src):
        vals = {}
        for f in fields(ExperimentRecord):
            raw = row[f.name]
            if f.name in ("family", "verification"):
                vals[f.name] = raw
            elif f.name == "game_value":
                vals[f.name] = Fraction(raw)
            elif f.name == "runtime_ms":
                vals[f.name] = int(raw) if raw else None
            else:
                vals[f.name] = int(raw)
        out.append(ExperimentRecord(**vals))
    return out


def read_specfile(path: str | Path) -> list[FamilySpec]:
    """One spec string per line; blank lines and ``#`` comments are skipped."""
    specs = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            specs.append(parse_spec(line))
    return specs
