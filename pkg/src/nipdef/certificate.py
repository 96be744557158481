"""Defining certificates for types and their uniform template.

A certificate is a list of ``m`` sign constraints.  Each one is satisfied
by exactly one trace of the ambient system (its member), and at every
column a strict majority of the members carries the bit of the defined
type.  Evaluation follows the two quantifier readings over the row set:

* exists-form: some choice of satisfying rows ``d_0 .. d_{m-1}`` has bit 1
  at ``a`` for more than ``m/2`` of them;
* forall-form: for some set of more than ``m/2`` members, every satisfying
  row of each of them has bit 1 at ``a``.

The two agree exactly when every constraint pins down a single trace.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .game import (
    APPROX_TOLERANCE,
    CertificationError,
    SkolemTable,
    adaptive_pool,
    build_committee,
    induced_signs,
    majority_counts,
)
from .setsystem import SetSystem, TypeOverA, shattered_witness, trace_count
from .teaching import SignedTuple

__all__ = [
    "Certificate",
    "InvalidCertificate",
    "TypeCountReport",
    "UniformTemplate",
    "VerificationReport",
    "compress_type",
    "count_types_check",
    "decode",
    "eval_exists",
    "eval_forall",
    "make_template",
    "verify_certificate",
]


class InvalidCertificate(ValueError):
    pass


@dataclass(frozen=True)
class Certificate:
    members: tuple[SignedTuple, ...]
    traces: tuple[tuple[int, ...], ...]
    info: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        if not self.members:
            raise ValueError("a certificate needs at least one member")
        if len(self.traces) != len(self.members):
            raise ValueError("one stored trace per member is required")

    @property
    def m(self) -> int:
        return len(self.members)

    @property
    def k_max(self) -> int:
        return max(len(t) for t in self.members)

    def validate(self, S: SetSystem) -> None:
        """Every member must be satisfiable and pin down its stored trace."""
        for t, (chi, tr) in enumerate(zip(self.members, self.traces)):
            if chi.pairs and chi.pairs[-1][0] >= S.ncols:
                raise InvalidCertificate(f"member {t} refers to a missing column")
            sat = {S.rows[i] for i in chi.satisfying_rows(S)}
            if not sat:
                raise InvalidCertificate(f"member {t} is unsatisfiable")
            if sat != {tuple(tr)}:
                raise InvalidCertificate(f"member {t} does not isolate its stored trace")

    def to_dict(self) -> dict:
        out = {
            "members": [chi.to_list() for chi in self.members],
            "m": self.m,
            "k_max": self.k_max,
            "traces": [list(tr) for tr in self.traces],
        }
        if "type" in self.info:
            out["type"] = list(self.info["type"])
        return out

    @classmethod
    def from_dict(cls, obj: dict, S: SetSystem | None = None) -> Certificate:
        """Rebuild a certificate; with ``S`` given, stored traces are cross-checked."""
        try:
            members = tuple(SignedTuple.of(pairs) for pairs in obj["members"])
            traces = tuple(tuple(int(b) for b in tr) for tr in obj["traces"])
        except (KeyError, TypeError, ValueError) as e:
            raise InvalidCertificate(f"malformed certificate: {e}") from None
        if obj.get("m", len(members)) != len(members):
            raise InvalidCertificate("m does not match the member count")
        info = {"type": tuple(obj["type"])} if "type" in obj else {}
        try:
            cert = cls(members, traces, info)
        except ValueError as e:
            raise InvalidCertificate(str(e)) from None
        if S is not None:
            cert.validate(S)
        return cert


def _member_summaries(S: SetSystem, cert: Certificate) -> tuple[list[int], list[int]]:
    # per member: OR and AND of the masks of its satisfying rows
    some, every = [], []
    for chi in cert.members:
        ms = [S.masks[i] for i in chi.satisfying_rows(S)]
        o, a = 0, S.full_mask
        for m in ms:
            o |= m
            a &= m
        some.append(o)
        every.append(a if ms else S.full_mask)  # vacuous truth for empty sets
    return some, every


def eval_exists(S: SetSystem, cert: Certificate, a: int) -> bool:
    some, _ = _member_summaries(S, cert)
    return 2 * sum(o >> a & 1 for o in some) > cert.m


def eval_forall(S: SetSystem, cert: Certificate, a: int) -> bool:
    _, every = _member_summaries(S, cert)
    return 2 * sum(e >> a & 1 for e in every) > cert.m


def decode_bits(S: SetSystem, cert: Certificate) -> tuple[int, ...]:
    some, _ = _member_summaries(S, cert)
    return tuple(int(2 * sum(o >> a & 1 for o in some) > cert.m) for a in range(S.ncols))


def decode(S: SetSystem, cert: Certificate) -> TypeOverA:
    """The type defined by ``cert``; ``ValueError`` if no row realizes it."""
    return TypeOverA.of_bits(S, decode_bits(S, cert))


def compress_type(
    S: SetSystem,
    p: TypeOverA | Sequence[int],
    *,
    table: SkolemTable | None = None,
    max_n: int | None = None,
    method: str = "auto",
    tolerance: Fraction = APPROX_TOLERANCE,
    seed: int = 0,
) -> Certificate:
    """Build a certificate defining ``p``.

    Pass one isolated-mode ``table`` when compressing several types of the
    same system; its entries do not depend on the type.  The returned
    certificate carries an ``info`` dict with ``N``, ``pool_size``,
    ``game_value``, ``margin`` (least agreeing fraction) and ``type``.
    """
    if S.ncols < 2:
        raise ValueError("types are only compressed over at least two columns")
    if not isinstance(p, TypeOverA):
        p = TypeOverA.of_bits(S, p)
    p.check(S)
    if table is None:
        table = SkolemTable(S, "isolated")
    elif table.mode != "isolated" or table.S is not S:
        raise ValueError("compress_type needs an isolated-mode table over the same system")

    N, pool, B, sol = adaptive_pool(S, p, table, max_n=max_n, method=method, tolerance=tolerance)
    committee = build_committee(B, sol.nu, pool, seed=seed)
    members, traces = [], []
    for j, count in committee.pool_positions.counts:
        chi = induced_signs(pool.A0s[j], pool.traces[j])
        members += [chi] * count
        traces += [pool.traces[j]] * count
    counts = majority_counts(B, committee.pool_positions)
    info = {
        "N": N,
        "pool_size": len(pool),
        "game_value": sol.value,
        "margin": Fraction(min(counts), committee.m),
        "type": p.bits,
    }
    cert = Certificate(tuple(members), tuple(traces), info)
    try:
        cert.validate(S)
    except InvalidCertificate as e:
        raise CertificationError(str(e)) from None
    if decode_bits(S, cert) != p.bits:
        raise CertificationError("certificate does not decode to its type")
    return cert


@dataclass
class VerificationReport:
    ok: bool
    failures: list[str]
    margins: list[Fraction]
    exists_forall_agree: bool
    decoded: tuple[int, ...]

    def __str__(self):
        lines = [f"status: {'pass' if self.ok else 'fail'}"]
        lines.append(f"decoded: {''.join(map(str, self.decoded))}")
        lines.append(f"exists_forall_agree: {self.exists_forall_agree}")
        lines.append("margins: " + " ".join(f"{m.numerator}/{m.denominator}" for m in self.margins))
        if self.margins:
            lo = min(self.margins)
            lines.append(f"min_margin: {lo.numerator}/{lo.denominator}")
        lines += [f"failure: {f}" for f in self.failures]
        return "\n".join(lines)


def verify_certificate(S: SetSystem, cert: Certificate, p: Sequence[int] | None = None) -> VerificationReport:
    """Check isolation, the two evaluations, majorities and (optionally) the target."""
    failures = []
    try:
        cert.validate(S)
    except InvalidCertificate as e:
        failures.append(str(e))
    some, every = _member_summaries(S, cert)
    ex = [2 * sum(o >> a & 1 for o in some) > cert.m for a in range(S.ncols)]
    fa = [2 * sum(e >> a & 1 for e in every) > cert.m for a in range(S.ncols)]
    agree = ex == fa
    if not agree:
        failures.append("exists and forall readings differ")
    decoded = tuple(int(v) for v in ex)
    if p is None and "type" in cert.info:
        p = cert.info["type"]
    margins = []
    if p is not None:
        p = tuple(p)
        if decoded != p:
            failures.append("decoded type differs from the target")
        for a in range(S.ncols):
            hits = sum(1 for tr in cert.traces if tr[a] == p[a])
            margins.append(Fraction(hits, cert.m))
        if any(2 * m <= 1 for m in margins):
            failures.append("some column lacks a strict majority")
    if decoded not in set(S.rows):
        failures.append("decoded bits are not realized by any row")
    return VerificationReport(not failures, failures, margins, agree, decoded)


@dataclass(frozen=True)
class UniformTemplate:
    J_slots: int
    k_slots: int

    @property
    def K(self) -> int:
        return self.J_slots * self.k_slots

    def to_dict(self) -> dict:
        return {"J_slots": self.J_slots, "k_slots": self.k_slots, "K": self.K}

    def slots(self, cert: Certificate) -> list[list[tuple[int, int]]]:
        """The ``J_slots x k_slots`` grid of pairs for a padded certificate."""
        if cert.m != self.J_slots:
            raise ValueError("certificate is not padded to this template")
        grid = []
        for chi, tr in zip(cert.members, cert.traces):
            pairs = list(chi.pairs) or [(0, 1 - tr[0])]
            grid.append(pairs + [pairs[0]] * (self.k_slots - len(pairs)))
        return grid


def _min_margin(cert: Certificate) -> int:
    n = len(cert.traces[0])
    return min(abs(2 * sum(tr[a] for tr in cert.traces) - cert.m) for a in range(n))


def _fits(cert: Certificate, J: int) -> bool:
    # q full copies plus r copies of the first member keep every majority iff r < q * margin
    q, r = divmod(J, cert.m)
    return q >= 1 and r < q * _min_margin(cert)


def _pad(cert: Certificate, J: int) -> Certificate:
    q, r = divmod(J, cert.m)
    members = cert.members * q + cert.members[:1] * r
    traces = cert.traces * q + cert.traces[:1] * r
    return replace(cert, members=members, traces=traces)


def make_template(certs: Sequence[Certificate]) -> tuple[UniformTemplate, list[Certificate]]:
    """One slot shape for a family of certificates, and each one padded to it.

    ``J_slots`` is the least odd number ``>= max m`` to which every
    certificate pads without flipping a majority (normally ``max m`` rounded
    up to odd).  ``k_slots`` is the longest constraint, at least 1.
    """
    certs = list(certs)
    if not certs:
        raise ValueError("need at least one certificate")
    J = max(c.m for c in certs)
    J += 1 - J % 2
    while not all(_fits(c, J) for c in certs):
        J += 2
    k = max(1, max(c.k_max for c in certs))
    return UniformTemplate(J, k), [_pad(c, J) for c in certs]


@dataclass(frozen=True)
class TypeCountReport:
    distinct_rows: int
    ncols: int
    K: int
    shattered: tuple[int, ...]
    shattered_traces: int

    @property
    def bound(self) -> int:
        return self.ncols**self.K

    @property
    def count_ok(self) -> bool:
        return self.distinct_rows <= self.bound

    @property
    def exponential_ok(self) -> bool:
        return self.shattered_traces == 2 ** len(self.shattered)

    @property
    def ok(self) -> bool:
        return self.count_ok and self.exponential_ok

    def __str__(self):
        return (
            f"distinct_rows: {self.distinct_rows}\n"
            f"bound: {self.ncols}^{self.K} = {self.bound}\n"
            f"count_ok: {self.count_ok}\n"
            f"shattered: {list(self.shattered)} traces={self.shattered_traces}\n"
            f"exponential_ok: {self.exponential_ok}"
        )


def count_types_check(S: SetSystem, K: int) -> TypeCountReport:
    """Compare the number of types with ``|columns|**K`` and with ``2**d`` on a shattered set."""
    if S.ncols < 2:
        raise ValueError("type counting needs at least two columns")
    X = shattered_witness(S)
    return TypeCountReport(len(set(S.rows)), S.ncols, K, X, trace_count(S, X))
