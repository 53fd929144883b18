"""Scan weight-system files for Delsarte potentials and rank them by mld.

File format: one weight system per line, ``a_0 ... a_{n+1} d`` as whitespace
separated integers; ``#`` starts a comment.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from .bhk import ChargeData, certify, check_well_formed, mld_even_subquotient, mld_formula
from .errors import BhkError
from .oracle import mld_oracle
from .potential import Potential, decompose_atoms

log = logging.getLogger(__name__)

SCAN_MODES = ("pair", "variety")


@dataclass(frozen=True)
class WeightSystem:
    a: tuple[int, ...]
    d: int

    def __post_init__(self):
        if any(x <= 0 for x in self.a) or self.d <= 0:
            raise ValueError("weights and degree must be positive")
        if gcd(*self.a) != 1:
            raise ValueError(f"weights {self.a} are not coprime")

    @property
    def calabi_yau(self) -> bool:
        return sum(self.a) == self.d

    def __str__(self) -> str:
        return f"({','.join(map(str, self.a))};{self.d})"


@dataclass(frozen=True)
class Candidate:
    potential: Potential
    mld: Fraction
    tag: str
    oracle: Fraction | None = None


@dataclass
class ScanRecord:
    ws: WeightSystem
    candidates: list[Candidate] = field(default_factory=list)
    best: Candidate | None = None
    error: str | None = None


def load_weight_systems(path: str | Path, cy_only: bool = False) -> list[WeightSystem]:
    out = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                nums = [int(tok) for tok in line.split()]
            except ValueError:
                raise BhkError(f"line {lineno}: expected integers, got {line!r}") from None
            if len(nums) < 3:
                raise BhkError(f"line {lineno}: need at least two weights and a degree")
            try:
                ws = WeightSystem(tuple(nums[:-1]), nums[-1])
            except ValueError as exc:
                raise BhkError(f"line {lineno}: {exc}") from None
            if cy_only and not ws.calabi_yau:
                raise BhkError(f"line {lineno}: weights sum to {sum(ws.a)}, not {ws.d}")
            out.append(ws)
    return out


def cy_weight_systems(num_weights: int, max_degree: int) -> Iterator[WeightSystem]:
    """Coprime weight systems with ``sum(a) == d <= max_degree``, weights non-increasing.

    Ordered by degree, then lexicographically descending weights.
    """
    def parts(total: int, k: int, cap: int):
        if k == 1:
            if 1 <= total <= cap:
                yield (total,)
            return
        for first in range(min(cap, total - k + 1), 0, -1):
            if first * k < total:
                break
            for rest in parts(total - first, k - 1, first):
                yield (first,) + rest

    for d in range(num_weights, max_degree + 1):
        for a in parts(d, num_weights, d):
            if gcd(*a) == 1:
                yield WeightSystem(a, d)


def _monomial_options(ws: WeightSystem) -> list[list[tuple[int, int | None]]]:
    """Per variable: (exponent, target) choices; target None means a pure power."""
    a, d = ws.a, ws.d
    opts = []
    for i, ai in enumerate(a):
        row = []
        if d % ai == 0 and d // ai >= 2:
            row.append((d // ai, None))
        for j, aj in enumerate(a):
            if j != i and d > aj and (d - aj) % ai == 0 and (d - aj) // ai >= 2:
                row.append(((d - aj) // ai, j))
        opts.append(row)
    return opts


def enumerate_delsarte(ws: WeightSystem) -> list[Potential]:
    """All Delsarte potentials of weighted degree ``d`` for the weights ``a``.

    One monomial ``x_i^b`` or ``x_i^b x_j`` per variable, with no index
    pointed to twice; the result is sorted by exponent matrix.
    """
    opts = _monomial_options(ws)
    if any(not o for o in opts):
        return []
    n = len(ws.a)
    found: list[tuple[tuple[int, ...], ...]] = []
    chosen: list[tuple[int, int | None]] = []
    used: set[int] = set()

    def search(i: int) -> None:
        if i == n:
            rows = []
            for k, (b, j) in enumerate(chosen):
                row = [0] * n
                row[k] = b
                if j is not None:
                    row[j] = 1
                rows.append(tuple(row))
            found.append(tuple(rows))
            return
        for b, j in opts[i]:
            if j is not None:
                if j in used:
                    continue
                used.add(j)
            chosen.append((b, j))
            search(i + 1)
            chosen.pop()
            if j is not None:
                used.discard(j)

    search(0)
    out = []
    for rows in sorted(set(found)):
        try:
            decompose_atoms(rows)
        except ValueError:
            continue
        out.append(Potential.from_rows(rows))
    return out


def _scan_one(ws: WeightSystem, mode: str) -> ScanRecord:
    rec = ScanRecord(ws)
    try:
        cd = ChargeData(tuple(Fraction(x, ws.d) for x in ws.a), ws.d, ws.a)
        if not ws.calabi_yau or not check_well_formed(cd):
            return rec
        for p in enumerate_delsarte(ws):
            cert = certify(p)
            if not cert.ok:
                continue
            if mode == "pair":
                rec.candidates.append(Candidate(p, mld_formula(cert.mirror, cert), "autT"))
                continue
            kinds = [a.kind for a in cert.atoms.atoms]
            if kinds == ["loop"]:
                rec.candidates.append(Candidate(p, mld_formula(cert.mirror, cert), "autT"))
            elif cert.atoms.is_even_loop_shape():
                rec.candidates.append(Candidate(p, mld_even_subquotient(cert.mirror, cert), "even"))
    except (BhkError, ValueError) as exc:
        rec.error = str(exc)
    if rec.candidates:
        rec.best = min(rec.candidates, key=lambda c: (c.mld, c.potential.rows))
    return rec


def _record_key(rec: ScanRecord):
    if rec.best is None:
        return (1, Fraction(0), len(rec.ws.a), rec.ws.a, rec.ws.d)
    return (0, rec.best.mld, len(rec.ws.a), rec.ws.a, rec.ws.d)


def _check(rec: ScanRecord) -> ScanRecord:
    checked = []
    for cand in rec.candidates:
        oracle_mode = "evenSubgroup" if cand.tag == "even" else "autT"
        try:
            value = mld_oracle(certify(cand.potential), oracle_mode).value
        except BhkError as exc:
            rec.error = f"oracle: {exc}"
            value = None
        checked.append(Candidate(cand.potential, cand.mld, cand.tag, value))
    rec.candidates = checked
    rec.best = min(checked, key=lambda c: (c.mld, c.potential.rows)) if checked else None
    return rec


def scan_rank(systems: Iterable[WeightSystem], mode: str = "pair", *,
              check_top: int = 0, jobs: int = 1) -> list[ScanRecord]:
    """Scan every system, then sort by best mld (records without candidates last).

    ``check_top`` re-verifies the first ``k`` ranked records with the oracle.
    """
    if mode not in SCAN_MODES:
        raise ValueError(f"unknown scan mode {mode!r}")
    systems = list(systems)
    if jobs > 1 and len(systems) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(_scan_one, systems, [mode] * len(systems), chunksize=4))
    else:
        records = [_scan_one(ws, mode) for ws in systems]
    records.sort(key=_record_key)
    for rec in records[:check_top]:
        if rec.candidates:
            _check(rec)
    return records


def _rat(x: Fraction | None) -> str | None:
    return None if x is None else f"{x.numerator}/{x.denominator}"


def record_to_json(rec: ScanRecord) -> dict:
    def cand(c: Candidate) -> dict:
        out = {"potential": str(c.potential), "mld": _rat(c.mld), "mode": c.tag}
        if c.oracle is not None:
            out["oracle"] = _rat(c.oracle)
            out["agreement"] = c.oracle == c.mld
        return out

    return {
        "weights": list(rec.ws.a),
        "degree": rec.ws.d,
        "candidates": [cand(c) for c in rec.candidates],
        "best": cand(rec.best) if rec.best else None,
        "error": rec.error,
    }


def dumps_record(rec: ScanRecord) -> str:
    return json.dumps(record_to_json(rec), sort_keys=True)


def oracle_agrees(records: Sequence[ScanRecord]) -> bool:
    return all(c.oracle == c.mld for r in records for c in r.candidates if c.oracle is not None)
