"""Quasismoothness of the linear system spanned by a set of monomials.

For every nonempty index set ``I`` either (a) some monomial lives entirely on
``I``, or (b) there are ``|I|`` distinct indices ``j`` outside ``I`` each with a
monomial of the form (monomial on ``I``) * ``x_j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VARIABLES = 12

Exponents = Sequence[int]


@dataclass(frozen=True)
class QsWitness:
    verdict: bool
    failing_subset: tuple[int, ...] | None = None
    condition_b: dict[tuple[int, ...], tuple[int, ...]] = field(default_factory=dict)


def _rows(T: Iterable) -> list[tuple[int, ...]]:
    return [tuple(getattr(m, "exponents", m)) for m in T]


def subsets(n: int) -> Iterator[tuple[int, ...]]:
    """Nonempty subsets of range(n), by size then lexicographically."""
    for k in range(1, n + 1):
        yield from combinations(range(n), k)


def stratum_in_base_locus(T: Iterable, I: Iterable[int]) -> bool:
    """True iff no monomial of ``T`` is supported inside ``I``."""
    I = set(I)
    if not I:
        raise ValueError("I must be nonempty")
    return not any(all(e == 0 or j in I for j, e in enumerate(m)) for m in _rows(T))


def pointing_candidates(T: Iterable, I: Iterable[int]) -> list[int]:
    """Indices ``j`` outside ``I`` with a monomial (monomial on I) * x_j."""
    I = set(I)
    found = set()
    for m in _rows(T):
        ones = [j for j, e in enumerate(m) if e and j not in I]
        if len(ones) == 1 and m[ones[0]] == 1:
            found.add(ones[0])
    return sorted(found)


def check_quasismooth(T: Iterable, max_variables: int = MAX_VARIABLES) -> QsWitness:
    # Condition (b) asks for |I| distinct indices, one per slot, and every slot
    # accepts every candidate, so a matching exists iff there are enough candidates.
    rows = _rows(T)
    if not rows:
        raise ValueError("empty monomial set")
    n = len(rows[0])
    if n > max_variables:
        raise ValueError(f"{n} variables exceeds the subset-enumeration limit {max_variables}")
    for m in rows:
        if sum(m) == 1:
            raise ValueError(f"linear cone: monomial x{m.index(1)} present")
    chosen: dict[tuple[int, ...], tuple[int, ...]] = {}
    for I in subsets(n):
        if not stratum_in_base_locus(rows, I):
            continue
        cands = pointing_candidates(rows, I)
        if len(cands) < len(I):
            return QsWitness(False, I, chosen)
        chosen[I] = tuple(cands[:len(I)])
    return QsWitness(True, None, chosen)
