"""Sylvester-sequence examples: Liu's Fermat pairs and the small-mld varieties.

Index conventions for dimension ``n`` with ``r = n // 2``:

* odd ``n = 2r+1``: a single loop on ``x_0 .. x_{2r+2}``; ``i -> 2r+2-i`` for
  ``i <= r``, ``i -> 2r+1-i`` for ``r < i <= 2r+1``, and ``2r+2 -> r+1``.
* even ``n = 2r``: ``x_0^2`` plus a loop on ``x_1 .. x_{2r+1}``; ``i -> 2r+2-i``
  for ``1 <= i <= r``, ``i -> 2r+1-i`` for ``r < i <= 2r``, ``2r+1 -> r+1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Sequence

from .bhk import ChargeData, certify, group_orders, mld_even_subquotient, mld_formula
from .errors import BhkError
from .exactlin import determinant
from .potential import Potential


@lru_cache(maxsize=None)
def sylvester(k: int) -> int:
    if k < 0:
        raise ValueError("k must be nonnegative")
    if k == 0:
        return 2
    prev = sylvester(k - 1)
    # s_k = s_0...s_{k-1} + 1 = s_{k-1}(s_{k-1} - 1) + 1
    return prev * (prev - 1) + 1


def b_symbol(bs: Sequence[int]) -> int:
    """Alternating sum ``b1...bk - b1...b(k-1) + ... + (-1)^(k-1) b1 + (-1)^k``."""
    total = 0
    partial = 1
    k = len(bs)
    terms = [1]
    for b in bs:
        partial *= b
        terms.append(partial)
    for t, value in enumerate(terms):
        total += (-1) ** (k - t) * value
    return total


def _interleave(r: int, pairs: int) -> list[int]:
    """``r+1, r, r+2, r-1, ...`` with ``pairs`` pairs ``(r+j, r+1-j)``."""
    seq = []
    for j in range(1, pairs + 1):
        seq += [r + j, r + 1 - j]
    return seq


def _alternating_tail_sum(B, seq: Sequence[int]) -> int:
    """``B(seq) - B(seq[1:]) + B(seq[2:]) - ...`` down to the last single index."""
    return sum((-1) ** t * B(seq[t:]) for t in range(len(seq)))


@dataclass(frozen=True)
class ExtremalExample:
    n: int
    b: tuple[int, ...]
    v: int
    D: int
    m: int
    potential: Potential
    weights: ChargeData
    mld: Fraction
    checks: dict = field(default_factory=dict, compare=False)


def extremal_constants(n: int) -> tuple[list[int], int, int, int]:
    """Return ``(b, v, D, m)`` for dimension ``n >= 2``."""
    if n < 2:
        raise ValueError("extremal examples exist for n >= 2")
    r = n // 2
    odd = n % 2 == 1
    b: list[int] = [sylvester(i) for i in range(r + 1)]

    def B(indices: Sequence[int]) -> int:
        return b_symbol([b[i] for i in indices])

    last = r + 1 if odd else r
    for i in range(1, last + 1):
        b.append(1 + (b[r + 1 - i] - 1) ** 2 * B(_interleave(r, i - 1)))
    if odd:
        seq = _interleave(r, r + 1)  # ends with 2r+1, 0
        v = _alternating_tail_sum(B, seq)
        D = B(seq)
        m = B([x for j in range(r + 1) for x in (j, 2 * r + 1 - j)])
    else:
        seq = _interleave(r, r)  # ends with 2r, 1
        v = 2 * _alternating_tail_sum(B, seq) + 1
        D = 2 * B(seq)
        m = B([x for j in range(1, r + 1) for x in (j, 2 * r + 1 - j)])
    return b, v, D, m


def extremal_rows(n: int, b: Sequence[int], v: int) -> list[list[int]]:
    r = n // 2
    size = n + 2
    rows = [[0] * size for _ in range(size)]
    if n % 2:
        top = 2 * r + 2
        for i in range(top):
            rows[i][i] = b[i]
            rows[i][top - i if i <= r else 2 * r + 1 - i] = 1
        rows[top][top] = v
        rows[top][r + 1] = 1
    else:
        top = 2 * r + 1
        rows[0][0] = b[0]
        for i in range(1, top):
            rows[i][i] = b[i]
            rows[i][2 * r + 2 - i if i <= r else 2 * r + 1 - i] = 1
        rows[top][top] = v
        rows[top][r + 1] = 1
    return rows


def verify_identity(ex: ExtremalExample) -> bool:
    ok, _ = identity_report(ex.n, ex.b, ex.v, ex.D, ex.m)
    return ok


def identity_report(n: int, b: Sequence[int], v: int, D: int, m: int) -> tuple[bool, str]:
    if n % 2:
        rhs = prod(b) * v
    else:
        rhs = prod(b[1:]) * v
    lhs = m * D - 1
    if lhs != rhs:
        return False, f"m*D-1 = {lhs} but product = {rhs} (diff {lhs - rhs})"
    if n % 2:
        det = determinant(extremal_rows(n, b, v))
        if det != rhs + 1:
            return False, f"loop determinant {det} != {rhs + 1}"
    return True, f"m*D-1 = {lhs}"


def generate_extremal(n: int) -> ExtremalExample:
    b, v, D, m = extremal_constants(n)
    potential = Potential.from_rows(extremal_rows(n, b, v))
    cert = certify(potential)
    if n % 2:
        mld = mld_formula(cert.mirror, cert)
    else:
        mld = mld_even_subquotient(cert.mirror, cert)
    ok, detail = identity_report(n, b, v, D, m)
    orders = group_orders(cert.matrix, cert.charges)
    checks = {
        "identity": ok,
        "identity_detail": detail,
        "degree_is_D": cert.charges.d == D,
        "min_weight_is_1": min(cert.charges.a) == 1,
        "mld_is_1_over_m": mld == Fraction(1, m),
        "quasismooth": cert.quasismooth,
        "well_formed": cert.well_formed,
        "calabi_yau": cert.calabi_yau,
        "aut_t_order": orders.aut_t,
    }
    failed = [k for k, val in checks.items() if val is False]
    if failed:
        raise BhkError(f"extremal example n={n} violates {', '.join(failed)}")
    return ExtremalExample(n, tuple(b), v, D, m, potential, cert.charges, mld, checks)


def liu_potential(n: int) -> tuple[Potential, Fraction]:
    """Fermat potential ``x0^2 + x1^3 + ... + xn^{s_n} + x_{n+1}^{s_{n+1}-1}``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    exps = [sylvester(i) for i in range(n + 1)] + [sylvester(n + 1) - 1]
    size = n + 2
    rows = [[e if j == i else 0 for j in range(size)] for i, e in enumerate(exps)]
    return Potential.from_rows(rows), Fraction(1, sylvester(n + 1) - 1)


def liu_weights(n: int) -> tuple[int, tuple[int, ...]]:
    d = sylvester(n + 1) - 1
    return d, tuple(d // sylvester(i) for i in range(n + 1)) + (1,)
