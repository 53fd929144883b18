"""Brute-force mld of a hypersurface quotient, independent of the mirror formula.

Diagonal symmetries are handled as fractional vectors: ``(c_0, ..., c_{n+1})``
stands for ``diag(exp(2 pi i c_0), ...)``.  Internally a group element is an
integer vector of numerators over a shared denominator.

The quotient stack is ``[C_f^* / G]`` where ``G`` is generated by the weighted
``C^*`` and a finite group of symmetries.  At a toric stratum with nonzero
coordinates ``I`` the local group is the stabilizer ``G_I``; the hypersurface
sees it acting on the retained coordinates, and the local mld is the smallest
coordinate sum of a nontrivial element restricted there (capped at 1).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import gcd, lcm
from typing import Sequence

import numpy as np

from .bhk import Certificate, ChargeData
from .errors import GroupTooLargeError, PreconditionError
from .exactlin import RatMatrix, common_denominator
from .quasismooth import pointing_candidates, subsets

log = logging.getLogger(__name__)

DEFAULT_BOUND = 10**7
MODES = ("full", "autT", "evenSubgroup")

FracVector = tuple[Fraction, ...]
IntVector = tuple[int, ...]


def frac_vector(coords: Sequence) -> FracVector:
    return tuple(Fraction(c) % 1 for c in coords)


@dataclass(frozen=True)
class SymmetryGroup:
    """Finite diagonal group, elements stored as numerators mod ``denominator``.

    For the toric automorphism modes ``elements`` are coset representatives
    modulo the cyclic group generated by ``scalar`` (the weights over the
    degree), so ``order`` is the order of the quotient.
    """

    denominator: int
    elements: tuple[IntVector, ...]
    generators: tuple[IntVector, ...]
    scalar: IntVector | None = None

    @property
    def order(self) -> int:
        return len(self.elements)

    def frac_elements(self) -> list[FracVector]:
        N = self.denominator
        return [tuple(Fraction(x, N) for x in v) for v in self.elements]


@dataclass
class QuotientSingularity:
    """Stabilizer of a stratum, as rows of numerators over ``modulus``."""

    modulus: int
    elements: np.ndarray
    retained: tuple[int, ...]
    label: str = ""
    case: int = 1
    removed: int | None = None

    @classmethod
    def from_fractions(cls, elements: Sequence[Sequence], retained: Sequence[int],
                       label: str = "") -> "QuotientSingularity":
        vecs = [frac_vector(v) for v in elements]
        N = lcm(1, *(x.denominator for v in vecs for x in v))
        arr = np.array([[int(x * N) for x in v] for v in vecs], dtype=object)
        return cls(N, arr.reshape(len(vecs), -1), tuple(retained), label)


@dataclass(frozen=True)
class StratumResult:
    stratum: tuple[int, ...]
    case: int
    removed: int | None
    retained: tuple[int, ...]
    value: Fraction
    element: FracVector | None

    @property
    def label(self) -> str:
        extra = f", removed x{self.removed}" if self.removed is not None else ""
        return f"I={{{','.join(map(str, self.stratum))}}} case {self.case}{extra}"


@dataclass(frozen=True)
class MldReport:
    value: Fraction
    method: str
    witness: str
    element: FracVector | None = None
    strata: tuple[StratumResult, ...] = field(default=(), compare=False)


# ---------------------------------------------------------------------------
# group construction


class _Canonicalizer:
    """Canonical representative of ``v`` modulo multiples of ``scalar`` (all mod N)."""

    def __init__(self, N: int, scalar: IntVector, weights: Sequence[int], degree: int):
        self.N = N
        self.scalar = scalar
        # pick the coordinate where the scalar has the smallest ambiguity
        self.pivot = min(range(len(weights)), key=lambda i: (gcd(weights[i], degree), i))
        u = scalar[self.pivot]
        self.g = gcd(u, N)
        self.period = N // self.g  # number of distinct shifts seen by the pivot
        self.order = degree
        self.inv = pow(u // self.g, -1, self.period) if self.period > 1 else 0
        self.extra = degree // self.period  # shifts invisible at the pivot

    def __call__(self, v: IntVector) -> IntVector:
        N, s, p = self.N, self.scalar, self.pivot
        target = v[p] % self.g
        t = ((v[p] - target) // self.g * self.inv) % self.period if self.period > 1 else 0
        base = tuple((x - t * y) % N for x, y in zip(v, s))
        if self.extra == 1:
            return base
        step = tuple((self.period * y) % N for y in s)
        return min(tuple((x - k * y) % N for x, y in zip(base, step)) for k in range(self.extra))


def _closure(gens: Sequence[IntVector], N: int, canon, bound: int) -> list[IntVector]:
    dim = len(gens[0]) if gens else 0
    zero = canon(tuple([0] * dim))
    elements = [zero]
    seen = {zero}
    for g in gens:
        if canon(g) in seen:
            continue
        # extend by multiples of g until a multiple lands in the current subgroup
        layer = list(elements)
        shift = g
        while canon(shift) not in seen:
            new = [canon(tuple((x + y) % N for x, y in zip(e, shift))) for e in layer]
            seen.update(new)
            elements.extend(new)
            if len(elements) > bound:
                raise GroupTooLargeError(f"group closure exceeds {bound} elements")
            shift = tuple((x + y) % N for x, y in zip(shift, g))
    return sorted(elements)


def even_character(cert: Certificate) -> IntVector:
    """Integer vector ``m`` whose pairing cuts out the index-2 subgroup.

    ``m`` is trivial on the weighted ``C^*``, takes values in ``{0, 1/2}`` on
    the symmetries of the potential and is ``1/2`` on the involution of the
    Fermat square.  It is found as ``m = w A / 2`` with ``w A = 0 mod 2``.
    """
    if not cert.atoms.is_even_loop_shape():
        raise PreconditionError("even subgroup needs the shape x_i^2 + [loop]")
    A = cert.matrix
    n = len(A)
    fermat = cert.atoms.of_kind("fermat")[0].indices[0]
    loop = [i for i in range(n) if i != fermat]
    for bits in product((0, 1), repeat=len(loop)):
        if sum(bits) % 2 == 0:
            continue
        w = [0] * n
        for i, bit in zip(loop, bits):
            w[i] = bit
        w[fermat] = -sum(bits)
        wa = [sum(w[i] * A[i][j] for i in range(n)) for j in range(n)]
        if all(x % 2 == 0 for x in wa):
            return tuple(x // 2 for x in wa)
    raise PreconditionError("no index-2 subgroup separates the Fermat involution")


def symmetry_group(Ainv: RatMatrix, cd: ChargeData, mode: str = "autT", *,
                   cert: Certificate | None = None, bound: int = DEFAULT_BOUND) -> SymmetryGroup:
    """Diagonal symmetries generated by the columns of ``A^-1``.

    ``full`` is the whole group of the potential, ``autT`` its image in the
    toric automorphisms (representatives modulo the weights over the degree),
    ``evenSubgroup`` the index-2 subgroup of ``autT`` for ``x_i^2 + [loop]``.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    N = common_denominator(Ainv)
    n = len(Ainv)
    gens = tuple(tuple(int(Ainv[i][j] * N) % N for i in range(n)) for j in range(n))
    if mode == "full":
        elements = _closure(gens, N, lambda v: v, bound)
        return SymmetryGroup(N, tuple(elements), gens)
    if N % cd.d:
        raise PreconditionError("degree does not divide the group exponent")
    scalar = tuple(a * (N // cd.d) % N for a in cd.a)
    canon = _Canonicalizer(N, scalar, cd.a, cd.d)
    elements = _closure(gens, N, canon, bound)
    if mode == "evenSubgroup":
        if cert is None:
            raise PreconditionError("evenSubgroup mode needs the certificate")
        m = even_character(cert)
        elements = [v for v in elements if sum(x * y for x, y in zip(m, v)) % N == 0]
    return SymmetryGroup(N, tuple(elements), gens, scalar)


# ---------------------------------------------------------------------------
# strata


_INT64_SAFE = 2**62


def _stabilizer(group: SymmetryGroup, weights: Sequence[int], I: Sequence[int],
                chunk: int = 1 << 21) -> tuple[int, np.ndarray]:
    """All elements ``s * weights + r`` (``r`` a group element) vanishing on ``I``.

    Fixing the coordinate ``i0`` of ``I`` with the smallest weight leaves
    ``weights[i0]`` choices of ``s`` per representative.
    """
    N = group.denominator
    i0 = min(I, key=lambda i: (weights[i], i))
    a0 = weights[i0]
    M = a0 * N
    R = group.elements
    dim = len(weights)
    big = M * (a0 + dim + 1) >= _INT64_SAFE
    dtype = object if big else np.int64
    w = np.array(weights, dtype=dtype)
    step = (w * N) % M
    ks = np.arange(a0, dtype=np.int64).astype(dtype)
    others = [i for i in I if i != i0]
    rows_per_chunk = max(1, chunk // max(1, a0 * dim))
    kept = []
    for start in range(0, len(R), rows_per_chunk):
        r = np.array(R[start:start + rows_per_chunk], dtype=dtype).reshape(-1, dim)
        base = (a0 * r - np.outer(r[:, i0], w)) % M
        cand = (base[:, None, :] + ks[None, :, None] * step[None, None, :]) % M
        cand = cand.reshape(-1, dim)
        if others:
            mask = np.all(cand[:, others] == 0, axis=1)
            cand = cand[mask]
        if len(cand):
            kept.append(cand)
    if kept:
        return M, np.concatenate(kept)
    return M, np.zeros((0, dim), dtype=dtype)


def stratum_singularity(cert: Certificate, group: SymmetryGroup,
                        I: Sequence[int]) -> QuotientSingularity | None:
    """Quotient singularity of the hypersurface along the stratum ``U_I``.

    Returns ``None`` when the hypersurface misses ``U_I``: the stratum is not in
    the base locus and fewer than two monomials live on it.
    """
    A = cert.matrix
    I = tuple(sorted(I))
    if not I:
        raise ValueError("I must be nonempty")
    n = len(A)
    on_I = [row for row in A if all(e == 0 or j in I for j, e in enumerate(row))]
    complement = [j for j in range(n) if j not in I]
    if on_I:
        if len(on_I) < 2:
            return None
        retained, case, j = tuple(complement), 1, None
    else:
        cands = pointing_candidates(A, I)
        if len(cands) < len(I):
            raise PreconditionError(f"stratum {I} violates quasismoothness")
        j = cands[0]
        retained, case = tuple(c for c in complement if c != j), 2
    M, elems = _stabilizer(group, cert.charges.a, I)
    label = f"I={{{','.join(map(str, I))}}} case {case}" + (f", removed x{j}" if j is not None else "")
    return QuotientSingularity(M, elems, retained, label, case, j)


def mld_singularity(qs: QuotientSingularity) -> Fraction:
    return _local_min(qs)[0]


def _local_min(qs: QuotientSingularity) -> tuple[Fraction, np.ndarray | None]:
    if not qs.retained or len(qs.elements) == 0:
        return Fraction(1), None
    sub = qs.elements[:, list(qs.retained)]
    nonzero = np.any(sub != 0, axis=1)
    if not nonzero.any():
        return Fraction(1), None
    sums = sub.sum(axis=1)
    best = min(int(s) for s in sums[nonzero])
    if best >= qs.modulus:
        return Fraction(1), None
    hits = qs.elements[nonzero & (sums == best)]
    element = min(tuple(int(x) for x in row) for row in hits)
    return Fraction(best, qs.modulus), np.array(element, dtype=object)


def _strata(cert: Certificate, exhaustive: bool) -> list[tuple[int, ...]]:
    A = cert.matrix
    n = len(A)
    if exhaustive:
        return list(subsets(n))
    target = cert.atoms.target()
    points = [(i,) for i in range(n) if i in target]
    free = [i for i in range(n) if i not in target]
    lines = [(i, j) for i in free for j in free if i < j]
    return points + lines


def mld_oracle(cert: Certificate, mode: str = "autT", *, exhaustive: bool = True,
               bound: int = DEFAULT_BOUND) -> MldReport:
    """Minimum over toric strata of the local quotient-singularity mld.

    ``exhaustive=False`` only visits coordinate points in the base locus and
    lines joining two non-pointing coordinates.
    """
    if mode not in ("autT", "evenSubgroup"):
        raise ValueError(f"unsupported oracle mode {mode!r}")
    cert.require()
    group = symmetry_group(cert.inverse, cert.charges, mode, cert=cert, bound=bound)
    results = []
    for I in _strata(cert, exhaustive):
        qs = stratum_singularity(cert, group, I)
        if qs is None:
            continue
        value, elem = _local_min(qs)
        frac = None if elem is None else tuple(Fraction(int(x), qs.modulus) for x in elem)
        results.append(StratumResult(I, qs.case, qs.removed, qs.retained, value, frac))
    if not results:
        return MldReport(Fraction(1), "oracle", "no singular strata")
    best = min(results, key=lambda r: r.value)
    log.debug("oracle %s: %s at %s", mode, best.value, best.label)
    return MldReport(best.value, "oracle", best.label, best.element, tuple(results))
