"""Delsarte potentials: parsing, exponent matrices and atom decomposition.

A potential is stored only through its exponents; coefficients are taken to be
general, which is harmless because any two members of the linear system
spanned by the monomials differ by a torus rescaling.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DelsarteError, PotentialSyntaxError, SingularMatrixError
from .exactlin import IntMatrix, determinant

ATOM_KINDS = ("fermat", "loop", "chain")


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]

    def __post_init__(self):
        if any(e < 0 for e in self.exponents):
            raise ValueError("exponents must be nonnegative")
        if not any(self.exponents):
            raise ValueError("monomial must involve at least one variable")
        if sum(self.exponents) == 1:
            idx = self.exponents.index(1)
            raise ValueError(f"linear cone: the monomial x{idx} is not allowed")

    @property
    def support(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.exponents) if e)

    def __str__(self) -> str:
        factors = []
        for i, e in enumerate(self.exponents):
            if e == 1:
                factors.append(f"x{i}")
            elif e > 1:
                factors.append(f"x{i}^{e}")
        return "*".join(factors)


@dataclass(frozen=True)
class Potential:
    num_variables: int
    monomials: tuple[Monomial, ...]

    def __post_init__(self):
        if self.num_variables < 1:
            raise ValueError("need at least one variable")
        for m in self.monomials:
            if len(m.exponents) != self.num_variables:
                raise ValueError("monomial length does not match the number of variables")

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "Potential":
        monomials = tuple(Monomial(tuple(int(x) for x in r)) for r in rows)
        if not monomials:
            raise ValueError("empty potential")
        return cls(len(monomials[0].exponents), monomials)

    @property
    def rows(self) -> IntMatrix:
        return tuple(m.exponents for m in self.monomials)

    def __str__(self) -> str:
        return serialize_potential(self)


@dataclass(frozen=True)
class Atom:
    kind: str
    indices: tuple[int, ...]
    exponents: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in ATOM_KINDS:
            raise ValueError(f"unknown atom kind {self.kind!r}")
        if len(self.indices) != len(self.exponents) or not self.indices:
            raise ValueError("indices and exponents must be aligned and nonempty")
        if self.kind == "fermat" and len(self.indices) != 1:
            raise ValueError("a Fermat atom has exactly one variable")
        if self.kind != "fermat" and len(self.indices) < 2:
            raise ValueError(f"a {self.kind} atom has at least two variables")
        if any(b < 2 for b in self.exponents):
            raise ValueError("atom exponents must be at least 2")

    def __str__(self) -> str:
        arrow = "->".join(str(i) for i in self.indices)
        bs = ",".join(str(b) for b in self.exponents)
        return f"{self.kind.capitalize()}({arrow}; b=({bs}))"


@dataclass(frozen=True)
class AtomDecomposition:
    atoms: tuple[Atom, ...]

    def of_kind(self, kind: str) -> list[Atom]:
        return [a for a in self.atoms if a.kind == kind]

    def target(self) -> dict[int, int]:
        """Map each pointing index to the index it points at."""
        out = {}
        for atom in self.atoms:
            idx = atom.indices
            if atom.kind == "loop":
                out.update({i: idx[(t + 1) % len(idx)] for t, i in enumerate(idx)})
            elif atom.kind == "chain":
                out.update({idx[t]: idx[t + 1] for t in range(len(idx) - 1)})
        return out

    def is_even_loop_shape(self) -> bool:
        """True for ``x_i^2 + [one loop on the remaining variables]``."""
        fermats = self.of_kind("fermat")
        return (len(self.atoms) == 2 and len(fermats) == 1
                and fermats[0].exponents == (2,) and len(self.of_kind("loop")) == 1)

    def __str__(self) -> str:
        return " + ".join(str(a) for a in self.atoms)


_TOKEN = re.compile(r"x(\d+)(?:\^(\d+))?")


def parse_potential(text: str, num_variables: int | None = None) -> Potential:
    """Parse ``x0^2 + x1^3*x3 + ...``.

    ``num_variables`` defaults to the highest variable index plus one.  The
    number of monomials must equal the number of variables.
    """
    # strip whitespace but remember original offsets for error positions
    offsets = [i for i, ch in enumerate(text) if not ch.isspace()]
    compact = "".join(text[i] for i in offsets)

    def where(pos: int) -> int:
        return offsets[pos] if pos < len(offsets) else len(text)

    if not compact:
        raise PotentialSyntaxError("empty potential", 0)
    terms: list[dict[int, int]] = []
    pos = 0
    while True:
        term: dict[int, int] = {}
        while True:
            m = _TOKEN.match(compact, pos)
            if not m:
                raise PotentialSyntaxError("expected a factor like 'x3' or 'x3^5'", where(pos))
            idx = int(m.group(1))
            exp = int(m.group(2)) if m.group(2) is not None else 1
            term[idx] = term.get(idx, 0) + exp
            pos = m.end()
            if pos < len(compact) and compact[pos] == "*":
                pos += 1
                continue
            break
        terms.append(term)
        if pos == len(compact):
            break
        if compact[pos] != "+":
            raise PotentialSyntaxError(f"unexpected character {compact[pos]!r}", where(pos))
        pos += 1

    highest = max(i for t in terms for i in t)
    if num_variables is None:
        num_variables = highest + 1
    if highest >= num_variables:
        raise PotentialSyntaxError(
            f"variable x{highest} out of range for {num_variables} variables", 0)
    if len(terms) != num_variables:
        raise DelsarteError(
            f"expected {num_variables} monomials (one per variable), got {len(terms)}")
    monomials = []
    for t in terms:
        exps = [0] * num_variables
        for i, e in t.items():
            exps[i] = e
        try:
            monomials.append(Monomial(tuple(exps)))
        except ValueError as exc:
            raise DelsarteError(str(exc)) from None
    return Potential(num_variables, tuple(monomials))


def serialize_potential(p: Potential) -> str:
    return " + ".join(str(m) for m in p.monomials)


def _normal_form(rows: Sequence[Sequence[int]]) -> IntMatrix:
    """Reorder rows so row ``i`` is the monomial whose big exponent sits on ``x_i``."""
    n = len(rows)
    owner: dict[int, tuple[int, ...]] = {}
    for r, row in enumerate(rows):
        big = [j for j, e in enumerate(row) if e >= 2]
        ones = [j for j, e in enumerate(row) if e == 1]
        if len(big) != 1:
            if not big:
                raise DelsarteError(
                    f"monomial {r} has no exponent >= 2 (exponent 1 on a diagonal position)")
            raise DelsarteError(f"monomial {r} has several exponents >= 2")
        if len(ones) > 1:
            raise DelsarteError(f"monomial {r} has more than one off-diagonal entry")
        i = big[0]
        if i in owner:
            raise DelsarteError(f"two monomials are pure powers of x{i}")
        owner[i] = tuple(row)
    return tuple(owner[i] for i in range(n))


def decompose_atoms(A: Sequence[Sequence[int]]) -> AtomDecomposition:
    """Split a normal-form exponent matrix into Fermat, loop and chain atoms.

    Index ``i`` points to ``j`` when ``A[i][j] == 1``.  Loops start at their
    smallest index and follow the arrows; chains start at their unique source.
    """
    n = len(A)
    out_edge: dict[int, int] = {}
    in_edge: dict[int, int] = {}
    for i in range(n):
        for j in range(n):
            if i == j or A[i][j] == 0:
                continue
            if A[i][j] != 1:
                raise DelsarteError(f"off-diagonal entry A[{i}][{j}] = {A[i][j]} is not 1")
            if i in out_edge:
                raise DelsarteError(f"index {i} points to more than one index")
            if j in in_edge:
                raise DelsarteError(f"index {j} is pointed to by more than one index")
            out_edge[i] = j
            in_edge[j] = i

    seen: set[int] = set()
    atoms = []
    # chains and Fermat atoms start at nodes with no incoming arrow
    for start in range(n):
        if start in in_edge:
            continue
        path = [start]
        while path[-1] in out_edge:
            path.append(out_edge[path[-1]])
        seen.update(path)
        kind = "fermat" if len(path) == 1 else "chain"
        atoms.append(Atom(kind, tuple(path), tuple(A[i][i] for i in path)))
    for start in range(n):
        if start in seen:
            continue
        cycle = [start]
        while out_edge[cycle[-1]] != start:
            cycle.append(out_edge[cycle[-1]])
        seen.update(cycle)
        atoms.append(Atom("loop", tuple(cycle), tuple(A[i][i] for i in cycle)))
    atoms.sort(key=lambda a: min(a.indices))
    return AtomDecomposition(tuple(atoms))


def validate_delsarte(p: Potential) -> IntMatrix:
    """Check the Delsarte shape and return the exponent matrix in normal form."""
    rows = p.rows
    n = p.num_variables
    if len(rows) != n:
        raise DelsarteError(f"exponent matrix is not square: {len(rows)} monomials, {n} variables")
    if determinant(rows) == 0:
        raise SingularMatrixError("exponent matrix has determinant 0")
    A = _normal_form(rows)
    try:
        decompose_atoms(A)
    except ValueError as exc:
        raise DelsarteError(str(exc)) from None
    return A


def permute_variables(p: Potential, perm: Sequence[int]) -> Potential:
    """Relabel ``x_i`` as ``x_{perm[i]}``."""
    rows = []
    for m in p.monomials:
        new = [0] * p.num_variables
        for i, e in enumerate(m.exponents):
            new[perm[i]] = e
        rows.append(new)
    return Potential.from_rows(rows)
