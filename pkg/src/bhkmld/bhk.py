"""Charges, weights and the BHK mirror data of a Delsarte potential.

The charges are the row sums of ``A^-1`` and the mirror charges its column
sums.  For a well-formed quasismooth Calabi-Yau hypersurface the mld of the
quotient by the full toric automorphism group equals the smallest mirror
charge; :func:`mld_formula` returns exactly that.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from typing import Sequence

from .errors import ChargeError, PreconditionError
from .exactlin import IntMatrix, RatMatrix, determinant, invert_matrix, transpose
from .potential import AtomDecomposition, Potential, decompose_atoms, validate_delsarte
from .quasismooth import check_quasismooth


@dataclass(frozen=True)
class ChargeData:
    q: tuple[Fraction, ...]
    d: int
    a: tuple[int, ...]

    @classmethod
    def from_charges(cls, q: Sequence[Fraction]) -> "ChargeData":
        if any(x <= 0 for x in q):
            bad = [str(x) for x in q]
            raise ChargeError(f"non-positive charge in ({', '.join(bad)})")
        d = lcm(*(x.denominator for x in q))
        a = tuple(int(x * d) for x in q)
        if gcd(*a) != 1:
            raise ChargeError(f"weights {a} are not coprime; inconsistent input")
        return cls(tuple(q), d, a)


class MirrorData(ChargeData):
    """Mirror charges, mirror degree and mirror weights (the data of ``A^T``)."""


@dataclass(frozen=True)
class GroupOrders:
    aut_f: int
    j_f: int
    aut_t: int


def charges_and_weights(Ainv: RatMatrix) -> ChargeData:
    return ChargeData.from_charges([sum(row, Fraction(0)) for row in Ainv])


def mirror_data(Ainv: RatMatrix) -> MirrorData:
    return MirrorData.from_charges([sum(col, Fraction(0)) for col in zip(*Ainv)])


def is_calabi_yau(cd: ChargeData) -> bool:
    return sum(cd.a) == cd.d


def check_well_formed(cd: ChargeData) -> bool:
    """Every choice of all-but-one weights is coprime."""
    k = len(cd.a)
    if k < 2:
        return True
    return all(gcd(*sub) == 1 for sub in combinations(cd.a, k - 1))


def group_orders(A: Sequence[Sequence[int]], cd: ChargeData) -> GroupOrders:
    aut_f = abs(determinant(A))
    if aut_f % cd.d:
        raise ChargeError(f"degree {cd.d} does not divide |det A| = {aut_f}")
    return GroupOrders(aut_f, cd.d, aut_f // cd.d)


@dataclass(frozen=True)
class Certificate:
    """Everything the mld formula needs, computed once from a potential."""

    potential: Potential
    matrix: IntMatrix
    atoms: AtomDecomposition
    inverse: RatMatrix
    charges: ChargeData
    mirror: MirrorData
    calabi_yau: bool
    well_formed: bool
    quasismooth: bool

    @property
    def ok(self) -> bool:
        return self.calabi_yau and self.well_formed and self.quasismooth

    def require(self) -> None:
        missing = [name for name, flag in (("Calabi-Yau", self.calabi_yau),
                                           ("well-formed", self.well_formed),
                                           ("quasismooth", self.quasismooth)) if not flag]
        if missing:
            raise PreconditionError("hypersurface is not " + ", ".join(missing))


def certify(p: Potential) -> Certificate:
    """Validate ``p`` and compute its charge data, mirror data and verdicts.

    Raises on non-Delsarte input or non-positive charges; CY, well-formedness
    and quasismoothness are recorded as flags so reports can show them.
    """
    A = validate_delsarte(p)
    atoms = decompose_atoms(A)
    Ainv = invert_matrix(A)
    cd = charges_and_weights(Ainv)
    md = mirror_data(Ainv)
    qs = check_quasismooth(A)
    return Certificate(p, A, atoms, Ainv, cd, md,
                       is_calabi_yau(cd), check_well_formed(cd), qs.verdict)


def _check_cert(md: MirrorData, cert: Certificate | None) -> None:
    if cert is None:
        raise PreconditionError("mld formula needs a validation certificate")
    cert.require()
    if cert.mirror != md:
        raise PreconditionError("certificate does not belong to this mirror data")
    if sum(md.q) != 1:
        raise PreconditionError("mirror charges do not sum to 1")


def mld_formula(md: MirrorData, cert: Certificate | None) -> Fraction:
    """mld of the quotient by the toric automorphism group: min mirror weight / mirror degree."""
    _check_cert(md, cert)
    return Fraction(min(md.a), md.d)


def mld_even_subquotient(md: MirrorData, cert: Certificate | None) -> Fraction:
    """mld of the quotient by the index-2 subgroup for ``x_i^2 + [loop]`` shapes."""
    _check_cert(md, cert)
    if not cert.atoms.is_even_loop_shape():
        raise PreconditionError("potential is not of the shape x_i^2 + [loop]")
    return 2 * mld_formula(md, cert)


def transpose_potential(A: Sequence[Sequence[int]]) -> Potential:
    return Potential.from_rows(transpose(A))
