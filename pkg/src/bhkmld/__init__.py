"""Exact BHK mirror data and minimal log discrepancies of Delsarte hypersurface quotients."""

from .bhk import (Certificate, ChargeData, GroupOrders, MirrorData, certify, charges_and_weights,
                  check_well_formed, group_orders, is_calabi_yau, mirror_data, mld_even_subquotient,
                  mld_formula)
from .examples import (ExtremalExample, b_symbol, generate_extremal, liu_potential, sylvester,
                       verify_identity)
from .exactlin import atom_inverse, determinant, invert_matrix
from .oracle import MldReport, SymmetryGroup, mld_oracle, mld_singularity, stratum_singularity, symmetry_group
from .potential import (Atom, AtomDecomposition, Monomial, Potential, decompose_atoms, parse_potential,
                        serialize_potential, validate_delsarte)
from .quasismooth import QsWitness, check_quasismooth, stratum_in_base_locus

__version__ = "0.1.0"
