"""Concrete finite groups behind one element-id interface."""

from .base import DEFAULT_CAP, TABLE_CAP, Group, check_associativity, resolve_cap
from .cayley import CayleyTableGroup, cyclic, dicyclic, direct_product, is_latin_square, to_cayley
from .field import FiniteField
from .formats import load_cayley_file, load_perm_file, write_cayley_file, write_perm_file
from .matrix import MatrixGroup, gl2, sl2
from .permutation import (
    BSGS,
    PermutationGroup,
    alternating,
    build_bsgs,
    closure_elements,
    dihedral,
    from_cycles,
    schreier_sims,
    symmetric,
)

__all__ = [
    "BSGS",
    "CayleyTableGroup",
    "DEFAULT_CAP",
    "FiniteField",
    "Group",
    "MatrixGroup",
    "PermutationGroup",
    "TABLE_CAP",
    "alternating",
    "build_bsgs",
    "check_associativity",
    "closure_elements",
    "cyclic",
    "dicyclic",
    "dihedral",
    "direct_product",
    "from_cycles",
    "gl2",
    "is_latin_square",
    "load_cayley_file",
    "load_perm_file",
    "resolve_cap",
    "schreier_sims",
    "sl2",
    "symmetric",
    "to_cayley",
    "write_cayley_file",
    "write_perm_file",
]
