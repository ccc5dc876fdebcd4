"""Knot-theoretic ternary quasigroups, their truncated homology, and layered
region colorings of braid-closure diagrams."""

from .algebra import (
    TernaryQuasigroup, GroupTable, check_latin, check_ktq, is_ktq,
    from_group_dehn, from_group_affine, relabel, is_homomorphism,
    is_isomorphic, canonical_form, load_ktq, builtin_ktq,
)
from .errors import KTQError, InputError, CapExceeded, InvariantError

__version__ = "0.1.0"
