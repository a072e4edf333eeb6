"""Finite state property systems, closure spaces, and the functors between them."""

from spcls.core import (
    ClosureSpace,
    FiniteLattice,
    StatePropertySystem,
    cartan_map,
    closure_of,
    validate_closure_space,
    validate_lattice,
    validate_sps,
)
from spcls.categorical import (
    ContinuousMap,
    SPMorphism,
    functor_F_mor,
    functor_F_obj,
    functor_G_mor,
    functor_G_obj,
    is_continuous,
    is_sp_morphism,
    verify_equivalence_roundtrip,
)
from spcls.decompose import decompose

__all__ = [
    "ClosureSpace",
    "ContinuousMap",
    "FiniteLattice",
    "SPMorphism",
    "StatePropertySystem",
    "cartan_map",
    "closure_of",
    "decompose",
    "functor_F_mor",
    "functor_F_obj",
    "functor_G_mor",
    "functor_G_obj",
    "is_continuous",
    "is_sp_morphism",
    "validate_closure_space",
    "validate_lattice",
    "validate_sps",
    "verify_equivalence_roundtrip",
]
