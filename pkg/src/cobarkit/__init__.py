"""Chain-level loop-space models of finite reduced simplicial sets.

The cobar construction on normalized chains, the cubical necklace model
with its isomorphism φ, and a truncated rigidification model with the
comparison map ψ, all over the integers.
"""
from .chain_algebra import (Combination, HomologyResult, IntegerComplex, homology,
                            smith_normal_form, verify_complex)
from .cobar import (TruncationPolicy, cobar_basis, cobar_complex, cobar_differential,
                    h0_ring_presentation)
from .necklace import fsq_basis, fsq_complex, fsq_differential, phi, verify_phi
from .rigid import psi, rigid_chain_complex, verify_psi
from .simplicial import (ReducedSimplicialSet, SimplicialOperator, builtin_space,
                         from_json, load, simplicial_set, validate)

__version__ = "0.1.0"

__all__ = [
    "Combination", "HomologyResult", "IntegerComplex", "ReducedSimplicialSet",
    "SimplicialOperator", "TruncationPolicy", "builtin_space", "cobar_basis",
    "cobar_complex", "cobar_differential", "from_json", "fsq_basis", "fsq_complex",
    "fsq_differential", "h0_ring_presentation", "homology", "load", "phi", "psi",
    "rigid_chain_complex", "simplicial_set", "smith_normal_form", "validate",
    "verify_complex", "verify_phi", "verify_psi", "__version__",
]
