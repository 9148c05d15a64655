# This file makes the deduction directory a Python package
from .proof import Proof, proof_from_text, proofs_from_text, proofs_to_text
from .systems import SystemDef, SystemRegistry, default_registry
from .kernel import Verdict, check_proof
from .builder import ProofBuilder

__all__ = [
    'Proof', 'proof_from_text', 'proofs_from_text', 'proofs_to_text',
    'SystemDef', 'SystemRegistry', 'default_registry',
    'Verdict', 'check_proof',
    'ProofBuilder',
]
