"""Exact Frobenius pushforward decompositions, toric divisor class groups and
Hilbert-Kunz lengths in positive characteristic."""
from .frobenius import (
    FrobeniusDecomposition,
    VerificationReport,
    c2_projective_space,
    class_sum,
    frobenius_decompose,
    frobenius_decompose_affine,
    frobenius_decompose_projective,
    tau_top,
    verify_theorem_analogue,
    verify_theorem_main,
)
from .linalg import AbelianGroup, GroupElement, SmithDecomposition, cokernel, is_torsion, smith_normal_form
from .toric import Cone, Fan, SemigroupRing, WeilDivisor, dualize, projective_space, round_down

__version__ = "0.1.0"
