"""Exact computations in Schreier-type sequence spaces.

Admissible-set combinatorics, the Baernstein ``B_p`` norm with optimal
partition certificates, the Tsirelson norm, and finite-rank operators
acting on finitely supported sequences.  All core arithmetic is exact
(:class:`fractions.Fraction`).
"""

from snorm.baernstein import (
    NormResult,
    closed_form_yqr_norm,
    norm_bp,
    norm_bp_bruteforce,
    nu_p,
)
from snorm.errors import DomainError, InvalidPartitionError, SupportError
from snorm.schreier import (
    block,
    block_index,
    block_start,
    is_admissible,
    is_successive,
    uep,
    validate_partition,
)
from snorm.tsirelson import (
    TsirelsonNorm,
    direct_sum_norm,
    l1_comparison_on_admissible,
    norm_t,
    sandwich_check,
)
from snorm.vector import SparseVector, basis, mu, x_block, y_qr

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "InvalidPartitionError",
    "NormResult",
    "SparseVector",
    "SupportError",
    "TsirelsonNorm",
    "basis",
    "block",
    "block_index",
    "block_start",
    "closed_form_yqr_norm",
    "direct_sum_norm",
    "is_admissible",
    "is_successive",
    "l1_comparison_on_admissible",
    "mu",
    "norm_bp",
    "norm_bp_bruteforce",
    "norm_t",
    "nu_p",
    "sandwich_check",
    "uep",
    "validate_partition",
    "x_block",
    "y_qr",
]
