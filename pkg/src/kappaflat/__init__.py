"""Exterior flattenings, kappa invariants and secant varieties of
Segre-Veronese varieties, in exact arithmetic."""

from .exact_linalg import DEFAULT_PRIME, ExactMatrix, determinant, even_rank, pfaffian, rank
from .exterior_flatten import exterior_flattening, pfaffian_form
from .secant_tools import (border_rank_lower_bound, certify_membership, kappa,
                           subspace_compress, terracini_dimension)
from .tensor_core import Tensor3, example_tensor, random_rank_r

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_PRIME", "ExactMatrix", "determinant", "even_rank", "pfaffian", "rank",
    "exterior_flattening", "pfaffian_form",
    "border_rank_lower_bound", "certify_membership", "kappa", "subspace_compress",
    "terracini_dimension",
    "Tensor3", "example_tensor", "random_rank_r",
]
