"""Exact character theory and spectral bounds for t-intersecting families of permutations."""

from .characters import (
    ClassFunction,
    GroupFunction,
    character_table,
    irreducible_character,
    isotypic_projection,
    permutation_character,
    project_V_t,
    residual_norm_sq,
)
from .families import Family, CosetSpec, MatrixFunction
from .partitions import Partition, dimension, kostka, partitions_of
from .permcore import Permutation, derangement_counts
from .spectral import WeightedCayleySpec, cayley_spectrum, hoffman_bound, solve_weights

__version__ = "0.1.0"

__all__ = [
    "ClassFunction",
    "CosetSpec",
    "Family",
    "GroupFunction",
    "MatrixFunction",
    "Partition",
    "Permutation",
    "WeightedCayleySpec",
    "cayley_spectrum",
    "character_table",
    "derangement_counts",
    "dimension",
    "hoffman_bound",
    "irreducible_character",
    "isotypic_projection",
    "kostka",
    "partitions_of",
    "permutation_character",
    "project_V_t",
    "residual_norm_sq",
    "solve_weights",
]
