"""Exact covering systems over rings of integers of number fields."""
from .constructor import random_system, split_class, trivial_system
from .covering import (
    ALL_EQUAL, Cell, CellPartition, CongruenceClass, CoveringSystem, Verdict,
    analyze, check_lemma1, check_s_subset_shift, check_s_subset_shifts, class_to_cell,
    derived_system, is_division_maximal, is_subset_minimal, repetition_count, system_to_partition,
    theorem1_bound, theorem2_bound, verify_exact,
)
from .ideal import (
    IdealLattice, PrimeIdeal, big_G, divides, factor_ideal, ideal_from_generators,
    ideal_intersect, ideal_norm, ideal_product, ideal_sum, primes_above, reduce_mod,
    residues_mod, valuation,
)
from .number_field import (
    NumberField, elem_add, elem_mul, elem_neg, make_quadratic_field, make_rationals,
)
from .residues import CrtContext, digit_expand, digit_reconstruct, map_f, map_f_bar

__version__ = "0.1.0"
