"""Divisibility and decomposability of finite distributions, matrix roots and
the reductions that make these questions hard."""

from .cptp import choi, emb, find_cptp_root, is_cptp, partial_trace
from .decomposability import (counterexample_family, decompose, decompose_eps, decompose_even, decompose_m,
                              enumerate_complete_decompositions, weak_decomposability)
from .dist import FiniteDistribution, convolve_power, normalize_distribution, uniform
from .divisibility import closest_divisible, divisibility_eps, is_n_divisible, weak_divisibility
from .errors import DivisikitError
from .gadgets import encode_even_subset_sum, encode_subset_sum_eps
from .lift import lift_nonneg_to_stochastic, lifted_square
from .matrix import RationalMatrix
from .nptools import (PartitionInstance, SubsetSumInstance, pad_to_even, partition_oracle,
                      partition_to_subset_sum, rescale_instance, solve_subset_variant, subset_sum_m_program)
from .roots import enumerate_roots, find_nonnegative_root, find_root, find_stochastic_root, verify_root
from .sat import SatInstance, assemble_family, check_instance, sat_oracle

__version__ = "0.1.0"
