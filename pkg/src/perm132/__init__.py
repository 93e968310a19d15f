"""Pattern counts in uniformly random 132-avoiding permutations.

Exact finite-n statistics (enumeration and generating functions), exact
limit constants for means and mixed moments, and Monte Carlo checks over
random binary trees and Brownian excursions.
"""
from .algebra import LaurentPoly, TruncatedSeries, catalan, gf_coefficient, gf_from_ed
from .enumeration import (
    enumerate_trees,
    exact_distribution,
    exact_mean,
    exact_means,
    exact_mixed_moment,
    exact_variance,
)
from .excursion import DiscreteExcursion, profile_convergence_check, psi, sample_excursion, sample_psi_stats
from .expectation import SymbolicConstant, asymptotic_constant, ed_expectation, leading_coeff, size_bias
from .moments import Monomial, asymptotic_mixed, ed_monomial, exact_moment, skewness, tmom3_limit, tmom3_table
from .perms import (
    Pattern,
    PatternError,
    Permutation,
    avoiders,
    avoids,
    inversion_order_leq,
    occurrences_naive,
    parse_pattern,
    pattern_stats,
    symmetry,
)
from .sampler import SampleStats, residual_stat, sample_scaled_stats, sample_tree
from .trees import BinaryTree, count_occurrences_tree, height_profile, perm_to_tree, tree_to_perm

__version__ = "0.1.0"
