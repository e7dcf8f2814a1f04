"""Disjoint pairs of integer sets: two sets whose difference sets meet only
at zero, so every sum a + b is formed exactly once.

The package constructs the classic digit-system families, counts them at
scale with certified limits, checks the packing bounds and the closed-form
extreme values, fits digit systems to hit requested scales, and searches
small universes exhaustively for extremal pairs.
"""

__version__ = "0.1.0"

from .analysis import (FrontierRow, GapReport, IntervalMatrix, PairProfile,
                       ProfileRow, ScanResult, SpInPoint, base_k_point,
                       frontier, gap_bound_check, geometric_grid, in_estimate,
                       interval_matrix, merge_grids, point_from_profile,
                       pow2_point, power_grid, probe_grid, profile,
                       root_bound_check, scaled_ratio_scan, slow_growth_flags,
                       sp_estimate)
from .mixedradix import (EVEN, GROWTH, ODD, ExtendSpecError, FitResult,
                         FitWindow, InfeasibleTargetError, MixedRadixSpec,
                         SpecSide, WitnessProbe, extend_spec, fit_moduli,
                         mixed_radix_count, mixed_radix_pair,
                         powers_of_two_pair, side_elements, side_max_below,
                         uniform_base_pair, witness_probe)
from .search import (Objective, SearchProblem, SearchResult, branch_and_bound,
                     canonical_pair, exhaustive_search, greedy_pair)
from .sets import (BoundsReport, DiffSet, IntSet, UncertifiedRegionError,
                   are_disjoint, binomial_packing_check, count_up_to,
                   difference_set, is_sidon, pair_bounds_check,
                   shared_difference, sum_coverage)

__all__ = [name for name in dir() if not name.startswith("_")]
