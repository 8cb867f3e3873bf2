"""Common Labelling and median graphs for small weighted graphs."""

from .bounds import (BoundReport, Check, HypothesisError, verify, verify_all,
                     verify_corollary1, verify_corollary2, verify_theorem1,
                     verify_theorem2, verify_theorem3)
from .costs import (SUM_ABS, SUM_SQ, CostKind, CostSpec, MetricAxiomReport,
                    check_metric_axioms, pairwise_cost)
from .generate import (GenConfig, Xoshiro256, perturbed_family, permuted_copies,
                       random_graph_set, random_weighted_graph)
from .graph import (AttributedGraph, GraphSet, Permutation, SizeMismatchError,
                    apply_permutation, compose, invert, pad_to_size)
from .solvers import (BudgetExceededError, LabellingSolution, MedianResult,
                      approximated_median, cl_objective, exact_common_labelling,
                      exact_generalized_median, gm_objective,
                      heuristic_common_labelling, pairwise_distance,
                      synthesize_median)

__version__ = "0.1.0"
