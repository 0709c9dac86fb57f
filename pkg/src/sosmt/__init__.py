"""Multitask multiobjective evolutionary optimization producing sets of Pareto sets."""

from .algorithms import (
    ALGORITHMS,
    AlgorithmConfig,
    RunResult,
    run_algorithm,
    run_emt_et,
    run_mo_mfea,
    run_mo_mfea2,
    run_nsga2,
    run_nsga2_suite,
)
from .core import (
    Individual,
    ParetoArchive,
    SetOfParetoSets,
    archive_insert,
    crowding_distance,
    dominates,
    nondominated_sort,
)
from .kernels import BACKEND as KERNEL_BACKEND
from .metrics import chv, compute_bounds, estimate_d_rand, hv2d, rmmd, rmmd_matrix
from .problems import SUITE_NAMES, ProblemSuite, TaskDefinition, evaluate, get_suite, sweep_suite
from .variation import OperatorConfig

__version__ = "0.1.0"
