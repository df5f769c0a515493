"""Flexible bandwidth and storage allocation on intervals."""
from .model import (BandwidthAllocation, CircularColoring, ContiguousColoring, Instance, Job,
                    is_proper, load_instance, save_instance, verify_circular, verify_fbap,
                    verify_fsap)
from .oracle import OracleBudget, oracle_fbap, oracle_fsap
from .paging import max_independent_set, max_k_colorable, paging_fba
from .proper import a_narrow_color, proper_fsap, wide_only_dp
from .uniform import UniformParams, a_max_small, solve_uniform_exact_multiple, strip_dp, uniform_ptas

__all__ = [
    "BandwidthAllocation", "CircularColoring", "ContiguousColoring", "Instance", "Job",
    "OracleBudget", "UniformParams", "a_max_small", "a_narrow_color", "is_proper",
    "load_instance", "max_independent_set", "max_k_colorable", "oracle_fbap", "oracle_fsap",
    "paging_fba", "proper_fsap", "save_instance", "solve_uniform_exact_multiple", "strip_dp",
    "uniform_ptas", "verify_circular", "verify_fbap", "verify_fsap", "wide_only_dp",
]
