"""Rate-constrained shaping and distribution-matching codes for costly channels."""

from ._core import (
    CodeBook,
    CodeTree,
    CorruptStream,
    InfeasibleRate,
    TreeMismatch,
    ZeroMinCost,
    codebook_stats,
    dm_design,
    entropy,
    equivalent_cost_vector,
    evaluate,
    gsf_build,
    i_min_of_f,
    kl_divergence,
    min_avg_cost,
    min_kl_under_cost,
    modified_varn_build,
    optimal_expansion,
    pipeline_decode,
    pipeline_encode,
    pipeline_report,
    serial_kl,
    solve_mu_capacity,
    tree_to_codebook,
    varn_build,
)

__all__ = [
    "CodeBook",
    "CodeTree",
    "CorruptStream",
    "InfeasibleRate",
    "TreeMismatch",
    "ZeroMinCost",
    "codebook_stats",
    "dm_design",
    "entropy",
    "equivalent_cost_vector",
    "evaluate",
    "gsf_build",
    "i_min_of_f",
    "kl_divergence",
    "min_avg_cost",
    "min_kl_under_cost",
    "modified_varn_build",
    "optimal_expansion",
    "pipeline_decode",
    "pipeline_encode",
    "pipeline_report",
    "serial_kl",
    "solve_mu_capacity",
    "tree_to_codebook",
    "varn_build",
]

__version__ = "0.1.0"
