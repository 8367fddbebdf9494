"""Sum-of-radii clustering under group balance constraints."""

from ._core import (
    Cluster,
    Clustering,
    DiagnosticsReport,
    FairClusteringResult,
    Infeasible,
    Instance,
    InvalidInput,
    OracleResult,
    balanced_cluster,
    diagnose_balanced,
    diagnose_fair,
    fair_tk_cluster,
    generate_instance,
    load_instance,
    load_instance_json,
    opt_balanced_bruteforce,
    opt_fair_bruteforce,
    oracle_json,
    result_json,
    save_instance,
    validate_metric,
)

__all__ = [
    "Cluster",
    "Clustering",
    "DiagnosticsReport",
    "FairClusteringResult",
    "Infeasible",
    "Instance",
    "InvalidInput",
    "OracleResult",
    "balanced_cluster",
    "diagnose_balanced",
    "diagnose_fair",
    "fair_tk_cluster",
    "generate_instance",
    "load_instance",
    "load_instance_json",
    "opt_balanced_bruteforce",
    "opt_fair_bruteforce",
    "oracle_json",
    "result_json",
    "save_instance",
    "validate_metric",
]
