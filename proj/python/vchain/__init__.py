"""Value-chain cloud suitability assessment (Python bindings)."""

from ._vchain import (
    Diagnostic,
    EndToEndProcess,
    Indicator,
    ParseError,
    ProcessStep,
    ValueChainModel,
    categorize_delta,
    cloud_affinity,
    compare_all,
    default_catalog,
    default_tree_source,
    export_csv,
    export_structured,
    fraud_risk,
    gate,
    import_matrix_csv,
    parse,
    process_profile,
    rank_processes,
    run_cli,
    serialize,
    validate,
)

__all__ = [
    "Diagnostic",
    "EndToEndProcess",
    "Indicator",
    "ParseError",
    "ProcessStep",
    "ValueChainModel",
    "categorize_delta",
    "cloud_affinity",
    "compare_all",
    "default_catalog",
    "default_tree_source",
    "export_csv",
    "export_structured",
    "fraud_risk",
    "gate",
    "import_matrix_csv",
    "parse",
    "process_profile",
    "rank_processes",
    "run_cli",
    "serialize",
    "validate",
]
