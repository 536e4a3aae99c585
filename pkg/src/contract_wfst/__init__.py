"""Weighted finite-state transducers over the tropical semiring, with a
layer for modeling contracts as transducers and analyzing their costs."""

__version__ = "0.1.0"

from .algorithms import (
    DistanceVector,
    SubsetState,
    canonical_form,
    determinize,
    determinize_with_subsets,
    shortest_distance,
    shortest_path,
)
from .contract import (
    ContractSpec,
    CostReport,
    builtin_manufacturing_contract,
    compile_contract,
    cost_report,
    parse_contract_spec,
    write_contract_spec,
)
from .fst import (
    EPSILON,
    Arc,
    Path,
    SymbolTable,
    Wfst,
    accepted_relation,
    is_deterministic,
    path_weight,
    reverse,
    string_weight,
    validate,
)
from .semiring import TropicalWeight, plus, times, weight_compare
from .serialization import (
    export_dot,
    normalize_initial,
    parse_att,
    parse_state_names,
    parse_symbols,
    write_att,
    write_symbols,
)

__all__ = [
    "Arc",
    "ContractSpec",
    "CostReport",
    "DistanceVector",
    "EPSILON",
    "Path",
    "SubsetState",
    "SymbolTable",
    "TropicalWeight",
    "Wfst",
    "accepted_relation",
    "builtin_manufacturing_contract",
    "canonical_form",
    "compile_contract",
    "cost_report",
    "determinize",
    "determinize_with_subsets",
    "export_dot",
    "is_deterministic",
    "normalize_initial",
    "parse_att",
    "parse_contract_spec",
    "parse_state_names",
    "parse_symbols",
    "path_weight",
    "plus",
    "reverse",
    "shortest_distance",
    "shortest_path",
    "string_weight",
    "times",
    "validate",
    "weight_compare",
    "write_att",
    "write_contract_spec",
    "write_symbols",
]
