"""Qubit reuse compiler: qubit saving and SWAP reduction for dynamic circuits."""

from ._caqr import (
    Architecture,
    Circuit,
    Error,
    InvalidArgument,
    ParseError,
    architecture,
    coloring,
    gen_bv,
    gen_cc,
    gen_problem_graph,
    gen_qaoa,
    gen_xor,
    map_min_swap,
    map_sr,
    min_qubits,
    parse_qasm,
    read_qasm,
    reduce,
    route_without_reuse,
    simulate,
    sweep_csv,
    tvd,
)

__all__ = [
    "Architecture",
    "Circuit",
    "Error",
    "InvalidArgument",
    "ParseError",
    "architecture",
    "coloring",
    "gen_bv",
    "gen_cc",
    "gen_problem_graph",
    "gen_qaoa",
    "gen_xor",
    "map_min_swap",
    "map_sr",
    "min_qubits",
    "parse_qasm",
    "read_qasm",
    "reduce",
    "route_without_reuse",
    "simulate",
    "sweep_csv",
    "tvd",
]
