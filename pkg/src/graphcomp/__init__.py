"""Effective graphs, exact component oracles on finite truncations, and the
encodings and reductions built on them."""

from .codec import Horizon, InjectionPrefix, decode_seq, encode_seq, pair, unpair, validate_injection
from .errors import Inconclusive, InvariantViolation
from .graph import (ComponentTable, EffectiveGraph, GraphSlice, components, export_dot,
                    export_json, finite_graph, slice_graph)

__all__ = [
    "ComponentTable", "EffectiveGraph", "GraphSlice", "Horizon", "Inconclusive",
    "InjectionPrefix", "InvariantViolation", "components", "decode_seq", "encode_seq",
    "export_dot", "export_json", "finite_graph", "pair", "slice_graph", "unpair",
    "validate_injection",
]
