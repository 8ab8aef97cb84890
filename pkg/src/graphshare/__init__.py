"""Secret sharing for graphs: graph <-> number conversion, threshold and
additive sharing, and restriction-based verification of reconstructed secrets."""

from .codec import (
    BitPayload,
    DigitString,
    decode_graph,
    digits_to_integer,
    encode_graph,
    gamma,
    graph_to_number,
    integer_to_digits,
    number_to_graph,
)
from .graph import (
    ColoredGraph,
    Coloring,
    Graph,
    Predicate,
    evaluate_predicate,
    is_bipartite,
    is_connected,
    is_proper_coloring,
    partition_of,
)
from .protocol import (
    Kgh,
    Shamir,
    VerificationReport,
    reconstruct_and_verify,
    share_colored_graph,
    share_coloring,
    share_number_as_graph,
)
from .schemes import RandomSource, ShamirParams, KghParams

__version__ = "0.1.0"
