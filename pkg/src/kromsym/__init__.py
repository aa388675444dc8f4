"""Kromatic symmetric functions: K-theoretic chromatic invariants of graphs."""

from .symcore import Partition, TruncatedSeries, convert_classical, expand_filtered, generator, hall_inner
from .kbases import dual_groth_s, groth_s, k_monomial
from .graphs import Graph, WeightedGraph, named_graph, parse_graph
from .posets import Poset, chain, from_relations, incomparability_graph, poset_sum
from .kromatic import (
    chromatic_sym,
    cover_profile,
    groth_coefficient,
    kromatic,
    kromatic_covers,
    kromatic_delcon,
    kromatic_direct,
    realize,
)

__version__ = "0.1.0"
