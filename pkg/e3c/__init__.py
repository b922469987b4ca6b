"""Exchanged 3-ary n-cube toolkit: graph model, disjoint-path router and oracles."""
from __future__ import annotations

from .const import VERSION
from .cube import (
    BlockIsomorphism,
    E3CParams,
    E3CVertex,
    EdgeClass,
    Role,
    SubcubeId,
    block_isomorphism,
    e3c_degree,
    e3c_neighbors,
    external_neighbors,
    graph_census,
    subcube_id,
    vertex_codec,
    vertex_from_flat,
)
from .exceptions import (
    CodecError,
    ConfigurationError,
    ConstructionDefect,
    DimensionError,
    DomainError,
    E3CError,
    ResourceBudgetExceeded,
)
from .oracles import (
    FaultSet,
    bfs_distance,
    fault_distance_max,
    graph_metrics,
    pair_connectivity,
    wide_upper_from_router,
)
from .qnk import disjoint_paths_q3, shortest_path_q3
from .router import (
    CaseLabel,
    FaultWitness,
    PathSystem,
    case_bound,
    classify_pair,
    construct_path_system,
    lower_bound_witness,
    route_pair,
)
from .trits import TritString, hamming_distance, lee_distance, lee_weight

__version__ = VERSION

__all__ = [
    "BlockIsomorphism",
    "CaseLabel",
    "CodecError",
    "ConfigurationError",
    "ConstructionDefect",
    "DimensionError",
    "DomainError",
    "E3CError",
    "E3CParams",
    "E3CVertex",
    "EdgeClass",
    "FaultSet",
    "FaultWitness",
    "PathSystem",
    "ResourceBudgetExceeded",
    "Role",
    "SubcubeId",
    "TritString",
    "bfs_distance",
    "block_isomorphism",
    "case_bound",
    "classify_pair",
    "construct_path_system",
    "disjoint_paths_q3",
    "e3c_degree",
    "e3c_neighbors",
    "external_neighbors",
    "fault_distance_max",
    "graph_census",
    "graph_metrics",
    "hamming_distance",
    "lee_distance",
    "lee_weight",
    "lower_bound_witness",
    "pair_connectivity",
    "route_pair",
    "shortest_path_q3",
    "subcube_id",
    "vertex_codec",
    "vertex_from_flat",
    "wide_upper_from_router",
]
