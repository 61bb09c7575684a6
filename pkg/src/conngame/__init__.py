"""Exact solving and strategy play for the (connected) marking and coloring games."""

from conngame.graph import (
    ConstructionOrdering,
    Graph,
    GraphError,
    RootedTree,
    TreedepthDecomposition,
    build_graph,
    closure_of_rooted_tree,
    fan_triangle_graph,
    ktree_ordering,
    parse_graph,
    random_ktree,
    serialize_graph,
    spider_graph,
    treedepth_decomposition,
)
from conngame.game import GameState, IllegalMove, Move, Rules, run_game
from conngame.solver import (
    ResourceLimitError,
    SolveResult,
    best_response_bound,
    coloring_winner,
    game_chromatic,
    marking_value,
    restricted_pattern_winner,
)

__all__ = [
    "ConstructionOrdering",
    "GameState",
    "Graph",
    "GraphError",
    "IllegalMove",
    "Move",
    "ResourceLimitError",
    "RootedTree",
    "Rules",
    "SolveResult",
    "TreedepthDecomposition",
    "best_response_bound",
    "build_graph",
    "closure_of_rooted_tree",
    "coloring_winner",
    "fan_triangle_graph",
    "game_chromatic",
    "ktree_ordering",
    "marking_value",
    "parse_graph",
    "random_ktree",
    "restricted_pattern_winner",
    "run_game",
    "serialize_graph",
    "spider_graph",
    "treedepth_decomposition",
]
