"""Exact solver and verification workbench for the general position
achievement and avoidance games on finite simple graphs."""

from .errors import (BudgetExceeded, GpGameError, IllegalMove, NotATree, ParameterOutOfRange,
                     ParseError, PreconditionViolated, VertexCapExceeded)
from .families import FamilyExpr, ProductGraph, build, cartesian, lexicographic, leaves, parse_family
from .game import (GameState, Outcome, Rule, Solver, apply_move, even_clique_closure_condition,
                   oracle_solve, parity_criterion_check, solve, solve_from)
from .gp import GpReport, enumerate_maximal_gp_sets, gp_number, is_maximal_gp_pair
from .graph import (UNREACHABLE, DistMatrix, Graph, VertexSet, bfs_distances, components, interval,
                    is_bipartite, is_general_position, is_independent, isolated_vertices, playable_set)

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "GpGameError", "IllegalMove", "NotATree", "ParameterOutOfRange", "ParseError",
    "PreconditionViolated", "VertexCapExceeded",
    "FamilyExpr", "ProductGraph", "build", "cartesian", "lexicographic", "leaves", "parse_family",
    "GameState", "Outcome", "Rule", "Solver", "apply_move", "even_clique_closure_condition",
    "oracle_solve", "parity_criterion_check", "solve", "solve_from",
    "GpReport", "enumerate_maximal_gp_sets", "gp_number", "is_maximal_gp_pair",
    "UNREACHABLE", "DistMatrix", "Graph", "VertexSet", "bfs_distances", "components", "interval",
    "is_bipartite", "is_general_position", "is_independent", "isolated_vertices", "playable_set",
]
