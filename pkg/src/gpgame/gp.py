"""General position number and maximal general position sets."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import BudgetExceeded, PreconditionViolated
from .graph import DistMatrix, Graph, VertexSet, bits, playable_mask

DEFAULT_NODE_BUDGET = 10**8


@dataclass(frozen=True)
class GpReport:
    gp_number: int
    witness: VertexSet
    explored: int
    exact: bool = True

    def to_dict(self) -> dict:
        return {"gp_number": self.gp_number, "witness": list(self.witness),
                "explored": self.explored, "exact": self.exact}


def gp_number(graph: Graph, budget: int = DEFAULT_NODE_BUDGET) -> GpReport:
    """Exact gp(G) by branch and bound over ascending-index extensions.

    A node is pruned when its size plus the number of remaining playable
    higher-indexed candidates cannot beat the incumbent.
    """
    dist = graph.distances
    conf = dist.conflict_masks
    n = graph.order
    best_mask = 1  # {0}: any single vertex is a gp set
    best_size = 1
    explored = 0

    def extend(S: int, members: list[int], cand: int) -> None:
        nonlocal best_mask, best_size, explored
        size = len(members)
        while cand:
            if size + cand.bit_count() <= best_size:
                return
            low = cand & -cand
            v = low.bit_length() - 1
            cand ^= low
            explored += 1
            if explored > budget:
                raise BudgetExceeded(
                    f"gp search exceeded {budget} extension steps",
                    GpReport(best_size, VertexSet.from_mask(best_mask), explored - 1, exact=False))
            blocked = 0
            for a in members:
                blocked |= conf[a][v]
            T = S | low
            if size + 1 > best_size:
                best_size, best_mask = size + 1, T
            members.append(v)
            extend(T, members, cand & ~blocked)
            members.pop()

    all_mask = (1 << n) - 1
    extend(0, [], all_mask)
    return GpReport(best_size, VertexSet.from_mask(best_mask), explored)


def is_maximal_gp_pair(dist: DistMatrix, u: int, v: int) -> bool:
    if u == v:
        raise PreconditionViolated("a gp pair needs two distinct vertices")
    return playable_mask(dist, (1 << u) | (1 << v)) == 0


def enumerate_maximal_gp_sets(graph: Graph, size_cap: int, budget: int = DEFAULT_NODE_BUDGET) -> list[VertexSet]:
    """All inclusion-maximal gp sets with at most ``size_cap`` vertices.

    Extensions are tried in every order; repeated sets are skipped through a
    visited table keyed by the packed set.
    """
    dist = graph.distances
    conf = dist.conflict_masks
    n = graph.order
    seen: set[int] = set()
    found: list[int] = []
    steps = 0

    def visit(S: int, P: int, size: int) -> None:
        nonlocal steps
        if P == 0:
            found.append(S)
            return
        if size >= size_cap:
            return
        for v in bits(P):
            T = S | 1 << v
            if T in seen:
                continue
            seen.add(T)
            steps += 1
            if steps > budget:
                raise BudgetExceeded(f"maximal-set enumeration exceeded {budget} steps")
            blocked = 0
            for a in bits(S):
                blocked |= conf[a][v]
            visit(T, P & ~(1 << v) & ~blocked, size + 1)

    if size_cap >= 1:
        visit(0, (1 << n) - 1, 0)
    return [VertexSet.from_mask(m) for m in sorted(found)]
