"""Exact solver for the general position achievement and avoidance games.

Players A and B alternately add a vertex to a shared general position set;
A moves whenever an even number of vertices has been played. Under the
achievement rule the player making the last move wins, under the avoidance
rule that player loses.

The outcome from a position depends only on the set of played vertices, so
:class:`Solver` memoizes on the packed set. :func:`oracle_solve` is an
independent, deliberately naive check that recurses over move sequences.
"""

from __future__ import annotations

import enum
import hashlib
import os
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BudgetExceeded, CacheMismatch, IllegalMove, PreconditionViolated
from .graph import Graph, VertexSet, bits, format_edge_list, is_general_position, playable_mask

DEFAULT_STATE_CAP = 5_000_000


def default_state_cap() -> int:
    env = os.environ.get("GPGAME_STATE_CAP")
    return int(env) if env else DEFAULT_STATE_CAP


class Rule(str, enum.Enum):
    ACHIEVEMENT = "achievement"
    AVOIDANCE = "avoidance"

    def __str__(self) -> str:
        return self.value


def _other(player: str) -> str:
    return "B" if player == "A" else "A"


@dataclass(frozen=True)
class GameState:
    graph: Graph
    played: VertexSet = field(default_factory=VertexSet)
    rule: Rule = Rule.ACHIEVEMENT

    def __post_init__(self):
        played = VertexSet(self.played)
        object.__setattr__(self, "played", played)
        object.__setattr__(self, "rule", Rule(self.rule))
        if played.mask >> self.graph.order:
            raise PreconditionViolated(f"played set {played!r} has vertices outside the graph")
        if not is_general_position(self.graph.distances, played):
            raise PreconditionViolated(f"played set {played!r} is not a general position set")

    @property
    def to_move(self) -> str:
        return "A" if len(self.played) % 2 == 0 else "B"

    def playable(self) -> VertexSet:
        return VertexSet.from_mask(playable_mask(self.graph.distances, self.played.mask))


def check_move(state: GameState, v: int) -> None:
    """Raise :class:`IllegalMove` naming the violated interval condition."""
    n = state.graph.order
    if not isinstance(v, int) or not 0 <= v < n:
        raise IllegalMove(v, "out of range")
    S = state.played
    if v in S:
        raise IllegalMove(v, "already played")
    iv = state.graph.distances.interval_masks
    members = list(S)
    for i, u in enumerate(members):
        for w in members[i + 1:]:
            if iv[u][w] >> v & 1:
                raise IllegalMove(v, "condition (i)", (u, w))
    for u in members:
        inner = iv[v][u] & S.mask & ~(1 << u)
        if inner:
            raise IllegalMove(v, "condition (ii)", (u, next(bits(inner))))


def apply_move(state: GameState, v: int) -> GameState:
    check_move(state, v)
    return GameState(state.graph, VertexSet.from_mask(state.played.mask | 1 << v), state.rule)


@dataclass(frozen=True)
class Outcome:
    winner: str
    best_first_move: int | None
    solved_states: int
    principal_variation: tuple[int, ...] = ()
    restricted: bool = False

    def to_dict(self) -> dict:
        return {"winner": self.winner, "best_first_move": self.best_first_move,
                "solved_states": self.solved_states,
                "principal_variation": list(self.principal_variation),
                "restricted_first_move": self.restricted}


class Solver:
    """Memoized win/loss table for one (graph, rule) pair.

    ``memo[mask]`` is True iff the player to move from played set ``mask``
    wins. ``state_cap`` bounds the number of distinct stored states.
    """

    def __init__(self, graph: Graph, rule: Rule = Rule.ACHIEVEMENT,
                 state_cap: int | None = None, debug: bool = False):
        self.graph = graph
        self.rule = Rule(rule)
        self.state_cap = default_state_cap() if state_cap is None else state_cap
        if self.state_cap < 1:
            raise ValueError("state cap must be positive")
        self.debug = debug
        self.memo: dict[int, bool] = {}
        self._dist = graph.distances
        self._conf = self._dist.conflict_masks

    def playable(self, mask: int) -> int:
        return playable_mask(self._dist, mask)

    def mover_wins(self, mask: int) -> bool:
        r = self.memo.get(mask)
        if r is not None:
            return r
        return self._search(mask, self.playable(mask), list(bits(mask)))

    def _search(self, S: int, P: int, members: list[int]) -> bool:
        memo = self.memo
        r = memo.get(S)
        if r is not None:
            return r
        if not P:
            r = self.rule is Rule.AVOIDANCE
        else:
            r = False
            conf = self._conf
            rest = P
            while rest:
                low = rest & -rest
                rest ^= low
                v = low.bit_length() - 1
                row = conf[v]
                blocked = low
                for a in members:
                    blocked |= row[a]
                members.append(v)
                child = self._search(S | low, P & ~blocked, members)
                members.pop()
                if not child:
                    r = True
                    break
        if len(memo) >= self.state_cap:
            raise BudgetExceeded(f"solver exceeded state cap of {self.state_cap} memoized states")
        if self.debug:
            assert is_general_position(self._dist, VertexSet.from_mask(S)), S
        memo[S] = r
        return r

    def best_move(self, mask: int) -> int | None:
        """Lowest-index winning move, else the lowest-index playable vertex."""
        P = self.playable(mask)
        if not P:
            return None
        for v in bits(P):
            if not self.mover_wins(mask | 1 << v):
                return v
        return next(bits(P))

    def principal_variation(self, mask: int) -> tuple[int, ...]:
        line = []
        while True:
            v = self.best_move(mask)
            if v is None:
                return tuple(line)
            line.append(v)
            mask |= 1 << v

    def outcome(self, mask: int, restrict_first_move: bool = False) -> Outcome:
        mover = "A" if mask.bit_count() % 2 == 0 else "B"
        if restrict_first_move and mask == 0:
            # caller asserts vertex transitivity: vertex 0 stands for every first move
            wins = not self.mover_wins(1)
            pv = (0,) + self.principal_variation(1)
            return Outcome(mover if wins else _other(mover), 0, len(self.memo), pv, restricted=True)
        wins = self.mover_wins(mask)
        best = self.best_move(mask)
        pv = self.principal_variation(mask)
        return Outcome(mover if wins else _other(mover), best, len(self.memo), pv)


def solve_from(state: GameState, state_cap: int | None = None, solver: Solver | None = None) -> Outcome:
    if solver is None:
        solver = Solver(state.graph, state.rule, state_cap)
    elif solver.graph != state.graph or solver.rule != state.rule:
        raise ValueError("solver was built for a different graph or rule")
    return solver.outcome(state.played.mask)


def solve(graph: Graph, rule: Rule = Rule.ACHIEVEMENT, state_cap: int | None = None,
          cache_dir=None, restrict_first_move: bool = False) -> Outcome:
    solver = Solver(graph, rule, state_cap)
    path = None
    if cache_dir is not None:
        path = cache_path(cache_dir, graph, solver.rule)
        if path.exists():
            solver.memo.update(load_cache(path, graph, solver.rule))
    out = solver.outcome(0, restrict_first_move)
    if path is not None:
        save_cache(path, graph, solver.rule, solver.memo)
    return out


# -- naive oracle --------------------------------------------------------------

def floyd_warshall(graph: Graph) -> list[list[float]]:
    """Hop distances with ``inf`` across components, computed without BFS."""
    n = graph.order
    inf = float("inf")
    d = [[0 if i == j else (1 if j in graph.adjacency[i] else inf) for j in range(n)] for i in range(n)]
    for k in range(n):
        dk = d[k]
        for i in range(n):
            di = d[i]
            dik = di[k]
            if dik == inf:
                continue
            for j in range(n):
                if dik + dk[j] < di[j]:
                    di[j] = dik + dk[j]
    return d


def oracle_solve(graph: Graph, rule: Rule = Rule.ACHIEVEMENT, check_transpositions: bool = False) -> Outcome:
    """Winner by plain recursion over move sequences, without memoization.

    Legality of ``x`` after sequence ``seq`` is tested straight from the
    distance table: no triple containing ``x`` may have one member exactly
    between the other two. The triples inside ``seq`` were checked when their
    last vertex was played.

    With ``check_transpositions`` the result of every visited sequence is
    recorded per played set (never looked up) and any disagreement between
    two orderings of the same set raises ``AssertionError``.
    """
    rule = Rule(rule)
    n = graph.order
    d = floyd_warshall(graph)
    inf = float("inf")
    nodes = 0
    seen: dict[frozenset, bool] = {}

    def between(a, b, c):
        # b strictly between a and c on a geodesic
        return d[a][c] != inf and d[a][b] + d[b][c] == d[a][c]

    def legal(seq, x):
        if x in seq:
            return False
        for i, u in enumerate(seq):
            for w in seq[i + 1:]:
                if between(u, x, w) or between(x, u, w) or between(x, w, u):
                    return False
        return True

    def mover_wins(seq):
        nonlocal nodes
        nodes += 1
        moves = [x for x in range(n) if legal(seq, x)]
        if not moves:
            r = rule is Rule.AVOIDANCE
        else:
            r = any(not mover_wins(seq + [x]) for x in moves)
        if check_transpositions:
            key = frozenset(seq)
            prev = seen.setdefault(key, r)
            assert prev == r, f"order dependence at {sorted(key)}"
        return r

    best = None
    root_wins = False
    moves = [x for x in range(n) if legal([], x)]
    for x in moves:
        if not mover_wins([x]):
            best = x
            root_wins = True
            break
    if best is None and moves:
        best = moves[0]
    nodes += 1
    return Outcome("A" if root_wins else "B", best, nodes)


# -- cross-check predicates ---------------------------------------------------

def parity_criterion_check(state: GameState) -> bool:
    """True when the just-moved player's win is forced by a parity argument.

    The remaining playable vertices together with the played ones form a
    general position set, so all of them will be played, and there is an even
    number of them. Always False before the first move.
    """
    if not state.played:
        return False
    dist = state.graph.distances
    P = playable_mask(dist, state.played.mask)
    return P.bit_count() % 2 == 0 and is_general_position(dist, VertexSet.from_mask(P | state.played.mask))


def _is_clique(graph: Graph, members: list[int]) -> bool:
    adj = graph.adjacency
    return all(v in adj[u] for i, u in enumerate(members) for v in members[i + 1:])


def even_clique_closure_condition(graph: Graph) -> bool:
    """Every vertex u has a partner v such that the pair plus its playable set
    is a clique of even order."""
    dist = graph.distances
    n = graph.order
    for u in range(n):
        for v in range(n):
            if v == u:
                continue
            closure = playable_mask(dist, (1 << u) | (1 << v)) | (1 << u) | (1 << v)
            if closure.bit_count() % 2 == 0 and _is_clique(graph, list(bits(closure))):
                break
        else:
            return False
    return True


# -- cache file -----------------------------------------------------------------

def graph_hash(graph: Graph) -> str:
    return hashlib.sha256(format_edge_list(graph).encode("ascii")).hexdigest()


def cache_path(cache_dir, graph: Graph, rule: Rule) -> Path:
    return Path(cache_dir) / f"{graph_hash(graph)[:16]}-{Rule(rule).value}.gpcache"


def save_cache(path, graph: Graph, rule: Rule, memo: dict[int, bool]) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "w", encoding="ascii", newline="\n") as fh:
        fh.write(f"gpcache 1 {graph_hash(graph)} {Rule(rule).value}\n")
        for mask in sorted(memo):
            fh.write(f"{mask:x} {'W' if memo[mask] else 'L'}\n")
    os.replace(tmp, path)


def load_cache(path, graph: Graph, rule: Rule) -> dict[int, bool]:
    with open(path, encoding="ascii") as fh:
        header = fh.readline().split()
        if len(header) != 4 or header[0] != "gpcache" or header[1] != "1":
            raise CacheMismatch(f"{path}: not a gpcache v1 file")
        if header[2] != graph_hash(graph):
            raise CacheMismatch(f"{path}: graph hash mismatch")
        if header[3] != Rule(rule).value:
            raise CacheMismatch(f"{path}: cache is for rule {header[3]}")
        memo = {}
        for lineno, line in enumerate(fh, start=2):
            parts = line.split()
            if len(parts) != 2 or parts[1] not in ("W", "L"):
                raise CacheMismatch(f"{path}:{lineno}: malformed state line")
            memo[int(parts[0], 16)] = parts[1] == "W"
    return memo
