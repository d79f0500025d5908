"""Graphs, hop distances, geodesic intervals and general position predicates.

Vertex sets are packed into Python ints (bit ``v`` set iff ``v`` is a member);
:class:`VertexSet` is the thin public wrapper around that packed form.
"""

from __future__ import annotations

from collections import deque
from functools import cached_property
from typing import Iterable, Iterator, Union

from .errors import PreconditionViolated, ParameterOutOfRange


class _Unreachable:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNREACHABLE"

    def __reduce__(self):
        return (_Unreachable, ())


#: Distance between vertices in different components. Arithmetic on it raises.
UNREACHABLE = _Unreachable()


def bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class VertexSet:
    """Immutable vertex subset stored as a packed bit mask.

    Equality and hashing are defined on the mask alone.
    """

    __slots__ = ("mask",)

    def __init__(self, vertices: Union[Iterable[int], "VertexSet"] = ()):
        if isinstance(vertices, VertexSet):
            self.mask = vertices.mask
        else:
            m = 0
            for v in vertices:
                if v < 0:
                    raise ValueError(f"negative vertex index {v}")
                m |= 1 << v
            self.mask = m

    @classmethod
    def from_mask(cls, mask: int) -> "VertexSet":
        vs = cls.__new__(cls)
        vs.mask = mask
        return vs

    def __iter__(self) -> Iterator[int]:
        return bits(self.mask)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, v: object) -> bool:
        return isinstance(v, int) and v >= 0 and bool(self.mask >> v & 1)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, VertexSet):
            return self.mask == other.mask
        if isinstance(other, (set, frozenset)):
            return self.mask == to_mask(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.mask)

    def __lt__(self, other: "VertexSet") -> bool:
        return self.mask < other.mask

    def __or__(self, other) -> "VertexSet":
        return VertexSet.from_mask(self.mask | _as_mask(other))

    def __and__(self, other) -> "VertexSet":
        return VertexSet.from_mask(self.mask & _as_mask(other))

    def __sub__(self, other) -> "VertexSet":
        return VertexSet.from_mask(self.mask & ~_as_mask(other))

    def __le__(self, other) -> bool:
        return self.mask & ~_as_mask(other) == 0

    def __bool__(self) -> bool:
        return self.mask != 0

    def __repr__(self) -> str:
        return "{" + ",".join(map(str, self)) + "}"


def _as_mask(s) -> int:
    if isinstance(s, VertexSet):
        return s.mask
    if isinstance(s, int):
        return s
    return to_mask(s)


class Graph:
    """Simple undirected graph on vertices ``0 .. order-1``."""

    def __init__(self, order: int, adjacency: Iterable[Iterable[int]]):
        if order < 1:
            raise ParameterOutOfRange(f"graph order must be >= 1, got {order}")
        adj = tuple(frozenset(nbrs) for nbrs in adjacency)
        if len(adj) != order:
            raise ValueError(f"adjacency has {len(adj)} rows for order {order}")
        for v, nbrs in enumerate(adj):
            for u in nbrs:
                if not 0 <= u < order:
                    raise ValueError(f"neighbor {u} of {v} out of range")
                if u == v:
                    raise ValueError(f"loop at vertex {v}")
                if v not in adj[u]:
                    raise ValueError(f"adjacency not symmetric for edge {v}-{u}")
        self.order = order
        self.adjacency = adj

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(max(order, 0))]
        for u, v in edges:
            if not (0 <= u < order and 0 <= v < order):
                raise ValueError(f"edge {u}-{v} out of range for order {order}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(order, adj)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u in range(self.order) for v in self.adjacency[u] if u < v)

    @property
    def size(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adjacency[u]

    @cached_property
    def distances(self) -> "DistMatrix":
        return bfs_distances(self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.order == other.order and self.adjacency == other.adjacency

    def __hash__(self) -> int:
        return hash((self.order, self.adjacency))

    def __repr__(self) -> str:
        return f"Graph(order={self.order}, size={self.size})"


class DistMatrix:
    """All-pairs hop distances plus derived interval and conflict masks.

    ``conflicts(a, b)`` is the mask of vertices ``x`` (other than a, b) such
    that ``{a, b, x}`` is not in general position. The incremental playable-set
    update used by the game engine and gp solver is built on it.
    """

    def __init__(self, rows: list[list]):
        self.order = len(rows)
        self.rows = tuple(tuple(r) for r in rows)

    def __getitem__(self, uv: tuple[int, int]):
        u, v = uv
        return self.rows[u][v]

    def __eq__(self, other: object) -> bool:
        return isinstance(other, DistMatrix) and self.rows == other.rows

    __hash__ = None  # type: ignore[assignment]

    def diameter(self):
        """Largest finite distance."""
        return max(d for r in self.rows for d in r if d is not UNREACHABLE)

    @cached_property
    def interval_masks(self) -> tuple[tuple[int, ...], ...]:
        n = self.order
        rows = self.rows
        out = []
        for u in range(n):
            du = rows[u]
            row = []
            for v in range(n):
                duv = du[v]
                m = 0
                if duv is not UNREACHABLE:
                    dv = rows[v]
                    for x in range(n):
                        a, b = du[x], dv[x]
                        if a is not UNREACHABLE and b is not UNREACHABLE and a + b == duv:
                            m |= 1 << x
                row.append(m)
            out.append(tuple(row))
        return tuple(out)

    @cached_property
    def conflict_masks(self) -> tuple[tuple[int, ...], ...]:
        n = self.order
        iv = self.interval_masks
        out = []
        for a in range(n):
            row = []
            for b in range(n):
                if a == b:
                    row.append(0)
                    continue
                m = iv[a][b]
                bit_a, bit_b = 1 << a, 1 << b
                for x in range(n):
                    # a between x and b, or b between x and a
                    if iv[x][b] & bit_a or iv[x][a] & bit_b:
                        m |= 1 << x
                row.append(m & ~(bit_a | bit_b))
            out.append(tuple(row))
        return tuple(out)

    def conflicts(self, a: int, b: int) -> int:
        return self.conflict_masks[a][b]


def bfs_distances(graph: Graph) -> DistMatrix:
    n = graph.order
    adj = graph.adjacency
    rows = []
    for s in range(n):
        dist: list = [UNREACHABLE] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            du = dist[u] + 1
            for w in adj[u]:
                if dist[w] is UNREACHABLE:
                    dist[w] = du
                    queue.append(w)
        rows.append(dist)
    return DistMatrix(rows)


def _check_vertex(dist: DistMatrix, v: int) -> None:
    if not 0 <= v < dist.order:
        raise IndexError(f"vertex {v} out of range for order {dist.order}")


def interval(dist: DistMatrix, u: int, v: int) -> VertexSet:
    """Vertices on some u,v-geodesic; empty across components."""
    _check_vertex(dist, u)
    _check_vertex(dist, v)
    return VertexSet.from_mask(dist.interval_masks[u][v])


def is_general_position(dist: DistMatrix, S) -> bool:
    """No member of ``S`` lies on a geodesic between two other members."""
    members = list(VertexSet(S)) if not isinstance(S, VertexSet) else list(S)
    for v in members:
        _check_vertex(dist, v)
    rows = dist.rows
    k = len(members)
    for i in range(k):
        u = members[i]
        for j in range(k):
            if j == i:
                continue
            w = members[j]
            duw = rows[u][w]
            if duw is UNREACHABLE:
                continue
            for t in range(k):
                if t == i or t == j:
                    continue
                x = members[t]
                a, b = rows[u][x], rows[x][w]
                if a is not UNREACHABLE and b is not UNREACHABLE and a + b == duw:
                    return False
    return True


def playable_mask(dist: DistMatrix, mask: int) -> int:
    """Playable set of a gp set given as a mask; no precondition check."""
    n = dist.order
    conf = dist.conflict_masks
    members = list(bits(mask))
    blocked = mask
    for i, a in enumerate(members):
        row = conf[a]
        for b in members[i + 1:]:
            blocked |= row[b]
    return ((1 << n) - 1) & ~blocked


def playable_set(dist: DistMatrix, S) -> VertexSet:
    """Vertices ``x`` outside ``S`` with ``S ∪ {x}`` in general position.

    Evaluated through the two interval conditions: ``x`` avoids every interval
    between played vertices, and no played vertex sits between ``x`` and
    another played vertex.
    """
    S = VertexSet(S)
    for v in S:
        _check_vertex(dist, v)
    if not is_general_position(dist, S):
        raise PreconditionViolated(f"{S!r} is not a general position set")
    iv = dist.interval_masks
    members = list(S)
    forbidden = S.mask
    for i, u in enumerate(members):
        for v in members[i + 1:]:
            forbidden |= iv[u][v]  # condition (i)
    out = 0
    for x in range(dist.order):
        if forbidden >> x & 1:
            continue
        # condition (ii): I[x,u] ∩ S == {u}; the interval is empty across components
        if all(iv[x][u] & S.mask & ~(1 << u) == 0 for u in members):
            out |= 1 << x
    return VertexSet.from_mask(out)


def is_independent(graph: Graph, S) -> bool:
    members = list(VertexSet(S))
    adj = graph.adjacency
    return not any(v in adj[u] for i, u in enumerate(members) for v in members[i + 1:])


def isolated_vertices(graph: Graph) -> VertexSet:
    return VertexSet(v for v in range(graph.order) if not graph.adjacency[v])


def components(graph: Graph) -> list[VertexSet]:
    """Connected components, ordered by smallest member."""
    seen = [False] * graph.order
    out = []
    for s in range(graph.order):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in graph.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    queue.append(w)
        out.append(VertexSet(comp))
    return out


def is_connected(graph: Graph) -> bool:
    return len(components(graph)) == 1


def is_bipartite(graph: Graph) -> bool:
    color = [-1] * graph.order
    for s in range(graph.order):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in graph.adjacency[u]:
                if color[w] < 0:
                    color[w] = 1 - color[u]
                    queue.append(w)
                elif color[w] == color[u]:
                    return False
    return True


# -- edge-list text format ---------------------------------------------------

def format_edge_list(graph: Graph) -> str:
    edges = graph.edges()
    lines = [f"{graph.order} {len(edges)}"]
    lines.extend(f"{u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty edge list")
    try:
        n, m = (int(t) for t in lines[0].split())
    except ValueError:
        raise ValueError(f"bad header line {lines[0]!r}; expected 'n m'") from None
    if len(lines) - 1 != m:
        raise ValueError(f"header announces {m} edges, found {len(lines) - 1}")
    seen = set()
    edges = []
    for lineno, ln in enumerate(lines[1:], start=2):
        parts = ln.split()
        if len(parts) != 2:
            raise ValueError(f"line {lineno}: expected 'u v'")
        u, v = int(parts[0]), int(parts[1])
        if not 0 <= u < v < n:
            raise ValueError(f"line {lineno}: need 0 <= u < v < n, got {u} {v}")
        if (u, v) in seen:
            raise ValueError(f"line {lineno}: duplicate edge {u} {v}")
        seen.add((u, v))
        edges.append((u, v))
    return Graph.from_edges(n, edges)


def read_edge_list(path) -> Graph:
    with open(path, encoding="ascii") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(graph: Graph, path) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(format_edge_list(graph))
