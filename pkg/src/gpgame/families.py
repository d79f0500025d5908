"""Graph families, Cartesian and lexicographic products, and the family-expression parser.

Expression grammar (names are case-insensitive, whitespace is ignored)::

    expr := NAME | NAME '(' args ')' | ('cartesian'|'lex'|'union') '(' expr ',' expr ')'
    args := INT (',' INT)*

Leaves: ``path(n)``, ``cycle(n)``, ``complete(n)``, ``empty(n)``,
``multipartite(n1,...,nk)``, ``petersen``, ``hypercube(d)`` and
``tree(p1,...,pk)`` where the arguments are a Prüfer sequence (``tree`` alone
is the single edge).
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from itertools import combinations

from .errors import NotATree, ParameterOutOfRange, ParseError, VertexCapExceeded
from .graph import Graph, components

DEFAULT_VERTEX_CAP = 4096

LEAF_NAMES = ("path", "cycle", "complete", "empty", "multipartite", "petersen", "hypercube", "tree")
BINARY_NAMES = ("cartesian", "lex", "union")


@dataclass(frozen=True)
class FamilyExpr:
    name: str
    args: tuple[int, ...] = ()
    children: tuple["FamilyExpr", ...] = field(default=())

    def __str__(self) -> str:
        if self.children:
            return f"{self.name}({','.join(map(str, self.children))})"
        if self.args:
            return f"{self.name}({','.join(map(str, self.args))})"
        return self.name

    def validate(self) -> None:
        """Raise :class:`ParameterOutOfRange` unless every parameter is in range."""
        name, args = self.name, self.args
        if name in BINARY_NAMES:
            if len(self.children) != 2:
                raise ParameterOutOfRange(f"{name} takes exactly two sub-expressions")
            for c in self.children:
                c.validate()
            return
        if name == "petersen":
            if args:
                raise ParameterOutOfRange("petersen takes no arguments")
            return
        if name == "tree":
            n = len(args) + 2
            for a in args:
                if not 0 <= a < n:
                    raise ParameterOutOfRange(
                        f"Prüfer entries for a {n}-vertex tree must lie in [0, {n - 1}], got {a}")
            return
        if name == "multipartite":
            if len(args) < 2:
                raise ParameterOutOfRange("multipartite needs at least two parts")
            if any(a < 1 for a in args):
                raise ParameterOutOfRange("multipartite part sizes must be >= 1")
            return
        if name in ("path", "cycle", "complete", "empty", "hypercube"):
            if len(args) != 1:
                raise ParameterOutOfRange(f"{name} takes exactly one argument")
            lo = 3 if name == "cycle" else 1
            if args[0] < lo:
                raise ParameterOutOfRange(f"{name}({args[0]}): parameter must be >= {lo}")
            return
        raise ParameterOutOfRange(f"unknown family {name!r}")


class ProductGraph(Graph):
    """A product graph whose vertex ``g * |V(H)| + h`` stands for the pair (g, h)."""

    def __init__(self, order, adjacency, first: Graph, second: Graph, kind: str):
        super().__init__(order, adjacency)
        self.first = first
        self.second = second
        self.kind = kind

    @property
    def factor_orders(self) -> tuple[int, int]:
        return self.first.order, self.second.order

    def index(self, g: int, h: int) -> int:
        return g * self.second.order + h

    def coords(self, v: int) -> tuple[int, int]:
        return divmod(v, self.second.order)

    def project_first(self, vertices) -> set[int]:
        return {v // self.second.order for v in vertices}

    def project_second(self, vertices) -> set[int]:
        return {v % self.second.order for v in vertices}

    def second_layer(self, g: int) -> list[int]:
        """Vertices of the copy of the second factor at first coordinate ``g``."""
        m = self.second.order
        return list(range(g * m, (g + 1) * m))

    def first_layer(self, h: int) -> list[int]:
        """Vertices of the copy of the first factor at second coordinate ``h``."""
        m = self.second.order
        return [g * m + h for g in range(self.first.order)]


def _cap_check(n: int, vertex_cap: int) -> None:
    if n > vertex_cap:
        raise VertexCapExceeded(f"product has {n} vertices, cap is {vertex_cap}")


def cartesian(g: Graph, h: Graph, vertex_cap: int = DEFAULT_VERTEX_CAP) -> ProductGraph:
    n, m = g.order, h.order
    _cap_check(n * m, vertex_cap)
    adj = []
    for a in range(n):
        for b in range(m):
            nbrs = [a2 * m + b for a2 in g.adjacency[a]]
            nbrs.extend(a * m + b2 for b2 in h.adjacency[b])
            adj.append(nbrs)
    return ProductGraph(n * m, adj, g, h, "cartesian")


def lexicographic(g: Graph, h: Graph, vertex_cap: int = DEFAULT_VERTEX_CAP) -> ProductGraph:
    n, m = g.order, h.order
    _cap_check(n * m, vertex_cap)
    adj = []
    for a in range(n):
        for b in range(m):
            nbrs = [a2 * m + b2 for a2 in g.adjacency[a] for b2 in range(m)]
            nbrs.extend(a * m + b2 for b2 in h.adjacency[b])
            adj.append(nbrs)
    return ProductGraph(n * m, adj, g, h, "lex")


def disjoint_union(g: Graph, h: Graph) -> Graph:
    off = g.order
    adj = [set(a) for a in g.adjacency]
    adj.extend({u + off for u in a} for a in h.adjacency)
    return Graph(g.order + h.order, adj)


# -- named families ----------------------------------------------------------

def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ParameterOutOfRange(f"cycle needs n >= 3, got {n}")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def empty(n: int) -> Graph:
    return Graph(n, [()] * n)


def multipartite(*parts: int) -> Graph:
    starts = []
    n = 0
    for p in parts:
        starts.append((n, n + p))
        n += p
    edges = [(u, v)
             for i, (a0, a1) in enumerate(starts)
             for (b0, b1) in starts[i + 1:]
             for u in range(a0, a1) for v in range(b0, b1)]
    return Graph.from_edges(n, edges)


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph.from_edges(10, outer + inner + spokes)


def hypercube(d: int) -> Graph:
    n = 1 << d
    return Graph.from_edges(n, [(v, v ^ (1 << i)) for v in range(n) for i in range(d) if not v >> i & 1])


def prufer_tree(seq) -> Graph:
    """Decode a Prüfer sequence into a labeled tree on ``len(seq) + 2`` vertices."""
    n = len(seq) + 2
    degree = [1] * n
    for a in seq:
        degree[a] += 1
    heap = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(heap)
    edges = []
    for a in seq:
        leaf = heapq.heappop(heap)
        edges.append((leaf, a))
        degree[a] -= 1
        if degree[a] == 1:
            heapq.heappush(heap, a)
    u, v = heapq.heappop(heap), heapq.heappop(heap)
    edges.append((u, v))
    return Graph.from_edges(n, edges)


def leaves(tree: Graph) -> int:
    if tree.size != tree.order - 1 or len(components(tree)) != 1:
        raise NotATree(f"{tree!r} is not a tree")
    return sum(1 for v in range(tree.order) if tree.degree(v) == 1)


def build(expr: FamilyExpr, vertex_cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    expr.validate()
    name, args = expr.name, expr.args
    if name == "cartesian":
        return cartesian(build(expr.children[0], vertex_cap), build(expr.children[1], vertex_cap), vertex_cap)
    if name == "lex":
        return lexicographic(build(expr.children[0], vertex_cap), build(expr.children[1], vertex_cap), vertex_cap)
    if name == "union":
        g = disjoint_union(build(expr.children[0], vertex_cap), build(expr.children[1], vertex_cap))
        _cap_check(g.order, vertex_cap)
        return g
    if name == "petersen":
        return petersen()
    if name == "tree":
        return prufer_tree(args)
    if name == "multipartite":
        n = sum(args)
    elif name == "hypercube":
        n = 1 << args[0] if args[0] < 64 else vertex_cap + 1
    else:
        n = args[0]
    _cap_check(n, vertex_cap)
    return {"path": path, "cycle": cycle, "complete": complete, "empty": empty,
            "multipartite": multipartite, "hypercube": hypercube}[name](*args)


# -- parser ------------------------------------------------------------------

class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.raw = text.encode("utf-8")
        self.pos = 0

    def fail(self, expected: str):
        raise ParseError(self.pos, expected, self.text)

    def skip_ws(self) -> None:
        while self.pos < len(self.raw) and self.raw[self.pos] in b" \t\r\n":
            self.pos += 1

    def peek(self) -> int | None:
        self.skip_ws()
        return self.raw[self.pos] if self.pos < len(self.raw) else None

    def expect(self, ch: bytes) -> None:
        if self.peek() != ch[0]:
            self.fail(repr(ch.decode()))
        self.pos += 1

    def name(self) -> str:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.raw) and (chr(self.raw[self.pos]).isalpha() or self.raw[self.pos] == ord("_")):
            self.pos += 1
        if self.pos == start:
            self.fail("family name")
        word = self.raw[start:self.pos].decode().lower()
        if word not in LEAF_NAMES and word not in BINARY_NAMES:
            self.pos = start
            self.fail("one of " + ", ".join(LEAF_NAMES + BINARY_NAMES))
        return word

    def integer(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.raw) and 48 <= self.raw[self.pos] <= 57:
            self.pos += 1
        if self.pos == start:
            self.fail("integer")
        return int(self.raw[start:self.pos])

    def expr(self) -> FamilyExpr:
        word = self.name()
        if word in BINARY_NAMES:
            self.expect(b"(")
            left = self.expr()
            self.expect(b",")
            right = self.expr()
            self.expect(b")")
            return FamilyExpr(word, (), (left, right))
        if self.peek() != ord("("):
            return FamilyExpr(word)
        self.pos += 1
        args = [self.integer()]
        while self.peek() == ord(","):
            self.pos += 1
            args.append(self.integer())
        self.expect(b")")
        return FamilyExpr(word, tuple(args))


def parse_family(text: str) -> FamilyExpr:
    p = _Parser(text)
    expr = p.expr()
    if p.peek() is not None:
        p.fail("end of input")
    return expr


def graph_from_text(text: str, vertex_cap: int = DEFAULT_VERTEX_CAP) -> Graph:
    return build(parse_family(text), vertex_cap)
