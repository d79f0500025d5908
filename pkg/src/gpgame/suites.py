"""Theorem-reproduction suites run by ``gpgame verify``.

Each suite returns a :class:`SuiteReport` whose cases carry an expected and a
computed value as strings; a suite passes when they agree on every case.
Randomized suites draw from ``random.Random(f"{suite}-{seed}")``.
"""

from __future__ import annotations

import random
import time
from itertools import combinations, combinations_with_replacement
from typing import Callable

from .errors import BudgetExceeded, VertexCapExceeded
from .families import cartesian, graph_from_text, leaves, lexicographic
from .game import GameState, Rule, oracle_solve, parity_criterion_check, solve
from .gp import gp_number
from .graph import (UNREACHABLE, Graph, VertexSet, bits, is_bipartite, is_connected,
                    is_general_position, is_independent, isolated_vertices, playable_set)
from .report import Case, Config, SuiteReport


def _ms(t0: float) -> float:
    return (time.perf_counter() - t0) * 1000.0


def _winner_case(expr: str, expected: str, cfg: Config, rule: Rule = Rule.ACHIEVEMENT,
                 graph: Graph | None = None, allow_skip: bool = False) -> Case:
    t0 = time.perf_counter()
    try:
        g = graph if graph is not None else graph_from_text(expr, cfg.vertex_cap)
        out = solve(g, rule, cfg.state_cap, cfg.cache_dir, cfg.restrict_first_move)
    except (BudgetExceeded, VertexCapExceeded) as exc:
        if not allow_skip:
            raise
        return Case(expr, rule.value, expected, f"skipped: {exc}", 0, _ms(t0), skipped=True)
    return Case(expr, rule.value, expected, out.winner, out.solved_states, _ms(t0))


def _winner(g: Graph, cfg: Config, rule: Rule = Rule.ACHIEVEMENT) -> str:
    return solve(g, rule, cfg.state_cap, cfg.cache_dir, cfg.restrict_first_move).winner


# -- winner suites ----------------------------------------------------------------

def suite_complete(cfg: Config) -> list[Case]:
    return [_winner_case(f"complete({n})", "A" if n % 2 else "B", cfg) for n in range(2, 10)]


def suite_paths(cfg: Config) -> list[Case]:
    cases = []
    for expr in [f"path({n})" for n in range(2, 11)] + ["cycle(4)"]:
        t0 = time.perf_counter()
        rep = gp_number(graph_from_text(expr, cfg.vertex_cap))
        cases.append(Case(expr, "gp", "2", str(rep.gp_number), rep.explored, _ms(t0)))
        cases.append(_winner_case(expr, "B", cfg))
    return cases


def suite_cycles(cfg: Config) -> list[Case]:
    return [_winner_case(f"cycle({n})", "B" if n % 2 == 0 else "A", cfg) for n in range(3, 13)]


def suite_petersen(cfg: Config) -> list[Case]:
    cases = [_winner_case("petersen", "B", cfg)]
    g = graph_from_text("petersen")
    for a in range(g.order):
        for b in sorted(g.adjacency[a]):
            t0 = time.perf_counter()
            ok = parity_criterion_check(GameState(g, VertexSet([a, b])))
            cases.append(Case(f"petersen after a1={a},b1={b}", "parity", "true", str(ok).lower(), 0, _ms(t0)))
    return cases


def suite_multipartite(cfg: Config) -> list[Case]:
    cases = []
    for k in range(2, 5):
        for parts in combinations_with_replacement(range(2, 5), k):
            if sum(parts) > 16:
                continue
            a_wins = k % 2 == 1 and any(p % 2 for p in parts)
            cases.append(_winner_case(f"multipartite({','.join(map(str, parts))})", "A" if a_wins else "B", cfg))
    return cases


def random_bipartite_expr(rng: random.Random) -> str:
    """Random forest or union of even cycles and paths, plus 0..3 isolated vertices."""
    pieces = []
    if rng.random() < 0.5:
        for _ in range(rng.randint(1, 3)):
            size = rng.randint(1, 6)
            if size == 1:
                pieces.append("path(1)")
            elif size == 2:
                pieces.append("tree")
            else:
                pieces.append("tree(" + ",".join(str(rng.randrange(size)) for _ in range(size - 2)) + ")")
    else:
        for _ in range(rng.randint(1, 3)):
            if rng.random() < 0.5:
                pieces.append(f"cycle({rng.choice((4, 6))})")
            else:
                pieces.append(f"path({rng.randint(1, 5)})")
    iso = rng.randint(0, 3)
    if iso:
        pieces.append(f"empty({iso})")
    expr = pieces[0]
    for p in pieces[1:]:
        expr = f"union({expr},{p})"
    return expr


def suite_bipartite(cfg: Config) -> list[Case]:
    rng = random.Random(f"bipartite-{cfg.seed}")
    cases = []
    for _ in range(200):
        expr = random_bipartite_expr(rng)
        g = graph_from_text(expr, cfg.vertex_cap)
        assert is_bipartite(g), expr
        expected = "A" if len(isolated_vertices(g)) % 2 else "B"
        cases.append(_winner_case(expr, expected, cfg, graph=g))
    return cases


PRODUCT_FIRST = ("complete(3)", "cycle(5)", "petersen", "complete(4)")
PRODUCT_SECOND = ("path(2)", "path(3)", "cycle(4)", "cycle(6)")


def suite_products(cfg: Config) -> list[Case]:
    return [_winner_case(f"cartesian({g},{h})", "B", cfg, allow_skip=g == "petersen")
            for g in PRODUCT_FIRST for h in PRODUCT_SECOND]


def suite_hamming(cfg: Config) -> list[Case]:
    return [_winner_case(f"cartesian(complete({n}),complete({m}))", "A" if n % 2 and m % 2 else "B", cfg)
            for n in range(2, 5) for m in range(2, 5)]


def suite_k3cm(cfg: Config) -> list[Case]:
    return [_winner_case(f"cartesian(complete(3),cycle({m}))", "A" if m in (3, 5) else "B", cfg)
            for m in range(3, 10)]


def suite_lex(cfg: Config) -> list[Case]:
    cases = []
    for base in ("path(4)", "cycle(5)", "cycle(6)", "complete(3)"):
        b_on_base = _winner(graph_from_text(base), cfg) == "B"
        for n in (2, 3):
            expected = "B" if b_on_base or n % 2 == 0 else "A"
            cases.append(_winner_case(f"lex({base},complete({n}))", expected, cfg))
    return cases


def suite_avoidance(cfg: Config) -> list[Case]:
    return [_winner_case("cycle(6)", "B", cfg, Rule.ACHIEVEMENT),
            _winner_case("cycle(6)", "B", cfg, Rule.AVOIDANCE)]


def suite_trees(cfg: Config) -> list[Case]:
    rng = random.Random(f"trees-{cfg.seed}")
    cases = []
    for _ in range(20):
        exprs = []
        for _ in range(2):
            n = rng.randint(3, 7)
            exprs.append("tree(" + ",".join(str(rng.randrange(n)) for _ in range(n - 2)) + ")")
        t1, t2 = (graph_from_text(e) for e in exprs)
        expr = f"cartesian({exprs[0]},{exprs[1]})"
        t0 = time.perf_counter()
        rep = gp_number(graph_from_text(expr, cfg.vertex_cap))
        cases.append(Case(expr, "gp", str(leaves(t1) + leaves(t2)), str(rep.gp_number), rep.explored, _ms(t0)))
    return cases


# -- product formulas -----------------------------------------------------------

FORMULA_FACTORS = tuple([f"path({n})" for n in range(2, 6)] + [f"cycle({n})" for n in range(3, 7)]
                        + [f"complete({n})" for n in range(2, 5)])


def cartesian_formula_violations(g: Graph, h: Graph) -> list[str]:
    prod = cartesian(g, h)
    dp, dg, dh = prod.distances, g.distances, h.distances
    ig, ih, ip = dg.interval_masks, dh.interval_masks, dp.interval_masks
    bad = []
    for x in range(prod.order):
        a, b = prod.coords(x)
        for y in range(prod.order):
            c, d = prod.coords(y)
            if dp[x, y] != dg[a, c] + dh[b, d]:
                bad.append(f"distance {x},{y}")
            expect = 0
            for g2 in bits(ig[a][c]):
                for h2 in bits(ih[b][d]):
                    expect |= 1 << prod.index(g2, h2)
            if ip[x][y] != expect:
                bad.append(f"interval {x},{y}")
    return bad


def lex_distance_formula(g: Graph, h: Graph, x: tuple[int, int], y: tuple[int, int]):
    (a, b), (c, d) = x, y
    if a != c:
        return g.distances[a, c]
    if g.degree(a) == 0:
        return h.distances[b, d]
    dh = h.distances[b, d]
    return dh if dh is not UNREACHABLE and dh < 2 else 2


def lex_formula_violations(g: Graph, h: Graph) -> list[str]:
    prod = lexicographic(g, h)
    dp = prod.distances
    return [f"distance {x},{y}" for x in range(prod.order) for y in range(prod.order)
            if dp[x, y] != lex_distance_formula(g, h, prod.coords(x), prod.coords(y))]


def suite_formulas(cfg: Config) -> list[Case]:
    cases = []
    for ge in FORMULA_FACTORS:
        for he in FORMULA_FACTORS:
            g, h = graph_from_text(ge), graph_from_text(he)
            t0 = time.perf_counter()
            bad = cartesian_formula_violations(g, h)
            cases.append(Case(f"cartesian({ge},{he})", "formula", "holds",
                              "holds" if not bad else f"{len(bad)} violations, first {bad[0]}", 0, _ms(t0)))
            t0 = time.perf_counter()
            bad = lex_formula_violations(g, h)
            cases.append(Case(f"lex({ge},{he})", "formula", "holds",
                              "holds" if not bad else f"{len(bad)} violations, first {bad[0]}", 0, _ms(t0)))
    for expr in ("union(path(2),path(1))", "union(cycle(5),empty(2))", "empty(3)"):
        for he in ("path(3)", "complete(2)", "cycle(4)"):
            g, h = graph_from_text(expr), graph_from_text(he)
            t0 = time.perf_counter()
            bad = lex_formula_violations(g, h)
            cases.append(Case(f"lex({expr},{he})", "formula", "holds",
                              "holds" if not bad else f"{len(bad)} violations, first {bad[0]}", 0, _ms(t0)))
    return cases


# -- oracle equivalence -----------------------------------------------------------

def graph_atlas(max_order: int = 7, connected: bool = True) -> list[tuple[str, Graph]] | None:
    """All graphs (by default only the connected ones) with 1..``max_order``
    vertices, one per isomorphism class.

    Returns None when networkx (which ships the atlas) is unavailable.
    """
    try:
        import networkx as nx
    except ImportError:  # pragma: no cover
        return None
    out = []
    for i, nxg in enumerate(nx.graph_atlas_g()):
        n = nxg.number_of_nodes()
        if n == 0 or n > max_order:
            continue
        g = Graph.from_edges(n, nxg.edges())
        if not connected or is_connected(g):
            out.append((f"atlas[{i}]", g))
    return out


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p])


def random_connected_graph(rng: random.Random, n: int, p: float) -> Graph:
    while True:
        g = random_graph(rng, n, p)
        if is_connected(g):
            return g


def _oracle_graphs(cfg: Config) -> list[tuple[str, Graph]]:
    rng = random.Random(f"oracle-{cfg.seed}")
    graphs = graph_atlas(7)
    if graphs is None:
        graphs = []
        for n in range(1, 8):
            for i in range(500):
                graphs.append((f"random(n={n},#{i})", random_connected_graph(rng, n, rng.uniform(0.2, 0.9))))
    for i in range(100):
        n = rng.randint(8, 9)
        p = rng.uniform(0.1, 0.95)
        graphs.append((f"random(n={n},p={p:.2f},#{i})", random_graph(rng, n, p)))
    return graphs


def suite_oracle(cfg: Config) -> list[Case]:
    cases = []
    for name, g in _oracle_graphs(cfg):
        for rule in Rule:
            t0 = time.perf_counter()
            memo = solve(g, rule, cfg.state_cap)
            naive = oracle_solve(g, rule)
            cases.append(Case(name, rule.value, naive.winner, memo.winner, memo.solved_states, _ms(t0)))
    return cases


# -- lemma property sweeps ----------------------------------------------------------

def all_gp_sets(g: Graph) -> list[int]:
    """Every general position set (including the empty set) as a mask."""
    conf = g.distances.conflict_masks
    out = []

    def rec(S: int, members: list[int], cand: int) -> None:
        out.append(S)
        while cand:
            low = cand & -cand
            cand ^= low
            v = low.bit_length() - 1
            blocked = 0
            for a in members:
                blocked |= conf[a][v]
            members.append(v)
            rec(S | low, members, cand & ~blocked)
            members.pop()

    rec(0, [], (1 << g.order) - 1)
    return out


def playable_characterization_counterexamples(g: Graph) -> int:
    dist = g.distances
    bad = 0
    for S in all_gp_sets(g):
        lemma = playable_set(dist, VertexSet.from_mask(S))
        definition = VertexSet(x for x in range(g.order)
                               if not S >> x & 1 and is_general_position(dist, VertexSet.from_mask(S | 1 << x)))
        bad += lemma != definition
    return bad


def bipartite_independence_counterexamples(g: Graph) -> int:
    return sum(1 for S in all_gp_sets(g)
               if S.bit_count() >= 3 and not is_independent(g, VertexSet.from_mask(S)))


def cartesian_sufficiency_counterexamples(rng: random.Random, g: Graph, h: Graph, samples: int) -> tuple[int, int]:
    """Random sets satisfying the layer and projection hypotheses must be gp.

    Returns (counterexamples, number of sets that met a hypothesis).
    """
    prod = cartesian(g, h)
    dist = prod.distances
    bad = tested = 0
    for _ in range(samples):
        k = rng.randint(1, min(prod.order, 6))
        R = rng.sample(range(prod.order), k)
        coords = [prod.coords(v) for v in R]
        pg = {a for a, _ in coords}
        ph = {b for _, b in coords}
        pg_gp = is_general_position(g.distances, pg)
        layered = all(
            sum(1 for c, _ in coords if c == a) == 1 or sum(1 for _, d in coords if d == b) == 1
            for a, b in coords)
        hyp_32 = layered and pg_gp and is_general_position(h.distances, ph)
        hyp_33 = pg_gp and len(pg) == len(R)
        if hyp_32 or hyp_33:
            tested += 1
            if not is_general_position(dist, R):
                bad += 1
    return bad, tested


def lex_projection_counterexamples(g: Graph, h: Graph) -> int:
    prod = lexicographic(g, h)
    return sum(1 for S in all_gp_sets(prod)
               if not is_general_position(g.distances, prod.project_first(bits(S))))


def suite_lemmas(cfg: Config) -> list[Case]:
    rng = random.Random(f"lemmas-{cfg.seed}")
    cases = []
    atlas = graph_atlas(7) or [(f"random(n={n})", random_connected_graph(rng, n, 0.5))
                                   for n in range(1, 8) for _ in range(100)]
    full_atlas = graph_atlas(7, connected=False) or [
        (f"random(n={n})", random_graph(rng, n, rng.uniform(0.0, 0.9))) for n in range(1, 8) for _ in range(100)]
    sample8 = [(f"random(n=8,#{i})", random_graph(rng, 8, rng.uniform(0.05, 0.9))) for i in range(100)]
    for label, graphs in (("all graphs n<=7", full_atlas), ("random n=8", sample8)):
        t0 = time.perf_counter()
        bad = sum(playable_characterization_counterexamples(g) for _, g in graphs)
        cases.append(Case(f"playable characterization: {label} ({len(graphs)} graphs)", "lemma",
                          "0", str(bad), len(graphs), _ms(t0)))

    t0 = time.perf_counter()
    bip = [g for _, g in atlas if is_bipartite(g)]
    extra = 0
    while extra < 40:
        g = random_connected_graph(rng, 8, rng.uniform(0.15, 0.5))
        if is_bipartite(g):
            bip.append(g)
            extra += 1
    bad = sum(bipartite_independence_counterexamples(g) for g in bip)
    cases.append(Case(f"bipartite gp sets independent ({len(bip)} connected bipartite graphs)", "lemma",
                      "0", str(bad), len(bip), _ms(t0)))

    factors = [graph_from_text(e) for e in FORMULA_FACTORS + ("petersen", "tree(0,0)", "tree(1,2,3)")]
    t0 = time.perf_counter()
    bad = tested = 0
    for g in factors:
        for h in factors:
            b, t = cartesian_sufficiency_counterexamples(rng, g, h, 60)
            bad += b
            tested += t
    cases.append(Case(f"cartesian layer/projection sufficiency ({tested} hypothesis-meeting sets)", "lemma",
                      "0", str(bad), tested, _ms(t0)))

    t0 = time.perf_counter()
    bad = 0
    pairs = 0
    lex_factors = [graph_from_text(e) for e in ("path(2)", "path(3)", "path(4)", "cycle(4)", "cycle(5)",
                                                 "complete(3)", "tree(0,0)")]
    for g in lex_factors:
        for h in lex_factors:
            bad += lex_projection_counterexamples(g, h)
            pairs += 1
    cases.append(Case(f"lex projection of gp sets ({pairs} factor pairs)", "lemma", "0", str(bad), pairs, _ms(t0)))
    return cases


SUITES: dict[str, Callable[[Config], list[Case]]] = {
    "complete": suite_complete,
    "paths": suite_paths,
    "cycles": suite_cycles,
    "multipartite": suite_multipartite,
    "bipartite": suite_bipartite,
    "petersen": suite_petersen,
    "hamming": suite_hamming,
    "k3cm": suite_k3cm,
    "lex": suite_lex,
    "products": suite_products,
    "formulas": suite_formulas,
    "trees": suite_trees,
    "avoidance": suite_avoidance,
    "oracle": suite_oracle,
    "lemmas": suite_lemmas,
}


def run_suite(name: str, cfg: Config) -> SuiteReport:
    from .errors import UnknownSuite

    if name not in SUITES:
        raise UnknownSuite(name)
    return SuiteReport(name, cfg.seed, SUITES[name](cfg))


def run(name: str, cfg: Config) -> list[SuiteReport]:
    if name == "all":
        return [run_suite(s, cfg) for s in SUITES]
    return [run_suite(name, cfg)]
