import random

import networkx as nx
import pytest
from hypothesis import given, settings

from conftest import graphs
from oracles import is_gp_nx, nx_distances, to_nx
from gpgame.errors import BudgetExceeded, CacheMismatch, IllegalMove, PreconditionViolated
from gpgame.families import (cartesian, complete, cycle, disjoint_union, empty, graph_from_text,
                             multipartite, path, petersen)
from gpgame.game import (GameState, Rule, Solver, apply_move, cache_path, even_clique_closure_condition,
                         floyd_warshall, load_cache, oracle_solve, parity_criterion_check, save_cache,
                         solve, solve_from)
from gpgame.graph import Graph, VertexSet, bits
from gpgame.suites import all_gp_sets, graph_atlas, random_graph


def test_apply_move_examples():
    g = path(4)
    s = apply_move(GameState(g), 2)
    assert s.played == {2}
    with pytest.raises(IllegalMove) as info:
        apply_move(GameState(g, {0, 3}), 1)
    assert info.value.reason == "condition (i)"
    s = apply_move(GameState(cycle(6), {0, 2}), 4)
    assert s.played == {0, 2, 4}
    assert is_gp_nx(nx_distances(cycle(6)), (0, 2, 4))


def test_apply_move_other_failures():
    g = path(4)
    st = GameState(g, {0})
    with pytest.raises(IllegalMove) as info:
        apply_move(st, 0)
    assert info.value.reason == "already played"
    with pytest.raises(IllegalMove) as info:
        apply_move(GameState(g, {1, 2}), 3)
    assert info.value.reason == "condition (ii)"
    assert info.value.witness == (1, 2)
    with pytest.raises(IllegalMove):
        apply_move(st, 9)
    assert st.played == {0}


def test_state_must_be_gp():
    with pytest.raises(PreconditionViolated):
        GameState(path(4), {0, 1, 2})
    assert GameState(path(4), {0, 1}).to_move == "A"
    assert GameState(path(4), {0}).to_move == "B"


@pytest.mark.parametrize("expr,rule,winner", [
    ("complete(5)", Rule.ACHIEVEMENT, "A"),
    ("complete(4)", Rule.ACHIEVEMENT, "B"),
    ("cycle(6)", Rule.ACHIEVEMENT, "B"),
    ("cycle(6)", Rule.AVOIDANCE, "B"),
    ("petersen", Rule.ACHIEVEMENT, "B"),
    ("multipartite(2,2,2)", Rule.ACHIEVEMENT, "B"),
    ("multipartite(2,3,2)", Rule.ACHIEVEMENT, "A"),
    ("cartesian(complete(3),complete(3))", Rule.ACHIEVEMENT, "A"),
    ("union(path(2),empty(1))", Rule.ACHIEVEMENT, "A"),
])
def test_solve_examples(expr, rule, winner):
    g = graph_from_text(expr)
    assert solve(g, rule).winner == winner
    assert oracle_solve(g, rule).winner == winner


def test_single_vertex_convention():
    g = path(1)
    assert solve(g, Rule.ACHIEVEMENT).winner == "A"
    assert solve(g, Rule.AVOIDANCE).winner == "B"
    assert solve(g).best_first_move == 0


def test_solve_from_terminal_state():
    out = solve_from(GameState(path(4), {0, 3}))
    assert out.best_first_move is None
    assert out.winner == "B"
    out = solve_from(GameState(path(4), {0, 3}, Rule.AVOIDANCE))
    assert out.winner == "A"


def test_best_move_tie_break_is_lowest_winning_index():
    assert solve(complete(5)).best_first_move == 0
    # B is lost on K5 after A's first move, so B falls back to the lowest playable vertex
    s = Solver(complete(5))
    assert s.mover_wins(1) is False and s.best_move(1) == 1
    # on P4 after {1} every reply ends the game and wins
    s = Solver(path(4))
    assert s.best_move(0b0010) == 0
    # C6 after A plays 0: B's winning replies, by brute force, smallest first
    s = Solver(cycle(6))
    winning = [v for v in range(1, 6) if not oracle_solve_from(cycle(6), [0, v])]
    assert winning
    assert s.best_move(1) == winning[0]


def oracle_solve_from(g, seq):
    """Does the player to move after ``seq`` win? Plain recursion on the oracle's distances."""
    d = floyd_warshall(g)
    inf = float("inf")

    def ok(seq, x):
        tri = [(a, b, c) for i, a in enumerate(seq) for b in seq[i + 1:] for c in (x,)]
        for a, b, c in tri:
            for p, q, r in ((a, c, b), (c, a, b), (c, b, a)):
                if d[p][r] != inf and d[p][q] + d[q][r] == d[p][r]:
                    return False
        return x not in seq

    moves = [x for x in range(g.order) if ok(seq, x)]
    return any(not oracle_solve_from(g, seq + [x]) for x in moves)


def _pv_parity_holds(g, rule):
    out = solve(g, rule)
    if rule is Rule.ACHIEVEMENT:
        return (out.winner == "A") == (len(out.principal_variation) % 2 == 1)
    return (out.winner == "A") == (len(out.principal_variation) % 2 == 0)


@given(graphs(max_order=9))
@settings(max_examples=200, deadline=None)
def test_memoized_solver_agrees_with_oracle(g):
    for rule in Rule:
        memo = solve(g, rule)
        naive = oracle_solve(g, rule)
        assert memo.winner == naive.winner
        assert memo.best_first_move == naive.best_first_move
        assert _pv_parity_holds(g, rule)


@pytest.mark.parametrize("n", range(3, 11))
def test_cycles_oracle_agreement(n):
    for rule in Rule:
        assert solve(cycle(n), rule).winner == oracle_solve(cycle(n), rule).winner


@pytest.mark.parametrize("n,m", [(n, m) for n in range(1, 4) for m in range(1, 4)])
def test_hamming_small_oracle_agreement(n, m):
    g = cartesian(complete(n), complete(m))
    for rule in Rule:
        assert solve(g, rule).winner == oracle_solve(g, rule).winner


def test_oracle_transposition_consistency():
    for g in (cycle(6), petersen(), complete(5), graph_from_text("cartesian(path(2),path(3))")):
        for rule in Rule:
            oracle_solve(g, rule, check_transpositions=True)


def test_floyd_warshall_matches_networkx():
    g = disjoint_union(petersen(), path(3))
    d = floyd_warshall(g)
    ref = nx_distances(g)
    for u in range(g.order):
        for v in range(g.order):
            assert d[u][v] == ref[u].get(v, float("inf"))


def test_parity_criterion_examples():
    p = petersen()
    for a, b in p.edges():
        assert parity_criterion_check(GameState(p, {a, b}))
    assert parity_criterion_check(GameState(path(4), {0, 1}))
    assert not parity_criterion_check(GameState(cycle(5), {0}))
    assert not parity_criterion_check(GameState(complete(3)))


def test_parity_criterion_soundness_all_small_graphs():
    checked = 0
    for _, g in graph_atlas(7, connected=False):
        solver = Solver(g)
        for S in all_gp_sets(g):
            if S == 0:
                continue
            state = GameState(g, VertexSet.from_mask(S))
            if parity_criterion_check(state):
                just_moved = "A" if S.bit_count() % 2 == 1 else "B"
                assert solve_from(state, solver=solver).winner == just_moved
                checked += 1
    assert checked > 1000


def test_order_independence_of_set_outcome():
    rng = random.Random(4)
    for _ in range(30):
        g = random_graph(rng, 7, rng.uniform(0.2, 0.8))
        solver = Solver(g)
        for S in all_gp_sets(g)[:50]:
            order = list(bits(S))
            rng.shuffle(order)
            state = GameState(g)
            for v in order:
                state = apply_move(state, v)
            assert solve_from(state, solver=solver).winner == solve_from(GameState(g, order)).winner


def test_debug_mode_asserts_states_are_gp():
    for _, g in graph_atlas(6):
        s = Solver(g, debug=True)
        s.mover_wins(0)
        assert s.memo


def test_even_clique_closure_examples():
    assert even_clique_closure_condition(complete(4))
    assert not even_clique_closure_condition(complete(3))
    for expr in ("path(2)", "path(5)", "cycle(6)", "tree(0,0,1)", "cartesian(path(2),path(3))"):
        assert even_clique_closure_condition(graph_from_text(expr))


def test_even_clique_closure_predicts_b_wins_on_products():
    for ge in ("complete(2)", "complete(4)", "cycle(4)", "path(3)"):
        g = graph_from_text(ge)
        assert even_clique_closure_condition(g)
        for he in ("complete(3)", "cycle(5)", "path(2)"):
            h = graph_from_text(he)
            assert solve(cartesian(g, h)).winner == "B"
            assert solve(cartesian(h, g)).winner == "B"


def test_multipartite_rule_every_small_vector():
    for parts in [(2, 2), (3, 3), (2, 3, 4), (3, 3, 3), (2, 2, 2, 3)]:
        a_wins = len(parts) % 2 == 1 and any(p % 2 for p in parts)
        assert solve(multipartite(*parts)).winner == ("A" if a_wins else "B")


def test_state_cap_aborts():
    with pytest.raises(BudgetExceeded):
        solve(petersen(), state_cap=10)
    with pytest.raises(ValueError):
        Solver(petersen(), state_cap=0)


def test_state_cap_from_environment(monkeypatch):
    monkeypatch.setenv("GPGAME_STATE_CAP", "3")
    with pytest.raises(BudgetExceeded):
        solve(petersen())


def test_restricted_first_move_on_vertex_transitive_graph():
    out = solve(petersen(), restrict_first_move=True)
    assert out.restricted and out.winner == "B"
    assert out.solved_states <= solve(petersen()).solved_states


def test_cache_round_trip(tmp_path):
    g = petersen()
    first = solve(g, Rule.ACHIEVEMENT, cache_dir=tmp_path)
    path_ = cache_path(tmp_path, g, Rule.ACHIEVEMENT)
    lines = path_.read_text().splitlines()
    assert lines[0].split()[:2] == ["gpcache", "1"] and lines[0].split()[3] == "achievement"
    assert all(ln.split()[1] in ("W", "L") for ln in lines[1:])
    memo = load_cache(path_, g, Rule.ACHIEVEMENT)
    assert len(memo) == len(lines) - 1
    again = solve(g, Rule.ACHIEVEMENT, cache_dir=tmp_path)
    assert again.winner == first.winner


def test_cache_rejects_other_graph_or_rule(tmp_path):
    g = petersen()
    p = tmp_path / "c.gpcache"
    save_cache(p, g, Rule.ACHIEVEMENT, {0: False})
    with pytest.raises(CacheMismatch):
        load_cache(p, cycle(5), Rule.ACHIEVEMENT)
    with pytest.raises(CacheMismatch):
        load_cache(p, g, Rule.AVOIDANCE)
    p.write_text("garbage\n")
    with pytest.raises(CacheMismatch):
        load_cache(p, g, Rule.ACHIEVEMENT)


def test_bipartite_isolated_parity_examples():
    for k in range(0, 4):
        g = disjoint_union(cycle(4), empty(k)) if k else cycle(4)
        assert solve(g).winner == ("A" if k % 2 else "B")


def test_graph_atlas_covers_connected_graphs():
    atlas = graph_atlas(7)
    assert len(atlas) == 1 + 1 + 2 + 6 + 21 + 112 + 853
    assert all(isinstance(g, Graph) and nx.is_connected(to_nx(g)) for _, g in atlas)
