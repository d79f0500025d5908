import io
import json
import subprocess
import sys

import pytest

from gpgame.cli import main
from gpgame.families import complete, cycle, path
from gpgame.game import Rule, Solver
from gpgame.graph import write_edge_list
from gpgame.play import SessionAborted, play_session
from gpgame.report import CSV_HEADER, Case, Config, SuiteReport, parse_csv, parse_json, render
from gpgame.suites import run_suite


def run_cli(*argv):
    out = io.StringIO()
    code = main(list(argv), out=out)
    return code, out.getvalue()


@pytest.mark.parametrize("expr,winner", [
    ("cartesian(complete(3),cycle(5))", "A"),
    ("cartesian(complete(3),cycle(7))", "B"),
    ("lex(cycle(6),complete(3))", "B"),
])
def test_solve_command(expr, winner):
    code, text = run_cli("solve", expr, "achievement", "--format", "json")
    assert code == 0
    rec = json.loads(text)
    assert rec["winner"] == winner
    assert rec["states"] > 0
    assert rec["best_first_move"] == 0 or winner == "B"


def test_solve_rule_flag_and_text():
    code, text = run_cli("solve", "cycle(6)", "--rule", "avoidance")
    assert code == 0
    assert "winner: B" in text and "rule: avoidance" in text


@pytest.mark.parametrize("expr,gp", [("path(9)", 2), ("petersen", 6), ("cartesian(tree(0,0),tree(1))", 5)])
def test_gp_command(expr, gp):
    code, text = run_cli("--format", "json", "gp", expr)
    assert code == 0
    assert json.loads(text)["gp"] == gp


def test_playable_command():
    code, text = run_cli("playable", "path(5)", "--set", "2", "--format", "json")
    assert json.loads(text)["playable"] == [0, 1, 3, 4]
    code, text = run_cli("playable", "path(5)", "--set", "0,1,2")
    assert code == 2


def test_exit_codes():
    assert run_cli("solve", "cycle(2)")[0] == 2
    assert run_cli("solve", "cartesian(")[0] == 2
    assert run_cli("solve", "cartesian(complete(70),complete(70))")[0] == 3
    assert run_cli("solve", "complete(5)", "--vertex-cap", "4")[0] == 3
    assert run_cli("solve", "petersen", "--state-cap", "3")[0] == 4
    with pytest.raises(SystemExit) as info:
        run_cli("verify", "nonsense")
    assert info.value.code == 2


def test_edge_list_input_and_export(tmp_path):
    p = tmp_path / "k4.txt"
    write_edge_list(complete(4), p)
    code, text = run_cli("solve", f"@{p}", "--format", "json")
    assert code == 0 and json.loads(text)["winner"] == "B"
    out = tmp_path / "p3.txt"
    assert run_cli("export", "path(3)", "-o", str(out))[0] == 0
    assert out.read_text() == "3 2\n0 1\n1 2\n"
    assert run_cli("solve", f"@{tmp_path / 'missing.txt'}")[0] == 2


def test_cache_flag(tmp_path):
    code, _ = run_cli("solve", "petersen", "--cache", str(tmp_path))
    assert code == 0
    assert len(list(tmp_path.glob("*.gpcache"))) == 1
    assert run_cli("solve", "petersen", "--cache", str(tmp_path))[0] == 0


def _play(graph, human, moves, rule=Rule.ACHIEVEMENT):
    out = io.StringIO()
    winner = play_session(Solver(graph, rule), human, io.StringIO("".join(f"{m}\n" for m in moves)), out)
    return winner, out.getvalue()


def test_play_k3_human_first():
    winner, text = _play(complete(3), "A", [0, 2])
    assert winner == "A"
    assert "engine (B) plays 1" in text
    assert "A wins" in text


def test_play_p4_engine_wins():
    for first in range(4):
        winner, text = _play(path(4), "A", [first])
        assert winner == "B"
        assert "after 2 moves" in text


def test_play_reprompts_on_bad_input():
    winner, text = _play(complete(3), "A", ["x", 0, 0, 2])
    assert "not a vertex index" in text
    assert "already played" in text
    assert winner == "A"


def test_play_engine_moves_first_when_human_is_b():
    winner, text = _play(path(5), "B", [4, 2, 1, 3])
    assert text.splitlines()[2] == "engine (A) plays 0"
    assert winner in ("A", "B")


def test_play_reprompt_names_condition_i():
    # on C9 the engine answers 2 with 0, leaving 1 inside their interval
    g = cycle(9)
    solver = Solver(g)
    solver.mover_wins(0)
    assert solver.best_move(1 << 2) == 0
    winner, text = _play(g, "A", [2, 1] + list(range(3, 9)))
    assert "illegal" in text and "condition (i)" in text
    assert winner in ("A", "B")


def test_play_aborts_on_end_of_input():
    with pytest.raises(SessionAborted):
        play_session(Solver(path(4)), "A", io.StringIO(""), io.StringIO())


def test_play_cli_eof_exit_code(monkeypatch):
    monkeypatch.setattr(sys, "stdin", io.StringIO(""))
    assert run_cli("play", "path(4)", "--as", "A")[0] == 5


def test_report_formats_round_trip():
    rep = SuiteReport("demo", 3, [Case("path(2)", "achievement", "B", "B", 3, 0.5),
                                  Case("complete(3)", "achievement", "A", "B", 7, 1.0)])
    assert not rep.passed
    back = parse_json(render([rep], "json"))
    assert back[0].to_dict() == rep.to_dict()
    csv_text = render([rep], "csv")
    assert csv_text.splitlines()[0] == ",".join(CSV_HEADER)
    rows = parse_csv(csv_text)
    assert list(rows[0]) == CSV_HEADER
    assert rows[1]["computed"] == "B" and rows[1]["suite"] == "demo"
    text = render([rep], "text")
    assert "FAIL" in text and "seed 3" in text


def test_verify_reports_are_reparseable():
    code, text = run_cli("verify", "complete", "--format", "json", "--seed", "5")
    assert code == 0
    reps = parse_json(text)
    assert reps[0].suite == "complete" and reps[0].seed == 5 and reps[0].passed
    code, text = run_cli("verify", "hamming", "--format", "csv")
    assert text.splitlines()[0] == ",".join(CSV_HEADER)
    assert len(text.splitlines()) == 10


def test_verify_failure_exit_code(monkeypatch):
    import gpgame.suites as suites

    monkeypatch.setitem(suites.SUITES, "complete", lambda cfg: [Case("x", "achievement", "A", "B")])
    assert run_cli("verify", "complete")[0] == 1


def test_seed_changes_random_suites():
    a = run_suite("trees", Config(seed=1))
    b = run_suite("trees", Config(seed=2))
    assert [c.case for c in a.cases] != [c.case for c in b.cases]
    assert a.passed and b.passed


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "gpgame", "solve", "complete(3)", "--format", "json"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["winner"] == "A"
