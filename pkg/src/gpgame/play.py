"""Interactive human-vs-engine play loop.

Input is one decimal vertex index per line, so a session can be scripted by
piping a file into the command.
"""

from __future__ import annotations

from typing import TextIO

from .errors import IllegalMove
from .game import GameState, Rule, Solver, apply_move


class SessionAborted(Exception):
    pass


def _winner_of_last_move(last_mover: str, rule: Rule) -> str:
    if rule is Rule.ACHIEVEMENT:
        return last_mover
    return "B" if last_mover == "A" else "A"


def play_session(solver: Solver, human: str, stdin: TextIO, stdout: TextIO) -> str:
    """Run one game and return the winner ("A" or "B").

    The engine answers with the solver's best move. Raises
    :class:`SessionAborted` if input ends before the game does.
    """
    if human not in ("A", "B"):
        raise ValueError("human must play A or B")
    graph, rule = solver.graph, solver.rule
    state = GameState(graph, rule=rule)
    solver.mover_wins(0)
    last_mover = None
    out = stdout.write
    out(f"{rule.value} game on {graph.order} vertices; you are {human}\n")
    while True:
        playable = state.playable()
        out(f"played: {state.played!r}  playable: {playable!r}\n")
        if not playable:
            break
        mover = state.to_move
        if mover == human:
            out(f"your move ({mover}): ")
            stdout.flush()
            line = stdin.readline()
            if not line:
                out("\n")
                raise SessionAborted("input ended mid-game")
            text = line.strip()
            try:
                v = int(text)
            except ValueError:
                out(f"not a vertex index: {text!r}\n")
                continue
            try:
                state = apply_move(state, v)
            except IllegalMove as exc:
                out(f"illegal: {exc}\n")
                continue
        else:
            v = solver.best_move(state.played.mask)
            out(f"engine ({mover}) plays {v}\n")
            state = apply_move(state, v)
        last_mover = mover
    winner = _winner_of_last_move(last_mover, rule)
    out(f"game over after {len(state.played)} moves: {winner} wins\n")
    return winner
