from __future__ import annotations

import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conngame.game import (
    ALICE,
    BOB,
    GameState,
    IllegalMove,
    Move,
    Rules,
    StrategyError,
    new_state,
    run_game,
)
from conngame.graph import GraphError, build_graph, complete_graph, cycle_graph, fan_triangle_graph, path_graph, random_ktree
from conngame.strategies import FirstFit, RandomStrategy, SolverOptimal, Strategy

from conftest import connected_graphs, random_connected_graph


def played_is_connected(state: GameState) -> bool:
    return state.played == 0 or state.graph.is_connected(state.played)


def coloring_is_proper(state: GameState) -> bool:
    return all(not state.color[u] or state.color[u] != state.color[v] for u, v in state.graph.edges)


# --- new_state --------------------------------------------------------------------------


def test_new_state_k2():
    s = new_state(complete_graph(2), Rules.marking(True))
    assert s.played_count == 0 and s.turn == ALICE
    assert [m.vertex for m in s.legal_moves()] == [0, 1]


def test_new_state_c4_coloring():
    s = new_state(cycle_graph(4), Rules.coloring(2, True))
    assert s.played_count == 0 and s.turn == ALICE and s.color == [0, 0, 0, 0]


def test_connected_rules_reject_disconnected_graph():
    with pytest.raises(GraphError):
        new_state(build_graph(2, []), Rules.marking(True))
    new_state(build_graph(2, []), Rules.marking(False))


def test_rules_validation():
    with pytest.raises(ValueError):
        Rules("marking", True, 3)
    with pytest.raises(ValueError):
        Rules("coloring", True)
    with pytest.raises(ValueError):
        Rules("go", True)


# --- legal moves -----------------------------------------------------------------------


def test_connected_marking_on_p3():
    s = new_state(path_graph(3), Rules.marking(True)).apply_move(Move(1))
    assert [m.vertex for m in s.legal_moves()] == [0, 2]


def test_connected_marking_restricts_to_available():
    s = new_state(path_graph(4), Rules.marking(True)).apply_move(Move(0))
    assert [m.vertex for m in s.legal_moves()] == [1]
    s = new_state(path_graph(4), Rules.marking(False)).apply_move(Move(0))
    assert [m.vertex for m in s.legal_moves()] == [1, 2, 3]


def test_diamond_coloring_moves(diamond):
    s = new_state(diamond, Rules.coloring(3, True)).apply_move(Move(0, 1))
    moves = [(m.vertex, m.color) for m in s.legal_moves()]
    assert moves == [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (3, 3)]


@given(connected_graphs(max_n=6), st.integers(1, 3))
def test_empty_state_offers_everything(g, t):
    assert len(new_state(g, Rules.marking(True)).legal_moves()) == g.n
    assert len(new_state(g, Rules.coloring(t, True)).legal_moves()) == g.n * t


# --- apply / undo ----------------------------------------------------------------------


def test_k2_marking_score():
    s = new_state(complete_graph(2), Rules.marking(True)).apply_move(Move(0)).apply_move(Move(1))
    assert s.score_so_far == 1
    assert s.terminal_status().kind == "done" and s.terminal_status().score == 1


def test_c4_around_the_cycle_scores_two():
    s = new_state(cycle_graph(4), Rules.marking(True))
    for v in range(4):
        s.apply_move(Move(v))
    assert s.score_so_far == 2


@pytest.mark.parametrize(
    "rules,moves,bad,reason",
    [
        (Rules.coloring(3, True), [Move(0, 1)], Move(1, 1), "color conflict"),
        (Rules.marking(True), [Move(0)], Move(0), "occupied"),
        (Rules.marking(True), [Move(0)], Move(3), "disconnected"),
        (Rules.coloring(3, True), [], Move(0, 4), "color out of range"),
        (Rules.marking(True), [], Move(0, 1), "marking moves carry no color"),
    ],
)
def test_illegal_moves_rejected_with_reason(rules, moves, bad, reason):
    s = new_state(path_graph(4), rules)
    for m in moves:
        s.apply_move(m)
    before = s.signature()
    with pytest.raises(IllegalMove) as info:
        s.apply_move(bad)
    assert info.value.reason == reason
    assert s.signature() == before


def _random_rules(rng: random.Random) -> Rules:
    connected = rng.random() < 0.5
    if rng.random() < 0.5:
        return Rules.marking(connected)
    return Rules.coloring(rng.randint(1, 4), connected)


def test_apply_undo_round_trip_10k_sequences():
    """10^4 random move sequences: every prefix unwinds to the exact prior state."""
    rng = random.Random(2024)
    for _ in range(10_000):
        g = random_connected_graph(rng.randint(1, 8), rng.random() * 0.5, rng)
        s = new_state(g, _random_rules(rng))
        sigs = [s.signature()]
        while not s.terminal_status(early_decision=False).over:
            s.apply_move(rng.choice(s.legal_moves()))
            sigs.append(s.signature())
            assert s.score_so_far == s.recompute_score()
            if s.rules.connected:
                assert played_is_connected(s)
            assert coloring_is_proper(s)
        for expected in reversed(sigs[:-1]):
            s.undo()
            assert s.signature() == expected


@given(connected_graphs(max_n=8), st.booleans(), st.integers(0, 4), st.randoms(use_true_random=False))
def test_invariants_along_random_play(g, connected, t, rnd):
    rules = Rules.marking(connected) if t == 0 else Rules.coloring(t, connected)
    s = new_state(g, rules)
    while not s.terminal_status(early_decision=False).over:
        moves = s.legal_moves()
        assert len(set(moves)) == len(moves) and moves == s.legal_moves()
        assert moves == sorted(moves, key=lambda m: (m.vertex, m.color or 0))
        s.apply_move(rnd.choice(moves))
        assert s.score_so_far == s.recompute_score()
        assert not connected or played_is_connected(s)
        assert coloring_is_proper(s)


def test_copy_is_independent(diamond):
    s = new_state(diamond, Rules.marking(True)).apply_move(Move(0))
    c = s.copy()
    c.apply_move(Move(1))
    assert s.played_count == 1 and c.played_count == 2


# --- terminal status -------------------------------------------------------------------


def test_dead_vertex_is_bob_win():
    s = new_state(complete_graph(3), Rules.coloring(2, True)).apply_move(Move(0, 1)).apply_move(Move(1, 2))
    assert s.dead_vertices() == [2]
    assert s.terminal_status().kind == "bob_win"
    # without the shortcut the literal rule (no legal move) agrees
    assert s.terminal_status(early_decision=False).kind == "bob_win"


def test_full_coloring_is_alice_win():
    s = new_state(path_graph(2), Rules.coloring(2, True)).apply_move(Move(0, 1)).apply_move(Move(1, 2))
    assert s.terminal_status().kind == "alice_win"


def test_p4_one_end_colored_is_ongoing():
    s = new_state(path_graph(4), Rules.coloring(2, True)).apply_move(Move(0, 1))
    assert s.terminal_status().kind == "ongoing"


def test_early_decision_only_shortcuts():
    # triangle with a pendant path: vertex 2 dies while 3 and 4 are still playable
    g = build_graph(5, [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4)])
    s = new_state(g, Rules.coloring(2, False)).apply_move(Move(0, 1)).apply_move(Move(1, 2))
    assert s.terminal_status(True).kind == "bob_win"
    assert s.terminal_status(False).kind == "ongoing"


# --- running games ---------------------------------------------------------------------


def test_k2_any_strategies_score_one():
    for seed in range(5):
        tr = run_game(complete_graph(2), Rules.marking(True), RandomStrategy(), RandomStrategy(), seed=seed)
        assert tr.score == 1 and tr.verdict == "done"


def test_diamond_optimal_vs_optimal(diamond):
    tr = run_game(diamond, Rules.marking(True), SolverOptimal(), SolverOptimal())
    assert tr.score == 2


def test_random_games_are_reproducible():
    g = path_graph(3)
    a = run_game(g, Rules.marking(True), RandomStrategy(), RandomStrategy(), seed=11).dumps()
    b = run_game(g, Rules.marking(True), RandomStrategy(), RandomStrategy(), seed=11).dumps()
    assert a == b


def test_transcript_json_shape():
    g, _ = fan_triangle_graph(2)
    tr = run_game(g, Rules.coloring(3, True), FirstFit(), FirstFit())
    data = json.loads(tr.dumps())
    assert set(data) >= {"graph_hash", "rules", "moves", "verdict"}
    assert data["graph_hash"] == g.digest
    assert all({"player", "vertex", "color"} <= set(m) for m in data["moves"])
    assert data["moves"][0]["player"] == ALICE and data["moves"][1]["player"] == BOB


class _Cheater(Strategy):
    name = "cheater"

    def choose(self, state):
        return Move(0)


def test_illegal_strategy_move_names_the_strategy():
    with pytest.raises(StrategyError, match="cheater.*occupied"):
        run_game(path_graph(3), Rules.marking(True), _Cheater(), _Cheater())


def test_ktree_games_terminate():
    g, _ = random_ktree(2, 9, 4)
    for seed in range(20):
        tr = run_game(g, Rules.coloring(3, True), RandomStrategy(), RandomStrategy(), seed=seed)
        assert tr.verdict in ("alice_win", "bob_win")
