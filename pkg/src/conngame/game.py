"""Game state, legality (including connected play), scoring, terminal detection, game running."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Any, Optional, Protocol

from conngame.graph import Graph, GraphError, iter_bits

ALICE = "alice"
BOB = "bob"

MARKING = "marking"
COLORING = "coloring"


def other(player: str) -> str:
    return BOB if player == ALICE else ALICE


class IllegalMove(ValueError):
    def __init__(self, move: "Move", reason: str) -> None:
        super().__init__(f"illegal move {move}: {reason}")
        self.move = move
        self.reason = reason


class StrategyError(RuntimeError):
    """A strategy produced an illegal move or was used outside its contract."""


@dataclass(frozen=True)
class Rules:
    game: str
    connected: bool
    colors: Optional[int] = None

    def __post_init__(self) -> None:
        if self.game not in (MARKING, COLORING):
            raise ValueError(f"unknown game {self.game!r}")
        if self.game == COLORING and (self.colors is None or self.colors < 1):
            raise ValueError("coloring rules need colors >= 1")
        if self.game == MARKING and self.colors is not None:
            raise ValueError("marking rules take no color count")

    @classmethod
    def marking(cls, connected: bool = True) -> "Rules":
        return cls(MARKING, connected)

    @classmethod
    def coloring(cls, colors: int, connected: bool = True) -> "Rules":
        return cls(COLORING, connected, colors)

    def to_json(self) -> dict[str, Any]:
        out: dict[str, Any] = {"game": self.game, "connected": self.connected}
        if self.colors is not None:
            out["colors"] = self.colors
        return out


@dataclass(frozen=True)
class Move:
    vertex: Optional[int]
    color: Optional[int] = None
    passed: bool = False

    @classmethod
    def pass_(cls) -> "Move":
        return cls(None, None, True)

    def __str__(self) -> str:
        if self.passed:
            return "pass"
        return f"{self.vertex}" if self.color is None else f"{self.vertex}:{self.color}"


@dataclass(frozen=True)
class Outcome:
    kind: str  # ongoing | alice_win | bob_win | done
    score: Optional[int] = None

    @property
    def over(self) -> bool:
        return self.kind != "ongoing"


ONGOING = Outcome("ongoing")
ALICE_WIN = Outcome("alice_win")
BOB_WIN = Outcome("bob_win")


@dataclass
class _Entry:
    player: str
    move: Move
    prev_score: int


class GameState:
    """Mutable position of one game; ``apply_move``/``undo`` are exact inverses."""

    def __init__(self, graph: Graph, rules: Rules) -> None:
        if rules.connected and not graph.is_connected():
            raise GraphError("connected game on a disconnected graph")
        self.graph = graph
        self.rules = rules
        self.played = 0
        self.color = [0] * graph.n
        self.class_masks = [0] * ((rules.colors or 0) + 1)
        self.turn = ALICE
        self.score_so_far = 0
        self._history: list[_Entry] = []

    def copy(self) -> "GameState":
        s = GameState.__new__(GameState)
        s.graph, s.rules = self.graph, self.rules
        s.played = self.played
        s.color = list(self.color)
        s.class_masks = list(self.class_masks)
        s.turn = self.turn
        s.score_so_far = self.score_so_far
        s._history = list(self._history)
        return s

    # -- views ----------------------------------------------------------------

    @property
    def played_count(self) -> int:
        return self.played.bit_count()

    @property
    def history(self) -> list[tuple[str, Move]]:
        return [(e.player, e.move) for e in self._history]

    def last_move(self) -> Optional[tuple[str, Move]]:
        if not self._history:
            return None
        e = self._history[-1]
        return e.player, e.move

    def is_played(self, v: int) -> bool:
        return bool(self.played >> v & 1)

    def available_mask(self) -> int:
        """Unplayed vertices adjacent to a played vertex."""
        adj = 0
        masks = self.graph.masks
        for v in iter_bits(self.played):
            adj |= masks[v]
        return adj & ~self.played

    def candidate_mask(self) -> int:
        if self.rules.connected and self.played:
            return self.available_mask()
        return self.graph.full_mask & ~self.played

    def neighbor_colors(self, v: int) -> int:
        """Bit set of colors (bit c) present on neighbours of ``v``."""
        nb = self.graph.masks[v]
        out = 0
        for c in range(1, len(self.class_masks)):
            if self.class_masks[c] & nb:
                out |= 1 << c
        return out

    def legal_colors(self, v: int) -> list[int]:
        used = self.neighbor_colors(v)
        return [c for c in range(1, len(self.class_masks)) if not used >> c & 1]

    def legal_moves(self) -> list[Move]:
        cand = self.candidate_mask()
        if self.rules.game == MARKING:
            return [Move(v) for v in iter_bits(cand)]
        return [Move(v, c) for v in iter_bits(cand) for c in self.legal_colors(v)]

    def dead_vertices(self) -> list[int]:
        if self.rules.game != COLORING:
            return []
        t = self.rules.colors
        full = ((1 << (t + 1)) - 1) & ~1
        return [v for v in iter_bits(self.graph.full_mask & ~self.played) if self.neighbor_colors(v) == full]

    def vertex_score(self, v: int) -> int:
        return (self.graph.masks[v] & self.played).bit_count()

    def check_move(self, move: Move) -> Optional[str]:
        """Reason the move is illegal, or ``None``."""
        if move.passed:
            return "pass not allowed"
        v = move.vertex
        if v is None or not 0 <= v < self.graph.n:
            return "no such vertex"
        if self.played >> v & 1:
            return "occupied"
        if self.rules.connected and self.played and not self.graph.masks[v] & self.played:
            return "disconnected"
        if self.rules.game == MARKING:
            if move.color is not None:
                return "marking moves carry no color"
            return None
        c = move.color
        if c is None or not 1 <= c <= self.rules.colors:
            return "color out of range"
        if self.class_masks[c] & self.graph.masks[v]:
            return "color conflict"
        return None

    # -- mutation -------------------------------------------------------------

    def apply_move(self, move: Move) -> "GameState":
        reason = self.check_move(move)
        if reason is not None:
            raise IllegalMove(move, reason)
        v = move.vertex
        self._history.append(_Entry(self.turn, move, self.score_so_far))
        score = self.vertex_score(v)
        if score > self.score_so_far:
            self.score_so_far = score
        self.played |= 1 << v
        if move.color is not None:
            self.color[v] = move.color
            self.class_masks[move.color] |= 1 << v
        self.turn = other(self.turn)
        return self

    def undo(self) -> Move:
        e = self._history.pop()
        v = e.move.vertex
        self.played &= ~(1 << v)
        if e.move.color is not None:
            self.color[v] = 0
            self.class_masks[e.move.color] &= ~(1 << v)
        self.score_so_far = e.prev_score
        self.turn = e.player
        return e.move

    # -- terminal status --------------------------------------------------------

    def terminal_status(self, early_decision: bool = True) -> Outcome:
        if self.rules.game == MARKING:
            if self.played == self.graph.full_mask:
                return Outcome("done", self.score_so_far)
            return ONGOING
        if self.played == self.graph.full_mask:
            return ALICE_WIN
        if early_decision and self.dead_vertices():
            return BOB_WIN
        if not self.legal_moves():
            return BOB_WIN
        return ONGOING

    def recompute_score(self) -> int:
        """Play score from the move history alone (checker for the incremental value)."""
        seen = 0
        best = 0
        for e in self._history:
            v = e.move.vertex
            best = max(best, (self.graph.masks[v] & seen).bit_count())
            seen |= 1 << v
        return best

    def signature(self) -> tuple:
        return (self.played, tuple(self.color), self.turn, self.score_so_far, tuple(self.class_masks))

    def __repr__(self) -> str:
        return f"GameState(n={self.graph.n}, rules={self.rules}, played={self.played_count}, turn={self.turn})"


def new_state(g: Graph, rules: Rules) -> GameState:
    return GameState(g, rules)


# -- running games -------------------------------------------------------------------


class StrategyLike(Protocol):
    name: str

    def start(self, state: GameState, rng: random.Random) -> None: ...

    def choose(self, state: GameState) -> Move: ...


@dataclass
class Transcript:
    graph_hash: str
    rules: Rules
    moves: list[tuple[str, Move]]
    verdict: str
    score: Optional[int] = None
    events: list[dict[str, Any]] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        moves = []
        for player, m in self.moves:
            rec: dict[str, Any] = {"player": player, "vertex": m.vertex}
            if m.color is not None:
                rec["color"] = m.color
            if m.passed:
                rec["pass"] = True
            moves.append(rec)
        out: dict[str, Any] = {
            "graph_hash": self.graph_hash,
            "rules": self.rules.to_json(),
            "moves": moves,
            "verdict": self.verdict,
        }
        if self.score is not None:
            out["score"] = self.score
        if self.events:
            out["events"] = self.events
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True)


def play_move(state: GameState, strategy: StrategyLike) -> Move:
    """Ask ``strategy`` for a move and apply it; illegal proposals abort with a diagnostic."""
    move = strategy.choose(state)
    reason = state.check_move(move)
    if reason is not None:
        raise StrategyError(f"strategy {strategy.name!r} proposed illegal move {move}: {reason}")
    state.apply_move(move)
    return move


def run_game(
    g: Graph,
    rules: Rules,
    alice: StrategyLike,
    bob: StrategyLike,
    seed: int = 0,
    early_decision: bool = True,
) -> Transcript:
    state = GameState(g, rules)
    alice.start(state, random.Random(f"{seed}:alice"))
    bob.start(state, random.Random(f"{seed}:bob"))
    players = {ALICE: alice, BOB: bob}
    while not (outcome := state.terminal_status(early_decision)).over:
        play_move(state, players[state.turn])
    events = []
    for side, strat in players.items():
        for ev in getattr(strat, "events", []):
            events.append({"player": side, **ev})
    return Transcript(g.digest, rules, state.history, outcome.kind, outcome.score, events)
