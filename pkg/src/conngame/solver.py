"""Exact minimax solvers for the marking and coloring games and their connected variants.

Marking game
------------
For a played set ``S`` let ``f(S)`` be the largest vertex score still to come
under optimal play.  Because the play score is a running maximum,

    f(S) = opt_{v legal} max(|N(v) & S|, f(S + v)),   f(V) = 0,

with ``opt`` = min on Alice's turn (``|S|`` even) and max on Bob's.  The score
accumulated before reaching ``S`` never enters: ``max(a, opt_i x_i) =
opt_i max(a, x_i)`` for both min and max, so the table is keyed on ``S`` alone
and ``col = 1 + f(empty)``.

Coloring game
-------------
Positions are keyed on the set of color classes (colors relabelled by first
use), which is a game isomorphism: any color bijection maps legal plays to
legal plays and preserves both terminal predicates.  A move leaving an
uncolored vertex with all ``t`` colors in its neighbourhood ends the search
with a Bob win.
"""

from __future__ import annotations

import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Optional, Sequence

from conngame.game import ALICE, BOB, COLORING, MARKING, GameState, Move, Rules, StrategyError, other
from conngame.graph import Graph, GraphError, iter_bits


class ResourceLimitError(RuntimeError):
    def __init__(self, cap: str, limit: int, detail: str = "") -> None:
        msg = f"resource cap {cap}={limit} exceeded"
        super().__init__(msg + (f" ({detail})" if detail else ""))
        self.cap = cap
        self.limit = limit


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    return int(raw) if raw else default


@dataclass(frozen=True)
class Limits:
    """Hard caps; exceeding any of them raises ``ResourceLimitError``."""

    max_n_marking_connected: int = 20
    max_n_marking: int = 18
    max_n_coloring: int = 14
    node_budget: int = 50_000_000

    @classmethod
    def from_env(cls) -> "Limits":
        return cls(
            max_n_marking_connected=_env_int("CONNGAME_MAX_N_MARKING_CONNECTED", cls.max_n_marking_connected),
            max_n_marking=_env_int("CONNGAME_MAX_N_MARKING", cls.max_n_marking),
            max_n_coloring=_env_int("CONNGAME_MAX_N_COLORING", cls.max_n_coloring),
            node_budget=_env_int("CONNGAME_NODE_BUDGET", cls.node_budget),
        )


@dataclass
class SolveResult:
    value: Optional[int] = None
    winner: Optional[str] = None
    optimal_first_moves: list[Move] = field(default_factory=list)
    nodes_expanded: int = 0
    table_hits: int = 0
    wall_time_ms: float = 0.0

    def to_json(self, graph: Optional[Graph] = None, rules: Optional[Rules] = None) -> dict[str, Any]:
        out: dict[str, Any] = {}
        if graph is not None:
            out["graph"] = {"n": graph.n, "m": graph.edge_count, "hash": graph.digest}
        if rules is not None:
            out["rules"] = rules.to_json()
        if self.value is not None:
            out["value"] = self.value
        if self.winner is not None:
            out["winner"] = self.winner
        out["optimal_first_moves"] = [
            {"vertex": m.vertex, **({"color": m.color} if m.color is not None else {})} for m in self.optimal_first_moves
        ]
        out["nodes_expanded"] = self.nodes_expanded
        out["table_hits"] = self.table_hits
        out["wall_time_ms"] = round(self.wall_time_ms, 3)
        return out


# --- marking game -------------------------------------------------------------------


class MarkingSolver:
    """Memoized ``f(S)``; reusable across queries on the same graph."""

    def __init__(self, g: Graph, connected: bool, limits: Optional[Limits] = None, use_table: bool = True) -> None:
        limits = limits or Limits.from_env()
        cap_name, cap = (
            ("max_n_marking_connected", limits.max_n_marking_connected)
            if connected
            else ("max_n_marking", limits.max_n_marking)
        )
        if g.n > cap:
            raise ResourceLimitError(cap_name, cap, f"graph has {g.n} vertices")
        if connected and not g.is_connected():
            raise GraphError("connected game on a disconnected graph")
        self.g = g
        self.connected = connected
        self.use_table = use_table
        self.budget = limits.node_budget
        self.table: dict[int, int] = {}
        self.nodes = 0
        self.hits = 0

    def moves(self, s: int) -> list[int]:
        g = self.g
        if self.connected and s:
            adj = 0
            for v in iter_bits(s):
                adj |= g.masks[v]
            return list(iter_bits(adj & ~s))
        return list(iter_bits(g.full_mask & ~s))

    def future(self, s: int) -> int:
        """Optimal largest vertex score still to come from played set ``s``."""
        if s == self.g.full_mask:
            return 0
        if self.use_table:
            hit = self.table.get(s)
            if hit is not None:
                self.hits += 1
                return hit
        self.nodes += 1
        if self.nodes > self.budget:
            raise ResourceLimitError("node_budget", self.budget)
        masks = self.g.masks
        alice = s.bit_count() % 2 == 0
        best = None
        for v in self.moves(s):
            val = max((masks[v] & s).bit_count(), self.future(s | 1 << v))
            if best is None or (val < best if alice else val > best):
                best = val
        if self.use_table:
            self.table[s] = best
        return best

    def move_values(self, s: int) -> list[tuple[int, int]]:
        masks = self.g.masks
        return [(v, max((masks[v] & s).bit_count(), self.future(s | 1 << v))) for v in self.moves(s)]

    def best_moves(self, s: int) -> list[int]:
        vals = self.move_values(s)
        if not vals:
            return []
        pick = min if s.bit_count() % 2 == 0 else max
        target = pick(val for _, val in vals)
        return [v for v, val in vals if val == target]


def _marking_subtree(args: tuple) -> tuple[int, int, int]:
    g, connected, limits, use_table, v = args
    solver = MarkingSolver(g, connected, limits, use_table)
    val = max(0, solver.future(1 << v))
    return val, solver.nodes, solver.hits


def _map_subtrees(fn: Callable, tasks: list, workers: int) -> list:
    if workers <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


def marking_value(
    g: Graph,
    connected: bool,
    limits: Optional[Limits] = None,
    workers: Optional[int] = None,
    use_table: bool = True,
) -> SolveResult:
    """Game coloring number (``col_cg`` if ``connected`` else ``col_g``) by exact search.

    ``workers=None`` shares one table across the whole search.  With an integer
    ``workers`` every first move is solved on its own fresh table, so values and
    statistics do not depend on how many processes run them.
    """
    t0 = time.perf_counter()
    limits = limits or Limits.from_env()
    solver = MarkingSolver(g, connected, limits, use_table)
    if g.n == 0:
        return SolveResult(value=1, wall_time_ms=0.0)
    firsts = solver.moves(0)
    if workers is None:
        vals = [solver.future(1 << v) for v in firsts]
        nodes, hits = solver.nodes + 1, solver.hits
    else:
        out = _map_subtrees(_marking_subtree, [(g, connected, limits, use_table, v) for v in firsts], workers)
        vals = [o[0] for o in out]
        nodes = 1 + sum(o[1] for o in out)
        hits = sum(o[2] for o in out)
    best = min(vals)
    return SolveResult(
        value=1 + best,
        optimal_first_moves=[Move(v) for v, val in zip(firsts, vals) if val == best],
        nodes_expanded=nodes,
        table_hits=hits,
        wall_time_ms=(time.perf_counter() - t0) * 1e3,
    )


# --- coloring game ------------------------------------------------------------------


def _lowbit(m: int) -> int:
    return m & -m


class ColoringSolver:
    """AND/OR search over partial colorings; ``alice_wins`` answers for a position."""

    def __init__(
        self,
        g: Graph,
        colors: int,
        connected: bool,
        limits: Optional[Limits] = None,
        canonicalize: bool = True,
    ) -> None:
        limits = limits or Limits.from_env()
        if g.n > limits.max_n_coloring:
            raise ResourceLimitError("max_n_coloring", limits.max_n_coloring, f"graph has {g.n} vertices")
        if connected and not g.is_connected():
            raise GraphError("connected game on a disconnected graph")
        self.g = g
        self.t = colors
        self.connected = connected
        self.canonicalize = canonicalize
        self.budget = limits.node_budget
        self.table: dict[Hashable, bool] = {}
        self.nodes = 0
        self.hits = 0

    def key(self, cls: Sequence[int]) -> Hashable:
        if self.canonicalize:
            return tuple(sorted((m for m in cls if m), key=_lowbit))
        return tuple(cls)

    def candidates(self, colored: int) -> int:
        g = self.g
        if self.connected and colored:
            adj = 0
            for v in iter_bits(colored):
                adj |= g.masks[v]
            return adj & ~colored
        return g.full_mask & ~colored

    def color_options(self, cls: Sequence[int], v: int, reduce: bool) -> list[int]:
        nb = self.g.masks[v]
        out = []
        fresh_seen = False
        for c in range(self.t):
            if cls[c] & nb:
                continue
            if reduce and not cls[c]:
                if fresh_seen:
                    continue
                fresh_seen = True
            out.append(c)
        return out

    def creates_dead(self, cls: Sequence[int], colored: int, v: int) -> bool:
        """After coloring ``v``: does an uncolored neighbour of ``v`` see all colors?"""
        masks = self.g.masks
        for u in iter_bits(masks[v] & ~colored):
            nb = masks[u]
            if all(m & nb for m in cls):
                return True
        return False

    def alice_wins(self, cls: list[int], colored: int) -> bool:
        if colored == self.g.full_mask:
            return True
        key = self.key(cls)
        hit = self.table.get(key)
        if hit is not None:
            self.hits += 1
            return hit
        self.nodes += 1
        if self.nodes > self.budget:
            raise ResourceLimitError("node_budget", self.budget)
        alice = colored.bit_count() % 2 == 0
        result = not alice
        moved = False
        for v in iter_bits(self.candidates(colored)):
            bit = 1 << v
            for c in self.color_options(cls, v, self.canonicalize):
                moved = True
                cls[c] |= bit
                nxt = colored | bit
                if self.creates_dead(cls, nxt, v):
                    child = False
                else:
                    child = self.alice_wins(cls, nxt)
                cls[c] &= ~bit
                if child == alice:
                    result = alice
                    break
            else:
                continue
            break
        if not moved:
            result = False  # no legal move for either player is a Bob win
        self.table[key] = result
        return result

    def move_outcomes(self, cls: list[int], colored: int) -> list[tuple[Move, bool]]:
        """Every legal move (color index 0-based internally, 1-based in ``Move``) and whether Alice then wins."""
        out = []
        for v in iter_bits(self.candidates(colored)):
            bit = 1 << v
            for c in self.color_options(cls, v, False):
                cls[c] |= bit
                nxt = colored | bit
                win = False if self.creates_dead(cls, nxt, v) else self.alice_wins(cls, nxt)
                cls[c] &= ~bit
                out.append((Move(v, c + 1), win))
        return out

    def state_arrays(self, state: GameState) -> tuple[list[int], int]:
        return list(state.class_masks[1:]), state.played


def _coloring_subtree(args: tuple) -> tuple[bool, int, int]:
    g, t, connected, limits, canonicalize, v, c = args
    solver = ColoringSolver(g, t, connected, limits, canonicalize)
    cls = [0] * t
    cls[c] = 1 << v
    win = False if solver.creates_dead(cls, 1 << v, v) else solver.alice_wins(cls, 1 << v)
    return win, solver.nodes, solver.hits


def coloring_winner(
    g: Graph,
    t: int,
    connected: bool,
    limits: Optional[Limits] = None,
    workers: Optional[int] = None,
    canonicalize: bool = True,
) -> SolveResult:
    """Winner of the coloring game with ``t`` colors from the empty position."""
    t0 = time.perf_counter()
    limits = limits or Limits.from_env()
    solver = ColoringSolver(g, t, connected, limits, canonicalize)
    if g.n == 0:
        return SolveResult(winner=ALICE)
    if workers is None:
        outcomes = solver.move_outcomes([0] * t, 0)
        nodes, hits = solver.nodes + 1, solver.hits
    else:
        firsts = [(v, c) for v in range(g.n) for c in range(t)]
        out = _map_subtrees(_coloring_subtree, [(g, t, connected, limits, canonicalize, v, c) for v, c in firsts], workers)
        outcomes = [(Move(v, c + 1), o[0]) for (v, c), o in zip(firsts, out)]
        nodes = 1 + sum(o[1] for o in out)
        hits = sum(o[2] for o in out)
    wins = [m for m, w in outcomes if w]
    return SolveResult(
        winner=ALICE if wins else BOB,
        optimal_first_moves=wins if wins else [m for m, _ in outcomes],
        nodes_expanded=nodes,
        table_hits=hits,
        wall_time_ms=(time.perf_counter() - t0) * 1e3,
    )


@dataclass
class ChromaticScan:
    value: Optional[int]
    wins: dict[int, bool]
    t_max: int

    def describe(self) -> str:
        return str(self.value) if self.value is not None else f"> {self.t_max}"


def coloring_scan(g: Graph, connected: bool, t_max: int, limits: Optional[Limits] = None) -> ChromaticScan:
    """Alice's win/loss for every ``t`` in ``1..t_max`` (no monotonicity assumed)."""
    wins = {t: coloring_winner(g, t, connected, limits).winner == ALICE for t in range(1, t_max + 1)}
    value = next((t for t in sorted(wins) if wins[t]), None)
    return ChromaticScan(value, wins, t_max)


def game_chromatic(g: Graph, connected: bool, t_max: int, limits: Optional[Limits] = None) -> Optional[int]:
    """Least ``t <= t_max`` with an Alice win, ``None`` when there is none."""
    return coloring_scan(g, connected, t_max, limits).value


# --- exhaustive play against a fixed strategy ------------------------------------------


def exhaustive_vs_strategy(
    g: Graph,
    rules: Rules,
    strategy: Any,
    side: str = ALICE,
    limits: Optional[Limits] = None,
    seed: int = 0,
    on_ply: Optional[Callable[[GameState, Any, str], None]] = None,
    with_line: bool = False,
) -> Any:
    """Worst case for ``strategy`` playing ``side`` against every opponent line.

    Marking: the largest play score the opponent can force (Bob maximizing
    against an Alice strategy, Alice minimizing against a Bob strategy).
    Coloring: whether ``strategy`` wins on every line.  ``on_ply(state,
    strategy, mover)`` is called after each move, for runtime invariant checks;
    it needs every line visited, so it switches the transposition table off.
    With ``with_line`` the result is ``(value, moves)`` where ``moves`` is one
    opponent line attaining it, as ``(player, Move)`` pairs.
    """
    limits = limits or Limits.from_env()
    state = GameState(g, rules)
    strategy.start(state, random.Random(seed))
    marking = rules.game == MARKING
    table: dict[Hashable, Any] = {}
    nodes = 0

    # lines are cons cells (player, move, rest) so memo entries share tails
    def rec() -> tuple[Any, Any]:
        nonlocal nodes
        outcome = state.terminal_status(True)
        if outcome.over:
            return (0 if marking else outcome.kind == ("alice_win" if side == ALICE else "bob_win")), None
        mem = strategy.memory_key(state) if on_ply is None else None
        key = None
        if mem is not None:
            key = (state.played, tuple(state.color), mem)
            if key in table:
                return table[key]
        nodes += 1
        if nodes > limits.node_budget:
            raise ResourceLimitError("node_budget", limits.node_budget)
        mover = state.turn
        if mover == side:
            snap = strategy.snapshot()
            move = strategy.choose(state)
            reason = state.check_move(move)
            if reason is not None:
                raise StrategyError(f"strategy {strategy.name!r} proposed illegal move {move}: {reason}")
            score = state.vertex_score(move.vertex)
            state.apply_move(move)
            if on_ply:
                on_ply(state, strategy, side)
            sub, tail = rec()
            state.undo()
            strategy.restore(snap)
            result = (max(score, sub) if marking else sub), (mover, move, tail)
        else:
            best: Any = None
            for move in state.legal_moves():
                score = state.vertex_score(move.vertex)
                state.apply_move(move)
                if on_ply:
                    on_ply(state, strategy, other(side))
                sub, tail = rec()
                val = max(score, sub) if marking else sub
                state.undo()
                if best is None or (
                    (val > best[0] if side == ALICE else val < best[0]) if marking else (best[0] and not val)
                ):
                    best = val, (mover, move, tail)
                if not marking and not val:
                    break
            result = best
        if key is not None:
            table[key] = result
        return result

    value, cell = rec()
    if not with_line:
        return value
    line = []
    while cell is not None:
        line.append((cell[0], cell[1]))
        cell = cell[2]
    return value, line


def best_response_bound(
    g: Graph,
    alice: Any,
    connected: bool = True,
    rules: Optional[Rules] = None,
    limits: Optional[Limits] = None,
    on_ply: Optional[Callable[[GameState, Any, str], None]] = None,
) -> Any:
    """What a deterministic Alice strategy guarantees against an exhaustive Bob.

    Marking: the maximum play score over all Bob lines (so result + 1 bounds
    the game coloring number from above).  Coloring (pass coloring ``rules``):
    ``"alice"`` if the strategy wins every line, else ``"bob"``.
    """
    rules = rules or Rules.marking(connected)
    res = exhaustive_vs_strategy(g, rules, alice, ALICE, limits, on_ply=on_ply)
    if rules.game == COLORING:
        return ALICE if res else BOB
    return res


# --- restricted pattern game ----------------------------------------------------------


@dataclass
class RestrictedResult:
    winner: str
    winning_moves: list[Move]


class RestrictedGame:
    """Coloring game confined to a partially colored graph ``H``.

    A move colors an uncolored vertex of ``H`` adjacent to a colored one,
    properly along ``H``'s edges.  Alice may pass; Bob passes only when he
    cannot move.  A dead vertex is a Bob win, a full coloring or two
    consecutive passes an Alice win.
    """

    def __init__(self, graph: Graph, coloring: Sequence[Optional[int]], colors: int = 4) -> None:
        if not any(coloring):
            raise GraphError("restricted game needs at least one colored vertex")
        self.g = graph
        self.t = colors
        self.start = tuple(c or 0 for c in coloring)
        self.table: dict[tuple, bool] = {}
        self._full = ((1 << (colors + 1)) - 1) & ~1

    def _seen(self, cols: tuple, v: int) -> int:
        out = 0
        for u in self.g.adjacency[v]:
            if cols[u]:
                out |= 1 << cols[u]
        return out

    def has_dead(self, cols: tuple) -> bool:
        return any(not c and self._seen(cols, v) == self._full for v, c in enumerate(cols))

    def moves(self, cols: tuple) -> list[tuple[int, int]]:
        out = []
        for v, c in enumerate(cols):
            if c or not any(cols[u] for u in self.g.adjacency[v]):
                continue
            seen = self._seen(cols, v)
            out += [(v, col) for col in range(1, self.t + 1) if not seen >> col & 1]
        return out

    def bob_wins(self, cols: tuple, turn: str, prev_pass: bool) -> bool:
        key = (cols, turn, prev_pass)
        hit = self.table.get(key)
        if hit is not None:
            return hit
        if self.has_dead(cols):
            res = True
        elif all(cols):
            res = False
        else:
            moves = self.moves(cols)
            if turn == ALICE:
                res = (not prev_pass) and self.bob_wins(cols, BOB, True)
                if res:
                    for v, c in moves:
                        if not self.bob_wins(cols[:v] + (c,) + cols[v + 1 :], BOB, False):
                            res = False
                            break
            elif moves:
                res = any(self.bob_wins(cols[:v] + (c,) + cols[v + 1 :], ALICE, False) for v, c in moves)
            else:
                res = (not prev_pass) and self.bob_wins(cols, ALICE, True)
        self.table[key] = res
        return res

    def solve(self, turn: str) -> RestrictedResult:
        cols = self.start
        bob = self.bob_wins(cols, turn, False)
        moves = self.moves(cols)
        winners = []
        for v, c in moves:
            nxt = cols[:v] + (c,) + cols[v + 1 :]
            nxt_turn = BOB if turn == ALICE else ALICE
            if self.bob_wins(nxt, nxt_turn, False) == (turn == BOB):
                winners.append(Move(v, c))
        return RestrictedResult(BOB if bob else ALICE, winners)


def restricted_pattern_solve(pattern: Any, turn: str, colors: int = 4) -> RestrictedResult:
    return RestrictedGame(pattern.graph, pattern.coloring, colors).solve(turn)


def restricted_pattern_winner(pattern: Any, turn: str, colors: int = 4) -> str:
    """Winner of the restricted game on ``pattern`` with ``turn`` to move."""
    return restricted_pattern_solve(pattern, turn, colors).winner
