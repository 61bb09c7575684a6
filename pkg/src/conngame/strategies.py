"""Alice and Bob strategies behind one interface: ``start``, ``choose``, and
``snapshot``/``restore``/``memory_key`` so exhaustive search can branch over them."""

from __future__ import annotations

import random
from functools import lru_cache
from itertools import permutations
from typing import Any, Callable, Hashable, Optional

from conngame.game import ALICE, BOB, COLORING, MARKING, GameState, Move, Rules, StrategyError
from conngame.graph import (
    ConstructionOrdering,
    Graph,
    GraphError,
    TreedepthDecomposition,
    fan_m,
    fan_v,
    fan_w,
    iter_bits,
    ktree_ordering,
    spider_graph,
    spider_parts,
    treedepth_decomposition,
)
from conngame.patterns import PATTERNS, host_subpattern, iter_embeddings, local_region
from conngame.solver import ColoringSolver, Limits, MarkingSolver, RestrictedGame


class Strategy:
    name = "strategy"
    games: tuple[str, ...] = (MARKING, COLORING)

    def __init__(self) -> None:
        self.rng = random.Random(0)
        self.events: list[dict[str, Any]] = []

    def start(self, state: GameState, rng: random.Random) -> None:
        if state.rules.game not in self.games:
            raise StrategyError(f"strategy {self.name!r} does not play the {state.rules.game} game")
        self.rng = rng
        self.events = []

    def choose(self, state: GameState) -> Move:
        raise NotImplementedError

    def snapshot(self) -> Any:
        return None

    def restore(self, snap: Any) -> None:
        pass

    def memory_key(self, state: GameState) -> Optional[Hashable]:
        """What, beyond the position, the next moves depend on; ``None`` disables memoization."""
        return None

    def _legal(self, state: GameState) -> list[Move]:
        moves = state.legal_moves()
        if not moves:
            raise StrategyError(f"strategy {self.name!r} asked to move with no legal move")
        return moves


# --- baselines --------------------------------------------------------------------


class RandomStrategy(Strategy):
    name = "random"

    def __init__(self, seed: Optional[int] = None) -> None:
        super().__init__()
        self.seed = seed

    def start(self, state: GameState, rng: random.Random) -> None:
        super().start(state, rng if self.seed is None else random.Random(self.seed))

    def choose(self, state: GameState) -> Move:
        return self.rng.choice(self._legal(state))


class FirstFit(Strategy):
    name = "first_fit"

    def choose(self, state: GameState) -> Move:
        return self._legal(state)[0]

    def memory_key(self, state: GameState) -> Hashable:
        return ()


class MaxDegreeMarker(Strategy):
    name = "max_degree"

    def choose(self, state: GameState) -> Move:
        moves = self._legal(state)
        deg = state.graph.degree
        return min(moves, key=lambda m: (-deg(m.vertex), m.vertex, m.color or 0))

    def memory_key(self, state: GameState) -> Hashable:
        return ()


class SolverOptimal(Strategy):
    """Plays an optimal move from the exact solver (lowest vertex, then lowest color)."""

    name = "solver_optimal"

    def __init__(self, limits: Optional[Limits] = None) -> None:
        super().__init__()
        self.limits = limits
        self._solver: Any = None
        self._key: Any = None

    def start(self, state: GameState, rng: random.Random) -> None:
        super().start(state, rng)
        key = (state.graph, state.rules)
        if self._key != key:
            r = state.rules
            if r.game == MARKING:
                self._solver = MarkingSolver(state.graph, r.connected, self.limits)
            else:
                self._solver = ColoringSolver(state.graph, r.colors, r.connected, self.limits)
            self._key = key

    def choose(self, state: GameState) -> Move:
        if state.rules.game == MARKING:
            return Move(self._solver.best_moves(state.played)[0])
        cls, colored = self._solver.state_arrays(state)
        outcomes = self._solver.move_outcomes(cls, colored)
        want = state.turn == ALICE
        for move, alice_wins in outcomes:
            if alice_wins == want:
                return move
        return outcomes[0][0]

    def memory_key(self, state: GameState) -> Hashable:
        return ()


# --- Alice: treedepth strategy ------------------------------------------------------


class AliceTreedepth(Strategy):
    """Answer each Bob mark with the least-level unmarked available ancestor of it,
    else the least-level available vertex; open on the root."""

    name = "treedepth"
    games = (MARKING,)

    def __init__(self, decomp: TreedepthDecomposition) -> None:
        super().__init__()
        self.decomp = decomp
        self.tree = decomp.tree

    def start(self, state: GameState, rng: random.Random) -> None:
        super().start(state, rng)
        if state.graph != self.decomp.target:
            raise StrategyError("treedepth strategy: decomposition is for a different graph")

    def choose(self, state: GameState) -> Move:
        if state.turn != ALICE:
            raise StrategyError("treedepth strategy only plays Alice")
        tree = self.tree
        if not state.played:
            return Move(tree.root)
        avail = state.available_mask()
        last = state.last_move()
        if last is not None and last[0] == BOB:
            options = [u for u in tree.ancestors(last[1].vertex) if avail >> u & 1]
            if options:
                return Move(min(options, key=lambda u: (tree.level[u], u)))
        if not avail:
            raise StrategyError("treedepth strategy: no available vertex")
        return Move(min(iter_bits(avail), key=lambda u: (tree.level[u], u)))

    def memory_key(self, state: GameState) -> Hashable:
        return state.last_move()


def treedepth_trace_check(decomp: TreedepthDecomposition) -> Callable[[GameState, Any, str], None]:
    """Runtime check of the two counting facts behind the treedepth bound.

    After every move: each unmarked ``v`` has at most one descendant neighbour
    marked by Alice.  After every Bob move: the descendant neighbours of ``v``
    marked by Bob are no more than the marked ancestors of ``v``.
    """
    tree, g = decomp.tree, decomp.target
    desc_nbrs = [
        [u for u in g.adjacency[v] if tree.is_ancestor(v, u)] for v in range(g.n)
    ]

    def check(state: GameState, strategy: Any, mover: str) -> None:
        by = {}
        for player, mv in state.history:
            by[mv.vertex] = player
        for v in range(g.n):
            if state.is_played(v):
                continue
            alice = sum(1 for u in desc_nbrs[v] if by.get(u) == ALICE)
            if alice > 1:
                raise AssertionError(f"vertex {v}: Alice marked {alice} descendant neighbours")
            if mover == BOB:
                bob = sum(1 for u in desc_nbrs[v] if by.get(u) == BOB)
                anc = sum(1 for a in tree.ancestors(v) if state.is_played(a))
                if bob > anc:
                    raise AssertionError(f"vertex {v}: Bob marked {bob} descendant neighbours, {anc} ancestors marked")

    return check


# --- Alice: activation strategy on k-trees ---------------------------------------------


class AliceActivation(Strategy):
    """Activation strategy over a k-tree construction order.

    Alice opens on ``v_1``; after Bob marks ``x`` she processes ``x``: walk to
    the smallest-index unmarked back-neighbour, adding an arc each step, and
    mark the first vertex that already had an incoming arc, or the vertex where
    the walk runs out of unmarked back-neighbours.
    """

    name = "activation"
    games = (MARKING,)

    def __init__(self, ordering: ConstructionOrdering) -> None:
        super().__init__()
        self.ordering = ordering
        self.arcs: set[tuple[int, int]] = set()
        self.indeg: dict[int, int] = {}
        self.last_rule = 0

    def start(self, state: GameState, rng: random.Random) -> None:
        super().start(state, rng)
        if len(self.ordering.order) != state.graph.n:
            raise StrategyError("activation strategy: ordering is for a different graph")
        self.arcs, self.indeg, self.last_rule = set(), {}, 0

    def snapshot(self) -> Any:
        return frozenset(self.arcs), dict(self.indeg), self.last_rule

    def restore(self, snap: Any) -> None:
        arcs, indeg, rule = snap
        self.arcs, self.indeg, self.last_rule = set(arcs), dict(indeg), rule

    def memory_key(self, state: GameState) -> Hashable:
        return frozenset(self.arcs), state.last_move()

    def _add_arc(self, a: int, b: int) -> None:
        if (a, b) not in self.arcs:
            self.arcs.add((a, b))
            self.indeg[b] = self.indeg.get(b, 0) + 1

    def choose(self, state: GameState) -> Move:
        if state.turn != ALICE:
            raise StrategyError("activation strategy only plays Alice")
        order, pos, back = self.ordering.order, self.ordering.position, self.ordering.back_neighbors
        if not state.played:
            self.last_rule = 0
            return Move(order[0])
        last = state.last_move()
        if last is None or last[0] != BOB:
            raise StrategyError("activation strategy expects to answer a Bob move")
        x = last[1].vertex
        while True:
            unmarked = [b for b in back[x] if not state.is_played(b)]
            if not unmarked:
                if not state.is_played(x):
                    target, self.last_rule = x, 1
                else:
                    target = next(v for v in order if not state.is_played(v))
                    self.last_rule = 2
                break
            vj = min(unmarked, key=pos.__getitem__)
            had = self.indeg.get(vj, 0)
            self._add_arc(x, vj)
            if had >= 1:
                target, self.last_rule = vj, 3
                break
            x = vj
        if not state.available_mask() >> target & 1:
            raise StrategyError(
                f"activation strategy: target {target} (rule {self.last_rule}) is not adjacent to the marked set"
            )
        return Move(target)

    def reachable_from(self, sources: set[int]) -> set[int]:
        out_arcs: dict[int, list[int]] = {}
        for a, b in self.arcs:
            out_arcs.setdefault(a, []).append(b)
        seen = set(sources)
        stack = list(sources)
        while stack:
            a = stack.pop()
            for b in out_arcs.get(a, ()):
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return seen


def activation_trace_check(state: GameState, strategy: AliceActivation, mover: str) -> None:
    """In-degree invariants after each Alice move; rule-3 marks must be reachable from Bob's marks."""
    if mover != ALICE:
        return
    for v, d in strategy.indeg.items():
        if d > 2:
            raise AssertionError(f"vertex {v} has in-degree {d}")
        if d > 1 and not state.is_played(v):
            raise AssertionError(f"unmarked vertex {v} has in-degree {d}")
    if strategy.last_rule == 3:
        target = state.last_move()[1].vertex
        bob_marked = {mv.vertex for p, mv in state.history if p == BOB}
        if target not in strategy.reachable_from(bob_marked):
            raise AssertionError(f"rule-3 mark {target} is not reachable from a Bob-marked vertex")


# --- Bob: spider leaves -------------------------------------------------------------------


class BobSpider(Strategy):
    """Bob on the spider graph with ``k <= t <= 2k-4`` colors: answer the
    opening off the path, then paint leaves with fresh colors."""

    name = "spider"
    games = (COLORING,)

    def __init__(self, t: int, k: Optional[int] = None) -> None:
        super().__init__()
        self.t = t
        self.k = k
        if k is not None:
            self._check_range(k)
        self.claimed_new = False

    def _check_range(self, k: int) -> None:
        if not k <= self.t <= 2 * k - 4:
            raise StrategyError(f"spider strategy needs k <= t <= 2k-4, got k={k}, t={self.t}")

    def start(self, state: GameState, rng: random.Random) -> None:
        super().start(state, rng)
        g = state.graph
        k = (g.n + 5) // 3
        if 3 * k - 5 != g.n or k < 3 or g != spider_graph(k)[0]:
            raise StrategyError("spider strategy: graph is not a spider graph")
        if self.k is not None and self.k != k:
            raise StrategyError(f"spider strategy built for k={self.k}, graph has k={k}")
        self._check_range(k)
        if state.rules.colors != self.t:
            raise StrategyError(f"spider strategy built for t={self.t}, game uses {state.rules.colors}")
        self.k = k
        self.path, self.leaves = spider_parts(k)
        self.claimed_new = False

    def snapshot(self) -> Any:
        return self.claimed_new

    def restore(self, snap: Any) -> None:
        self.claimed_new = snap

    def memory_key(self, state: GameState) -> Hashable:
        return tuple(state.history[:2])

    def choose(self, state: GameState) -> Move:
        if state.turn != BOB:
            raise StrategyError("spider strategy only plays Bob")
        hist = state.history
        self.claimed_new = False
        if len(hist) == 1:
            x, a = hist[0][1].vertex, hist[0][1].color
            target = self.leaves[0] if x in self.path else self.path[0]
            colors = [c for c in state.legal_colors(target) if c != a]
            if colors and state.check_move(Move(target, colors[0])) is None:
                return Move(target, colors[0])
        else:
            first = {mv.color for _, mv in hist[:2]}
            on_leaves = {state.color[l] for l in self.leaves if state.color[l]}
            cand = state.candidate_mask()
            for leaf in self.leaves:
                if not cand >> leaf & 1:
                    continue
                for c in state.legal_colors(leaf):
                    if c not in first and c not in on_leaves:
                        self.claimed_new = True
                        return Move(leaf, c)
        return self._legal(state)[0]


def spider_trace_check(state: GameState, strategy: BobSpider, mover: str) -> None:
    """Bob's fresh-color leaf moves stay pairwise distinct and avoid the opening colors."""
    if mover != BOB or not strategy.claimed_new:
        return
    hist = state.history
    first = {mv.color for _, mv in hist[:2]}
    leaves = set(strategy.leaves)
    bob_leaf_colors = [mv.color for i, (p, mv) in enumerate(hist) if i >= 2 and p == BOB and mv.vertex in leaves]
    if len(set(bob_leaf_colors)) != len(bob_leaf_colors) or first & set(bob_leaf_colors):
        raise AssertionError(f"Bob's leaf colors {bob_leaf_colors} clash (opening colors {first})")


# --- Bob on the fan-triangle graph ---------------------------------------------------------


@lru_cache(maxsize=200_000)
def _restricted_bob_move(n: int, edges: tuple, coloring: tuple) -> Optional[tuple[int, int]]:
    """First Bob-winning move in the restricted game on a region, Bob to move; ``None`` if lost."""
    from conngame.graph import build_graph

    game = RestrictedGame(build_graph(n, edges), coloring, 4)
    res = game.solve(BOB)
    if res.winner != BOB or not res.winning_moves:
        return None
    m = res.winning_moves[0]
    return m.vertex, m.color


class BobFan4(Strategy):
    """Bob on the fan-triangle graph with four colors, connected game.

    Phases: ROOT (get ``r`` colored), WINDOW (color the middle of an untouched
    stretch of nine path vertices), SETUP (color one end of it, making a Type 3
    configuration), CASCADE (play the exact restricted-game winning move in the
    region around the configuration).  Anything that derails the script is
    logged in ``events``.
    """

    name = "fan4"
    games = (COLORING,)
    MAX_EMBEDDINGS = 40

    def __init__(self) -> None:
        super().__init__()
        self._reset()

    def _reset(self) -> None:
        self.phase = "root"
        self.window: Optional[int] = None
        self.core: Optional[list[int]] = None
        self.pattern_name: Optional[str] = None

    def start(self, state: GameState, rng: random.Random) -> None:
        super().start(state, rng)
        try:
            self.m = fan_m(state.graph)
        except GraphError as e:
            raise StrategyError(f"fan4 strategy: {e}") from None
        if state.rules.colors != 4 or not state.rules.connected:
            raise StrategyError("fan4 strategy plays the connected game with 4 colors")
        if self.m < 9:
            raise StrategyError("fan4 strategy needs m >= 9")
        self._reset()

    def snapshot(self) -> Any:
        return self.phase, self.window, self.core, self.pattern_name, len(self.events)

    def restore(self, snap: Any) -> None:
        self.phase, self.window, self.core, self.pattern_name, n_events = snap
        del self.events[n_events:]

    def memory_key(self, state: GameState) -> Hashable:
        return self.phase, self.window, tuple(self.core or ()), state.last_move()

    def w(self, i: int) -> int:
        return fan_w(self.m, i)

    def v(self, i: int) -> int:
        return fan_v(self.m, i)

    def _event(self, kind: str, phase: str, detail: str) -> None:
        self.events.append({"event": kind, "phase": phase, "detail": detail})

    def choose(self, state: GameState) -> Move:
        if state.turn != BOB:
            raise StrategyError("fan4 strategy only plays Bob")
        if state.dead_vertices():
            return self._legal(state)[0]
        r = 0
        if not state.color[r]:
            return self._root_move(state)
        if self.phase == "root":
            self.phase = "window"
        if self.phase == "window":
            move = self._window_move(state)
            if move is not None:
                return move
            return self._give_up(state, "window", "no untouched window")
        if self.phase == "setup":
            move = self._setup_move(state)
            if move is not None:
                return move
            self._event("script-break", "setup", f"both endpoints of window {self.window} blocked")
            move = self._window_move(state)
            return move if move is not None else self._give_up(state, "setup", "no window to restart")
        move = self._cascade_move(state)
        if move is not None:
            return move
        self._event("script-break", "cascade", f"no winning restricted-game move around {self.pattern_name}")
        move = self._window_move(state)
        return move if move is not None else self._give_up(state, "cascade", "no window to restart")

    def _give_up(self, state: GameState, phase: str, why: str) -> Move:
        self._event("script-break", phase, f"{why}; playing lowest legal move")
        return self._legal(state)[0]

    def _root_move(self, state: GameState) -> Move:
        r = 0
        if state.candidate_mask() >> r & 1:
            return Move(r, state.legal_colors(r)[0])
        avail = state.candidate_mask()
        for i in range(self.m + 1):
            w = self.w(i)
            if avail >> w & 1 and state.legal_colors(w):
                return Move(w, state.legal_colors(w)[0])
        return self._give_up(state, "root", "no path vertex next to the colored set")

    def _window_move(self, state: GameState) -> Optional[Move]:
        m, col = self.m, state.color
        blockers = sum(1 for v in range(1, state.graph.n) if col[v])
        for i in range(0, m - 7):
            if any(col[self.w(j)] for j in range(i, i + 9)) or any(col[self.v(j)] for j in range(i + 1, i + 8)):
                continue
            mid = self.w(i + 4)
            colors = [c for c in state.legal_colors(mid) if c != col[0]]
            if not colors:
                continue
            self.window, self.phase = i, "setup"
            self.core = None
            return Move(mid, colors[0])
        # each colored vertex other than r blocks at most nine of the m - 7 windows
        assert not (m - 7 > 9 * blockers), f"window counting argument violated with {blockers} blockers"
        return None

    def _side(self, i: int, left: bool) -> tuple[int, list[int], list[int]]:
        """(endpoint, Type 3 image in pattern order, leak vertices) for one side of window ``i``."""
        if left:
            ws = [self.w(i + 4 - d) for d in range(5)]  # m1, b1, b2, b3, m5
            tops = [self.v(i + 4), self.v(i + 3), self.v(i + 2)]
            leak = [self.v(i + 1)]
        else:
            ws = [self.w(i + 4 + d) for d in range(5)]
            tops = [self.v(i + 5), self.v(i + 6), self.v(i + 7)]
            leak = [self.v(i + 8)] if i + 8 <= self.m else []
        image = [0] + ws + tops  # r, m1, b1, b2, b3, m5, a1, a2, a3
        return ws[-1], image, leak

    def _setup_move(self, state: GameState) -> Optional[Move]:
        i, col = self.window, state.color
        mid = self.w(i + 4)
        fresh, touched = [], []
        for left in (True, False):
            end, image, leak = self._side(i, left)
            (touched if any(col[h] for h in image[2:] + leak) else fresh).append((end, image))
        for n_try, (end, image) in enumerate(fresh + touched):
            colors = [c for c in state.legal_colors(end) if c not in (col[0], col[mid])]
            if not colors:
                continue
            if n_try:
                self._event("fallback", "setup", f"window {i}: preferred side blocked, using endpoint {end}")
            self.core, self.phase, self.pattern_name = image, "cascade", "type3"
            return Move(end, colors[0])
        return None

    def _region_move(self, state: GameState, core: list[int]) -> Optional[Move]:
        region = local_region(state, core)
        pat = host_subpattern(state, region)
        pick = _restricted_bob_move(pat.graph.n, pat.graph.edges, tuple(c or 0 for c in pat.coloring))
        if pick is None:
            return None
        move = Move(region[pick[0]], pick[1])
        return move if state.check_move(move) is None else None

    def _cascade_move(self, state: GameState) -> Optional[Move]:
        if self.core is not None:
            move = self._region_move(state, self.core)
            if move is not None:
                return move
        for strict in (True, False):
            for name in ("type1", "type2", "type3"):
                for n_emb, emb in enumerate(iter_embeddings(state, PATTERNS[name](), strict=strict)):
                    if n_emb >= self.MAX_EMBEDDINGS:
                        break
                    core = list(emb.vertex_map)
                    move = self._region_move(state, core)
                    if move is not None:
                        self.core, self.pattern_name = core, name
                        return move
        return None


class BobFan3(Strategy):
    """Bob on the fan-triangle graph with three colors.

    The graph is uniquely 3-colorable (r, the two parities of the path, and
    every triangle vertex with r's color), so Bob wins as soon as the partial
    coloring disagrees with every color permutation of that coloring.
    """

    name = "fan3"
    games = (COLORING,)

    def start(self, state: GameState, rng: random.Random) -> None:
        super().start(state, rng)
        try:
            self.m = fan_m(state.graph)
        except GraphError as e:
            raise StrategyError(f"fan3 strategy: {e}") from None
        if state.rules.colors != 3 or not state.rules.connected:
            raise StrategyError("fan3 strategy plays the connected game with 3 colors")
        m = self.m
        canon = [0] * state.graph.n
        for i in range(m + 1):
            canon[fan_w(m, i)] = 1 + i % 2
        self.canon = canon
        self.vs = [fan_v(m, i) for i in range(1, m + 1)]
        self.vset = set(self.vs)

    def memory_key(self, state: GameState) -> Hashable:
        return ()

    def extendable(self, color: list[int]) -> bool:
        canon = self.canon
        for perm in permutations((1, 2, 3)):
            if all(not c or perm[canon[x]] == c for x, c in enumerate(color)):
                return True
        return False

    def choose(self, state: GameState) -> Move:
        if state.turn != BOB:
            raise StrategyError("fan3 strategy only plays Bob")
        moves = self._legal(state)
        col = list(state.color)

        def breaks(mv: Move) -> bool:
            col[mv.vertex] = mv.color
            ok = not self.extendable(col)
            col[mv.vertex] = 0
            return ok

        for mv in moves:
            if breaks(mv):
                return mv
        # once r is colored every w is available, and a far w takes the wrong parity
        if not col[0]:
            for mv in moves:
                if mv.vertex == 0:
                    return mv
            for mv in moves:
                if mv.vertex not in self.vset:
                    return mv
            return moves[0]
        for mv in moves:
            if mv.vertex != 0 and mv.vertex not in self.vset:
                i = mv.vertex - 1
                nearby = [fan_v(self.m, j) for j in (i, i + 1) if 1 <= j <= self.m]
                if all(not col[x] for x in nearby):
                    return mv
        return moves[0]


# --- registry -------------------------------------------------------------------------------


def _ktree_k(g: Graph) -> Optional[ConstructionOrdering]:
    for k in range(1, g.n + 1):
        if k * g.n - k * (k + 1) // 2 == g.edge_count:
            return ktree_ordering(g, k)
    return None


class ScriptedStrategy(Strategy):
    """Replays a fixed move list for one side, e.g. the adversary line of a failure artifact."""

    name = "script"

    def __init__(self, moves: list[Move]) -> None:
        super().__init__()
        self.moves = list(moves)
        self.pos = 0

    def start(self, state: GameState, rng: random.Random) -> None:
        super().start(state, rng)
        self.pos = 0

    def choose(self, state: GameState) -> Move:
        if self.pos >= len(self.moves):
            raise StrategyError(f"strategy {self.name!r} ran out of scripted moves")
        move = self.moves[self.pos]
        self.pos += 1
        return move

    def snapshot(self) -> Any:
        return self.pos

    def restore(self, snap: Any) -> None:
        self.pos = snap

    @classmethod
    def from_transcript(cls, data: dict[str, Any], side: str) -> "ScriptedStrategy":
        return cls([Move(m["vertex"], m.get("color")) for m in data["moves"] if m["player"] == side])


TREEDEPTH_MAX_N = 24


def make_strategy(name: str, g: Graph, rules: Rules, seed: Optional[int] = None) -> Strategy:
    """Build a registered strategy for ``g`` under ``rules``."""
    if name == "random":
        return RandomStrategy(seed)
    if name == "first_fit":
        return FirstFit()
    if name == "max_degree":
        return MaxDegreeMarker()
    if name == "solver_optimal":
        return SolverOptimal()
    if name in ("treedepth", "activation") and rules.game != MARKING:
        raise StrategyError(f"strategy {name!r} does not play the {rules.game} game")
    if name == "treedepth":
        if g.n > TREEDEPTH_MAX_N:
            raise StrategyError(f"strategy 'treedepth' computes an exact decomposition; graph has {g.n} > {TREEDEPTH_MAX_N} vertices")
        decomp = treedepth_decomposition(g)
        return AliceTreedepth(decomp)
    if name == "activation":
        ordering = _ktree_k(g)
        if ordering is None:
            raise StrategyError("activation strategy: graph is not a k-tree")
        return AliceActivation(ordering)
    if name == "spider":
        if rules.colors is None:
            raise StrategyError("spider strategy plays the coloring game")
        return BobSpider(rules.colors)
    if name == "fan4":
        return BobFan4()
    if name == "fan3":
        return BobFan3()
    raise StrategyError(f"unknown strategy {name!r}; known: {', '.join(STRATEGY_NAMES)}")


STRATEGY_NAMES = (
    "treedepth", "activation", "spider", "fan4", "fan3", "random", "first_fit", "max_degree", "solver_optimal",
)  # fmt: skip
