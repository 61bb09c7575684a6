"""Named verification campaigns and the exploratory witness sweep.

Every campaign returns a ``Report`` whose ``records`` and ``verdict`` depend
only on the configuration (timings are kept apart so reruns diff cleanly).
"""

from __future__ import annotations

import platform
import random
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations, product
from typing import Any, Callable, Optional

import networkx as nx

from conngame import __name__ as _pkg
from conngame.game import ALICE, BOB, Rules, StrategyError, Transcript, run_game
from conngame.graph import (
    Graph,
    build_graph,
    fan_triangle_graph,
    random_closure_subgraph,
    random_ktree,
    serialize_graph,
    spider_graph,
    treedepth_decomposition,
)
from conngame.patterns import PATTERNS, serialize_pattern
from conngame.solver import (
    RestrictedGame,
    best_response_bound,
    coloring_scan,
    coloring_winner,
    exhaustive_vs_strategy,
    marking_value,
    restricted_pattern_winner,
)
from conngame.strategies import (
    AliceActivation,
    AliceTreedepth,
    BobFan3,
    BobFan4,
    BobSpider,
    FirstFit,
    RandomStrategy,
    Strategy,
    activation_trace_check,
    spider_trace_check,
    treedepth_trace_check,
)


@dataclass
class Report:
    campaign: str
    config: dict[str, Any] = field(default_factory=dict)
    records: list[dict[str, Any]] = field(default_factory=list)
    checks: list[dict[str, Any]] = field(default_factory=list)
    failures: list[dict[str, Any]] = field(default_factory=list)
    timings: dict[str, float] = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        return "pass" if all(c["ok"] for c in self.checks) else "fail"

    def check(self, name: str, ok: bool, detail: Any = None) -> bool:
        self.checks.append({"name": name, "ok": bool(ok), "detail": detail})
        return bool(ok)

    def fail_instance(self, what: str, g: Graph, **extra: Any) -> None:
        self.failures.append({"what": what, "graph": serialize_graph(g), **extra})

    def to_json(self) -> dict[str, Any]:
        return {
            "campaign": self.campaign,
            "verdict": self.verdict,
            "config": self.config,
            "checks": self.checks,
            "records": self.records,
            "failures": self.failures,
            "timings_s": {k: round(v, 3) for k, v in self.timings.items()},
            "environment": environment_stamp(),
        }


def environment_stamp() -> dict[str, str]:
    from importlib.metadata import PackageNotFoundError, version

    try:
        ver = version("artifact")
    except PackageNotFoundError:
        ver = "unknown"
    return {"package": _pkg, "version": ver, "python": sys.version.split()[0], "platform": platform.platform()}


class _Timer:
    def __init__(self, report: Report, name: str) -> None:
        self.report, self.name = report, name

    def __enter__(self) -> None:
        self.t0 = time.perf_counter()

    def __exit__(self, *exc: Any) -> None:
        self.report.timings[self.name] = time.perf_counter() - self.t0


# --- independent brute-force oracles ------------------------------------------------------


def chromatic_number_brute(g: Graph) -> int:
    """Smallest k admitting a proper coloring, by trying every assignment."""
    if g.n == 0:
        return 0
    for k in range(1, g.n + 1):
        for assign in product(range(k), repeat=g.n):
            if all(assign[u] != assign[v] for u, v in g.edges):
                return k
    return g.n


def coloring_number_brute(g: Graph) -> int:
    """1 + min over vertex orders of the largest number of earlier neighbours."""
    best = None
    for order in permutations(range(g.n)):
        seen: set[int] = set()
        worst = 0
        for v in order:
            worst = max(worst, sum(1 for u in g.adjacency[v] if u in seen))
            seen.add(v)
            if best is not None and worst >= best:
                break
        if best is None or worst < best:
            best = worst
    return 1 + (best or 0)


def is_bipartite(g: Graph) -> bool:
    side = [-1] * g.n
    for s in range(g.n):
        if side[s] >= 0:
            continue
        side[s] = 0
        stack = [s]
        while stack:
            u = stack.pop()
            for v in g.adjacency[u]:
                if side[v] < 0:
                    side[v] = 1 - side[u]
                    stack.append(v)
                elif side[v] == side[u]:
                    return False
    return True


def to_networkx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    return h


def is_outerplanar(g: Graph) -> bool:
    """Outerplanar iff adding a vertex joined to everything keeps the graph planar."""
    h = to_networkx(g)
    h.add_edges_from((g.n, v) for v in range(g.n))
    return nx.check_planarity(h)[0]


def connected_graphs(max_n: int) -> list[Graph]:
    """All connected graphs on 1..max_n vertices up to isomorphism (max_n <= 7)."""
    if max_n > 7:
        raise ValueError("the graph atlas stops at 7 vertices")
    out = []
    for h in nx.graph_atlas_g():
        if 1 <= h.number_of_nodes() <= max_n and nx.is_connected(h):
            out.append(build_graph(h.number_of_nodes(), h.edges()))
    return out


# --- campaigns ---------------------------------------------------------------------------


def probe_strategy(
    g: Graph, make: Callable[[], Strategy], rules: Rules, bound: int, check: Callable
) -> tuple[Any, Optional[dict[str, Any]]]:
    """Exhaustive worst case of an Alice strategy with per-ply invariant checks.

    Returns ``(score, artifact)``; ``artifact`` is a replayable transcript when
    the bound is exceeded or an invariant/strategy error fires, else ``None``.
    """
    seen: dict[str, Any] = {}

    def on_ply(state, strat, mover):
        seen["line"] = state.history
        check(state, strat, mover)

    try:
        score = best_response_bound(g, make(), rules=rules, on_ply=on_ply)
    except (AssertionError, StrategyError) as e:
        tr = Transcript(g.digest, rules, seen.get("line", []), "invariant-error")
        return None, {"error": str(e), "transcript": tr.to_json()}
    if score <= bound:
        return score, None
    value, line = exhaustive_vs_strategy(g, rules, make(), ALICE, with_line=True)
    tr = Transcript(g.digest, rules, line, "done", value)
    return score, {"error": f"score {score} exceeds {bound}", "transcript": tr.to_json()}


def treedepth_bound(height: int) -> int:
    """Score the treedepth strategy guarantees with a decomposition of this height."""
    return 2 * height - 4 if height >= 3 else height - 1


def campaign_thm1(instances: int = 60, seed: int = 1) -> Report:
    """Treedepth strategy against exhaustive Bob (connected and unconstrained)."""
    rep = Report("thm1", {"instances": instances, "seed": seed, "n_range": [5, 10], "heights": [3, 4]})
    cases: list[tuple[str, Any]] = []
    for k in (3, 4):
        _, dec = spider_graph(k)
        cases.append((f"spider{k}", dec))
    rng = random.Random(seed)
    for i in range(instances):
        h = rng.choice((3, 4))
        n = rng.randint(max(5, h), 10)
        cases.append((f"closure-{i}", random_closure_subgraph(n, h, rng.randrange(2**31))))
    violations = 0
    with _Timer(rep, "total"):
        for name, dec in cases:
            g = dec.target
            opt = treedepth_decomposition(g)
            rec: dict[str, Any] = {"instance": name, "n": g.n, "m": g.edge_count, "height": dec.height, "treedepth": opt.height}
            for label, use in (("given", dec), ("optimal", opt)):
                bound = treedepth_bound(use.height)
                for connected in (True, False):
                    score, art = probe_strategy(
                        g, lambda: AliceTreedepth(use), Rules.marking(connected), bound, treedepth_trace_check(use)
                    )
                    rec[f"{label}_{'connected' if connected else 'free'}_score"] = score
                    if art is not None:
                        violations += 1
                        rep.fail_instance(f"{name}: {art['error']}", g, parents=list(use.tree.parent), **art)
                rec[f"{label}_bound"] = bound
            rep.records.append(rec)
    rep.check("treedepth strategy within 2k-4 on every instance", violations == 0, {"violations": violations})
    rep.check("random instance count", instances >= 50, instances)
    return rep


def campaign_thm2(ks: tuple[int, ...] = (3, 4)) -> Report:
    """Exact values of all four parameters on the spider graphs, plus Bob's strategy."""
    rep = Report("thm2", {"k": list(ks)})
    with _Timer(rep, "total"):
        for k in ks:
            g, dec = spider_graph(k)
            target = 2 * k - 3
            t_max = g.max_degree + 1
            vals = {
                "chi_g": coloring_scan(g, False, t_max).value,
                "col_g": marking_value(g, False).value,
                "chi_cg": coloring_scan(g, True, t_max).value,
                "col_cg": marking_value(g, True).value,
            }
            td = treedepth_decomposition(g).height
            rec = {"k": k, "n": g.n, "m": g.edge_count, "treedepth": td, **vals, "expected": target}
            rep.check(f"spider{k}: all four parameters equal {target}", all(v == target for v in vals.values()), vals)
            rep.check(f"spider{k}: treedepth {k}", td == k, td)
            for t in range(k, 2 * k - 3):
                for connected in (True, False):
                    w = coloring_winner(g, t, connected).winner
                    line = exhaustive_vs_strategy(
                        g, Rules.coloring(t, connected), BobSpider(t), BOB, on_ply=spider_trace_check
                    )
                    rec[f"t{t}_{'connected' if connected else 'free'}"] = {"winner": w, "spider_strategy_wins_all": line}
                    rep.check(f"spider{k} t={t} connected={connected}: Bob wins", w == BOB and line, rec[f"t{t}_{'connected' if connected else 'free'}"])
            rep.records.append(rec)
    return rep


def campaign_thm3(n2: int = 100, n3: int = 30, seed: int = 3) -> Report:
    """Activation strategy against exhaustive Bob on random 2-trees and 3-trees."""
    rep = Report("thm3", {"two_trees": n2, "three_trees": n3, "seed": seed, "max_n": {"2": 12, "3": 11}})
    rng = random.Random(seed)
    violations = 0
    with _Timer(rep, "total"):
        for k, count, max_n, bound in ((2, n2, 12, 4), (3, n3, 11, 3 * 3 - 1)):
            for i in range(count):
                n = rng.randint(k + 1, max_n)
                s = rng.randrange(2**31)
                g, order = random_ktree(k, n, s)
                score, art = probe_strategy(
                    g, lambda: AliceActivation(order), Rules.marking(True), bound, activation_trace_check
                )
                col_cg = marking_value(g, True).value
                rep.records.append({"k": k, "n": n, "seed": s, "score": score, "bound": bound, "col_cg": col_cg})
                if art is None and score + 1 < col_cg:
                    art = {"error": f"score {score} below col_cg - 1 = {col_cg - 1}"}
                if art is not None:
                    violations += 1
                    rep.fail_instance(f"{k}-tree seed {s}: {art['error']}", g, k=k, seed=s, **art)
    by_k = {k: max((r["score"] or 0) for r in rep.records if r["k"] == k) for k in (2, 3)}
    rep.check("activation strategy within bound on every k-tree (in-degree invariants checked each ply)", violations == 0, by_k)
    return rep


def restricted_line(pattern: Any, turn: str, colors: int = 4, max_len: int = 16) -> list[str]:
    """One principal variation of the restricted game: each side keeps the game-theoretic value."""
    game = RestrictedGame(pattern.graph, pattern.coloring, colors)
    cols, who, prev = game.start, turn, False
    target = game.bob_wins(cols, who, prev)
    line = []
    for _ in range(max_len):
        if game.has_dead(cols) or all(cols):
            break
        moves = game.moves(cols)
        nxt_turn = BOB if who == ALICE else ALICE
        options = [(f"{who} colors {pattern.label(v)} with {c}", cols[:v] + (c,) + cols[v + 1 :], False) for v, c in moves]
        if not prev and (who == ALICE or not moves):
            options.append((f"{who} passes", cols, True))
        if not options:
            break
        text, cols, prev = next((o for o in options if game.bob_wins(o[1], nxt_turn, o[2]) == target), options[0])
        line.append(text)
        who = nxt_turn
    line.append("bob wins" if target else "alice wins")
    return line


def campaign_claims() -> Report:
    rep = Report("claims", {"patterns": list(PATTERNS), "colors": 4})
    with _Timer(rep, "total"):
        for name, make in PATTERNS.items():
            p = make()
            for turn in (ALICE, BOB):
                w = restricted_pattern_winner(p, turn)
                line = restricted_line(p, turn)
                rep.records.append({"pattern": name, "turn": turn, "winner": w, "line": line})
                if w != BOB:
                    rep.failures.append({"what": f"{name}, {turn} to move: {w} wins", "pattern": serialize_pattern(p), "line": line})
                rep.check(f"{name}, {turn} to move: Bob wins", w == BOB, w)
    return rep


def campaign_thm4(games: int = 1000, fan_m: int = 48, exact_m: int = 5, fan3_games: int = 1000) -> Report:
    rep = Report("thm4", {"games": games, "m": fan_m, "exact_m": exact_m, "fan3_games": fan3_games})
    g, _ = fan_triangle_graph(fan_m)
    rules = Rules.coloring(4, True)
    with _Timer(rep, "fan4"):
        for alice_name, make in (("random", RandomStrategy), ("first_fit", FirstFit)):
            verdicts: Counter = Counter()
            events: Counter = Counter()
            lengths: list[int] = []
            for seed in range(games):
                tr = run_game(g, rules, make(), BobFan4(), seed=seed)
                verdicts[tr.verdict] += 1
                lengths.append(len(tr.moves))
                for e in tr.events:
                    events[f"{e['event']}:{e['phase']}"] += 1
                if tr.verdict != "bob_win":
                    rep.fail_instance(f"fan4 lost to {alice_name} seed {seed}", g, transcript=tr.to_json())
            rec = {
                "alice": alice_name,
                "colors": 4,
                "games": games,
                "bob_wins": verdicts["bob_win"],
                "events": dict(events),
                "mean_length": round(sum(lengths) / len(lengths), 3),
                "lengths": lengths,
            }
            rep.records.append(rec)
            rep.check(f"fan4 beats {alice_name} Alice in every game", verdicts["bob_win"] == games, rec["bob_wins"])
    with _Timer(rep, "fan3"):
        wins = sum(
            run_game(g, Rules.coloring(3, True), RandomStrategy(), BobFan3(), seed=s).verdict == "bob_win"
            for s in range(fan3_games)
        )
        rep.records.append({"alice": "random", "colors": 3, "games": fan3_games, "bob_wins": wins})
        rep.check("fan3 beats random Alice in every game", wins == fan3_games, wins)
        small, _ = fan_triangle_graph(4)
        w = coloring_winner(small, 3, True).winner
        rep.records.append({"exact": "fan(4)", "colors": 3, "winner": w})
        rep.check("fan(4) with 3 colors: Bob wins", w == BOB, w)
        every = {}
        for m in range(3, 7):
            fm, _ = fan_triangle_graph(m)
            every[m] = bool(exhaustive_vs_strategy(fm, Rules.coloring(3, True), BobFan3(), BOB))
        rep.records.append({"exhaustive": "fan3 vs every Alice", "colors": 3, "wins": every})
        rep.check("fan3 beats every Alice line on fan(3..6)", all(every.values()), every)
    with _Timer(rep, "exact"):
        values = {}
        for m in range(1, exact_m + 1):
            fm, _ = fan_triangle_graph(m)
            values[m] = marking_value(fm, True).value
            rep.records.append({"exact": f"fan({m})", "n": fm.n, "col_cg": values[m]})
        rep.check(f"col_cg(fan(m)) <= 5 for m = 1..{exact_m}", all(v <= 5 for v in values.values()), values)
    return rep


@lru_cache(maxsize=None)
def audit_values(g: Graph) -> dict[str, Any]:
    t_max = g.max_degree + 1
    return {
        "n": g.n,
        "m": g.edge_count,
        "delta": g.max_degree,
        "chi": chromatic_number_brute(g),
        "col": coloring_number_brute(g),
        "chi_g": coloring_scan(g, False, t_max).value,
        "chi_cg": coloring_scan(g, True, t_max).value,
        "col_g": marking_value(g, False).value,
        "col_cg": marking_value(g, True).value,
        "bipartite": is_bipartite(g),
    }


AUDIT_CHAINS: list[tuple[str, Callable[[dict], bool]]] = [
    ("chi <= chi_cg <= col_cg <= delta+1", lambda r: r["chi"] <= r["chi_cg"] <= r["col_cg"] <= r["delta"] + 1),
    ("col <= col_cg", lambda r: r["col"] <= r["col_cg"]),
    ("chi <= chi_g <= col_g", lambda r: r["chi"] <= r["chi_g"] <= r["col_g"]),
    ("col <= col_g <= delta+1", lambda r: r["col"] <= r["col_g"] <= r["delta"] + 1),
]


def campaign_audit(max_n: int = 6) -> Report:
    rep = Report("audit", {"max_n": max_n, "corpus": "all connected graphs up to isomorphism (networkx atlas)"})
    violations: Counter = Counter()
    bip_bad = 0
    with _Timer(rep, "total"):
        graphs = connected_graphs(max_n)
        for idx, g in enumerate(graphs):
            r = audit_values(g)
            rec = {"id": idx, "edges": [list(e) for e in g.edges], **r}
            for name, pred in AUDIT_CHAINS:
                if not pred(r):
                    violations[name] += 1
                    rep.fail_instance(f"chain {name} violated", g, values=r)
            if r["bipartite"] and g.n >= 2 and r["chi_cg"] != 2:
                bip_bad += 1
                rep.fail_instance("bipartite graph with chi_cg != 2", g, values=r)
            rep.records.append(rec)
    counts = Counter(r["n"] for r in rep.records)
    rep.check("inequality chains hold on every graph", not violations, dict(violations) or {"graphs": len(rep.records)})
    rep.check("bipartite graphs have chi_cg = 2", bip_bad == 0, {"bipartite": sum(r["bipartite"] and r["n"] >= 2 for r in rep.records)})
    rep.check("corpus size per n", True, dict(sorted(counts.items())))
    return rep


CAMPAIGNS: dict[str, Callable[..., Report]] = {
    "thm1": campaign_thm1,
    "thm2": campaign_thm2,
    "thm3": campaign_thm3,
    "claims": campaign_claims,
    "thm4": campaign_thm4,
    "audit": campaign_audit,
}


def sweep_witness(max_n: int = 12, seeds: int = 40, seed: int = 5) -> Report:
    """Exact ``col_cg`` of small 2-trees (fan family and random 2-trees); findings only."""
    rep = Report("sweep-witness", {"max_n": max_n, "random_two_trees": seeds, "seed": seed})
    rng = random.Random(seed)
    cases: list[tuple[str, Graph]] = []
    m = 1
    while 2 * m + 2 <= max_n:
        cases.append((f"fan({m})", fan_triangle_graph(m)[0]))
        m += 1
    for _ in range(seeds):
        n = rng.randint(3, max_n)
        s = rng.randrange(2**31)
        cases.append((f"random_ktree(2,{n},{s})", random_ktree(2, n, s)[0]))
    seen: set[str] = set()
    with _Timer(rep, "total"):
        for name, g in cases:
            if g.digest in seen:
                continue
            seen.add(g.digest)
            try:
                value = marking_value(g, True).value
            except Exception as e:  # resource caps: skip and log
                rep.records.append({"instance": name, "n": g.n, "skipped": str(e)})
                continue
            col = coloring_number_brute(g) if g.n <= 9 else 3
            rec = {
                "instance": name,
                "n": g.n,
                "m": g.edge_count,
                "col_cg": value,
                "col": col,
                "delta": g.max_degree,
                "outerplanar": is_outerplanar(g),
            }
            rep.records.append(rec)
            if not col <= value <= g.max_degree + 1:
                rep.fail_instance(f"{name}: col_cg {value} outside [col, delta+1]", g, values=rec)
    rep.records.sort(key=lambda r: (r["n"], r.get("col_cg", -1), r["instance"]))
    fives = [r for r in rep.records if r.get("col_cg") == 5]
    rep.check("every value within [col, delta+1]", not rep.failures, len(rep.records))
    rep.check(
        "smallest col_cg = 5 witness (finding, not asserted)",
        True,
        min(fives, key=lambda r: (r["n"], not r["outerplanar"]))["instance"] if fives else None,
    )
    return rep
