"""``conngame`` command line: gen, solve, play, verify, sweep-witness.

Exit codes: 0 pass, 1 assertion failure, 2 usage error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from collections import Counter
from pathlib import Path
from typing import Any, Optional, Sequence

from conngame.campaigns import CAMPAIGNS, environment_stamp, sweep_witness
from conngame.game import ALICE, BOB, COLORING, MARKING, Rules, StrategyError, run_game
from conngame.graph import (
    Graph,
    GraphError,
    ParseError,
    complete_graph,
    cycle_graph,
    fan_triangle_graph,
    parse_graph,
    path_graph,
    random_closure_subgraph,
    random_ktree,
    serialize_graph,
    spider_graph,
    star_graph,
)
from conngame.solver import Limits, ResourceLimitError, coloring_scan, coloring_winner, marking_value
from conngame.strategies import STRATEGY_NAMES, ScriptedStrategy, make_strategy

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3

_NAMED = {
    "spider": lambda k: spider_graph(k)[0],
    "fan": lambda m: fan_triangle_graph(m)[0],
    "path": path_graph,
    "cycle": cycle_graph,
    "complete": complete_graph,
    "K": complete_graph,
    "star": star_graph,
}


class UsageError(Exception):
    pass


def load_graph(spec: str) -> Graph:
    """A graph file path, or a built-in name: diamond, spider4, fan48, path5, cycle6, K4, star3."""
    if spec == "diamond":
        return spider_graph(3)[0]
    m = re.fullmatch(r"(spider|fan|path|cycle|complete|K|star)(\d+)", spec)
    if m:
        return _NAMED[m.group(1)](int(m.group(2)))
    path = Path(spec)
    if not path.exists():
        raise UsageError(f"no graph file or built-in graph named {spec!r}")
    return parse_graph(path.read_text())


def _emit(payload: dict[str, Any], args: argparse.Namespace, show: bool = True) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True)
    if getattr(args, "json", None):
        Path(args.json).write_text(text + "\n")
    if show:
        print(text)


def _figures(report: dict[str, Any], args: argparse.Namespace) -> None:
    if getattr(args, "out_dir", None):
        from conngame.plotting import write_outputs

        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.json").write_text(json.dumps(report, indent=2, sort_keys=True) + "\n")
        for f in write_outputs(report, out):
            print(f"wrote {f}", file=sys.stderr)


# --- commands ---------------------------------------------------------------------------


def cmd_gen(args: argparse.Namespace) -> int:
    fam = args.family
    if fam == "spider":
        g = spider_graph(_need(args, "k"))[0]
    elif fam == "fan":
        g = fan_triangle_graph(_need(args, "m"))[0]
    elif fam == "random-ktree":
        g = random_ktree(_need(args, "k"), _need(args, "n"), args.seed)[0]
    else:
        g = random_closure_subgraph(_need(args, "n"), _need(args, "height"), args.seed).target
    text = serialize_graph(g)
    if args.out:
        Path(args.out).write_text(text)
        print(f"{g.n} {g.edge_count}")
    else:
        sys.stdout.write(text)
    if args.json:
        Path(args.json).write_text(json.dumps({"family": fam, "n": g.n, "m": g.edge_count, "hash": g.digest}) + "\n")
    return EXIT_OK


def _need(args: argparse.Namespace, name: str) -> int:
    val = getattr(args, name)
    if val is None:
        raise UsageError(f"gen {args.family} needs --{name}")
    return val


def _rules(args: argparse.Namespace) -> Rules:
    game = args.game or (COLORING if args.colors is not None else MARKING)
    if game == MARKING:
        if args.colors is not None:
            raise UsageError("the marking game takes no --colors")
        return Rules.marking(args.connected)
    if args.colors is None:
        raise UsageError("the coloring game needs --colors")
    return Rules.coloring(args.colors, args.connected)


def cmd_solve(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    limits = Limits.from_env()
    if args.game == MARKING or (args.game is None and args.colors is None):
        res = marking_value(g, args.connected, limits, workers=args.workers)
        payload = res.to_json(g, Rules.marking(args.connected))
    elif args.colors is None:
        scan = coloring_scan(g, args.connected, g.max_degree + 1, limits)
        payload = {
            "graph": {"n": g.n, "m": g.edge_count, "hash": g.digest},
            "rules": {"game": COLORING, "connected": args.connected},
            "value": scan.value,
            "alice_wins": {str(t): w for t, w in scan.wins.items()},
        }
    else:
        rules = Rules.coloring(args.colors, args.connected)
        payload = coloring_winner(g, args.colors, args.connected, limits, workers=args.workers).to_json(g, rules)
    _emit(payload, args)
    return EXIT_OK


def _strategy(spec: str, side: str, g: Graph, rules: Rules, seed: int):
    if spec.startswith("script:"):
        data = json.loads(Path(spec[len("script:") :]).read_text())
        return ScriptedStrategy.from_transcript(data.get("transcript", data), side)
    return make_strategy(spec, g, rules, seed)


def cmd_play(args: argparse.Namespace) -> int:
    g = load_graph(args.graph)
    rules = _rules(args)
    verdicts: Counter = Counter()
    scores: Counter = Counter()
    events: Counter = Counter()
    games = []
    sink = open(args.transcripts, "w") if args.transcripts else None
    try:
        for i in range(args.games):
            seed = args.seed + i
            alice = _strategy(args.alice, ALICE, g, rules, None)
            bob = _strategy(args.bob, BOB, g, rules, None)
            tr = run_game(g, rules, alice, bob, seed=seed)
            verdicts[tr.verdict] += 1
            if tr.score is not None:
                scores[tr.score] += 1
            for e in tr.events:
                events[f"{e['player']}:{e['event']}"] += 1
            line = tr.dumps()
            games.append({"seed": seed, "verdict": tr.verdict, "score": tr.score, "moves": len(tr.moves)})
            if sink:
                sink.write(line + "\n")
    finally:
        if sink:
            sink.close()
    aggregate: dict[str, Any] = {"games": args.games, "verdicts": dict(sorted(verdicts.items())), "events": dict(sorted(events.items()))}
    if rules.game == MARKING:
        aggregate["scores"] = {str(k): v for k, v in sorted(scores.items())}
        aggregate["max_score"] = max(scores)
    report = {
        "campaign": "play",
        "graph": {"n": g.n, "m": g.edge_count, "hash": g.digest},
        "rules": rules.to_json(),
        "alice": args.alice,
        "bob": args.bob,
        "seed": args.seed,
        "aggregate": aggregate,
        "records": games,
        "environment": environment_stamp(),
    }
    if args.json:
        _emit(report, args, show=False)
    print(json.dumps({k: report[k] for k in ("graph", "rules", "alice", "bob", "seed", "aggregate")}, indent=2, sort_keys=True))
    _figures(report, args)
    return EXIT_OK


def _print_checks(report: dict[str, Any]) -> None:
    for c in report["checks"]:
        mark = "PASS" if c["ok"] else "FAIL"
        print(f"[{mark}] {report['campaign']}: {c['name']} -> {json.dumps(c['detail'], sort_keys=True)}")
    print(f"verdict: {report['verdict']}")


def cmd_verify(args: argparse.Namespace) -> int:
    kwargs: dict[str, Any] = {}
    overrides = {"instances": "instances", "games": "games", "max_n": "max_n", "seed": "seed"}
    fn = CAMPAIGNS[args.campaign]
    params = fn.__code__.co_varnames[: fn.__code__.co_argcount]
    for attr, kw in overrides.items():
        val = getattr(args, attr)
        if val is not None:
            if kw not in params:
                raise UsageError(f"campaign {args.campaign} takes no --{attr.replace('_', '-')}")
            kwargs[kw] = val
    report = fn(**kwargs).to_json()
    if args.json:
        _emit(report, args, show=False)
    _print_checks(report)
    for f in report["failures"]:
        print(f"failure: {f['what']}", file=sys.stderr)
    _figures(report, args)
    return EXIT_OK if report["verdict"] == "pass" else EXIT_FAIL


def cmd_sweep(args: argparse.Namespace) -> int:
    report = sweep_witness(args.max_n, args.seeds, args.seed).to_json()
    if args.json:
        _emit(report, args, show=False)
    for r in report["records"]:
        if "col_cg" in r:
            print(f"{r['n']:>3} {r['col_cg']} {'outerplanar' if r['outerplanar'] else '-':<11} {r['instance']}")
        else:
            print(f"{r['n']:>3} skipped {r['instance']}: {r['skipped']}")
    _print_checks(report)
    _figures(report, args)
    return EXIT_OK if report["verdict"] == "pass" else EXIT_FAIL


# --- parser ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conngame", description="Connected marking and coloring games on graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser, figures: bool = False) -> None:
        sp.add_argument("--json", metavar="OUT", help="write the full JSON report here")
        if figures:
            sp.add_argument("--out-dir", metavar="DIR", help="write report.json, records.tsv and figures here")

    def game_flags(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--game", choices=(MARKING, COLORING))
        sp.add_argument("--colors", type=int, metavar="T")
        sp.add_argument("--connected", action=argparse.BooleanOptionalAction, default=True)

    g = sub.add_parser("gen", help="emit a graph as an edge list")
    g.add_argument("family", choices=("spider", "fan", "random-ktree", "closure"))
    g.add_argument("--k", type=int)
    g.add_argument("--m", type=int)
    g.add_argument("--n", type=int)
    g.add_argument("--height", type=int)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("-o", "--out", metavar="FILE")
    common(g)
    g.set_defaults(func=cmd_gen)

    s = sub.add_parser("solve", help="exact value of one game")
    s.add_argument("graph", help="edge-list file or built-in name (diamond, spider4, fan48, ...)")
    game_flags(s)
    s.add_argument("--workers", type=int)
    common(s)
    s.set_defaults(func=cmd_solve)

    pl = sub.add_parser("play", help="run seeded games between two strategies")
    pl.add_argument("graph")
    game_flags(pl)
    pl.add_argument("--alice", required=True, help=f"one of {', '.join(STRATEGY_NAMES)} or script:FILE")
    pl.add_argument("--bob", required=True)
    pl.add_argument("--seed", type=int, default=0)
    pl.add_argument("--games", type=int, default=1)
    pl.add_argument("--transcripts", metavar="FILE", help="write one JSON transcript per line")
    common(pl, figures=True)
    pl.set_defaults(func=cmd_play)

    v = sub.add_parser("verify", help="run a named verification campaign")
    v.add_argument("campaign", choices=sorted(CAMPAIGNS))
    v.add_argument("--instances", type=int)
    v.add_argument("--games", type=int)
    v.add_argument("--max-n", type=int)
    v.add_argument("--seed", type=int)
    common(v, figures=True)
    v.set_defaults(func=cmd_verify)

    w = sub.add_parser("sweep-witness", help="exact col_cg of small 2-trees (findings only)")
    w.add_argument("--max-n", type=int, default=12)
    w.add_argument("--seeds", type=int, default=40)
    w.add_argument("--seed", type=int, default=5)
    common(w, figures=True)
    w.set_defaults(func=cmd_sweep)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        return args.func(args)
    except ResourceLimitError as e:
        print(f"conngame: resource cap exceeded: {e}", file=sys.stderr)
        return EXIT_CAP
    except (UsageError, GraphError, ParseError, StrategyError, ValueError) as e:
        print(f"conngame: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
