"""Figures and delimited tables for campaign, play and sweep reports."""

from __future__ import annotations

import csv
from collections import Counter
from pathlib import Path
from typing import Any

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def write_records_tsv(records: list[dict[str, Any]], path: Path) -> Path:
    """Flat records as tab-separated values; nested fields are skipped."""
    flat = [{k: v for k, v in r.items() if not isinstance(v, (list, dict))} for r in records]
    cols = list(dict.fromkeys(k for r in flat for k in r))
    with open(path, "w", newline="") as fh:
        w = csv.DictWriter(fh, cols, delimiter="\t", lineterminator="\n")
        w.writeheader()
        w.writerows(flat)
    return path


def _save(fig: Any, path: Path) -> Path:
    fig.tight_layout()
    fig.savefig(path, dpi=110)
    plt.close(fig)
    return path


def _score_hist(ax: Any, scores: list[int], bound: int | None, title: str) -> None:
    counts = Counter(scores)
    xs = sorted(counts)
    ax.bar(xs, [counts[x] for x in xs], color="tab:blue")
    if bound is not None:
        ax.axvline(bound + 0.5, color="tab:red", ls="--", label=f"bound {bound}")
        ax.legend()
    ax.set_xlabel("worst-case play score")
    ax.set_ylabel("instances")
    ax.set_title(title)


def figures_for(report: dict[str, Any], outdir: Path) -> list[Path]:
    """Render the figures that make sense for ``report`` into ``outdir``."""
    outdir.mkdir(parents=True, exist_ok=True)
    name = report.get("campaign", "report")
    recs = report.get("records", [])
    made: list[Path] = []
    if name == "thm1":
        fig, ax = plt.subplots(figsize=(6, 4))
        for h, mk in ((3, "o"), (4, "s")):
            sel = [r for r in recs if r["height"] == h]
            ax.scatter([r["n"] for r in sel], [r["given_connected_score"] for r in sel], marker=mk, label=f"height {h}")
            ax.axhline(2 * h - 4, ls="--", lw=0.8)
        ax.set_xlabel("n")
        ax.set_ylabel("worst-case score (connected Bob)")
        ax.legend()
        made.append(_save(fig, outdir / "thm1_scores.png"))
    elif name == "thm3":
        fig, axes = plt.subplots(1, 2, figsize=(9, 3.5))
        for ax, k in zip(axes, (2, 3)):
            sel = [r for r in recs if r["k"] == k]
            _score_hist(ax, [r["score"] for r in sel if r["score"] is not None], sel[0]["bound"] if sel else None, f"{k}-trees")
        made.append(_save(fig, outdir / "thm3_scores.png"))
    elif name == "thm4":
        exact = [r for r in recs if "col_cg" in r]
        if exact:
            fig, ax = plt.subplots(figsize=(5, 3.5))
            ax.plot([r["n"] for r in exact], [r["col_cg"] for r in exact], "o-")
            ax.axhline(5, color="tab:red", ls="--", lw=0.8)
            ax.set_xlabel("n (fan family)")
            ax.set_ylabel("connected game coloring number")
            made.append(_save(fig, outdir / "thm4_fan_marking.png"))
        games = [r for r in recs if "lengths" in r]
        if games:
            fig, ax = plt.subplots(figsize=(6, 3.5))
            for r in games:
                ax.hist(r["lengths"], bins=range(0, max(r["lengths"]) + 2), alpha=0.6, label=f"{r['alice']} Alice")
            ax.set_xlabel("moves until Bob wins")
            ax.set_ylabel("games")
            ax.legend()
            made.append(_save(fig, outdir / "thm4_game_lengths.png"))
    elif name == "audit":
        fig, ax = plt.subplots(figsize=(5, 4))
        pairs = Counter((r["chi_cg"], r["col_cg"]) for r in recs)
        ax.scatter([p[0] for p in pairs], [p[1] for p in pairs], s=[20 + 6 * c for c in pairs.values()])
        lim = max((max(p) for p in pairs), default=1) + 1
        ax.plot([0, lim], [0, lim], "k:", lw=0.8)
        ax.set_xlabel("connected game chromatic number")
        ax.set_ylabel("connected game coloring number")
        made.append(_save(fig, outdir / "audit_chain.png"))
    elif name == "sweep-witness":
        sel = [r for r in recs if "col_cg" in r]
        fig, ax = plt.subplots(figsize=(6, 3.5))
        for outer, mk in ((True, "o"), (False, "x")):
            part = [r for r in sel if r["outerplanar"] == outer]
            ax.scatter([r["n"] for r in part], [r["col_cg"] for r in part], marker=mk, label="outerplanar" if outer else "other")
        ax.set_xlabel("n")
        ax.set_ylabel("connected game coloring number")
        ax.legend()
        made.append(_save(fig, outdir / "sweep_witness.png"))
    elif name == "play":
        agg = report.get("aggregate", {})
        fig, ax = plt.subplots(figsize=(5, 3.5))
        if "scores" in agg:
            _score_hist(ax, [int(s) for s, c in agg["scores"].items() for _ in range(c)], None, "play scores")
        else:
            verdicts = agg.get("verdicts", {})
            ax.bar(list(verdicts), list(verdicts.values()), color="tab:green")
            ax.set_ylabel("games")
        made.append(_save(fig, outdir / "play_summary.png"))
    return made


def write_outputs(report: dict[str, Any], outdir: Path) -> list[Path]:
    """Records table plus figures for ``report``."""
    outdir.mkdir(parents=True, exist_ok=True)
    files = [write_records_tsv(report.get("records", []), outdir / "records.tsv")]
    return files + figures_for(report, outdir)
