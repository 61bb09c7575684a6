"""Shared graph generators and brute-force oracles for the test suite.

The oracles here are deliberately naive: plain recursion over move
sequences, no transposition tables, no canonicalization, no shortcuts.
"""

from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from conngame.graph import Graph, build_graph, spider_graph

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def diamond() -> Graph:
    return spider_graph(3)[0]


def random_connected_graph(n: int, p: float, rng: random.Random) -> Graph:
    """Random spanning tree plus independent extra edges: always connected."""
    edges = [(rng.randrange(v), v) for v in range(1, n)]
    edges += [(u, v) for u, v in combinations(range(n), 2) if rng.random() < p]
    return build_graph(n, edges)


@st.composite
def connected_graphs(draw, min_n: int = 1, max_n: int = 7) -> Graph:
    n = draw(st.integers(min_n, max_n))
    tree = [(draw(st.integers(0, v - 1)), v) for v in range(1, n)]
    extra = draw(st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=2 * n))
    return build_graph(n, tree + [(u, v) for u, v in extra if u != v])


# --- naive game oracles --------------------------------------------------------------


def _neighbours(g: Graph, v: int) -> set[int]:
    return set(g.adjacency[v])


def naive_marking_score(g: Graph, connected: bool) -> int:
    """Optimal play score by full game-tree recursion over ordered move sequences."""

    def rec(played: list[int]) -> int:
        if len(played) == g.n:
            best = 0
            for i, v in enumerate(played):
                best = max(best, len(_neighbours(g, v) & set(played[:i])))
            return best
        seen = set(played)
        moves = [
            v
            for v in range(g.n)
            if v not in seen and (not connected or not played or _neighbours(g, v) & seen)
        ]
        vals = [rec(played + [v]) for v in moves]
        return min(vals) if len(played) % 2 == 0 else max(vals)

    return rec([])


def naive_coloring_alice_wins(g: Graph, t: int, connected: bool) -> bool:
    """Literal play to the end: Alice wins iff every vertex gets colored."""
    color = [0] * g.n

    def rec(turn: int) -> bool:
        colored = {v for v in range(g.n) if color[v]}
        if len(colored) == g.n:
            return True
        moves = []
        for v in range(g.n):
            if color[v] or (connected and colored and not _neighbours(g, v) & colored):
                continue
            used = {color[u] for u in g.adjacency[v]}
            moves += [(v, c) for c in range(1, t + 1) if c not in used]
        if not moves:
            return False
        results = []
        for v, c in moves:
            color[v] = c
            results.append(rec(1 - turn))
            color[v] = 0
            if turn == 0 and results[-1]:
                return True
            if turn == 1 and not results[-1]:
                return False
        return turn == 1

    return rec(0)


def brute_treedepth(g: Graph) -> int:
    """Smallest height of a rooted forest whose closure contains ``g``, by trying every parent array."""
    from itertools import product

    n = g.n
    best = n
    for parents in product(range(-1, n), repeat=n):
        if sum(p == -1 for p in parents) != 1 or any(p == v for v, p in enumerate(parents)):
            continue
        depth = [0] * n
        ok = True
        for v in range(n):
            u, d = v, 1
            while parents[u] != -1:
                u = parents[u]
                d += 1
                if d > n:
                    ok = False
                    break
            if not ok:
                break
            depth[v] = d
        if not ok or max(depth) >= best:
            continue

        def anc(a: int, v: int) -> bool:
            u = parents[v]
            while u != -1:
                if u == a:
                    return True
                u = parents[u]
            return False

        if all(anc(u, v) or anc(v, u) for u, v in g.edges):
            best = max(depth)
    return best
