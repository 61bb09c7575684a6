"""Partially colored patterns (Types 1-3) and a matcher that finds them in live game states."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional, Sequence

from conngame.graph import Graph, build_graph, iter_bits, parse_edge_list

T = 4  # the patterns live in the four-color game


@dataclass(frozen=True)
class ColoredPattern:
    name: str
    graph: Graph
    coloring: tuple[Optional[int], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        if len(self.coloring) != self.graph.n:
            raise ValueError("coloring length does not match the pattern graph")
        if not any(self.coloring):
            raise ValueError("pattern needs at least one colored vertex")
        for u, v in self.graph.edges:
            if self.coloring[u] and self.coloring[u] == self.coloring[v]:
                raise ValueError(f"pattern coloring is improper on edge ({u}, {v})")

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels else str(v)

    def vertex(self, label: str) -> int:
        return self.labels.index(label)

    def with_colors(self, updates: dict[str, int]) -> "ColoredPattern":
        """Copy with some vertices (by label) colored; handy for following a claim's script."""
        col = list(self.coloring)
        for lab, c in updates.items():
            col[self.vertex(lab)] = c
        return ColoredPattern(self.name, self.graph, tuple(col), self.labels)


def _pattern(name, labels, colors, edges) -> ColoredPattern:
    idx = {lab: i for i, lab in enumerate(labels)}
    g = build_graph(len(labels), [(idx[a], idx[b]) for a, b in edges])
    return ColoredPattern(name, g, tuple(colors), tuple(labels))


def type1() -> ColoredPattern:
    """Uncolored centre whose four neighbours carry four distinct colors."""
    return _pattern(
        "type1",
        ["c", "x1", "x2", "x3", "x4"],
        [None, 1, 2, 3, 4],
        [("c", "x1"), ("c", "x2"), ("c", "x3"), ("c", "x4")],
    )


def type2() -> ColoredPattern:
    return _pattern(
        "type2",
        ["r", "m1", "West", "Southeast", "m4", "t2", "North"],
        [4, 2, None, None, 2, 1, None],
        [
            ("r", "West"), ("r", "Southeast"), ("r", "m4"),
            ("m1", "West"), ("West", "Southeast"), ("Southeast", "m4"),
            ("West", "t2"), ("m1", "t2"), ("Southeast", "North"), ("West", "North"),
        ],
    )  # fmt: skip


def type3() -> ColoredPattern:
    return _pattern(
        "type3",
        ["r", "m1", "b1", "b2", "b3", "m5", "a1", "a2", "a3"],
        [4, 1, None, None, None, 2, None, None, None],
        [
            ("r", "m1"), ("r", "b1"), ("r", "b2"), ("r", "b3"), ("r", "m5"),
            ("m1", "b1"), ("b1", "b2"), ("b2", "b3"), ("b3", "m5"),
            ("m1", "a1"), ("b1", "a1"), ("b1", "a2"), ("b2", "a2"), ("b2", "a3"), ("b3", "a3"),
        ],
    )  # fmt: skip


PATTERNS = {"type1": type1, "type2": type2, "type3": type3}


class Host(NamedTuple):
    """Minimal host view: a graph and per-vertex colors (0 = uncolored)."""

    graph: Graph
    color: Sequence[int]


@dataclass(frozen=True)
class Embedding:
    vertex_map: tuple[int, ...]
    color_map: tuple[int, ...]  # color_map[c - 1] = host color for pattern color c

    def host_color(self, c: int) -> int:
        return self.color_map[c - 1]


def _search_order(p: ColoredPattern) -> list[int]:
    g = p.graph
    order: list[int] = []
    placed = 0
    while len(order) < g.n:
        rest = [v for v in range(g.n) if not placed >> v & 1]
        v = max(
            rest,
            key=lambda v: ((g.masks[v] & placed).bit_count(), p.coloring[v] is not None, g.degree(v), -v),
        )
        order.append(v)
        placed |= 1 << v
    return order


def iter_embeddings(host, p: ColoredPattern, strict: bool = True, exact_colors: bool = False) -> Iterator[Embedding]:
    """Subgraph embeddings of ``p`` into ``host`` up to a bijection of the colors.

    Strict embeddings additionally require every uncolored host image to have
    no colored neighbour outside the image.
    """
    hg, hcol = host.graph, host.color
    pg = p.graph
    if pg.n > hg.n:
        return
    order = _search_order(p)
    by_degree = sorted(range(hg.n), key=lambda h: (-hg.degree(h), h))
    vmap = [-1] * pg.n
    fwd: dict[int, int] = {}
    used_host: set[int] = set()

    def candidates(pv: int) -> list[int]:
        mask = None
        for q in pg.adjacency[pv]:
            if vmap[q] >= 0:
                nb = hg.masks[vmap[q]]
                mask = nb if mask is None else mask & nb
        if mask is None:
            return by_degree
        return sorted(iter_bits(mask), key=lambda h: (-hg.degree(h), h))

    def finish() -> Embedding:
        image = set(vmap)
        if strict:
            for pv in range(pg.n):
                if p.coloring[pv] is None:
                    h = vmap[pv]
                    if any(hcol[x] and x not in image for x in hg.adjacency[h]):
                        return None
        taken = set(fwd.values())
        spare = iter(c for c in range(1, T + 1) if c not in taken)
        cmap = tuple(fwd[c] if c in fwd else next(spare) for c in range(1, T + 1))
        return Embedding(tuple(vmap), cmap)

    def extend(i: int) -> Iterator[Embedding]:
        if i == len(order):
            emb = finish()
            if emb is not None:
                yield emb
            return
        pv = order[i]
        pc = p.coloring[pv]
        for h in candidates(pv):
            if h in used_host:
                continue
            hc = hcol[h]
            added = False
            if pc is None:
                if hc:
                    continue
            else:
                if not hc:
                    continue
                if pc in fwd:
                    if fwd[pc] != hc:
                        continue
                else:
                    if hc in fwd.values() or (exact_colors and hc != pc):
                        continue
                    fwd[pc] = hc
                    added = True
            vmap[pv] = h
            used_host.add(h)
            yield from extend(i + 1)
            used_host.discard(h)
            vmap[pv] = -1
            if added:
                del fwd[pc]

    yield from extend(0)


def match_pattern(host, p: ColoredPattern, strict: bool = True, exact_colors: bool = False) -> list[Embedding]:
    return list(iter_embeddings(host, p, strict, exact_colors))


def check_embedding(host, p: ColoredPattern, emb: Embedding, strict: bool = True) -> Optional[str]:
    """Independent re-verification of an embedding; returns a failure reason or ``None``."""
    hg, hcol = host.graph, host.color
    vm = emb.vertex_map
    if len(set(vm)) != len(vm) or any(not 0 <= h < hg.n for h in vm):
        return "vertex map is not injective"
    if sorted(emb.color_map) != list(range(1, T + 1)):
        return "color map is not a bijection"
    for u, v in p.graph.edges:
        if not hg.has_edge(vm[u], vm[v]):
            return f"pattern edge {p.label(u)}-{p.label(v)} missing in host"
    image = set(vm)
    for pv, pc in enumerate(p.coloring):
        hc = hcol[vm[pv]]
        if pc is None:
            if hc:
                return f"{p.label(pv)} should be uncolored"
            if strict and any(hcol[x] and x not in image for x in hg.adjacency[vm[pv]]):
                return f"{p.label(pv)} has a colored neighbour outside the image"
        elif hc != emb.host_color(pc):
            return f"{p.label(pv)} has host color {hc}, expected {emb.host_color(pc)}"
    return None


def find_winning_pattern(host) -> Optional[tuple[str, Embedding]]:
    """First strict embedding of Type 1, else Type 2, else Type 3."""
    for name in ("type1", "type2", "type3"):
        emb = next(iter_embeddings(host, PATTERNS[name]()), None)
        if emb is not None:
            return name, emb
    return None


def host_subpattern(host, vertices: Sequence[int], name: str = "region") -> ColoredPattern:
    """Induced host subgraph on ``vertices`` (in that order) with host colors, as a pattern."""
    g, _ = host.graph.induced(vertices)
    return ColoredPattern(name, g, tuple(host.color[h] or None for h in vertices), tuple(str(h) for h in vertices))


def local_region(host, core: Sequence[int]) -> list[int]:
    """``core`` plus the neighbours of its uncolored vertices, plus colored
    neighbours of every uncolored vertex so added.  Inside this region the
    constraints on every uncolored core vertex are complete."""
    hg, hcol = host.graph, host.color
    region = list(dict.fromkeys(core))
    seen = set(region)
    for h in list(region):
        if not hcol[h]:
            for x in hg.adjacency[h]:
                if x not in seen:
                    seen.add(x)
                    region.append(x)
    for h in list(region):
        if not hcol[h]:
            for x in hg.adjacency[h]:
                if hcol[x] and x not in seen:
                    seen.add(x)
                    region.append(x)
    return region


def serialize_pattern(p: ColoredPattern) -> str:
    lines = [f"# pattern {p.name}", f"{p.graph.n} {p.graph.edge_count}"]
    lines += [f"{u} {v}" for u, v in p.graph.edges]
    lines += [f"c {v} {c}" for v, c in enumerate(p.coloring) if c]
    return "\n".join(lines) + "\n"


def parse_pattern(text: str, name: str = "pattern") -> ColoredPattern:
    n, edges, colors = parse_edge_list(text, allow_colors=True)
    return ColoredPattern(name, build_graph(n, edges), tuple(colors.get(v) for v in range(n)))
