"""Graph representation, the extremal constructions, k-tree and treedepth machinery, edge-list I/O."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Rejected graph input or violated graph precondition."""


class ParseError(GraphError):
    def __init__(self, line: int, msg: str) -> None:
        super().__init__(f"line {line}: {msg}")
        self.line = line


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    ``adjacency[v]`` is the ascending tuple of neighbours of ``v``; ``masks[v]`` is
    the same row as a bit set, which is what the solvers work with.
    """

    n: int
    adjacency: tuple[tuple[int, ...], ...]
    masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.adjacency) != self.n:
            raise GraphError("adjacency length does not match n")
        rows = []
        for v, row in enumerate(self.adjacency):
            m = 0
            for u in row:
                m |= 1 << u
            rows.append(m)
        object.__setattr__(self, "masks", tuple(rows))

    @cached_property
    def edge_count(self) -> int:
        return sum(len(row) for row in self.adjacency) // 2

    @cached_property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return tuple((u, v) for u in range(self.n) for v in self.adjacency[u] if u < v)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @cached_property
    def max_degree(self) -> int:
        return max((len(r) for r in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.masks[u] >> v & 1)

    def component_masks(self, within: Optional[int] = None) -> list[int]:
        """Connected components of the subgraph induced by ``within`` (default all)."""
        rest = self.full_mask if within is None else within
        comps = []
        while rest:
            seed = rest & -rest
            comp = seed
            frontier = seed
            while frontier:
                nxt = 0
                for v in iter_bits(frontier):
                    nxt |= self.masks[v]
                nxt &= rest & ~comp
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            rest &= ~comp
        return comps

    def is_connected(self, within: Optional[int] = None) -> bool:
        mask = self.full_mask if within is None else within
        if mask == 0:
            return True
        return len(self.component_masks(mask)) == 1

    def is_clique(self, vertices: Iterable[int]) -> bool:
        vs = list(vertices)
        return all(self.has_edge(a, b) for a, b in combinations(vs, 2))

    def induced(self, vertices: Sequence[int]) -> tuple["Graph", dict[int, int]]:
        """Induced subgraph, relabelled in the order given; also returns old -> new."""
        index = {v: i for i, v in enumerate(vertices)}
        edges = [(index[u], index[v]) for u in vertices for v in self.adjacency[u] if v in index and u < v]
        return build_graph(len(vertices), edges), index

    @cached_property
    def digest(self) -> str:
        return hashlib.sha256(serialize_graph(self).encode()).hexdigest()[:16]


def build_graph(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph, silently dropping duplicate edges."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    rows: list[set[int]] = [set() for _ in range(n)]
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise GraphError(f"self-loop at {u}")
        rows[u].add(v)
        rows[v].add(u)
    return Graph(n, tuple(tuple(sorted(r)) for r in rows))


def complete_graph(n: int) -> Graph:
    return build_graph(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


# --- rooted trees and treedepth -------------------------------------------------


@dataclass(frozen=True)
class RootedTree:
    parent: tuple[Optional[int], ...]
    root: int = field(init=False)
    level: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        roots = [v for v, p in enumerate(self.parent) if p is None]
        if len(roots) != 1:
            raise GraphError(f"rooted tree needs exactly one root, found {len(roots)}")
        n = len(self.parent)
        level = [-1] * n
        level[roots[0]] = 0
        for v in range(n):
            chain = []
            u = v
            while level[u] < 0:
                chain.append(u)
                u = self.parent[u]
                if u is None or not 0 <= u < n or len(chain) > n:
                    raise GraphError("parent pointers do not form a tree")
            for w in reversed(chain):
                level[w] = level[self.parent[w]] + 1
        object.__setattr__(self, "root", roots[0])
        object.__setattr__(self, "level", tuple(level))

    @property
    def n(self) -> int:
        return len(self.parent)

    @property
    def height(self) -> int:
        return 1 + max(self.level)

    def ancestors(self, v: int) -> list[int]:
        """Strict ancestors of ``v``, nearest first."""
        out = []
        p = self.parent[v]
        while p is not None:
            out.append(p)
            p = self.parent[p]
        return out

    @cached_property
    def ancestor_masks(self) -> tuple[int, ...]:
        out = []
        for v in range(self.n):
            m = 0
            for a in self.ancestors(v):
                m |= 1 << a
            out.append(m)
        return tuple(out)

    def is_ancestor(self, a: int, v: int) -> bool:
        return bool(self.ancestor_masks[v] >> a & 1)


def closure_of_rooted_tree(tree: RootedTree) -> Graph:
    return build_graph(tree.n, [(v, a) for v in range(tree.n) for a in tree.ancestors(v)])


@dataclass(frozen=True)
class TreedepthDecomposition:
    tree: RootedTree
    target: Graph

    def __post_init__(self) -> None:
        if self.tree.n != self.target.n:
            raise GraphError("tree and target have different vertex sets")
        for u, v in self.target.edges:
            if not (self.tree.is_ancestor(u, v) or self.tree.is_ancestor(v, u)):
                raise GraphError(f"edge ({u}, {v}) is not ancestor-related in the tree")

    @property
    def height(self) -> int:
        return self.tree.height


def treedepth_decomposition(g: Graph, max_height: Optional[int] = None) -> Optional[TreedepthDecomposition]:
    """Optimal-height decomposition by exhaustive recursion over vertex subsets.

    Returns ``None`` when the optimum exceeds ``max_height``.
    """
    if g.n == 0 or not g.is_connected():
        raise GraphError("treedepth_decomposition needs a connected, nonempty graph")
    memo: dict[int, tuple[int, int]] = {}

    def td(mask: int) -> int:
        # mask is always connected here
        hit = memo.get(mask)
        if hit is not None:
            return hit[0]
        if mask & (mask - 1) == 0:
            memo[mask] = (1, mask.bit_length() - 1)
            return 1
        best, best_root = None, -1
        for v in iter_bits(mask):
            worst = 0
            for comp in g.component_masks(mask & ~(1 << v)):
                worst = max(worst, td(comp))
                if best is not None and worst >= best:
                    break
            if best is None or worst < best:
                best, best_root = worst, v
        memo[mask] = (best + 1, best_root)
        return best + 1

    height = td(g.full_mask)
    if max_height is not None and height > max_height:
        return None

    parent: list[Optional[int]] = [None] * g.n

    def attach(mask: int, above: Optional[int]) -> None:
        td(mask)
        root = memo[mask][1]
        parent[root] = above
        for comp in g.component_masks(mask & ~(1 << root)):
            attach(comp, root)

    attach(g.full_mask, None)
    return TreedepthDecomposition(RootedTree(tuple(parent)), g)


def spider_graph(k: int) -> tuple[Graph, TreedepthDecomposition]:
    """Closure of the path p_1..p_{k-1} (rooted at p_1) with 2k-4 leaves hung under p_{k-1}.

    Vertices ``0..k-2`` are the path, ``k-1..3k-6`` the leaves.
    """
    if k < 3:
        raise GraphError(f"spider_graph needs k >= 3, got {k}")
    path = k - 1
    parent: list[Optional[int]] = [None] + list(range(path - 1))
    parent += [path - 1] * (2 * k - 4)
    tree = RootedTree(tuple(parent))
    g = closure_of_rooted_tree(tree)
    return g, TreedepthDecomposition(tree, g)


def spider_parts(k: int) -> tuple[list[int], list[int]]:
    """(path vertices, leaf vertices) of ``spider_graph(k)``."""
    return list(range(k - 1)), list(range(k - 1, 3 * k - 5))


# --- k-trees ----------------------------------------------------------------------


@dataclass(frozen=True)
class ConstructionOrdering:
    order: tuple[int, ...]
    k: int
    back_neighbors: tuple[tuple[int, ...], ...]
    position: tuple[int, ...]

    @classmethod
    def from_order(cls, g: Graph, order: Sequence[int], k: int) -> "ConstructionOrdering":
        """Validate ``order`` as a k-tree construction order of ``g``."""
        if sorted(order) != list(range(g.n)):
            raise GraphError("order is not a permutation of the vertices")
        pos = [0] * g.n
        for i, v in enumerate(order):
            pos[v] = i
        back = []
        for v in range(g.n):
            back.append(tuple(sorted((u for u in g.adjacency[v] if pos[u] < pos[v]), key=pos.__getitem__)))
        if not g.is_clique(order[:k]):
            raise GraphError("first k vertices do not induce a clique")
        for i, v in enumerate(order[k:], start=k):
            b = back[v]
            if len(b) != k or not g.is_clique(b):
                raise GraphError(f"vertex {v} (position {i}) has back-neighbours {b}, not a {k}-clique")
        return cls(tuple(order), k, tuple(back), tuple(pos))

    def index(self, v: int) -> int:
        return self.position[v]


def ktree_ordering(g: Graph, k: int) -> Optional[ConstructionOrdering]:
    """Construction order of ``g`` as a k-tree, or ``None`` if ``g`` is not one."""
    if k < 1 or g.n < k:
        return None
    alive = g.full_mask
    removed: list[int] = []
    while alive.bit_count() > k:
        for v in iter_bits(alive):
            nb = g.masks[v] & alive
            if nb.bit_count() == k and g.is_clique(iter_bits(nb)):
                removed.append(v)
                alive &= ~(1 << v)
                break
        else:
            return None
    base = list(iter_bits(alive))
    if not g.is_clique(base):
        return None
    try:
        return ConstructionOrdering.from_order(g, base + removed[::-1], k)
    except GraphError:
        return None


def random_ktree(k: int, n: int, seed: int) -> tuple[Graph, ConstructionOrdering]:
    """Random k-tree: each new vertex joins a uniformly drawn k-clique created so far."""
    if k < 1 or n < k:
        raise GraphError(f"random_ktree needs n >= k >= 1, got k={k}, n={n}")
    rng = random.Random(seed)
    edges = list(combinations(range(k), 2))
    cliques = [tuple(range(k))]
    for v in range(k, n):
        base = rng.choice(cliques)
        edges += [(u, v) for u in base]
        for drop in range(k):
            cliques.append(tuple(u for j, u in enumerate(base) if j != drop) + (v,))
    g = build_graph(n, edges)
    return g, ConstructionOrdering.from_order(g, range(n), k)


def fan_triangle_graph(m: int) -> tuple[Graph, ConstructionOrdering]:
    """Apex r over the path w_0..w_m, with a triangle vertex v_i on each path edge.

    Layout: 0 = r, 1..m+1 = w_0..w_m, m+2..2m+1 = v_1..v_m.  m = 48 gives the
    98-vertex outerplanar 2-tree.
    """
    if m < 1:
        raise GraphError(f"fan_triangle_graph needs m >= 1, got {m}")
    w = lambda i: 1 + i  # noqa: E731
    v = lambda i: m + 1 + i  # noqa: E731
    edges = [(0, w(i)) for i in range(m + 1)]
    edges += [(w(i - 1), w(i)) for i in range(1, m + 1)]
    edges += [(v(i), w(i - 1)) for i in range(1, m + 1)] + [(v(i), w(i)) for i in range(1, m + 1)]
    g = build_graph(2 * m + 2, edges)
    order = [0, w(0)]
    for i in range(1, m + 1):
        order += [w(i), v(i)]
    return g, ConstructionOrdering.from_order(g, order, 2)


def fan_w(m: int, i: int) -> int:
    return 1 + i


def fan_v(m: int, i: int) -> int:
    return m + 1 + i


def fan_m(g: Graph) -> int:
    """Recover ``m`` from a fan-triangle graph, or raise if ``g`` is not one."""
    m = (g.n - 2) // 2
    if m < 1 or g.n != 2 * m + 2 or g != fan_triangle_graph(m)[0]:
        raise GraphError("graph is not a fan-triangle graph in canonical layout")
    return m


# --- random instances for the treedepth guarantee -------------------------------


def random_rooted_tree(n: int, height: int, rng: random.Random) -> RootedTree:
    """Random rooted tree on ``n`` vertices of height exactly ``height`` (root 0)."""
    if not 1 <= height <= n or (height == 1 and n > 1):
        raise GraphError(f"cannot build height {height} tree on {n} vertices")
    parent: list[Optional[int]] = [None] + list(range(height - 1))
    level = list(range(height))
    for v in range(height, n):
        p = rng.choice([u for u in range(v) if level[u] < height - 1])
        parent.append(p)
        level.append(level[p] + 1)
    perm = list(range(n))
    rng.shuffle(perm)
    relabelled: list[Optional[int]] = [None] * n
    for v, p in enumerate(parent):
        relabelled[perm[v]] = None if p is None else perm[p]
    return RootedTree(tuple(relabelled))


def random_closure_subgraph(
    n: int, height: int, seed: int, keep: float = 0.6, attempts: int = 200
) -> TreedepthDecomposition:
    """Connected random subgraph of the closure of a random rooted tree of the given height."""
    rng = random.Random(seed)
    tree = random_rooted_tree(n, height, rng)
    closure = closure_of_rooted_tree(tree)
    for _ in range(attempts):
        edges = [e for e in closure.edges if rng.random() < keep]
        g = build_graph(n, edges)
        if g.is_connected():
            return TreedepthDecomposition(tree, g)
    return TreedepthDecomposition(tree, closure)


# --- edge-list I/O ------------------------------------------------------------------


def parse_edge_list(text: str, allow_colors: bool = False) -> tuple[int, list[tuple[int, int]], dict[int, int]]:
    """Low-level parser shared with the pattern format (``c v color`` lines)."""
    header = None
    edges: list[tuple[int, int]] = []
    colors: dict[int, int] = {}
    seen: set[tuple[int, int]] = set()
    n = m = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if header is None:
            if len(parts) != 2:
                raise ParseError(lineno, f"expected header 'n m', got {line!r}")
            try:
                n, m = int(parts[0]), int(parts[1])
            except ValueError:
                raise ParseError(lineno, f"non-integer header {line!r}") from None
            if n < 0 or m < 0:
                raise ParseError(lineno, "negative count in header")
            header = lineno
            continue
        if parts[0] == "c":
            if not allow_colors:
                raise ParseError(lineno, "color lines are only valid in pattern files")
            if len(parts) != 3:
                raise ParseError(lineno, f"expected 'c v color', got {line!r}")
            try:
                v, c = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(lineno, f"non-integer color line {line!r}") from None
            if not 0 <= v < n or c < 1 or v in colors:
                raise ParseError(lineno, f"bad color line {line!r}")
            colors[v] = c
            continue
        if len(parts) != 2:
            raise ParseError(lineno, f"expected edge 'u v', got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(lineno, f"non-integer endpoint in {line!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise ParseError(lineno, f"endpoint out of range 0..{n - 1}: {line!r}")
        if u == v:
            raise ParseError(lineno, f"self-loop {line!r}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(lineno, f"duplicate edge {line!r}")
        seen.add(key)
        edges.append(key)
    if header is None:
        raise ParseError(0, "missing header")
    if len(edges) != m:
        raise ParseError(header, f"header declares {m} edges, found {len(edges)}")
    return n, edges, colors


def parse_graph(text: str) -> Graph:
    n, edges, _ = parse_edge_list(text)
    return build_graph(n, edges)


def serialize_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.edge_count}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"
