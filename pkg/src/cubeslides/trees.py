"""Spanning trees of Q_n: validation, orientation, weights, counting, sampling."""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator

from . import hypercube as hc
from .errors import NotATree
from .hypercube import CubeEdge
from .laurent import Laurent
from .rng import DEFAULT_SEED, CubeRandom

ROOT = 0

# n above which exhaustive enumeration is refused outright.
MAX_ENUM_N = 4
MAX_KIRCHHOFF_N = 6
MAX_SAMPLE_N = 8


def _find(parent: list[int], v: int) -> int:
    while parent[v] != v:
        parent[v] = parent[parent[v]]
        v = parent[v]
    return v


def forest_path(n: int, edges: Iterable[CubeEdge], u: int, v: int) -> list[int] | None:
    """Vertex path from ``u`` to ``v`` using ``edges`` (assumed acyclic), or None."""
    adj: dict[int, list[int]] = {}
    for e in edges:
        a, b = e.endpoints
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    prev = {u: None}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in adj.get(x, ()):
            if y not in prev:
                prev[y] = x
                queue.append(y)
    if v not in prev:
        return None
    path = [v]
    while path[-1] != u:
        path.append(prev[path[-1]])
    path.reverse()
    return path


def find_cycle(n: int, edges: Iterable[CubeEdge]) -> list[int] | None:
    """A closed vertex walk ``[v0, ..., v0]`` in the edge set, or None if acyclic."""
    parent = list(range(1 << n))
    kept: list[CubeEdge] = []
    for e in edges:
        a, b = _find(parent, e.lower), _find(parent, e.upper)
        if a == b:
            path = forest_path(n, kept, e.upper, e.lower)
            return path + [e.upper]
        parent[a] = b
        kept.append(e)
    return None


def is_spanning_tree(n: int, edges: Iterable[CubeEdge]) -> bool:
    """Cheap boolean check; edges are assumed valid cube edges."""
    parent = list(range(1 << n))
    count = 0
    for e in edges:
        a, b = _find(parent, e.lower), _find(parent, e.upper)
        if a == b:
            return False
        parent[a] = b
        count += 1
    return count == (1 << n) - 1


def validate_edges(n: int, edges: Iterable[CubeEdge]) -> frozenset[CubeEdge]:
    if not isinstance(n, int) or n < 1:
        raise NotATree("invalid-edge", f"n must be a positive integer, got {n!r}")
    edge_set = set()
    for e in edges:
        e = CubeEdge(*e)
        try:
            hc.check_edge(e, n)
        except ValueError as exc:
            raise NotATree("invalid-edge", str(exc)) from None
        edge_set.add(e)
    ordered = sorted(edge_set, key=hc.edge_sort_key)
    cycle = find_cycle(n, ordered)
    if cycle is not None:
        shown = "-".join(hc.fmt_subset(v) for v in cycle)
        raise NotATree("cycle", f"edge set contains a cycle {shown}", cycle=cycle)
    if len(edge_set) != (1 << n) - 1:
        raise NotATree(
            "disconnected",
            f"{len(edge_set)} acyclic edges cannot span {1 << n} vertices",
        )
    return frozenset(edge_set)


@dataclass(frozen=True)
class SpanningTree:
    """A spanning tree of Q_n, rooted at the empty set.

    Construction validates the edge set; instances are immutable and hash
    by their edge set.
    """

    n: int
    edges: frozenset

    def __post_init__(self):
        object.__setattr__(self, "edges", validate_edges(self.n, self.edges))

    @cached_property
    def sorted_edges(self) -> list[CubeEdge]:
        return sorted(self.edges, key=hc.edge_sort_key)

    @cached_property
    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in range(1 << self.n)}
        for e in self.sorted_edges:
            adj[e.lower].append(e.upper)
            adj[e.upper].append(e.lower)
        return adj

    @cached_property
    def parent(self) -> dict[int, int | None]:
        """Next vertex on the path to the root, ``None`` at the root."""
        par: dict[int, int | None] = {ROOT: None}
        queue = deque([ROOT])
        while queue:
            x = queue.popleft()
            for y in self.adjacency[x]:
                if y not in par:
                    par[y] = x
                    queue.append(y)
        return par

    @cached_property
    def depth(self) -> dict[int, int]:
        depth = {ROOT: 0}
        for v in self._bfs_order:
            p = self.parent[v]
            if p is not None:
                depth[v] = depth[p] + 1
        return depth

    @cached_property
    def _bfs_order(self) -> list[int]:
        order = [ROOT]
        seen = {ROOT}
        for x in order:
            for y in self.adjacency[x]:
                if y not in seen:
                    seen.add(y)
                    order.append(y)
        return order

    @cached_property
    def mask(self) -> int:
        m = 0
        for e in self.edges:
            m |= 1 << hc.edge_index(e, self.n)
        return m

    def path(self, u: int, v: int) -> list[int]:
        """Vertex path from ``u`` to ``v`` in the tree."""
        up_u, up_v = [u], [v]
        depth, parent = self.depth, self.parent
        a, b = u, v
        while depth[a] > depth[b]:
            a = parent[a]
            up_u.append(a)
        while depth[b] > depth[a]:
            b = parent[b]
            up_v.append(b)
        while a != b:
            a, b = parent[a], parent[b]
            up_u.append(a)
            up_v.append(b)
        return up_u + up_v[-2::-1]

    def edges_in(self, i: int) -> list[CubeEdge]:
        return [e for e in self.sorted_edges if e.dir == i]

    def has_edge_at(self, v: int, i: int) -> bool:
        """Whether the i-edge incident to vertex ``v`` is in the tree."""
        return CubeEdge(v & ~(1 << (i - 1)), i) in self.edges

    def replace(self, remove: Iterable[CubeEdge], add: Iterable[CubeEdge]) -> SpanningTree:
        return SpanningTree(self.n, (self.edges - set(remove)) | set(add))

    def __repr__(self) -> str:
        if self.n <= 3:
            return f"SpanningTree(n={self.n}, mask={self.mask})"
        return f"SpanningTree(n={self.n}, edges={[hc.edge_index(e, self.n) for e in self.sorted_edges]})"


def from_edges(n: int, edges: Iterable) -> SpanningTree:
    """Validated tree from ``(lower, dir)`` pairs; duplicates are dropped."""
    return SpanningTree(n, frozenset(CubeEdge(*e) for e in edges))


def orientation(tree: SpanningTree) -> dict[CubeEdge, int]:
    """mu(e): +1 if the path to the root crosses e upward, -1 if downward."""
    parent = tree.parent
    return {e: 1 if parent[e.lower] == e.upper else -1 for e in tree.sorted_edges}


def is_upright(tree: SpanningTree) -> bool:
    return all(m == -1 for m in orientation(tree).values())


def direction_monomial(tree: SpanningTree) -> tuple[int, ...]:
    counts = [0] * tree.n
    for e in tree.edges:
        counts[e.dir - 1] += 1
    return tuple(counts)


signature = direction_monomial


def up_down_counts(tree: SpanningTree) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Per direction, the number of upward (mu=+1) and downward (mu=-1) edges."""
    up = [0] * tree.n
    down = [0] * tree.n
    for e, m in orientation(tree).items():
        if m > 0:
            up[e.dir - 1] += 1
        else:
            down[e.dir - 1] += 1
    return tuple(up), tuple(down)


def dd_monomial_edgewise(tree: SpanningTree) -> tuple[int, ...]:
    """x-exponents of the product of x_S x_R / x_[n] over tree edges (S,R)."""
    n = tree.n
    x = [0] * n
    for e in tree.edges:
        s, r = e.endpoints
        for j in range(n):
            x[j] += (s >> j & 1) + (r >> j & 1) - 1
    return tuple(x)


def dd_monomial_oriented(tree: SpanningTree) -> tuple[int, ...]:
    """x-exponents of x_1...x_n times x_dir(e)^mu(e) over tree edges."""
    x = [1] * tree.n
    for e, m in orientation(tree).items():
        x[e.dir - 1] += m
    return tuple(x)


def weight(tree: SpanningTree) -> Laurent:
    """q^dir(T) x^dd(T) as a monomial in (q_1..q_n, x_1..x_n)."""
    return Laurent.monomial(direction_monomial(tree) + dd_monomial_oriented(tree))


def weighted_count_product(n: int) -> Laurent:
    """q_1...q_n times the product over |S|>=2 of sum_{i in S} q_i(x_i^-1 + x_i)."""
    nv = 2 * n
    total = Laurent.monomial([1] * n + [0] * n)
    for s in range(1 << n):
        if bin(s).count("1") < 2:
            continue
        factor = Laurent(nv)
        for i in hc.subset(s):
            q = Laurent.variable(nv, i - 1)
            factor = factor + q * (Laurent.variable(nv, n + i - 1, -1) + Laurent.variable(nv, n + i - 1))
        total = total * factor
    return total


def weighted_tree_sum(trees: Iterable[SpanningTree]) -> Laurent:
    terms: dict[tuple[int, ...], int] = {}
    nvars = None
    for t in trees:
        exp = direction_monomial(t) + dd_monomial_oriented(t)
        nvars = len(exp)
        terms[exp] = terms.get(exp, 0) + 1
    return Laurent(nvars or 0, terms)


# ---------------------------------------------------------------------------
# Enumeration and counting
# ---------------------------------------------------------------------------

def _subset_filter_trees(n: int) -> list[SpanningTree]:
    all_edges = hc.edges(n)
    found = []
    for combo in itertools.combinations(all_edges, (1 << n) - 1):
        if is_spanning_tree(n, combo):
            found.append(SpanningTree(n, frozenset(combo)))
    found.sort(key=lambda t: t.mask)
    return found


def _backtrack_trees(n: int) -> Iterator[SpanningTree]:
    """Include/exclude search over canonical edge order with connectivity pruning."""
    all_edges = hc.edges(n)
    m = len(all_edges)
    target = (1 << n) - 1
    chosen: list[CubeEdge] = []

    def connected_without(excluded: set[int]) -> bool:
        adj: dict[int, list[int]] = {v: [] for v in range(1 << n)}
        for k, e in enumerate(all_edges):
            if k not in excluded:
                adj[e.lower].append(e.upper)
                adj[e.upper].append(e.lower)
        seen = {ROOT}
        stack = [ROOT]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == 1 << n

    excluded: set[int] = set()

    def rec(k: int, parent: list[int]):
        if len(chosen) == target:
            yield SpanningTree(n, frozenset(chosen))
            return
        if k == m or m - k < target - len(chosen):
            return
        e = all_edges[k]
        a, b = _find(parent, e.lower), _find(parent, e.upper)
        if a != b:
            p2 = parent[:]
            p2[a] = b
            chosen.append(e)
            yield from rec(k + 1, p2)
            chosen.pop()
        excluded.add(k)
        if connected_without(excluded):
            yield from rec(k + 1, parent)
        excluded.discard(k)

    yield from rec(0, list(range(1 << n)))


def enumerate_spanning_trees(n: int, expensive: bool = False) -> Iterator[SpanningTree]:
    """Every spanning tree of Q_n exactly once.

    For n <= 3 trees come in increasing mask order. n = 4 (42 million trees)
    needs ``expensive=True`` and streams in search order.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_ENUM_N:
        raise ValueError(f"refusing to enumerate spanning trees of Q_{n}")
    if n == MAX_ENUM_N and not expensive:
        raise ValueError("enumerating Q_4 needs expensive=True")
    if n <= 3:
        return iter(_subset_filter_trees(n))
    return _backtrack_trees(n)


def _bareiss_det(matrix: list[list[int]]) -> int:
    a = [row[:] for row in matrix]
    size = len(a)
    if size == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(size - 1):
        if a[k][k] == 0:
            for r in range(k + 1, size):
                if a[r][k] != 0:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, size):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, size):
                rowi[j] = (rowi[j] * akk - aik * rowk[j]) // prev
        prev = akk
    return sign * a[-1][-1]


def reduced_laplacian(n: int) -> list[list[int]]:
    """Laplacian of Q_n with the row and column of the empty set removed."""
    size = 1 << n
    lap = [[0] * size for _ in range(size)]
    for v in range(size):
        lap[v][v] = n
        for w in hc.neighbours(v, n):
            lap[v][w] = -1
    return [row[1:] for row in lap[1:]]


def kirchhoff_count(n: int) -> int:
    """Exact spanning-tree count of Q_n via fraction-free elimination."""
    if n < 1 or n > MAX_KIRCHHOFF_N:
        raise ValueError(f"kirchhoff_count supports 1 <= n <= {MAX_KIRCHHOFF_N}")
    return _bareiss_det(reduced_laplacian(n))


def formula_count(n: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    left = 2 ** ((1 << n) - n - 1) * math.prod(k ** math.comb(n, k) for k in range(1, n + 1))
    right = math.prod((2 * k) ** math.comb(n, k) for k in range(2, n + 1))
    assert left == right, (left, right)
    return left


def count_upright_trees(n: int) -> int:
    return math.prod(k ** math.comb(n, k) for k in range(1, n + 1))


# ---------------------------------------------------------------------------
# Sampling
# ---------------------------------------------------------------------------

def random_spanning_tree(n: int, seed: int = DEFAULT_SEED, rng: CubeRandom | None = None) -> SpanningTree:
    """Uniform spanning tree via loop-erased random walks (Wilson's algorithm)."""
    if n < 1 or n > MAX_SAMPLE_N:
        raise ValueError(f"random_spanning_tree supports 1 <= n <= {MAX_SAMPLE_N}")
    if rng is None:
        rng = CubeRandom(seed)
    size = 1 << n
    in_tree = [False] * size
    in_tree[ROOT] = True
    nxt = [0] * size
    tree_edges = []
    for start in range(1, size):
        u = start
        while not in_tree[u]:
            nxt[u] = u ^ (1 << rng.below(n))
            u = nxt[u]
        u = start
        while not in_tree[u]:
            in_tree[u] = True
            tree_edges.append(hc.edge_between(u, nxt[u]))
            u = nxt[u]
    return SpanningTree(n, frozenset(tree_edges))


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def encode(tree: SpanningTree) -> int | list[int]:
    """Bitmask over edge indices for n <= 3, sorted index list otherwise."""
    if tree.n <= 3:
        return tree.mask
    return [hc.edge_index(e, tree.n) for e in tree.sorted_edges]


def decode(n: int, payload: int | list[int]) -> SpanningTree:
    if isinstance(payload, int):
        indices = [k for k in range(payload.bit_length()) if payload >> k & 1]
    else:
        indices = list(payload)
    if len(set(indices)) != (1 << n) - 1:
        raise NotATree("count", f"payload holds {len(set(indices))} edges, need {(1 << n) - 1}")
    try:
        edge_list = [hc.index_edge(k, n) for k in indices]
    except ValueError as exc:
        raise NotATree("invalid-edge", str(exc)) from None
    return SpanningTree(n, frozenset(edge_list))


def to_record(tree: SpanningTree) -> dict:
    return {"n": tree.n, "edges": [[e.lower, e.dir] for e in tree.sorted_edges]}


def from_record(record: dict) -> SpanningTree:
    n = record["n"]
    if "mask" in record:
        return decode(n, int(record["mask"]))
    return from_edges(n, [tuple(e) for e in record["edges"]])
