"""Simple undirected graphs on dense vertex ids ``0..n-1``.

A :class:`Graph` is immutable: adjacency is stored as sorted tuples, which is
also the canonical form used for equality and hashing.  Bitmask views of the
adjacency are computed lazily for the exact search.
"""

from __future__ import annotations

import heapq
from collections import deque
from typing import Iterable, Iterator, Sequence


class GraphError(ValueError):
    """Raised for malformed graph input or invalid graph operations."""


class Graph:
    __slots__ = ("n", "adj", "_sets", "_masks")

    def __init__(self, n: int, adj: Sequence[Iterable[int]]):
        if n < 0 or len(adj) != n:
            raise GraphError(f"adjacency has {len(adj)} rows, expected {n}")
        rows = tuple(tuple(sorted(set(row))) for row in adj)
        for v, row in enumerate(rows):
            for w in row:
                if not 0 <= w < n:
                    raise GraphError(f"neighbour {w} of {v} out of range")
                if w == v:
                    raise GraphError(f"self-loop at {v}")
        lookup = [set(row) for row in rows]
        for v, row in enumerate(rows):
            for w in row:
                if v not in lookup[w]:
                    raise GraphError(f"adjacency not symmetric at {v}-{w}")
        self.n = n
        self.adj = rows
        self._sets = None
        self._masks = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph, silently merging parallel edges."""
        rows: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            rows[u].add(v)
            rows[v].add(u)
        return cls(n, rows)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __len__(self) -> int:
        return self.n

    @property
    def m(self) -> int:
        return sum(len(row) for row in self.adj) // 2

    @property
    def sets(self) -> tuple[frozenset[int], ...]:
        if self._sets is None:
            self._sets = tuple(frozenset(row) for row in self.adj)
        return self._sets

    @property
    def masks(self) -> tuple[int, ...]:
        """Adjacency as integer bitmasks (bit ``w`` of ``masks[v]`` set iff vw is an edge)."""
        if self._masks is None:
            out = []
            for row in self.adj:
                mask = 0
                for w in row:
                    mask |= 1 << w
                out.append(mask)
            self._masks = tuple(out)
        return self._masks

    def vertices(self) -> range:
        return range(self.n)

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, row in enumerate(self.adj):
            for w in row:
                if v < w:
                    yield v, w

    def has_edge(self, u: int, w: int) -> bool:
        return w in self.sets[u]

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def max_degree(self) -> int:
        return max((len(row) for row in self.adj), default=0)

    def min_degree(self) -> int:
        return min((len(row) for row in self.adj), default=0)

    def average_degree(self) -> float:
        return 2 * self.m / self.n if self.n else 0.0

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Return ``(H, old_ids)`` where vertex ``i`` of H is ``old_ids[i]`` in self."""
        old = sorted(set(vertices))
        index = {v: i for i, v in enumerate(old)}
        rows = [[index[w] for w in self.adj[v] if w in index] for v in old]
        return Graph(len(old), rows), old


def _check_vertices(g: Graph, s: Iterable[int]) -> frozenset[int]:
    s = frozenset(s)
    for v in s:
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} not in graph with n={g.n}")
    return s


def neighbourhood(g: Graph, s: Iterable[int]) -> frozenset[int]:
    """Vertices outside ``s`` with at least one neighbour in ``s``."""
    s = _check_vertices(g, s)
    if not s:
        raise GraphError("neighbourhood of the empty set is undefined")
    out: set[int] = set()
    for v in s:
        out.update(g.adj[v])
    return frozenset(out - s)


def is_connected_set(g: Graph, s: Iterable[int]) -> bool:
    """True iff ``s`` is non-empty and induces a connected subgraph."""
    s = _check_vertices(g, s)
    if not s:
        return False
    start = next(iter(s))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if w in s and w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(s)


def is_dominating_set(g: Graph, s: Iterable[int], within: Iterable[int] | None = None) -> bool:
    s = frozenset(s)
    universe = range(g.n) if within is None else within
    return all(v in s or not s.isdisjoint(g.adj[v]) for v in universe)


def is_independent_set(g: Graph, s: Iterable[int]) -> bool:
    s = frozenset(s)
    return all(s.isdisjoint(g.adj[v]) for v in s)


def components(g: Graph, within: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components of ``g`` (or of ``g[within]``), each sorted, ordered by min id."""
    allowed = set(range(g.n)) if within is None else set(within)
    seen: set[int] = set()
    out = []
    for root in sorted(allowed):
        if root in seen:
            continue
        comp = [root]
        seen.add(root)
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if w in allowed and w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return g.n > 0 and len(components(g)) == 1


def contract_edge(g: Graph, u: int, w: int) -> tuple[Graph, list[int]]:
    """Contract edge ``uw``.

    The merged vertex takes the smaller of the two ids' slot after renumbering;
    the returned map sends every old id to its new id (``u`` and ``w`` share one).
    """
    if not (0 <= u < g.n and 0 <= w < g.n) or not g.has_edge(u, w):
        raise GraphError(f"{u}-{w} is not an edge")
    keep, drop = min(u, w), max(u, w)
    mapping = [v if v < drop else v - 1 for v in range(g.n)]
    mapping[drop] = mapping[keep]
    rows: list[set[int]] = [set() for _ in range(g.n - 1)]
    for a, b in g.edges():
        x, y = mapping[a], mapping[b]
        if x != y:
            rows[x].add(y)
            rows[y].add(x)
    return Graph(g.n - 1, rows), mapping


def subdivide(g: Graph, times: int = 1) -> Graph:
    """Replace every edge by a path with ``times`` internal vertices.

    New vertices are numbered after the originals, edge by edge in sorted edge order.
    """
    if times < 1:
        raise GraphError("subdivision count must be positive")
    edges = []
    nxt = g.n
    for a, b in g.edges():
        path = [a] + list(range(nxt, nxt + times)) + [b]
        nxt += times
        edges.extend(zip(path, path[1:]))
    return Graph.from_edges(nxt, edges)


def bfs_layers(g: Graph, root: int, within: Iterable[int] | None = None) -> list[list[int]]:
    """Distance layers from ``root``; unreachable vertices are left out."""
    if not 0 <= root < g.n:
        raise GraphError(f"root {root} not in graph")
    allowed = None if within is None else set(within)
    dist = {root: 0}
    layers = [[root]]
    frontier = [root]
    while frontier:
        nxt = []
        for v in frontier:
            for w in g.adj[v]:
                if w not in dist and (allowed is None or w in allowed):
                    dist[w] = len(layers)
                    nxt.append(w)
        if nxt:
            layers.append(sorted(nxt))
        frontier = nxt
    return layers


def find_cycle(g: Graph, within: Iterable[int] | None = None) -> list[int] | None:
    """Some cycle of ``g[within]`` as a vertex sequence, or None for a forest.

    The cycle closes through a back edge found by DFS from the smallest vertex,
    so it is not necessarily induced.
    """
    allowed = set(range(g.n)) if within is None else set(within)
    parent: dict[int, int] = {}
    depth: dict[int, int] = {}
    for root in sorted(allowed):
        if root in parent:
            continue
        parent[root] = -1
        depth[root] = 0
        stack = [(root, iter(g.adj[root]))]
        while stack:
            v, it = stack[-1]
            for w in it:
                if w not in allowed or w == parent[v]:
                    continue
                if w in parent:
                    if depth[w] < depth[v]:
                        cycle = [v]
                        while cycle[-1] != w:
                            cycle.append(parent[cycle[-1]])
                        return cycle
                    continue
                parent[w] = v
                depth[w] = depth[v] + 1
                stack.append((w, iter(g.adj[w])))
                break
            else:
                stack.pop()
    return None


def peel(g: Graph, k: int, within: Iterable[int] | None = None) -> tuple[list[int], list[int]]:
    """Repeatedly delete a smallest-id vertex of degree <= k.

    Returns ``(order, core)``: the deletion order and the surviving vertices
    (the k+1 core, every vertex of which has degree > k inside it).
    """
    alive = set(range(g.n)) if within is None else set(within)
    deg = {v: sum(1 for w in g.adj[v] if w in alive) for v in alive}
    order = []
    low = sorted(v for v in alive if deg[v] <= k)
    while low:
        v = heapq.heappop(low)
        if v not in alive:
            continue
        alive.discard(v)
        order.append(v)
        for w in g.adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == k:
                    heapq.heappush(low, w)
    return order, sorted(alive)


def degeneracy_order(g: Graph) -> list[int]:
    """Smallest-last order: repeatedly remove a minimum-degree vertex (smallest id on ties)."""
    deg = [len(row) for row in g.adj]
    heap = [(d, v) for v, d in enumerate(deg)]
    heapq.heapify(heap)
    removed = [False] * g.n
    order = []
    while heap:
        d, v = heapq.heappop(heap)
        if removed[v] or d != deg[v]:
            continue
        removed[v] = True
        order.append(v)
        for w in g.adj[v]:
            if not removed[w]:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return order


# --- text formats -----------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    lines = [(i, ln.strip()) for i, ln in enumerate(text.splitlines(), start=1)]
    lines = [(i, ln) for i, ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise GraphError("line 1: missing 'n m' header")
    lineno, header = lines[0]
    try:
        n, m = (int(x) for x in header.split())
    except ValueError:
        raise GraphError(f"line {lineno}: header must be 'n m', got {header!r}") from None
    if n < 0 or m < 0:
        raise GraphError(f"line {lineno}: negative count in header")
    seen: set[tuple[int, int]] = set()
    for lineno, ln in lines[1:]:
        try:
            u, v = (int(x) for x in ln.split())
        except ValueError:
            raise GraphError(f"line {lineno}: expected 'u v', got {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {lineno}: vertex id out of range 0..{n - 1}")
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphError(f"line {lineno}: duplicate edge {key[0]} {key[1]}")
        seen.add(key)
    if len(seen) != m:
        raise GraphError(f"line {lines[0][0]}: header declares {m} edges, found {len(seen)}")
    return Graph.from_edges(n, seen)


def format_edge_list(g: Graph) -> str:
    out = [f"{g.n} {g.m}"]
    out.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(out) + "\n"


def parse_graph6(text: str) -> Graph:
    data = text.strip()
    if data.startswith(">>graph6<<"):
        data = data[10:]
    if not data:
        raise GraphError("line 1: empty graph6 string")
    if any(not 63 <= ord(ch) <= 126 for ch in data):
        raise GraphError("line 1: invalid graph6 character")
    if data.startswith("~~"):
        head, body = data[2:8], data[8:]
    elif data.startswith("~"):
        head, body = data[1:4], data[4:]
    else:
        head, body = data[0], data[1:]
    if len(head) not in (1, 3, 6):
        raise GraphError("line 1: truncated graph6 size field")
    n = 0
    for ch in head:
        n = (n << 6) | (ord(ch) - 63)
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphError(f"line 1: graph6 body has {len(body)} bytes, expected {need}")
    bits = []
    for ch in body:
        val = ord(ch) - 63
        bits.extend((val >> k) & 1 for k in range(5, -1, -1))
    edges = []
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges.append((i, j))
            pos += 1
    return Graph.from_edges(n, edges)


def format_graph6(g: Graph) -> str:
    if g.n <= 62:
        out = [chr(g.n + 63)]
    else:
        width, prefix = (3, "~") if g.n <= 258047 else (6, "~~")
        out = [prefix] + [chr(((g.n >> (6 * k)) & 63) + 63) for k in range(width - 1, -1, -1)]
    bits = [1 if g.has_edge(i, j) else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k : k + 6]:
            val = (val << 1) | b
        out.append(chr(val + 63))
    return "".join(out)


def parse_graph(text: str, fmt: str = "edge-list") -> Graph:
    if fmt == "edge-list":
        return parse_edge_list(text)
    if fmt == "graph6":
        return parse_graph6(text)
    raise GraphError(f"unknown graph format {fmt!r}")


def format_graph(g: Graph, fmt: str = "edge-list") -> str:
    if fmt == "edge-list":
        return format_edge_list(g)
    if fmt == "graph6":
        return format_graph6(g) + "\n"
    raise GraphError(f"unknown graph format {fmt!r}")
