"""Tree partitions built from connected dominating sets.

Each node of the rooted tree carries a connected part ``P`` of the graph and
an independent set ``I`` inside it with ``|P| = 2|I| - 1``.  Parts on any
root-to-leaf path form a dominating clique model, and edges of the graph only
join parts in ancestor/descendant position.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Iterable

from .constructive import PreconditionError
from .graph import Graph, components, is_connected, is_connected_set, is_dominating_set, is_independent_set
from .models import CliqueModel, checked, verify_model


class DominatingModelFound(Exception):
    """The tree is deep enough to give a dominating K_t-model; the model is attached."""

    def __init__(self, model: CliqueModel):
        super().__init__(f"found a dominating K_{model.t}-model")
        self.model = model


def dominating_independent_pair(g: Graph, within: Iterable[int] | None = None) -> tuple[list[int], list[int]]:
    """Connected dominating D with independent I inside it and |D| = 2|I| - 1.

    Starts from the smallest vertex and repeatedly adds an edge xy with x at
    distance 1 and y at distance 2 from D, putting y into I.  The smallest
    such y is taken, then the smallest x.
    """
    verts = set(range(g.n)) if within is None else set(within)
    if not verts:
        raise PreconditionError("graph is empty")
    start = min(verts)
    d = {start}
    ind = [start]
    while True:
        ring1 = {w for v in d for w in g.adj[v] if w in verts and w not in d}
        ring2 = {w for v in ring1 for w in g.adj[v] if w in verts and w not in d and w not in ring1}
        if not ring2:
            if len(d) + len(ring1) != len(verts):
                raise PreconditionError("graph is not connected")
            return sorted(d), sorted(ind)
        y = min(ring2)
        x = min(w for w in g.adj[y] if w in ring1)
        d |= {x, y}
        ind.append(y)


@dataclass
class TreePartition:
    parent: list[int] = field(default_factory=list)  # -1 for the root (node 0)
    part: list[list[int]] = field(default_factory=list)
    indep: list[list[int]] = field(default_factory=list)

    @property
    def size(self) -> int:
        return len(self.part)

    def depth(self, node: int) -> int:
        """Number of nodes on the path to the root (the root has depth 1)."""
        d = 1
        while self.parent[node] != -1:
            node = self.parent[node]
            d += 1
        return d

    def height(self) -> int:
        return max(self.depth(v) for v in range(self.size))

    def children(self, node: int) -> list[int]:
        return [v for v, p in enumerate(self.parent) if p == node]

    def leaves(self) -> list[int]:
        inner = set(self.parent)
        return [v for v in range(self.size) if v not in inner]

    def root_path(self, node: int) -> list[int]:
        path = [node]
        while self.parent[path[-1]] != -1:
            path.append(self.parent[path[-1]])
        return path[::-1]

    def path_model(self, node: int) -> CliqueModel:
        return CliqueModel.of(self.part[v] for v in self.root_path(node))

    def to_dict(self) -> dict[str, Any]:
        return {
            "nodes": [
                {"id": v, "parent": p if p >= 0 else None, "part": self.part[v], "indep": self.indep[v]}
                for v, p in enumerate(self.parent)
            ]
        }


def tree_partition(g: Graph) -> TreePartition:
    """Partition of a connected graph along a rooted tree (nodes numbered in preorder)."""
    if g.n == 0 or not is_connected(g):
        raise PreconditionError("graph must be connected and non-empty")
    tp = TreePartition()
    stack = [(list(range(g.n)), -1)]
    while stack:
        verts, parent = stack.pop()
        d, ind = dominating_independent_pair(g, verts)
        node = tp.size
        tp.parent.append(parent)
        tp.part.append(d)
        tp.indep.append(ind)
        rest = set(verts) - set(d)
        # reversed so that components come off the stack in min-id order
        for comp in reversed(components(g, rest)):
            stack.append((comp, node))
    return tp


def check_tree_partition(g: Graph, tp: TreePartition) -> list[str]:
    """All violated invariants (empty when the partition is sound)."""
    problems = []
    owner: dict[int, int] = {}
    for node, part in enumerate(tp.part):
        for v in part:
            if v in owner:
                problems.append(f"vertex {v} in nodes {owner[v]} and {node}")
            owner[v] = node
        if not is_connected_set(g, part):
            problems.append(f"part of node {node} is not connected")
        ind = tp.indep[node]
        if not set(ind) <= set(part):
            problems.append(f"independent set of node {node} not inside its part")
        if not is_independent_set(g, ind):
            problems.append(f"independent set of node {node} has an edge")
        if len(part) != 2 * len(ind) - 1:
            problems.append(f"node {node}: |part|={len(part)} but |indep|={len(ind)}")
    if len(owner) != g.n:
        problems.append(f"parts cover {len(owner)} of {g.n} vertices")
    ancestors = [set(tp.root_path(v)) for v in range(tp.size)]
    for u, w in g.edges():
        a, b = owner.get(u), owner.get(w)
        if a is None or b is None or a == b:
            continue
        if a not in ancestors[b] and b not in ancestors[a]:
            problems.append(f"edge {u}-{w} joins unrelated nodes {a} and {b}")
    for leaf in tp.leaves():
        verdict = verify_model(g, tp.path_model(leaf))
        if not verdict:
            problems.append(f"root path to leaf {leaf}: {verdict.reason}")
    for node, part in enumerate(tp.part):
        below = [v for c in range(tp.size) if node in ancestors[c] for v in tp.part[c]]
        if not is_dominating_set(g, part, below):
            problems.append(f"part of node {node} does not dominate its subtree")
    return problems


@dataclass(frozen=True)
class ColourableSubgraph:
    vertices: tuple[int, ...]
    colouring: dict[int, int]  # vertex -> depth - 1
    height: int

    def to_dict(self) -> dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "colour": {str(v): c for v, c in sorted(self.colouring.items())},
            "h": self.height,
        }


def large_colourable_subgraph(g: Graph, t: int) -> ColourableSubgraph:
    """Union of the parts' independent sets, coloured by tree depth.

    Has ``(n + number of parts) / 2`` vertices and uses ``h`` colours, ``h``
    the tree height.  If ``h >= t`` the root path to a deepest node contains
    a dominating K_t-model, which is raised as :class:`DominatingModelFound`.
    """
    if t < 2:
        raise PreconditionError("t must be at least 2")
    tp = tree_partition(g)
    depths = [tp.depth(v) for v in range(tp.size)]
    h = max(depths)
    if h >= t:
        deepest = depths.index(h)
        path = tp.root_path(deepest)[:t]
        raise DominatingModelFound(checked(g, CliqueModel.of(tp.part[v] for v in path)))
    colouring = {v: depths[node] - 1 for node, ind in enumerate(tp.indep) for v in ind}
    return ColourableSubgraph(tuple(sorted(colouring)), colouring, h)


def independence_bound(g: Graph, t: int) -> list[int]:
    """Independent set of size at least ceil((n + t - 1) / (2t - 2)) when g has no dominating K_t-model.

    Disconnected graphs are handled component by component.  Raises
    :class:`DominatingModelFound` when some component's tree reaches depth t.
    """
    if g.n == 0:
        raise PreconditionError("graph is empty")
    out: list[int] = []
    for comp in components(g):
        h, old = g.induced_subgraph(comp)
        try:
            sub = large_colourable_subgraph(h, t)
        except DominatingModelFound as found:
            raise DominatingModelFound(
                CliqueModel.of([[old[v] for v in p] for p in found.model.parts])
            ) from None
        classes: dict[int, list[int]] = {}
        for v, c in sub.colouring.items():
            classes.setdefault(c, []).append(old[v])
        out.extend(max(classes.values(), key=lambda cls: (len(cls), -min(cls))))
    return sorted(out)


def independence_target(n: int, t: int) -> int:
    return math.ceil((n + t - 1) / (2 * t - 2))

