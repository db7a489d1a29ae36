"""Certificate-producing constructions for dominating clique models.

Every function here returns an object that has been checked before it is
handed back: models pass :func:`verify_model`, colourings are proper.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any, Iterable

import numpy as np

from .graph import (
    Graph,
    bfs_layers,
    components,
    degeneracy_order,
    find_cycle,
    is_connected,
    is_connected_set,
    is_dominating_set,
    peel,
)
from .models import DOMINATING, PSEUDO, CliqueModel, InvalidCertificate, checked


class PreconditionError(ValueError):
    """The input graph does not satisfy a construction's hypothesis."""


class SamplingFailed(RuntimeError):
    """A randomized construction ran out of attempts."""


@dataclass(frozen=True)
class Colouring:
    colour: tuple[int, ...]
    palette_size: int

    @classmethod
    def from_list(cls, colour: Iterable[int]) -> "Colouring":
        colour = tuple(colour)
        return cls(colour, max(colour) + 1 if colour else 0)

    def is_proper(self, g: Graph) -> bool:
        return all(self.colour[u] != self.colour[v] for u, v in g.edges())

    def classes(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.palette_size)]
        for v, c in enumerate(self.colour):
            out[c].append(v)
        return out

    def to_dict(self) -> dict[str, Any]:
        return {"palette_size": self.palette_size, "colour": list(self.colour)}


def checked_colouring(g: Graph, colouring: Colouring) -> Colouring:
    if len(colouring.colour) != g.n or not colouring.is_proper(g):
        raise InvalidCertificate("produced an improper colouring")
    if any(not 0 <= c < colouring.palette_size for c in colouring.colour):
        raise InvalidCertificate("colour outside palette")
    return colouring


@dataclass(frozen=True)
class DichotomyResult:
    t: int
    colouring: Colouring | None = None
    model: CliqueModel | None = None

    def __post_init__(self) -> None:
        if (self.colouring is None) == (self.model is None):
            raise ValueError("exactly one of colouring and model must be set")

    @property
    def branch(self) -> str:
        return "model" if self.model is not None else "colouring"

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"t": self.t, "branch": self.branch}
        if self.model is not None:
            out["certificate"] = self.model.to_dict()
        else:
            out["colouring"] = self.colouring.to_dict()
            out["palette_bound"] = palette_bound(self.t)
        return out


def greedy_colouring(g: Graph, order: Iterable[int]) -> list[int]:
    colour = [-1] * g.n
    for v in order:
        used = {colour[w] for w in g.adj[v]}
        c = 0
        while c in used:
            c += 1
        colour[v] = c
    return colour


# --- minimum degree 3 -> dominating K4 ----------------------------------------


def _shorten_to_induced(g: Graph, cyc: list[int]) -> list[int]:
    while True:
        pos = {v: i for i, v in enumerate(cyc)}
        k = len(cyc)
        chord = None
        for i, v in enumerate(cyc):
            for w in g.adj[v]:
                j = pos.get(w)
                if j is not None and j > i and j - i not in (1, k - 1):
                    chord = (i, j)
                    break
            if chord:
                break
        if chord is None:
            return cyc
        i, j = chord
        inner = cyc[i : j + 1]
        outer = cyc[j:] + cyc[: i + 1]
        cyc = inner if len(inner) <= len(outer) else outer


def _k4_in_component(g: Graph, comp: set[int]) -> list[list[int]]:
    """Dominating K4-model in a component with min degree >= 3.

    Local search over (cycle C, component H of G - C): shorten C along chords,
    and whenever G - (H + z) still has a cycle, switch to it (its complement
    has a component containing H + z).  Each step grows |H| or shrinks |C|.
    """
    cyc = find_cycle(g, comp)
    if cyc is None:
        raise PreconditionError("component is acyclic")
    while True:
        cyc = _shorten_to_induced(g, cyc)
        on_cycle = set(cyc)
        rest = comp - on_cycle
        comps = components(g, rest)
        if not comps:
            raise InvalidCertificate("G - C is empty although C is induced and min degree >= 3")
        h = max(comps, key=lambda c: (len(c), -c[0]))
        h_set = set(h)
        z = min(v for v in cyc if not h_set.isdisjoint(g.adj[v]))
        other = find_cycle(g, comp - h_set - {z})
        if other is not None:
            cyc = other
            continue
        if len(comps) != 1:
            raise InvalidCertificate("G - C has several components after the exchange fixed point")
        k = len(cyc)
        i = cyc.index(min(cyc))
        nbrs = (cyc[(i - 1) % k], cyc[(i + 1) % k])
        x, y = cyc[i], min(nbrs)
        path = [v for v in cyc if v not in (x, y)]
        return [h, path, [x], [y]]


def construct_k4_min_degree3(g: Graph) -> CliqueModel:
    """Dominating K4-model in a graph of minimum degree at least 3."""
    if g.n == 0:
        raise PreconditionError("graph is empty")
    for v in range(g.n):
        if g.degree(v) < 3:
            raise PreconditionError(f"vertex {v} has degree {g.degree(v)} < 3")
    comp = set(components(g)[0])
    return checked(g, CliqueModel.of(_k4_in_component(g, comp)))


# --- average degree 2^(t-2) -> dominating K_t ----------------------------------


def _avg_degree_model(adj: dict[int, set[int]], root: int, t: int) -> list[set[int]]:
    need = 2 ** (t - 2)
    adj = {u: set(ns) for u, ns in adj.items()}
    blob = {root}
    while True:
        n = len(adj)
        twice_m = sum(len(ns) for ns in adj.values())
        if twice_m < need * n:
            raise InvalidCertificate(f"average degree dropped below {need} at order {t}")
        if t == 2:
            return [blob, {min(adj[root])}]
        if n <= need + 1:
            others = sorted(u for u in adj if u != root)[: t - 1]
            return [blob] + [{u} for u in others]
        limit = 2 ** (t - 3) - 1
        for w in sorted(adj[root]):
            if len(adj[root] & adj[w]) <= limit:
                break
        else:
            # every edge at the root lies in >= 2^(t-3) triangles: recurse into N(root)
            nbhd = adj[root]
            sub = {u: adj[u] & nbhd for u in nbhd}
            first = _component_of(sub, min(sub))
            rest = _avg_degree_model({u: sub[u] for u in first}, min(first), t - 1)
            return [blob] + rest
        for x in adj.pop(w):
            adj[x].discard(w)
            if x != root:
                adj[x].add(root)
                adj[root].add(x)
        adj[root].discard(w)
        blob.add(w)


def _component_of(adj: dict[int, set[int]], start: int) -> set[int]:
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return seen


def construct_avg_degree(g: Graph, t: int, root: int | None = None) -> CliqueModel:
    """Dominating K_t-model containing ``root`` in its first part.

    Needs average degree at least 2^(t-2) (in the root's component when a root
    is given).  The default root is the smallest vertex of the densest component.
    """
    if t < 2:
        raise PreconditionError("t must be at least 2")
    need = 2 ** (t - 2)
    if g.n == 0:
        raise PreconditionError("graph is empty")
    if root is None and g.average_degree() < need:
        raise PreconditionError(f"average degree {g.average_degree():.4f} < 2^(t-2) = {need}")

    def comp_avg(c: list[int]) -> float:
        return sum(g.degree(v) for v in c) / len(c)

    comps = components(g)
    if root is None:
        comp = max(comps, key=lambda c: (comp_avg(c), -c[0]))
        root = comp[0]
    else:
        if not 0 <= root < g.n:
            raise PreconditionError(f"root {root} not in graph")
        comp = next(c for c in comps if root in c)
        if comp_avg(comp) < need:
            raise PreconditionError(
                f"root {root} lies in a component of average degree {comp_avg(comp):.4f} < {need}"
            )
    parts = _avg_degree_model({v: set(g.adj[v]) for v in comp}, root, t)
    model = checked(g, CliqueModel.of(parts))
    if root not in model.parts[0]:
        raise InvalidCertificate("root not in first part")
    return model


# --- colour or model -----------------------------------------------------------


def palette_bound(t: int) -> int:
    """Colours used by the colouring branch of :func:`colour_or_model` at order t."""
    if t < 2:
        raise ValueError("t must be at least 2")
    if t <= 4:
        return t - 1
    return 3 * 2 ** (t - 4)


def _com(g: Graph, verts: set[int], t: int):
    if not verts:
        return "colour", {}
    if t == 2:
        for v in sorted(verts):
            for w in g.adj[v]:
                if w in verts:
                    return "model", [[v], [w]]
        return "colour", {v: 0 for v in verts}
    if t == 3:
        cyc = find_cycle(g, verts)
        if cyc is not None:
            return "model", [cyc[2:], [cyc[0]], [cyc[1]]]
        colour = {}
        for comp in components(g, verts):
            for depth, layer in enumerate(bfs_layers(g, comp[0], within=comp)):
                for v in layer:
                    colour[v] = depth % 2
        return "colour", colour
    if t == 4:
        order, core = peel(g, 2, verts)
        if core:
            h, old = g.induced_subgraph(core)
            parts = _k4_in_component(h, set(components(h)[0]))
            return "model", [[old[v] for v in p] for p in parts]
        colour: dict[int, int] = {}
        for v in reversed(order):
            used = {colour[w] for w in g.adj[v] if w in colour}
            colour[v] = min({0, 1, 2} - used)
        return "colour", colour
    shift = palette_bound(t - 1)
    colour = {}
    for comp in components(g, verts):
        layers = bfs_layers(g, comp[0], within=comp)
        colour[comp[0]] = 0
        for i in range(1, len(layers)):
            kind, sub = _com(g, set(layers[i]), t - 1)
            if kind == "model":
                ball = [v for layer in layers[:i] for v in layer]
                return "model", [ball] + sub
            offset = shift if i % 2 else 0
            for v, c in sub.items():
                colour[v] = c + offset
    return "colour", colour


def colour_or_model(g: Graph, t: int) -> DichotomyResult:
    """Either a proper colouring with at most :func:`palette_bound` colours or a dominating K_t-model.

    Layers of a breadth-first search are handled recursively at order t-1;
    a model inside one layer extends by the ball of all earlier layers.
    """
    if t < 2:
        raise PreconditionError("t must be at least 2")
    kind, payload = _com(g, set(range(g.n)), t)
    if kind == "model":
        return DichotomyResult(t, model=checked(g, CliqueModel.of(payload)))
    colouring = checked_colouring(g, Colouring.from_list(payload[v] for v in range(g.n)))
    if colouring.palette_size > palette_bound(t):
        raise InvalidCertificate("colouring exceeds the palette bound")
    return DichotomyResult(t, colouring=colouring)


# --- connected dominating sets and dense graphs --------------------------------


@dataclass(frozen=True)
class DominatingSetResult:
    vertices: tuple[int, ...]
    method: str  # "random" or "greedy"
    attempts: int
    size_bound: float | None  # guaranteed bound when the random method ran

    def to_dict(self) -> dict[str, Any]:
        return {
            "vertices": list(self.vertices),
            "method": self.method,
            "attempts": self.attempts,
            "size_bound": self.size_bound,
            "bound_guaranteed": self.size_bound is not None,
        }


MAX_SAMPLING_ATTEMPTS = 64


def _greedy_dominating(g: Graph, verts: list[int]) -> set[int]:
    vset = set(verts)
    undominated = set(verts)
    chosen: set[int] = set()
    while undominated:
        best = max(
            verts,
            key=lambda v: (len(undominated & (g.sets[v] | {v})), -v),
        )
        chosen.add(best)
        undominated -= g.sets[best] | {best}
    return chosen & vset


def _connectify(g: Graph, verts: set[int], a: set[int]) -> set[int]:
    """Join components of g[a] through at most two outside vertices per merge."""
    a = set(a)
    while True:
        comps = components(g, a)
        if len(comps) <= 1:
            return a
        start = set(comps[0])
        parent = {v: -1 for v in start}
        frontier = sorted(start)
        hit = None
        while frontier and hit is None:
            nxt = []
            for v in frontier:
                for w in g.adj[v]:
                    if w in verts and w not in parent:
                        parent[w] = v
                        if w in a:
                            hit = w
                            break
                        nxt.append(w)
                if hit is not None:
                    break
            frontier = nxt
        if hit is None:
            raise PreconditionError("graph is not connected")
        v = parent[hit]
        while v not in start:
            a.add(v)
            v = parent[v]


def _trim(g: Graph, verts: set[int], a: set[int]) -> set[int]:
    for v in sorted(a, reverse=True):
        if len(a) > 1:
            smaller = a - {v}
            if is_dominating_set(g, smaller, verts) and is_connected_set(g, smaller):
                a = smaller
    return a


def _connected_dominating(g: Graph, verts: list[int], rng: np.random.Generator) -> DominatingSetResult:
    n = len(verts)
    vset = set(verts)
    if n == 1:
        return DominatingSetResult((verts[0],), "random", 0, 1.0)
    delta = min(sum(1 for w in g.adj[v] if w in vset) for v in verts)
    chosen: set[int] | None = None
    attempts = 0
    bound = None
    if delta > math.log(2 * n):
        p = math.log(2 * n) / delta
        for attempts in range(1, MAX_SAMPLING_ATTEMPTS + 1):
            draw = rng.random(n) < p
            sample = {v for v, keep in zip(verts, draw) if keep}
            if sample and len(sample) <= 2 * p * n and is_dominating_set(g, sample, verts):
                chosen = sample
                bound = 3 * (2 * p * n) - 2
                break
    method = "random"
    if chosen is None:
        chosen = _greedy_dominating(g, verts)
        method = "greedy"
    a = _trim(g, vset, _connectify(g, vset, chosen))
    return DominatingSetResult(tuple(sorted(a)), method, attempts, bound)


def find_connected_dominating_set(g: Graph, seed: int) -> DominatingSetResult:
    """Connected dominating set by random sampling then path joining.

    When min degree exceeds ln(2n) each vertex is kept with probability
    ln(2n)/delta until the sample dominates with at most 2pn vertices (at
    most 64 tries); joining components then costs at most 2 vertices per
    merge, so the result has at most 3*2pn - 2 vertices.  Otherwise a greedy
    dominating set is used and no size bound is claimed.
    """
    if g.n == 0 or not is_connected(g):
        raise PreconditionError("graph must be connected and non-empty")
    return _connected_dominating(g, list(range(g.n)), np.random.default_rng(seed))


def dense_threshold(n: int, t: int, c: float) -> float:
    return c * n + 6 / c * t * math.log(2 * n)


def construct_dense(g: Graph, t: int, c: float, seed: int = 0) -> CliqueModel:
    """Dominating K_t-model in a graph of minimum degree >= cn + 6 t ln(2n) / c.

    Peels off a connected dominating set of the current component t-1 times;
    the leftover component supplies the last part.
    """
    n = g.n
    if not 0 < c < 1:
        raise PreconditionError("c must lie in (0, 1)")
    if t < 1:
        raise PreconditionError("t must be positive")
    if n == 0 or c * n <= math.log(2 * n):
        raise PreconditionError(f"need cn > ln(2n): cn={c * n:.3f}, ln(2n)={math.log(2 * max(n, 1)):.3f}")
    threshold = dense_threshold(n, t, c)
    if g.min_degree() < threshold:
        raise PreconditionError(f"minimum degree {g.min_degree()} < threshold {threshold:.3f}")
    rng = np.random.default_rng(seed)
    alive = set(range(n))
    parts: list[tuple[int, ...]] = []
    for k in range(t, 0, -1):
        if not alive:
            raise InvalidCertificate("ran out of vertices before reaching order t")
        comp = components(g, alive)[0]
        if k == 1:
            parts.append((comp[0],))
            break
        found = _connected_dominating(g, comp, rng)
        parts.append(found.vertices)
        alive = set(comp) - set(found.vertices)
    return checked(g, CliqueModel.of(parts))


def linear_min_degree_model(g: Graph, t: int, c: float, seed: int = 0) -> CliqueModel:
    """Dominating K_t-model from minimum degree 2cn when n >= t log2(t) / c^2.

    Runs :func:`construct_dense` once 2cn >= cn + 6 t ln(2n) / c holds; the
    asymptotic argument guarantees that only for very large n and t, so the
    unreachable regime is reported as a precondition failure.
    """
    n = g.n
    if t < 2 or not 0 < c < 1:
        raise PreconditionError("need t >= 2 and c in (0, 1)")
    if n < t * math.log2(t) / c**2:
        raise PreconditionError(f"need n >= t log2(t) / c^2 = {t * math.log2(t) / c ** 2:.1f}")
    if g.min_degree() < 2 * c * n:
        raise PreconditionError(f"minimum degree {g.min_degree()} < 2cn = {2 * c * n:.3f}")
    if 2 * c * n < dense_threshold(n, t, c) or c * n <= math.log(2 * n):
        raise PreconditionError(
            f"regime unreachable at n={n}: 2cn={2 * c * n:.1f} < cn + 6t ln(2n)/c = {dense_threshold(n, t, c):.1f}"
        )
    return construct_dense(g, t, c, seed)


# --- pseudo models ----------------------------------------------------------------


@dataclass(frozen=True)
class SampledPseudoModel:
    model: CliqueModel
    attempts: int

    def to_dict(self) -> dict[str, Any]:
        return {"certificate": self.model.to_dict(), "attempts": self.attempts}


def regular_pseudo_model(
    g: Graph, t: int, seed: int, max_attempts: int = 100, near_regular: bool = False
) -> SampledPseudoModel:
    """Random partition into t parts in which every vertex sees every part.

    Requires a d-regular graph with d >= 4 t ln t; with ``near_regular`` the
    degrees may vary by a factor of at most 1.1 and d is the minimum degree.
    """
    if t < 2:
        raise PreconditionError("t must be at least 2")
    if g.n == 0:
        raise PreconditionError("graph is empty")
    d, top = g.min_degree(), g.max_degree()
    if near_regular:
        if d == 0 or top > 1.1 * d:
            raise PreconditionError(f"degrees {d}..{top} are not within a factor 1.1")
    elif d != top:
        raise PreconditionError(f"graph is not regular (degrees {d}..{top})")
    need = 4 * t * math.log(t)
    if d < need:
        raise PreconditionError(f"degree {d} < 4 t ln t = {need:.3f}")
    src = np.repeat(np.arange(g.n), [len(row) for row in g.adj])
    dst = np.fromiter((w for row in g.adj for w in row), dtype=np.int64, count=len(src))
    rng = np.random.default_rng(seed)
    for attempt in range(1, max_attempts + 1):
        labels = rng.integers(t, size=g.n)
        seen = np.zeros((g.n, t), dtype=bool)
        seen[src, labels[dst]] = True
        if seen.all():
            parts = [np.flatnonzero(labels == k).tolist() for k in range(t)]
            return SampledPseudoModel(checked(g, CliqueModel.of(parts, PSEUDO)), attempt)
    raise SamplingFailed(f"no good partition in {max_attempts} attempts")


def min_sum_colouring_pseudo_model(g: Graph) -> tuple[Colouring, CliqueModel]:
    """Locally colour-sum-minimal colouring and its classes as a pseudo-dominating model.

    Starting from a greedy colouring in degeneracy order, vertices move to
    the smallest colour free in their neighbourhood until none can move.  At
    that point each vertex of colour j sees every colour below j.
    """
    if g.n == 0:
        raise PreconditionError("graph is empty")
    colour = greedy_colouring(g, reversed(degeneracy_order(g)))
    changed = True
    while changed:
        changed = False
        for v in range(g.n):
            used = {colour[w] for w in g.adj[v]}
            c = 0
            while c in used:
                c += 1
            if c < colour[v]:
                colour[v] = c
                changed = True
    colouring = checked_colouring(g, Colouring.from_list(colour))
    model = checked(g, CliqueModel.of(colouring.classes(), PSEUDO))
    return colouring, model


# --- edge bound --------------------------------------------------------------------


@dataclass(frozen=True)
class EdgeBoundVerdict:
    edges: int
    bound: int
    model: CliqueModel | None = None

    @property
    def satisfied(self) -> bool:
        return self.model is None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"edges": self.edges, "bound": self.bound, "satisfied": self.satisfied}
        if self.model is not None:
            out["certificate"] = self.model.to_dict()
        return out


def k4_from_core(g: Graph) -> CliqueModel | None:
    """Dominating K4-model from the 3-core of g, or None if degree-2 peeling empties g."""
    _, core = peel(g, 2)
    if not core:
        return None
    h, old = g.induced_subgraph(core)
    parts = _k4_in_component(h, set(components(h)[0]))
    return checked(g, CliqueModel.of([[old[v] for v in p] for p in parts]))


def edge_bound_check(g: Graph) -> EdgeBoundVerdict:
    """More than 2n-3 edges forces a dominating K4-model; return it as a witness."""
    if g.n < 2:
        raise PreconditionError("need at least 2 vertices")
    bound = 2 * g.n - 3
    if g.m <= bound:
        return EdgeBoundVerdict(g.m, bound)
    model = k4_from_core(g)
    if model is None:
        raise InvalidCertificate("graph with m > 2n-3 peeled to nothing")
    return EdgeBoundVerdict(g.m, bound, model)
