"""Exact dominating Hadwiger numbers and clique-minor tests for small graphs.

Vertex sets are int bitmasks throughout.  The dominating search uses the
recursion: ``G[S]`` has a dominating K_k-model iff some connected ``T`` in
``S`` has ``N(T) & S`` carrying a dominating K_{k-1}-model.  Orders 1, 2, 3
are settled directly (vertex, edge, cycle), which also realises the
singleton-tail normal form: the last two parts are always single vertices.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Any, Iterator

from .graph import Graph
from .models import DOMINATING, PLAIN, PSEUDO, CliqueModel, checked, degree_path


@dataclass
class SearchBudget:
    max_vertices: int = 14
    max_nodes: int = 20_000_000
    time_limit: float = 60.0

    def __post_init__(self) -> None:
        if self.max_vertices <= 0 or self.max_nodes <= 0 or self.time_limit <= 0:
            raise ValueError("budget fields must be positive")
        if self.max_vertices > 64:
            raise ValueError("exact search supports at most 64 vertices")


def default_budget(kind: str = "domhad") -> SearchBudget:
    return SearchBudget(max_vertices=14 if kind == "domhad" else 10)


class BudgetExceeded(Exception):
    pass


@dataclass(frozen=True)
class SearchResult:
    t: int
    certificate: CliqueModel
    exact: bool
    nodes: int = field(default=0, compare=False)

    @property
    def status(self) -> str:
        return "exact" if self.exact else "lower-bound"

    def to_dict(self) -> dict[str, Any]:
        return {"t": self.t, "status": self.status, "certificate": self.certificate.to_dict()}


@dataclass(frozen=True)
class MinorResult:
    status: str  # "found", "absent" or "unknown"
    t: int
    certificate: CliqueModel | None = None

    @property
    def found(self) -> bool | None:
        return {"found": True, "absent": False}.get(self.status)

    def __bool__(self) -> bool:
        return self.status == "found"


def bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices) -> int:
    out = 0
    for v in vertices:
        out |= 1 << v
    return out


def connected_subsets(masks: tuple[int, ...], within: int) -> Iterator[tuple[int, int]]:
    """Yield ``(T, N)`` for every connected non-empty ``T`` inside ``within``.

    ``N`` is the union of the neighbourhoods of T's vertices (not clipped).
    Each set is produced exactly once: sets are grown from their minimum
    vertex (the anchor) using only larger vertices, and a candidate skipped
    at one branch stays excluded from its later siblings.
    """
    rest = within
    while rest:
        low = rest & -rest
        rest ^= low
        v = low.bit_length() - 1
        yield from _grow(masks, low, masks[v] & rest, 0, rest, masks[v])


def _grow(masks, cur, ext, excl, allowed, nb):
    yield cur, nb
    while ext:
        low = ext & -ext
        ext ^= low
        u = low.bit_length() - 1
        nxt = (ext | (masks[u] & allowed)) & ~(cur | excl | low)
        yield from _grow(masks, cur | low, nxt, excl, allowed, nb | masks[u])
        excl |= low


class _Search:
    def __init__(self, g: Graph, budget: SearchBudget):
        self.masks = g.masks
        self.budget = budget
        self.nodes = 0
        self.deadline = time.monotonic() + budget.time_limit
        self.memo: dict[tuple[int, int], int] = {}

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise BudgetExceeded
        if not self.nodes & 0xFFF and time.monotonic() > self.deadline:
            raise BudgetExceeded

    def find_cycle(self, s: int) -> list[int] | None:
        masks = self.masks
        parent: dict[int, int] = {}
        depth: dict[int, int] = {}
        for root in bits(s):
            if root in parent:
                continue
            parent[root] = -1
            depth[root] = 0
            stack = [(root, bits(masks[root] & s))]
            while stack:
                v, it = stack[-1]
                for w in it:
                    if w == parent[v]:
                        continue
                    if w in parent:
                        if depth[w] < depth[v]:
                            cyc = [v]
                            while cyc[-1] != w:
                                cyc.append(parent[cyc[-1]])
                            return cyc
                        continue
                    parent[w] = v
                    depth[w] = depth[v] + 1
                    stack.append((w, bits(masks[w] & s)))
                    break
                else:
                    stack.pop()
        return None


class _DomSearch(_Search):
    """Memoised decision procedure for dominating (or pseudo-dominating) models."""

    def __init__(self, g: Graph, budget: SearchBudget, pseudo: bool = False):
        super().__init__(g, budget)
        self.pseudo = pseudo

    def solve(self, s: int, k: int) -> int:
        """Return a first part T (mask) of a model of order k in G[s], or 0."""
        if k <= 0:
            raise ValueError("order must be positive")
        if s.bit_count() < k:
            return 0
        if k == 1:
            return s if self.pseudo else s & -s
        key = (s, k)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        for smaller in range(2, k):
            if self.memo.get((s, smaller)) == 0:
                self.memo[key] = 0
                return 0
        result = self._solve(s, k)
        self.memo[key] = result
        return result

    def _solve(self, s: int, k: int) -> int:
        masks = self.masks
        if k == 2:
            for v in bits(s):
                nb = masks[v] & s
                if nb:
                    if self.pseudo:
                        return s & ~(nb & -nb)
                    return 1 << v
            return 0
        if k == 3 and not self.pseudo:
            cyc = self.find_cycle(s)
            if cyc is None:
                return 0
            # (C - v - w, {v}, {w}) for a cycle edge vw
            return to_mask(cyc[2:])
        if not self._degree_screen(s, k):
            return 0
        if self.pseudo:
            return self._solve_pseudo(s, k)
        for t_mask, nb in connected_subsets(masks, s):
            self.tick()
            rest = nb & s & ~t_mask
            if rest.bit_count() >= k - 1 and self.solve(rest, k - 1):
                return t_mask
        return 0

    def _solve_pseudo(self, s: int, k: int) -> int:
        # WLOG the first part is everything not used later: T = s - R
        masks = self.masks
        r = (s - 1) & s
        while r:
            self.tick()
            if r.bit_count() >= k - 1:
                t_mask = s & ~r
                if all(masks[v] & t_mask for v in bits(r)) and self.solve(r, k - 1):
                    return t_mask
            r = (r - 1) & s
        return 0

    def _degree_screen(self, s: int, k: int) -> bool:
        # the vertices of the last two parts have degree >= k-1 and are adjacent
        masks = self.masks
        high = 0
        for v in bits(s):
            if (masks[v] & s).bit_count() >= k - 1:
                high |= 1 << v
        return any(masks[v] & high for v in bits(high))

    def model(self, s: int, k: int) -> list[int]:
        parts = []
        while k >= 1:
            t_mask = self.solve(s, k)
            if not t_mask:
                raise AssertionError("memo inconsistency while rebuilding certificate")
            parts.append(t_mask)
            if k == 1:
                break
            nb = 0
            for v in bits(t_mask):
                nb |= self.masks[v]
            s = nb & s & ~t_mask
            k -= 1
        return parts


def _check_size(g: Graph, budget: SearchBudget) -> None:
    if g.n == 0:
        raise ValueError("graph must be non-empty")
    if g.n > budget.max_vertices:
        raise ValueError(f"graph has {g.n} vertices; budget allows {budget.max_vertices}")


def _run(g: Graph, budget: SearchBudget, pseudo: bool, upper: int) -> SearchResult:
    search = _DomSearch(g, budget, pseudo=pseudo)
    full = (1 << g.n) - 1
    best = 1
    exact = True
    try:
        for k in range(2, upper + 1):
            if not search.solve(full, k):
                break
            best = k
    except BudgetExceeded:
        exact = False
    flavour = PSEUDO if pseudo else DOMINATING
    parts = [list(bits(m)) for m in search.model(full, best)]
    model = checked(g, CliqueModel.of(parts, flavour))
    return SearchResult(best, model, exact, search.nodes)


def upper_bound(g: Graph) -> int:
    """min(n, max degree + 1), tightened by the exact degree-path test for n <= 20."""
    ub = min(g.n, g.max_degree() + 1)
    if g.n <= 20:
        while ub >= 4 and degree_path(g, ub) is None:
            ub -= 1
    return ub


def exact_domhad(g: Graph, budget: SearchBudget | None = None) -> SearchResult:
    """Largest t with a dominating K_t-model, with a verified certificate.

    If the budget runs out the result has ``exact=False`` and ``t`` is only a
    certified lower bound.
    """
    budget = budget or default_budget("domhad")
    _check_size(g, budget)
    return _run(g, budget, pseudo=False, upper=upper_bound(g))


def exact_pseudo_domhad(g: Graph, budget: SearchBudget | None = None) -> SearchResult:
    """As :func:`exact_domhad` for pseudo-dominating models (parts need not be connected).

    Certificates partition V(g): the first part absorbs every unused vertex.
    """
    budget = budget or default_budget("pseudo")
    _check_size(g, budget)
    return _run(g, budget, pseudo=True, upper=min(g.n, g.max_degree() + 1))


def has_dominating_model(g: Graph, t: int, budget: SearchBudget | None = None) -> bool | None:
    """Decide whether g has a dominating K_t-model; None if the budget ran out."""
    if t <= 1:
        _check_size(g, budget or default_budget("domhad"))
        return True
    res = find_dominating_model(g, t, budget)
    return res if res is None else bool(res.found)


def find_dominating_model(g: Graph, t: int, budget: SearchBudget | None = None) -> MinorResult | None:
    """Dominating K_t-model for a fixed t: found (with certificate) or absent; None on budget."""
    budget = budget or default_budget("domhad")
    _check_size(g, budget)
    if t < 1:
        raise ValueError("t must be positive")
    if t > upper_bound(g):
        return MinorResult("absent", t)
    search = _DomSearch(g, budget)
    full = (1 << g.n) - 1
    try:
        if not search.solve(full, t):
            return MinorResult("absent", t)
    except BudgetExceeded:
        return None
    parts = [list(bits(m)) for m in search.model(full, t)]
    return MinorResult("found", t, checked(g, CliqueModel.of(parts, DOMINATING)))


def has_clique_minor(g: Graph, t: int, budget: SearchBudget | None = None) -> MinorResult:
    """Exact K_t-minor test by branch-set search, with a plain-model certificate.

    Branch sets are chosen in increasing order of their minimum vertex; each
    new set must be connected and touch every earlier set.
    """
    budget = budget or default_budget("minor")
    _check_size(g, budget)
    if t < 1:
        raise ValueError("t must be positive")
    if t > g.n or g.m < t * (t - 1) // 2:
        return MinorResult("absent", t)
    search = _Search(g, budget)
    masks = g.masks
    full = (1 << g.n) - 1

    def extend(parts: list[int], pool: int) -> list[int] | None:
        if len(parts) == t:
            return parts
        need = t - len(parts)
        for t_mask, nb in connected_subsets(masks, pool):
            search.tick()
            if all(nb & p for p in parts):
                after = pool & ~_upto(t_mask)
                if need == 1 or after.bit_count() >= need - 1:
                    found = extend(parts + [t_mask], after & ~t_mask)
                    if found is not None:
                        return found
        return None

    try:
        found = extend([], full)
    except BudgetExceeded:
        return MinorResult("unknown", t)
    if found is None:
        return MinorResult("absent", t)
    model = checked(g, CliqueModel.of([list(bits(m)) for m in found], PLAIN))
    return MinorResult("found", t, model)


def _upto(mask: int) -> int:
    # all bits up to and including the lowest set bit of mask
    low = mask & -mask
    return (low << 1) - 1


def hadwiger_number(g: Graph, budget: SearchBudget | None = None) -> int:
    t = 1
    while True:
        res = has_clique_minor(g, t + 1, budget)
        if res.status == "unknown":
            raise BudgetExceeded(f"budget exhausted deciding K_{t + 1} minor")
        if not res:
            return t
        t += 1
