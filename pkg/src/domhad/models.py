"""Clique models and their verifiers.

A model is an ordered tuple of disjoint vertex sets ``(T_1, ..., T_t)``.  Three
flavours are supported:

``plain``
    parts connected, every pair of parts joined by an edge (a K_t minor).
``dominating``
    parts connected, and for ``i < j`` every vertex of ``T_j`` has a
    neighbour in ``T_i``.
``pseudo-dominating``
    the dominating condition without connectivity of the parts.

Part indices in verdicts and witnesses are 0-based.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Sequence

from .graph import Graph, GraphError, is_connected_set

PLAIN = "plain"
DOMINATING = "dominating"
PSEUDO = "pseudo-dominating"
FLAVOURS = (PLAIN, DOMINATING, PSEUDO)


@dataclass(frozen=True)
class CliqueModel:
    parts: tuple[tuple[int, ...], ...]
    flavour: str = DOMINATING

    def __post_init__(self) -> None:
        if self.flavour not in FLAVOURS:
            raise ValueError(f"unknown flavour {self.flavour!r}")
        object.__setattr__(self, "parts", tuple(tuple(sorted(p)) for p in self.parts))

    @classmethod
    def of(cls, parts: Iterable[Iterable[int]], flavour: str = DOMINATING) -> "CliqueModel":
        return cls(tuple(tuple(p) for p in parts), flavour)

    @property
    def t(self) -> int:
        return len(self.parts)

    def vertices(self) -> set[int]:
        return {v for part in self.parts for v in part}

    def with_flavour(self, flavour: str) -> "CliqueModel":
        return CliqueModel(self.parts, flavour)

    def to_dict(self) -> dict[str, Any]:
        return {"flavour": self.flavour, "parts": [list(p) for p in self.parts]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CliqueModel":
        try:
            return cls.of(data["parts"], data.get("flavour", DOMINATING))
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed model JSON: {exc}") from None

    @classmethod
    def from_json(cls, text: str) -> "CliqueModel":
        return cls.from_dict(json.loads(text))


@dataclass(frozen=True)
class Verdict:
    valid: bool
    reason: str = ""
    # (i, j, vertex) for domination failures; vertex is None for plain adjacency failures
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.valid

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"valid": self.valid}
        if not self.valid:
            out["reason"] = self.reason
            out["witness"] = list(self.witness) if self.witness is not None else None
        return out


VALID = Verdict(True)


def verify_model(g: Graph, model: CliqueModel) -> Verdict:
    """Check ``model`` against its flavour's definition in ``g``.

    Returns the first violation found: structural problems first (empty or
    overlapping parts, disconnected parts), then the first failing pair
    ``(i, j)`` in lexicographic order.  Raises :class:`GraphError` for
    out-of-range vertices.
    """
    parts = model.parts
    for part in parts:
        for v in part:
            if not 0 <= v < g.n:
                raise GraphError(f"model vertex {v} not in graph with n={g.n}")
    owner: dict[int, int] = {}
    for i, part in enumerate(parts):
        if not part:
            return Verdict(False, f"part {i} is empty", ("empty", i))
        for v in part:
            if v in owner:
                return Verdict(False, f"vertex {v} lies in parts {owner[v]} and {i}", ("overlap", owner[v], i, v))
            owner[v] = i
    if model.flavour != PSEUDO:
        for i, part in enumerate(parts):
            if not is_connected_set(g, part):
                return Verdict(False, f"part {i} is not connected", ("disconnected", i))
    sets = [frozenset(p) for p in parts]
    adj = g.sets
    for j in range(len(parts)):
        for i in range(j):
            if model.flavour == PLAIN:
                if not any(not sets[i].isdisjoint(adj[v]) for v in parts[j]):
                    return Verdict(False, f"no edge between parts {i} and {j}", (i, j, None))
            else:
                for v in parts[j]:
                    if sets[i].isdisjoint(adj[v]):
                        return Verdict(
                            False, f"vertex {v} of part {j} has no neighbour in part {i}", (i, j, v)
                        )
    return VALID


def is_valid(g: Graph, model: CliqueModel) -> bool:
    return verify_model(g, model).valid


class InvalidCertificate(AssertionError):
    """An algorithm produced a model that fails verification (an implementation bug)."""


def checked(g: Graph, model: CliqueModel) -> CliqueModel:
    verdict = verify_model(g, model)
    if not verdict:
        raise InvalidCertificate(f"produced invalid {model.flavour} model: {verdict.reason}")
    return model


# --- degree-path refutation ---------------------------------------------------


@dataclass(frozen=True)
class DegreePathVerdict:
    possible: bool
    method: str
    path: tuple[int, ...] | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.possible

    def to_dict(self) -> dict[str, Any]:
        return {
            "possible": self.possible,
            "method": self.method,
            "path": list(self.path) if self.path is not None else None,
            "detail": self.detail,
        }


EXACT_PATH_LIMIT = 20


def max_degree_refutes(g: Graph, t: int) -> bool:
    """True when a maximum-degree count alone rules out a dominating K_t-model.

    The last part's vertex needs a neighbour in each of the t-1 earlier parts,
    so t <= max degree + 1.  (Also t <= n.)
    """
    return t > g.n or t > g.max_degree() + 1


def _threshold(t: int, i: int) -> int:
    # required degree of the i-th path vertex (1-based), the last needs t-1
    return t - 1 if i == t else i


def degree_path(g: Graph, t: int) -> tuple[int, ...] | None:
    """Find a path v_1..v_t with deg(v_t) >= t-1 and deg(v_i) >= i, or None.

    Exact (simple paths).  A polynomial walk-feasibility table prunes the
    depth-first search: no walk from (v, i) down to index 1 means no path.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if t == 1:
        return (0,) if g.n else None
    deg = [len(row) for row in g.adj]
    # walk[i][v]: a walk v = w_i, w_{i-1}, ..., w_1 meeting the thresholds exists
    walk = [None, [deg[v] >= _threshold(t, 1) for v in range(g.n)]]
    for i in range(2, t + 1):
        prev = walk[i - 1]
        need = _threshold(t, i)
        walk.append([deg[v] >= need and any(prev[w] for w in g.adj[v]) for v in range(g.n)])

    def extend(v: int, i: int, used: int) -> list[int] | None:
        # v occupies index i; choose v_{i-1}
        if i == 1:
            return [v]
        for w in g.adj[v]:
            if walk[i - 1][w] and not used >> w & 1:
                rest = extend(w, i - 1, used | 1 << w)
                if rest is not None:
                    return rest + [v]
        return None

    for v in range(g.n):
        if walk[t][v]:
            found = extend(v, t, 1 << v)
            if found is not None:
                return tuple(found)
    return None


def check_degree_path(g: Graph, t: int, exact: bool | None = None) -> DegreePathVerdict:
    """Necessary-condition test for a dominating K_t-model.

    ``possible`` only means the test failed to refute.  The exact path search
    runs by default when ``n <= 20``; the maximum-degree bound always runs.
    """
    if t < 1:
        raise ValueError("t must be positive")
    if max_degree_refutes(g, t):
        return DegreePathVerdict(
            False, "max-degree", detail=f"t={t} exceeds min(n, max degree + 1)={min(g.n, g.max_degree() + 1)}"
        )
    if exact is None:
        exact = g.n <= EXACT_PATH_LIMIT
    if not exact:
        return DegreePathVerdict(True, "max-degree")
    found = degree_path(g, t)
    if found is None:
        return DegreePathVerdict(False, "degree-path", detail=f"no path of {t} vertices meets the degree thresholds")
    return DegreePathVerdict(True, "degree-path", path=found)


def parts_from_labels(labels: Sequence[int], t: int) -> list[list[int]]:
    parts: list[list[int]] = [[] for _ in range(t)]
    for v, k in enumerate(labels):
        if 0 <= k < t:
            parts[k].append(v)
    return parts


__all__ = [
    "CliqueModel",
    "DOMINATING",
    "DegreePathVerdict",
    "FLAVOURS",
    "InvalidCertificate",
    "PLAIN",
    "PSEUDO",
    "Verdict",
    "check_degree_path",
    "checked",
    "degree_path",
    "is_valid",
    "max_degree_refutes",
    "parts_from_labels",
    "verify_model",
]
