"""Dynamic graph model: graphs, updates, sequences, adjacency relations.

Node identifiers are opaque non-negative integers.  Edge keys are
canonically ordered pairs ``(min(u, v), max(u, v))`` with positive
integer weights; self-loops and multi-edges are rejected.  A weight
change is modeled as delete-then-insert of the same key within one
update, so a graph never stores two weights for one edge.

Within a step, deletions apply before insertions:
``V_t = (V_{t-1} \\ v_del) | v_ins`` and likewise for edges.  Deleting
a node requires all of its incident edges to be listed in ``e_del``.

All public types are immutable by convention; operations return new
objects and are safe to share read-only across threads.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping

from .errors import InvalidUpdate, LengthMismatch

EdgeKey = tuple[int, int]


def edge_key(u: int, v: int) -> EdgeKey:
    """Canonical unordered key for the edge {u, v}."""
    if u == v:
        raise InvalidUpdate(f"self-loop on node {u}")
    return (u, v) if u < v else (v, u)


class Graph:
    """An undirected, integer-weighted graph.

    ``nodes`` is a frozenset of node ids; ``edges`` maps canonical edge
    keys to weights in {1, ..., W}.
    """

    __slots__ = ("nodes", "edges")

    def __init__(
        self,
        nodes: Iterable[int] = (),
        edges: Mapping[EdgeKey, int] | None = None,
        *,
        _validate: bool = True,
    ) -> None:
        self.nodes: frozenset[int] = frozenset(nodes)
        self.edges: dict[EdgeKey, int] = dict(edges or {})
        if _validate:
            self._validate()

    def _validate(self) -> None:
        for (u, v), w in self.edges.items():
            if u >= v:
                raise InvalidUpdate(f"edge key ({u},{v}) not canonical")
            if u not in self.nodes or v not in self.nodes:
                raise InvalidUpdate(f"edge ({u},{v}) has an endpoint outside the node set")
            if not isinstance(w, int) or w < 1:
                raise InvalidUpdate(f"edge ({u},{v}) weight {w!r} is not a positive integer")

    @classmethod
    def from_edges(
        cls,
        edges: Iterable[tuple[int, int] | tuple[int, int, int]],
        extra_nodes: Iterable[int] = (),
    ) -> "Graph":
        """Build a graph from (u, v) or (u, v, w) tuples; nodes are implied."""
        emap: dict[EdgeKey, int] = {}
        nodes = set(extra_nodes)
        for e in edges:
            u, v = e[0], e[1]
            w = e[2] if len(e) == 3 else 1
            emap[edge_key(u, v)] = w
            nodes.add(u)
            nodes.add(v)
        return cls(nodes, emap)

    @property
    def n(self) -> int:
        return len(self.nodes)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for k in self.edges if v in k)

    def degrees(self) -> dict[int, int]:
        deg = dict.fromkeys(self.nodes, 0)
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> dict[int, dict[int, int]]:
        """Neighbor map with edge weights; isolated nodes map to {}."""
        adj: dict[int, dict[int, int]] = {v: {} for v in self.nodes}
        for (u, v), w in self.edges.items():
            adj[u][v] = w
            adj[v][u] = w
        return adj

    def max_weight(self) -> int:
        return max(self.edges.values(), default=1)

    def copy(self) -> "Graph":
        return Graph(self.nodes, self.edges, _validate=False)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.nodes == other.nodes and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.nodes, frozenset(self.edges.items())))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class Update:
    """One time step: node/edge deletions followed by insertions."""

    __slots__ = ("v_ins", "v_del", "e_ins", "e_del")

    def __init__(
        self,
        v_ins: Iterable[int] = (),
        v_del: Iterable[int] = (),
        e_ins: Mapping[EdgeKey, int] | Iterable[tuple[int, int, int]] = (),
        e_del: Iterable[EdgeKey] = (),
    ) -> None:
        self.v_ins: frozenset[int] = frozenset(v_ins)
        self.v_del: frozenset[int] = frozenset(v_del)
        if isinstance(e_ins, Mapping):
            emap = {edge_key(u, v): w for (u, v), w in e_ins.items()}
        else:
            emap = {edge_key(u, v): w for u, v, w in e_ins}
        self.e_ins: dict[EdgeKey, int] = emap
        self.e_del: frozenset[EdgeKey] = frozenset(edge_key(u, v) for u, v in e_del)
        if self.v_ins & self.v_del:
            raise InvalidUpdate("a node cannot be inserted and deleted in the same step")
        for k, w in self.e_ins.items():
            if not isinstance(w, int) or w < 1:
                raise InvalidUpdate(f"insert of edge {k} with non-positive weight {w!r}")

    @property
    def is_empty(self) -> bool:
        return not (self.v_ins or self.v_del or self.e_ins or self.e_del)

    @property
    def has_deletions(self) -> bool:
        return bool(self.v_del or self.e_del)

    @property
    def has_insertions(self) -> bool:
        return bool(self.v_ins or self.e_ins)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Update):
            return NotImplemented
        return (
            self.v_ins == other.v_ins
            and self.v_del == other.v_del
            and self.e_ins == other.e_ins
            and self.e_del == other.e_del
        )

    def __hash__(self) -> int:
        return hash((self.v_ins, self.v_del, frozenset(self.e_ins.items()), self.e_del))

    def __repr__(self) -> str:
        parts = []
        if self.v_ins:
            parts.append(f"+v{sorted(self.v_ins)}")
        if self.v_del:
            parts.append(f"-v{sorted(self.v_del)}")
        if self.e_ins:
            parts.append(f"+e{sorted(self.e_ins)}")
        if self.e_del:
            parts.append(f"-e{sorted(self.e_del)}")
        return "Update(" + " ".join(parts) + ")"


def apply_update(g: Graph, u: Update) -> Graph:
    """Apply one update, validating it against the current graph."""
    nodes = set(g.nodes)
    edges = dict(g.edges)

    if not u.v_del <= g.nodes:
        raise InvalidUpdate(f"deleting absent nodes {sorted(u.v_del - g.nodes)}")
    for k in u.e_del:
        if k not in edges:
            raise InvalidUpdate(f"deleting absent edge {k}")
    # a deleted node must shed every incident edge in the same step
    for v in u.v_del:
        for k in edges:
            if v in k and k not in u.e_del:
                raise InvalidUpdate(f"node {v} deleted while edge {k} survives")

    for k in u.e_del:
        del edges[k]
    nodes -= u.v_del

    if u.v_ins & nodes:
        raise InvalidUpdate(f"inserting already-present nodes {sorted(u.v_ins & nodes)}")
    nodes |= u.v_ins
    for k, w in u.e_ins.items():
        if k in edges:
            raise InvalidUpdate(f"inserting already-present edge {k}")
        if k[0] not in nodes or k[1] not in nodes:
            raise InvalidUpdate(f"inserting edge {k} with an absent endpoint")
        edges[k] = w

    return Graph(nodes, edges, _validate=False)


class SequenceKind(str, enum.Enum):
    INCREMENTAL = "incremental"
    DECREMENTAL = "decremental"
    FULLY_DYNAMIC = "fully-dynamic"


class GraphSequence:
    """An initial graph plus an ordered list of T updates."""

    __slots__ = ("initial", "updates")

    def __init__(self, initial: Graph, updates: Iterable[Update]) -> None:
        self.initial = initial
        self.updates: tuple[Update, ...] = tuple(updates)

    @property
    def T(self) -> int:
        return len(self.updates)

    @property
    def kind(self) -> SequenceKind:
        if all(not u.has_deletions for u in self.updates):
            return SequenceKind.INCREMENTAL
        if all(not u.has_insertions for u in self.updates):
            return SequenceKind.DECREMENTAL
        return SequenceKind.FULLY_DYNAMIC

    def materialize(self) -> list[Graph]:
        """Graphs G_1..G_T; raises InvalidUpdate with the offending index."""
        out: list[Graph] = []
        g = self.initial
        for t, u in enumerate(self.updates, start=1):
            try:
                g = apply_update(g, u)
            except InvalidUpdate as exc:
                raise InvalidUpdate(f"at t={t}: {exc}") from exc
            out.append(g)
        return out

    def iter_graphs(self) -> Iterator[Graph]:
        """Yield G_1..G_T as transient views sharing one mutable store.

        Each yielded Graph is overwritten by the next step; callers that
        need snapshots must use materialize().  This keeps long releases
        free of per-step copying.
        """
        nodes = set(self.initial.nodes)
        edges = dict(self.initial.edges)
        view = Graph.__new__(Graph)
        for t, u in enumerate(self.updates, start=1):
            if not u.v_del <= nodes:
                raise InvalidUpdate(f"at t={t}: deleting absent nodes")
            for k in u.e_del:
                if k not in edges:
                    raise InvalidUpdate(f"at t={t}: deleting absent edge {k}")
            if u.v_del:
                for k in edges:
                    if (k[0] in u.v_del or k[1] in u.v_del) and k not in u.e_del:
                        raise InvalidUpdate(f"at t={t}: deleted node keeps edge {k}")
            for k in u.e_del:
                del edges[k]
            nodes -= u.v_del
            if u.v_ins & nodes:
                raise InvalidUpdate(f"at t={t}: re-inserting present node")
            nodes |= u.v_ins
            for k, w in u.e_ins.items():
                if k in edges or k[0] not in nodes or k[1] not in nodes:
                    raise InvalidUpdate(f"at t={t}: invalid edge insert {k}")
                edges[k] = w
            view.nodes = nodes  # type: ignore[misc]
            view.edges = edges  # type: ignore[misc]
            yield view

    def validate(self) -> None:
        for _ in self.iter_graphs():
            pass

    def node_universe(self) -> frozenset[int]:
        """All node ids that are ever present."""
        ids = set(self.initial.nodes)
        for u in self.updates:
            ids |= u.v_ins
        return frozenset(ids)

    def max_degree(self) -> int:
        best = max(self.initial.degrees().values(), default=0)
        for g in self.iter_graphs():
            deg = g.degrees()
            if deg:
                best = max(best, max(deg.values()))
        return best

    def max_weight(self) -> int:
        w = self.initial.max_weight()
        for u in self.updates:
            for wt in u.e_ins.values():
                w = max(w, wt)
        return w

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GraphSequence):
            return NotImplemented
        return self.initial == other.initial and self.updates == other.updates

    def __repr__(self) -> str:
        return f"GraphSequence(T={self.T}, kind={self.kind.value})"


def reversed_sequence(seq: GraphSequence) -> GraphSequence:
    """Play a sequence backwards, swapping insertions and deletions.

    The reverse of an incremental sequence is decremental and vice
    versa; weights of re-inserted edges are recovered from the forward
    materialization.
    """
    graphs = [seq.initial] + seq.materialize()
    rev: list[Update] = []
    for t in range(seq.T, 0, -1):
        u = seq.updates[t - 1]
        before = graphs[t - 1]
        rev.append(
            Update(
                v_ins=u.v_del,
                v_del=u.v_ins,
                e_ins={k: before.edges[k] for k in u.e_del},
                e_del=set(u.e_ins),
            )
        )
    return GraphSequence(graphs[-1], rev)


class AdjacencyKind(str, enum.Enum):
    EDGE_EVENT = "edge-event"
    NODE_EVENT = "node-event"
    EDGE_USER = "edge-user"


@dataclass(frozen=True)
class AdjacencyWitness:
    kind: AdjacencyKind
    element: EdgeKey | int
    t_star: int | None = None


def _edge_event_witness(a: GraphSequence, b: GraphSequence) -> AdjacencyWitness | None:
    diffs = [t for t in range(a.T) if a.updates[t] != b.updates[t]]
    if len(diffs) != 1:
        return None
    t = diffs[0]
    ua, ub = a.updates[t], b.updates[t]
    if ua.v_ins != ub.v_ins or ua.v_del != ub.v_del:
        return None
    if ua.e_del == ub.e_del:
        extra = set(ua.e_ins.items()) ^ set(ub.e_ins.items())
        if len(extra) == 1:
            (key, _w), = extra
            # shared keys must agree exactly, so the lone differing key
            # appears in one sequence only
            if key not in ua.e_ins or key not in ub.e_ins:
                return AdjacencyWitness(AdjacencyKind.EDGE_EVENT, key, t + 1)
        return None
    if ua.e_ins == ub.e_ins:
        extra_del = ua.e_del ^ ub.e_del
        if len(extra_del) == 1:
            (key,) = extra_del
            return AdjacencyWitness(AdjacencyKind.EDGE_EVENT, key, t + 1)
    return None


def _node_event_witness(a: GraphSequence, b: GraphSequence) -> AdjacencyWitness | None:
    node_diffs = [
        t
        for t in range(a.T)
        if a.updates[t].v_ins != b.updates[t].v_ins
        or a.updates[t].v_del != b.updates[t].v_del
    ]
    if len(node_diffs) != 1:
        return None
    t = node_diffs[0]
    ua, ub = a.updates[t], b.updates[t]
    cand = (ua.v_ins ^ ub.v_ins) | (ua.v_del ^ ub.v_del)
    if len(cand) != 1:
        return None
    (v_star,) = cand
    # every edge-update difference, at any time, must be an edge
    # incident to v_star; filtering those edges must equalize the pair
    for t2 in range(a.T):
        u1, u2 = a.updates[t2], b.updates[t2]
        f1 = {k: w for k, w in u1.e_ins.items() if v_star not in k}
        f2 = {k: w for k, w in u2.e_ins.items() if v_star not in k}
        if f1 != f2:
            return None
        d1 = {k for k in u1.e_del if v_star not in k}
        d2 = {k for k in u2.e_del if v_star not in k}
        if d1 != d2:
            return None
    return AdjacencyWitness(AdjacencyKind.NODE_EVENT, v_star, t + 1)


def _edge_user_witness(a: GraphSequence, b: GraphSequence) -> AdjacencyWitness | None:
    touched: set[EdgeKey] = set()
    any_diff = False
    for t in range(a.T):
        ua, ub = a.updates[t], b.updates[t]
        if ua == ub:
            continue
        any_diff = True
        if ua.v_ins != ub.v_ins or ua.v_del != ub.v_del:
            return None
        for key, _w in set(ua.e_ins.items()) ^ set(ub.e_ins.items()):
            touched.add(key)
        touched |= ua.e_del ^ ub.e_del
        if len(touched) > 1:
            return None
    if not any_diff or len(touched) != 1:
        return None
    (e_star,) = touched
    return AdjacencyWitness(AdjacencyKind.EDGE_USER, e_star)


def check_adjacency(
    a: GraphSequence, b: GraphSequence, kind: AdjacencyKind | str
) -> AdjacencyWitness | None:
    """Witness that (a, b) satisfy the requested adjacency relation.

    Returns None for non-adjacent pairs; identical sequences are never
    adjacent.  Both sequences must share the initial graph.
    """
    kind = AdjacencyKind(kind)
    if a.T != b.T:
        raise LengthMismatch(f"sequence lengths differ: {a.T} vs {b.T}")
    if a.initial != b.initial:
        return None
    if kind is AdjacencyKind.EDGE_EVENT:
        return _edge_event_witness(a, b)
    if kind is AdjacencyKind.NODE_EVENT:
        return _node_event_witness(a, b)
    return _edge_user_witness(a, b)
