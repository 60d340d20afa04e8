"""Groves, grove measurements, the three Plücker vectors and dimer oracles."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterator, Mapping, Sequence

from .linalg import IndexSet, WedgeVector, format_rational, parse_rational
from .network import Network, NetworkError, UnsupportedError, max_edges
from .noncrossing import (
    NonCrossingPartition,
    coconcordant_sets,
    concordant_sets,
    lagrangian_concordant_sets,
)


class EnumerationLimitError(NetworkError):
    """The network has more edges than the enumeration cap allows."""


@dataclass(frozen=True)
class Grove:
    edges: tuple[int, ...]
    partition: NonCrossingPartition
    weight: Fraction


@dataclass(frozen=True)
class GroveTable:
    """Grove measurements ``L_σ``; absent keys are zero."""

    n: int
    entries: Mapping[NonCrossingPartition, Fraction]

    def __post_init__(self):
        clean = {}
        for s, v in self.entries.items():
            if s.n != self.n:
                raise ValueError("partition size does not match the table")
            if v:
                clean[s] = Fraction(v)
        object.__setattr__(self, "entries", dict(sorted(clean.items())))

    def __getitem__(self, sigma: NonCrossingPartition) -> Fraction:
        return self.entries.get(sigma, Fraction(0))

    def __iter__(self):
        return iter(self.entries.items())

    @property
    def unc(self) -> Fraction:
        return self[NonCrossingPartition.singletons(self.n)]

    @property
    def full(self) -> Fraction:
        return self[NonCrossingPartition.one_block(self.n)]

    def to_text(self) -> str:
        return "\n".join(f"{s} : {format_rational(v)}" for s, v in self.entries.items())

    @classmethod
    def from_text(cls, text: str, n: int) -> "GroveTable":
        entries = {}
        for line in text.splitlines():
            if line.strip():
                part, val = line.rsplit(":", 1)
                entries[NonCrossingPartition.parse(part, n)] = parse_rational(val)
        return cls(n, entries)


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        x = parent[x]
    return x


def enumerate_groves(net: Network) -> Iterator[Grove]:
    """All acyclic edge sets whose every component reaches the boundary.

    Cactus identifications are applied by pre-joining identified boundary
    vertices, so cycles and components are computed on the quotient graph.
    """
    edges = net.edges
    if len(edges) > max_edges():
        raise EnumerationLimitError(f"{len(edges)} edges exceed the cap of {max_edges()}")
    N = net.num_vertices
    parent0 = list(range(N + 1))
    if net.cactus is not None:
        for b in net.cactus.blocks:
            for x in b[1:]:
                parent0[_find(parent0, x)] = _find(parent0, b[0])

    def finish(parent, chosen, weight):
        roots_with_boundary = {_find(parent, i) for i in range(1, net.n + 1)}
        if any(_find(parent, v) not in roots_with_boundary for v in range(net.n + 1, N + 1)):
            return None
        groups: dict[int, list[int]] = {}
        for i in range(1, net.n + 1):
            groups.setdefault(_find(parent, i), []).append(i)
        sigma = NonCrossingPartition(net.n, tuple(tuple(g) for g in groups.values()))
        return Grove(tuple(chosen), sigma, weight)

    def rec(k, parent, chosen, weight):
        if k == len(edges):
            g = finish(parent, chosen, weight)
            if g is not None:
                yield g
            return
        yield from rec(k + 1, parent, chosen, weight)
        e = edges[k]
        a, b = _find(parent, e.u), _find(parent, e.v)
        if a != b:
            p2 = list(parent)
            p2[a] = b
            yield from rec(k + 1, p2, chosen + [e.id], weight * e.weight)

    yield from rec(0, parent0, [], Fraction(1))


def grove_measurements(net: Network) -> GroveTable:
    table: dict[NonCrossingPartition, Fraction] = {}
    for g in enumerate_groves(net):
        table[g.partition] = table.get(g.partition, 0) + g.weight
    return GroveTable(net.n, table)


def _plucker(gt: GroveTable, ambient: int, degree: int, sets_of) -> WedgeVector:
    acc: dict[IndexSet, Fraction] = {}
    for sigma, L in gt:
        for I in sets_of(sigma):
            acc[I] = acc.get(I, 0) + L
    return WedgeVector(ambient, degree, acc)


def lam_plucker(gt: GroveTable) -> WedgeVector:
    """``Δ^•_I = Σ L_σ`` over σ concordant with I."""
    return _plucker(gt, 2 * gt.n, gt.n - 1, concordant_sets)


def cgs_plucker(gt: GroveTable) -> WedgeVector:
    """``Δ^∘_I = Σ L_σ`` over σ co-concordant with I."""
    return _plucker(gt, 2 * gt.n, gt.n + 1, coconcordant_sets)


def lagrangian_plucker(gt: GroveTable) -> WedgeVector:
    """Coordinates in the v-basis: ``Σ L_σ`` over σ Lagrangian concordant with I."""
    return _plucker(gt, 2 * gt.n - 2, gt.n - 1, lagrangian_concordant_sets)


# ---------------------------------------------------------------------------
# Temperley bipartite networks
# ---------------------------------------------------------------------------

Node = tuple  # ("bd", k) | ("v", v) | ("F", face) | ("e", edge id) | ("s", i)


@dataclass(frozen=True)
class BipartiteNetwork:
    """Weighted bipartite graph with boundary nodes ``("bd", 1) … ("bd", 2n)``.

    ``boundary_color`` decides how a matching's boundary set is read: for
    black boundary nodes it is the covered set, for white ones the uncovered
    set (the usual convention for plabic-type networks).
    """

    n: int
    nodes: tuple[Node, ...]
    color: Mapping[Node, str]
    edges: tuple[tuple[Node, Node, Fraction], ...]
    boundary_color: str

    @property
    def boundary(self) -> tuple[Node, ...]:
        return tuple(("bd", k) for k in range(1, 2 * self.n + 1))

    @property
    def interior(self) -> tuple[Node, ...]:
        return tuple(x for x in self.nodes if x[0] != "bd")

    def is_bipartite(self) -> bool:
        return all(self.color[a] != self.color[b] for a, b, _ in self.edges)

    def degree(self, node: Node) -> int:
        return sum(1 for a, b, _ in self.edges if node in (a, b))

    def count(self, kind: str) -> int:
        return sum(1 for x in self.nodes if x[0] == kind)

    @cached_property
    def matchings_by_boundary(self) -> dict[frozenset[int], Fraction]:
        """Weighted count of almost perfect matchings per covered boundary set."""
        index = {x: k for k, x in enumerate(self.nodes)}
        adj: dict[int, list[tuple[int, Fraction]]] = {k: [] for k in range(len(self.nodes))}
        for a, b, w in self.edges:
            adj[index[a]].append((index[b], w))
            adj[index[b]].append((index[a], w))
        interior = [index[x] for x in self.interior]
        boundary_label = {index[x]: x[1] for x in self.boundary}
        memo: dict[int, dict[int, Fraction]] = {}

        def rec(mask: int) -> dict[int, Fraction]:
            if mask in memo:
                return memo[mask]
            free = [v for v in interior if not mask >> v & 1]
            if not free:
                return {0: Fraction(1)}
            best, opts = None, None
            for v in free:
                o = [(u, w) for u, w in adj[v] if not mask >> u & 1]
                if best is None or len(o) < len(opts):
                    best, opts = v, o
                    if len(o) <= 1:
                        break
            out: dict[int, Fraction] = {}
            for u, w in opts:
                sub = rec(mask | 1 << best | 1 << u)
                extra = 1 << boundary_label[u] if u in boundary_label else 0
                for key, val in sub.items():
                    out[key | extra] = out.get(key | extra, 0) + w * val
            memo[mask] = out
            return out

        result = {}
        for key, val in rec(0).items():
            if val:
                result[frozenset(k for k in range(1, 2 * self.n + 1) if key >> k & 1)] = val
        return result

    def boundary_set(self, covered: frozenset[int]) -> IndexSet:
        if self.boundary_color == "black":
            return tuple(sorted(covered))
        return tuple(k for k in range(1, 2 * self.n + 1) if k not in covered)


def dimer_partition(bip: BipartiteNetwork, I: Sequence[int]) -> Fraction:
    """Sum of matching weights whose boundary set (see :class:`BipartiteNetwork`) is I."""
    target = tuple(sorted(I))
    return sum(
        (w for cov, w in bip.matchings_by_boundary.items() if bip.boundary_set(cov) == target),
        Fraction(0),
    )


def dimer_plucker(bip: BipartiteNetwork, degree: int) -> WedgeVector:
    acc: dict[IndexSet, Fraction] = {}
    for cov, w in bip.matchings_by_boundary.items():
        key = bip.boundary_set(cov)
        acc[key] = acc.get(key, 0) + w
    return WedgeVector(2 * bip.n, degree, {k: v for k, v in acc.items() if len(k) == degree})


def dual_temperley(net: Network) -> BipartiteNetwork:
    """The bipartite network whose boundary-covered matchings give ``Δ^∘``.

    Boundary nodes are black.  White nodes: one per interior vertex, per face
    inside the disk and per boundary vertex (a stub); black nodes: one per
    edge.  An edge node joins both endpoint nodes with the edge conductance
    and both adjacent face nodes with weight 1; stub ``i`` joins boundary node
    ``2i−1`` and the face inside arc ``i`` joins boundary node ``2i``.
    """
    if net.cactus is not None:
        raise UnsupportedError("the Temperley construction needs an ordinary network")
    n = net.n
    faces = net.faces[1:]
    face_of = {d: k for k, f in enumerate(faces, start=1) for d in f}
    nodes: list[Node] = [("bd", k) for k in range(1, 2 * n + 1)]
    color: dict[Node, str] = {x: "black" for x in nodes}
    edges: list[tuple[Node, Node, Fraction]] = []

    def vnode(v: int) -> Node:
        return ("s", v) if v <= n else ("v", v)

    for i in range(1, n + 1):
        nodes.append(("s", i))
        edges.append((("s", i), ("bd", 2 * i - 1), Fraction(1)))
    for v in range(n + 1, net.num_vertices + 1):
        nodes.append(("v", v))
    for k in range(1, len(faces) + 1):
        nodes.append(("F", k))
    for x in nodes[2 * n :]:
        color[x] = "white"
    for e in net.edges:
        a, b = face_of[(e.id, 1)], face_of[(e.id, -1)]
        if a == b:
            raise UnsupportedError(f"edge {e.id} is a bridge")
        node = ("e", e.id)
        nodes.append(node)
        color[node] = "black"
        edges += [
            (node, vnode(e.u), e.weight),
            (node, vnode(e.v), e.weight),
            (node, ("F", a), Fraction(1)),
            (node, ("F", b), Fraction(1)),
        ]
    for i, k in sorted(net.boundary_faces().items()):
        edges.append((("F", k), ("bd", 2 * i), Fraction(1)))
    return BipartiteNetwork(n, tuple(nodes), color, tuple(edges), "black")


def temperley(net: Network) -> BipartiteNetwork:
    """Same graph as :func:`dual_temperley` with colours inverted."""
    d = dual_temperley(net)
    flip = {"black": "white", "white": "black"}
    return BipartiteNetwork(d.n, d.nodes, {x: flip[c] for x, c in d.color.items()}, d.edges, "white")
