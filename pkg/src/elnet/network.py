"""Planar circular electrical networks as combinatorial maps.

Boundary vertices are ``1 … n`` in clockwise order around the disk; interior
vertices follow.  Each vertex carries the counterclockwise order of its edges.
For a boundary vertex the order is linear: it starts next to the boundary arc
leading to vertex ``i−1`` and sweeps through the interior to the arc leading
to ``i+1``.

To validate an embedding the map is closed by virtual boundary arcs
``i → i+1``; faces are orbits of ``d ↦ next_ccw(reverse(d))``, which keeps
each face on the right of its darts.  The outer face is then the orbit of the
reversed arcs.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .linalg import LinalgError, Matrix, RankError, format_rational, parse_rational
from .noncrossing import NonCrossingPartition, PartitionError


class NetworkError(ValueError):
    """Base class for network problems.

    ``where`` optionally names the offending record, ``("edge", id)`` or
    ``("rotation", vertex)``, so the parser can report its line.
    """

    def __init__(self, message: str, where: tuple[str, int] | None = None):
        self.where = where
        super().__init__(message)


class ParseError(NetworkError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class TopologyError(NetworkError):
    """The network is not connected in the way an operation requires."""


class UnsupportedError(NetworkError):
    """The operation is not defined for this kind of network."""


class GaugeError(NetworkError):
    """A matrix offered as a response matrix is not symmetric with zero row sums."""


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int
    weight: Fraction


Dart = tuple[object, int]  # (edge id or ("arc", i), +1 from u to v / −1 from v to u)


@dataclass(frozen=True)
class Network:
    n: int
    interior: int
    edges: tuple[Edge, ...]
    rotation: Mapping[int, tuple[int, ...]]
    cactus: NonCrossingPartition | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple(self.edges))
        object.__setattr__(self, "rotation", {v: tuple(r) for v, r in sorted(dict(self.rotation).items()) if r})
        self._validate()

    # basic structure ------------------------------------------------------
    @property
    def num_vertices(self) -> int:
        return self.n + self.interior

    @property
    def vertices(self) -> range:
        return range(1, self.num_vertices + 1)

    @cached_property
    def edge_by_id(self) -> dict[int, Edge]:
        return {e.id: e for e in self.edges}

    def incident(self, v: int) -> list[Edge]:
        return [e for e in self.edges if v in (e.u, e.v)]

    def _validate(self) -> None:
        if self.n < 1:
            raise NetworkError("a network needs at least one boundary vertex")
        ids = [e.id for e in self.edges]
        if len(set(ids)) != len(ids):
            raise NetworkError("duplicate edge id")
        nv = self.num_vertices
        for e in self.edges:
            if not (1 <= e.u <= nv and 1 <= e.v <= nv):
                raise NetworkError(f"edge {e.id} has an endpoint outside 1..{nv}", ("edge", e.id))
            if e.u == e.v:
                raise NetworkError(f"edge {e.id} is a self-loop", ("edge", e.id))
            if e.weight <= 0:
                raise NetworkError(f"edge {e.id} has non-positive conductance", ("edge", e.id))
        for v in self.vertices:
            rot = self.rotation.get(v, ())
            want = sorted(e.id for e in self.incident(v))
            if sorted(rot) != want:
                raise NetworkError(f"rotation at vertex {v} does not list exactly its incident edges", ("rotation", v))
        if set(self.rotation) - set(self.vertices):
            raise NetworkError("rotation given for an unknown vertex")
        if self.cactus is not None and self.cactus.n != self.n:
            raise NetworkError("cactus partition has the wrong size")
        self._check_embedding()

    # embedding --------------------------------------------------------------
    def _out_darts(self, v: int) -> list[Dart]:
        """Counterclockwise darts leaving v, virtual arcs included."""
        darts: list[Dart] = []
        for eid in self.rotation.get(v, ()):
            e = self.edge_by_id[eid]
            darts.append((eid, 1 if e.u == v else -1))
        if v <= self.n:
            prev_arc = ("arc", (v - 2) % self.n + 1)  # arc (i−1 → i), used backwards
            darts = [(prev_arc, -1)] + darts + [(("arc", v), 1)]
        return darts

    def _ends(self, d: Dart) -> tuple[int, int]:
        key, sgn = d
        if isinstance(key, tuple):
            a, b = key[1], key[1] % self.n + 1
        else:
            e = self.edge_by_id[key]
            a, b = e.u, e.v
        return (a, b) if sgn == 1 else (b, a)

    @cached_property
    def _next_ccw(self) -> dict[Dart, Dart]:
        nxt = {}
        for v in self.vertices:
            ds = self._out_darts(v)
            for k, d in enumerate(ds):
                nxt[d] = ds[(k + 1) % len(ds)]
        return nxt

    @cached_property
    def faces(self) -> tuple[tuple[Dart, ...], ...]:
        """Dart orbits of the closed map; the outer face comes first."""
        nxt = self._next_ccw
        seen: set[Dart] = set()
        order = sorted(nxt, key=_dart_key)
        outer_start = (("arc", self.n), -1)
        out = []
        for start in [outer_start] + order:
            if start in seen:
                continue
            orbit = []
            d = start
            while d not in seen:
                seen.add(d)
                orbit.append(d)
                d = nxt[(d[0], -d[1])]
            out.append(tuple(orbit))
        return tuple(out)

    def _components(self) -> int:
        parent = list(range(self.num_vertices + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        pairs = [(e.u, e.v) for e in self.edges] + [(i, i % self.n + 1) for i in range(1, self.n + 1)]
        for a, b in pairs:
            parent[find(a)] = find(b)
        return len({find(v) for v in self.vertices})

    def _check_embedding(self) -> None:
        V = self.num_vertices
        E = len(self.edges) + self.n
        F = len(self.faces)
        C = self._components()
        if V - E + F != 2 * C:
            raise NetworkError(f"rotation system is not planar (V−E+F = {V - E + F}, expected {2 * C})")
        outer = self.faces[0]
        if sorted(self._ends(d)[0] for d in outer) != list(range(1, self.n + 1)) or any(
            not isinstance(d[0], tuple) for d in outer
        ):
            raise NetworkError("outer face does not run along the boundary arcs")

    # derived data ---------------------------------------------------------------
    def laplacian(self) -> Matrix:
        N = self.num_vertices
        L = [[Fraction(0)] * N for _ in range(N)]
        for e in self.edges:
            i, j = e.u - 1, e.v - 1
            L[i][i] += e.weight
            L[j][j] += e.weight
            L[i][j] -= e.weight
            L[j][i] -= e.weight
        return Matrix(L, ncols=N)

    def physical_vertices(self) -> int:
        """Vertex count after the cactus identification."""
        if self.cactus is None:
            return self.num_vertices
        return len(self.cactus.blocks) + self.interior

    def boundary_faces(self) -> dict[int, int]:
        """Map boundary arc i (between i and i+1) to the index of the face inside it."""
        out = {}
        for k, face in enumerate(self.faces[1:], start=1):
            for key, sgn in face:
                if isinstance(key, tuple) and sgn == 1:
                    out[key[1]] = k
        return out

    def scaled(self, t) -> "Network":
        t = Fraction(t)
        return replace(self, edges=tuple(replace(e, weight=e.weight * t) for e in self.edges))


def _dart_key(d: Dart):
    key, sgn = d
    return (1, key[1], -sgn) if isinstance(key, tuple) else (0, key, -sgn)


# ---------------------------------------------------------------------------
# text format
# ---------------------------------------------------------------------------


def parse(text: str) -> Network:
    n = interior = None
    edges: list[Edge] = []
    rotation: dict[int, tuple[int, ...]] = {}
    cactus_text = None
    cactus_line = None
    header_seen = False
    last_line = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        last_line = lineno
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        try:
            if not header_seen:
                if toks != ["enet", "1"]:
                    raise ParseError("expected header 'enet 1'", lineno)
                header_seen = True
            elif toks[0] == "n" and len(toks) == 2:
                n = int(toks[1])
            elif toks[0] == "interior" and len(toks) == 2:
                interior = int(toks[1])
            elif toks[0] == "edge" and len(toks) == 5:
                edges.append(Edge(int(toks[1]), int(toks[2]), int(toks[3]), parse_rational(toks[4])))
            elif toks[0] == "rotation" and ":" in line:
                head, tail = line[len("rotation"):].split(":", 1)
                v = int(head)
                if v in rotation:
                    raise ParseError(f"duplicate rotation for vertex {v}", lineno)
                rotation[v] = tuple(int(t) for t in tail.split())
            elif toks[0] == "cactus":
                cactus_text = line[len("cactus"):].strip()
                cactus_line = lineno
            else:
                raise ParseError(f"unrecognised line {line!r}", lineno)
        except (ValueError, LinalgError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc), lineno) from exc
    if not header_seen:
        raise ParseError("missing header 'enet 1'", 1)
    if n is None or interior is None:
        raise ParseError("missing 'n' or 'interior' line", last_line)
    known = {e.id for e in edges}
    for v, rot in rotation.items():
        dangling = [x for x in rot if x not in known]
        if dangling:
            raise ParseError(f"rotation of vertex {v} names unknown edge {dangling[0]}", _line_of(text, f"rotation {v}"))
    cactus = None
    if cactus_text is not None:
        try:
            cactus = NonCrossingPartition.parse(cactus_text, n)
        except PartitionError as exc:
            raise ParseError(str(exc), cactus_line) from exc
    try:
        return Network(n, interior, tuple(edges), rotation, cactus)
    except NetworkError as exc:
        line = last_line
        if exc.where is not None:
            kind, key = exc.where
            line = _line_of(text, f"{kind} {key} ") or _line_of(text, f"{kind} {key}:") or last_line
        raise ParseError(str(exc), line) from exc


def _line_of(text: str, prefix: str) -> int | None:
    for k, raw in enumerate(text.splitlines(), start=1):
        if raw.split("#", 1)[0].strip().startswith(prefix):
            return k
    return None


def serialize(net: Network) -> str:
    lines = ["enet 1", f"n {net.n}", f"interior {net.interior}"]
    for e in net.edges:
        w = e.weight
        lines.append(f"edge {e.id} {e.u} {e.v} {w.numerator}/{w.denominator}")
    for v in net.vertices:
        lines.append(f"rotation {v} : {' '.join(map(str, net.rotation.get(v, ())))}".rstrip())
    if net.cactus is not None:
        lines.append(f"cactus {net.cactus}")
    return "\n".join(lines) + "\n"


def load(path: str | os.PathLike) -> Network:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


# ---------------------------------------------------------------------------
# response matrix and resistances
# ---------------------------------------------------------------------------


def laplacian(net: Network) -> Matrix:
    return net.laplacian()


def response_matrix(net: Network) -> Matrix:
    """Schur complement of the Laplacian onto the boundary vertices."""
    if net.cactus is not None:
        raise UnsupportedError("response matrices are only defined for ordinary networks")
    L = net.laplacian()
    n, N = net.n, net.num_vertices
    B, I = list(range(n)), list(range(n, N))
    LBB = L.submatrix(B, B)
    if not I:
        return LBB
    LII = L.submatrix(I, I)
    try:
        inv = LII.inverse()
    except RankError as exc:
        raise TopologyError("an interior component does not touch the boundary") from exc
    return LBB - L.submatrix(B, I) @ inv @ L.submatrix(I, B)


def check_response(M: Matrix) -> None:
    """Symmetry and zero row sums; raises GaugeError otherwise."""
    if M.nrows != M.ncols:
        raise GaugeError("response matrix must be square")
    if M != M.T:
        raise GaugeError("response matrix is not symmetric")
    if any(sum(r) != 0 for r in M.rows):
        raise GaugeError("response matrix rows do not sum to zero")


def effective_resistance(M: Matrix) -> Matrix:
    """Pairwise effective resistances from the reduced inverse (ground vertex n)."""
    n = M.nrows
    if M.rank() != n - 1:
        raise TopologyError("response matrix does not have rank n−1")
    if n == 1:
        return Matrix([[0]])
    G = M.submatrix(range(n - 1), range(n - 1)).inverse()

    def r(i, j):
        if i == j:
            return 0
        if j == n - 1:
            return G[i, i]
        if i == n - 1:
            return G[j, j]
        return G[i, i] + G[j, j] - 2 * G[i, j]

    return Matrix.from_function(n, n, r)


# ---------------------------------------------------------------------------
# planar dual
# ---------------------------------------------------------------------------


def dual_network(net: Network) -> Network:
    """Planar dual with reciprocal conductances.

    Dual boundary vertex ``i`` sits on the arc between primal ``i`` and ``i+1``.
    """
    if net.cactus is not None:
        raise UnsupportedError("dual of a cactus network is not supported")
    if net._components() != 1 or _graph_components(net) != 1:
        raise TopologyError("dual requires a connected network")
    faces = net.faces[1:]
    arc_face = net.boundary_faces()
    if sorted(arc_face) != list(range(1, net.n + 1)) or len(set(arc_face.values())) != net.n:
        raise TopologyError("each boundary arc must border its own face")
    label: dict[int, int] = {k: i for i, k in arc_face.items()}
    nxt = net.n + 1
    for k in range(1, len(faces) + 1):
        if k not in label:
            label[k] = nxt
            nxt += 1
    face_of: dict[Dart, int] = {d: k for k, f in enumerate(net.faces) for d in f}
    edges = []
    for e in net.edges:
        a, b = face_of[(e.id, 1)], face_of[(e.id, -1)]
        if a == b:
            raise UnsupportedError(f"edge {e.id} is a bridge; its dual would be a self-loop")
        edges.append(Edge(e.id, label[a], label[b], 1 / e.weight))
    rotation: dict[int, tuple[int, ...]] = {}
    for k, f in enumerate(faces, start=1):
        real = [d[0] for d in f if not isinstance(d[0], tuple)]
        if k in arc_face.values():
            start = next(i for i, d in enumerate(f) if isinstance(d[0], tuple))
            walk = f[start + 1 :] + f[:start]
            real = [d[0] for d in walk]
        rotation[label[k]] = tuple(reversed(real))
    interior = nxt - 1 - net.n
    return Network(net.n, interior, tuple(edges), rotation)


def _graph_components(net: Network) -> int:
    parent = list(range(net.num_vertices + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for e in net.edges:
        parent[find(e.u)] = find(e.v)
    return len({find(v) for v in net.vertices})


# ---------------------------------------------------------------------------
# cactus networks
# ---------------------------------------------------------------------------


def quotient(net: Network, sigma: NonCrossingPartition) -> Network:
    """Identify boundary vertices along the blocks of σ (kept symbolically)."""
    if sigma.n != net.n:
        raise NetworkError("partition size does not match the boundary")
    if net.cactus is not None:
        blocks = {x: set(b) for b in net.cactus.blocks for x in b}
        for b in sigma.blocks:
            merged = set().union(*(blocks[x] for x in b))
            for x in merged:
                blocks[x] = merged
        sigma = NonCrossingPartition(net.n, tuple({tuple(sorted(s)) for s in blocks.values()}))
    if all(len(b) == 1 for b in sigma.blocks):
        return replace(net, cactus=None)
    return replace(net, cactus=sigma)


def empty_network(n: int) -> Network:
    return Network(n, 0, (), {})


def hollow_cactus(n: int, sigma: NonCrossingPartition) -> Network:
    return quotient(empty_network(n), sigma)


def max_edges() -> int:
    return int(os.environ.get("ENET_MAX_EDGES", "24"))
