"""Regenerate the random network fixtures under ``fixtures/random``.

Boundary points sit on the unit circle in clockwise order and interior points
are sampled inside it.  A random connected subset of the Delaunay edges is
kept, conductances are random small rationals, and rotations are read off the
geometry.  Candidates whose dual would have a self-loop are discarded so every
fixture supports every check.  Geometry is only used here; the library never
sees coordinates.

Usage: python tools/make_random_fixtures.py [outdir]
"""
from __future__ import annotations

import math
import random
import sys
from fractions import Fraction
from pathlib import Path

from scipy.spatial import Delaunay

from elnet.network import Edge, Network, NetworkError, dual_network, serialize

SPECS = [(n, k) for n in (3, 4, 5) for k in (0, 1, 2, 3)]
SEEDS_PER_SPEC = 2
MAX_EDGES = 12


def _points(rng: random.Random, n: int, interior: int):
    pts = [(math.cos(math.pi / 2 - 2 * math.pi * i / n), math.sin(math.pi / 2 - 2 * math.pi * i / n)) for i in range(n)]
    while len(pts) < n + interior:
        x, y = rng.uniform(-0.75, 0.75), rng.uniform(-0.75, 0.75)
        if x * x + y * y < 0.6 and all(math.dist((x, y), p) > 0.25 for p in pts):
            pts.append((x, y))
    return pts


def _rotation(pts, n, v, nbrs):
    """Counterclockwise order; boundary vertices start next to the arc toward v−1."""
    px, py = pts[v]
    ang = {e: math.atan2(pts[u][1] - py, pts[u][0] - px) for e, u in nbrs}
    if v < n:
        prev = pts[(v - 1) % n]
        ref = math.atan2(prev[1] - py, prev[0] - px)

        def key(e):
            d = (ang[e] - ref) % (2 * math.pi)
            return 0.0 if d > 2 * math.pi - 1e-9 else d

        return tuple(sorted(ang, key=key))
    return tuple(sorted(ang, key=lambda e: ang[e]))


def random_network(seed: int, n: int, interior: int) -> Network:
    rng = random.Random(seed)
    while True:
        pts = _points(rng, n, interior)
        tri = Delaunay(pts)
        cand = sorted({tuple(sorted((int(a), int(b)))) for s in tri.simplices for a, b in ((s[0], s[1]), (s[1], s[2]), (s[0], s[2]))})
        rng.shuffle(cand)
        # random spanning tree first, then extra edges
        parent = list(range(len(pts)))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        chosen = []
        for a, b in cand:
            if find(a) != find(b):
                parent[find(a)] = find(b)
                chosen.append((a, b))
        extra = [e for e in cand if e not in chosen]
        room = MAX_EDGES - len(chosen)
        chosen += extra[: rng.randint(min(1, room, len(extra)), min(room, len(extra)))]
        rng.shuffle(chosen)
        edges = [
            Edge(k + 1, a + 1, b + 1, Fraction(rng.randint(1, 7), rng.randint(1, 7)))
            for k, (a, b) in enumerate(chosen)
        ]
        nbrs = {v: [] for v in range(len(pts))}
        for e in edges:
            nbrs[e.u - 1].append((e.id, e.v - 1))
            nbrs[e.v - 1].append((e.id, e.u - 1))
        rotation = {v + 1: _rotation(pts, n, v, nbrs[v]) for v in range(len(pts)) if nbrs[v]}
        try:
            net = Network(n, interior, tuple(edges), rotation)
            dual_network(net)
        except NetworkError:
            continue
        return net


def main(outdir: str = "fixtures/random") -> None:
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    k = 0
    for n, interior in SPECS:
        for s in range(SEEDS_PER_SPEC):
            net = random_network(1000 * n + 10 * interior + s, n, interior)
            k += 1
            (out / f"r{k:02d}_n{n}_i{interior}.enet").write_text(
                f"# random fixture: n={n}, interior={interior}, seed index {s}\n" + serialize(net)
            )
    print(f"wrote {k} fixtures to {out}")


if __name__ == "__main__":
    main(*sys.argv[1:])
