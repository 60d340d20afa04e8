"""Non-crossing partitions, their duals and the combinatorics built on them.

A partition ``σ`` of the primal points ``1̄ … n̄`` has a dual ``σ̃`` on the
points ``1̃ … ñ`` where ``ĩ`` sits on the circle between ``ī`` and ``i+1``.
The merged partition lives on ``1 … 2n`` with ``ī ↦ 2i−1`` and ``ĩ ↦ 2i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence

Block = tuple[int, ...]


class PartitionError(ValueError):
    """Malformed or crossing partition, or an index outside the ground set."""


def _canonical(blocks: Iterable[Iterable[int]]) -> tuple[Block, ...]:
    out = [tuple(sorted(b)) for b in blocks]
    if any(not b for b in out):
        raise PartitionError("empty block")
    return tuple(sorted(out))


def crossing_pair(blocks: Sequence[Block]) -> tuple[int, int, int, int] | None:
    """Some i<j<k<l with i,k in one block and j,l in another, or None."""
    owner = {x: b for b, blk in enumerate(blocks) for x in blk}
    pts = sorted(owner)
    for a, b in combinations(range(len(blocks)), 2):
        # walk the circle and record block changes between the two blocks
        seq = [owner[x] for x in pts if owner[x] in (a, b)]
        changes = sum(1 for x, y in zip(seq, seq[1:]) if x != y)
        if changes > 2:
            ia = [x for x in pts if owner[x] in (a, b)]
            for i, j, k, l in combinations(ia, 4):
                if owner[i] == owner[k] != owner[j] == owner[l]:
                    return (i, j, k, l)
    return None


@dataclass(frozen=True, order=True)
class NonCrossingPartition:
    """Non-crossing partition of ``{1, …, n}`` in canonical form."""

    n: int
    blocks: tuple[Block, ...]

    def __post_init__(self):
        blocks = _canonical(self.blocks)
        elems = sorted(x for b in blocks for x in b)
        if elems != list(range(1, self.n + 1)):
            raise PartitionError(f"blocks {blocks} do not partition 1..{self.n}")
        if crossing_pair(blocks) is not None:
            raise PartitionError(f"partition {blocks} is crossing")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def parse(cls, text: str, n: int | None = None) -> "NonCrossingPartition":
        try:
            blocks = [tuple(int(t) for t in part.split()) for part in text.strip().split("|")]
        except ValueError as exc:
            raise PartitionError(f"cannot parse partition {text!r}") from exc
        if n is None:
            n = max((x for b in blocks for x in b), default=0)
        return cls(n, tuple(blocks))

    @classmethod
    def singletons(cls, n: int) -> "NonCrossingPartition":
        return cls(n, tuple((i,) for i in range(1, n + 1)))

    @classmethod
    def one_block(cls, n: int) -> "NonCrossingPartition":
        return cls(n, (tuple(range(1, n + 1)),))

    def __str__(self) -> str:
        return "|".join(" ".join(map(str, b)) for b in self.blocks)

    def __len__(self) -> int:
        return len(self.blocks)

    def block_of(self, x: int) -> Block:
        return next(b for b in self.blocks if x in b)

    def is_isolated(self, x: int) -> bool:
        return len(self.block_of(x)) == 1

    @cached_property
    def dual(self) -> "NonCrossingPartition":
        return dual(self)

    @cached_property
    def merged(self) -> "MergedPartition":
        return merge(self)


@dataclass(frozen=True)
class MergedPartition:
    """The non-crossing partition ``(σ|σ̃)`` of ``{1, …, 2n}``."""

    sigma: NonCrossingPartition

    @property
    def n(self) -> int:
        return self.sigma.n

    @cached_property
    def dual(self) -> NonCrossingPartition:
        return dual(self.sigma)

    @cached_property
    def blocks(self) -> tuple[Block, ...]:
        odd = [tuple(2 * x - 1 for x in b) for b in self.sigma.blocks]
        even = [tuple(2 * x for x in b) for b in self.dual.blocks]
        return _canonical(odd + even)

    def block_of(self, i: int) -> Block:
        return next(b for b in self.blocks if i in b)

    def is_isolated(self, i: int) -> bool:
        return len(self.block_of(i)) == 1

    def __str__(self) -> str:
        return "|".join(" ".join(map(str, b)) for b in self.blocks)


def _nc_on(elems: tuple[int, ...]) -> Iterator[list[Block]]:
    if not elems:
        yield []
        return
    first, rest = elems[0], elems[1:]
    for size in range(len(rest) + 1):
        for chosen in combinations(range(len(rest)), size):
            cuts = (-1,) + chosen + (len(rest),)
            gaps = [rest[a + 1 : b] for a, b in zip(cuts, cuts[1:])]
            block = (first,) + tuple(rest[c] for c in chosen)
            for parts in product(*(list(_nc_on(g)) for g in gaps)):
                yield [block] + [b for p in parts for b in p]


def enumerate_nc(n: int) -> list[NonCrossingPartition]:
    """All non-crossing partitions of ``{1, …, n}``, sorted by canonical form."""
    if not 1 <= n <= 10:
        raise PartitionError("n must lie in 1..10")
    found = {_canonical(bs) for bs in _nc_on(tuple(range(1, n + 1)))}
    return [NonCrossingPartition(n, b) for b in sorted(found)]


def _find(parent: list[int], x: int) -> int:
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def dual(sigma: NonCrossingPartition) -> NonCrossingPartition:
    """Coarsest partition of the tilde points not crossing ``σ``.

    ``ĩ`` and ``j̃`` (i < j) are joined when the arc between them, which holds
    the primal points ``i+1 … j``, contains every block of ``σ`` it touches.
    """
    n = sigma.n
    parent = list(range(n + 1))
    for i, j in combinations(range(1, n + 1), 2):
        inside = set(range(i + 1, j + 1))
        if all(set(b) <= inside or not (set(b) & inside) for b in sigma.blocks):
            parent[_find(parent, i)] = _find(parent, j)
    groups: dict[int, list[int]] = {}
    for x in range(1, n + 1):
        groups.setdefault(_find(parent, x), []).append(x)
    return NonCrossingPartition(n, tuple(tuple(g) for g in groups.values()))


def from_dual(tau: NonCrossingPartition) -> NonCrossingPartition:
    """The primal partition whose dual is ``tau``.

    The dual of ``tau`` lives on points between ``ĩ`` and ``(i+1)~``, which
    is where the primal point ``i+1`` sits.
    """
    n = tau.n
    return NonCrossingPartition(n, tuple(tuple(x % n + 1 for x in b) for b in dual(tau).blocks))


def merge(sigma: NonCrossingPartition) -> MergedPartition:
    return MergedPartition(sigma)


def merged_from_blocks(n: int, blocks: Iterable[Iterable[int]]) -> MergedPartition:
    """Rebuild a merged pair from its blocks on ``{1, …, 2n}``, checking duality."""
    blocks = _canonical(blocks)
    odd = [tuple((x + 1) // 2 for x in b) for b in blocks if b[0] % 2]
    even = [tuple(x // 2 for x in b) for b in blocks if b[0] % 2 == 0]
    if any(x % 2 != b[0] % 2 for b in blocks for x in b):
        raise PartitionError("a merged block mixes primal and dual points")
    sigma = NonCrossingPartition(n, tuple(odd))
    if dual(sigma) != NonCrossingPartition(n, tuple(even)):
        raise PartitionError("even blocks are not the dual of the odd blocks")
    return merge(sigma)


def _as_merged(x: NonCrossingPartition | MergedPartition) -> MergedPartition:
    return x if isinstance(x, MergedPartition) else merge(x)


def _check_size(I: Sequence[int], n: int, size: int, top: int) -> frozenset[int]:
    s = frozenset(I)
    if len(s) != len(I) or len(s) != size:
        raise PartitionError(f"index set must have {size} distinct elements")
    if any(not 1 <= x <= top for x in s):
        raise PartitionError(f"indices must lie in 1..{top}")
    return s


def is_concordant(I: Sequence[int], sigma: NonCrossingPartition | MergedPartition) -> bool:
    """Every block of ``(σ|σ̃)`` has exactly one element outside ``I``."""
    m = _as_merged(sigma)
    s = _check_size(I, m.n, m.n - 1, 2 * m.n)
    return all(sum(1 for x in b if x not in s) == 1 for b in m.blocks)


def is_coconcordant(I: Sequence[int], sigma: NonCrossingPartition | MergedPartition) -> bool:
    """Every block of ``(σ|σ̃)`` meets ``I`` in exactly one element."""
    m = _as_merged(sigma)
    s = _check_size(I, m.n, m.n + 1, 2 * m.n)
    return all(sum(1 for x in b if x in s) == 1 for b in m.blocks)


def concordant_sets(sigma: NonCrossingPartition | MergedPartition) -> list[tuple[int, ...]]:
    """All I concordant with σ: drop one element from every merged block."""
    m = _as_merged(sigma)
    full = set(range(1, 2 * m.n + 1))
    return sorted(tuple(sorted(full - set(pick))) for pick in product(*m.blocks))


def coconcordant_sets(sigma: NonCrossingPartition | MergedPartition) -> list[tuple[int, ...]]:
    m = _as_merged(sigma)
    return sorted(tuple(sorted(pick)) for pick in product(*m.blocks))


def isolate(x: NonCrossingPartition | MergedPartition, i: int) -> MergedPartition:
    """Split merged vertex ``i`` into a singleton and re-derive the other side."""
    m = _as_merged(x)
    n = m.n
    if not 1 <= i <= 2 * n:
        raise PartitionError(f"vertex {i} outside 1..{2 * n}")
    if m.is_isolated(i):
        return m
    k = (i + 1) // 2
    if i % 2:
        return merge(NonCrossingPartition(n, _split(m.sigma.blocks, k)))
    tau = NonCrossingPartition(n, _split(m.dual.blocks, k))
    return merge(from_dual(tau))


def _split(blocks: Sequence[Block], k: int) -> tuple[Block, ...]:
    out = []
    for b in blocks:
        if k in b:
            rest = tuple(y for y in b if y != k)
            if rest:
                out.append(rest)
            out.append((k,))
        else:
            out.append(b)
    return tuple(out)


def merges_of(sigma: NonCrossingPartition, k: int) -> list[NonCrossingPartition]:
    """Non-crossing partitions obtained by joining the singleton ``{k}`` to another block."""
    if not sigma.is_isolated(k):
        return []
    out = []
    for b in sigma.blocks:
        if k in b:
            continue
        blocks = [c for c in sigma.blocks if c != b and c != (k,)] + [b + (k,)]
        if crossing_pair(_canonical(blocks)) is None:
            out.append(NonCrossingPartition(sigma.n, tuple(blocks)))
    return out


def pairing(tau: NonCrossingPartition, sigma: NonCrossingPartition) -> int:
    """1 when the block counts add to n+1 and the join is a single block."""
    if tau.n != sigma.n:
        raise PartitionError("pairing needs partitions of the same size")
    n = tau.n
    if len(tau) + len(sigma) != n + 1:
        return 0
    parent = list(range(n + 1))
    for b in tau.blocks + sigma.blocks:
        for x in b[1:]:
            parent[_find(parent, x)] = _find(parent, b[0])
    return int(len({_find(parent, x) for x in range(1, n + 1)}) == 1)


# ---------------------------------------------------------------------------
# Lagrangian extension
# ---------------------------------------------------------------------------

SubComponent = tuple[int, ...]


def chord_extension(p: int, q: int) -> SubComponent:
    """Indices of V-basis vectors spanned by the chord between merged points p < q.

    A primal chord (ī, j̄) gives 2i−1, 2i+1, …, 2j−3 and a dual chord (ĩ, j̃)
    gives 2i, 2i+2, …, 2j−2; in merged coordinates both read p, p+2, …, q−2.
    """
    return tuple(range(p, q - 1, 2))


def _chords(block: Block) -> list[tuple[int, int]]:
    return list(zip(block, block[1:]))


def lagrangian_extension(sigma: NonCrossingPartition) -> list[SubComponent]:
    """Sub-components of Lext(σ), sorted by their smallest index."""
    blocks = [b for b in sigma.merged.blocks if len(b) > 1]
    block_ext = {b: {x for p, q in _chords(b) for x in chord_extension(p, q)} for b in blocks}
    subs = []
    for b in blocks:
        for p, q in _chords(b):
            inner = set()
            for other in blocks:
                if other != b and all(p < x < q for x in other):
                    inner |= block_ext[other]
            subs.append(tuple(x for x in chord_extension(p, q) if x not in inner))
    return sorted(subs)


def format_extension(subs: Iterable[SubComponent]) -> str:
    return "".join("(" + ",".join(map(str, s)) + ")" for s in subs)


def parse_extension(text: str) -> list[SubComponent]:
    parts = text.strip().strip("()").split(")(")
    return sorted(tuple(int(x) for x in p.split(",")) for p in parts)


def is_lagrangian_concordant(I: Sequence[int], sigma: NonCrossingPartition) -> bool:
    """I takes exactly one index from each sub-component of Lext(σ)."""
    n = sigma.n
    s = _check_size(I, n, n - 1, 2 * n - 2)
    return all(sum(1 for x in sub if x in s) == 1 for sub in lagrangian_extension(sigma))


def lagrangian_concordant_sets(sigma: NonCrossingPartition) -> list[tuple[int, ...]]:
    subs = lagrangian_extension(sigma)
    return sorted(tuple(sorted(pick)) for pick in product(*subs))


def catalan(n: int) -> int:
    c = 1
    for k in range(n):
        c = c * 2 * (2 * k + 1) // (k + 2)
    return c
