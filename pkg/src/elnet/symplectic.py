"""Skew forms, the convolution operator and concordance vectors.

The subspace ``V ⊂ Q^{2n}`` is cut out by the vanishing of the alternating
sums of odd and of even coordinates; it has the basis ``v_i = e_i + e_{i+2}``
for ``i = 1 … 2n−2``.  Wedge vectors written in that basis have ambient
dimension ``2n−2``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .linalg import (
    IndexSet,
    LinalgError,
    Matrix,
    MembershipError,
    WedgeVector,
    kernel_basis,
    wedge_expand,
)
from .noncrossing import (
    NonCrossingPartition,
    catalan,
    concordant_sets,
    enumerate_nc,
)


class FormError(LinalgError):
    """A matrix that should be antisymmetric is not."""


@dataclass(frozen=True)
class SkewForm:
    matrix: Matrix

    def __post_init__(self):
        if not self.matrix.is_antisymmetric():
            raise FormError("form matrix is not antisymmetric")

    @property
    def dim(self) -> int:
        return self.matrix.nrows

    def __call__(self, i: int, j: int) -> Fraction:
        """Value on basis vectors, 1-based."""
        return self.matrix[i - 1, j - 1]


def lambda_form(m: int) -> Matrix:
    """Tridiagonal skew matrix with (i, i+1) entry (−1)^(i+1), 1-based."""
    def f(i, j):
        if j == i + 1:
            return (-1) ** i  # 0-based i, so (−1)^(i+1) in 1-based terms
        if i == j + 1:
            return -((-1) ** j)
        return 0

    return Matrix.from_function(m, m, f)


def lambda_tilde(n: int) -> Matrix:
    """Gram matrix of the degenerate form pairing primal and dual neighbours."""
    m = 2 * n
    rows = [[0] * m for _ in range(m)]

    def put(i, j, val):  # 1-based, antisymmetric
        rows[i - 1][j - 1] += val
        rows[j - 1][i - 1] -= val

    for i in range(1, n + 1):
        put(2 * i - 1, 2 * i, 1)
    for j in range(1, n):
        put(2 * j + 1, 2 * j, 1)
    put(1, 2 * n, (-1) ** n)
    return Matrix(rows)


def lambda_bar(n: int) -> Matrix:
    return lambda_form(2 * n).inverse()


def standard_forms(n: int) -> tuple[Matrix, Matrix, Matrix]:
    """``(Λ_{2n−2}, Λ̃_{2n}, Λ̄_{2n})``."""
    if n < 2:
        raise LinalgError("standard forms need n ≥ 2")
    return lambda_form(2 * n - 2), lambda_tilde(n), lambda_bar(n)


def lambda_tilde_kernel_vectors(n: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    even = tuple(0 if k % 2 == 0 else (-1) ** (k // 2) for k in range(2 * n))
    odd = tuple((-1) ** (k // 2) if k % 2 == 0 else 0 for k in range(2 * n))
    return even, odd


# ---------------------------------------------------------------------------
# convolution
# ---------------------------------------------------------------------------


def convolve(form: SkewForm | Matrix, w: WedgeVector) -> WedgeVector:
    """Contract every pair of factors with the form, with alternating signs."""
    mat = form.matrix if isinstance(form, SkewForm) else form
    if mat.nrows != w.ambient:
        raise LinalgError("form dimension does not match the wedge ambient")
    if w.degree < 2:
        raise LinalgError("convolution needs degree at least 2")
    out: dict[IndexSet, Fraction] = {}
    for key, c in w:
        k = len(key)
        for a in range(k):
            for b in range(a + 1, k):
                val = mat[key[a] - 1, key[b] - 1]
                if val:
                    rest = key[:a] + key[a + 1 : b] + key[b + 1 :]
                    # (−1)^(i+j−1) with 1-based positions i=a+1, j=b+1
                    sign = -1 if (a + b) % 2 == 0 else 1
                    out[rest] = out.get(rest, 0) + sign * c * val
    return WedgeVector(w.ambient, w.degree - 2, out)


def convolution_matrix(form: Matrix, degree: int) -> tuple[Matrix, list[IndexSet], list[IndexSet]]:
    """Q as a matrix from degree-k monomials (columns) to degree k−2 (rows)."""
    m = form.nrows
    src = list(combinations(range(1, m + 1), degree))
    dst = list(combinations(range(1, m + 1), degree - 2))
    pos = {k: i for i, k in enumerate(dst)}
    rows = [[Fraction(0)] * len(src) for _ in dst]
    for j, key in enumerate(src):
        for k2, v in convolve(form, WedgeVector.basis(m, key)):
            rows[pos[k2]][j] += v
    return Matrix(rows, ncols=len(src)), src, dst


# ---------------------------------------------------------------------------
# concordance vectors and the subspace V
# ---------------------------------------------------------------------------


def concordance_vector(sigma: NonCrossingPartition) -> WedgeVector:
    n = sigma.n
    return WedgeVector(2 * n, n - 1, {I: 1 for I in concordant_sets(sigma)})


@dataclass(frozen=True)
class ConcordanceBasis:
    n: int
    partitions: tuple[NonCrossingPartition, ...]
    index_sets: tuple[IndexSet, ...]
    matrix: Matrix  # a_{Iσ}
    vectors: dict

    def __len__(self) -> int:
        return len(self.partitions)


def concordance_vectors(n: int) -> ConcordanceBasis:
    if not 2 <= n <= 8:
        raise LinalgError("concordance vectors are provided for 2 ≤ n ≤ 8")
    parts = tuple(enumerate_nc(n))
    sets = tuple(combinations(range(1, 2 * n + 1), n - 1))
    vecs = {s: concordance_vector(s) for s in parts}
    A = Matrix([[vecs[s][I] for s in parts] for I in sets], ncols=len(parts))
    return ConcordanceBasis(n, parts, sets, A, vecs)


def basis_matrix(n: int) -> Matrix:
    """``B_n``: rows ``v_i = e_i + e_{i+2}``, shape (2n−2) × 2n."""
    return Matrix.from_function(2 * n - 2, 2 * n, lambda i, j: 1 if j in (i, i + 2) else 0)


def in_V(vec: Sequence) -> bool:
    odd = sum((-1) ** (i + 1) * vec[2 * i] for i in range(len(vec) // 2))
    even = sum((-1) ** (i + 1) * vec[2 * i + 1] for i in range(len(vec) // 2))
    return odd == 0 and even == 0


def lift_from_V(w: WedgeVector) -> WedgeVector:
    """Rewrite a wedge vector in the v-basis into standard coordinates."""
    m = w.ambient + 2
    out = WedgeVector.zero(m, w.degree)
    acc: dict[IndexSet, Fraction] = {}
    for key, c in w:
        factors = [[1 if j in (i - 1, i + 1) else 0 for j in range(m)] for i in key]
        for k2, v in wedge_expand(factors):
            acc[k2] = acc.get(k2, 0) + c * v
    return out + WedgeVector(m, w.degree, acc)


def restrict_to_V(w: WedgeVector) -> WedgeVector:
    """Coordinates of ``w ∈ ⋀V`` in the basis ``v_{i_1} ∧ … ∧ v_{i_k}``.

    Each ``v_J`` equals ``e_J`` plus lexicographically larger monomials, so
    peeling off the smallest remaining monomial solves the triangular system.
    """
    m = w.ambient
    if m < 2:
        raise MembershipError("ambient too small for V")
    rest: dict[IndexSet, Fraction] = dict(w.coeffs)
    out: dict[IndexSet, Fraction] = {}
    while rest:
        key = min(rest)
        c = rest[key]
        if key and key[-1] > m - 2:
            raise MembershipError(f"wedge vector is not in the exterior power of V (stuck at {key})")
        out[key] = c
        factors = [[1 if j in (i - 1, i + 1) else 0 for j in range(m)] for i in key]
        for k2, v in wedge_expand(factors) if key else [((), Fraction(1))]:
            new = rest.get(k2, 0) - c * v
            if new:
                rest[k2] = new
            else:
                rest.pop(k2, None)
    return WedgeVector(m - 2, w.degree, out)


# ---------------------------------------------------------------------------
# the factorization algorithm
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WedgeFactorization:
    sigma: NonCrossingPartition
    block_brackets: tuple[tuple[tuple[int, int], ...], ...]  # per merged block, in block order
    brackets: tuple[tuple[int, int, int], ...]  # (p, q, sign), sorted by p
    vectors: tuple[tuple[int, ...], ...]  # e_p ± e_q in Q^{2n}
    v_factors: tuple[tuple[int, ...], ...]  # the same vectors in the v-basis

    def expand(self) -> WedgeVector:
        return wedge_expand(self.vectors)

    def expand_v(self) -> WedgeVector:
        return wedge_expand(self.v_factors)

    def bracket_text(self) -> str:
        return "".join(f"(e{p}{'+' if s > 0 else '-'}e{q})" for p, q, s in self.brackets)

    def v_text(self) -> str:
        parts = []
        for f in self.v_factors:
            terms = [(i + 1, c) for i, c in enumerate(f) if c]
            txt = "".join(
                (("" if k == 0 else "+") if c > 0 else "-") + f"v{i}" for k, (i, c) in enumerate(terms)
            )
            parts.append(txt if len(terms) == 1 else f"({txt})")
        return "∧".join(parts)


def bracket_sign(p: int, q: int) -> int:
    """+1 when an even number of same-parity integers lie strictly between p and q."""
    between = (q - p) // 2 - 1
    return 1 if between % 2 == 0 else -1


def algorithm_factorization(sigma: NonCrossingPartition) -> WedgeFactorization:
    n = sigma.n
    per_block = tuple(tuple(zip(b, b[1:])) for b in sigma.merged.blocks)
    pairs = sorted(pq for blk in per_block for pq in blk)
    brackets, vectors, vfac = [], [], []
    for p, q in pairs:
        s = bracket_sign(p, q)
        brackets.append((p, q, s))
        vec = [0] * (2 * n)
        vec[p - 1], vec[q - 1] = 1, s
        vectors.append(tuple(vec))
        vv = [0] * (2 * n - 2)
        for t, i in enumerate(range(p, q - 1, 2)):
            vv[i - 1] = (-1) ** t
        vfac.append(tuple(vv))
    return WedgeFactorization(sigma, per_block, tuple(brackets), tuple(vectors), tuple(vfac))


def hollow_point_matrix(sigma: NonCrossingPartition) -> Matrix:
    """One row per chord of ``(σ|σ̃)``; the second sign is forced by membership in V."""
    n = sigma.n
    rows = []
    for b in sigma.merged.blocks:
        for p, q in zip(b, b[1:]):
            # both coordinates enter the same alternating sum, with signs
            # (−1)^ceil(p/2) and (−1)^ceil(q/2)
            s = -((-1) ** ((p + 1) // 2 + (q + 1) // 2))
            vec = [0] * (2 * n)
            vec[p - 1], vec[q - 1] = 1, s
            rows.append(vec)
    rows.sort(key=lambda r: next(i for i, x in enumerate(r) if x))
    return Matrix(rows, ncols=2 * n) if rows else Matrix([], ncols=2 * n)


# ---------------------------------------------------------------------------
# uniqueness of the invariant form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FormSolution:
    n: int
    unknowns: tuple[tuple[int, int], ...]
    constraint_rank: int
    forms: tuple[Matrix, ...]  # kernel basis as skew matrices

    @property
    def dimension(self) -> int:
        return len(self.forms)


def _reduce_sparse(row: dict[int, Fraction], pivots: dict[int, dict[int, Fraction]]) -> dict[int, Fraction]:
    row = dict(row)
    while row:
        k = min(row)
        if k not in pivots:
            c = row[k]
            return {j: v / c for j, v in row.items()}
        c = row[k]
        for j, v in pivots[k].items():
            new = row.get(j, 0) - c * v
            if new:
                row[j] = new
            else:
                row.pop(j, None)
    return row


def form_constraints(n: int, vectors: Sequence[WedgeVector] | None = None):
    """Sparse linear constraints on the entries ω(i,j), i<j, from Q_ω(w) = 0."""
    m = 2 * n - 2
    unknowns = tuple(combinations(range(1, m + 1), 2))
    col = {p: i for i, p in enumerate(unknowns)}
    if vectors is None:
        vectors = [restrict_to_V(concordance_vector(s)) for s in enumerate_nc(n)]
    seen = set()
    for w in vectors:
        per_key: dict[IndexSet, dict[int, Fraction]] = {}
        for key, c in w:
            k = len(key)
            for a in range(k):
                for b in range(a + 1, k):
                    rest = key[:a] + key[a + 1 : b] + key[b + 1 :]
                    sign = -1 if (a + b) % 2 == 0 else 1
                    row = per_key.setdefault(rest, {})
                    j = col[(key[a], key[b])]
                    row[j] = row.get(j, 0) + sign * c
        for row in per_key.values():
            row = {j: v for j, v in row.items() if v}
            frozen = tuple(sorted(row.items()))
            if row and frozen not in seen:
                seen.add(frozen)
                yield row
    return unknowns


def unique_form_solver(n: int) -> FormSolution:
    """All skew forms on V whose convolution kills every restricted w_σ."""
    if not 2 <= n <= 6:
        raise LinalgError("the form solver supports 2 ≤ n ≤ 6")
    m = 2 * n - 2
    unknowns = tuple(combinations(range(1, m + 1), 2))
    pivots: dict[int, dict[int, Fraction]] = {}
    for row in form_constraints(n):
        red = _reduce_sparse(row, pivots)
        if red:
            pivots[min(red)] = red
    dense = Matrix(
        [[pivots[p].get(j, Fraction(0)) for j in range(len(unknowns))] for p in sorted(pivots)],
        ncols=len(unknowns),
    )
    forms = []
    for vec in kernel_basis(dense):
        rows = [[Fraction(0)] * m for _ in range(m)]
        for (i, j), v in zip(unknowns, vec):
            rows[i - 1][j - 1] = v
            rows[j - 1][i - 1] = -v
        forms.append(Matrix(rows))
    return FormSolution(n, unknowns, len(pivots), tuple(forms))


def kernel_of_convolution(n: int) -> list[tuple[Fraction, ...]]:
    """Kernel of Q_Λ on degree n−1 in the v-basis, as coefficient vectors."""
    Q, _, _ = convolution_matrix(lambda_form(2 * n - 2), n - 1)
    return kernel_basis(Q)


def remark_forms() -> tuple[Matrix, Matrix]:
    """Two non-proportional 6×6 forms killing every w_σ for n=3 on Q^6, before restriction to V."""
    A = Matrix(
        [
            [0, 1, 1, -1, -1, 1],
            [-1, 0, 1, 0, -1, -1],
            [-1, -1, 0, 1, 0, -1],
            [1, 0, -1, 0, 1, 1],
            [1, 1, 0, -1, 0, 1],
            [-1, 1, 1, -1, -1, 0],
        ]
    )
    B = Matrix(
        [
            [0, -1, 0, 0, 0, 1],
            [1, 0, 1, 0, 0, 0],
            [0, -1, 0, -1, 0, 0],
            [0, 0, 1, 0, 1, 0],
            [0, 0, 0, -1, 0, -1],
            [-1, 0, 0, 0, 1, 0],
        ]
    )
    return A, B
