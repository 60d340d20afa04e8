"""Exact rational matrices and exterior-algebra primitives.

Scalars are :class:`fractions.Fraction`.  Matrices are immutable and indexed
from 0 like numpy (``M[i, j]``); every function that talks about index *sets*
(minors, Plücker coordinates, wedge monomials) uses 1-based sorted tuples, the
convention of the combinatorics built on top of this module.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import lcm
from typing import Iterable, Iterator, Mapping, Sequence

Rational = Fraction
IndexSet = tuple[int, ...]


class LinalgError(ValueError):
    """Dimension mismatch or malformed input."""


class RankError(LinalgError):
    """A matrix expected to have full row rank does not."""


class MembershipError(LinalgError):
    """A vector is not in the subspace it was claimed to lie in."""


def to_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    if isinstance(x, str):
        return parse_rational(x)
    return Fraction(x)


def parse_rational(text: str) -> Fraction:
    text = text.strip()
    try:
        if "/" in text:
            p, q = text.split("/")
            return Fraction(int(p), int(q))
        return Fraction(int(text))
    except (ValueError, ZeroDivisionError) as exc:
        raise LinalgError(f"not a rational: {text!r}") from exc


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Matrix:
    """Dense immutable matrix over the rationals."""

    __slots__ = ("_rows", "nrows", "ncols")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        data = tuple(tuple(to_rational(x) for x in row) for row in rows)
        if data:
            width = len(data[0])
            if any(len(r) != width for r in data):
                raise LinalgError("ragged rows")
        else:
            width = ncols or 0
        self._rows = data
        self.nrows = len(data)
        self.ncols = width

    # construction -------------------------------------------------------
    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[0] * ncols for _ in range(nrows)], ncols=ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def diag(cls, entries: Sequence) -> "Matrix":
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)], ncols=n)

    @classmethod
    def from_function(cls, nrows: int, ncols: int, f) -> "Matrix":
        return cls([[f(i, j) for j in range(ncols)] for i in range(nrows)], ncols=ncols)

    # access ---------------------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    @property
    def rows(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._rows

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self._rows[i]

    def col(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self._rows)

    def __getitem__(self, key):
        i, j = key
        return self._rows[i][j]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._rows]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        """0-based row/column selection."""
        return Matrix([[self._rows[i][j] for j in cols] for i in rows], ncols=len(cols))

    def delete_row(self, i: int) -> "Matrix":
        return Matrix([r for k, r in enumerate(self._rows) if k != i], ncols=self.ncols)

    # algebra --------------------------------------------------------------
    @property
    def T(self) -> "Matrix":
        return Matrix(zip(*self._rows), ncols=self.nrows) if self.nrows else Matrix([], ncols=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Matrix) and self.shape == other.shape and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self._rows, other._rows)], self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self._rows], self.ncols)

    def scale(self, c) -> "Matrix":
        c = to_rational(c)
        return Matrix([[c * a for a in r] for r in self._rows], self.ncols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise LinalgError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.T.rows if other.nrows else ()
        out = []
        for r in self._rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * c[k] for k, a in nz), Fraction(0)) for c in cols])
        return Matrix(out, ncols=other.ncols)

    def apply(self, vec: Sequence) -> tuple[Fraction, ...]:
        """Matrix times column vector."""
        if len(vec) != self.ncols:
            raise LinalgError("vector length mismatch")
        return tuple(sum((a * to_rational(b) for a, b in zip(r, vec) if a), Fraction(0)) for r in self._rows)

    def is_zero(self) -> bool:
        return all(a == 0 for r in self._rows for a in r)

    def is_antisymmetric(self) -> bool:
        return self.nrows == self.ncols and self == -self.T

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise LinalgError(f"shape mismatch {self.shape} vs {other.shape}")

    # elimination ------------------------------------------------------------
    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns (0-based)."""
        rows = [list(r) for r in self._rows]
        pivots: list[int] = []
        r = 0
        for c in range(self.ncols):
            p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
            if p is None:
                continue
            rows[r], rows[p] = rows[p], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [a * inv for a in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
            if r == len(rows):
                break
        return Matrix(rows, ncols=self.ncols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise LinalgError("determinant of a non-square matrix")
        return bareiss_det(self._rows)

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise LinalgError("inverse of a non-square matrix")
        aug = Matrix([list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(self._rows)])
        red, piv = aug.rref()
        if piv[:n] != tuple(range(n)):
            raise RankError("matrix is singular")
        return red.submatrix(range(n), range(n, 2 * n))

    def solve_left(self, target: "Matrix") -> "Matrix":
        """Unique X with X @ self == target (self must have full row rank)."""
        if self.rank() != self.nrows:
            raise RankError("left solve needs full row rank")
        sol = self.T.solve(target.T)
        return sol.T

    def solve(self, rhs: "Matrix") -> "Matrix":
        """Some X with self @ X == rhs; raises MembershipError if none exists.

        When the system is underdetermined the free variables are set to zero.
        """
        if rhs.nrows != self.nrows:
            raise LinalgError("right-hand side row count mismatch")
        aug = Matrix([list(a) + list(b) for a, b in zip(self._rows, rhs.rows)], ncols=self.ncols + rhs.ncols)
        red, piv = aug.rref()
        if piv and piv[-1] >= self.ncols:
            raise MembershipError("inconsistent linear system")
        out = [[Fraction(0)] * rhs.ncols for _ in range(self.ncols)]
        for r, c in enumerate(piv):
            out[c] = list(red.row(r)[self.ncols:])
        return Matrix(out, ncols=rhs.ncols)

    # text -------------------------------------------------------------------
    def to_text(self) -> str:
        return "\n".join(" ".join(format_rational(a) for a in r) for r in self._rows)

    @classmethod
    def from_text(cls, text: str) -> "Matrix":
        rows = []
        for line in text.splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                rows.append([parse_rational(tok) for tok in line.split()])
        return cls(rows)

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols})\n{self.to_text()}"


def hstack(*mats: Matrix) -> Matrix:
    return Matrix([sum((list(m.row(i)) for m in mats), []) for i in range(mats[0].nrows)])


def vstack(*mats: Matrix) -> Matrix:
    return Matrix([r for m in mats for r in m.rows], ncols=mats[0].ncols)


def bareiss_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Fraction-free elimination after clearing denominators row by row."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    a = []
    for r in rows:
        m = lcm(*(Fraction(x).denominator for x in r))
        scale *= m
        a.append([int(Fraction(x) * m) for x in r])
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return Fraction(0)
            a[k], a[p] = a[p], a[k]
            sign = -sign
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i, row_k = a[i], a[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * akk - aik * row_k[j]) // prev
            row_i[k] = 0
        prev = akk
    return Fraction(sign * a[n - 1][n - 1]) / scale


def cofactor_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Laplace expansion along the first row; an oracle for small sizes."""
    n = len(rows)
    if n == 0:
        return Fraction(1)
    if n == 1:
        return Fraction(rows[0][0])
    total = Fraction(0)
    for j, a in enumerate(rows[0]):
        if a:
            sub = [list(r[:j]) + list(r[j + 1:]) for r in rows[1:]]
            total += (-1) ** j * Fraction(a) * cofactor_det(sub)
    return total


def _check_indexset(idx: Sequence[int], m: int) -> IndexSet:
    idx = tuple(idx)
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise LinalgError(f"index set {idx} is not strictly increasing")
    if idx and (idx[0] < 1 or idx[-1] > m):
        raise LinalgError(f"index set {idx} out of range 1..{m}")
    return idx


def minor(M: Matrix, rows: Sequence[int], cols: Sequence[int]) -> Fraction:
    """Determinant of the submatrix on 1-based ``rows`` and ``cols``."""
    rows = _check_indexset(rows, M.nrows)
    cols = _check_indexset(cols, M.ncols)
    if len(rows) != len(cols):
        raise LinalgError("minor needs as many rows as columns")
    return bareiss_det([[M[i - 1, j - 1] for j in cols] for i in rows])


def kernel_basis(M: Matrix) -> list[tuple[Fraction, ...]]:
    """Basis of the right null space, one vector per free column."""
    red, piv = M.rref()
    free = [c for c in range(M.ncols) if c not in piv]
    basis = []
    for f in free:
        v = [Fraction(0)] * M.ncols
        v[f] = Fraction(1)
        for r, c in enumerate(piv):
            v[c] = -red[r, f]
        basis.append(tuple(v))
    return basis


def row_space_basis(M: Matrix) -> Matrix:
    red, piv = M.rref()
    return Matrix(red.rows[: len(piv)], ncols=M.ncols)


def subspace_relation(A: Matrix, B: Matrix) -> str:
    """Compare row spaces: ``equal``, ``A_in_B``, ``B_in_A`` or ``incomparable``."""
    if A.ncols != B.ncols:
        raise LinalgError("column counts differ")
    ra, rb = A.rank(), B.rank()
    rab = vstack(A, B).rank() if A.nrows and B.nrows else max(ra, rb)
    a_in_b = rab == rb
    b_in_a = rab == ra
    if a_in_b and b_in_a:
        return "equal"
    if a_in_b:
        return "A_in_B"
    if b_in_a:
        return "B_in_A"
    return "incomparable"


# ---------------------------------------------------------------------------
# exterior algebra
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class WedgeVector:
    """Element of the k-th exterior power of Q^m in the basis e_I."""

    ambient: int
    degree: int
    coeffs: Mapping[IndexSet, Fraction]

    def __post_init__(self):
        clean = {}
        for key, val in self.coeffs.items():
            key = _check_indexset(key, self.ambient)
            if len(key) != self.degree:
                raise LinalgError(f"key {key} has wrong degree (expected {self.degree})")
            val = to_rational(val)
            if val:
                clean[key] = val
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))

    @classmethod
    def zero(cls, ambient: int, degree: int) -> "WedgeVector":
        return cls(ambient, degree, {})

    @classmethod
    def basis(cls, ambient: int, index: Sequence[int]) -> "WedgeVector":
        return cls(ambient, len(index), {tuple(index): 1})

    def __getitem__(self, key: Sequence[int]) -> Fraction:
        return self.coeffs.get(tuple(key), Fraction(0))

    def __iter__(self) -> Iterator[tuple[IndexSet, Fraction]]:
        return iter(self.coeffs.items())

    def __len__(self) -> int:
        return len(self.coeffs)

    def support(self) -> frozenset[IndexSet]:
        return frozenset(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _compatible(self, other: "WedgeVector") -> None:
        if (self.ambient, self.degree) != (other.ambient, other.degree):
            raise LinalgError("wedge vectors live in different spaces")

    def __add__(self, other: "WedgeVector") -> "WedgeVector":
        self._compatible(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return WedgeVector(self.ambient, self.degree, out)

    def __sub__(self, other: "WedgeVector") -> "WedgeVector":
        return self + other.scale(-1)

    def __neg__(self) -> "WedgeVector":
        return self.scale(-1)

    def scale(self, c) -> "WedgeVector":
        c = to_rational(c)
        return WedgeVector(self.ambient, self.degree, {k: c * v for k, v in self.coeffs.items()})

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, WedgeVector)
            and (self.ambient, self.degree) == (other.ambient, other.degree)
            and self.coeffs == other.coeffs
        )

    def __hash__(self) -> int:
        return hash((self.ambient, self.degree, tuple(self.coeffs.items())))

    def wedge(self, other: "WedgeVector") -> "WedgeVector":
        if self.ambient != other.ambient:
            raise LinalgError("ambient dimensions differ")
        out: dict[IndexSet, Fraction] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                sgn, key = _merge_sign(a, b)
                if sgn:
                    out[key] = out.get(key, 0) + sgn * x * y
        return WedgeVector(self.ambient, self.degree + other.degree, out)

    def to_text(self) -> str:
        return "\n".join(f"{','.join(map(str, k))} : {format_rational(v)}" for k, v in self.coeffs.items())

    @classmethod
    def from_text(cls, text: str, ambient: int, degree: int) -> "WedgeVector":
        coeffs = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            key, val = line.split(":")
            idx = tuple(int(t) for t in key.split(",") if t.strip())
            coeffs[idx] = parse_rational(val)
        return cls(ambient, degree, coeffs)


def _merge_sign(a: IndexSet, b: IndexSet) -> tuple[int, IndexSet]:
    """Sign and sorted key of e_a ∧ e_b (0 if they share an index)."""
    if set(a) & set(b):
        return 0, ()
    inversions = sum(1 for x in a for y in b if x > y)
    return (-1) ** inversions, tuple(sorted(a + b))


def wedge_expand(factors: Sequence[Sequence], ambient: int | None = None) -> WedgeVector:
    """Expand x_1 ∧ … ∧ x_k for vectors given as dense sequences of length m."""
    if not factors:
        raise LinalgError("need at least one factor")
    m = ambient if ambient is not None else len(factors[0])
    if any(len(f) != m for f in factors):
        raise LinalgError("factor length mismatch")
    if len(factors) > m:
        raise LinalgError("more factors than the ambient dimension")
    terms: dict[IndexSet, Fraction] = {(): Fraction(1)}
    for f in factors:
        nz = [(j + 1, to_rational(c)) for j, c in enumerate(f) if c]
        nxt: dict[IndexSet, Fraction] = {}
        for key, val in terms.items():
            for j, c in nz:
                if j in key:
                    continue
                greater = sum(1 for x in key if x > j)
                new = tuple(sorted(key + (j,)))
                nxt[new] = nxt.get(new, 0) + (-1) ** greater * val * c
        terms = nxt
    return WedgeVector(m, len(factors), terms)


def plucker_of_rowspace(M: Matrix, check_rank: bool = True) -> WedgeVector:
    """All maximal minors of a k×m matrix as a wedge vector."""
    k, m = M.shape
    if k > m:
        raise LinalgError("more rows than columns")
    if check_rank and M.rank() != k:
        raise RankError(f"matrix has rank {M.rank()} < {k}")
    rows = tuple(range(1, k + 1))
    return WedgeVector(m, k, {I: minor(M, rows, I) for I in combinations(range(1, m + 1), k)})


def proportionality(u: WedgeVector, w: WedgeVector) -> Fraction | None:
    """The scalar c with u == c·w, or None when no single nonzero c exists."""
    u._compatible(w)
    if u.is_zero() or w.is_zero():
        return None
    if u.support() != w.support():
        return None
    key = next(iter(w.coeffs))
    c = u.coeffs[key] / w.coeffs[key]
    return c if all(u.coeffs[k] == c * v for k, v in w.coeffs.items()) else None


def is_proportional(u: WedgeVector, w: WedgeVector) -> bool:
    return proportionality(u, w) is not None


def compound_action(A: Matrix, w: WedgeVector) -> WedgeVector:
    """Image of w under e_i ↦ (row i of A), extended to the exterior power."""
    if A.nrows != w.ambient:
        raise LinalgError("operator size does not match the ambient dimension")
    out = WedgeVector.zero(A.ncols, w.degree)
    acc: dict[IndexSet, Fraction] = {}
    for key, val in w:
        image = wedge_expand([A.row(i - 1) for i in key], ambient=A.ncols)
        for k2, v2 in image:
            acc[k2] = acc.get(k2, 0) + val * v2
    return out + WedgeVector(A.ncols, w.degree, acc)


def all_index_sets(m: int, k: int) -> list[IndexSet]:
    return list(combinations(range(1, m + 1), k))


def leibniz_sign(perm: Sequence[int]) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


def permutation_det(rows: Sequence[Sequence[Fraction]]) -> Fraction:
    """Leibniz formula; used only by tests as a third determinant route."""
    n = len(rows)
    return sum(
        (leibniz_sign(p) * _prod(rows[i][p[i]] for i in range(n)) for p in permutations(range(n))),
        Fraction(0),
    )


def _prod(xs: Iterable[Fraction]) -> Fraction:
    out = Fraction(1)
    for x in xs:
        out *= x
    return out
