"""Explicit matrices realising a network as a point of a Grassmannian.

All functions take the response matrix (or resistance matrix) as input and
return exact rational matrices; "same point" checks compare Plücker vectors
up to one global scalar.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .linalg import Matrix, MembershipError, WedgeVector, is_proportional, plucker_of_rowspace
from .network import GaugeError, Network, check_response, dual_network, response_matrix
from .symplectic import basis_matrix, in_V, lambda_bar, lambda_form, lambda_tilde

__all__ = [
    "GaugeError",
    "omega_full",
    "omega_matrix",
    "basis_matrix",
    "to_v_basis",
    "omega_tilde",
    "cyclic_shift",
    "omega_resistance",
    "resistance_minor_matrix",
    "cgs_S",
    "cgs_M",
    "cgs_D",
    "d_tilde",
    "cgs_matrix",
    "x_matrix",
    "appendix_MB",
    "dual_point_check",
    "EmbeddingBundle",
    "embedding_bundle",
]


def _pattern(x: Matrix) -> Matrix:
    """n × 2n matrix: odd column 2j−1 of row i is (−1)^(i+j) x_ij; even columns
    carry 1 at 2i−2 and 2i, and row 1 wraps with (−1)^n in column 2n."""
    n = x.nrows
    rows = [[Fraction(0)] * (2 * n) for _ in range(n)]
    for i in range(n):
        for j in range(n):
            rows[i][2 * j] = (-1) ** (i + j) * x[i, j]
        rows[i][2 * i + 1] = Fraction(1)
        if i == 0:
            rows[i][2 * n - 1] = Fraction((-1) ** n)
        else:
            rows[i][2 * i - 1] = Fraction(1)
    return Matrix(rows, ncols=2 * n)


def omega_full(M_R: Matrix) -> Matrix:
    """All n rows; their alternating sum vanishes."""
    check_response(M_R)
    return _pattern(M_R)


def omega_matrix(M_R: Matrix) -> Matrix:
    """The (n−1) × 2n matrix with the dependent last row removed."""
    return omega_full(M_R).delete_row(M_R.nrows - 1)


def to_v_basis(M: Matrix) -> Matrix:
    """Coordinates of the rows of M in the basis v_i = e_i + e_{i+2}."""
    n = M.ncols // 2
    for k, r in enumerate(M.rows):
        if not in_V(r):
            raise MembershipError(f"row {k + 1} does not lie in V")
    # c_i = x_i − c_{i−2}, read off from the first 2n−2 coordinates
    out = []
    for r in M.rows:
        c = [Fraction(0)] * (2 * n - 2)
        for i in range(2 * n - 2):
            c[i] = r[i] - (c[i - 2] if i >= 2 else 0)
        out.append(c)
    res = Matrix(out, ncols=2 * n - 2)
    if res @ basis_matrix(n) != M:
        raise MembershipError("rows are not combinations of the v-basis")
    return res


def omega_tilde(M_R: Matrix) -> Matrix:
    return to_v_basis(omega_matrix(M_R))


def cyclic_shift(n: int) -> Matrix:
    """s with s[i, i+1] = 1 and s[2n, 1] = (−1)^n (1-based)."""
    m = 2 * n

    def f(i, j):
        if j == i + 1:
            return 1
        if i == m - 1 and j == 0:
            return (-1) ** n
        return 0

    return Matrix.from_function(m, m, f)


def resistance_minor_matrix(R: Matrix) -> Matrix:
    """m_ij = −½(R_ij + R_{i+1,j+1} − R_{i,j+1} − R_{i+1,j}), indices cyclic."""
    n = R.nrows

    def m(i, j):
        i1, j1 = (i + 1) % n, (j + 1) % n
        return -Fraction(1, 2) * (R[i, j] + R[i1, j1] - R[i, j1] - R[i1, j])

    return Matrix.from_function(n, n, m)


def omega_resistance(R: Matrix) -> Matrix:
    """Full n-row resistance embedding; drop the first row to get the independent rows."""
    n = R.nrows
    if R != R.T or any(R[i, i] for i in range(n)):
        raise GaugeError("resistance matrix must be symmetric with zero diagonal")
    return _pattern(resistance_minor_matrix(R)) @ cyclic_shift(n)


def cgs_S(M_R: Matrix, gauge: str = "last") -> Matrix:
    """A solution S of (M_R)_{k,i} = S_{i,k} − S_{i,k−1} (k−1 cyclic).

    ``gauge="last"`` sets S_{i,n} = 0, ``gauge="first"`` sets S_{i,1} = 0.
    """
    check_response(M_R)
    n = M_R.nrows
    S = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        if gauge == "last":
            acc = Fraction(0)
            for k in range(n):
                acc += M_R[k, i]
                S[i][k] = acc
        elif gauge == "first":
            for k in range(1, n):
                S[i][k] = S[i][k - 1] + M_R[k, i]
        else:
            raise ValueError(f"unknown gauge {gauge!r}")
    return Matrix(S, ncols=n)


def response_from_S(S: Matrix) -> Matrix:
    n = S.nrows
    return Matrix.from_function(n, n, lambda k, i: S[i, k] - S[i, (k - 1) % n])


def cgs_M(S: Matrix) -> Matrix:
    """(n+1) × 2n: row 0 is (0,1,0,1,…); row i has 1 at column 2i−1 and S_ij at 2j."""
    n = S.nrows
    rows = [[Fraction(k % 2) for k in range(2 * n)]]
    for i in range(n):
        r = [Fraction(0)] * (2 * n)
        r[2 * i] = Fraction(1)
        for j in range(n):
            r[2 * j + 1] = S[i, j]
        rows.append(r)
    return Matrix(rows, ncols=2 * n)


def cgs_D(n: int) -> Matrix:
    """diag(1, 1, −1, −1, 1, 1, …)."""
    return Matrix.diag([(-1) ** (k // 2) for k in range(2 * n)])


def d_tilde(n: int) -> Matrix:
    """diag(−1, 1, −1, 1, …)."""
    return Matrix.diag([(-1) ** (k + 1) for k in range(2 * n)])


def cgs_matrix(M_R: Matrix, gauge: str = "last") -> Matrix:
    S = cgs_S(M_R, gauge)
    return cgs_M(S) @ cgs_D(M_R.nrows)


def x_matrix(M_R: Matrix, gauge: str = "last") -> Matrix:
    """The coordinate matrix X = M·D, identical in formula to :func:`cgs_matrix`."""
    return cgs_matrix(M_R, gauge)


def appendix_MB(a, b, c) -> Matrix:
    """The 4×6 path-matrix example for the triangle with conductances a, b, c."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    return Matrix(
        [
            [1, 0, 0, a, 0, -(a + c)],
            [0, 1, 0, -1, 0, 1],
            [0, 0, 1, b + a, 0, -a],
            [0, 0, 0, b, 1, c],
        ]
    )


def dual_point_check(net: Network) -> bool:
    """Ω of the dual network spans the same point as Ω(net)·s⁻¹."""
    dual = dual_network(net)
    n = net.n
    lhs = plucker_of_rowspace(omega_matrix(response_matrix(dual)))
    rhs = plucker_of_rowspace(omega_matrix(response_matrix(net)) @ cyclic_shift(n).inverse())
    return is_proportional(lhs, rhs)


@dataclass(frozen=True)
class EmbeddingBundle:
    omega: Matrix
    omega_tilde: Matrix
    cgs_MD: Matrix
    s: Matrix
    B: Matrix
    D: Matrix
    D_tilde: Matrix


def embedding_bundle(M_R: Matrix) -> EmbeddingBundle:
    n = M_R.nrows
    om = omega_matrix(M_R)
    return EmbeddingBundle(
        omega=om,
        omega_tilde=to_v_basis(om),
        cgs_MD=cgs_matrix(M_R),
        s=cyclic_shift(n),
        B=basis_matrix(n),
        D=cgs_D(n),
        D_tilde=d_tilde(n),
    )
