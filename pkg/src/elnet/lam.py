"""Lam generators acting on Plücker vectors and on grove coordinates.

Points are row spaces, so a matrix ``A`` acts on the right: ``X ↦ X·A``.  On
wedge vectors this sends ``e_i`` to row ``i`` of ``A``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .embeddings import cyclic_shift, to_v_basis
from .groves import GroveTable
from .linalg import IndexSet, LinalgError, Matrix, MembershipError, WedgeVector, compound_action, wedge_expand
from .noncrossing import NonCrossingPartition, enumerate_nc, from_dual, isolate, merges_of, pairing
from .report import CheckReport
from .symplectic import basis_matrix, concordance_vector, lambda_form


class InvarianceError(LinalgError):
    """The subspace V is not mapped into itself."""


def _unit(m: int, i: int, j: int, t) -> Matrix:
    """Identity plus t at 1-based position (i, j)."""
    t = Fraction(t)
    return Matrix.from_function(m, m, lambda a, b: (1 if a == b else 0) + (t if (a, b) == (i - 1, j - 1) else 0))


def x_gen(n: int, i: int, t) -> Matrix:
    if i == 2 * n:
        s = cyclic_shift(n)
        return s @ _unit(2 * n, 1, 2, t) @ s.inverse()
    return _unit(2 * n, i, i + 1, t)


def y_gen(n: int, i: int, t) -> Matrix:
    if i == 2 * n:
        s = cyclic_shift(n)
        return s @ _unit(2 * n, 2, 1, t) @ s.inverse()
    return _unit(2 * n, i + 1, i, t)


@dataclass(frozen=True)
class LamGenerator:
    n: int
    i: int
    t: Fraction
    matrix: Matrix
    nilpotent: Matrix


def generator(n: int, i: int, t=1) -> LamGenerator:
    """``u_i(t) = x_i(t) y_{i−1}(t)`` with indices mod 2n."""
    if not 1 <= i <= 2 * n:
        raise LinalgError(f"generator index must lie in 1..{2 * n}")
    prev = (i - 2) % (2 * n) + 1
    U = x_gen(n, i, t) @ y_gen(n, prev, t)
    nil = x_gen(n, i, 1) @ y_gen(n, prev, 1) - Matrix.identity(2 * n)
    return LamGenerator(n, i, Fraction(t), U, nil)


def wraparound_generator(n: int, i: int, t) -> Matrix:
    """Direct construction of u_1 and u_2n with the sign (−1)^n at the corner."""
    t = Fraction(t)
    m = 2 * n
    rows = Matrix.identity(m).tolist()
    sgn = (-1) ** n
    if i == 1:
        rows[0][1] += t
        rows[0][m - 1] += sgn * t
    elif i == m:
        rows[m - 1][0] += sgn * t
        rows[m - 1][m - 2] += t
    else:
        rows[i - 1][i] += t
        rows[i - 1][i - 2] += t
    return Matrix(rows)


def restrict_to_V_operator(U: Matrix) -> Matrix:
    """The matrix U|_V with B·U = U|_V·B."""
    n = U.nrows // 2
    B = basis_matrix(n)
    try:
        return to_v_basis(B @ U)
    except MembershipError as exc:
        raise InvarianceError("V is not invariant under this operator") from exc


def act_on_wedge(A: Matrix, w: WedgeVector, mode: str = "group") -> WedgeVector:
    """Right action on Plücker vectors: ⋀A (group) or its Leibniz extension (derivation)."""
    if A.nrows != A.ncols or A.nrows != w.ambient:
        raise LinalgError("operator must be square and match the ambient dimension")
    if mode == "group":
        return compound_action(A, w)
    if mode != "derivation":
        raise ValueError(f"unknown mode {mode!r}")
    m = w.ambient
    acc: dict[IndexSet, Fraction] = {}
    for key, c in w:
        for pos, i in enumerate(key):
            factors = [
                A.row(i - 1) if p == pos else tuple(1 if j == x - 1 else 0 for j in range(m))
                for p, x in enumerate(key)
            ]
            for k2, v in wedge_expand(factors):
                acc[k2] = acc.get(k2, 0) + c * v
    return WedgeVector(m, w.degree, acc)


def crystal_image(sigma: NonCrossingPartition, i: int) -> NonCrossingPartition | None:
    """``g_i σ`` when i is not isolated in ``(σ|σ̃)``, else None (the zero vector)."""
    if sigma.merged.is_isolated(i):
        return None
    return isolate(sigma, i).sigma


def grove_coordinate_action(gt: GroveTable, i: int, a) -> GroveTable:
    """Grove measurements of the point moved by ``u_i(a)``.

    Only partitions in which the vertex touched by ``u_i`` is isolated change;
    they collect ``a`` times the measurements of every single merge of it.
    """
    a = Fraction(a)
    n = gt.n
    k = (i + 1) // 2
    out = dict(gt.entries)
    for sigma in enumerate_nc(n):
        if i % 2:
            if not sigma.is_isolated(k):
                continue
            sources = merges_of(sigma, k)
        else:
            tau = sigma.dual
            if not tau.is_isolated(k):
                continue
            sources = [from_dual(t) for t in merges_of(tau, k)]
        bump = sum((gt[s] for s in sources), Fraction(0))
        if bump:
            out[sigma] = gt[sigma] + a * bump
    return GroveTable(n, out)


# ---------------------------------------------------------------------------
# concordance-basis coordinates and the pairing
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _concordance_solver(n: int):
    parts = tuple(enumerate_nc(n))
    vecs = [concordance_vector(s) for s in parts]
    keys = sorted({k for v in vecs for k in v.coeffs})
    A = Matrix([[v[k] for v in vecs] for k in keys], ncols=len(parts))
    _, piv = A.T.rref()
    rows = [keys[p] for p in piv]
    if len(rows) != len(parts):
        raise LinalgError("concordance vectors are dependent")
    inv = Matrix([[v[k] for v in vecs] for k in rows]).inverse()
    return parts, vecs, rows, inv


def concordance_coordinates(w: WedgeVector) -> dict[NonCrossingPartition, Fraction]:
    """Coefficients of w in the basis {w_σ}; raises MembershipError outside H."""
    n = w.ambient // 2
    parts, vecs, rows, inv = _concordance_solver(n)
    coef = inv.apply([w[k] for k in rows])
    recon = WedgeVector.zero(w.ambient, w.degree)
    for c, v in zip(coef, vecs):
        if c:
            recon = recon + v.scale(c)
    if recon != w:
        raise MembershipError("vector is not in the span of the concordance vectors")
    return {s: c for s, c in zip(parts, coef) if c}


def wedge_pairing(u: WedgeVector, w: WedgeVector) -> Fraction:
    cu, cw = concordance_coordinates(u), concordance_coordinates(w)
    return sum((a * b * pairing(t, s) for t, a in cu.items() for s, b in cw.items()), Fraction(0))


def nilpotent(n: int, i: int) -> Matrix:
    return generator(n, i, 1).nilpotent


def crystal_check(n: int) -> CheckReport:
    """𝔲_i w_σ is w_{g_i σ}, or zero exactly when i is isolated, for all σ and i."""
    rep = CheckReport(f"crystal n={n}")
    for sigma in enumerate_nc(n):
        w = concordance_vector(sigma)
        for i in range(1, 2 * n + 1):
            got = act_on_wedge(nilpotent(n, i), w, "derivation")
            target = crystal_image(sigma, i)
            want = WedgeVector.zero(2 * n, n - 1) if target is None else concordance_vector(target)
            if got != want:
                rep.fail(f"sigma={sigma} i={i}", "0" if target is None else f"w[{target}]", got.to_text() or "0")
    return rep


def invariance_check(n: int) -> CheckReport:
    """⟨𝔲_i w_τ, w_σ⟩ = ⟨w_τ, 𝔲_i w_σ⟩ for every pair and every generator."""
    rep = CheckReport(f"pairing invariance n={n}")
    parts = enumerate_nc(n)
    vecs = {s: concordance_vector(s) for s in parts}
    for i in range(1, 2 * n + 1):
        nil = nilpotent(n, i)
        images = {s: act_on_wedge(nil, vecs[s], "derivation") for s in parts}
        coords = {s: concordance_coordinates(images[s]) for s in parts}
        for tau in parts:
            for sigma in parts:
                lhs = sum((c * pairing(t, sigma) for t, c in coords[tau].items()), Fraction(0))
                rhs = sum((c * pairing(tau, t) for t, c in coords[sigma].items()), Fraction(0))
                if lhs != rhs:
                    rep.fail(f"tau={tau} sigma={sigma} i={i}", lhs, rhs)
    return rep


def symplectic_check(n: int, params=(1, 2, Fraction(5, 3))) -> CheckReport:
    """u_i(t)|_V · Λ · (u_i(t)|_V)ᵀ = Λ for every generator and parameter."""
    rep = CheckReport(f"symplectic invariance n={n}")
    lam = lambda_form(2 * n - 2)
    for i in range(1, 2 * n + 1):
        for t in params:
            R = restrict_to_V_operator(generator(n, i, t).matrix)
            got = R @ lam @ R.T
            if got != lam:
                rep.fail(f"i={i} t={t}", "Lambda", got.to_text())
    return rep
