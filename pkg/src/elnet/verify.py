"""Network-level checks that compare the embedding matrices with grove data.

Each check returns a :class:`CheckReport`.  :func:`run_checks` runs a
selection in canonical order; the CLI and the acceptance tests both use it.
"""
from __future__ import annotations

from typing import Callable, Iterable

from .embeddings import (
    cgs_matrix,
    d_tilde,
    dual_point_check,
    omega_full,
    omega_matrix,
    omega_resistance,
    omega_tilde,
    x_matrix,
)
from .groves import (
    GroveTable,
    cgs_plucker,
    dimer_plucker,
    dual_temperley,
    grove_measurements,
    lagrangian_plucker,
    lam_plucker,
    temperley,
)
from .linalg import Matrix, WedgeVector, is_proportional, plucker_of_rowspace, subspace_relation
from .network import Network, UnsupportedError, check_response, effective_resistance, response_matrix
from .report import CheckReport
from .symplectic import lambda_bar, lambda_form, lambda_tilde


class _NeedsNetwork(Exception):
    """Raised inside a check that needs the graph when only M_R was given."""


class _Context:
    """Lazily computed data shared between checks on one network."""

    def __init__(self, net: Network | None, M: Matrix | None = None):
        self._net = net
        self._cache: dict[str, object] = {}
        if M is not None:
            check_response(M)
            self._cache["M"] = M

    @property
    def net(self) -> Network:
        if self._net is None:
            raise _NeedsNetwork
        return self._net

    @property
    def n(self) -> int:
        return self.M.nrows

    def get(self, key: str, make: Callable[[], object]):
        if key not in self._cache:
            self._cache[key] = make()
        return self._cache[key]

    @property
    def M(self) -> Matrix:
        return self.get("M", lambda: response_matrix(self.net))

    @property
    def groves(self) -> GroveTable:
        return self.get("groves", lambda: grove_measurements(self.net))


def _diff(got: WedgeVector, want: WedgeVector) -> list[tuple[str, str, str]]:
    keys = sorted(got.support() | want.support())
    return [(f"I={','.join(map(str, k))}", str(want[k]), str(got[k])) for k in keys if got[k] != want[k]]


def _compare_exact(rep: CheckReport, label: str, got: WedgeVector, want: WedgeVector) -> None:
    for ctx, e, a in _diff(got, want):
        rep.fail(f"{label} {ctx}", e, a)


def _zero(rep: CheckReport, label: str, M: Matrix) -> None:
    if not M.is_zero():
        rep.fail(label, "zero matrix", M.to_text().replace("\n", "; "))


def check_point_equality(ctx: _Context) -> CheckReport:
    """Δ_I(Ω') · L_unc equals the grove-based Δ^•_I for every I."""
    rep = CheckReport("point-equality")
    gt = ctx.groves
    got = plucker_of_rowspace(omega_matrix(ctx.M)).scale(gt.unc)
    _compare_exact(rep, "", got, lam_plucker(gt))
    return rep


def check_isotropy(ctx: _Context) -> CheckReport:
    rep = CheckReport("isotropy")
    n = ctx.n
    om = omega_full(ctx.M)
    _zero(rep, "Omega Lambda_2n^-1 Omega^T", om @ lambda_bar(n) @ om.T)
    ot = omega_tilde(ctx.M)
    _zero(rep, "Omega_tilde Lambda Omega_tilde^T", ot @ lambda_form(2 * n - 2) @ ot.T)
    md = cgs_matrix(ctx.M)
    _zero(rep, "MD Lambda_tilde MD^T", md @ lambda_tilde(n) @ md.T)
    if rep.ok:
        rep.note = "3 zero matrices"
    return rep


def check_orthogonality(ctx: _Context) -> CheckReport:
    rep = CheckReport("orthogonality")
    n = ctx.n
    _zero(rep, "MD (Omega D_tilde)^T", cgs_matrix(ctx.M) @ (omega_full(ctx.M) @ d_tilde(n)).T)
    return rep


def check_inclusion(ctx: _Context) -> CheckReport:
    """rowspace(Ω D̃) lies in the column space of Λ̄⁻¹ (MD)ᵀ."""
    rep = CheckReport("inclusion")
    n = ctx.n
    left = omega_full(ctx.M) @ d_tilde(n)
    right = (lambda_bar(n).inverse() @ cgs_matrix(ctx.M).T).T
    rel = subspace_relation(left, right)
    if rel not in ("A_in_B", "equal"):
        rep.fail("rowspace relation", "A_in_B", rel)
    return rep


def check_lagrangian(ctx: _Context) -> CheckReport:
    """Grove-based Lagrangian coordinates are proportional to the minors of Ω̃."""
    rep = CheckReport("lagrangian")
    got = plucker_of_rowspace(omega_tilde(ctx.M))
    want = lagrangian_plucker(ctx.groves)
    if not is_proportional(got, want):
        rep.fail("v-basis Pluecker vector", want.to_text().replace("\n", "; "), got.to_text().replace("\n", "; "))
    return rep


def check_resistance_embedding(ctx: _Context) -> CheckReport:
    """Δ_I(Ω'_R) · L_{12…n} equals Δ^•_I, with Ω'_R the resistance rows after the first."""
    rep = CheckReport("resistance-embedding")
    n = ctx.n
    gt = ctx.groves
    R = effective_resistance(ctx.M)
    rows = omega_resistance(R).delete_row(0)
    got = plucker_of_rowspace(rows).scale(gt.full)
    _compare_exact(rep, "", got, lam_plucker(gt))
    return rep


def check_dual_shift(ctx: _Context) -> CheckReport:
    rep = CheckReport("dual-shift")
    try:
        ok = dual_point_check(ctx.net)
    except UnsupportedError as exc:
        rep.status = "skipped"
        rep.note = str(exc)
        return rep
    if not ok:
        rep.fail("Omega(dual) vs Omega s^-1", "proportional", "not proportional")
    return rep


def check_dimer_vs_grove(ctx: _Context) -> CheckReport:
    rep = CheckReport("dimer-vs-grove")
    n = ctx.n
    gt = ctx.groves
    try:
        lam_dimer = dimer_plucker(temperley(ctx.net), n - 1)
        cgs_dimer = dimer_plucker(dual_temperley(ctx.net), n + 1)
    except UnsupportedError as exc:
        rep.status = "skipped"
        rep.note = str(exc)
        return rep
    _compare_exact(rep, "lam", lam_dimer, lam_plucker(gt))
    _compare_exact(rep, "cgs", cgs_dimer, cgs_plucker(gt))
    return rep


def check_x_matrix(ctx: _Context) -> CheckReport:
    """Minors of X are proportional to Δ^∘ in both gauges of S."""
    rep = CheckReport("x-matrix")
    want = cgs_plucker(ctx.groves)
    for gauge in ("first", "last"):
        got = plucker_of_rowspace(x_matrix(ctx.M, gauge))
        if not is_proportional(got, want):
            rep.fail(f"gauge={gauge}", "proportional to co-concordant grove sums", "not proportional")
    return rep


CHECKS: dict[str, Callable[[_Context], CheckReport]] = {
    "dimer-vs-grove": check_dimer_vs_grove,
    "dual-shift": check_dual_shift,
    "inclusion": check_inclusion,
    "isotropy": check_isotropy,
    "lagrangian": check_lagrangian,
    "orthogonality": check_orthogonality,
    "point-equality": check_point_equality,
    "resistance-embedding": check_resistance_embedding,
    "x-matrix": check_x_matrix,
}


def resolve_checks(selection: str | Iterable[str]) -> list[str]:
    """Parse ``all`` or a comma separated list into canonical (sorted) order."""
    names = selection.split(",") if isinstance(selection, str) else list(selection)
    names = [s.strip() for s in names if s.strip()]
    if "all" in names:
        return sorted(CHECKS)
    unknown = [s for s in names if s not in CHECKS]
    if unknown:
        raise ValueError(f"unknown check(s): {', '.join(unknown)}")
    return sorted(set(names))


def _run(ctx: _Context, selection) -> list[CheckReport]:
    out = []
    for name in resolve_checks(selection):
        try:
            out.append(CHECKS[name](ctx))
        except _NeedsNetwork:
            out.append(CheckReport(name, "skipped", note="needs the network, only a response matrix was given"))
    return out


def run_checks(net: Network, selection: str | Iterable[str] = "all") -> list[CheckReport]:
    if net.cactus is not None:
        raise UnsupportedError("checks need an ordinary network; cactus networks have no response matrix")
    return _run(_Context(net), selection)


def run_checks_on_response(M: Matrix, selection: str | Iterable[str] = "all") -> list[CheckReport]:
    """Checks that only need M_R; the rest are reported as skipped.  Raises GaugeError on bad input."""
    return _run(_Context(None, M), selection)
