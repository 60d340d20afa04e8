"""Follow one triangle network from edge weights to its three embeddings."""

from pathlib import Path

from elnet.embeddings import cgs_matrix, omega_matrix, omega_tilde
from elnet.groves import grove_measurements, lam_plucker
from elnet.linalg import format_rational, is_proportional, plucker_of_rowspace
from elnet.network import effective_resistance, load, response_matrix
from elnet.symplectic import lambda_bar, lambda_form, lambda_tilde

FIXTURE = Path(__file__).resolve().parents[1] / "fixtures" / "triangle.enet"


def show(title, M):
    print(title)
    for row in M.rows:
        print("   ", " ".join(format_rational(x) for x in row))


net = load(FIXTURE)
M = response_matrix(net)
show("response matrix:", M)
show("effective resistances:", effective_resistance(M))

table = grove_measurements(net)
print("grove measurements:")
print("   ", table.to_text().replace("\n", "\n    "))

om = omega_matrix(M)
show("row space point in the Lagrangian Grassmannian:", om)
coords = plucker_of_rowspace(om)
print("Plücker coordinates times the uncrossed measurement match the grove coordinates:",
      coords.scale(table.unc) == lam_plucker(table))

n = M.nrows
print("isotropic for the three forms:",
      (om @ lambda_bar(n) @ om.T).is_zero(),
      (omega_tilde(M) @ lambda_form(2 * n - 2) @ omega_tilde(M).T).is_zero(),
      (cgs_matrix(M) @ lambda_tilde(n) @ cgs_matrix(M).T).is_zero())
print("gauge choice does not move the co-concordant point:",
      is_proportional(plucker_of_rowspace(cgs_matrix(M, "last")), plucker_of_rowspace(cgs_matrix(M, "first"))))
