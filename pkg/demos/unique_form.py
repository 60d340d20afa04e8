"""Recover the symplectic form from the requirement that all concordance vectors are isotropic."""

from elnet.linalg import format_rational
from elnet.noncrossing import catalan
from elnet.symplectic import kernel_of_convolution, lambda_form, unique_form_solver

for n in range(3, 7):
    sol = unique_form_solver(n)
    g = sol.forms[0]
    ratio = g[0, 1]
    print(f"n={n}: solution space dimension {sol.dimension}, "
          f"equal to {format_rational(ratio)} times the standard form: {g == lambda_form(2 * n - 2).scale(ratio)}")

for n in (3, 4, 5):
    print(f"n={n}: kernel of contraction has dimension {len(kernel_of_convolution(n))}, Catalan number {catalan(n)}")
