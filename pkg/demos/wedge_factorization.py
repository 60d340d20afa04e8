"""Factor concordance vectors into wedges of vectors in the subspace V."""

from elnet.noncrossing import NonCrossingPartition, enumerate_nc, format_extension, lagrangian_extension
from elnet.symplectic import algorithm_factorization, concordance_vector, restrict_to_V

for text in ("1 4 6|2 3|5", "1|2 5 8|3|4|6 7"):
    sigma = NonCrossingPartition.parse(text)
    f = algorithm_factorization(sigma)
    print(f"partition {sigma}")
    print("  merged with its dual:", sigma.merged)
    print("  brackets:", f.bracket_text())
    print("  in the v-basis:", f.v_text())
    print("  extension:", format_extension(lagrangian_extension(sigma)))
    print("  expansion matches the concordance vector:", f.expand() == concordance_vector(sigma))

for n in range(2, 7):
    ok = all(algorithm_factorization(s).expand_v() == restrict_to_V(concordance_vector(s)) for s in enumerate_nc(n))
    print(f"n={n}: every factorization expands correctly: {ok}")
