"""Watch the Lam group generators act on groves and on concordance vectors."""

from fractions import Fraction
from pathlib import Path

from elnet.groves import grove_measurements, lam_plucker
from elnet.lam import act_on_wedge, crystal_image, generator, grove_coordinate_action, nilpotent
from elnet.linalg import is_proportional
from elnet.network import load
from elnet.noncrossing import NonCrossingPartition
from elnet.symplectic import concordance_vector

sigma = NonCrossingPartition.parse("1 5|2 3 4")
for i in range(1, 11):
    image = crystal_image(sigma, i)
    got = act_on_wedge(nilpotent(5, i), concordance_vector(sigma), "derivation")
    agrees = got.is_zero() if image is None else got == concordance_vector(image)
    print(f"generator {i}: {sigma} -> {image.merged if image else 'zero'} (matches the derivation: {agrees})")

net = load(Path(__file__).resolve().parents[1] / "fixtures" / "triangle.enet")
table = grove_measurements(net)
t = Fraction(3, 2)
for i in range(1, 7):
    moved = grove_coordinate_action(table, i, t)
    acted = act_on_wedge(generator(3, i, t).matrix, lam_plucker(table))
    print(f"adding an edge of weight {t} at position {i}: group action agrees: {is_proportional(lam_plucker(moved), acted)}")
