"""Surface layer: the doubled surface, its faces, and the symplectic form."""

from vanishingcycles.lattice import Polygon, genus
from vanishingcycles.network import ACurve, BCurve, build_network
from vanishingcycles.surface import (
    curve_class,
    euler_and_faces,
    homology_basis,
    inflate,
    is_filling,
)

P = Polygon(((0, 0), (6, 0), (0, 6)))
net = build_network(P)
S = inflate(P, net)

chi, faces = euler_and_faces(S)
print(f"ribbon surface: Euler characteristic {chi}, {len(faces)} faces, "
      f"genus {S.genus()} (lattice genus {genus(P)})")
print(f"network fills the surface: {is_filling(P, net)}")

form = homology_basis(S)
print(f"homology basis of rank {2 * form.genus}; standard pairing matrix "
      f"recovered: {form.matrix[0][1]}, {form.matrix[1][0]} on the first pair")

a = ACurve((0, 1))
print(f"\nclass of the circle at (0, 1): {curve_class(S, a)}")
for b in net.b_curves()[:3]:
    print(f"class of {b}: {curve_class(S, b)}")
