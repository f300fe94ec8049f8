"""Lattice layer: genus, inner hull, divisibility, normal form."""

from vanishingcycles.lattice import (
    Polygon,
    adjoint,
    adjoint_divisibility,
    canonical_form,
    genus,
    is_hyperelliptic,
    is_smooth,
)

EXAMPLES = {
    "triangle side 6": Polygon(((0, 0), (6, 0), (0, 6))),
    "square side 4": Polygon(((0, 0), (4, 0), (4, 4), (0, 4))),
    "rectangle 4 x 2": Polygon(((0, 0), (4, 0), (4, 2), (0, 2))),
    "sheared triangle": Polygon(((2, 3), (8, 9), (2, 9))),
}

for name, P in EXAMPLES.items():
    adj = adjoint(P)
    print(f"{name}: vertices {list(P.vertices)}")
    print(f"  genus {genus(P)}, inner hull is a {adj.kind}, "
          f"smooth {is_smooth(P)}")
    if adj.kind == "polygon":
        Q, mapping = canonical_form(P)
        print(f"  modulus {adjoint_divisibility(P)}, "
              f"normal form {list(Q.vertices)}")
    elif adj.kind == "segment":
        print(f"  hyperelliptic: {is_hyperelliptic(P)} (no modulus)")
    print()
