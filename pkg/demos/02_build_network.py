"""Network layer: the curve collection, its clauses, and its graph shape."""

from collections import Counter

from vanishingcycles.lattice import Polygon
from vanishingcycles.network import (
    build_network,
    dn_configuration,
    graph_stats,
    intersection_graph,
    subnetwork_nprime,
)

P = Polygon(((0, 0), (6, 0), (0, 6)))
net = build_network(P)

print(f"polygon {list(P.vertices)} -> normalized {list(net.polygon.vertices)}")
print(f"modulus r = {net.r}, curves = {len(net)}")
print("curves per clause:", dict(sorted(Counter(net.clauses.values()).items())))

connected, betti, is_tree = graph_stats(intersection_graph(net))
print(f"intersection graph: connected={connected}, first Betti={betti}, "
      f"tree={is_tree}")

nprime = subnetwork_nprime(net)
connected, betti, is_tree = graph_stats(intersection_graph(nprime))
print(f"reduced network:    connected={connected}, first Betti={betti}, "
      f"tree={is_tree}")

dn = dn_configuration(net)
print(f"\ndistinguished configuration ({dn.n} curves):")
print(f"  fork curves {dn.a}, {dn.a_prime}")
print(f"  chain of {len(dn.chain)} curves, closed by {dn.delta1}")
print(f"  omitted segment {dn.b_segment}, met once by {dn.d}")
