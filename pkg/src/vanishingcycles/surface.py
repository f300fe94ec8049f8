"""The doubled surface spanned by a curve network, as a ribbon graph.

The smooth curve modelled by a polygon is built combinatorially by doubling
the polygon (minus a small disk at each interior lattice point) along its
full boundary.  Circles live on the seams, segment curves run through the
front copy and return through the back copy.  Every transverse crossing of a
circle and a segment curve becomes a 4-valent vertex of a ribbon graph; the
cyclic dart order at each vertex encodes the embedding, so Euler
characteristic, faces, homology and the integer intersection pairing are all
exact combinatorial computations.

Sign conventions (pinned here, used by every downstream module):
  * circles are oriented counterclockwise as seen in the front copy;
  * a segment curve is oriented along its segment in the front copy, from
    the lexicographically smaller endpoint to the larger one;
  * with these orientations the crossing of circle A(v) with segment curve
    B(s) counts +1 when s exits v, and -1 when s enters v.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple, Union

from .intlinalg import (
    det_bareiss,
    integer_row_echelon,
    smith_normal_form,
    standard_j,
    symplectic_gram_schmidt,
)
from .lattice import Point, Polygon, Segment, genus
from .network import (
    ACurve,
    Arc,
    BCurve,
    Crossing,
    CurveId,
    Network,
    NetworkError,
    check_network_invariants,
    crossing_sort_key,
    curve_arcs,
    curve_crossings,
    curve_sort_key,
)


class SurfaceError(ValueError):
    pass


class NonTransverseData(SurfaceError):
    pass


class NotClosedSurface(SurfaceError):
    pass


class UnknownCurve(SurfaceError):
    pass


class EmptySurface(SurfaceError):
    pass


@dataclass(frozen=True)
class PhantomVertex:
    """Placeholder vertex for a curve without any crossings; its regular
    neighborhood is an annulus and capping it off yields a genus-0 piece."""

    curve: CurveId


Vertex = Union[Crossing, PhantomVertex]
Dart = Tuple[Arc, int]  # (arc, 0) leaves arc.start, (arc, 1) leaves arc.end


def _vertex_key(v: Vertex):
    if isinstance(v, PhantomVertex):
        return (2, curve_sort_key(v.curve))
    return (0,) + crossing_sort_key(v)


def _arc_key(a: Arc):
    return (curve_sort_key(a.curve), a.index)


def _dart_key(d: Dart):
    return (_arc_key(d[0]), d[1])


def dart_partner(d: Dart) -> Dart:
    return (d[0], 1 - d[1])


def dart_vertex(d: Dart) -> Vertex:
    """Vertex a dart is attached to (the one it leaves when traversed)."""
    arc, end = d
    x = arc.start if end == 0 else arc.end
    if x is None:
        return PhantomVertex(arc.curve)
    return x


@dataclass
class RibbonSurface:
    """Rotation system of the doubled surface cut out by a network."""

    network: Network
    vertices: Tuple[Vertex, ...]
    arcs: Tuple[Arc, ...]
    rotation: Dict[Vertex, Tuple[Dart, ...]]
    faces: Tuple[Tuple[Dart, ...], ...]
    curve_arcs: Dict[CurveId, Tuple[Arc, ...]]
    _homology: Optional["IntersectionForm"] = field(default=None, repr=False)

    def euler(self) -> int:
        if not self.arcs:
            raise EmptySurface("surface of an empty network has no Euler number")
        return len(self.vertices) - len(self.arcs) + len(self.faces)

    def components(self) -> List[FrozenSet[CurveId]]:
        parent = {c: c for c in self.network.curve_list()}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for v in self.vertices:
            if isinstance(v, Crossing):
                ra, rb = find(v.a), find(v.b)
                if ra != rb:
                    parent[ra] = rb
        groups: Dict[CurveId, set] = {}
        for c in parent:
            groups.setdefault(find(c), set()).add(c)
        return [frozenset(g) for g in groups.values()]

    def is_connected(self) -> bool:
        return len(self.components()) == 1

    def genus(self) -> int:
        if not self.is_connected():
            raise NotClosedSurface("surface is not connected")
        chi = self.euler()
        assert chi % 2 == 0 and chi <= 2
        return (2 - chi) // 2

    def face_of_dart(self) -> Dict[Dart, int]:
        out = {}
        for i, walk in enumerate(self.faces):
            for d in walk:
                out[d] = i
        return out


@dataclass(frozen=True)
class Cycle:
    """Closed dart path: each dart leaves the vertex the previous one
    arrived at."""

    darts: Tuple[Dart, ...]

    def __post_init__(self):
        ds = self.darts
        if not ds:
            raise SurfaceError("empty cycle")
        for d, e in zip(ds, ds[1:] + ds[:1]):
            if dart_vertex(dart_partner(d)) != dart_vertex(e):
                raise SurfaceError("cycle is not closed")

    @staticmethod
    def from_curve(surface: RibbonSurface, c: CurveId) -> "Cycle":
        if c not in surface.curve_arcs:
            raise UnknownCurve(f"curve {c} is not on this surface")
        return Cycle(tuple((a, 0) for a in surface.curve_arcs[c]))


@dataclass
class IntersectionForm:
    """Symplectic homology data of a closed ribbon surface.

    ``basis`` holds 2g cycles ordered x1, y1, ..., xg, yg whose pairing is
    exactly ``matrix`` (the standard interleaved form).  ``base_change``
    expresses each basis class as an integer combination of the fundamental
    loops of the non-tree arcs (``chords``); ``chord_gram`` is the pairing of
    those loops, computed from the rotation system.
    """

    genus: int
    basis: Tuple[Cycle, ...]
    matrix: Tuple[Tuple[int, ...], ...]
    base_change: Tuple[Tuple[int, ...], ...]
    chords: Tuple[Arc, ...]
    chord_gram: Tuple[Tuple[int, ...], ...]
    tree: Tuple[Arc, ...]


@dataclass(frozen=True)
class Region:
    """A complementary region of a subfamily of network curves, obtained by
    merging ribbon faces across every arc not cut along."""

    faces: FrozenSet[int]
    chi: int
    boundary_curves: FrozenSet[CurveId]
    internal_curves: FrozenSet[CurveId]
    internal_arcs: int
    internal_vertices: int


def _overlapping_collinear(s: Segment, t: Segment) -> bool:
    d = s.direction
    u = (t.a[0] - s.a[0], t.a[1] - s.a[1])
    v = (t.b[0] - s.a[0], t.b[1] - s.a[1])
    if d[0] * u[1] - d[1] * u[0] != 0 or d[0] * v[1] - d[1] * v[0] != 0:
        return False
    lo, hi = 0, d[0] * d[0] + d[1] * d[1]
    p = u[0] * d[0] + u[1] * d[1]
    q = v[0] * d[0] + v[1] * d[1]
    p, q = min(p, q), max(p, q)
    return min(hi, q) > max(lo, p)


def inflate(P: Polygon, net: Network) -> RibbonSurface:
    """Build the rotation system of the doubled surface cut out by ``net``.

    ``net`` carries its own normalized polygon; ``P`` is accepted in either
    the original or the normalized coordinates and checked for consistency.
    """
    if genus(P) != genus(net.polygon):
        raise SurfaceError("network does not belong to this polygon")

    bs = [b.segment for b in net.b_curves()]
    for i, s in enumerate(bs):
        for t in bs[i + 1:]:
            if _overlapping_collinear(s, t):
                raise NonTransverseData(
                    f"segments {s} and {t} overlap along a subsegment")

    arcs_by_curve: Dict[CurveId, Tuple[Arc, ...]] = {}
    for c in net.curve_list():
        arcs_by_curve[c] = tuple(curve_arcs(net, c))

    rotation: Dict[Vertex, Tuple[Dart, ...]] = {}
    for a in net.a_curves():
        xs = curve_crossings(net, a)
        arcs = arcs_by_curve[a]
        if not xs:
            loop = arcs[0]
            rotation[PhantomVertex(a)] = ((loop, 0), (loop, 1))
            continue
        k = len(xs)
        for i, x in enumerate(xs):
            a_next = (arcs[i], 0)
            a_prev = (arcs[i - 1], 1)
            b = x.b
            bxs = curve_crossings(net, b)
            barcs = arcs_by_curve[b]
            if len(bxs) == 2:
                if x == bxs[0]:
                    b_front, b_back = (barcs[0], 0), (barcs[1], 1)
                else:
                    b_front, b_back = (barcs[0], 1), (barcs[1], 0)
            elif x.a.point == b.segment.a:
                # lone crossing at the start of the segment: the curve
                # departs on the front sheet and returns on the back
                b_front, b_back = (barcs[0], 0), (barcs[0], 1)
            else:
                # lone crossing at the far end: it arrives on the front
                b_front, b_back = (barcs[0], 1), (barcs[0], 0)
            # counterclockwise in the front copy: segment out, circle
            # forward, segment back-copy, circle backward
            rotation[x] = (b_front, a_next, b_back, a_prev)
    for b in net.b_curves():
        if not curve_crossings(net, b):
            loop = arcs_by_curve[b][0]
            rotation[PhantomVertex(b)] = ((loop, 0), (loop, 1))

    vertices = tuple(sorted(rotation, key=_vertex_key))
    arcs = tuple(a for c in net.curve_list() for a in arcs_by_curve[c])
    faces = _trace_faces(rotation)
    surf = RibbonSurface(net, vertices, arcs, rotation, faces, arcs_by_curve)
    if arcs:
        chi = surf.euler()
        assert chi % 2 == 0 and chi <= 2 * len(surf.components())
    return surf


def _trace_faces(rotation: Dict[Vertex, Tuple[Dart, ...]]):
    succ: Dict[Dart, Dart] = {}
    for darts in rotation.values():
        for i, d in enumerate(darts):
            succ[d] = darts[(i + 1) % len(darts)]
    faces = []
    seen = set()
    for d0 in sorted(succ, key=_dart_key):
        if d0 in seen:
            continue
        walk = []
        d = d0
        while True:
            walk.append(d)
            seen.add(d)
            d = succ[dart_partner(d)]
            if d == d0:
                break
        faces.append(tuple(walk))
    return tuple(faces)


def euler_and_faces(S: RibbonSurface) -> Tuple[int, List[Tuple[Dart, ...]]]:
    return S.euler(), list(S.faces)


def is_filling(P: Polygon, net: Network) -> bool:
    """True iff every complementary piece of the network is a disk."""
    S = inflate(P, net)
    if not S.arcs:
        return False
    return S.is_connected() and S.euler() == 2 - 2 * genus(P)


# --- homology ----------------------------------------------------------------

def _spanning_tree(S: RibbonSurface) -> List[Arc]:
    root = S.vertices[0]
    seen = {root}
    tree: List[Arc] = []
    frontier = [root]
    incident: Dict[Vertex, List[Arc]] = {v: [] for v in S.vertices}
    for a in S.arcs:
        incident[dart_vertex((a, 0))].append(a)
        incident[dart_vertex((a, 1))].append(a)
    while frontier:
        v = frontier.pop()
        for a in incident[v]:
            for end in (0, 1):
                w = dart_vertex((a, end))
                if w not in seen:
                    seen.add(w)
                    tree.append(a)
                    frontier.append(w)
    if len(seen) != len(S.vertices):
        raise NotClosedSurface("surface is not connected")
    return tree


def _rose_rotation(S: RibbonSurface, tree: Sequence[Arc]):
    """Contract every tree arc, splicing rotations; returns the cyclic dart
    list at the single remaining vertex."""
    rot: Dict[Vertex, List[Dart]] = {v: list(ds) for v, ds in S.rotation.items()}
    owner: Dict[Vertex, Vertex] = {v: v for v in S.vertices}

    def find(v):
        while owner[v] != v:
            owner[v] = owner[owner[v]]
            v = owner[v]
        return v

    for a in tree:
        u = find(dart_vertex((a, 0)))
        w = find(dart_vertex((a, 1)))
        if u == w:
            raise SurfaceError("tree arc joins a vertex to itself")
        ru, rw = rot[u], rot[w]
        iu, iw = ru.index((a, 0)), rw.index((a, 1))
        rot[u] = ru[iu + 1:] + ru[:iu] + rw[iw + 1:] + rw[:iw]
        owner[w] = u
        del rot[w]
    (rose,) = rot.values()
    return rose


def _interleave_sign(rose: Sequence[Dart], x: Arc, y: Arc) -> int:
    pos = {d: i for i, d in enumerate(rose)}
    L = len(rose)
    base = pos[(x, 0)]

    def rel(d):
        return (pos[d] - base) % L

    in_x, in_y, out_y = rel((x, 1)), rel((y, 1)), rel((y, 0))
    if in_y < in_x < out_y:
        return 1
    if out_y < in_x < in_y:
        return -1
    return 0


def _chord_vector(chords: Sequence[Arc], cycle: Cycle) -> List[int]:
    index = {a: i for i, a in enumerate(chords)}
    v = [0] * len(chords)
    for arc, end in cycle.darts:
        if arc in index:
            v[index[arc]] += 1 if end == 0 else -1
    return v


def _tree_paths(S: RibbonSurface, tree: Sequence[Arc]):
    """Dart paths from the root to every vertex through the tree."""
    root = S.vertices[0]
    adj: Dict[Vertex, List[Tuple[Vertex, Dart]]] = {v: [] for v in S.vertices}
    for a in tree:
        u, w = dart_vertex((a, 0)), dart_vertex((a, 1))
        adj[u].append((w, (a, 0)))
        adj[w].append((u, (a, 1)))
    paths: Dict[Vertex, Tuple[Dart, ...]] = {root: ()}
    stack = [root]
    while stack:
        v = stack.pop()
        for w, d in adj[v]:
            if w not in paths:
                paths[w] = paths[v] + (d,)
                stack.append(w)
    return paths


def _reverse_path(path: Tuple[Dart, ...]) -> Tuple[Dart, ...]:
    return tuple(dart_partner(d) for d in reversed(path))


def _radical_complement(G, kernel, V, D):
    """Integer complement of the radical of G in Z^m.

    Prefer standard unit vectors (so basis classes stay aligned with the
    chord loops themselves) when they complete the radical to a basis of
    Z^m; otherwise fall back to the Smith normal form columns.
    """
    m = len(G)
    rank = len(kernel)
    chosen: List[List[int]] = []
    for j in range(m):
        e = [1 if i == j else 0 for i in range(m)]
        cand = kernel + chosen + [e]
        if len(integer_row_echelon(cand, m)) > rank + len(chosen):
            chosen.append(e)
    if len(kernel) + len(chosen) == m:
        square = [row[:] for row in kernel + chosen]
        if abs(det_bareiss(square)) == 1:
            return chosen
    return [[V[i][j] for i in range(m)] for j in range(m) if D[j][j] != 0]


def homology_basis(S: RibbonSurface, tree: Optional[Sequence[Arc]] = None) -> IntersectionForm:
    """Symplectic basis of the closed surface obtained by capping the faces.

    The surface must be connected.  A spanning tree of the ribbon graph may
    be supplied; by default a breadth-first tree is used.  Non-tree arcs
    ("chords") give fundamental loops; their pairing comes from the cyclic
    dart order after contracting the tree, and a symplectic basis of the
    pairing modulo its radical is returned with the standard form.
    """
    custom_tree = tree is not None
    if S._homology is not None and not custom_tree:
        return S._homology
    if not S.arcs:
        raise EmptySurface("no homology for the empty surface")
    if not S.is_connected():
        raise NotClosedSurface("surface is not connected")
    if tree is None:
        tree = _spanning_tree(S)
    else:
        tree = list(tree)
        if len(tree) != len(S.vertices) - 1 or len(set(tree)) != len(tree):
            raise SurfaceError("not a spanning tree")
    tree_set = set(tree)
    chords = tuple(a for a in S.arcs if a not in tree_set)
    m = len(chords)
    rose = _rose_rotation(S, tree)
    G = [[_interleave_sign(rose, x, y) for y in chords] for x in chords]
    for i in range(m):
        for j in range(m):
            assert G[i][j] == -G[j][i]

    D, U, V = smith_normal_form([row[:] for row in G])
    kernel = [[V[i][j] for i in range(m)] for j in range(m) if D[j][j] == 0]
    comp = _radical_complement(G, kernel, V, D)
    two_g = len(comp)
    assert two_g % 2 == 0
    g = two_g // 2
    chi = S.euler()
    if chi != 2 - 2 * g:
        raise NotClosedSurface(
            f"pairing rank {two_g} does not match Euler number {chi}")

    def pair(u, v):
        return sum(u[i] * sum(G[i][j] * v[j] for j in range(m)) for i in range(m))

    Ghat = [[pair(u, v) for v in comp] for u in comp]
    sgs = symplectic_gram_schmidt(Ghat)
    base_change = []
    for coeffs in sgs:
        vec = [0] * m
        for c, basis_vec in zip(coeffs, comp):
            for i in range(m):
                vec[i] += c * basis_vec[i]
        base_change.append(tuple(vec))

    paths = _tree_paths(S, tree)
    loop_walks = {}
    for a in chords:
        u, w = dart_vertex((a, 0)), dart_vertex((a, 1))
        loop_walks[a] = paths[u] + ((a, 0),) + _reverse_path(paths[w])

    basis_cycles = []
    for vec in base_change:
        walk: List[Dart] = []
        for a, n in zip(chords, vec):
            if n == 0:
                continue
            piece = loop_walks[a]
            if n < 0:
                piece = _reverse_path(piece)
            walk.extend(piece * abs(n))
        basis_cycles.append(Cycle(tuple(walk)))

    J = standard_j(g)
    for i in range(two_g):
        for j in range(two_g):
            assert pair(list(base_change[i]), list(base_change[j])) == J[i][j]

    form = IntersectionForm(
        genus=g,
        basis=tuple(basis_cycles),
        matrix=tuple(tuple(row) for row in J),
        base_change=tuple(base_change),
        chords=chords,
        chord_gram=tuple(tuple(row) for row in G),
        tree=tuple(tree),
    )
    if not custom_tree:
        S._homology = form
    return form


def cycle_pairing(S: RibbonSurface, u: Cycle, v: Cycle) -> int:
    """Algebraic intersection number of two cycles via chord coordinates."""
    form = homology_basis(S)
    a = _chord_vector(form.chords, u)
    b = _chord_vector(form.chords, v)
    G = form.chord_gram
    m = len(a)
    return sum(a[i] * sum(G[i][j] * b[j] for j in range(m)) for i in range(m))


def curve_class(S: RibbonSurface, c: CurveId) -> Tuple[int, ...]:
    """Coordinates of a network curve in the symplectic basis, ordered
    x1, y1, ..., xg, yg."""
    if not isinstance(c, (ACurve, BCurve)) or c not in S.curve_arcs:
        raise UnknownCurve(f"curve {c!r} is not on this surface")
    form = homology_basis(S)
    u = _chord_vector(form.chords, Cycle.from_curve(S, c))
    G = form.chord_gram
    m = len(u)

    def pair(a, b):
        return sum(a[i] * sum(G[i][j] * b[j] for j in range(m)) for i in range(m))

    p = [pair(u, list(bc)) for bc in form.base_change]
    # coords a solve a . J = p, i.e. a = -p . J
    J = form.matrix
    n = len(p)
    return tuple(-sum(p[k] * J[k][i] for k in range(n)) for i in range(n))


# --- complementary regions ----------------------------------------------------

def complement_regions(S: RibbonSurface, cut) -> List[Region]:
    """Regions of the closed surface cut along ``cut`` only: ribbon faces
    merged across every arc of a curve outside ``cut``."""
    cut = set(cut)
    for c in cut:
        if c not in S.curve_arcs:
            raise UnknownCurve(f"curve {c} is not on this surface")
    if not S.arcs:
        raise EmptySurface("no regions on the empty surface")
    if not S.is_connected() or S.euler() != 2 - 2 * genus(S.network.polygon):
        raise NotClosedSurface("region bookkeeping needs a filling network")

    fmap = S.face_of_dart()
    parent = list(range(len(S.faces)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    deleted_arcs = [a for a in S.arcs if a.curve not in cut]
    for a in deleted_arcs:
        i, j = find(fmap[(a, 0)]), find(fmap[(a, 1)])
        if i != j:
            parent[i] = j

    groups: Dict[int, List[int]] = {}
    for i in range(len(S.faces)):
        groups.setdefault(find(i), []).append(i)

    n_arcs: Dict[int, int] = {r: 0 for r in groups}
    internal: Dict[int, set] = {r: set() for r in groups}
    for a in deleted_arcs:
        r = find(fmap[(a, 0)])
        n_arcs[r] += 1
        internal[r].add(a.curve)
    n_verts: Dict[int, int] = {r: 0 for r in groups}
    for v in S.vertices:
        if isinstance(v, PhantomVertex):
            dead = v.curve not in cut
            darts = S.rotation[v]
        else:
            dead = v.a not in cut and v.b not in cut
            darts = S.rotation[v]
        if dead:
            n_verts[find(fmap[darts[0]])] += 1
    boundary: Dict[int, set] = {r: set() for r in groups}
    for a in S.arcs:
        if a.curve in cut:
            for end in (0, 1):
                boundary[find(fmap[(a, end)])].add(a.curve)

    out = []
    for r, fs in sorted(groups.items()):
        out.append(Region(
            faces=frozenset(fs),
            chi=len(fs) - n_arcs[r] + n_verts[r],
            boundary_curves=frozenset(boundary[r]),
            internal_curves=frozenset(internal[r]),
            internal_arcs=n_arcs[r],
            internal_vertices=n_verts[r],
        ))
    return out


def duplicate_pairs(S: RibbonSurface) -> List[FrozenSet[CurveId]]:
    """Pairs of isotopic segment curves: an annular region of the surface
    cut along all segment curves whose two boundary circles are copies of
    two distinct curves exhibits the isotopy."""
    bs = set(S.network.b_curves())
    pairs = []
    for reg in complement_regions(S, bs):
        if reg.chi == 0 and len(reg.boundary_curves) == 2:
            pairs.append(frozenset(reg.boundary_curves))
    return sorted(set(pairs), key=lambda p: sorted(map(curve_sort_key, p)))


def relative_filling(P: Polygon, nprime: Network, b_segment: Segment) -> bool:
    """Decide whether ``nprime`` fills the complement of the extra curve b.

    The check runs inside the closed surface of the completed network
    (``nprime`` plus b plus the circles at b's interior endpoints): cutting
    along ``nprime`` and b must leave disks and exactly two annuli meeting
    b, and cutting along ``nprime`` alone must leave disks and exactly one
    annulus with core b.
    """
    b = BCurve(b_segment)
    clauses = dict(nprime.clauses)
    if b in clauses:
        return False
    clauses[b] = 0
    for p in b_segment.endpoints():
        if nprime.polygon.contains(p, strict=True):
            clauses.setdefault(ACurve(p), 0)
    try:
        completed = Network(
            polygon=nprime.polygon,
            kappa=nprime.kappa,
            clauses=clauses,
            embedding=nprime.embedding,
            r=nprime.r,
            adjoint_polygon=nprime.adjoint_polygon,
        )
        check_network_invariants(completed)
    except NetworkError:
        return False
    if not is_filling(P, completed):
        return False
    S = inflate(P, completed)
    kept = set(nprime.clauses)

    with_b = complement_regions(S, kept | {b})
    annuli = [r for r in with_b if r.chi == 0]
    if len(annuli) != 2 or any(r.chi not in (0, 1) for r in with_b):
        return False
    if any(b not in r.boundary_curves for r in annuli):
        return False

    without_b = complement_regions(S, kept)
    annuli2 = [r for r in without_b if r.chi == 0]
    if len(annuli2) != 1 or any(r.chi not in (0, 1) for r in without_b):
        return False
    return b in annuli2[0].internal_curves


# --- independent planar filling criterion --------------------------------------

def _planar_angle_sort(p: Point, targets: List[Point]) -> List[Point]:
    def cmp(q1, q2):
        v1 = (q1[0] - p[0], q1[1] - p[1])
        v2 = (q2[0] - p[0], q2[1] - p[1])
        h1 = 0 if (v1[1] > 0 or (v1[1] == 0 and v1[0] > 0)) else 1
        h2 = 0 if (v2[1] > 0 or (v2[1] == 0 and v2[0] > 0)) else 1
        if h1 != h2:
            return -1 if h1 < h2 else 1
        cr = v1[0] * v2[1] - v1[1] * v2[0]
        if cr == 0:
            return 0
        return -1 if cr > 0 else 1

    return sorted(targets, key=functools.cmp_to_key(cmp))


def _winding(walk: List[Point], pt: Point) -> int:
    w = 0
    px, py = pt
    for a, b in zip(walk, walk[1:] + walk[:1]):
        if a[0] <= px < b[0] or b[0] <= px < a[0]:
            y = Fraction(a[1] * (b[0] - a[0]) + (b[1] - a[1]) * (px - a[0]),
                         b[0] - a[0])
            if y > py:
                w += 1 if a[0] <= px < b[0] else -1
    return w


def planar_filling_oracle(P: Polygon, net: Network) -> bool:
    """Planar re-derivation of the filling test, independent of the ribbon
    machinery: every region of the polygon minus the segments must be simply
    connected (no nested walls, no stray interior lattice point) and meet
    the polygon boundary in at most one arc."""
    if genus(P) != genus(net.polygon):
        raise SurfaceError("network does not belong to this polygon")
    Q = net.polygon
    segs = [b.segment for b in net.b_curves()]

    edges = set()
    for s in segs:
        edges.add(s.endpoints())
    boundary_edges = set()
    marked = set(Q.vertices)
    for s in segs:
        for p in s.endpoints():
            if Q.on_boundary(p):
                marked.add(p)
    perimeter = []
    verts = Q.vertices
    for i in range(len(verts)):
        v0, v1 = verts[i], verts[(i + 1) % len(verts)]
        d = (v1[0] - v0[0], v1[1] - v0[1])
        on_edge = [p for p in marked
                   if (p[0] - v0[0]) * d[1] == (p[1] - v0[1]) * d[0]
                   and 0 <= (p[0] - v0[0]) * d[0] + (p[1] - v0[1]) * d[1]
                   < d[0] * d[0] + d[1] * d[1]]
        on_edge.sort(key=lambda p: (p[0] - v0[0]) * d[0] + (p[1] - v0[1]) * d[1])
        perimeter.extend(on_edge)
    for a, b in zip(perimeter, perimeter[1:] + perimeter[:1]):
        edges.add(tuple(sorted((a, b))))
        boundary_edges.add(tuple(sorted((a, b))))

    nodes = set()
    for a, b in edges:
        nodes.add(a)
        nodes.add(b)
    neighbors: Dict[Point, List[Point]] = {p: [] for p in nodes}
    for a, b in edges:
        neighbors[a].append(b)
        neighbors[b].append(a)
    rotation = {p: _planar_angle_sort(p, qs) for p, qs in neighbors.items()}

    # connected components of the arrangement
    comp: Dict[Point, int] = {}
    cid = 0
    for p in sorted(nodes):
        if p in comp:
            continue
        stack = [p]
        comp[p] = cid
        while stack:
            q = stack.pop()
            for t in neighbors[q]:
                if t not in comp:
                    comp[t] = cid
                    stack.append(t)
        cid += 1

    # face tracing: next dart after (a -> b) leaves b one step ccw after the
    # reversed dart
    darts = [(a, b) for a, b in edges] + [(b, a) for a, b in edges]
    seen = set()
    faces = []
    for d0 in sorted(darts):
        if d0 in seen:
            continue
        walk = []
        d = d0
        while True:
            walk.append(d)
            seen.add(d)
            a, b = d
            ring = rotation[b]
            i = ring.index(a)
            d = (b, ring[(i + 1) % len(ring)])
            if d == d0:
                break
        faces.append(walk)

    def doubled_area(walk):
        return sum(a[0] * b[1] - b[0] * a[1] for (a, b) in walk)

    by_comp: Dict[int, List[int]] = {}
    for i, walk in enumerate(faces):
        by_comp.setdefault(comp[walk[0][0]], []).append(i)
    outer = {}
    for c, fs in by_comp.items():
        outer[c] = min(fs, key=lambda i: doubled_area(faces[i]))

    # nest every component inside the smallest bounded face containing it
    children: Dict[int, int] = {}
    for c, fs in by_comp.items():
        probe = min(p for p in nodes if comp[p] == c)
        best = None
        for c2, fs2 in by_comp.items():
            if c2 == c:
                continue
            for i in fs2:
                if i == outer[c2]:
                    continue
                pts = [d[0] for d in faces[i]]
                if _winding(pts, probe) != 0:
                    area = doubled_area(faces[i])
                    if best is None or area < best[0]:
                        best = (area, i)
        if best is not None:
            children[best[1]] = children.get(best[1], 0) + 1

    interior_pts = [p for p in Q.interior_points() if p not in nodes]
    for i, walk in enumerate(faces):
        c = comp[walk[0][0]]
        if i == outer[c]:
            continue
        if children.get(i, 0):
            return False
        pts = [d[0] for d in walk]
        if any(_winding(pts, p) != 0 for p in interior_pts):
            return False
        flags = [tuple(sorted(d)) in boundary_edges for d in walk]
        runs = sum(1 for j, f in enumerate(flags)
                   if f and not flags[j - 1])
        if all(flags):
            runs = 1
        if runs > 1:
            return False
    return True
