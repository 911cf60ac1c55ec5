"""Plabic graphs and networks: faces, orientations, trips, moves, reductions.

A plabic graph is an undirected graph in the disk whose internal vertices
are colored black (+1) or white (-1) and whose boundary vertices 1..n each
carry exactly one edge.  A plabic network additionally weights every face
with a positive rational, the weights multiplying to 1.

Orientations in which every black vertex has one outgoing edge and every
white vertex one incoming edge turn the graph into a perfect directed
network; all such orientations measure to the same projective point, and
their source sets form the graph's matroid.  Trips (turn right at black,
left at white) give the decorated trip permutation, the complete move
invariant of reduced graphs.
"""

from fractions import Fraction

from .exactmath import Matroid, PluckerVector, format_rational, rational
from .network import PlanarDirectedNetwork, is_perfect, color as net_color, measure
from .permutations import BLACK, WHITE, DecoratedPermutation, crossing_roles, _simple_crossing
from .planarmaps import DiskMap, rev, rotations_from_edge_lists


class PlabicGraph:
    """Immutable bicolored graph in the disk with degree-1 boundary vertices."""

    def __init__(self, n, col, edges, rot_ids=None, rot=None, validate=True):
        self.n = n
        self.col = dict(col)
        self.edges = {e: (u, w) for e, (u, w) in edges.items()}
        verts = set(range(1, n + 1)) | set(self.col)
        for u, w in self.edges.values():
            verts.add(u)
            verts.add(w)
        if rot is None:
            rot_ids = dict(rot_ids or {})
            for v in verts:
                if v not in rot_ids:
                    incid = [e for e, (u, w) in self.edges.items() if v in (u, w)]
                    loops = [e for e in incid if self.edges[e][0] == self.edges[e][1]]
                    incid += loops
                    if len(incid) > 2:
                        raise ValueError(f"vertex {v} needs an explicit rotation")
                    rot_ids[v] = incid
            rot = rotations_from_edge_lists(self.edges, rot_ids)
        for v in verts:
            rot.setdefault(v, ())
        self.rot = {v: tuple(ds) for v, ds in rot.items()}
        self.map = DiskMap(range(1, n + 1), self.edges, self.rot, validate=validate)
        if validate:
            self._validate()

    def _validate(self):
        for i in range(1, self.n + 1):
            if len(self.rot[i]) != 1:
                raise ValueError(f"boundary vertex {i} has degree {len(self.rot[i])}, need 1")
            if i in self.col:
                raise ValueError("boundary vertices are not colored")
        for v in self.internal_vertices():
            if self.col.get(v) not in (BLACK, WHITE):
                raise ValueError(f"internal vertex {v} has no color")

    def internal_vertices(self):
        return frozenset(v for v in self.rot if not (isinstance(v, int) and 1 <= v <= self.n))

    def degree(self, v):
        return len(self.rot[v])

    def endpoints(self, e):
        return self.edges[e]

    def other_end(self, e, v):
        u, w = self.edges[e]
        return w if u == v else u

    def incident(self, v):
        return [e for e, _ in self.rot[v]]

    def type(self):
        """(k, n) with 2k - n = sum of col(v) (deg(v) - 2)."""
        s = sum(self.col[v] * (self.degree(v) - 2) for v in self.internal_vertices())
        if (s + self.n) % 2:
            raise ValueError("graph has no consistent type")
        return ((s + self.n) // 2, self.n)

    def components(self):
        adj = {v: set() for v in self.rot}
        for u, w in self.edges.values():
            adj[u].add(w)
            adj[w].add(u)
        comps, left = [], set(adj)
        while left:
            start = left.pop()
            comp, stack = {start}, [start]
            while stack:
                for w in adj[stack.pop()]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            left -= comp
            comps.append(frozenset(comp))
        return comps

    def isolated_components(self):
        return [c for c in self.components() if not any(isinstance(v, int) and 1 <= v <= self.n for v in c)]

    def boundary_leaf(self, i):
        """The internal leaf at b_i, when the boundary edge ends in one."""
        (e, _), = self.rot[i]
        v = self.other_end(e, i)
        if not (isinstance(v, int) and 1 <= v <= self.n) and self.degree(v) == 1:
            return v
        return None

    def replace(self, **kw):
        args = dict(n=self.n, col=self.col, edges=self.edges, rot=self.rot)
        args.update(kw)
        return PlabicGraph(**args)

    def __repr__(self):
        k, n = self.type()
        return f"PlabicGraph(type=({k},{n}), {len(self.edges)} edges, {len(self.internal_vertices())} internal)"

    def canonical(self):
        """Hashable encoding up to nothing (ids kept); used for search memo."""
        return (self.n,
                tuple(sorted(self.col.items())),
                tuple(sorted((e, min(uw), max(uw)) for e, uw in self.edges.items())),
                tuple(sorted((v, self.rot[v]) for v in self.rot if not isinstance(v, tuple))))

    def to_text(self):
        lines = [f"n {self.n}"]
        for v in sorted(self.internal_vertices()):
            cname = "black" if self.col[v] == BLACK else "white"
            ids = " ".join(str(e) for e, _ in self.rot[v])
            lines.append(f"vertex {v} {cname} : {ids}")
        for e in sorted(self.edges):
            u, w = self.edges[e]
            lines.append(f"edge {e} : {u} {w}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        n = None
        col = {}
        rot_ids = {}
        edges = {}
        weights = []
        in_faces = False
        for raw in text.splitlines():
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            toks = line.split()
            if toks[0] == "n":
                n = int(toks[1])
            elif toks[0] == "vertex":
                v = int(toks[1])
                col[v] = BLACK if toks[2].lower().startswith("b") else WHITE
                ids = toks[toks.index(":") + 1:] if ":" in toks else toks[3:]
                rot_ids[v] = [int(t) for t in ids]
            elif toks[0] == "edge":
                e = int(toks[1])
                body = toks[toks.index(":") + 1:] if ":" in toks else toks[2:]
                edges[e] = (int(body[0]), int(body[1]))
            elif toks[0] == "faces":
                in_faces = True
            elif in_faces:
                weights.append(Fraction(toks[-1]))
            else:
                raise ValueError(f"unrecognized line: {raw!r}")
        if n is None:
            raise ValueError("plabic text needs an 'n <count>' line")
        G = cls(n, col, edges, rot_ids=rot_ids)
        if weights:
            keys = sorted(face_weight_keys(G))
            if len(weights) != len(keys):
                raise ValueError(f"{len(weights)} face weights for {len(keys)} faces")
            return PlabicNetwork(G, dict(zip(keys, weights)))
        return G


def faces(G):
    """Interior faces as tuples of real darts (arc darts dropped).

    The count satisfies |V| - |E| + |F| = 1 + c with c the number of
    isolated components, each contributing its outer walk as a face.
    """
    out = []
    all_faces = G.map.faces()
    outer = G.map.outer_face()
    for idx, orbit in enumerate(all_faces):
        if idx == outer:
            continue
        out.append(tuple(d for d in orbit if not isinstance(d[0], tuple)))
    return out


def face_key(darts):
    return min(darts) if darts else ("disk",)


def face_weight_keys(G):
    return [face_key(f) for f in faces(G)]


def weights_by_travel(N):
    """Face weights keyed independently of the stored edge directions.

    Each face is named by the travel pairs (eid, from, to) of its darts,
    which survive reorientation of the underlying edges; loops keep their
    dart end as a tiebreaker.
    """
    G = N.graph
    out = {}
    for darts in faces(G):
        key = []
        for e, end in darts:
            u, w = G.edges[e]
            a, b = (u, w) if end == 0 else (w, u)
            key.append((e, a, b) if u != w else (e, a, b, end))
        out[tuple(sorted(key))] = N.weights[face_key(darts)]
    return out


class PlabicNetwork:
    """A plabic graph with positive face weights multiplying to 1."""

    def __init__(self, graph, weights, check=True):
        self.graph = graph
        self.weights = {k: rational(x) for k, x in weights.items()}
        if check:
            keys = set(face_weight_keys(graph))
            if set(self.weights) != keys:
                raise ValueError("weights do not match the faces of the graph")
            if any(x <= 0 for x in self.weights.values()):
                raise ValueError("face weights must be positive")
            prod = Fraction(1)
            for x in self.weights.values():
                prod *= x
            if prod != 1:
                raise ValueError(f"face weights multiply to {prod}, not 1")
            for comp in graph.isolated_components():
                comp_edges = [e for e, (u, w) in graph.edges.items() if u in comp]
                if len(comp_edges) >= len(comp):
                    raise ValueError("isolated component with a cycle: containment is ambiguous")
                if comp_edges:
                    # a tree's boundary walk bounds no area: weight forced to 1
                    key = min((e, end) for e in comp_edges for end in (0, 1))
                    if self.weights.get(key) != 1:
                        raise ValueError("isolated tree component must carry face weight 1")

    def __repr__(self):
        return f"PlabicNetwork({self.graph!r}, {len(self.weights)} faces)"

    def weight_of(self, darts):
        return self.weights[face_key(darts)]

    def to_text(self):
        lines = [self.graph.to_text().rstrip("\n"), "faces"]
        for key in sorted(face_weight_keys(self.graph)):
            name = f"{key[0]}.{key[1]}" if isinstance(key, tuple) and not isinstance(key[0], str) else "disk"
            lines.append(f"{name} : {format_rational(self.weights[key])}")
        return "\n".join(lines) + "\n"


# -- perfect orientations and the matroid -------------------------------------------


def perfect_orientations(G):
    """All orientations with one out-edge per black and one in-edge per white.

    Each orientation is a dict eid -> (tail, head).  Exponential
    backtracking; fine at desk scale.
    """
    eids = sorted(G.edges)
    need = {}
    for v in G.internal_vertices():
        # black: exactly one outgoing; white: exactly one incoming
        need[v] = 1
    out_count = {v: 0 for v in need}
    in_count = {v: 0 for v in need}
    remaining = {v: G.degree(v) for v in need}
    results = []

    def special(v, tail_is_v):
        # returns the count this direction adds to v's constrained side
        if G.col[v] == BLACK:
            return 1 if tail_is_v else 0
        return 0 if tail_is_v else 1

    def feasible(v):
        cnt = out_count[v] if G.col[v] == BLACK else in_count[v]
        return cnt <= 1 and cnt + remaining[v] >= 1

    def assign(idx, orient):
        if idx == len(eids):
            if any((out_count[v] if G.col[v] == BLACK else in_count[v]) != 1 for v in need):
                return
            results.append(dict(orient))
            return
        e = eids[idx]
        u, w = G.edges[e]
        for tail, head in ((u, w), (w, u)):
            touched = []
            ok = True
            for v, as_tail in ((tail, True), (head, False)):
                if v in need:
                    if as_tail:
                        out_count[v] += 1
                    else:
                        in_count[v] += 1
                    remaining[v] -= 1
                    touched.append((v, as_tail))
            for v in {tail, head} & set(need):
                if not feasible(v):
                    ok = False
            if ok:
                orient[e] = (tail, head)
                assign(idx + 1, orient)
                del orient[e]
            for v, as_tail in touched:
                if as_tail:
                    out_count[v] -= 1
                else:
                    in_count[v] -= 1
                remaining[v] += 1
            if u == w:
                break  # a loop has only one distinguishable direction here
        return

    # loops: a loop at v contributes one in and one out whichever way
    assign(0, {})
    return results


def orientation_sources(G, orient):
    """Boundary vertices whose single edge points into the disk."""
    out = set()
    for i in range(1, G.n + 1):
        (e, _), = G.rot[i]
        if orient[e][0] == i:
            out.add(i)
    return frozenset(out)


def matroid(G):
    """Bases = source sets of the perfect orientations of G."""
    orients = perfect_orientations(G)
    if not orients:
        raise ValueError("graph is not perfectly orientable")
    k, n = G.type()
    bases = {orientation_sources(G, o) for o in orients}
    if any(len(b) != k for b in bases):
        raise AssertionError("orientation source set disagrees with the type")
    return Matroid(k, n, bases)


def path_matroid(G, orient):
    """k-subsets J reachable from the fixed orientation by noncrossing paths.

    Equivalent to matroid(G); used as the independent cross-check.
    """
    base = orientation_sources(G, orient)
    k, n = G.type()
    adj = {}
    for e, (t, h) in orient.items():
        adj.setdefault(t, []).append((e, h))
    bases = set()

    def vertex_disjoint_families(sources, targets):
        # families of vertex-disjoint directed paths pairing sources with targets
        if not sources:
            yield []
            return
        s = sources[0]
        stack = [(s, [s], [])]
        paths = []

        def dfs(v, seen, eids):
            if isinstance(v, int) and 1 <= v <= n and v != s:
                if v in targets:
                    paths.append((list(seen), v))
                return
            for e, w in adj.get(v, []):
                if w not in seen:
                    dfs(w, seen + [w], eids + [e])

        dfs(s, [s], [])
        for verts, t in paths:
            for rest in vertex_disjoint_families(sources[1:], [x for x in targets if x != t]):
                if all(not (set(verts) & set(rv)) for rv, _ in rest):
                    yield [(verts, t)] + rest

    from itertools import combinations as comb
    for J in comb(range(1, n + 1), k):
        J = frozenset(J)
        K = sorted(base - J)
        L = sorted(J - base)
        if not K:
            bases.add(J)
            continue
        found = False
        for fam in vertex_disjoint_families(K, L):
            found = True
            break
        if found:
            bases.add(J)
    return Matroid(k, n, bases)


# -- trips ---------------------------------------------------------------------------


class TripDecomposition:
    """One-way trips, round trips, and the decorated trip permutation."""

    def __init__(self, one_way, round_trips, n):
        self.one_way = one_way      # dict i -> (end j, dart list)
        self.round_trips = round_trips
        self.n = n

    def permutation(self):
        return tuple(self.one_way[i][0] for i in range(1, self.n + 1))

    def decorated(self, G):
        perm = self.permutation()
        col = {}
        for i in range(1, self.n + 1):
            if perm[i - 1] == i:
                leaf = G.boundary_leaf(i)
                if leaf is None:
                    raise ValueError(f"trip at b_{i} is a fixed point without a boundary leaf")
                col[i] = G.col[leaf]
        return DecoratedPermutation(perm, col)

    def trip_through(self, dart):
        """(label, position) of the trip traversing the given travel dart."""
        for i, (_, darts) in self.one_way.items():
            if dart in darts:
                return ("one_way", i, darts.index(dart))
        for t, darts in enumerate(self.round_trips):
            if dart in darts:
                return ("round", t, darts.index(dart))
        raise KeyError(dart)


def _trip_step(G, dart):
    """Next travel dart by the rules of the road (right at black, left at white)."""
    e, end = dart
    v = G.edges[e][1 - end]
    arrival = rev(dart)
    ds = G.rot[v]
    idx = ds.index(arrival)
    return ds[(idx - G.col[v]) % len(ds)]


def trips(G):
    """All trips of the plabic graph; every travel dart is used exactly once."""
    used = set()
    one_way = {}
    for i in range(1, G.n + 1):
        (dart,) = G.rot[i]
        cur = dart
        path = []
        while True:
            path.append(cur)
            used.add(cur)
            e, end = cur
            v = G.edges[e][1 - end]
            if isinstance(v, int) and 1 <= v <= G.n:
                one_way[i] = (v, path)
                break
            cur = _trip_step(G, cur)
    round_trips = []
    for v in sorted(G.rot, key=str):
        for dart in G.rot[v]:
            if dart in used:
                continue
            cur = dart
            path = []
            while cur not in used:
                path.append(cur)
                used.add(cur)
                cur = _trip_step(G, cur)
            round_trips.append(path)
    return TripDecomposition(one_way, round_trips, G.n)


def trip_permutation(G):
    return trips(G).decorated(G)


# -- contraction and normalization ----------------------------------------------------


def _fresh_ids(G, count=1):
    base = max([G.n] + [v for v in G.rot if isinstance(v, int)] + [e for e in G.edges]) + 1
    return list(range(base, base + count))


def contract_edge(G, e):
    """(M2) contract a unicolored non-loop edge into one vertex."""
    u, w = G.edges[e]
    if u == w:
        raise ValueError("cannot contract a loop")
    for v in (u, w):
        if isinstance(v, int) and 1 <= v <= G.n:
            raise ValueError("cannot contract into the boundary")
    if G.col[u] != G.col[w]:
        raise ValueError(f"edge {e} is not unicolored")
    (m,) = _fresh_ids(G)
    du, dw = (e, 0), (e, 1)
    if G.edges[e][0] != u:
        du, dw = dw, du
    ru = list(G.rot[u])
    rw = list(G.rot[w])
    iu, iw = ru.index(du), rw.index(dw)
    merged = ru[iu + 1:] + ru[:iu] + rw[iw + 1:] + rw[:iw]
    edges = {f: (a, b) for f, (a, b) in G.edges.items() if f != e}
    edges = {f: (m if a in (u, w) else a, m if b in (u, w) else b) for f, (a, b) in edges.items()}
    rot = {v: ds for v, ds in G.rot.items() if v not in (u, w)}
    rot[m] = tuple(merged)
    col = {v: c for v, c in G.col.items() if v not in (u, w)}
    col[m] = G.col[u]
    return PlabicGraph(G.n, col, edges, rot=rot)


def uncontract_vertex(G, v, i, j):
    """(M2) split v into an edge; darts rot[v][i:j] (cyclically) move out."""
    ds = list(G.rot[v])
    take = ds[i:j] if i <= j else ds[i:] + ds[:j]
    keep = (ds[j:] + ds[:i]) if i <= j else ds[j:i]
    if len(take) + len(keep) != len(ds):
        raise ValueError("bad uncontraction slice")
    (m,) = _fresh_ids(G)
    e = max(G.edges, default=0) + 1
    edges = dict(G.edges)
    edges[e] = (v, m)
    for dart in take:
        f, end = dart
        a, b = edges[f]
        edges[f] = (m if (end == 0 and a == v) else a, m if (end == 1 and b == v) else b)
    rot = dict(G.rot)
    rot[v] = tuple([(e, 0)] + keep)   # the new dart sits where the block was
    rot[m] = tuple([(e, 1)] + take)
    col = dict(G.col)
    col[m] = G.col[v]
    return PlabicGraph(G.n, col, edges, rot=rot)


def insert_vertex(G, e, colr):
    """(M3) insert a middle vertex of the given color into edge e."""
    u, w = G.edges[e]
    (m,) = _fresh_ids(G)
    base = max(G.edges) + 1
    e1, e2 = base, base + 1
    edges = {f: ab for f, ab in G.edges.items() if f != e}
    edges[e1] = (u, m)
    edges[e2] = (m, w)
    rot = {}
    for v, ds in G.rot.items():
        new = []
        for dart in ds:
            if dart == (e, 0):
                new.append((e1, 0))
            elif dart == (e, 1):
                new.append((e2, 1))
            else:
                new.append(dart)
        rot[v] = tuple(new)
    rot[m] = ((e1, 1), (e2, 0))
    col = dict(G.col)
    col[m] = colr
    return PlabicGraph(G.n, col, edges, rot=rot)


def remove_vertex(G, v):
    """(M3) remove an internal degree-2 vertex, gluing its edges."""
    if G.degree(v) != 2 or (isinstance(v, int) and 1 <= v <= G.n):
        raise ValueError(f"{v} is not an internal degree-2 vertex")
    (d1, d2) = G.rot[v]
    e1, e2 = d1[0], d2[0]
    if e1 == e2:
        raise ValueError("vertex carries a loop; remove the loop instead")
    a = G.other_end(e1, v)
    b = G.other_end(e2, v)
    e = max(G.edges) + 1
    edges = {f: ab for f, ab in G.edges.items() if f not in (e1, e2)}
    edges[e] = (a, b)
    rot = {}
    for x, ds in G.rot.items():
        if x == v:
            continue
        new = []
        for dart in ds:
            if dart[0] == e1 and x == a and dart == _far_dart(G, e1, v):
                new.append((e, 0))
            elif dart[0] == e2 and x == b and dart == _far_dart(G, e2, v):
                new.append((e, 1))
            else:
                new.append(dart)
        rot[x] = tuple(new)
    col = {x: c for x, c in G.col.items() if x != v}
    return PlabicGraph(G.n, col, edges, rot=rot)


def _far_dart(G, e, v):
    """The dart of e anchored at the endpoint other than v."""
    u, w = G.edges[e]
    if u == v:
        return (e, 1)
    return (e, 0)


def contracted(G):
    """Repeatedly contract unicolored edges and remove degree-2 vertices."""
    changed = True
    while changed:
        changed = False
        for v in list(G.internal_vertices()):
            if v in G.rot and G.degree(v) == 2 and len({e for e, _ in G.rot[v]}) == 2:
                G = remove_vertex(G, v)
                changed = True
                break
        if changed:
            continue
        for e, (u, w) in sorted(G.edges.items()):
            if u != w and G.col.get(u) is not None and G.col.get(u) == G.col.get(w):
                if G.degree(u) + G.degree(w) > 2:
                    G = contract_edge(G, e)
                    changed = True
                    break
    return G


# -- reducedness ---------------------------------------------------------------------


def reducedness_certificate(G):
    """(True, None) when G is reduced, else (False, reason).

    Works on the contracted form; the criterion: no round trips, no
    essential self-intersections, no bad double crossings, fixed points
    only at boundary leaves, no isolated components.
    """
    if G.isolated_components():
        return False, "isolated component"
    H = contracted(G)
    for v in H.internal_vertices():
        if H.degree(v) == 1:
            e = H.incident(v)[0]
            w = H.other_end(e, v)
            if not (isinstance(w, int) and 1 <= w <= H.n):
                return False, f"internal leaf at vertex {v} (leaf reduction applies)"
    T = trips(H)
    if T.round_trips:
        return False, "round trip"
    # essential (self-)intersections happen at edges with bicolored endpoints
    def essential(e):
        u, w = H.edges[e]
        cu, cw = H.col.get(u), H.col.get(w)
        return cu is not None and cw is not None and cu != cw

    where = {}
    for i, (_, darts) in T.one_way.items():
        for pos, dart in enumerate(darts):
            if essential(dart[0]):
                where.setdefault(dart[0], []).append((i, pos))
    pair_meets = {}
    for e, hits in where.items():
        if len(hits) != 2:
            raise AssertionError("an edge must carry exactly two trip passages")
        (i, pi_), (j, pj) = hits
        if i == j:
            return False, f"essential self-intersection of the trip from b_{i} at edge {e}"
        keypair = (min(i, j), max(i, j))
        a, b = (pi_, pj) if keypair == (i, j) else (pj, pi_)
        pair_meets.setdefault(keypair, []).append((e, a, b))
    for (i, j), meets in pair_meets.items():
        for e1, a1, b1 in meets:
            for e2, a2, b2 in meets:
                if e1 != e2 and a1 < a2 and b1 < b2:
                    return False, f"bad double crossing of trips from b_{i}, b_{j} at edges {e1}, {e2}"
    perm = T.permutation()
    for i in range(1, H.n + 1):
        if perm[i - 1] == i and H.boundary_leaf(i) is None:
            return False, f"fixed point at b_{i} without a boundary leaf"
    return True, None


def is_reduced(G):
    return reducedness_certificate(G)[0]


# -- moves with face weights -----------------------------------------------------------


def _face_data(G):
    """face index -> real-dart tuple, and dart -> face index (interior only)."""
    out = {}
    lookup = {}
    all_faces = G.map.faces()
    outer = G.map.outer_face()
    for idx, orbit in enumerate(all_faces):
        if idx == outer:
            continue
        darts = tuple(d for d in orbit if not isinstance(d[0], tuple))
        out[idx] = darts
        for d in darts:
            lookup[d] = idx
    return out, lookup


def _transfer_weights(old_net, new_graph, adjust=None, dropped=(), rename=None):
    """Carry face weights across a rewrite by matching surviving darts.

    adjust: dict old-face-key -> multiplicative correction.
    dropped: old face keys whose regions disappeared (already redistributed).
    rename: dict old dart -> new dart for edges that were glued/split, so a
    face bounded only by rewritten edges still finds its region.
    New faces without any old dart (fresh isolated trees) get weight 1.
    """
    rename = rename or {}
    old_faces, _ = _face_data(old_net.graph)
    old_weights = {}
    for darts in old_faces.values():
        key = face_key(darts)
        if key in dropped:
            continue
        w = old_net.weights[key]
        if adjust and key in adjust:
            w *= adjust[key]
        old_weights[key] = ({rename.get(d, d) for d in darts}, w)
    weights = {}
    matched = set()
    for darts in faces(new_graph):
        total = Fraction(1)
        dartset = set(darts)
        for key, (odarts, w) in old_weights.items():
            if odarts & dartset:
                total *= w
                matched.add(key)
        weights[face_key(darts)] = total
    for key, (odarts, w) in old_weights.items():
        if key not in matched and w != 1:
            raise AssertionError(f"face {key} with weight {w} lost in the rewrite")
    return PlabicNetwork(new_graph, weights)


def _as_network(x):
    if isinstance(x, PlabicNetwork):
        return x, True
    dummy = {face_key(f): Fraction(1) for f in faces(x)}
    return PlabicNetwork(x, dummy, check=False), False


def square_faces(G):
    """Face keys where the square move applies."""
    out = []
    fd, _ = _face_data(G)
    for idx, darts in fd.items():
        if len(darts) != 4:
            continue
        orbit = G.map.faces()[idx]
        if any(isinstance(d[0], tuple) for d in orbit):
            continue
        vs = [G.edges[e][1 - end] for e, end in darts]
        cols = [G.col.get(v) for v in vs]
        if (len(set(vs)) == 4 and len({e for e, _ in darts}) == 4
                and all(c is not None for c in cols)
                and all(G.degree(v) == 3 for v in vs)
                and all(cols[i] != cols[(i + 1) % 4] for i in range(4))):
            out.append(face_key(darts))
    return out


def apply_move(x, move):
    """Apply M1 (square, site=face key), M2 (contract edge / uncontract
    vertex), or M3 (insert into edge / remove degree-2 vertex).

    x may be a PlabicGraph or PlabicNetwork; the same kind is returned.
    Sites: ("M1", face_key), ("M2", eid), ("M2u", v, i, j),
    ("M3", eid, color), ("M3r", v).
    """
    net, weighted = _as_network(x)
    G = net.graph
    kind = move[0]
    if kind == "M1":
        key = move[1]
        if key not in square_faces(G):
            raise ValueError(f"face {key} is not a square-move site")
        fd, lookup = _face_data(G)
        idx = next(i for i, darts in fd.items() if face_key(darts) == key)
        darts = fd[idx]
        y0 = net.weights[key]
        corners = {G.edges[e][1 - end] for e, end in darts}
        col = dict(G.col)
        for v in corners:
            col[v] = -col[v]
        newG = G.replace(col=col)
        if not weighted:
            return newG
        # the orbit walks with the face on the left; an edge walked
        # white -> black has its opposite face multiplied by (1 + y0),
        # black -> white divided by (1 + 1/y0)
        adjust = {key: y0 ** -2}  # y0 -> 1/y0
        for dart in darts:
            e, end = dart
            src = G.edges[e][end]       # the vertex the travel leaves
            dst = G.edges[e][1 - end]
            other = face_key(fd[lookup[rev(dart)]]) if rev(dart) in lookup else None
            if other is None:
                raise AssertionError("square borders the outer region")
            factor = (1 + y0) if G.col[src] == WHITE else 1 / (1 + 1 / y0)
            adjust[other] = adjust.get(other, Fraction(1)) * factor
        weights = {}
        for fkey, w in net.weights.items():
            weights[fkey] = w * adjust.get(fkey, 1)
        return PlabicNetwork(newG, weights)
    rename = {}
    if kind == "M2":
        newG = contract_edge(G, move[1])
    elif kind == "M2u":
        newG = uncontract_vertex(G, *move[1:])
    elif kind == "M3":
        e = move[1]
        newG = insert_vertex(G, e, move[2])
        base = max(G.edges) + 1
        rename = {(e, 0): (base, 0), (e, 1): (base + 1, 1)}
    elif kind == "M3r":
        v = move[1]
        (d1, d2) = G.rot[v]
        newG = remove_vertex(G, v)
        e = max(G.edges) + 1
        rename = {_far_dart(G, d1[0], v): (e, 0), _far_dart(G, d2[0], v): (e, 1)}
    else:
        raise ValueError(f"unknown move {move!r}")
    if not weighted:
        return newG
    return _transfer_weights(net, newG, rename=rename)


def bigon_faces(G):
    """Two-dart faces between distinct bicolored vertices, any degrees.

    These become R1 sites once high-degree endpoints are uncontracted.
    """
    out = []
    fd, _ = _face_data(G)
    for darts in fd.values():
        if len(darts) != 2:
            continue
        (e1, _), (e2, _) = darts
        if e1 == e2:
            continue
        u, w = G.edges[e1]
        if set(G.edges[e2]) != {u, w} or u == w:
            continue
        cu, cw = G.col.get(u), G.col.get(w)
        if cu is None or cw is None or cu == cw:
            continue
        out.append(darts)
    return out


def parallel_pairs(G):
    """R1 sites: (e1, e2) bounding a bigon between trivalent bicolored vertices."""
    out = []
    fd, _ = _face_data(G)
    for darts in fd.values():
        if len(darts) != 2:
            continue
        (e1, _), (e2, _) = darts
        if e1 == e2:
            continue
        u, w = G.edges[e1]
        if set(G.edges[e2]) != {u, w} or u == w:
            continue
        if G.col.get(u) is None or G.col.get(w) is None or G.col[u] == G.col[w]:
            continue
        if G.degree(u) != 3 or G.degree(w) != 3:
            continue
        others = [e for e in set(G.incident(u) + G.incident(w)) if e not in (e1, e2)]
        if len(others) == 2 and others[0] != others[1]:
            out.append((min(e1, e2), max(e1, e2)))
    return sorted(set(out))


def apply_reduction(x, red):
    """Apply R1 (parallel pair), R2 (leaf), R3 (dipole), or Rloop (loop).

    Sites: ("R1", e1, e2), ("R2", leaf vertex), ("R3", vertex in dipole),
    ("Rloop", eid).
    """
    net, weighted = _as_network(x)
    G = net.graph
    kind = red[0]
    if kind == "R1":
        e1, e2 = red[1], red[2]
        if (min(e1, e2), max(e1, e2)) not in parallel_pairs(G):
            raise ValueError(f"edges {e1}, {e2} are not an R1 site")
        fd, lookup = _face_data(G)
        bigon = next(darts for darts in fd.values()
                     if {d[0] for d in darts} == {e1, e2} and len(darts) == 2)
        y0 = net.weight_of(bigon) if weighted else Fraction(1)
        u, w = G.edges[e1]
        a = next(e for e in G.incident(u) if e not in (e1, e2))
        b = next(e for e in G.incident(w) if e not in (e1, e2))
        za = G.other_end(a, u)
        zb = G.other_end(b, w)
        e = max(G.edges) + 1
        edges = {f: ab for f, ab in G.edges.items() if f not in (e1, e2, a, b)}
        edges[e] = (za, zb)
        rot = {}
        for v, ds in G.rot.items():
            if v in (u, w):
                continue
            new = []
            for dart in ds:
                if dart[0] == a and v == za and dart == _far_dart(G, a, u):
                    new.append((e, 0))
                elif dart[0] == b and v == zb and dart == _far_dart(G, b, w):
                    new.append((e, 1))
                else:
                    new.append(dart)
            rot[v] = tuple(new)
        col = {v: c for v, c in G.col.items() if v not in (u, w)}
        newG = PlabicGraph(G.n, col, edges, rot=rot)
        if not weighted:
            return newG
        adjust = {}
        for dart in bigon:
            eid, end = dart
            src = G.edges[eid][end]
            other = face_key(fd[lookup[rev(dart)]])
            factor = (1 + y0) if G.col[src] == WHITE else 1 / (1 + 1 / y0)
            adjust[other] = adjust.get(other, Fraction(1)) * factor
        rename = {_far_dart(G, a, u): (e, 0), _far_dart(G, b, w): (e, 1)}
        return _transfer_weights(net, newG, adjust=adjust,
                                 dropped={face_key(bigon)}, rename=rename)
    if kind == "R2":
        u = red[1]
        if G.degree(u) != 1 or (isinstance(u, int) and 1 <= u <= G.n):
            raise ValueError(f"{u} is not an internal leaf")
        e = G.incident(u)[0]
        v = G.other_end(e, u)
        if isinstance(v, int) and 1 <= v <= G.n:
            raise ValueError("boundary leaves cannot be reduced")
        if G.col[u] == G.col[v] or G.degree(v) < 3:
            raise ValueError(f"leaf reduction does not apply at {u}")
        fresh = _fresh_ids(G, G.degree(v) - 1)
        edges = {f: ab for f, ab in G.edges.items() if f != e}
        rot = {x2: ds for x2, ds in G.rot.items() if x2 not in (u, v)}
        col = {x2: c for x2, c in G.col.items() if x2 not in (u, v)}
        others = [d for d in G.rot[v] if d[0] != e]
        for m, dart in zip(fresh, others):
            f, end = dart
            aa, bb = edges[f]
            edges[f] = (m if (end == 0 and aa == v) else aa, m if (end == 1 and bb == v) else bb)
            rot[m] = (dart,)
            col[m] = G.col[u]
        newG = PlabicGraph(G.n, col, edges, rot=rot)
        if not weighted:
            return newG
        return _transfer_weights(net, newG)
    if kind == "R3":
        v = red[1]
        comp = next((c for c in G.components() if v in c), None)
        if comp is None or len(comp) != 2:
            raise ValueError(f"{v} is not in a dipole")
        a, b = sorted(comp, key=str)
        es = [e for e, (x2, y2) in G.edges.items() if {x2, y2} == {a, b}]
        if len(es) != 1 or G.col[a] == G.col[b]:
            raise ValueError(f"component of {v} is not a dipole")
        edges = {f: ab for f, ab in G.edges.items() if f != es[0]}
        rot = {x2: ds for x2, ds in G.rot.items() if x2 not in (a, b)}
        col = {x2: c for x2, c in G.col.items() if x2 not in (a, b)}
        newG = PlabicGraph(G.n, col, edges, rot=rot)
        if not weighted:
            return newG
        # the dipole's walk carries weight 1 (tree orbit), so it just vanishes
        return _transfer_weights(net, newG, dropped={(es[0], 0)})
    if kind == "Rloop":
        # lollipop removal: a trivalent vertex w carrying a loop is a dead
        # end for directed paths, so w, its loop, and its attaching edge
        # vanish together; the loop's inside face folds into the ambient
        # face.  A boundary lollipop leaves an oppositely colored leaf
        # (the vertex colors swap roles of source and sink there).
        e = red[1]
        w0, w1 = G.edges[e]
        if w0 != w1:
            raise ValueError(f"edge {e} is not a loop")
        w = w0
        if G.degree(w) != 3:
            raise ValueError(f"loop vertex {w} is not trivalent")
        e2 = next(f for f, _ in G.rot[w] if f != e)
        u = G.other_end(e2, w)
        boundary = isinstance(u, int) and 1 <= u <= G.n
        if not boundary and G.col[u] == G.col[w]:
            raise ValueError("lollipop neighbor has the same color; insert a middle vertex first")
        fd, lookup = _face_data(G)
        inner = next((darts for darts in fd.values() if len(darts) == 1 and darts[0][0] == e), None)
        if inner is None:
            raise ValueError("the loop encloses other structure; uncontract first")
        edges = {f: ab for f, ab in G.edges.items() if f not in (e, e2)}
        rot = {x2: tuple(d for d in ds if d[0] not in (e, e2))
               for x2, ds in G.rot.items() if x2 != w}
        col = {x2: c for x2, c in G.col.items() if x2 != w}
        rename = {}
        if boundary:
            lv = _fresh_ids(G)[0]
            eL = max(G.edges) + 1
            edges[eL] = (u, lv)
            rot[u] = ((eL, 0),)
            rot[lv] = ((eL, 1),)
            col[lv] = -G.col[w]
            rename = {_far_dart(G, e2, w): (eL, 0)}
        newG = PlabicGraph(G.n, col, edges, rot=rot)
        if not weighted:
            return newG
        target = face_key(fd[lookup[rev(inner[0])]])
        adjust = {target: net.weights[face_key(inner)]}
        return _transfer_weights(net, newG, adjust=adjust,
                                 dropped={face_key(inner)}, rename=rename)
    raise ValueError(f"unknown reduction {red!r}")


def singletons(G):
    return [next(iter(c)) for c in G.components()
            if len(c) == 1 and not any(isinstance(v, int) and 1 <= v <= G.n for v in c)
            and not any(v in uw for v in c for uw in G.edges.values())]


def remove_singleton(G, v):
    rot = {x: ds for x, ds in G.rot.items() if x != v}
    col = {x: c for x, c in G.col.items() if x != v}
    return PlabicGraph(G.n, col, dict(G.edges), rot=rot)


def reduce_graph(x, max_square_depth=6):
    """Transform into a reduced plabic graph/network plus removed singletons.

    Returns (reduced object, singleton count, trace).  The trace lists the
    applied operations and is replayable with apply_move/apply_reduction.
    Hidden reduction sites are searched for with a breadth-first sweep of
    square moves (the only structure-preserving move that can expose one).
    """
    net, weighted = _as_network(x)
    cur = net if weighted else net.graph
    trace = []
    removed = 0

    def graph_of(obj):
        return obj.graph if isinstance(obj, PlabicNetwork) else obj

    while True:
        G = graph_of(cur)
        # singletons out first
        sing = singletons(G)
        if sing:
            v = sing[0]
            newG = remove_singleton(G, v)
            trace.append(("singleton", v))
            removed += 1
            cur = _transfer_weights(cur, newG) if weighted else newG
            continue
        # structural cleanups that are always safe
        site = next((v for v in G.internal_vertices()
                     if G.degree(v) == 2 and len({e for e, _ in G.rot[v]}) == 2), None)
        if site is not None:
            trace.append(("M3r", site))
            cur = apply_move(cur, ("M3r", site))
            continue
        # bigons get priority over contraction so that uncontracted
        # endpoints are not immediately re-merged
        bigons = bigon_faces(G)
        if bigons:
            darts = bigons[0]
            es = tuple(e for e, _ in darts)
            endpoints = set(G.edges[es[0]])
            fat = next((v for v in sorted(endpoints, key=str) if G.degree(v) > 3), None)
            if fat is not None:
                # the two bigon darts are rotation-adjacent; split them off
                ds = list(G.rot[fat])
                d = len(ds)
                a, b = (t for t, dd in enumerate(ds) if dd[0] in es)
                if (b - a) % d == 1:
                    i, j = a, (b + 1) % d
                elif (a - b) % d == 1:
                    i, j = b, (a + 1) % d
                else:
                    raise AssertionError("bigon darts not adjacent at their endpoint")
                trace.append(("M2u", fat, i, j))
                cur = apply_move(cur, ("M2u", fat, i, j))
                continue
            pair = (min(es), max(es))
            trace.append(("R1", *pair))
            cur = apply_reduction(cur, ("R1", *pair))
            continue
        e = next((e for e, (u, w) in sorted(G.edges.items())
                  if u != w and G.col.get(u) is not None and G.col.get(u) == G.col.get(w)
                  and G.degree(u) + G.degree(w) > 2), None)
        if e is not None:
            trace.append(("M2", e))
            cur = apply_move(cur, ("M2", e))
            continue
        loop = next((e for e, (u, w) in sorted(G.edges.items()) if u == w), None)
        if loop is not None:
            v = G.edges[loop][0]
            if G.degree(v) > 3:
                ds = list(G.rot[v])
                i0, i1 = (t for t, d in enumerate(ds) if d[0] == loop)
                if (i1 - i0) % len(ds) == 1:
                    i, j = i0, (i1 + 1) % len(ds)
                elif (i0 - i1) % len(ds) == 1:
                    i, j = i1, (i0 + 1) % len(ds)
                else:
                    raise NotImplementedError("loop with enclosed attachments")
                trace.append(("M2u", v, i, j))
                cur = apply_move(cur, ("M2u", v, i, j))
                continue
            e2 = next(f for f, _ in G.rot[v] if f != loop)
            u = G.other_end(e2, v)
            if not (isinstance(u, int) and 1 <= u <= G.n) and G.col[u] == G.col[v]:
                trace.append(("M3", e2, -G.col[v]))
                cur = apply_move(cur, ("M3", e2, -G.col[v]))
                continue
            trace.append(("Rloop", loop))
            cur = apply_reduction(cur, ("Rloop", loop))
            continue
        leaf = None
        for v in sorted(G.internal_vertices(), key=str):
            if G.degree(v) == 1:
                w = G.other_end(G.incident(v)[0], v)
                if isinstance(w, int) and 1 <= w <= G.n:
                    continue
                leaf = v
                break
        if leaf is not None:
            e = G.incident(leaf)[0]
            w = G.other_end(e, leaf)
            if G.degree(w) == 1:
                if G.col[leaf] != G.col[w]:
                    trace.append(("R3", leaf))
                    cur = apply_reduction(cur, ("R3", leaf))
                else:
                    trace.append(("M2", e))  # unicolored dipole contracts to a singleton
                    cur = apply_move(cur, ("M2", e))
            elif G.degree(w) >= 3:
                trace.append(("R2", leaf))
                cur = apply_reduction(cur, ("R2", leaf))
            else:
                raise AssertionError("degree-2 neighbors are removed before leaves")
            continue
        ok, _ = reducedness_certificate(G)
        if ok:
            return cur, removed, trace
        # hidden site: breadth-first over square moves until a reduction shows
        found = _square_search(cur, max_square_depth)
        if found is None:
            raise RuntimeError("could not expose a reduction with square moves "
                               f"within depth {max_square_depth}")
        moves = found
        for key in moves:
            trace.append(("M1", key))
            cur = apply_move(cur, ("M1", key))


def _square_search(cur, depth):
    """Shortest square-move sequence after which a direct reduction applies."""
    def graph_of(obj):
        return obj.graph if isinstance(obj, PlabicNetwork) else obj

    def has_direct(G):
        if bigon_faces(G):
            return True
        for v in G.internal_vertices():
            if G.degree(v) == 2 and len({e for e, _ in G.rot[v]}) == 2:
                return True
        for e, (u, w) in G.edges.items():
            if u == w:
                return True
            if G.col.get(u) is not None and G.col.get(u) == G.col.get(w) and G.degree(u) + G.degree(w) > 2:
                return True
        for v in G.internal_vertices():
            if G.degree(v) == 1:
                w = G.other_end(G.incident(v)[0], v)
                if not (isinstance(w, int) and 1 <= w <= G.n):
                    return True
        return False

    start = graph_of(cur)
    seen = {start.canonical()}
    frontier = [(start, [])]
    for _ in range(depth):
        nxt = []
        for G, path in frontier:
            for key in square_faces(G):
                H = apply_move(G, ("M1", key))
                c = H.canonical()
                if c in seen:
                    continue
                seen.add(c)
                if has_direct(H):
                    return path + [key]
                nxt.append((H, path + [key]))
        frontier = nxt
        if not frontier:
            break
    return None


# -- weights <-> edge weights ----------------------------------------------------------


def face_weights(net):
    """Face weights of a perfect directed network; the plabic quotient.

    Every face gets the product of x_e over edges with the face on their
    right times 1/x_e over edges with it on their left; the weights are
    gauge invariant and multiply to 1.
    """
    if not is_perfect(net):
        raise ValueError("face weights need a perfect network")
    col = {}
    for v in net.internal_vertices():
        try:
            col[v] = net_color(net, v)
        except ValueError:
            col[v] = WHITE  # degree-2 vertices may be colored either way
    G = PlabicGraph(net.n, col, {e: (u, w) for e, (u, w, _) in net.edges.items()}, rot=net.rot)
    weights = {}
    for darts in faces(G):
        y = Fraction(1)
        for e, end in darts:
            x = net.weight(e)
            y *= 1 / x if end == 0 else x  # face on the left of the travel
        weights[face_key(darts)] = y
    return PlabicNetwork(G, weights)


def edge_weights_from_faces(N, orient):
    """A directed network in the gauge class reproducing the face weights.

    Gauge fixed by weighting a boundary-rooted spanning forest (lowest
    index first) with 1 and peeling the remaining edges off faces with a
    single undetermined edge.
    """
    G = N.graph
    # spanning forest by lowest-index traversal from the boundary
    in_forest = set()
    seen = set(range(1, G.n + 1))
    frontier = sorted(range(1, G.n + 1))
    adj = {}
    for e, (u, w) in G.edges.items():
        adj.setdefault(u, []).append((e, w))
        adj.setdefault(w, []).append((e, u))
    while True:
        progress = False
        for v in list(frontier):
            for e, w in sorted(adj.get(v, [])):
                if w not in seen:
                    seen.add(w)
                    in_forest.add(e)
                    frontier.append(w)
                    progress = True
        if not progress:
            rest = [v for v in G.rot if v not in seen]
            if not rest:
                break
            root = sorted(rest, key=str)[0]
            seen.add(root)
            frontier.append(root)
    x = {e: Fraction(1) for e in in_forest}
    unknown = set(G.edges) - in_forest
    fd = {face_key(darts): darts for darts in faces(G)}

    def travel_sign(dart):
        e, end = dart
        u, w = G.edges[e]
        travels = (u, w) if end == 0 else (w, u)
        return -1 if travels == orient[e] else 1

    while unknown:
        progress = False
        for key, darts in fd.items():
            open_darts = [d for d in darts if d[0] in unknown]
            open_edges = {d[0] for d in open_darts}
            if len(open_edges) != 1 or len(open_darts) != 1:
                continue
            (dart,) = open_darts
            e = dart[0]
            target = N.weights[key]
            prod = Fraction(1)
            for d in darts:
                if d[0] == e:
                    continue
                prod *= x[d[0]] ** travel_sign(d)
            val = target / prod
            s = travel_sign(dart)
            x[e] = val if s == 1 else 1 / val
            unknown.discard(e)
            progress = True
        if not progress:
            raise AssertionError("face peeling stalled; weights inconsistent?")
    # assemble the directed network
    edges = {}
    rot = {}
    flips = {e for e, (u, w) in G.edges.items() if orient[e] != (u, w)}
    for e, (u, w) in G.edges.items():
        t, h = orient[e]
        edges[e] = (t, h, x[e])
    for v, ds in G.rot.items():
        rot[v] = tuple((e, 1 - end) if e in flips else (e, end) for e, end in ds)
    flags = [i in orientation_sources(G, orient) for i in range(1, G.n + 1)]
    net = PlanarDirectedNetwork(G.n, flags, edges, rot=rot)
    return net


def measure_plabic(N):
    """Plucker point of a plabic network via any perfect orientation."""
    orients = perfect_orientations(N.graph)
    if not orients:
        raise ValueError("network is not perfectly orientable")
    k, n = N.graph.type()
    if k == 0:
        return PluckerVector(0, n, {(): 1})
    net = edge_weights_from_faces(N, orients[0])
    return measure(net)


# -- conversions --------------------------------------------------------------------


def graph_from_le(D):
    """Reduced plabic graph of a Le-diagram.

    Hook vertices with traffic from above become black, with traffic out
    to the left white; four-valent crossings split into a black/white
    pair; lonely corners stay degree 2.  Empty rows give white boundary
    leaves, empty columns black ones.
    """
    from .lediagram import diagram_to_tableau
    return network_from_le(diagram_to_tableau(D)).graph


def network_from_le(T):
    """Plabic network of a Le-tableau: face weights of its hook network."""
    from .lediagram import gamma_network
    net = gamma_network(T)
    return face_weights(_perfect_gamma(net))


def _perfect_gamma(net):
    """Split 4-valent hook vertices and leaf-pad isolated boundary vertices."""
    edges = dict(net.edges)
    rot = {v: list(ds) for v, ds in net.rot.items()}
    flags = net.source_flags
    n = net.n
    nid = [max([n] + [v for v in rot if isinstance(v, int)] + list(edges)) + 1]

    def fresh():
        nid[0] += 1
        return nid[0]

    for v in list(net.internal_vertices()):
        if len(rot[v]) == 4:
            # clockwise order [N-in, E-in, S-out, W-out]; black keeps {N, E}
            dn, de, ds_, dw = rot[v]
            v2 = fresh()
            ep = fresh()
            edges[ep] = (v, v2, Fraction(1))
            for dart in (ds_, dw):
                e, end = dart
                a, b, xx = edges[e]
                edges[e] = (v2 if end == 0 else a, v2 if end == 1 else b, xx)
            rot[v] = [dn, de, (ep, 0)]
            rot[v2] = [(ep, 1), ds_, dw]
    for i in range(1, n + 1):
        if rot[i]:
            continue
        leaf = fresh()
        e = fresh()
        if flags[i - 1]:
            edges[e] = (i, leaf, Fraction(1))
            rot[i] = [(e, 0)]
            rot[leaf] = [(e, 1)]
        else:
            edges[e] = (leaf, i, Fraction(1))
            rot[i] = [(e, 1)]
            rot[leaf] = [(e, 0)]
    return PlanarDirectedNetwork(n, flags, edges, rot={v: tuple(d) for v, d in rot.items()})


def graph_from_perm(pi):
    """Reduced plabic graph with the given decorated trip permutation."""
    from .permutations import le_from_perm
    return graph_from_le(le_from_perm(pi))


def removable_edges(G):
    """Edges whose removal covers a boundary cell, with the covered data.

    G must be reduced and contracted.  An edge is removable exactly when
    its two trips make a simple crossing; the covered cell's decorated
    permutation replaces that crossing by the alignment.
    """
    ok, cert = reducedness_certificate(G)
    if not ok:
        raise ValueError(f"graph is not reduced: {cert}")
    H = contracted(G)
    if H.canonical() != G.canonical():
        raise ValueError("graph is not contracted")
    T = trips(G)
    pi = T.decorated(G)
    def is_boundary(v):
        return isinstance(v, int) and 1 <= v <= G.n

    out = []
    for e in sorted(G.edges):
        u, w = G.edges[e]
        if (is_boundary(u) or is_boundary(w)) and (G.degree(u) == 1 and G.degree(w) == 1):
            continue  # boundary leaves cannot be removed
        kind_a = T.trip_through((e, 0))
        kind_b = T.trip_through((e, 1))
        if kind_a[0] != "one_way" or kind_b[0] != "one_way":
            continue
        i, j = kind_a[1], kind_b[1]
        if i == j:
            continue
        roles = crossing_roles(pi, i, j)
        if roles is None or not _simple_crossing(pi, *roles):
            continue
        ri, rj = roles
        perm = list(pi.perm)
        perm[ri - 1], perm[rj - 1] = pi(rj), pi(ri)
        col = dict(pi.col)
        if perm[ri - 1] == ri:
            col[ri] = BLACK
        if perm[rj - 1] == rj:
            col[rj] = WHITE
        out.append((e, DecoratedPermutation(perm, col)))
    return out


def delete_edge(G, e, boundary_color=None):
    """G minus edge e, adding opposite-color leaves at stranded boundary ends.

    For an edge joining two boundary vertices the two new leaves take
    opposite colors; boundary_color picks the color at the lower-numbered
    end (required then).
    """
    u, w = G.edges[e]
    edges = {f: ab for f, ab in G.edges.items() if f != e}
    rot = {v: tuple(d for d in ds if d[0] != e) for v, ds in G.rot.items()}
    col = dict(G.col)
    bdry = [v for v in (u, w) if isinstance(v, int) and 1 <= v <= G.n]
    if len(bdry) == 2:
        if boundary_color not in (BLACK, WHITE):
            raise ValueError("removing a boundary-to-boundary edge needs boundary_color")
        colors = {min(bdry): boundary_color, max(bdry): -boundary_color}
    elif len(bdry) == 1:
        other = w if bdry[0] == u else u
        colors = {bdry[0]: -G.col[other]}
    else:
        colors = {}
    nid = max([G.n] + [v for v in rot if isinstance(v, int)] + list(edges or [0])) + 1
    eid = max(edges, default=0) + 1
    for i, c in colors.items():
        leaf, enew = nid, eid
        nid += 1
        eid += 1
        edges[enew] = (i, leaf)
        rot[i] = ((enew, 0),)
        rot[leaf] = ((enew, 1),)
        col[leaf] = c
    return PlabicGraph(G.n, col, edges, rot=rot)


def export_dot(x):
    """DOT description of a plabic graph or network for external rendering."""
    G = x.graph if isinstance(x, PlabicNetwork) else x
    lines = ["graph plabic {"]
    for i in range(1, G.n + 1):
        lines.append(f'  b{i} [shape=plaintext, label="b{i}"];')
    for v in sorted(G.internal_vertices(), key=str):
        fill = "black" if G.col[v] == BLACK else "white"
        lines.append(f'  v{v} [shape=circle, style=filled, fillcolor={fill}, label=""];')

    def name(v):
        return f"b{v}" if isinstance(v, int) and 1 <= v <= G.n else f"v{v}"

    for e in sorted(G.edges):
        u, w = G.edges[e]
        lines.append(f"  {name(u)} -- {name(w)} [label=\"{e}\"];")
    lines.append("}")
    return "\n".join(lines) + "\n"
