"""Combinatorial maps for graphs embedded in a disk.

The embedding of a graph drawn in a disk is stored purely combinatorially
as a rotation system: at every vertex, the cyclic sequence of edge ends in
clockwise order as drawn.  The disk boundary is materialized as phantom
arcs b_1 -> b_2 -> ... -> b_n -> b_1 so that face tracing, the outer face,
and left/right sides of an edge are all well defined without coordinates.

Darts.  An edge e = (tail, head) has two darts: (e, 0) anchored at the
tail and (e, 1) anchored at the head.  A dart travels from its anchor to
the opposite end.  With clockwise rotations, the orbit rule

    next(d) = clockwise successor of rev(d) at the vertex d travels to

walks every face keeping that face on the LEFT of the travel direction.
Consequently face_left(d) = orbit(d) and face_right(d) = orbit(rev(d)).
"""

def rev(dart):
    e, end = dart
    return (e, 1 - end)


class DiskMap:
    """Rotation-system embedding of a graph with n boundary vertices.

    boundary: tuple of vertex ids b_1..b_n in clockwise order.
    edges: dict eid -> (tail, head).  eids must be integers.
    rot: dict vertex -> tuple of darts anchored there, clockwise as drawn.
          Every dart of every edge must appear exactly once.
    """

    def __init__(self, boundary, edges, rot, validate=True):
        self.boundary = tuple(boundary)
        self.n = len(self.boundary)
        self.edges = dict(edges)
        self.rot = {v: tuple(ds) for v, ds in rot.items()}
        self._check_rotations()
        self._aug_rot = self._augmented_rotations()
        self._faces = None
        self._face_of = None
        if validate:
            self.validate_planarity()

    # -- construction helpers ------------------------------------------------

    def _check_rotations(self):
        seen = {}
        for v, ds in self.rot.items():
            for d in ds:
                e, end = d
                if e not in self.edges or end not in (0, 1):
                    raise ValueError(f"unknown dart {d} at vertex {v}")
                if self.anchor(d) != v:
                    raise ValueError(f"dart {d} listed at {v} but anchored at {self.anchor(d)}")
                if d in seen:
                    raise ValueError(f"dart {d} appears twice")
                seen[d] = v
        for e, (u, w) in self.edges.items():
            for d in ((e, 0), (e, 1)):
                if d not in seen:
                    raise ValueError(f"dart {d} of edge {e}=({u},{w}) missing from rotations")

    def anchor(self, dart):
        e, end = dart
        return self.edges[e][end]

    def other_end(self, dart):
        e, end = dart
        return self.edges[e][1 - end]

    def _augmented_rotations(self):
        """Splice the boundary arcs into the rotations.

        At b_i the clockwise order is: arc towards b_{i+1}, then the real
        darts clockwise (pointing into the disk), then the arc from b_{i-1}.
        """
        aug = {v: list(ds) for v, ds in self.rot.items()}
        for v in self.boundary:
            aug.setdefault(v, [])
        n = self.n
        for i in range(n):
            bi = self.boundary[i]
            arc = ("arc", i)  # runs b_i -> b_{i+1}
            prev_arc = ("arc", (i - 1) % n)
            aug[bi] = [(arc, 0)] + aug[bi] + [(prev_arc, 1)]
        return {v: tuple(ds) for v, ds in aug.items()}

    def _arc_anchor(self, dart):
        (tag, i), end = dart
        n = self.n
        return self.boundary[i] if end == 0 else self.boundary[(i + 1) % n]

    def dart_vertex(self, dart):
        e, end = dart
        if isinstance(e, tuple) and e[0] == "arc":
            return self._arc_anchor(dart)
        return self.anchor(dart)

    def dart_target(self, dart):
        return self.dart_vertex(rev(dart))

    # -- face tracing ---------------------------------------------------------

    def next_dart(self, dart):
        v = self.dart_target(dart)
        ds = self._aug_rot[v]
        i = ds.index(rev(dart))
        return ds[(i + 1) % len(ds)]

    def faces(self):
        """All dart orbits, each a tuple of darts with the face on the left."""
        if self._faces is not None:
            return self._faces
        seen = set()
        out = []
        for v in sorted(self._aug_rot, key=str):
            for d in self._aug_rot[v]:
                if d in seen:
                    continue
                orbit = []
                cur = d
                while cur not in seen:
                    seen.add(cur)
                    orbit.append(cur)
                    cur = self.next_dart(cur)
                out.append(tuple(orbit))
        self._faces = out
        self._face_of = {}
        for idx, orbit in enumerate(out):
            for d in orbit:
                self._face_of[d] = idx
        return out

    def face_left(self, dart):
        self.faces()
        return self._face_of[dart]

    def face_right(self, dart):
        return self.face_left(rev(dart))

    def outer_face(self):
        """The face outside the disk boundary circle."""
        if self.n == 0:
            raise ValueError("no boundary circle")
        return self.face_left((("arc", 0), 0))

    def interior_faces(self):
        """Indices of the faces of the picture inside the disk."""
        outer = self.outer_face()
        return [i for i in range(len(self.faces())) if i != outer]

    # -- validation ------------------------------------------------------------

    def _components(self):
        adj = {}
        for e, (u, w) in self.edges.items():
            adj.setdefault(u, set()).add(w)
            adj.setdefault(w, set()).add(u)
        for i in range(self.n):
            u, w = self.boundary[i], self.boundary[(i + 1) % self.n]
            adj.setdefault(u, set()).add(w)
            adj.setdefault(w, set()).add(u)
        for v in self._aug_rot:
            adj.setdefault(v, set())
        comps = []
        left = set(adj)
        while left:
            start = left.pop()
            comp = {start}
            stack = [start]
            while stack:
                for w in adj[stack.pop()]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            left -= comp
            comps.append(comp)
        return comps

    def validate_planarity(self):
        """Per-component Euler check V - E + F = 2 for the rotation data."""
        self.faces()
        for comp in self._components():
            ne = sum(1 for (u, w) in self.edges.values() if u in comp)
            if comp & set(self.boundary):
                ne += self.n
            if ne == 0:
                continue  # singleton components carry no embedding data
            face_ids = {self._face_of[d] for v in comp for d in self._aug_rot[v]}
            if len(comp) - ne + len(face_ids) != 2:
                raise ValueError(
                    "rotation system is not a planar disk embedding "
                    f"(component with {len(comp)} vertices, {ne} edges, {len(face_ids)} faces)")

    # -- geometry without coordinates ------------------------------------------

    def _dual_reach(self, blocked_eids):
        """Union-find closure of faces across all edges not in blocked_eids."""
        self.faces()
        parent = list(range(len(self._faces)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for e in self.edges:
            if e in blocked_eids:
                continue
            a, b = find(self.face_left((e, 0))), find(self.face_right((e, 0)))
            parent[a] = b
        for i in range(self.n):
            d = (("arc", i), 0)
            a, b = find(self.face_left(d)), find(self.face_right(d))
            parent[a] = b
        return find

    def cycle_orientation(self, cycle_eids):
        """+1 if the directed simple cycle runs counterclockwise, -1 clockwise.

        cycle_eids: edge ids of a simple directed cycle, traversed along the
        edge directions.  The cycle is counterclockwise exactly when the face
        on its right connects to the outer face without crossing the cycle.
        """
        cyc = set(cycle_eids)
        find = self._dual_reach(cyc)
        e0 = next(iter(cycle_eids))
        right = self.face_right((e0, 0))
        return 1 if find(right) == find(self.outer_face()) else -1


def rotations_from_edge_lists(edges, rot_ids):
    """Turn per-vertex clockwise edge-id lists into dart rotations.

    A loop's id appears twice in its vertex's list; the first occurrence is
    taken to be the tail end.
    """
    rot = {}
    for v, ids in rot_ids.items():
        seen_loop = set()
        darts = []
        for e in ids:
            u, w = edges[e]
            if u == w:
                end = 0 if e not in seen_loop else 1
                seen_loop.add(e)
            else:
                if u == v:
                    end = 0
                elif w == v:
                    end = 1
                else:
                    raise ValueError(f"edge {e} not incident to vertex {v}")
            darts.append((e, end))
        rot[v] = tuple(darts)
    return rot


def rotations_from_coordinates(edges, pos):
    """Clockwise rotations computed from straight-line coordinates.

    Intended for tests and builders that lay vertices out geometrically.
    Loops are not supported here.
    """
    from math import atan2
    incident = {}
    for e, (u, w) in edges.items():
        if u == w:
            raise ValueError("loops need explicit rotations")
        incident.setdefault(u, []).append((e, 0))
        incident.setdefault(w, []).append((e, 1))
    rot = {}
    for v, darts in incident.items():
        def angle(d):
            e, end = d
            u, w = edges[e]
            ox, oy = pos[w if end == 0 else u]
            return atan2(oy - pos[v][1], ox - pos[v][0])
        rot[v] = tuple(sorted(darts, key=lambda d: -angle(d)))
    return rot
