import random
from fractions import Fraction

import pytest

from helpers import (attach_leaf, insert_bigon, random_le_data,
                     random_plabic_network, random_rational, reweight)
from positroid.exactmath import matroid_of_plucker, partitions_in_box
from positroid.lediagram import LeDiagram, diagram_to_tableau, le_fills, meas_D
from positroid.network import measure
from positroid.permutations import (BLACK, WHITE, DecoratedPermutation, covers, rank,
                                    le_from_perm, all_decorated_permutations,
                                    minimal_permutation, rank, top_permutation)
from positroid.plabic import (PlabicGraph, PlabicNetwork, apply_move,
                              apply_reduction, contracted, delete_edge,
                              edge_weights_from_faces, export_dot,
                              face_weight_keys, face_weights, faces,
                              graph_from_le, graph_from_perm, is_reduced,
                              matroid, measure_plabic, network_from_le,
                              parallel_pairs, path_matroid,
                              perfect_orientations, reduce_graph,
                              reducedness_certificate, removable_edges,
                              square_faces, trip_permutation, trips)

rng = random.Random(31337)


def bridge_graph():
    """A single edge straight across the disk: b1 - u(W) - v(B) - b2."""
    col = {10: WHITE, 11: BLACK}
    edges = {1: (1, 10), 2: (10, 11), 3: (11, 2)}
    return PlabicGraph(2, col, edges)


def test_faces_single_chord():
    G = bridge_graph()
    fs = faces(G)
    assert len(fs) == 2  # the chord splits the disk in two


def test_euler_identity():
    for _ in range(10):
        N = random_plabic_network(rng, nmax=5, scrambles=3)
        G = N.graph
        V = len(G.internal_vertices()) + G.n
        E = len(G.edges)
        F = len(faces(G))
        c = len(G.isolated_components())
        # the paper counts only internal vertices
        assert len(G.internal_vertices()) - E + F == 1 + c


def test_le_graph_face_count_is_dimension():
    for k, n in [(2, 4), (2, 5), (3, 5)]:
        for lam in partitions_in_box(k, n - k):
            full = tuple(lam) + (0,) * (k - len(lam))
            for fill in le_fills(full):
                D = LeDiagram(k, n, full, fill)
                G = graph_from_le(D)
                assert len(faces(G)) - 1 == D.size()


def test_face_weights_unit_edges():
    D = LeDiagram(2, 4, (2, 2), [(1, 1), (1, 1)])
    T = diagram_to_tableau(D)  # all entries 1
    N = network_from_le(T)
    assert all(v == 1 for v in N.weights.values())


def test_face_weights_pattern_example():
    """A region bounded by six edges with a bridge inside and a hole.

    Geometrically the region's weight is the product of its boundary-walk
    orbit and the hole component's walk: the six hexagon edges contribute
    x1 x2^-1 x3^-1 x4^-1 x5^-1 x6 (two agree with the clockwise exterior,
    four disagree), the bridge cancels as x7 x7^-1, and the hole's walk
    gives x8^-1 (x9^-1 x9).
    """
    from math import cos, sin, pi as PI
    from positroid.planarmaps import rotations_from_coordinates
    from positroid.plabic import _face_data
    vals = {e: Fraction(p) for e, p in
            zip(range(1, 11), (2, 3, 5, 7, 11, 13, 17, 19, 23, 1))}
    # hexagon 20..25 clockwise, bridge to 26 inside, pendant tie to b1
    hexpos = {20 + i: (cos(PI / 2 - i * PI / 3), sin(PI / 2 - i * PI / 3))
              for i in range(6)}
    pos = {**hexpos, 26: (0.05, 0.15), 1: (0.0, 3.0)}
    shape = {
        1: (20, 21), 2: (22, 21), 3: (23, 22), 4: (24, 23), 5: (25, 24),
        6: (25, 20), 7: (21, 26), 10: (20, 1),
    }
    rot = rotations_from_coordinates(shape, pos)
    col = {v: (BLACK if v % 2 else WHITE) for v in (20, 21, 22, 23, 24, 25, 26)}
    # the hole: loop 8 at 27 with pendant 9 to 28, rotations by hand
    shape[8] = (27, 27)
    shape[9] = (27, 28)
    rot[27] = ((9, 0), (8, 0), (8, 1))
    rot[28] = ((9, 1),)
    col[27] = BLACK
    col[28] = WHITE
    G = PlabicGraph(1, col, shape, rot=rot)
    fd, _ = _face_data(G)
    inner = next(darts for darts in fd.values() if any(e == 7 for e, _ in darts))
    hole_walk = next(darts for darts in fd.values()
                     if {e for e, _ in darts} == {8, 9} and len(darts) == 3)

    def weight(darts):
        y = Fraction(1)
        for e, end in darts:
            y *= vals[e] if end == 1 else 1 / vals[e]
        return y

    region = weight(inner) * weight(hole_walk)
    hexpart = vals[1] * vals[6] / (vals[2] * vals[3] * vals[4] * vals[5])
    assert region in (hexpart / vals[8], hexpart * vals[8])
    # the loop's two sides give the lens x8 and the walk x8^-1; the walk
    # side (counterclockwise around the hole) is the one in the region
    assert region == hexpart / vals[8]


def test_face_weights_gauge_invariant():
    from positroid.network import gauge_transform, is_perfect
    from positroid.lediagram import gamma_network
    from positroid.plabic import _perfect_gamma
    for _ in range(6):
        D, T = random_le_data(rng, 2, 5)
        net = _perfect_gamma(gamma_network(T))
        assert is_perfect(net)
        N1 = face_weights(net)
        t = {v: random_rational(rng, 1, 9) for v in net.internal_vertices()}
        N2 = face_weights(gauge_transform(net, t))
        assert N1.weights == N2.weights


def test_face_weights_product_one():
    for _ in range(8):
        N = random_plabic_network(rng, nmax=5, scrambles=4)
        prod = Fraction(1)
        for v in N.weights.values():
            prod *= v
        assert prod == 1


def test_edge_weights_round_trip():
    from positroid.plabic import weights_by_travel
    for _ in range(8):
        N = random_plabic_network(rng, nmax=5, scrambles=2)
        for orient in perfect_orientations(N.graph)[:3]:
            net = edge_weights_from_faces(N, orient)
            back = face_weights(net)
            assert weights_by_travel(back) == weights_by_travel(N)


def test_measure_independent_of_orientation_choice():
    # the gauge representative may differ but the measured point may not
    for _ in range(8):
        N = random_plabic_network(rng, nmax=4, scrambles=2)
        k, n = N.graph.type()
        if k == 0:
            continue
        orients = perfect_orientations(N.graph)
        pts = [measure(edge_weights_from_faces(N, o)) for o in orients[:4]]
        for p in pts[1:]:
            assert p.projectively_equal(pts[0])


def test_perfect_orientations_dipole():
    # isolated black-white dipole admits exactly one orientation
    col = {10: BLACK, 11: WHITE, 20: WHITE, 21: BLACK}
    edges = {1: (10, 11), 2: (1, 20), 3: (2, 21)}
    G = PlabicGraph(2, col, edges, rot_ids={10: [1], 11: [1], 20: [2], 21: [3], 1: [2], 2: [3]})
    orients = perfect_orientations(G)
    assert all(o[1] == (10, 11) for o in orients)


def test_singleton_not_orientable():
    col = {10: BLACK, 20: WHITE}
    edges = {1: (1, 10)}
    G = PlabicGraph(1, col, edges, rot_ids={1: [1], 10: [1], 20: []})
    assert perfect_orientations(G) == []
    with pytest.raises(ValueError):
        matroid(G)


def test_matroid_five_orientations_cell():
    G = contracted(graph_from_le(le_from_perm(DecoratedPermutation((4, 3, 1, 2)))))
    assert len(perfect_orientations(G)) == 5
    M = matroid(G)
    assert M.bases == frozenset(frozenset(b) for b in
                                [{1, 4}, {1, 2}, {1, 3}, {2, 4}, {3, 4}])


def test_matroid_leaf_colors():
    G = graph_from_le(le_from_perm(minimal_permutation({2, 3}, 4)))
    M = matroid(G)
    assert M.bases == frozenset({frozenset({2, 3})})


def test_path_matroid_agrees():
    for _ in range(6):
        k = rng.randint(1, 3)
        n = rng.randint(k + 1, 5)
        D, _ = random_le_data(rng, k, n)
        G = graph_from_le(D)
        orient = perfect_orientations(G)[0]
        assert path_matroid(G, orient) == matroid(G)


def test_matroid_equals_algebraic():
    for k, n in [(2, 4), (2, 5)]:
        for lam in partitions_in_box(k, n - k):
            full = tuple(lam) + (0,) * (k - len(lam))
            for fill in le_fills(full):
                D = LeDiagram(k, n, full, fill)
                T = diagram_to_tableau(D, {b: random_rational(rng, 1, 9)
                                           for b in D.boxes()})
                assert matroid(graph_from_le(D)) == matroid_of_plucker(meas_D(T))


def test_trips_white_leaf_fixed_point():
    G = graph_from_le(le_from_perm(minimal_permutation({1}, 2)))
    pi = trip_permutation(G)
    assert pi == minimal_permutation({1}, 2)


def test_trips_full_box_1x1():
    D = LeDiagram(1, 2, (1,), [(1,)])
    assert trip_permutation(graph_from_le(D)).perm == (2, 1)


def test_trips_roundtrip_all_n4():
    for pi in all_decorated_permutations(4):
        G = graph_from_perm(pi)
        assert trip_permutation(G) == pi
        assert is_reduced(G)


def test_reduced_criterion_bigon_false():
    G = bridge_graph()
    G2, (ep, eq) = insert_bigon(G, 2, rng)
    ok, cert = reducedness_certificate(G2)
    assert not ok


def test_reduced_criterion_roundtrip_false():
    # an isolated 2-cycle: round trip
    col = {10: BLACK, 11: WHITE, 20: WHITE, 21: BLACK}
    edges = {1: (1, 10), 2: (2, 11), 3: (20, 21), 4: (20, 21)}
    G = PlabicGraph(2, col, edges,
                    rot_ids={1: [1], 2: [2], 10: [1], 11: [2],
                             20: [3, 4], 21: [3, 4]})
    ok, cert = reducedness_certificate(G)
    assert not ok and "isolated" in cert


def test_reduced_all_le_graphs():
    for k, n in [(2, 4), (3, 6)]:
        for lam in partitions_in_box(k, n - k):
            full = tuple(lam) + (0,) * (k - len(lam))
            for fill in le_fills(full):
                assert is_reduced(graph_from_le(LeDiagram(k, n, full, fill)))


def test_move_m1_weights_at_unit():
    # y0 = 1: inner inverts to 1, neighbours scale by 2 or 1/2
    D = LeDiagram(2, 4, (2, 2), [(1, 1), (1, 1)])
    N = network_from_le(diagram_to_tableau(D))
    while True:
        G = N.graph
        v = next((v for v in G.internal_vertices()
                  if G.degree(v) == 2 and len({e for e, _ in G.rot[v]}) == 2), None)
        if v is None:
            break
        N = apply_move(N, ("M3r", v))
    (key,) = square_faces(N.graph)
    before = dict(N.weights)
    assert before[key] == 1
    after = apply_move(N, ("M1", key)).weights
    ratios = sorted(str(after[k] / before[k]) for k in before)
    assert ratios == ["1", "1/2", "1/2", "2", "2"]


def _contract_network(N):
    while True:
        G = N.graph
        v = next((v for v in G.internal_vertices()
                  if G.degree(v) == 2 and len({e for e, _ in G.rot[v]}) == 2), None)
        if v is not None:
            N = apply_move(N, ("M3r", v))
            continue
        e = next((e for e, (u, w) in sorted(G.edges.items())
                  if u != w and G.col.get(u) is not None
                  and G.col.get(u) == G.col.get(w)), None)
        if e is not None:
            N = apply_move(N, ("M2", e))
            continue
        return N


def test_move_m1_involution_and_invariance():
    done = 0
    seeds = [top_permutation(2, 4), top_permutation(2, 5), top_permutation(3, 5)]
    worklist = []
    for pi in seeds:
        N = _contract_network(reweight(graph_from_perm(pi), rng))
        worklist.append(N)
        G = N.graph
        # splitting a degree-4 corner exposes further square faces
        for v in sorted(G.internal_vertices()):
            if G.degree(v) == 4:
                for i in range(4):
                    try:
                        worklist.append(apply_move(N, ("M2u", v, i, (i + 2) % 4)))
                    except (ValueError, AssertionError):
                        pass
    for N in worklist:
        sites = square_faces(N.graph)
        if not sites:
            continue
        p0 = measure_plabic(N)
        for key in sites:
            N1 = apply_move(N, ("M1", key))
            assert measure_plabic(N1).projectively_equal(p0)
            N2 = apply_move(N1, ("M1", key))
            assert N2.weights == N.weights and N2.graph.col == N.graph.col
            assert trip_permutation(contracted(N1.graph)) == trip_permutation(contracted(N.graph))
            done += 1
    assert done >= 5


def test_moves_m2_m3_weights_unchanged():
    N = random_plabic_network(rng, nmax=4, scrambles=0)
    G = N.graph
    e = sorted(G.edges)[0]
    N1 = apply_move(N, ("M3", e, BLACK))
    assert sorted(N1.weights.values()) == sorted(N.weights.values())
    assert measure_plabic(N1).projectively_equal(measure_plabic(N))


def test_move_errors():
    N = random_plabic_network(rng, nmax=4, scrambles=0)
    with pytest.raises(ValueError):
        apply_move(N, ("M1", (999, 0)))
    with pytest.raises(ValueError):
        apply_move(N, ("bogus",))


def test_reduction_r1_invariance():
    done = 0
    for _ in range(20):
        N = random_plabic_network(rng, nmax=4, scrambles=2)
        G = N.graph
        internal_edges = [e for e, (u, w) in sorted(G.edges.items())
                          if not (isinstance(u, int) and 1 <= u <= G.n)
                          and not (isinstance(w, int) and 1 <= w <= G.n)]
        if not internal_edges:
            continue
        G2, (ep, eq) = insert_bigon(G, rng.choice(internal_edges), rng)
        N2 = reweight(G2, rng)
        pairs = parallel_pairs(G2)
        if (min(ep, eq), max(ep, eq)) not in pairs:
            continue
        p0 = measure_plabic(N2)
        N3 = apply_reduction(N2, ("R1", ep, eq))
        assert measure_plabic(N3).projectively_equal(p0)
        done += 1
        if done >= 5:
            break
    assert done >= 3


def test_reduction_r2_invariance():
    done = 0
    base = contracted(graph_from_le(le_from_perm(top_permutation(2, 4))))
    for _ in range(30):
        G = base
        cands = [v for v in sorted(G.internal_vertices(), key=str) if G.degree(v) >= 3]
        v = rng.choice(cands)
        G2, leaf = attach_leaf(G, v, -G.col[v], rng.randrange(G.degree(v)))
        try:
            N2 = reweight(G2, rng)
            p0 = measure_plabic(N2)
        except ValueError:
            continue
        N3 = apply_reduction(N2, ("R2", leaf))
        assert measure_plabic(N3).projectively_equal(p0)
        done += 1
        if done >= 5:
            break
    assert done >= 3


def test_reduction_r3_keeps_weights():
    col = {10: WHITE, 11: BLACK, 20: WHITE, 21: BLACK}
    edges = {1: (1, 10), 2: (10, 11), 3: (10, 2), 4: (20, 21)}
    G = PlabicGraph(2, col, edges,
                    rot_ids={1: [1], 2: [3], 10: [1, 2, 3], 11: [2], 20: [4], 21: [4]})
    N = reweight(G, rng, special={(4, 0): Fraction(1)})
    p0 = measure_plabic(N)
    N2 = apply_reduction(N, ("R3", 20))
    assert sorted(N2.weights.values()) == sorted(v for k, v in N.weights.items()
                                                 if k != (4, 0))
    assert measure_plabic(N2).projectively_equal(p0)


def test_reduce_already_reduced_identity():
    G = contracted(graph_from_le(le_from_perm(top_permutation(2, 4))))
    red, nsing, trace = reduce_graph(G)
    assert nsing == 0 and trace == []
    assert red.canonical() == G.canonical()


def test_reduce_bigon_one_step():
    G = bridge_graph()
    G2, _ = insert_bigon(G, 2, rng)
    red, nsing, trace = reduce_graph(G2)
    assert is_reduced(red)
    assert len(faces(G2)) - len(faces(red)) == 1
    assert any(op[0] == "R1" for op in trace)


def test_reduce_scrambled_networks():
    for _ in range(4):
        N = random_plabic_network(rng, nmax=4, scrambles=5)
        p0 = measure_plabic(N)
        pi0 = trip_permutation(contracted(N.graph))
        red, nsing, trace = reduce_graph(N)
        G = red.graph
        assert is_reduced(G)
        assert nsing == 0
        assert measure_plabic(red).projectively_equal(p0)
        assert trip_permutation(contracted(G)) == pi0


def test_reduce_exposes_hidden_sites():
    # a graph needing square moves: scrambled then bigon inserted deep
    N = random_plabic_network(rng, nmax=4, scrambles=4)
    G = N.graph
    internal_edges = [e for e, (u, w) in sorted(G.edges.items())
                      if not (isinstance(u, int) and 1 <= u <= G.n)
                      and not (isinstance(w, int) and 1 <= w <= G.n)]
    if internal_edges:
        G, _ = insert_bigon(G, internal_edges[0], rng)
    red, nsing, trace = reduce_graph(G)
    assert is_reduced(red)


def test_equal_trips_implies_equal_matroid():
    # reduced graphs with the same decorated trip permutation share the matroid
    for pi in list(all_decorated_permutations(4, 2))[:10]:
        G1 = graph_from_perm(pi)
        N1 = reweight(G1, rng)
        sites = square_faces(contracted(G1))
        G2 = contracted(G1)
        for key in sites[:1]:
            G2 = apply_move(G2, ("M1", key))
        assert trip_permutation(G2) == pi
        assert matroid(G2) == matroid(G1)


def test_removable_edges_top_cell():
    G = contracted(graph_from_le(le_from_perm(top_permutation(2, 4))))
    rem = removable_edges(G)
    cov = covers(top_permutation(2, 4))
    assert {p for _, p in rem} == set(cov)
    for e, predicted in rem:
        H = delete_edge(G, e)
        assert is_reduced(H)
        HC = contracted(H)
        assert trip_permutation(HC) == predicted


def test_removable_edges_zero_cell_empty():
    G = contracted(graph_from_le(le_from_perm(minimal_permutation({1, 3}, 4))))
    assert removable_edges(G) == []


def test_removable_counts_match_covers_25():
    for pi in [top_permutation(2, 5), DecoratedPermutation((3, 4, 5, 1, 2))]:
        G = contracted(graph_from_perm(pi))
        rem = removable_edges(G)
        assert {p for _, p in rem} == set(covers(pi))


def test_measure_plabic_equals_meas_D():
    for _ in range(6):
        k = rng.randint(1, 3)
        n = rng.randint(k + 1, 5)
        D, T = random_le_data(rng, k, n)
        N = network_from_le(T)
        assert measure_plabic(N).projectively_equal(meas_D(T))


def test_measure_plabic_support_is_matroid():
    for _ in range(5):
        N = random_plabic_network(rng, nmax=4, scrambles=2)
        p = measure_plabic(N)
        k, n = N.graph.type()
        if k == 0:
            continue
        assert matroid_of_plucker(p) == matroid(N.graph)


def test_plabic_text_roundtrip():
    N = random_plabic_network(rng, nmax=4, scrambles=2)
    back = PlabicGraph.from_text(N.to_text())
    assert isinstance(back, PlabicNetwork)
    assert back.graph.canonical() == N.graph.canonical()
    assert back.weights == N.weights
    G = N.graph
    back2 = PlabicGraph.from_text(G.to_text())
    assert back2.canonical() == G.canonical()


def test_export_dot():
    G = bridge_graph()
    dot = export_dot(G)
    assert "b1 --" in dot or "-- b1" in dot or "b1" in dot
    assert "graph plabic" in dot


def test_faces_bare_boundary_edge():
    # a single edge straight between two boundary vertices: two faces
    G = PlabicGraph(2, {}, {1: (1, 2)})
    assert len(faces(G)) == 2


def test_matching_matroid_on_bipartite_refinement():
    # making the graph bipartite by splitting unicolored edges, the partial
    # matchings cover exactly the matroid's bases
    def bipartite_refine(G):
        # boundary vertices count as white
        def colr(G, v):
            if isinstance(v, int) and 1 <= v <= G.n:
                return WHITE
            return G.col[v]

        while True:
            e = next((e for e, (u, w) in sorted(G.edges.items())
                      if u != w and colr(G, u) == colr(G, w)), None)
            if e is None:
                return G
            G = apply_move(G, ("M3", e, -colr(G, G.edges[e][0])))

    def matching_bases(G):
        # partial matchings cover every internal vertex once; the matching
        # covers exactly the boundary sinks of the matched orientation, so
        # the bases of the graph's matroid are the complements of the
        # covered boundary sets
        n = G.n
        internal = sorted(G.internal_vertices(), key=str)
        out = []
        eids = sorted(G.edges)

        def rec(idx, used_vertices, covered_boundary):
            if idx == len(eids):
                if all(v in used_vertices for v in internal):
                    out.append(frozenset(range(1, n + 1)) - frozenset(covered_boundary))
                return
            e = eids[idx]
            u, w = G.edges[e]
            rec(idx + 1, used_vertices, covered_boundary)
            if u in used_vertices or w in used_vertices or u == w:
                return
            nb = set(covered_boundary)
            for v in (u, w):
                if isinstance(v, int) and 1 <= v <= G.n:
                    nb.add(v)
            rec(idx + 1, used_vertices | {u, w}, nb)

        rec(0, frozenset(), set())
        return out

    for pi in [DecoratedPermutation((4, 3, 1, 2)), top_permutation(2, 4)]:
        G = contracted(graph_from_perm(pi))
        B = bipartite_refine(G)
        M = matroid(G)
        all_bases = matching_bases(B)
        assert {b for b in all_bases if len(b) == M.k} == set(M.bases)
        # and the orientation <-> matching bijection preserves the count
        assert len(perfect_orientations(B)) == len(all_bases)


def test_top_cell_matroid_complete():
    from itertools import combinations as comb
    G = graph_from_perm(top_permutation(2, 4))
    M = matroid(G)
    assert M.bases == frozenset(frozenset(c) for c in comb(range(1, 5), 2))


def test_face_count_equals_rank():
    for n in range(1, 5):
        for pi in all_decorated_permutations(n):
            G = graph_from_le(le_from_perm(pi))
            assert len(faces(G)) - 1 == rank(pi)


def test_unit_weights_support_is_matroid():
    G = contracted(graph_from_le(le_from_perm(DecoratedPermutation((4, 3, 1, 2)))))
    N = PlabicNetwork(G, {k: Fraction(1) for k in face_weight_keys(G)})
    p = measure_plabic(N)
    assert matroid_of_plucker(p) == matroid(G)


def test_composite_matroid_identity():
    # matroid -> necklace -> permutation -> Le -> graph -> matroid
    from positroid.permutations import necklace_from_matroid, perm_from_necklace
    for _ in range(6):
        D, T = random_le_data(rng, 2, 5)
        M = matroid_of_plucker(meas_D(T))
        pi = perm_from_necklace(necklace_from_matroid(M))
        G = graph_from_le(le_from_perm(pi))
        assert matroid(G) == M


def test_reductions_decrease_edge_vertex_excess():
    rng2 = random.Random(77)
    base = contracted(graph_from_perm(top_permutation(2, 4)))
    internal = [e for e, (u, w) in sorted(base.edges.items())
                if not (isinstance(u, int) and u <= 4)
                and not (isinstance(w, int) and w <= 4)]
    G2, (ep, eq) = insert_bigon(base, internal[0], rng2)

    def excess(G):
        return len(G.edges) - (len(G.internal_vertices()) + G.n)

    G3 = apply_reduction(G2, ("R1", ep, eq))
    assert excess(G3) < excess(G2)
    v = sorted(base.internal_vertices())[0]
    G4, leaf = attach_leaf(base, v, -base.col[v], 0)
    G5 = apply_reduction(G4, ("R2", leaf))
    assert excess(G5) < excess(G4)
