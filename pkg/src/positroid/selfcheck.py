"""Invariant suite behind `positroid selfcheck --n N`.

Each check prints one pass/fail line; the suite exercises the bijection
web and the measurement invariants at the requested size.
"""

import random
from fractions import Fraction

from . import enumeration
from .exactmath import matroid_of_plucker, lex_min_base, partitions_in_box
from .lediagram import LeDiagram, diagram_to_tableau, invert_measurement, le_fills, meas_D, tableau_matrix
from .permutations import (all_decorated_permutations, le_from_perm,
                           necklace_from_perm, perm_from_le, perm_from_necklace, rank)
from .plabic import graph_from_le, is_reduced, matroid, trips


def run_selfcheck(n, seed=0):
    rng = random.Random(seed)
    results = []

    def check(name, fn):
        try:
            ok = fn()
            msg = None
        except Exception as ex:  # a crash is a failure with a reason
            ok, msg = False, str(ex)
        results.append((name, ok, msg))

    def necklace_roundtrip():
        for pi in all_decorated_permutations(n):
            if perm_from_necklace(necklace_from_perm(pi)) != pi:
                return False
        return True

    def le_roundtrip():
        for pi in all_decorated_permutations(n):
            if perm_from_le(le_from_perm(pi)) != pi:
                return False
        return True

    def graph_roundtrip():
        for pi in all_decorated_permutations(n):
            G = graph_from_le(le_from_perm(pi))
            if not is_reduced(G) or trips(G).decorated(G) != pi:
                return False
        return True

    def inverse_boundary():
        for _ in range(25):
            k = rng.randint(1, n - 1) if n > 1 else 1
            shapes = list(partitions_in_box(k, n - k))
            lam = rng.choice(shapes)
            fills = list(le_fills(tuple(lam) + (0,) * (k - len(lam))))
            D = LeDiagram(k, n, lam, rng.choice(fills))
            vals = {b: Fraction(rng.randint(1, 30), rng.randint(1, 30)) for b in D.boxes()}
            T = diagram_to_tableau(D, vals)
            if invert_measurement(tableau_matrix(T)) != T:
                return False
        return True

    def matroid_coherence():
        for k in range(n + 1):
            for lam in partitions_in_box(k, n - k):
                full = tuple(lam) + (0,) * (k - len(lam))
                for fill in le_fills(full):
                    D = LeDiagram(k, n, full, fill)
                    T = diagram_to_tableau(D)
                    M_alg = matroid_of_plucker(meas_D(T)) if k else None
                    M_comb = matroid(graph_from_le(D))
                    if k and M_alg != M_comb:
                        return False
                    neck = necklace_from_perm(perm_from_le(D))
                    for i in range(1, n + 1):
                        if lex_min_base(M_comb, i) != neck[i]:
                            return False
        return True

    def rank_consistency():
        for pi in all_decorated_permutations(n):
            if rank(pi) != le_from_perm(pi).size():
                return False
        return True

    def counts():
        for k in range(n + 1):
            if enumeration.count_cells(k, n) != enumeration.count_cells_by_permutations(k, n):
                return False
            if sum(enumeration.cell_poly(k, n)) != enumeration.count_cells(k, n):
                return False
        return True

    check("necklace round trip", necklace_roundtrip)
    check("Le round trip", le_roundtrip)
    check("graph/trips round trip", graph_roundtrip)
    check("inverse boundary round trip", inverse_boundary)
    if n <= 5:
        check("matroid coherence", matroid_coherence)
    check("rank = |D|", rank_consistency)
    check("three-way counts", counts)

    allok = True
    for name, ok, msg in results:
        line = f"[{'PASS' if ok else 'FAIL'}] {name}"
        if msg:
            line += f"  ({msg})"
        print(line)
        allok &= ok
    return allok
