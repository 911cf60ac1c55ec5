"""Le-diagrams, Le-tableaux, their networks, and the inverse procedure.

A Le-diagram is a 0/1 filling of a Young diagram in which no 0 has
simultaneously a 1 above it (same column) and a 1 to its left (same row):
whenever boxes (i,j') and (i',j) with i < i' and j < j' are both nonzero
and (i',j') is a box of the shape, box (i',j') is nonzero too.  A
Le-tableau replaces the 1s by positive rationals.

A tableau of shape lambda inside the k x (n-k) rectangle determines an
acyclic network in the disk whose boundary measurement matrix is in
I(lambda)-echelon form; `invert_measurement` recovers the tableau from
any totally nonnegative matrix, column by column.
"""

from fractions import Fraction
from functools import lru_cache

from .exactmath import (RationalMatrix, echelon_form, format_rational, is_tnn,
                        lambda_to_subset, rational, subset_to_lambda)
from .network import PlanarDirectedNetwork, boundary_measurement_matrix, measure


class LeDiagram:
    """0/1 filling of a partition shape satisfying the Le-property."""

    __slots__ = ("k", "n", "shape", "fill")

    def __init__(self, k, n, shape, fill, check=True):
        shape = tuple(shape) + (0,) * (k - len(tuple(shape)))
        self.k = k
        self.n = n
        self.shape = shape
        self.fill = tuple(tuple(int(bool(x)) for x in row) for row in fill)
        if check:
            if len(shape) != k or any(shape[i] < shape[i + 1] for i in range(k - 1)):
                raise ValueError(f"{shape} is not a partition with {k} parts")
            if shape and shape[0] > n - k or any(p < 0 for p in shape):
                raise ValueError(f"shape {shape} does not fit in {k} x {n - k}")
            rows = [row for row in self.fill if row]
            if len(rows) != sum(1 for p in shape if p) or any(
                    len(row) != p for row, p in zip(rows, [p for p in shape if p])):
                # allow fill rows to be given for all k rows or only nonempty ones
                full = [tuple(row) for row in self.fill]
                if len(full) == k and all(len(r) == p for r, p in zip(full, shape)):
                    pass
                else:
                    raise ValueError("fill does not match shape")
            if not is_le_fill(shape, self.fill):
                raise ValueError("filling violates the Le-property")
        if len(self.fill) < k:
            self.fill = self.fill + ((),) * (k - len(self.fill))

    def __eq__(self, other):
        return (self.k, self.n, self.shape, self.fill) == (other.k, other.n, other.shape, other.fill)

    def __hash__(self):
        return hash((self.k, self.n, self.shape, self.fill))

    def __repr__(self):
        body = "/".join("".join(str(x) for x in row) for row in self.fill if row) or "-"
        return f"LeDiagram(k={self.k}, n={self.n}, {body})"

    def size(self):
        """Number of 1s (the dimension of the cell)."""
        return sum(sum(row) for row in self.fill)

    def boxes(self):
        return [(r + 1, c + 1) for r, row in enumerate(self.fill) for c, v in enumerate(row) if v]

    def source_set(self):
        return lambda_to_subset(self.shape, self.k, self.n)


class LeTableau:
    """Positive rationals on the 1-boxes of a Le-diagram, zeros elsewhere."""

    __slots__ = ("k", "n", "shape", "rows")

    def __init__(self, k, n, shape, rows, check=True):
        shape = tuple(shape) + (0,) * (k - len(tuple(shape)))
        self.k = k
        self.n = n
        self.shape = shape
        rows = [tuple(rational(x) for x in row) for row in rows]
        if len(rows) < k:
            rows += [()] * (k - len(rows))
        self.rows = tuple(rows)
        if check:
            if len(self.rows) != k or any(len(r) != p for r, p in zip(self.rows, shape)):
                raise ValueError("tableau rows do not match the shape")
            if any(x < 0 for row in self.rows for x in row):
                raise ValueError("tableau entries must be nonnegative")
            self.diagram()  # validates the Le-property of the support

    def __eq__(self, other):
        return (self.k, self.n, self.shape, self.rows) == (other.k, other.n, other.shape, other.rows)

    def __hash__(self):
        return hash((self.k, self.n, self.shape, self.rows))

    def __repr__(self):
        body = "/".join(" ".join(format_rational(x) for x in row) for row in self.rows if row) or "-"
        return f"LeTableau(k={self.k}, n={self.n}, {body})"

    def diagram(self):
        return LeDiagram(self.k, self.n, self.shape, [[1 if x else 0 for x in row] for row in self.rows])

    def entry(self, r, c):
        return self.rows[r - 1][c - 1]

    def to_text(self):
        lines = [f"{self.k} {self.n}", " ".join(str(p) for p in self.shape)]
        for row in self.rows:
            if row:
                lines.append(" ".join(format_rational(x) for x in row))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = text.splitlines()
        if not lines:
            raise ValueError("empty tableau text")
        k, n = (int(t) for t in lines[0].split())
        shape = tuple(int(t) for t in lines[1].split()) if len(lines) > 1 else ()
        rows = [[Fraction(t) for t in ln.split()] for ln in lines[2:] if ln.strip()]
        return cls(k, n, shape, rows)


def diagram_to_tableau(D, values=None):
    """Tableau supported on D: all 1s, or the given box -> value map."""
    rows = []
    for r, row in enumerate(D.fill):
        rows.append([
            (values[(r + 1, c + 1)] if values else Fraction(1)) if v else Fraction(0)
            for c, v in enumerate(row)])
    return LeTableau(D.k, D.n, D.shape, rows)


def is_le_fill(shape, fill):
    """The raw Le-property test on a shape and a 0/1 (or sparse) filling."""
    rows = [tuple(row) for row in fill]
    rows += [()] * (len(shape) - len(rows))
    for ip in range(len(shape)):            # lower row i' (0-indexed)
        for i in range(ip):                 # upper row i
            for j in range(len(rows[ip])):  # left column j
                if not rows[ip][j]:
                    continue
                for jp in range(j + 1, len(rows[ip])):
                    if rows[ip][jp]:
                        continue
                    if jp < len(rows[i]) and rows[i][jp]:
                        return False        # a and c nonzero but b zero
    return True


def is_le_diagram(shape, fill):
    """True iff the 0/1 filling of the shape has the Le-property."""
    shape = tuple(shape)
    rows = [tuple(int(bool(x)) for x in row) for row in fill]
    if any(shape[i] < shape[i + 1] for i in range(len(shape) - 1)) or any(p < 0 for p in shape):
        raise ValueError(f"{shape} is not a partition")
    given = [r for r in rows if r]
    wanted = [p for p in shape if p]
    if [len(r) for r in given] != wanted and [len(r) for r in rows] != list(shape):
        raise ValueError("fill does not match shape")
    return is_le_fill(shape, rows)


# -- enumeration by the last-column recursion -------------------------------------


def _positive(shape):
    return tuple(p for p in shape if p > 0)


def le_fills(shape):
    """All Le-fills of the shape (positive parts only), as row tuples."""
    shape = _positive(shape)
    if not shape:
        yield ()
        return
    width = shape[0]
    d = sum(1 for p in shape if p == width)
    rest = shape[d:]
    for mask in range(1 << d):
        col = [(mask >> r) & 1 for r in range(d)]
        blocked = [r for r in range(d) if col[r] == 0 and any(col[:r])]
        keep = [r for r in range(d) if r not in blocked]
        tilde = tuple([width - 1] * len(keep)) + rest
        for sub in le_fills(tilde):
            sub = list(sub) + [()] * (len(_positive(tilde)) - len(sub))
            out = []
            ptr = 0
            for r in range(d):
                if r in blocked:
                    out.append((0,) * width)
                else:
                    prefix = sub[ptr] if ptr < len(sub) else ()
                    out.append(tuple(prefix) + (col[r],))
                    ptr += 1
            out.extend(sub[ptr:])
            yield tuple(out)


@lru_cache(maxsize=None)
def le_count_poly(shape):
    """Coefficient tuple of sum q^{|D|} over Le-fills of the shape."""
    shape = _positive(shape)
    if not shape:
        return (1,)
    width = shape[0]
    d = sum(1 for p in shape if p == width)
    rest = shape[d:]
    total = [0] * (sum(shape) + 1)
    for mask in range(1 << d):
        col = [(mask >> r) & 1 for r in range(d)]
        ones = sum(col)
        blocked = sum(1 for r in range(d) if col[r] == 0 and any(col[:r]))
        tilde = tuple([width - 1] * (d - blocked)) + rest
        for e, coef in enumerate(le_count_poly(tilde)):
            total[e + ones] += coef
    while len(total) > 1 and total[-1] == 0:
        total.pop()
    return tuple(total)


def count_le_diagrams(shape):
    return sum(le_count_poly(tuple(shape)))


def enumerate_le_diagrams(k, n, shape):
    """Stream of LeDiagram objects of the given shape in the (k, n) box."""
    shape_full = tuple(shape) + (0,) * (k - len(tuple(shape)))
    for fill in le_fills(shape_full):
        yield LeDiagram(k, n, shape_full, fill, check=False)


# -- the network of a tableau ------------------------------------------------------


def _boundary_labels(shape, k, n):
    """Row r -> source label, column c -> sink label, from the lattice path."""
    I = sorted(lambda_to_subset(shape, k, n))
    J = [j for j in range(1, n + 1) if j not in I]
    width = n - k
    row_label = {r + 1: I[r] for r in range(k)}
    col_label = {c: J[width - c] for c in range(1, width + 1)} if width else {}
    return row_label, col_label


def gamma_network(T):
    """The acyclic hook network of a Le-tableau.

    Boundary vertices are labelled clockwise along the shape's lattice
    path; vertical steps are sources, so the source set is I(lambda).
    Every nonzero box becomes an internal vertex; the horizontal edge
    entering it from the right carries the box entry, vertical edges
    carry weight 1, and everything points left or down.
    """
    k, n, shape = T.k, T.n, T.shape
    width = n - k
    row_label, col_label = _boundary_labels(shape, k, n)
    flags = [False] * n
    for r in range(1, k + 1):
        flags[row_label[r] - 1] = True

    def vid(r, c):
        return n + (r - 1) * max(width, 1) + c

    dots = {}
    for r in range(1, k + 1):
        row = T.rows[r - 1]
        dots[r] = [c for c in range(len(row), 0, -1) if row[c - 1] != 0]  # right to left

    edges = {}
    eid = [0]

    def add_edge(u, w, x):
        eid[0] += 1
        edges[eid[0]] = (u, w, rational(x))

    for r in range(1, k + 1):
        prev = row_label[r]
        for c in dots[r]:
            add_edge(prev, vid(r, c), T.entry(r, c))
            prev = vid(r, c)
    for c in range(1, width + 1):
        col = sorted(r for r in range(1, k + 1) if c in dots[r])
        if not col:
            continue
        for above, below in zip(col, col[1:]):
            add_edge(vid(above, c), vid(below, c), 1)
        add_edge(vid(col[-1], c), col_label[c], 1)

    # grid coordinates: dot (r,c) at (c, -r); the source of row r lies to its
    # east, the sink of column c below it; all edges are axis-aligned
    pos = {}
    for r in range(1, k + 1):
        for c in dots[r]:
            pos[vid(r, c)] = (c, -r)
        pos[row_label[r]] = (width + 1, -r)
    for c in range(1, width + 1):
        pos[col_label[c]] = (c, -(k + 1))

    incident = {}
    for e, (u, w, _) in edges.items():
        incident.setdefault(u, []).append((e, 0))
        incident.setdefault(w, []).append((e, 1))

    compass = {"N": 0, "E": 1, "S": 2, "W": 3}  # clockwise from north

    def heading(v, dart):
        e, end = dart
        u, w, _ = edges[e]
        ox, oy = pos[w if end == 0 else u]
        x, y = pos[v]
        if oy == y:
            return compass["E"] if ox > x else compass["W"]
        return compass["N"] if oy > y else compass["S"]

    rot = {}
    for v, darts in incident.items():
        rot[v] = tuple(sorted(darts, key=lambda d: heading(v, d)))
    for i in range(1, n + 1):
        rot.setdefault(i, ())

    return PlanarDirectedNetwork(n, flags, edges, rot=rot)


def meas_D(T):
    """The Plucker vector of the tableau's network; Delta_{I(lambda)} = 1."""
    return measure(gamma_network(T))


def tableau_matrix(T):
    """Boundary measurement matrix of the tableau's network (echelon form)."""
    return boundary_measurement_matrix(gamma_network(T))


def gamma_vertical_edges(net):
    """The column (weight-1 by construction) edges of a gamma_network output.

    Internal ids encode grid positions, so verticals are the edges between
    internal vertices in one column plus the edges into boundary sinks.
    Valid for any reweighting of such a network (gauge images included).
    """
    n = net.n
    width = max(n - len(net.sources()), 1)

    def column(v):
        return (v - n - 1) % width + 1

    verticals = []
    for e, (u, w, _) in net.edges.items():
        if not (isinstance(u, int) and u > n):
            continue  # horizontal edge out of a boundary source
        if isinstance(w, int) and w <= n:
            verticals.append(e)  # drops into a boundary sink
        elif column(u) == column(w):
            verticals.append(e)
    return verticals


def vertical_normalizing_gauge(net, vertical_eids):
    """The unique gauge making the given downward tree of edges weight 1.

    vertical_eids must form downward chains ending at boundary sinks, with
    every internal vertex the tail of exactly one of them (as in a hook
    network).  Returns the vertex -> factor map for gauge_transform.
    """
    t = {}
    pending = set(vertical_eids)

    def known(v):
        return isinstance(v, int) and 1 <= v <= net.n or v in t

    def value(v):
        return Fraction(1) if isinstance(v, int) and 1 <= v <= net.n else t[v]

    while pending:
        progress = False
        for e in list(pending):
            u, w, x = net.edges[e]
            if known(w):
                t[u] = value(w) / x
                pending.discard(e)
                progress = True
        if not progress:
            raise ValueError("vertical edges do not form boundary-rooted chains")
    return t


# -- the inverse boundary procedure ------------------------------------------------


def _pivot_columns(rows):
    out = []
    for row in rows:
        for c, x in enumerate(row):
            if x != 0:
                out.append(c)
                break
    return out


def _procedure(rows, n):
    """Recursive core of the inverse map; rows are echelon, tnn.

    Returns the tableau rows (lists of Fractions) for the shape carved out
    by the pivots of the current matrix.
    """
    k = len(rows)
    if k == 0:
        return []
    if n == k:
        return [[] for _ in range(k)]
    pivots = _pivot_columns(rows)
    d = 0
    while d < k and pivots[d] == d:
        d += 1
    if d < k and d == n:
        raise AssertionError("echelon bookkeeping broke")
    if d == 0:
        if any(row[0] != 0 for row in rows):
            raise AssertionError("column 1 should be zero when 1 is not a pivot")
        return _procedure([row[1:] for row in rows], n - 1)
    x = [(-1) ** (d - 1 - i) * rows[i][d] for i in range(d)]
    if any(v < 0 for v in x):
        raise ValueError("matrix is not totally nonnegative")
    blocked = [r for r in range(d) if x[r] == 0 and any(x[i] != 0 for i in range(r))]
    if blocked:
        flip = [sum(1 for r in blocked if r > i) % 2 for i in range(k)]
        keep = [i for i in range(k) if i not in blocked]
        cols = [c for c in range(n) if c not in blocked]
        sub = []
        for i in keep:
            row = [rows[i][c] * (-1 if flip[i] and c >= d else 1) for c in cols]
            sub.append(row)
        inner = _procedure(sub, n - len(blocked))
        width = n - k
        out = []
        ptr = 0
        for i in range(k):
            if i in blocked:
                out.append([Fraction(0)] * width)
            else:
                out.append(inner[ptr])
                ptr += 1
        return out
    s = 0
    while s < d and x[s] == 0:
        s += 1
    sub = []
    for i in range(k):
        row = [Fraction(1) if c == i else Fraction(0) for c in range(d)]
        for j in range(d + 1, n):
            if i < s or i >= d:
                row.append(rows[i][j])
            elif i < d - 1:
                row.append(rows[i][j] / x[i] + rows[i + 1][j] / x[i + 1])
            else:
                row.append(rows[i][j] / x[i])
        sub.append(row)
    inner = _procedure(sub, n - 1)
    for i in range(d):
        inner[i] = inner[i] + [x[i]]
    return inner


def invert_measurement(A):
    """Recover the Le-tableau of a totally nonnegative full-rank matrix.

    The result T satisfies tableau_matrix(T) == echelon_form(A)[0]; shapes
    come from the pivot set, entries are extracted column by column with
    the sign bookkeeping of the removal steps applied eagerly.
    """
    if not isinstance(A, RationalMatrix):
        A = RationalMatrix(A)
    if not is_tnn(A):
        raise ValueError(witness_not_tnn(A))
    B, pivots = echelon_form(A)
    shape = subset_to_lambda(pivots, A.n)
    rows = _procedure([list(r) for r in B.rows], A.n)
    if [len(r) for r in rows] != list(shape):
        raise AssertionError("procedure produced rows of the wrong shape")
    return LeTableau(A.k, A.n, shape, rows)


def witness_not_tnn(A):
    """Human-readable reason why A fails total nonnegativity."""
    from itertools import combinations
    from .exactmath import maximal_minor, _row_reduce
    rows, pivots = _row_reduce([list(r) for r in A.rows])
    if len(pivots) != A.k:
        return f"matrix has rank {len(pivots)} < {A.k}"
    for J in combinations(range(1, A.n + 1), A.k):
        m = maximal_minor(A, J)
        if m < 0:
            return f"minor Delta_{{{','.join(str(j) for j in J)}}} = {format_rational(m)} < 0"
    return "matrix is totally nonnegative"
