"""Decorated permutations, Grassmann necklaces, and the circular Bruhat order.

A decorated permutation is a permutation of [n] whose fixed points carry a
color, +1 (black) or -1 (white).  White fixed points count as
anti-exceedances, so the type (k, n) records k = #{i : pi^{-1}(i) > i or a
white fixed point}.  These objects are in bijection with Grassmann
necklaces, with Le-diagrams, and with the nonnegative Grassmann cells; the
conversions and the containment order of the cells live here.
"""

from itertools import combinations, permutations as iter_permutations

from .exactmath import Matroid, lambda_to_subset, lex_min_base, subset_to_lambda

BLACK, WHITE = 1, -1


class DecoratedPermutation:
    """One-line permutation of [n] with 2-colored fixed points."""

    __slots__ = ("perm", "col")

    def __init__(self, perm, col=None):
        self.perm = tuple(perm)
        n = len(self.perm)
        if sorted(self.perm) != list(range(1, n + 1)):
            raise ValueError(f"{self.perm} is not a permutation of [{n}]")
        fixed = {i for i in range(1, n + 1) if self.perm[i - 1] == i}
        col = dict(col or {})
        if set(col) != fixed or any(c not in (BLACK, WHITE) for c in col.values()):
            raise ValueError("colors must be +1/-1 exactly on the fixed points")
        self.col = col

    @property
    def n(self):
        return len(self.perm)

    def __call__(self, i):
        return self.perm[i - 1]

    def inverse(self, i):
        return self.perm.index(i) + 1

    def __eq__(self, other):
        return self.perm == other.perm and self.col == other.col

    def __hash__(self):
        return hash((self.perm, tuple(sorted(self.col.items()))))

    def __repr__(self):
        return f"DecoratedPermutation({self.format()!r})"

    def format(self):
        out = []
        for i in range(1, self.n + 1):
            v = str(self.perm[i - 1])
            if i in self.col:
                v += "B" if self.col[i] == BLACK else "W"
            out.append(v)
        return " ".join(out)

    @classmethod
    def parse(cls, text):
        """Parse one-line notation with B/W suffixes, e.g. '3 1 5 4B 2 6W'."""
        perm = []
        col = {}
        for pos, tok in enumerate(text.replace(",", " ").split(), start=1):
            suffix = None
            if tok and tok[-1] in "BWbw":
                suffix = BLACK if tok[-1] in "Bb" else WHITE
                tok = tok[:-1]
            perm.append(int(tok))
            if suffix is not None:
                col[pos] = suffix
        return cls(perm, col)

    def anti_exceedances(self):
        """The set I(pi): i with pi^{-1}(i) > i, plus white fixed points."""
        out = set()
        for i in range(1, self.n + 1):
            ii = self.inverse(i)
            if ii > i or (ii == i and self.col[i] == WHITE):
                out.add(i)
        return frozenset(out)

    def k(self):
        return len(self.anti_exceedances())

    def type(self):
        return (self.k(), self.n)

    def is_loop(self, i):
        return self.perm[i - 1] == i


def all_decorated_permutations(n, k=None):
    """Every decorated permutation of size n (optionally of type (k, n))."""
    for base in iter_permutations(range(1, n + 1)):
        fixed = [i for i in range(1, n + 1) if base[i - 1] == i]
        for whites in range(len(fixed) + 1):
            for ws in combinations(fixed, whites):
                col = {i: (WHITE if i in ws else BLACK) for i in fixed}
                pi = DecoratedPermutation(base, col)
                if k is None or pi.k() == k:
                    yield pi


# -- Grassmann necklaces -----------------------------------------------------------


class GrassmannNecklace:
    """Cyclic sequence I_1..I_n of k-subsets with the one-step exchange law."""

    __slots__ = ("subsets",)

    def __init__(self, subsets, check=True):
        self.subsets = tuple(frozenset(s) for s in subsets)
        if check and not self.is_valid():
            raise ValueError("sequence violates the necklace exchange law")

    @property
    def n(self):
        return len(self.subsets)

    @property
    def k(self):
        return len(self.subsets[0])

    def __getitem__(self, i):
        return self.subsets[(i - 1) % self.n]

    def __eq__(self, other):
        return self.subsets == other.subsets

    def __hash__(self):
        return hash(self.subsets)

    def __repr__(self):
        body = ", ".join("{" + ",".join(str(x) for x in sorted(s)) + "}" for s in self.subsets)
        return f"GrassmannNecklace({body})"

    def is_valid(self):
        n = self.n
        if len({len(s) for s in self.subsets}) != 1:
            return False
        for i in range(1, n + 1):
            cur, nxt = self[i], self[i + 1]
            if i in cur:
                if not (len(nxt - (cur - {i})) == 1 and cur - {i} <= nxt):
                    return False
            else:
                if nxt != cur:
                    return False
        return True

    def to_text(self):
        return "\n".join(" ".join(str(x) for x in sorted(s)) for s in self.subsets) + "\n"

    @classmethod
    def from_text(cls, text):
        rows = [frozenset(int(t) for t in ln.split()) for ln in text.splitlines() if ln.strip()]
        return cls(rows)


def shifted_less(a, b, r, n):
    """a <_r b in the cyclic order r < r+1 < ... < r-1."""
    return (a - r) % n < (b - r) % n


def necklace_from_perm(pi):
    """I_r = anti-exceedance set of pi with respect to the order <_r."""
    n = pi.n
    subsets = []
    for r in range(1, n + 1):
        s = set()
        for i in range(1, n + 1):
            ii = pi.inverse(i)
            if ii == i:
                if pi.col[i] == WHITE:
                    s.add(i)
            elif shifted_less(i, ii, r, n):
                s.add(i)
        subsets.append(s)
    return GrassmannNecklace(subsets)


def perm_from_necklace(neck):
    """The inverse bijection: read pi(i) off the step I_i -> I_{i+1}."""
    n = neck.n
    perm = [None] * n
    col = {}
    for i in range(1, n + 1):
        cur, nxt = neck[i], neck[i + 1]
        if nxt == cur:
            perm[i - 1] = i
            col[i] = WHITE if i in cur else BLACK
        else:
            j = next(iter(nxt - (cur - {i})))
            perm[i - 1] = j
    return DecoratedPermutation(perm, col)


def necklace_from_matroid(M):
    """I_i = lexicographically minimal base of M under the shift <_i."""
    if not isinstance(M, Matroid):
        raise TypeError("expected a Matroid")
    return GrassmannNecklace([lex_min_base(M, i) for i in range(1, M.n + 1)])


# -- chord geometry -----------------------------------------------------------------


def cyclic_interval(a, b, n):
    """{a, a+1, ..., b} clockwise (inclusive)."""
    if a <= b:
        return set(range(a, b + 1))
    return set(range(a, n + 1)) | set(range(1, b + 1))


def _crossing_cond(pi, i, j):
    n = pi.n
    return (pi(j) in cyclic_interval(i, pi(i), n)
            and j in cyclic_interval(pi(i), i, n))


def _alignment_cond(pi, i, j):
    n = pi.n
    if pi.is_loop(i) and pi.col[i] != BLACK:
        return False
    if pi.is_loop(j) and pi.col[j] != WHITE:
        return False
    return (pi(i) in cyclic_interval(i, pi(j), n)
            and j in cyclic_interval(pi(j), i, n))


class ChordPairClass:
    """Mutual position of the chords at i and j, plus a simplicity flag."""

    __slots__ = ("kind", "simple")

    def __init__(self, kind, simple):
        self.kind = kind
        self.simple = simple

    def __repr__(self):
        return f"ChordPairClass({self.kind!r}, simple={self.simple})"

    def __eq__(self, other):
        return (self.kind, self.simple) == (other.kind, other.simple)


def crossing_roles(pi, i, j):
    """The (i, j) role order of a crossing, or None when the pair is not one.

    Loops never participate in crossings.  The role order matters: undoing
    the crossing makes i a black (counterclockwise) loop when i = pi(j),
    and j a white one when j = pi(i).
    """
    if pi.is_loop(i) or pi.is_loop(j):
        return None
    if _crossing_cond(pi, i, j):
        return (i, j)
    if _crossing_cond(pi, j, i):
        return (j, i)
    return None


def is_alignment(pi, i, j):
    return _alignment_cond(pi, i, j) or _alignment_cond(pi, j, i)


def _is_misalignment(pi, i, j):
    # reversing one chord (flipping a loop's color) in either role must
    # produce an alignment shape
    def reversed_chord(x):
        if pi.is_loop(x):
            return (x, x, -pi.col[x])
        return (pi(x), x, None)

    def plain_chord(x):
        if pi.is_loop(x):
            return (x, x, pi.col[x])
        return (x, pi(x), None)

    def align_shape(a, b):
        (x, px, cx), (y, py, cy) = a, b
        n = pi.n
        if x == px and cx != BLACK:
            return False
        if y == py and cy != WHITE:
            return False
        return px in cyclic_interval(x, py, n) and y in cyclic_interval(py, x, n)

    for ca in (plain_chord(i), reversed_chord(i)):
        for cb in (plain_chord(j), reversed_chord(j)):
            if (ca[0], ca[1]) == (i, pi(i)) and (cb[0], cb[1]) == (j, pi(j)) and ca[2] in (None, pi.col.get(i)) and cb[2] in (None, pi.col.get(j)):
                continue  # at least one chord must actually be reversed
            if align_shape(ca, cb) or align_shape(cb, ca):
                return True
    return False


def _simple_crossing(pi, i, j):
    """Simplicity of the crossing with roles (i, j) as in _crossing_cond."""
    n = pi.n
    for l in cyclic_interval(j, i, n):
        if l in (i, j):
            continue
        if pi(l) in cyclic_interval(pi(j), pi(i), n):
            return False
    return True


def _simple_alignment(pi, i, j):
    n = pi.n
    for l in cyclic_interval(j, i, n):
        if l in (i, j):
            continue
        if pi(l) in cyclic_interval(pi(i), pi(j), n):
            return False
    return True


def classify_pair(pi, i, j):
    """Crossing / alignment / misalignment / other, with simplicity flag."""
    if i == j:
        raise ValueError("need two distinct chords")
    roles = crossing_roles(pi, i, j)
    if roles is not None:
        return ChordPairClass("crossing", _simple_crossing(pi, *roles))
    if _alignment_cond(pi, i, j):
        return ChordPairClass("alignment", _simple_alignment(pi, i, j))
    if _alignment_cond(pi, j, i):
        return ChordPairClass("alignment", _simple_alignment(pi, j, i))
    if _is_misalignment(pi, i, j):
        return ChordPairClass("misalignment", False)
    return ChordPairClass("other", False)


def alignment_number(pi):
    """A(pi): the number of unordered chord pairs forming an alignment."""
    return sum(1 for i, j in combinations(range(1, pi.n + 1), 2) if is_alignment(pi, i, j))


def rank(pi):
    """Cell dimension k(n-k) - A(pi)."""
    k = pi.k()
    return k * (pi.n - k) - alignment_number(pi)


# -- the circular Bruhat order -------------------------------------------------------


def r_table(pi):
    """r_ab = |I_a intersect [a,b]^cyc| for all a, b."""
    neck = necklace_from_perm(pi)
    n = pi.n
    table = {}
    for a in range(1, n + 1):
        Ia = neck[a]
        for b in range(1, n + 1):
            table[(a, b)] = len(Ia & cyclic_interval(a, b, n))
    return table


def circular_leq(pi, sigma):
    """Containment order of cell closures via the r_ab criterion."""
    if pi.type() != sigma.type():
        raise ValueError(f"types differ: {pi.type()} vs {sigma.type()}")
    rp, rs = r_table(pi), r_table(sigma)
    return all(rp[key] <= rs[key] for key in rp)


def covers(sigma):
    """All decorated permutations covered by sigma: undo one simple crossing.

    Undoing the crossing with roles (i, j) swaps the targets; a chord that
    collapses to a loop is colored black at the i end and white at the j
    end.  A 2-cycle crossing yields both role orders, hence both colorings.
    """
    out = []
    seen = set()
    n = sigma.n
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j or sigma.is_loop(i) or sigma.is_loop(j):
                continue
            if not _crossing_cond(sigma, i, j):
                continue
            if not _simple_crossing(sigma, i, j):
                continue
            perm = list(sigma.perm)
            perm[i - 1], perm[j - 1] = sigma(j), sigma(i)
            col = dict(sigma.col)
            if perm[i - 1] == i:
                col[i] = BLACK
            if perm[j - 1] == j:
                col[j] = WHITE
            pi = DecoratedPermutation(perm, col)
            if pi not in seen:
                seen.add(pi)
                out.append(pi)
    return out


def top_permutation(k, n):
    """The unique maximum of the order: i -> i + k modulo n."""
    perm = [(i - 1 + k) % n + 1 for i in range(1, n + 1)]
    col = {}
    if k % n == 0:
        col = {i: (WHITE if k else BLACK) for i in range(1, n + 1)}
    return DecoratedPermutation(perm, col)


def minimal_permutation(I, n):
    """The identity with white fixed points on I, black elsewhere."""
    I = frozenset(I)
    return DecoratedPermutation(range(1, n + 1),
                                {i: (WHITE if i in I else BLACK) for i in range(1, n + 1)})


# -- Grassmannian permutations and pipe dreams ----------------------------------------


def w_lambda(lam, k, n):
    """One-line Grassmannian permutation of the shape.

    With I(lambda) = {i_1 < ... < i_k}, the complement {j_1 < ...} and
    x~ = n+1-x, this is (i~_k, ..., i~_1, j~_{n-k}, ..., j~_1).
    """
    I = sorted(lambda_to_subset(lam, k, n))
    J = [j for j in range(1, n + 1) if j not in I]
    return tuple(n + 1 - i for i in reversed(I)) + tuple(n + 1 - j for j in reversed(J))


def bruhat_leq_grassmannian(u, lam, k, n):
    """u <= w_lambda, tested componentwise per the Grassmannian criterion."""
    w = w_lambda(lam, k, n)
    u = tuple(u)
    if sorted(u) != list(range(1, n + 1)):
        raise ValueError(f"{u} is not a permutation of [{n}]")
    return (all(u[m] <= w[m] for m in range(k))
            and all(u[m] >= w[m] for m in range(k, n)))


def inversions(u):
    u = tuple(u)
    return sum(1 for a, b in combinations(range(len(u)), 2) if u[a] > u[b])


def u_from_le(D):
    """Trace the pipe dream of a Le-diagram: 1-boxes bounce, 0-boxes cross.

    Wires travel east along rows and south down columns of the shape; at a
    1-box the east-mover turns south and the south-mover turns east.  Left
    ends, bottom to top, are rows k..1 then columns 1..n-k; right ends are
    the lattice-path steps, so the empty filling traces w_lambda.
    """
    k, n = D.k, D.n
    lam = D.shape
    width = n - k

    def box(r, c):
        return 1 <= r <= k and 1 <= c <= lam[r - 1]

    def filled(r, c):
        row = D.fill[r - 1]
        return c <= len(row) and row[c - 1] == 1

    I = sorted(lambda_to_subset(lam, k, n))
    J = [j for j in range(1, n + 1) if j not in I]

    def trace(r, c, heading):
        while True:
            if not box(r, c):
                if heading == "E":
                    return n + 1 - I[r - 1]
                return n + 1 - J[width - c]
            if filled(r, c):
                heading = "S" if heading == "E" else "E"
            r, c = (r, c + 1) if heading == "E" else (r + 1, c)

    u = [None] * n
    for r in range(1, k + 1):
        u[k - r] = trace(r, 1, "E")
    for c in range(1, width + 1):
        u[k + c - 1] = trace(1, c, "S")
    return tuple(u)


def le_from_u(u, lam, k, n):
    """The unique Le-diagram of shape lambda tracing u; inverse of u_from_le.

    Works through the distinguished-subword normal form: the boxes of the
    shape, read along antidiagonals, spell a reduced word for w_lambda in
    adjacent transpositions (box (r,c) carries s_{k-r+c}); scanning the
    word from the right and greedily absorbing letters that shorten u
    selects the crossing set of the pipe dream, and the complement is the
    filling.
    """
    from .lediagram import LeDiagram
    u = tuple(u)
    if not bruhat_leq_grassmannian(u, lam, k, n):
        raise ValueError(f"{u} is not below w_lambda in the Bruhat order")
    lam_full = tuple(lam) + (0,) * (k - len(tuple(lam)))
    boxes = sorted(((r, c) for r in range(1, k + 1) for c in range(1, lam_full[r - 1] + 1)),
                   key=lambda rc: (rc[0] + rc[1], rc[0]))
    word = [(k - r + c, (r, c)) for r, c in boxes]
    v = list(u)
    crossings = set()
    for m, rc in word:
        # greedy from the staircase inward: keep the letter iff it undoes a descent
        if v[m - 1] > v[m]:
            v[m - 1], v[m] = v[m], v[m - 1]
            crossings.add(rc)
    if v != list(range(1, n + 1)):
        raise AssertionError("greedy subword did not resolve to the identity")
    fill = [tuple(0 if (r, c) in crossings else 1 for c in range(1, lam_full[r - 1] + 1))
            for r in range(1, k + 1)]
    return LeDiagram(k, n, lam_full, fill)


def perm_from_le(D):
    """Decorated permutation of a Le-diagram via its pipe-dream permutation.

    pi^{-1} sends i_r to n+1-u_{k+1-r} and j_m to n+1-u_{n+1-m}; fixed
    points inside I(lambda) are white, the others black.
    """
    k, n = D.k, D.n
    u = u_from_le(D)
    I = sorted(lambda_to_subset(D.shape, k, n))
    J = [j for j in range(1, n + 1) if j not in I]
    inv = [None] * n
    for r in range(1, k + 1):
        inv[I[r - 1] - 1] = n + 1 - u[k - r]
    for m in range(1, n - k + 1):
        inv[J[m - 1] - 1] = n + 1 - u[n - m]
    perm = [None] * n
    for i in range(1, n + 1):
        perm[inv[i - 1] - 1] = i
    col = {}
    for i in range(1, n + 1):
        if perm[i - 1] == i:
            col[i] = WHITE if i in I else BLACK
    return DecoratedPermutation(perm, col)


def le_from_perm(pi):
    """Le-diagram of a decorated permutation; inverse of perm_from_le."""
    n = pi.n
    I = sorted(pi.anti_exceedances())
    k = len(I)
    lam = subset_to_lambda(I, n)
    J = [j for j in range(1, n + 1) if j not in I]
    u = [None] * n
    for r in range(1, k + 1):
        u[k - r] = n + 1 - pi.inverse(I[r - 1])
    for m in range(1, n - k + 1):
        u[n - m] = n + 1 - pi.inverse(J[m - 1])
    return le_from_u(tuple(u), lam, k, n)
