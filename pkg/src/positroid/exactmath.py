"""Exact rational linear algebra over the big rationals.

Everything downstream (boundary measurements, cell parametrizations,
matroids) is built on the types here.  There is no floating point and no
tolerance anywhere: equality of values is exact equality of fractions.
"""

from fractions import Fraction
from itertools import combinations, permutations

Rational = Fraction


def rational(x):
    """Coerce ints, strings like '3/7', or Fractions to an exact Rational."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def format_rational(x):
    """Render a Rational as 'p' or 'p/q' (lowest terms, positive q)."""
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def sort_sign(seq):
    """Parity sign (+1/-1) of the permutation sorting seq, or 0 on repeats."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class RationalMatrix:
    """An immutable k x n matrix of Rationals, row-major."""

    __slots__ = ("k", "n", "rows")

    def __init__(self, rows):
        rows = tuple(tuple(rational(x) for x in row) for row in rows)
        self.k = len(rows)
        self.n = len(rows[0]) if rows else 0
        if any(len(r) != self.n for r in rows):
            raise ValueError("ragged matrix")
        self.rows = rows

    @classmethod
    def identity(cls, k):
        return cls([[1 if i == j else 0 for j in range(k)] for i in range(k)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, RationalMatrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        body = "; ".join(" ".join(format_rational(x) for x in r) for r in self.rows)
        return f"RationalMatrix[{self.k}x{self.n}: {body}]"

    def column(self, j):
        """Column j, 1-indexed like everything boundary-facing."""
        return tuple(r[j - 1] for r in self.rows)

    def submatrix_columns(self, cols):
        """Submatrix in the given 1-indexed column list (order kept)."""
        return RationalMatrix([[r[j - 1] for j in cols] for r in self.rows])

    def rank(self):
        return len(_row_reduce(list(list(r) for r in self.rows))[1])

    def to_text(self):
        lines = [f"{self.k} {self.n}"]
        for r in self.rows:
            lines.append(" ".join(format_rational(x) for x in r))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        toks = text.split()
        if len(toks) < 2:
            raise ValueError("matrix text needs a 'k n' header")
        k, n = int(toks[0]), int(toks[1])
        vals = toks[2:]
        if len(vals) != k * n:
            raise ValueError(f"expected {k * n} entries, got {len(vals)}")
        return cls([[Fraction(vals[i * n + j]) for j in range(n)] for i in range(k)])


def _det_bareiss(rows):
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    a = [list(r) for r in rows]
    m = len(a)
    if m == 0:
        return 1
    sign = 1
    prev = 1
    for r in range(m - 1):
        if a[r][r] == 0:
            for rr in range(r + 1, m):
                if a[rr][r] != 0:
                    a[r], a[rr] = a[rr], a[r]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(r + 1, m):
            for j in range(r + 1, m):
                a[i][j] = (a[i][j] * a[r][r] - a[i][r] * a[r][j]) // prev
            a[i][r] = 0
        prev = a[r][r]
    return sign * a[m - 1][m - 1]


def det(matrix):
    """Exact determinant of a square RationalMatrix or row list."""
    rows = matrix.rows if isinstance(matrix, RationalMatrix) else [tuple(rational(x) for x in r) for r in matrix]
    m = len(rows)
    if any(len(r) != m for r in rows):
        raise ValueError("determinant of a non-square matrix")
    # clear denominators row by row, run integer Bareiss, divide back
    scale = Fraction(1)
    int_rows = []
    for r in rows:
        d = 1
        for x in r:
            d = d * x.denominator // _gcd(d, x.denominator)
        scale *= d
        int_rows.append([int(x * d) for x in r])
    return Fraction(_det_bareiss(int_rows)) / scale


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def maximal_minor(A, J):
    """Delta_J(A): determinant of the column submatrix in the k-subset J."""
    J = sorted(J)
    if len(J) != A.k:
        raise ValueError(f"need a {A.k}-subset of columns, got {J}")
    if len(set(J)) != len(J) or not all(1 <= j <= A.n for j in J):
        raise ValueError(f"invalid column subset {J}")
    return det(A.submatrix_columns(J))


def minor_signed(A, seq):
    """Minor for an ordered (possibly unsorted) column sequence, with sign."""
    s = sort_sign(seq)
    if s == 0:
        return Fraction(0)
    return s * maximal_minor(A, sorted(seq))


def _row_reduce(rows):
    """Gauss-Jordan in place; returns (rows, pivot column 0-indexed list)."""
    k = len(rows)
    n = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(n):
        pr = next((i for i in range(r, k) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][c]
        rows[r] = [x / pv for x in rows[r]]
        for i in range(k):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == k:
            break
    return rows, pivots


def echelon_form(A):
    """Reduced echelon representative of the row span and its pivot set.

    Returns (B, I) with B in I-echelon form: the columns of the 1-indexed
    pivot set I form the identity, and the span of the rows is unchanged.
    Raises on rank-deficient input.
    """
    rows, pivots = _row_reduce([list(r) for r in A.rows])
    if len(pivots) != A.k:
        raise ValueError(f"matrix has rank {len(pivots)} < {A.k}")
    return RationalMatrix(rows), tuple(c + 1 for c in pivots)


class PluckerVector:
    """All maximal minors of a full-rank k x n matrix, keyed by k-subsets.

    Keys are sorted tuples; a value for an unsorted index sequence carries
    the sorting-permutation sign.  Projective equality divides out a common
    scalar.
    """

    __slots__ = ("k", "n", "coords")

    def __init__(self, k, n, coords):
        self.k = k
        self.n = n
        self.coords = {tuple(sorted(key)): rational(v) for key, v in coords.items()}
        for key in combinations(range(1, n + 1), k):
            self.coords.setdefault(key, Fraction(0))
        if all(v == 0 for v in self.coords.values()):
            raise ValueError("all Plucker coordinates vanish")

    def __getitem__(self, seq):
        seq = tuple(seq)
        s = sort_sign(seq)
        if s == 0:
            return Fraction(0)
        return s * self.coords[tuple(sorted(seq))]

    def __eq__(self, other):
        return (self.k, self.n, self.coords) == (other.k, other.n, other.coords)

    def __hash__(self):
        return hash((self.k, self.n, tuple(sorted(self.coords.items()))))

    def __repr__(self):
        nz = {k: v for k, v in self.coords.items() if v != 0}
        return f"PluckerVector(k={self.k}, n={self.n}, {len(nz)} nonzero)"

    def support(self):
        return frozenset(key for key, v in self.coords.items() if v != 0)

    def normalized(self):
        """Scale so the first nonzero coordinate (lex subset order) is 1."""
        for key in sorted(self.coords):
            if self.coords[key] != 0:
                c = self.coords[key]
                return PluckerVector(self.k, self.n, {k2: v / c for k2, v in self.coords.items()})
        raise ValueError("zero vector")

    def projectively_equal(self, other):
        if (self.k, self.n) != (other.k, other.n):
            return False
        return self.normalized().coords == other.normalized().coords

    def is_nonnegative(self):
        """True iff some scalar multiple has all coordinates >= 0."""
        p = self.normalized()
        return all(v >= 0 for v in p.coords.values())

    def check_grassmann_plucker(self):
        """Brute-force check of the three-term relations over all index tuples.

        Exponential in n; meant for n <= 5 sanity checking.
        """
        idx = range(1, self.n + 1)
        for iseq in permutations(idx, self.k):
            for jseq in permutations(idx, self.k):
                lhs = self[iseq] * self[jseq]
                rhs = Fraction(0)
                for s in range(self.k):
                    left = (jseq[s],) + iseq[1:]
                    right = jseq[:s] + (iseq[0],) + jseq[s + 1:]
                    rhs += self[left] * self[right]
                if lhs != rhs:
                    return False
        return True


def plucker_vector(A):
    """The Plucker embedding of a full-rank matrix: all C(n,k) minors."""
    B, _ = echelon_form(A)  # rank check; minors taken on A itself
    del B
    coords = {}
    for J in combinations(range(1, A.n + 1), A.k):
        coords[J] = maximal_minor(A, J)
    return PluckerVector(A.k, A.n, coords)


class Matroid:
    """A rank-k matroid on [n] given by its set of bases."""

    __slots__ = ("k", "n", "bases")

    def __init__(self, k, n, bases):
        self.k = k
        self.n = n
        self.bases = frozenset(frozenset(b) for b in bases)
        if not self.bases:
            raise ValueError("a matroid has at least one base")
        for b in self.bases:
            if len(b) != k or not all(1 <= x <= n for x in b):
                raise ValueError(f"base {sorted(b)} is not a {k}-subset of [{n}]")

    def __eq__(self, other):
        return (self.k, self.n, self.bases) == (other.k, other.n, other.bases)

    def __hash__(self):
        return hash((self.k, self.n, self.bases))

    def __repr__(self):
        return f"Matroid(k={self.k}, n={self.n}, {len(self.bases)} bases)"

    def zeros(self):
        """Elements in no base."""
        return frozenset(range(1, self.n + 1)) - frozenset().union(*self.bases)

    def cozeros(self):
        """Elements in every base."""
        out = None
        for b in self.bases:
            out = b if out is None else out & b
        return frozenset(out)

    def to_text(self):
        lines = [f"{self.k} {self.n}"]
        for b in sorted(tuple(sorted(x)) for x in self.bases):
            lines.append(" ".join(str(i) for i in b))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text):
        lines = [ln for ln in text.splitlines() if ln.strip()]
        k, n = (int(t) for t in lines[0].split())
        bases = [tuple(int(t) for t in ln.split()) for ln in lines[1:]]
        return cls(k, n, bases)


def matroid_of(A):
    """Matroid of column dependencies: bases are subsets with Delta != 0."""
    p = plucker_vector(A)
    return Matroid(A.k, A.n, p.support())


def matroid_of_plucker(p):
    return Matroid(p.k, p.n, p.support())


def is_tnn(A):
    """True iff A has rank k and every maximal minor is >= 0."""
    rows, pivots = _row_reduce([list(r) for r in A.rows])
    if len(pivots) != A.k:
        return False
    return all(maximal_minor(A, J) >= 0 for J in combinations(range(1, A.n + 1), A.k))


def verify_exchange_axiom(M):
    """Check the basis exchange axiom by direct enumeration."""
    for I in M.bases:
        for J in M.bases:
            for i in I:
                if not any(frozenset(I - {i} | {j}) in M.bases for j in J):
                    return False
    return True


def shifted_key(subset, i, n):
    """Sorting key of a subset under the cyclic order i < i+1 < ... < i-1."""
    return tuple(sorted((x - i) % n for x in subset))


def lex_min_base(M, i=1):
    """Lexicographically minimal base under the shifted order <_i."""
    return frozenset(min(M.bases, key=lambda b: shifted_key(b, i, M.n)))


def lambda_to_subset(lam, k, n):
    """The k-subset I(lambda) labelling the vertical steps of the shape.

    The boundary path of lambda inside the k x (n-k) rectangle is read from
    the upper-right corner, labelling steps 1..n; vertical steps give I.
    """
    lam = tuple(lam) + (0,) * (k - len(lam))
    if len(lam) != k or any(lam[i] < lam[i + 1] for i in range(k - 1)):
        raise ValueError(f"{lam} is not a partition with at most {k} parts")
    if lam and lam[0] > n - k:
        raise ValueError(f"{lam} does not fit in a {k} x {n - k} box")
    if any(x < 0 for x in lam):
        raise ValueError("negative part")
    # i_j is pinned by lambda_j = |[i_j, n] \ I|, i.e. i_j = j + (n-k) - lambda_j
    return frozenset(j + 1 + (n - k) - lam[j] for j in range(k))


def subset_to_lambda(I, n):
    """Partition of the k-subset I in [n]: lambda_j = |[i_j, n] \\ I|."""
    I = sorted(I)
    k = len(I)
    if any(not 1 <= x <= n for x in I) or len(set(I)) != k:
        raise ValueError(f"{I} is not a subset of [{n}]")
    out = []
    for j, ij in enumerate(I):
        out.append((n - ij + 1) - (k - j))
    return tuple(out)


def partition_weight(lam):
    return sum(lam)


def partitions_in_box(k, width):
    """All partitions with at most k parts, each at most width."""
    def rec(rows_left, maxpart):
        if rows_left == 0:
            yield ()
            return
        for first in range(maxpart, -1, -1):
            for rest in rec(rows_left - 1, first):
                yield (first,) + rest
    for lam in rec(k, width):
        yield tuple(x for x in lam if x > 0) if any(lam) else ()
