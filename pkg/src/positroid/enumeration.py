"""Counting nonnegative cells: Eulerian numbers, N_kn, q-analogues, N_n.

The table-level identities tie three independent descriptions together:
the Eulerian-number formula, direct enumeration of decorated
permutations by anti-exceedance count, and Le-diagram enumeration by
shape.  The boundary conventions A(0,0) = 1 and A(k,0) = 0 for k >= 1
are pinned by the requirement that the formula reproduce the table
(e.g. row n = 2 is 1, 3, 1).
"""

from fractions import Fraction
from functools import lru_cache
from itertools import permutations as iter_permutations
from math import comb, factorial

from .exactmath import partitions_in_box
from .lediagram import le_count_poly, le_fills


@lru_cache(maxsize=None)
def eulerian(k, n):
    """Number of permutations of [n] with k-1 descents; A(0,0) = 1."""
    if k < 0 or n < 0:
        return 0
    if n == 0:
        return 1 if k == 0 else 0
    if k == 0:
        return 0
    # <n, m> = (n-m) <n-1, m-1> + (m+1) <n-1, m> with m = k-1

    @lru_cache(maxsize=None)
    def ang(nn, m):
        if m < 0 or m >= nn:
            return 1 if (nn == 0 and m == 0) else 0
        if nn == 1:
            return 1 if m == 0 else 0
        return (nn - m) * ang(nn - 1, m - 1) + (m + 1) * ang(nn - 1, m)

    return ang(n, k - 1)


def eulerian_by_descents(k, n):
    """Brute-force oracle: count descent sets directly (n <= 8)."""
    if n == 0:
        return 1 if k == 0 else 0
    count = 0
    for w in iter_permutations(range(1, n + 1)):
        des = sum(1 for i in range(n - 1) if w[i] > w[i + 1])
        if des == k - 1:
            count += 1
    return count


def count_cells(k, n):
    """N_kn = sum over r of C(n,r) A_{k, n-r}."""
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got ({k}, {n})")
    return sum(comb(n, r) * eulerian(k, n - r) for r in range(n + 1))


def count_cells_by_permutations(k, n):
    """Direct enumeration of decorated permutations of type (k, n)."""
    total = 0
    for w in iter_permutations(range(1, n + 1)):
        ae = sum(1 for i in range(1, n + 1) if w.index(i) + 1 > i)
        fixed = sum(1 for i in range(1, n + 1) if w[i - 1] == i)
        whites = k - ae
        if 0 <= whites <= fixed:
            total += comb(fixed, whites)
    return total


def cell_poly(k, n):
    """Coefficients of N_kn(q) = sum over Le-diagrams of q^{|D|}.

    Ground truth by direct enumeration over shapes; degree is k(n-k).
    """
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got ({k}, {n})")
    out = [0] * (k * (n - k) + 1)
    for lam in partitions_in_box(k, n - k):
        for e, c in enumerate(le_count_poly(tuple(lam))):
            out[e] += c
    return tuple(out)


def total_cells(n):
    """N_n = n N_{n-1} + 1 with N_0 = 1; the total number of cells."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    value = 1
    for m in range(1, n + 1):
        value = m * value + 1
    return value


def count_table(nmax, q=False):
    """Rows n = 0..nmax of N_kn (or coefficient tuples of N_kn(q))."""
    rows = []
    for n in range(nmax + 1):
        if q:
            rows.append([cell_poly(k, n) for k in range(n + 1)])
        else:
            rows.append([count_cells(k, n) for k in range(n + 1)])
    return rows


def bruhat_interval_count(lam, k, n):
    """|{u in S_n : u <= w_lambda}| by the componentwise criterion.

    Brute force over S_n; guarded to n <= 9.
    """
    from .permutations import w_lambda
    if n > 9:
        raise ValueError("factorial enumeration guarded at n <= 9")
    w = w_lambda(lam, k, n)
    count = 0
    for u in iter_permutations(range(1, n + 1)):
        if all(u[m] <= w[m] for m in range(k)) and all(u[m] >= w[m] for m in range(k, n)):
            count += 1
    return count


def staircase_check(n):
    """Le-fills of the staircase (n, n-1, ..., 1) with empty corners.

    The count equals n!.
    """
    shape = tuple(range(n, 0, -1))
    count = 0
    for fill in le_fills(shape):
        if all(fill[r][-1] == 0 for r in range(n)):
            count += 1
    return count


def williams_printed_formula(k, n, q):
    """The printed closed form for N_kn(q), evaluated literally at q.

    The source text sums i = 1..k-1 with bracket arguments like [i-k]_q,
    which cannot be literally correct (the sum is empty for k = 1); this
    helper exists to document the discrepancy, not to compute.
    """
    q = Fraction(q)

    def bracket(m):
        if q == 1:
            return Fraction(m)
        return (1 - q ** m) / (1 - q)

    total = Fraction(0)
    for i in range(1, k):
        term = (bracket(i - k) ** i) * (bracket(k - i + 1) ** (n - i))
        term -= (bracket(i - k + 1) ** i) * (bracket(k - i) ** (n - i))
        total += comb(n, i) * q ** (-(k - i) ** 2) * term
    return total


def poly_eval(coeffs, q):
    q = Fraction(q)
    return sum(Fraction(c) * q ** e for e, c in enumerate(coeffs))
