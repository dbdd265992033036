"""Division-free determinants and characteristic polynomials.

Matrices are plain lists of rows.  Entries may be field elements,
multivariate polynomials, or univariate polynomials over either; nothing
here divides, so results are valid in every characteristic.
"""

from __future__ import annotations

from .errors import DimensionMismatch, DimensionTooLarge
from .multipoly import MultiPoly
from .poly import Poly

MAX_SYMBOLIC = 5
MAX_NUMERIC = 12


def _check_square(M) -> int:
    n = len(M)
    if n == 0 or any(len(row) != n for row in M):
        raise DimensionMismatch("matrix must be square and nonempty")
    return n


def det(M):
    """Leibniz expansion with shared prefixes, keyed by the set of used columns.

    Costs ``n * 2**n`` ring products and never divides.
    """
    n = _check_square(M)
    dp = {}
    for j in range(n):
        if M[0][j]:
            dp[1 << j] = M[0][j]
    for i in range(1, n):
        nxt = {}
        for mask, val in dp.items():
            for j in range(n):
                bit = 1 << j
                if mask & bit or not M[i][j]:
                    continue
                term = val * M[i][j]
                # inversions added: used columns to the right of j
                if bin(mask >> (j + 1)).count("1") % 2:
                    term = -term
                key = mask | bit
                nxt[key] = nxt[key] + term if key in nxt else term
        dp = nxt
    full = (1 << n) - 1
    if full in dp:
        return dp[full]
    return _zero_like(M)


def _zero_like(M):
    for row in M:
        for x in row:
            return x * 0
    raise DimensionMismatch("empty matrix")


def _entry_ring(M):
    x = M[0][0]
    if isinstance(x, MultiPoly):
        return x.ring
    if isinstance(x, Poly):
        return x.ring
    return x.field


def charpoly(M) -> Poly:
    """``det(x I - M)`` as a polynomial over the entries' ring."""
    n = _check_square(M)
    symbolic = isinstance(M[0][0], (MultiPoly, Poly))
    if symbolic and n > MAX_SYMBOLIC:
        raise DimensionTooLarge(f"symbolic charpoly limited to n <= {MAX_SYMBOLIC}")
    if n > MAX_NUMERIC:
        raise DimensionTooLarge(f"charpoly limited to n <= {MAX_NUMERIC}")
    ring = _entry_ring(M)
    shifted = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = Poly(ring, [-M[i][j]])
            if i == j:
                entry = entry + Poly(ring, [ring.zero, ring.one])
            row.append(entry)
        shifted.append(row)
    return det(shifted)


def vandermonde_matrix(vals) -> list[list]:
    vals = list(vals)
    n = len(vals)
    rows = []
    for v in vals:
        row, acc = [], v ** 0
        for _ in range(n):
            row.append(acc)
            acc = acc * v
        rows.append(row)
    return rows


def vandermonde_det(vals):
    """Determinant of the matrix with rows ``(1, v, ..., v**(n-1))``."""
    vals = list(vals)
    if not vals:
        raise DimensionMismatch("empty sequence")
    return det(vandermonde_matrix(vals))


def matmul(A, B):
    n, m, k = len(A), len(B), len(B[0])
    if any(len(row) != m for row in A):
        raise DimensionMismatch("inner dimensions differ")
    out = []
    for i in range(n):
        row = []
        for j in range(k):
            acc = A[i][0] * B[0][j]
            for t in range(1, m):
                acc = acc + A[i][t] * B[t][j]
            row.append(acc)
        out.append(row)
    return out


def solve(M, b):
    """Solve ``M y = b`` over a field by Gauss-Jordan elimination."""
    n = _check_square(M)
    A = [list(row) + [b[i]] for i, row in enumerate(M)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        inv = A[col][col].inverse()
        A[col] = [x * inv for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                c = A[r][col]
                A[r] = [x - c * y for x, y in zip(A[r], A[col])]
    return [A[i][n] for i in range(n)]
