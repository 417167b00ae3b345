"""Exact linear algebra over Q.

Matrices are lists of rows.  Rank and nullspace use fraction-free (Bareiss)
elimination on integer-scaled rows; complex problems are split into real and
imaginary parts by the callers before reaching this module.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Hashable, Iterable, Sequence

Matrix = list[list[Fraction]]
Vector = list[Fraction]


def zeros(rows: int, cols: int) -> Matrix:
    return [[Fraction(0)] * cols for _ in range(rows)]


def identity(n: int) -> Matrix:
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def transpose(M: Matrix) -> Matrix:
    return [list(col) for col in zip(*M)]


def matmul(A: Matrix, B: Matrix) -> Matrix:
    # row-by-row accumulation skips zero entries; symmetry fields are sparse
    width = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [Fraction(0)] * width
        for a, brow in zip(row, B):
            if a:
                for j, b in enumerate(brow):
                    if b:
                        acc[j] += a * b
        out.append(acc)
    return out


def matvec(A: Matrix, v: Sequence) -> Vector:
    return [sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in A]


def is_symmetric(M: Matrix) -> bool:
    n = len(M)
    return all(len(r) == n for r in M) and all(M[i][j] == M[j][i] for i in range(n) for j in range(i))


def to_fraction_matrix(M) -> Matrix:
    return [[Fraction(x) for x in row] for row in M]


def _integer_rows(M: Matrix) -> list[list[int]]:
    rows = []
    for row in M:
        den = 1
        for x in row:
            den = lcm(den, Fraction(x).denominator)
        rows.append([int(Fraction(x) * den) for x in row])
    return rows


def bareiss_echelon(M: Matrix) -> tuple[list[list[int]], list[int]]:
    """Fraction-free row echelon form of ``M``.

    Returns the integer echelon rows (only the nonzero ones) and the list of
    pivot columns.
    """
    A = _integer_rows(M)
    if not A:
        return [], []
    nrows, ncols = len(A), len(A[0])
    prev = 1
    r = 0
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        best = None
        for i in range(r, nrows):
            v = A[i][c]
            if v and (best is None or abs(v) < best):
                piv, best = i, abs(v)
        if piv is None:
            continue
        if piv != r:
            A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        row_r = A[r]
        for i in range(r + 1, nrows):
            row_i = A[i]
            f = row_i[c]
            if f:
                for j in range(c + 1, ncols):
                    row_i[j] = (p * row_i[j] - f * row_r[j]) // prev
                row_i[c] = 0
            elif p != prev:
                for j in range(c + 1, ncols):
                    if row_i[j]:
                        row_i[j] = (p * row_i[j]) // prev
        prev = p
        pivots.append(c)
        r += 1
    return A[:r], pivots


def rank(M: Matrix) -> int:
    if not M or not M[0]:
        return 0
    return len(bareiss_echelon(M)[1])


def primitive(v: Sequence[Fraction]) -> Vector:
    """Scale a rational vector to a primitive integer vector (content 1)."""
    den = 1
    for x in v:
        den = lcm(den, Fraction(x).denominator)
    ints = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return [Fraction(0)] * len(v)
    first = next(x for x in ints if x)
    if first < 0:
        g = -g
    return [Fraction(x // g) for x in ints]


def nullspace(M: Matrix, ncols: int | None = None) -> list[Vector]:
    """Basis of ``{v : M v = 0}`` made of primitive integer vectors."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    if not M:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    E, pivots = bareiss_echelon(M)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for r in range(len(pivots) - 1, -1, -1):
            c = pivots[r]
            row = E[r]
            s = sum((row[j] * x[j] for j in range(c + 1, ncols) if row[j]), Fraction(0))
            x[c] = -s / row[c]
        basis.append(primitive(x))
    return basis


def solve(M: Matrix, rhs: Sequence) -> Vector | None:
    """One solution of ``M x = rhs`` or None when inconsistent."""
    ncols = len(M[0]) if M else 0
    aug = [list(row) + [-Fraction(b)] for row, b in zip(M, rhs)]
    E, pivots = bareiss_echelon(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * (ncols + 1)
    x[ncols] = Fraction(1)
    for r in range(len(pivots) - 1, -1, -1):
        c = pivots[r]
        row = E[r]
        s = sum((row[j] * x[j] for j in range(c + 1, ncols + 1) if row[j]), Fraction(0))
        x[c] = -s / row[c]
    return x[:ncols]


def congruence_diagonalize(Q: Matrix) -> tuple[Matrix, Matrix, tuple[int, int]]:
    """Return ``(B, D, (p, q))`` with ``B^T Q B = D`` diagonal.

    ``p``/``q`` count positive/negative diagonal entries of ``D``.
    """
    if not is_symmetric(Q):
        raise ValueError("congruence diagonalization needs a symmetric matrix")
    n = len(Q)
    A = to_fraction_matrix(Q)
    B = identity(n)

    def add_multiple(src, dst, f):
        # column/row op: e_dst += f * e_src applied as a congruence
        for i in range(n):
            A[i][dst] += f * A[i][src]
        for j in range(n):
            A[dst][j] += f * A[src][j]
        for i in range(n):
            B[i][dst] += f * B[i][src]

    def swap(a, b):
        for row in A:
            row[a], row[b] = row[b], row[a]
        A[a], A[b] = A[b], A[a]
        for row in B:
            row[a], row[b] = row[b], row[a]

    for k in range(n):
        if A[k][k] == 0:
            j = next((j for j in range(k + 1, n) if A[j][j] != 0), None)
            if j is not None:
                swap(k, j)
            else:
                j = next((j for j in range(k + 1, n) if A[k][j] != 0), None)
                if j is None:
                    continue
                # all remaining diagonal entries vanish, so this yields 2*A[k][j]
                add_multiple(j, k, Fraction(1))
        pivot = A[k][k]
        for i in range(k + 1, n):
            if A[k][i]:
                add_multiple(k, i, -A[k][i] / pivot)
    D = [[A[i][j] if i == j else Fraction(0) for j in range(n)] for i in range(n)]
    p = sum(1 for i in range(n) if D[i][i] > 0)
    q = sum(1 for i in range(n) if D[i][i] < 0)
    return B, D, (p, q)


def inverse(M: Matrix) -> Matrix:
    n = len(M)
    A = [list(map(Fraction, row)) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(M)]
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for r in range(n):
            if r != c and A[r][c]:
                f = A[r][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return [row[n:] for row in A]


def determinant(M: Matrix) -> Fraction:
    n = len(M)
    A = [list(map(Fraction, row)) for row in M]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if A[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            det = -det
        det *= A[c][c]
        for r in range(c + 1, n):
            if A[r][c]:
                f = A[r][c] / A[c][c]
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return det


class SparseSpan:
    """Span of sparse vectors (``{key: Fraction}``) with coordinate recovery.

    Keeps a reduced echelon basis together with the combination of the input
    vectors that produced each row, so ``coords`` returns coefficients with
    respect to the vectors passed to ``add``.
    """

    def __init__(self, vectors: Iterable[dict] = ()):
        self.rows: list[tuple[Hashable, dict, dict]] = []  # (pivot, row, combo)
        self.count = 0
        self.independent = True
        for v in vectors:
            self.add(v)

    def _reduce(self, v: dict, combo: dict) -> tuple[dict, dict]:
        v = dict(v)
        for pivot, row, rcombo in self.rows:
            f = v.get(pivot)
            if f:
                for k, x in row.items():
                    nv = v.get(k, 0) - f * x
                    if nv:
                        v[k] = nv
                    else:
                        v.pop(k, None)
                for k, x in rcombo.items():
                    nc = combo.get(k, 0) - f * x
                    if nc:
                        combo[k] = nc
                    else:
                        combo.pop(k, None)
        return v, combo

    def add(self, v: dict) -> bool:
        """Add ``v``; returns False (and records dependence) if already in the span."""
        idx = self.count
        self.count += 1
        red, combo = self._reduce(v, {idx: Fraction(1)})
        if not red:
            self.independent = False
            return False
        pivot = min(red, key=_sort_key)
        p = red[pivot]
        row = {k: x / p for k, x in red.items()}
        combo = {k: x / p for k, x in combo.items()}
        # keep the basis fully reduced
        new_rows = []
        for piv2, row2, combo2 in self.rows:
            f = row2.get(pivot)
            if f:
                row2 = dict(row2)
                combo2 = dict(combo2)
                for k, x in row.items():
                    nv = row2.get(k, 0) - f * x
                    if nv:
                        row2[k] = nv
                    else:
                        row2.pop(k, None)
                for k, x in combo.items():
                    nc = combo2.get(k, 0) - f * x
                    if nc:
                        combo2[k] = nc
                    else:
                        combo2.pop(k, None)
            new_rows.append((piv2, row2, combo2))
        new_rows.append((pivot, row, combo))
        self.rows = new_rows
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)

    def contains(self, v: dict) -> bool:
        red, _ = self._reduce(v, {})
        return not red

    def coords(self, v: dict) -> dict | None:
        """Coefficients ``c`` with ``v = sum c[i] * input_i``, or None if outside the span."""
        red, combo = self._reduce(v, {})
        if red:
            return None
        return {k: -x for k, x in combo.items()}


def _sort_key(k):
    return repr(k)
