"""Exact linear algebra over the rationals.

Matrices are lists of lists of Fraction.  Everything here is plain
Gaussian elimination; with exact rationals there are no tolerance
decisions anywhere.
"""

from fractions import Fraction


def zeros(rows, cols):
    return [[Fraction(0)] * cols for _ in range(rows)]


def rref(matrix):
    """Reduced row echelon form.  Returns (rref_rows, pivot_columns)."""
    m = [[Fraction(x) for x in row] for row in matrix]
    if not m:
        return [], []
    rows, cols = len(m), len(m[0])
    pivots = []
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        pv = m[r][c]
        m[r] = [x / pv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m, pivots


def rank(matrix):
    return len(rref(matrix)[1])


def nullspace(matrix, cols=None):
    """Basis of the right nullspace as a list of column vectors."""
    if not matrix:
        if cols is None:
            raise ValueError("empty matrix needs an explicit column count")
        return [[Fraction(1) if i == j else Fraction(0) for i in range(cols)] for j in range(cols)]
    m, pivots = rref(matrix)
    ncols = len(matrix[0])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -m[r][fc]
        basis.append(v)
    return basis


def solve(matrix, rhs):
    """One solution of matrix @ x = rhs, or None if inconsistent."""
    if not matrix:
        return None if any(b != 0 for b in rhs) else []
    ncols = len(matrix[0])
    aug = [row + [b] for row, b in zip(matrix, rhs)]
    m, pivots = rref(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = m[r][ncols]
    return x


def row_space_contains(rows, vector):
    """True iff vector lies in the span of the given row vectors."""
    if all(x == 0 for x in vector):
        return True
    if not rows:
        return False
    return rank(rows) == rank(rows + [vector])


def same_row_space(rows_a, rows_b):
    ra = rank(rows_a) if rows_a else 0
    rb = rank(rows_b) if rows_b else 0
    if ra != rb:
        return False
    return rank(rows_a + rows_b) == ra if (rows_a or rows_b) else True


def matmul(a, b):
    if not a or not b:
        return []
    rows, inner, cols = len(a), len(b), len(b[0])
    out = zeros(rows, cols)
    for i in range(rows):
        for k in range(inner):
            aik = a[i][k]
            if aik == 0:
                continue
            for j in range(cols):
                out[i][j] += aik * b[k][j]
    return out


def matvec(a, v):
    return [sum((row[j] * v[j] for j in range(len(v))), Fraction(0)) for row in a]


def identity(n):
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def invert(matrix):
    """Inverse of a square matrix; raises ValueError if singular."""
    n = len(matrix)
    aug = [[Fraction(x) for x in row] + ident_row for row, ident_row in zip(matrix, identity(n))]
    m, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in m[:n]]


def determinant(matrix):
    n = len(matrix)
    m = [[Fraction(x) for x in row] for row in matrix]
    det = Fraction(1)
    for c in range(n):
        pivot_row = None
        for i in range(c, n):
            if m[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            return Fraction(0)
        if pivot_row != c:
            m[c], m[pivot_row] = m[pivot_row], m[c]
            det = -det
        det *= m[c][c]
        inv = 1 / m[c][c]
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] * inv
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det
