"""Exact linear algebra over Q and Z: elimination, kernels, HNF, saturation.

All matrices are plain lists of lists holding ints or fractions.Fraction;
everything here is allocation-local and side-effect free.
"""

from fractions import Fraction
from math import gcd


def to_fraction_matrix(rows):
    return [[Fraction(x) for x in row] for row in rows]


def identity(n):
    return [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    assert len(A[0]) == k, "shape mismatch"
    return [[sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m)]
            for i in range(n)]


def mat_vec(A, v):
    assert len(A[0]) == len(v), "shape mismatch"
    return [sum(row[j] * v[j] for j in range(len(v))) for row in A]


def transpose(A):
    return [list(col) for col in zip(*A)]


def rref(M):
    """Reduced row echelon form. Returns (R, pivot_columns)."""
    R = [[Fraction(x) for x in row] for row in M]
    rows = len(R)
    cols = len(R[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if R[i][c] != 0), None)
        if pivot is None:
            continue
        R[r], R[pivot] = R[pivot], R[r]
        inv = R[r][c]
        R[r] = [x / inv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return R, pivots


def rank(M):
    if not M or not M[0]:
        return 0
    return len(rref(M)[1])


def rational_kernel(M):
    """Basis of {x : M x = 0} as a list of Fraction vectors."""
    if not M:
        return []
    cols = len(M[0])
    R, pivots = rref(M)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * cols
        v[f] = Fraction(1)
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def solve_exact(A, b):
    """One solution of A x = b, or None if inconsistent."""
    aug = [list(map(Fraction, row)) + [Fraction(bi)] for row, bi in zip(A, b)]
    R, pivots = rref(aug)
    cols = len(A[0])
    if cols in pivots:
        return None
    x = [Fraction(0)] * cols
    for i, p in enumerate(pivots):
        x[p] = R[i][cols]
    return x


def solve_with_integer_coefficients(basis_rows, target):
    """Integer coefficients c with sum_i c_i basis_rows[i] = target, else None."""
    cols = transpose(basis_rows)
    sol = solve_exact(cols, target)
    if sol is None:
        return None
    if all(Fraction(x).denominator == 1 for x in sol):
        return sol
    return None


def invert(M):
    n = len(M)
    aug = [list(map(Fraction, M[i])) + identity(n)[i] for i in range(n)]
    R, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in R]


def det_exact(M):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    sign = 1
    prev = Fraction(1)
    for k in range(n - 1):
        if A[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if A[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            A[k], A[swap] = A[swap], A[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def lcm(a, b):
    return abs(a * b) // gcd(a, b) if a and b else abs(a or b)


def common_denominator(vec):
    d = 1
    for x in vec:
        d = lcm(d, Fraction(x).denominator)
    return d


def primitive_integer_vector(vec):
    """Scale a rational vector to a primitive integer vector (gcd 1)."""
    d = common_denominator(vec)
    ints = [int(Fraction(x) * d) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def hnf_transform(A):
    """Column-style Hermite form: returns (H, U) with A·U = H, U unimodular.

    H has its nonzero columns first, each with a positive pivot below the
    previous column's pivot row.
    """
    n = len(A)
    m = len(A[0]) if n else 0
    H = [[int(x) for x in row] for row in A]
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def col_op(j, k, a, b, c, d):
        # (col_j, col_k) <- (a col_j + b col_k, c col_j + d col_k)
        for M, rows in ((H, n), (U, m)):
            for i in range(rows):
                x, y = M[i][j], M[i][k]
                M[i][j] = a * x + b * y
                M[i][k] = c * x + d * y

    row = 0
    col = 0
    while row < n and col < m:
        pivot = next((j for j in range(col, m) if H[row][j] != 0), None)
        if pivot is None:
            row += 1
            continue
        if pivot != col:
            for M in (H, U):
                for r in M:
                    r[col], r[pivot] = r[pivot], r[col]
        for j in range(col + 1, m):
            if H[row][j] == 0:
                continue
            a, b = H[row][col], H[row][j]
            g = gcd(a, b)
            x, y = _xgcd(a, b)
            col_op(col, j, x, -b // g, y, a // g)
        if H[row][col] < 0:
            for M in (H, U):
                for r in M:
                    r[col] = -r[col]
        row += 1
        col += 1
    return H, U


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return x0, y0


def integer_kernel(A):
    """Basis of {x in Z^m : A x = 0}; kernels of integer maps are saturated."""
    if not A:
        return []
    m = len(A[0])
    H, U = hnf_transform(A)
    basis = []
    for j in range(m):
        if all(H[i][j] == 0 for i in range(len(H))):
            basis.append([U[i][j] for i in range(m)])
    return basis


def saturate(rows, n):
    """Integer basis of span_Q(rows) ∩ Z^n.

    rows are rational vectors of length n spanning a subspace S; the result
    is a basis of the saturated lattice S ∩ Z^n, computed as the integer
    kernel of an integer matrix whose rows span the orthogonal complement.
    """
    span = [r for r in rows if any(Fraction(x) != 0 for x in r)]
    if not span:
        return []
    comp = rational_kernel(span)
    if not comp:
        return [list(row) for row in identity_int(n)]
    K = [primitive_integer_vector(v) for v in comp]
    return integer_kernel(K)


def identity_int(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]
