"""Exact linear algebra over Q and Z: Gauss, column HNF, Smith normal form.

Matrices are lists of rows. Sizes in this package stay at or below 16x~256,
so plain Fraction Gaussian elimination and textbook HNF/SNF are adequate.
"""

from fractions import Fraction


def _xgcd(a, b):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def identity_matrix(n, one=1):
    return [[one if i == j else one * 0 for j in range(n)] for i in range(n)]


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    assert len(A[0]) == k
    Bt = list(zip(*B))
    return [[sum(ai * bj for ai, bj in zip(row, col)) for col in Bt] for row in A]


def mat_vec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def mat_frac(A):
    return [[Fraction(x) for x in row] for row in A]


def transpose(A):
    return [list(row) for row in zip(*A)]


def det_fraction(A):
    """Determinant by fraction Gaussian elimination."""
    n = len(A)
    M = [list(map(Fraction, row)) for row in A]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        inv = 1 / M[c][c]
        for r in range(c + 1, n):
            if M[r][c] != 0:
                f = M[r][c] * inv
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det


def solve_fraction(A, b):
    """Solve A x = b for square invertible A over Q. Raises ValueError if singular."""
    n = len(A)
    M = [list(map(Fraction, row)) + [Fraction(bv)] for row, bv in zip(A, b)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        inv = 1 / M[c][c]
        M[c] = [x * inv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [M[r][n] for r in range(n)]


def solve_general(A, b):
    """Any rational solution x of A x = b (A is n x m), or None if inconsistent."""
    n, m = len(A), len(A[0])
    M = [list(map(Fraction, row)) + [Fraction(bv)] for row, bv in zip(A, b)]
    pivots = []
    row = 0
    for c in range(m):
        piv = next((r for r in range(row, n) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = 1 / M[row][c]
        M[row] = [x * inv for x in M[row]]
        for r in range(n):
            if r != row and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[row])]
        pivots.append(c)
        row += 1
        if row == n:
            break
    for r in range(row, n):
        if M[r][m] != 0:
            return None
    x = [Fraction(0)] * m
    for r, c in enumerate(pivots):
        x[c] = M[r][m]
    return x


def mat_inverse_fraction(A):
    n = len(A)
    cols = [solve_fraction(A, [1 if i == j else 0 for i in range(n)]) for j in range(n)]
    return transpose(cols)


def right_kernel_fraction(A):
    """Basis of {x : A x = 0} over Q."""
    n, m = len(A), len(A[0])
    M = [list(map(Fraction, row)) for row in A]
    pivots = []
    row = 0
    for c in range(m):
        piv = next((r for r in range(row, n) if M[r][c] != 0), None)
        if piv is None:
            continue
        M[row], M[piv] = M[piv], M[row]
        inv = 1 / M[row][c]
        M[row] = [x * inv for x in M[row]]
        for r in range(n):
            if r != row and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[row])]
        pivots.append(c)
        row += 1
        if row == n:
            break
    free = [c for c in range(m) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * m
        v[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            v[pc] = -M[r][fc]
        basis.append(v)
    return basis


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _addmul_col(M, dst, src, q):
    if q == 0:
        return
    for row in M:
        row[dst] += q * row[src]


def _neg_col(M, j):
    for row in M:
        row[j] = -row[j]


def hnf_columns(A):
    """Column HNF of an integer matrix: returns the n x r echelon matrix.

    Columns generate the same lattice as the columns of A. The result is
    column-permuted upper triangular with positive pivots and entries to the
    right of each pivot reduced into [0, pivot). For a full-rank square
    lattice this is the canonical upper-triangular positive-diagonal form.
    """
    H, _ = hnf_with_transform(A, want_transform=False)
    return H


def hnf_with_transform(A, want_transform=True):
    """Column HNF with unimodular U such that (A U) = [zero-cols | H].

    Returns (H, U) where H keeps only the nonzero echelon columns. If
    want_transform is False, U is None.
    """
    n = len(A)
    m = len(A[0]) if n else 0
    M = [list(map(int, row)) for row in A]
    U = identity_matrix(m) if want_transform else None

    def colop_addmul(dst, src, q):
        _addmul_col(M, dst, src, q)
        if U is not None:
            _addmul_col(U, dst, src, q)

    def colop_swap(i, j):
        _swap_cols(M, i, j)
        if U is not None:
            _swap_cols(U, i, j)

    def colop_neg(j):
        _neg_col(M, j)
        if U is not None:
            _neg_col(U, j)

    def colop_gcd(piv, j, x, y, mv, u):
        # (col_piv, col_j) <- (x*col_piv + y*col_j, u*col_j + mv*col_piv)
        for mat in (M, U) if U is not None else (M,):
            for row in mat:
                a, b = row[piv], row[j]
                row[piv] = x * a + y * b
                row[j] = mv * a + u * b

    # Eliminate bottom-up; pivot columns accumulate at the right end.
    last = m  # columns >= last are finished pivots
    for i in range(n - 1, -1, -1):
        nz = [j for j in range(last) if M[i][j] != 0]
        if not nz:
            continue
        piv = min(nz, key=lambda j: abs(M[i][j]))
        for j in nz:
            if j == piv:
                continue
            a, b = M[i][piv], M[i][j]
            if b % a == 0:
                colop_addmul(j, piv, -(b // a))
            else:
                g, x, y = _xgcd(a, b)
                colop_gcd(piv, j, x, y, -(b // g), a // g)
        if M[i][piv] < 0:
            colop_neg(piv)
        colop_swap(piv, last - 1)
        last -= 1
    # Reduce entries to the right of each pivot (pivot = bottom-most nonzero).
    pivot_rows = {}
    for j in range(last, m):
        i = next(r for r in range(n - 1, -1, -1) if M[r][j] != 0)
        pivot_rows[j] = i
    for j in sorted(pivot_rows, key=lambda c: pivot_rows[c], reverse=True):
        i = pivot_rows[j]
        for k in range(j + 1, m):
            q = M[i][k] // M[i][j]
            colop_addmul(k, j, -q)
    H = [row[last:] for row in M]
    return H, U


def snf_with_transform(A):
    """Smith normal form: returns (D, U, V) with U A V = D, U and V unimodular."""
    n = len(A)
    m = len(A[0]) if n else 0
    M = [list(map(int, row)) for row in A]
    U = identity_matrix(n)
    V = identity_matrix(m)

    def row_addmul(dst, src, q):
        M[dst] = [a + q * b for a, b in zip(M[dst], M[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        U[i], U[j] = U[j], U[i]

    def row_neg(i):
        M[i] = [-a for a in M[i]]
        U[i] = [-a for a in U[i]]

    def col_addmul(dst, src, q):
        _addmul_col(M, dst, src, q)
        _addmul_col(V, dst, src, q)

    def col_swap(i, j):
        _swap_cols(M, i, j)
        _swap_cols(V, i, j)

    k = 0
    while k < min(n, m):
        piv = None
        for i in range(k, n):
            for j in range(k, m):
                if M[i][j] != 0 and (piv is None or abs(M[i][j]) < abs(M[piv[0]][piv[1]])):
                    piv = (i, j)
        if piv is None:
            break
        row_swap(k, piv[0])
        col_swap(k, piv[1])
        while True:
            dirty = False
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    q = M[i][k] // M[k][k]
                    row_addmul(i, k, -q)
                    if M[i][k] != 0:
                        row_swap(i, k)
                        dirty = True
            for j in range(k + 1, m):
                if M[k][j] != 0:
                    q = M[k][j] // M[k][k]
                    col_addmul(j, k, -q)
                    if M[k][j] != 0:
                        col_swap(j, k)
                        dirty = True
            if not dirty:
                break
        # pivot must divide every remaining entry; if not, fold the bad row in
        bad = None
        for i in range(k + 1, n):
            for j in range(k + 1, m):
                if M[i][j] % M[k][k] != 0:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            row_addmul(k, bad, 1)
            continue
        if M[k][k] < 0:
            row_neg(k)
        k += 1
    D = M
    return D, U, V
