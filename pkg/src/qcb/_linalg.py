"""Exact dense linear algebra over a field given by duck typing.

Entries need +, -, *, /, bool() (nonzero test) and an additive identity
passed as `zero` / multiplicative identity `one`.  Works for RationalFn
and fractions.Fraction alike.  Matrices are lists of row lists and are
never mutated.
"""


def identity_matrix(n, zero, one):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def mat_mul(A, B, zero):
    n, m = len(A), len(B[0]) if B else 0
    k = len(B)
    out = []
    for i in range(n):
        row = []
        Ai = A[i]
        for j in range(m):
            s = zero
            for t in range(k):
                if Ai[t]:
                    s = s + Ai[t] * B[t][j]
            row.append(s)
        out.append(row)
    return out


def mat_vec(A, x, zero):
    out = []
    for row in A:
        s = zero
        for a, b in zip(row, x):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def _rref(A, zero, one, rhs=None):
    """Row-reduce [A | rhs]; returns (R, rhs', pivot_cols, rank)."""
    M = [list(row) for row in A]
    R = [list(row) for row in rhs] if rhs is not None else None
    nrows = len(M)
    ncols = len(M[0]) if nrows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = None
        for i in range(r, nrows):
            if M[i][c]:
                p = i
                break
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        if R is not None:
            R[r], R[p] = R[p], R[r]
        inv = one / M[r][c]
        M[r] = [x * inv for x in M[r]]
        if R is not None:
            R[r] = [x * inv for x in R[r]]
        for i in range(nrows):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
                if R is not None:
                    R[i] = [a - f * b for a, b in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return M, R, pivots, r


def mat_rank(A, zero, one):
    if not A:
        return 0
    _, _, _, r = _rref(A, zero, one)
    return r


def mat_solve(A, b, zero, one):
    """One solution of A x = b (A need not be square); None if inconsistent.

    b may be a vector or a matrix of stacked column right-hand sides.
    Free variables are set to zero.
    """
    vec = b and not isinstance(b[0], list)
    rhs = [[x] for x in b] if vec else [list(r) for r in b]
    if not A:
        ok = all(not x for row in rhs for x in row)
        return ([] if vec else []) if ok else None
    ncols = len(A[0])
    M, R, pivots, rank = _rref(A, zero, one, rhs)
    width = len(rhs[0]) if rhs else 0
    for i in range(rank, len(M)):
        if any(R[i][j] for j in range(width)):
            return None
    X = [[zero] * width for _ in range(ncols)]
    for r, c in enumerate(pivots):
        X[c] = R[r]
    return [row[0] for row in X] if vec else X


def mat_inverse(A, zero, one):
    """Inverse of a square matrix; None if singular."""
    n = len(A)
    M, R, pivots, rank = _rref(A, zero, one, identity_matrix(n, zero, one))
    if rank != n:
        return None
    return R


def mat_nullspace(A, zero, one):
    """Basis of the right kernel of A, as a list of vectors."""
    if not A:
        return []
    ncols = len(A[0])
    M, _, pivots, rank = _rref(A, zero, one)
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    basis = []
    for f in free:
        x = [zero] * ncols
        x[f] = one
        for r, c in enumerate(pivots):
            x[c] = zero - M[r][f]
        basis.append(x)
    return basis


def bareiss_det(A):
    """Determinant of a square integer matrix, fraction-free."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if not M[k][k]:
            p = None
            for i in range(k + 1, n):
                if M[i][k]:
                    p = i
                    break
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def int_kernel(A, n=None):
    """Z-basis of {x in Z^n : Ax = 0} for an integer matrix A.

    The result is saturated (it is all integer solutions, not a finite
    index subgroup).  Pass n when A has no rows.
    """
    if not A:
        return [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    m, n = len(A), len(A[0])
    H = [list(row) for row in A]
    U = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def swap(M, a, b):
        for row in M:
            row[a], row[b] = row[b], row[a]

    def add(M, dst, src, q):
        for row in M:
            row[dst] += q * row[src]

    lead = 0
    for r in range(m):
        if lead >= n:
            break
        while True:
            nz = [j for j in range(lead, n) if H[r][j]]
            if not nz:
                break
            j0 = min(nz, key=lambda j: abs(H[r][j]))
            if j0 != lead:
                swap(H, lead, j0)
                swap(U, lead, j0)
            clean = True
            for j in range(lead + 1, n):
                if H[r][j]:
                    q = H[r][j] // H[r][lead]
                    if q:
                        add(H, j, lead, -q)
                        add(U, j, lead, -q)
                    if H[r][j]:
                        clean = False
            if clean:
                break
        if H[r][lead]:
            lead += 1
    return [[U[i][j] for i in range(n)] for j in range(lead, n)]


def smith_complement(C, n):
    """Basis of Z^n / rowspan(C) for a saturated integer row lattice.

    Returns rows completing C's rowspan to a basis of Z^n; raises
    ValueError if the rowspan is not saturated (some invariant factor
    exceeds 1).  C may be empty, in which case the identity is returned.
    """
    k = len(C)
    vinv = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    if k == 0:
        return vinv
    M = [list(row) for row in C]
    t = 0
    while t < k:
        if not any(M[i][j] for i in range(t, k) for j in range(t, n)):
            break
        while True:
            bi = bj = bv = None
            for i in range(t, k):
                for j in range(t, n):
                    if M[i][j] and (bv is None or abs(M[i][j]) < bv):
                        bi, bj, bv = i, j, abs(M[i][j])
            M[t], M[bi] = M[bi], M[t]
            if bj != t:
                for row in M:
                    row[t], row[bj] = row[bj], row[t]
                vinv[t], vinv[bj] = vinv[bj], vinv[t]
            a = M[t][t]
            clean = True
            for i in range(t + 1, k):
                q = M[i][t] // a
                if q:
                    for j in range(n):
                        M[i][j] -= q * M[t][j]
                if M[i][t]:
                    clean = False
            for j in range(t + 1, n):
                q = M[t][j] // a
                if q:
                    for i in range(k):
                        M[i][j] -= q * M[i][t]
                    for c in range(n):
                        vinv[t][c] += q * vinv[j][c]
                if M[t][j]:
                    clean = False
            if not clean:
                continue
            # the pivot must divide the rest of the block or the
            # diagonal will not be in invariant-factor form
            fix = None
            for i in range(t + 1, k):
                for j in range(t + 1, n):
                    if M[i][j] % a:
                        fix = i
                        break
                if fix is not None:
                    break
            if fix is None:
                break
            for j in range(n):
                M[t][j] += M[fix][j]
        if M[t][t] < 0:
            for i in range(k):
                M[i][t] = -M[i][t]
            for c in range(n):
                vinv[t][c] = -vinv[t][c]
        if M[t][t] != 1:
            raise ValueError("row lattice is not saturated")
        t += 1
    if t < k:
        raise ValueError("rows are not independent")
    return [vinv[i] for i in range(k, n)]
