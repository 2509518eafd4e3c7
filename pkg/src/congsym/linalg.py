"""Dense exact linear algebra over the rationals and number fields.

Matrices are lists of row lists acting on column vectors; vectors are lists.
Entries may be backend rationals or NumberFieldElem; every routine is generic
over a field given a multiplicative unit `one`.
"""

from .backend import rat, XorShift64
from .polys import UniPoly

ONE = rat(1)


def identity_matrix(n, one=ONE):
    return [[one if i == j else one * 0 for j in range(n)] for i in range(n)]


def zero_matrix(n, m, one=ONE):
    z = one * 0
    return [[z] * m for _ in range(n)]


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if k else 0
    out = []
    for i in range(n):
        row_a = a[i]
        row = []
        for j in range(m):
            s = row_a[0] * b[0][j]
            for t in range(1, k):
                if row_a[t] != 0:
                    s = s + row_a[t] * b[t][j]
            row.append(s)
        out.append(row)
    return out


def mat_vec(a, v):
    return [sum_prod(row, v) for row in a]


def sum_prod(row, v):
    s = row[0] * v[0]
    for t in range(1, len(v)):
        if row[t] != 0 and v[t] != 0:
            s = s + row[t] * v[t]
    return s


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(a, c):
    return [[x * c for x in row] for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def mat_eq(a, b):
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def is_zero_matrix(a):
    return all(all(x == 0 for x in row) for row in a)


def rref(rows, one=ONE):
    """In-place-free reduced row echelon form; returns (rows, pivot_cols)."""
    m = [[one * x for x in row] for row in rows]
    if not m:
        return [], []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, len(m)):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pv = m[r][c]
        if pv != one:
            m[r] = [x / pv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rref_and_kernel(rows, one=ONE):
    """Reduced form plus a basis of the right kernel {x : A x = 0}."""
    red, pivots = rref(rows, one)
    ncols = len(rows[0]) if rows else 0
    zero = one * 0
    kernel = []
    pivot_set = set(pivots)
    for j in range(ncols):
        if j in pivot_set:
            continue
        v = [zero] * ncols
        v[j] = one
        for r, c in enumerate(pivots):
            v[c] = -red[r][j]
        kernel.append(v)
    return red, kernel


def kernel(rows, one=ONE):
    return rref_and_kernel(rows, one)[1]


def kernel_of_rows(rows, one=ONE):
    """Basis of {c : sum_i c_i * rows[i] = 0} (left kernel)."""
    return kernel(transpose(rows), one) if rows else []


def row_space_basis(rows, one=ONE):
    red, pivots = rref(rows, one)
    return red[: len(pivots)]


def mat_rank(rows, one=ONE):
    return len(rref(rows, one)[1])


def solve_columns(basis, targets, one=ONE):
    """Express each target vector in terms of the basis vectors.

    basis and targets are lists of vectors of common length n.  Returns a list
    of coordinate vectors; raises ValueError if some target is outside the span.
    """
    d, t = len(basis), len(targets)
    if d == 0:
        if any(any(x != 0 for x in v) for v in targets):
            raise ValueError("target outside span of empty basis")
        return [[] for _ in range(t)]
    n = len(basis[0])
    aug = [[one * basis[j][i] for j in range(d)] + [one * targets[k][i] for k in range(t)]
           for i in range(n)]
    red, pivots = rref(aug, one)
    if any(p >= d for p in pivots):
        raise ValueError("target vector outside span of basis")
    zero = one * 0
    coords = [[zero] * d for _ in range(t)]
    for r, c in enumerate(pivots):
        for k in range(t):
            coords[k][c] = red[r][d + k]
    return coords


def restrict_to_invariant_subspace(m, basis, one=ONE):
    """Matrix of m in the coordinates of an m-invariant basis."""
    images = [mat_vec(m, b) for b in basis]
    coords = solve_columns(basis, images, one)
    # coords[j] are the coordinates of m*basis[j]; columns of the restriction
    d = len(basis)
    return [[coords[j][i] for j in range(d)] for i in range(d)]


def charpoly(m, one=ONE):
    """Characteristic polynomial det(xI - m) via Hessenberg reduction."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("charpoly requires a square matrix")
    if n == 0:
        return UniPoly([1])
    zero = one * 0
    h = [[one * x for x in row] for row in m]
    for j in range(n - 2):
        # ensure pivot at h[j+1][j]
        if h[j + 1][j] == 0:
            for i in range(j + 2, n):
                if h[i][j] != 0:
                    h[j + 1], h[i] = h[i], h[j + 1]
                    for row in h:
                        row[j + 1], row[i] = row[i], row[j + 1]
                    break
        if h[j + 1][j] == 0:
            continue
        pv = h[j + 1][j]
        for i in range(j + 2, n):
            if h[i][j] != 0:
                u = h[i][j] / pv
                h[i] = [x - u * y for x, y in zip(h[i], h[j + 1])]
                for row in h:
                    row[j + 1] = row[j + 1] + u * row[i]
    # recurrence on leading principal minors of xI - h
    polys = [[one]]  # p_0 = 1, coefficients low-to-high
    for k in range(1, n + 1):
        prev = polys[k - 1]
        # (x - h[k-1][k-1]) * p_{k-1}
        cur = [zero] + list(prev)
        d = h[k - 1][k - 1]
        for i in range(len(prev)):
            cur[i] = cur[i] - d * prev[i]
        t = one
        for i in range(k - 1, 0, -1):
            t = t * h[i][i - 1]
            c = h[i - 1][k - 1] * t
            if c != 0:
                pi = polys[i - 1]
                for s in range(len(pi)):
                    cur[s] = cur[s] - c * pi[s]
        polys.append(cur)
    return UniPoly(polys[n])


def mat_poly_eval(f, m, one=ONE):
    """Evaluate a UniPoly at a square matrix."""
    n = len(m)
    result = zero_matrix(n, n, one)
    for c in reversed(f.coeffs):
        result = mat_mul(result, m)
        for i in range(n):
            result[i][i] = result[i][i] + one * c
    return result


def seeded_random_combination(ops, seed=0):
    """Deterministic small-integer combination of matrices (xorshift64*)."""
    if not ops:
        raise ValueError("empty operator list")
    rng = XorShift64(seed)
    n = len(ops[0])
    out = zero_matrix(n, len(ops[0][0]) if n else 0, ONE)
    for op in ops:
        c = rng.randint(1, 9)
        out = mat_add(out, mat_scale(op, rat(c)))
    return out


def det_poly_matrix(m):
    """Determinant of a square matrix with UniPoly entries."""
    n = len(m)
    if n == 0:
        return UniPoly([1])
    if n == 1:
        return m[0][0]
    if n <= 8:
        det = UniPoly()
        for j in range(n):
            if m[0][j].is_zero():
                continue
            minor = [row[:j] + row[j + 1 :] for row in m[1:]]
            term = m[0][j] * det_poly_matrix(minor)
            det = det + term if j % 2 == 0 else det - term
        return det
    # Bareiss fraction-free elimination; divisions are exact in Q[x]
    a = [row[:] for row in m]
    sign = 1
    prev = UniPoly([1])
    for k in range(n - 1):
        if a[k][k].is_zero():
            for i in range(k + 1, n):
                if not a[i][k].is_zero():
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return UniPoly()
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = a[i][j] * a[k][k] - a[i][k] * a[k][j]
                a[i][j] = num // prev
            a[i][k] = UniPoly()
        prev = a[k][k]
    det = a[n - 1][n - 1]
    return det if sign == 1 else -det


def intersect_row_spaces(a_rows, b_rows, one=ONE):
    """Basis of span(a_rows) ∩ span(b_rows)."""
    if not a_rows or not b_rows:
        return []
    combos = kernel_of_rows([list(r) for r in a_rows] + [list(r) for r in b_rows], one)
    ra = len(a_rows)
    vecs = []
    for cd in combos:
        v = [one * 0] * len(a_rows[0])
        for i in range(ra):
            if cd[i] != 0:
                v = [x + cd[i] * y for x, y in zip(v, a_rows[i])]
        vecs.append(v)
    return row_space_basis(vecs, one)


def in_row_space(rows, v, one=ONE):
    try:
        coords_of_vectors_in_basis(rows, [v], one)
        return True
    except ValueError:
        return False


def coords_of_vectors_in_basis(basis, vectors, one=ONE):
    return solve_columns(basis, vectors, one)
