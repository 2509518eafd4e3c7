"""Hecke operators, Heilbronn-Merel fast path, degeneracy maps, and the
old/new decomposition for induced congruence subgroups.

All operators act on the presentation built in spaces.py and are returned as
square matrices over the coefficient field, columns being the images of the
basis symbols.
"""

from math import gcd

from .backend import rat, inv_mod, divisors, factor_int
from . import linalg as la
from .groups import (mat_mod, mat_mul, mat_det, mat_inv_mod, imat_inv_det1,
                     imat_adjugate, lift_to_sl2, gamma_generators,
                     find_det_element, GroupTooLarge, AMBIENT_CAP,
                     close_group, gl2_elements, IDENT)
from .spaces import (sym_action, monomial, cusp_normalize, build_space)


# ------------------------------------------------------- integer matrix HNF

def row_hnf(M):
    """Row Hermite form of an integer matrix with positive determinant:
    the unique SL2(Z)-left-translate ((a, b), (0, d)) with a, d > 0 and
    0 <= b < d."""
    a, b, c, d = M
    assert a * d - b * c > 0
    while c != 0:
        if a == 0 or (c != 0 and abs(c) < abs(a)):
            a, b, c, d = c, d, -a, -b  # swap rows with a sign
            continue
        q = c // a
        c, d = c - q * a, d - q * b
    if a < 0:
        a, b, c, d = -a, -b, -c, -d
    b %= d
    return (a, b, 0, d)


def element_of_det(G, n):
    """Integer matrix of determinant n (coprime to the modulus) whose
    reduction lies in G."""
    N = G.N
    if N == 1:
        return (1, 0, 0, n)
    nm = n % N
    if gcd(nm, N) != 1:
        raise ValueError("determinant %d is not a unit mod %d" % (n, N))
    delta = find_det_element(G, nm)
    ninv = inv_mod(nm, N)
    gamma = lift_to_sl2(mat_mod((delta[0], delta[1] * ninv,
                                 delta[2], delta[3] * ninv), N), N)
    alpha = (gamma[0], gamma[1] * n, gamma[2], gamma[3] * n)
    assert mat_det(alpha) == n
    assert mat_mod(alpha, N) in G
    return alpha


# ------------------------------------------------------------ double cosets

def same_right_coset(Gamma, b1, b2):
    """Gamma b1 == Gamma b2 for integer matrices of equal determinant."""
    n = mat_det(b1)
    if mat_det(b2) != n:
        return False
    adj = imat_adjugate(b2)
    prod = mat_mul(b1, adj)
    if any(x % n for x in prod):
        return False
    g = tuple(x // n for x in prod)
    return mat_det(g) == 1 and Gamma.contains(g)


def _right_coset_key(Gamma, beta):
    """Hashable invariant of Gamma beta: the row Hermite form together with
    the Gamma-coset of the unimodular part."""
    h = row_hnf(beta)
    hinv_scaled = imat_adjugate(h)
    d = h[0] * h[3]
    u = mat_mul(beta, hinv_scaled)
    assert all(x % d == 0 for x in u)
    u = tuple(x // d for x in u)
    assert mat_det(u) == 1
    return h, Gamma.coset_index(u)


def double_coset_reps(Gamma, alpha):
    """Representatives of Gamma \\ Gamma alpha Gamma, by breadth-first
    search over right multiplication by generators of Gamma_G."""
    gens = gamma_generators(Gamma)
    gens = gens + [imat_inv_det1(g) for g in gens]
    seen = {}
    h, j = _right_coset_key(Gamma, alpha)
    seen[(h, j)] = mat_mul(Gamma.reps[j], h)
    frontier = [seen[(h, j)]]
    while frontier:
        nxt = []
        for b in frontier:
            for g in gens:
                c = mat_mul(b, g)
                key = _right_coset_key(Gamma, c)
                if key not in seen:
                    red = mat_mul(Gamma.reps[key[1]], key[0])
                    seen[key] = red
                    nxt.append(red)
        frontier = nxt
    return list(seen.values())


def hecke_double_coset(S, alpha):
    """Matrix of the dual Hecke operator of the double coset Gamma alpha
    Gamma on the space S (columns are images of basis symbols)."""
    if S.character is not None:
        raise NotImplementedError("double-coset operators with a character")
    reps = double_coset_reps(S.table, alpha)
    m = S.m
    cols = []
    for (w, i) in S.basis_tags:
        poly = monomial(m, w)
        vec = S.zero_vector()
        for r in reps:
            B = mat_mul(r, S.table.reps[i])
            img = sym_action(B, poly)
            a = cusp_normalize(B[1], B[3])
            b = cusp_normalize(B[0], B[2])
            acc = S.symbol_coords(img, a, b)
            vec = [x + y for x, y in zip(vec, acc)]
        cols.append(vec)
    return la.transpose(cols)


def hecke_tp(S, p, path="auto"):
    """Matrix of T_p for a prime p whose residue class is a determinant of
    G.  path is one of auto | naive | merel."""
    if path == "auto":
        path = "naive" if S.character is not None else "merel"
    if path == "merel":
        return hecke_tn_fast(S, p)
    alpha = element_of_det(S.G, p)
    return hecke_double_coset(S, alpha)


# ------------------------------------------------------ Heilbronn and Merel

class HeilbronnSet:
    """A family of integer matrices of determinant n with multiplicities."""

    def __init__(self, n, pairs):
        self.n = n
        self.pairs = pairs  # list of (multiplicity, matrix)

    def __len__(self):
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def heilbronn_merel_set(n):
    """The determinant-n family {(a, b; c, d) : a > b >= 0, d > c >= 0},
    each with multiplicity one."""
    pairs = []
    for a in range(1, n + 1):
        for b in range(a):
            q = a - b
            cmax = (n - 1) // q  # c(a - b) < n is forced by d > c
            for c in range(cmax + 1):
                num = n + b * c
                if num % a:
                    continue
                d = num // a
                if d > c:
                    pairs.append((1, (a, b, c, d)))
    return HeilbronnSet(n, pairs)


def col_hnf(M):
    """Column Hermite form: the unique right-SL2(Z)-translate
    ((a, 0), (c, d)) with a, d > 0 and 0 <= c < d."""
    a, b, c, d = row_hnf((M[0], M[2], M[1], M[3]))
    return (a, c, b, d)


def condition_cn_check(H):
    """Verify the universal-expansion condition: within each right
    SL2(Z)-class of determinant-n matrices, the weighted endpoint divisors
    sum to [oo] - [0]."""
    n = H.n
    sums = {}
    for u, M in H:
        key = col_hnf(M)
        bucket = sums.setdefault(key, {})
        for cusp, sign in ((cusp_normalize(M[0], M[2]), u),
                           (cusp_normalize(M[1], M[3]), -u)):
            bucket[cusp] = bucket.get(cusp, 0) + sign
    expected = sorted((a, 0, c, d) for d in divisors(n)
                      for a in [n // d] for c in range(d))
    if sorted(sums) != expected:
        return False
    target_keys = {(1, 0): 1, (0, 1): -1}
    for bucket in sums.values():
        cleaned = {c: v for c, v in bucket.items() if v != 0}
        if cleaned != target_keys:
            return False
    return True


def phi_map(S, A):
    """Coset index of the determinant-n matrix A (reduction in the
    determinant-n part of G) under the left-equivariant projection to
    Gamma \\ SL2(Z)."""
    N = S.table.N
    n = mat_det(A) % N if N > 1 else 1
    if N == 1:
        return 0
    ninv = inv_mod(n, N)
    delta = find_det_element(S.G, n)
    s = mat_mod(tuple(ninv * x for x in mat_mul(delta, mat_mod(A, N), N)), N)
    return S.table.coset_index_mod(s)


def hecke_tn_fast(S, n):
    """Matrix of T_n via the Heilbronn-Merel family and the coset
    projection.  Requires a trivial character.  If no element of G has
    determinant n mod N the operator is zero."""
    if S.character is not None:
        raise NotImplementedError("fast path requires a trivial character")
    N = S.table.N
    zero = la.zero_matrix(S.dim, S.dim, S.one)
    if N > 1:
        if gcd(n, N) != 1 or (n % N) not in S.G.det_image:
            return zero
    if n == 1:
        return la.identity_matrix(S.dim, S.one)
    H = heilbronn_merel_set(n)
    m = S.m
    stride = m + 1
    table = S.table
    if N > 1:
        ninv = inv_mod(n % N, N)
        delta = find_det_element(S.G, n % N)
        pre = mat_mod(tuple(ninv * x for x in delta), N)
    # polynomial action of each family member on each monomial; the family
    # acts through the adjugate (matching the double-coset operator)
    poly_of = None
    if m > 0:
        poly_of = [[sym_action(imat_adjugate(M), monomial(m, w))
                    for w in range(stride)]
                   for _, M in H]
    cols = []
    for (w, i) in S.basis_tags:
        rep = table.reps_mod[i]
        counts = {}
        for t, (u, M) in enumerate(H):
            if N > 1:
                A = mat_mul(rep, mat_mod(M, N), N)
                j = table.coset_index_mod(mat_mul(pre, A, N))
            else:
                j = 0
            if m == 0:
                counts[j * stride] = counts.get(j * stride, 0) + u
            else:
                for w2, c in enumerate(poly_of[t][w]):
                    if c != 0:
                        key = j * stride + w2
                        counts[key] = counts.get(key, 0) + u * c
        vec = S.zero_vector()
        for key, cnt in counts.items():
            for pos, cv in S.reduce_cols[key].items():
                vec[pos] = vec[pos] + cnt * cv
        cols.append(vec)
    return la.transpose(cols)


# ---------------------------------------------------------- diamond, sigma

def diamond_operator(S, s_mod):
    """Operator [v, g] -> [v, gamma_s g] for s in SL2(Z/N) normalizing the
    determinant-one part of G."""
    gamma_s = lift_to_sl2(s_mod, S.table.N)
    m = S.m
    cols = []
    for (w, i) in S.basis_tags:
        g = mat_mul(gamma_s, S.table.reps[i])
        cols.append(S.manin_coords(monomial(m, w), g))
    return la.transpose(cols)


def sigma_class(S, p):
    """The SL2(Z/N) class p * delta_p^-2 entering the Euler factor at a
    good prime p."""
    N = S.table.N
    if N == 1:
        return (1, 0, 0, 1)
    delta = find_det_element(S.G, p % N)
    di = mat_inv_mod(delta, N)
    d2 = mat_mul(di, di, N)
    return mat_mod(tuple(p * x for x in d2), N)


# ----------------------------------------------------------- degeneracy maps

class DegeneracyData:
    """A rational matrix t with t^-1 Gamma_high t contained in Gamma_low,
    inducing maps between the two symbol spaces."""

    def __init__(self, t_int, high, low):
        self.t = t_int          # integer primitive matrix
        self.high = high        # CongruenceSubgroup (smaller group G)
        self.low = low          # CongruenceSubgroup (larger group H)

    def __repr__(self):
        return "DegeneracyData(t=%r)" % (self.t,)


def _rational_inverse(t):
    n = mat_det(t)
    adj = imat_adjugate(t)
    return tuple(rat(x, n) for x in adj)


def _conjugate_into(t, Gamma_high, Gamma_low):
    """Does t^-1 gamma t lie in Gamma_low for every generator gamma of
    Gamma_high?"""
    n = mat_det(t)
    adj = imat_adjugate(t)
    for g in gamma_generators(Gamma_high):
        w = mat_mul(mat_mul(adj, g), t)
        if any(x % n for x in w):
            return False
        w = tuple(x // n for x in w)
        if not Gamma_low.contains(w):
            return False
    return True


def _apply_rational(S_target, Bq, B_int, poly, coeff, out):
    """Accumulate coeff * (B applied to poly (x) {0, oo}) into out, in the
    coordinates of S_target.  Bq carries the exact rational entries for the
    weight action, B_int an integer multiple of B for the cusp action."""
    img = sym_action(Bq, poly)
    aa = cusp_normalize(B_int[1], B_int[3])
    bb = cusp_normalize(B_int[0], B_int[2])
    acc = S_target.symbol_coords(img, aa, bb)
    for idx, x in enumerate(acc):
        out[idx] = out[idx] + coeff * x


def degeneracy_alpha_dual(S_high, S_low, data):
    """Matrix of x -> t^-1 x from the symbols of the smaller group (higher
    level) to those of the larger one, columns indexed by the S_high basis."""
    tinv = _rational_inverse(data.t)
    adj = imat_adjugate(data.t)
    m = S_high.m
    cols = []
    for (w, i) in S_high.basis_tags:
        rep = S_high.table.reps[i]
        Bq = _rat_mat_mul(tinv, rep)
        B_int = mat_mul(adj, rep)
        out = S_low.zero_vector()
        _apply_rational(S_low, Bq, B_int, monomial(m, w), S_low.one, out)
        cols.append(out)
    return la.transpose(cols)


def _rat_mat_mul(x, y):
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])


def degeneracy_beta_dual(S_low, S_high, data):
    """Matrix of x -> sum_gamma t gamma x over right cosets of
    K = (t^-1 Gamma_high t) intersect Gamma_low in Gamma_low, columns
    indexed by the S_low basis."""
    t = data.t
    n = mat_det(t)
    adj = imat_adjugate(t)

    def in_k(g):
        w = mat_mul(mat_mul(t, g), adj)
        if any(x % n for x in w):
            return False
        w = tuple(x // n for x in w)
        return data.high.contains(w)

    gens = gamma_generators(data.low)
    gens = gens + [imat_inv_det1(g) for g in gens]
    reps = [IDENT]
    frontier = [IDENT]
    while frontier:
        nxt = []
        for r in frontier:
            for g in gens:
                c = mat_mul(r, g)
                if any(in_k(mat_mul(c, imat_inv_det1(r2))) for r2 in reps):
                    continue
                reps.append(c)
                nxt.append(c)
        frontier = nxt
    m = S_low.m
    cols = []
    for (w, i) in S_low.basis_tags:
        rep = S_low.table.reps[i]
        poly = monomial(m, w)
        out = S_high.zero_vector()
        for r in reps:
            B = mat_mul(mat_mul(t, r), rep)
            _apply_rational(S_high, B, B, poly, S_high.one, out)
        cols.append(out)
    return la.transpose(cols)


def coset_count_beta(data):
    """The index [Gamma_low : (t^-1 Gamma_high t) intersect Gamma_low],
    which is the scalar of alpha_t composed with beta_t."""
    t = data.t
    n = mat_det(t)
    adj = imat_adjugate(t)

    def in_k(g):
        w = mat_mul(mat_mul(t, g), adj)
        if any(x % n for x in w):
            return False
        return data.high.contains(tuple(x // n for x in w))

    gens = gamma_generators(data.low)
    gens = gens + [imat_inv_det1(g) for g in gens]
    reps = [IDENT]
    frontier = [IDENT]
    while frontier:
        nxt = []
        for r in frontier:
            for g in gens:
                c = mat_mul(r, g)
                if any(in_k(mat_mul(c, imat_inv_det1(r2))) for r2 in reps):
                    continue
                reps.append(c)
                nxt.append(c)
        frontier = nxt
    return len(reps)


def _mixed_double_coset_reps(Gamma_left, alpha, Gamma_right):
    """Representatives of Gamma_left \\ Gamma_left alpha Gamma_right."""
    gens = gamma_generators(Gamma_right)
    gens = gens + [imat_inv_det1(g) for g in gens]
    seen = {}
    h, j = _right_coset_key(Gamma_left, alpha)
    red = mat_mul(Gamma_left.reps[j], h)
    seen[(h, j)] = red
    frontier = [red]
    while frontier:
        nxt = []
        for b in frontier:
            for g in gens:
                c = mat_mul(b, g)
                key = _right_coset_key(Gamma_left, c)
                if key not in seen:
                    red = mat_mul(Gamma_left.reps[key[1]], key[0])
                    seen[key] = red
                    nxt.append(red)
        frontier = nxt
    return list(seen.values())


def _same_double_coset(Gamma_high, Gamma_low, t1, t2):
    """t1 in Gamma_high t2 Gamma_low?"""
    if mat_det(t1) != mat_det(t2):
        return False
    for r in _mixed_double_coset_reps(Gamma_high, t2, Gamma_low):
        if same_right_coset(Gamma_high, r, t1):
            return True
    return False


def enumerate_degeneracy(Gamma_high, Gamma_low):
    """Essentially distinct primitive integer matrices t (up to the double
    coset Gamma_high t Gamma_low) with t^-1 Gamma_high t inside Gamma_low
    and determinant dividing the modulus."""
    out = []
    for d in divisors(Gamma_high.N if Gamma_high.N > 1 else 1):
        hnfs = [(d // dd, b, 0, dd) for dd in divisors(d) for b in range(dd)
                if gcd(d // dd, gcd(b, dd)) == 1]
        for i in range(Gamma_low.index):
            r = Gamma_low.reps[i]
            for h in hnfs:
                t = mat_mul(r, h)
                if not _conjugate_into(t, Gamma_high, Gamma_low):
                    continue
                if any(_same_double_coset(Gamma_high, Gamma_low, t, d2.t)
                       for d2 in out):
                    continue
                out.append(DegeneracyData(t, Gamma_high, Gamma_low))
    return out


# ----------------------------------------------------------- old/new spaces

def proper_overgroups(G):
    """Subgroups H with G < H <= GL2(Z/N): the closure of G with one
    representative of each nontrivial G-coset, de-duplicated."""
    N = G.N
    ambient = gl2_elements(N)
    if len(ambient) > AMBIENT_CAP:
        raise GroupTooLarge("ambient group too large for overgroup search")
    elems = set(G.elements)
    seen_cosets = set()
    out = []
    for g in sorted(ambient):
        if g in elems or g in seen_cosets:
            continue
        for h in G.elements:
            seen_cosets.add(mat_mul(h, g, N))
        H = close_group(N, list(G.generators) + [g])
        if not any(H.equals(Ho) for Ho in out):
            out.append(H)
    return out


def _all_degeneracy_data(S, k):
    """Degeneracy matrices to/from every strictly larger group, as pairs of
    (alpha matrix, beta matrix) together with the target space."""
    from .groups import coset_table
    out = []
    Gamma = S.table
    for H in proper_overgroups(S.G):
        TH = coset_table(H)
        SH = build_space(TH, k)
        for data in enumerate_degeneracy(Gamma, TH):
            alpha = degeneracy_alpha_dual(S, SH, data)
            beta = degeneracy_beta_dual(SH, S, data)
            out.append((data, SH, alpha, beta))
    return out


def new_subspace(S, cusp_basis):
    """Basis of the part of the cuspidal subspace killed by every
    degeneracy map to a strictly larger group."""
    maps = _all_degeneracy_data(S, S.k)
    current = [list(v) for v in cusp_basis]
    for _, SH, alpha, _ in maps:
        if not current:
            break
        images = [la.mat_vec(alpha, v) for v in current]
        if la.is_zero_matrix(images):
            continue
        ker = la.kernel_of_rows(images, S.one)
        current = [[sum((c * x for c, x in zip(kv, col)), S.one * 0)
                    for col in zip(*current)] for kv in ker]
        current = [v for v in current if any(x != 0 for x in v)]
    return current


def old_subspace(S, cusp_basis):
    """Basis of the span of the images of the degeneracy maps from all
    strictly larger groups, intersected with the cuspidal subspace."""
    maps = _all_degeneracy_data(S, S.k)
    rows = []
    for _, SH, _, beta in maps:
        from .spaces import cuspidal_subspace
        for v in cuspidal_subspace(SH):
            img = la.mat_vec(beta, v)
            if any(x != 0 for x in img):
                rows.append(img)
    if not rows:
        return []
    return la.row_space_basis(rows, S.one)
