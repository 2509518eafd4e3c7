"""Manin-symbol presentation of weight-k modular symbols for an induced
congruence subgroup, with boundary map, cuspidal subspace, star involution,
and plus subspace.

Conventions: matrices act on cusps by Mobius action on column vectors; the
weight action on degree-(k-2) homogeneous polynomials P(x, y) is by
substitution with the adjugate, sym_action(g, P) = P(dx - by, -cx + ay),
which is a left action for all determinants.  A Manin symbol [P, g] is the
class of g(P (x) {0, oo}); the right action is [P, g] h = [h^-1 P, g h].
"""

from math import gcd

from .backend import rat
from .polys import NumberField, cyclotomic_poly
from . import linalg as la
from .groups import (CongruenceSubgroup, coset_table, lift_to_sl2, mat_mod,
                     mat_mul, mat_det, imat_inv_det1, mat_inv_mod,
                     IDENT, S_MAT, T_MAT, TAU_MAT, ETA_MAT, is_real_type)

INFINITY = (1, 0)


class NotRealType(Exception):
    """Star involution requested for a group not of real type."""


# ---------------------------------------------------------------- sym action

def _binom_row(n):
    row = [1]
    for i in range(n):
        row.append(row[-1] * (n - i) // (i + 1))
    return row


def _linear_power(cx, cy, w):
    """Coefficients of (cx*x + cy*y)^w by x-degree."""
    row = _binom_row(w)
    return [row[i] * cx ** i * cy ** (w - i) for i in range(w + 1)]


def sym_action(g, coeffs):
    """Action of g on a homogeneous polynomial given by coefficients of
    x^w y^(m-w) at position w: substitute x -> dx - by, y -> -cx + ay."""
    m = len(coeffs) - 1
    if m == 0:
        return [coeffs[0]]
    a, b, c, d = g
    out = [0] * (m + 1)
    for w in range(m + 1):
        cw = coeffs[w]
        if cw == 0:
            continue
        # (d x - b y)^w * (-c x + a y)^(m - w)
        p1 = _linear_power(d, -b, w)
        p2 = _linear_power(-c, a, m - w)
        for i, ci in enumerate(p1):
            if ci == 0:
                continue
            for j, cj in enumerate(p2):
                if cj != 0:
                    out[i + j] += cw * ci * cj
    return out


def monomial(m, w):
    p = [0] * (m + 1)
    p[w] = 1
    return p


# -------------------------------------------------------------------- cusps

def cusp_normalize(u, v):
    if v == 0:
        return INFINITY
    g = gcd(abs(u), abs(v))
    u //= g
    v //= g
    if v < 0:
        u, v = -u, -v
    return (u, v)


def apply_to_cusp(g, cusp):
    u, v = cusp
    return cusp_normalize(g[0] * u + g[1] * v, g[2] * u + g[3] * v)


def cusp_to_matrix(cusp):
    """An SL2(Z) matrix whose first column is the given primitive vector."""
    u, v = cusp
    if (u, v) == (1, 0):
        return IDENT
    from .backend import egcd
    g, s, t = egcd(u, v)
    if g != 1:
        raise ValueError("vector (%d, %d) is not primitive" % (u, v))
    if s * u + t * v != 1:
        s, t = -s, -t
    mat = (u, -t, v, s)
    assert mat_det(mat) == 1
    return mat


# -------------------------------------------------------------- characters

class Character:
    """Character of Q = Gamma'/Gamma for Gamma normal in Gamma', both induced
    from groups mod N, with values in Q or a cyclotomic field."""

    def __init__(self, G, Gp, gen_values, order):
        if G.N != Gp.N:
            raise ValueError("character groups must share a modulus")
        self.G = G
        self.Gp = Gp
        self.order = order
        if order <= 2:
            self.field = None
            one = rat(1)
        else:
            self.field = NumberField(cyclotomic_poly(order), var="z")
            one = self.field.one()
        self.one = one
        N = G.N
        g0 = set(G.G0)
        if not g0 <= set(Gp.G0):
            raise ValueError("G must be contained in G'")
        # quotient cosets of G0 in G'0 (G normal, so sides agree)
        key_of = {}
        for g in sorted(Gp.G0):
            if g in key_of:
                continue
            coset = sorted(mat_mul(h, g, N) for h in G.G0)
            key = coset[0]
            for e in coset:
                key_of[e] = key
        self.key_of = key_of
        values = {key_of[mat_mod(IDENT, N)]: one}
        frontier = [mat_mod(IDENT, N)]
        gen_values = [(mat_mod(tuple(g), N), one * v) for g, v in gen_values]
        while frontier:
            nxt = []
            for x in frontier:
                vx = values[key_of[x]]
                for g, vg in gen_values:
                    y = mat_mul(x, g, N)
                    ky = key_of[y]
                    if ky in values:
                        if values[ky] != vx * vg:
                            raise ValueError("values do not define a character")
                    else:
                        values[ky] = vx * vg
                        nxt.append(y)
            frontier = nxt
        if len(values) != len(set(key_of.values())):
            raise ValueError("given generators do not generate the quotient")
        self.values = values
        self.quotient_keys = sorted(values)

    def value_mod(self, g_mod):
        return self.values[self.key_of[g_mod]]

    def value(self, g_int):
        return self.value_mod(mat_mod(g_int, self.G.N))

    def is_trivial(self):
        return all(v == self.one for v in self.values.values())

    def section(self, key):
        """An SL2(Z) lift of the quotient element with the given key."""
        return lift_to_sl2(key, self.G.N)


# ----------------------------------------------------------------- the space

class ModSymSpace:
    """Finite presentation of the weight-k modular symbols of Gamma_G
    (with an optional character) by Manin symbols."""

    def __init__(self, table, k, character, field_one, reduce_cols, basis_tags,
                 small_table=None):
        self.table = table          # coset table used for symbols (Gamma')
        self.small_table = small_table or table  # Gamma itself when character
        self.k = k
        self.m = k - 2
        self.character = character
        self.one = field_one
        self.reduce_cols = reduce_cols
        self.basis_tags = basis_tags
        self.dim = len(basis_tags)
        self._boundary = None

    @property
    def G(self):
        return self.small_table.G

    def gen_index(self, w, i):
        return i * (self.m + 1) + w

    def zero_vector(self):
        z = self.one * 0
        return [z] * self.dim

    def add_gen(self, vec, w, i, coeff):
        for pos, c in self.reduce_cols[self.gen_index(w, i)].items():
            vec[pos] = vec[pos] + coeff * c

    def manin_coords(self, poly, g):
        """Coordinates of the Manin symbol [poly, g] for integer g in SL2."""
        vec = self.zero_vector()
        self.add_manin(vec, poly, g, self.one)
        return vec

    def add_manin(self, vec, poly, g, coeff):
        j = self.table.coset_index(g)
        if self.character is not None:
            gamma = mat_mul(g, imat_inv_det1(self.table.reps[j]))
            coeff = coeff * self.character.value(gamma)
        for w, c in enumerate(poly):
            if c != 0:
                self.add_gen(vec, w, j, coeff * c)

    def chain_from_infinity(self, poly, cusp, vec, coeff):
        """Accumulate coordinates of poly (x) {oo, cusp} into vec."""
        u, v = cusp
        if v == 0:
            return
        # continued-fraction convergents of u/v
        x, y = u, v
        p_prev2, q_prev2 = 0, 1  # p_{-2}, q_{-2}
        p_prev, q_prev = 1, 0    # p_{-1}, q_{-1}
        k = 0
        while y != 0:
            a = x // y
            x, y = y, x - a * y
            p_cur = a * p_prev + p_prev2
            q_cur = a * q_prev + q_prev2
            sgn = 1 if k % 2 == 1 else -1  # (-1)^(k-1)
            g = (sgn * p_cur, p_prev, sgn * q_cur, q_prev)
            assert mat_det(g) == 1
            self.add_manin(vec, sym_action(imat_inv_det1(g), poly), g, coeff)
            p_prev2, q_prev2 = p_prev, q_prev
            p_prev, q_prev = p_cur, q_cur
            k += 1
        assert (p_prev, q_prev) == (u, v) or (p_prev, q_prev) == (-u, -v)

    def symbol_coords(self, poly, a, b):
        """Coordinates of the modular symbol poly (x) {a, b}."""
        a = cusp_normalize(*a)
        b = cusp_normalize(*b)
        vec = self.zero_vector()
        if a == b:
            return vec
        self.chain_from_infinity(poly, b, vec, self.one)
        self.chain_from_infinity(poly, a, vec, -self.one)
        return vec

    def __repr__(self):
        return "ModSymSpace(N=%d, k=%d, dim=%d)" % (self.table.N, self.k, self.dim)


def modular_symbol_to_basis(S, poly, a, b):
    return S.symbol_coords(poly, a, b)


class _UnionFind:
    """Union-find with multiplicative edge scalars: gen = c * root."""

    def __init__(self, n, one):
        self.parent = list(range(n))
        self.scalar = [one] * n
        self.one = one
        self.dead = set()

    def find(self, j):
        path = []
        while self.parent[j] != j:
            path.append(j)
            j = self.parent[j]
        c = self.one
        for p in reversed(path):
            c = c * self.scalar[p]
        # path compression
        acc = self.one
        for p in reversed(path):
            acc = acc * self.scalar[p]
            self.parent[p] = j
            self.scalar[p] = acc
        return j, c

    def union(self, j1, j2, c):
        """Impose gen_j1 = c * gen_j2."""
        r1, c1 = self.find(j1)
        r2, c2 = self.find(j2)
        # gen_j1 = c1 * r1, gen_j2 = c2 * r2, so r1 = (c * c2 / c1) * r2
        if r1 == r2:
            if c1 != c * c2:
                self.dead.add(r1)
            return
        if r2 in self.dead:
            self.dead.add(r1)
        if r1 in self.dead:
            self.dead.add(r2)
        self.parent[r1] = r2
        self.scalar[r1] = c * c2 / c1


def build_space(Gamma, k, character=None):
    """Presentation of M_k(Gamma_G, eps) by Manin symbols."""
    if k < 2:
        raise ValueError("weight must be at least 2")
    if character is not None:
        table = coset_table(character.Gp)
        small = Gamma
        one = character.one
        eps = character.value
    else:
        table = Gamma
        small = None
        one = rat(1)
        eps = None
    m = k - 2
    n_cosets = table.index
    stride = m + 1
    n_gens = n_cosets * stride
    uf = _UnionFind(n_gens, one)

    sigma_int = S_MAT
    tau_int = TAU_MAT
    tau_inv = imat_inv_det1(tau_int)
    tau2_int = mat_mul(tau_int, tau_int)
    neg_ident = (-1, 0, 0, -1)

    def coset_and_scalar(i, h_int):
        """Coset and epsilon scalar of reps[i] * h."""
        g = mat_mul(table.reps[i], h_int)
        j = table.coset_index(g)
        if eps is None:
            return j, one
        gamma = mat_mul(g, imat_inv_det1(table.reps[j]))
        return j, eps(gamma)

    # two-term relations: x = -x sigma and x = x J
    sgn_m = one if m % 2 == 0 else -one
    for i in range(n_cosets):
        j_s, e_s = coset_and_scalar(i, sigma_int)
        j_j, e_j = coset_and_scalar(i, neg_ident)
        for w in range(stride):
            # x sigma = [sigma^-1 x^w y^(m-w), r_i sigma]
            #         = (-1)^w [x^(m-w) y^w, r_i sigma]
            c = -e_s if w % 2 == 0 else e_s
            uf.union(i * stride + w, j_s * stride + (m - w), c)
            # x J = (-1)^m eps [x^w y^(m-w), r_i J]
            uf.union(i * stride + w, j_j * stride + w, sgn_m * e_j)

    # three-term tau relations, folded through the union-find
    rows = []
    zero = one * 0
    tau_polys = [sym_action(tau_inv, monomial(m, w)) for w in range(stride)]
    tau2_polys = [sym_action(tau_int, monomial(m, w)) for w in range(stride)]
    for i in range(n_cosets):
        j1, e1 = coset_and_scalar(i, tau_int)
        j2, e2 = coset_and_scalar(i, tau2_int)
        for w in range(stride):
            row = {}

            def add(gen, coeff):
                r, c = uf.find(gen)
                if r in uf.dead:
                    return
                val = row.get(r, zero) + coeff * c
                if val == 0:
                    row.pop(r, None)
                else:
                    row[r] = val

            add(i * stride + w, one)
            for w2, c in enumerate(tau_polys[w]):
                if c != 0:
                    add(j1 * stride + w2, e1 * c)
            for w2, c in enumerate(tau2_polys[w]):
                if c != 0:
                    add(j2 * stride + w2, e2 * c)
            if row:
                rows.append(row)

    # sparse Gaussian elimination; prefer eliminating non-extreme weights so
    # that the surviving basis symbols have extreme weight where possible
    pivots = {}

    def weight_of(gen):
        return gen % stride

    def reduce_row(row):
        while True:
            hit = None
            for c in row:
                if c in pivots:
                    hit = c
                    break
            if hit is None:
                return
            f = row.pop(hit)
            for c2, v2 in pivots[hit].items():
                if c2 == hit:
                    continue
                val = row.get(c2, zero) - f * v2
                if val == 0:
                    row.pop(c2, None)
                else:
                    row[c2] = val

    for row in rows:
        reduce_row(row)
        if not row:
            continue
        cands = sorted(row)
        mid = [c for c in cands if 0 < weight_of(c) < m]
        p = mid[-1] if mid else cands[-1]
        pv = row[p]
        prow = {c: v / pv for c, v in row.items()}
        # back-substitute into existing pivot rows
        for q, qrow in pivots.items():
            if p in qrow:
                f = qrow.pop(p)
                for c2, v2 in prow.items():
                    if c2 == p:
                        continue
                    val = qrow.get(c2, zero) - f * v2
                    if val == 0:
                        qrow.pop(c2, None)
                    else:
                        qrow[c2] = val
        pivots[p] = prow

    roots = set()
    for j in range(n_gens):
        r, _ = uf.find(j)
        if r not in uf.dead:
            roots.add(r)
    basis = sorted(r for r in roots if r not in pivots)
    basis_pos = {r: t for t, r in enumerate(basis)}
    basis_tags = [(r % stride, r // stride) for r in basis]

    expr = {r: {basis_pos[r]: one} for r in basis}
    for p, prow in pivots.items():
        e = {}
        for c, v in prow.items():
            if c == p:
                continue
            if c not in basis_pos:
                # column eliminated later is impossible after back-substitution
                raise AssertionError("pivot row not fully reduced")
            e[basis_pos[c]] = -v
        expr[p] = e

    reduce_cols = []
    for j in range(n_gens):
        r, c = uf.find(j)
        if r in uf.dead:
            reduce_cols.append({})
        else:
            reduce_cols.append({pos: c * v for pos, v in expr[r].items()})

    return ModSymSpace(table, k, character, one, reduce_cols, basis_tags,
                       small_table=small)


# ------------------------------------------------------------- cusp classes

def orbit_table(Gamma):
    """T-orbit table: per coset a pair (orbit id, exponent)."""
    n = Gamma.index
    orbit = [-1] * n
    expo = [0] * n
    oid = 0
    for s in range(n):
        if orbit[s] != -1:
            continue
        j = s
        e = 0
        while orbit[j] == -1:
            orbit[j] = oid
            expo[j] = e
            j = Gamma.perm_T[j]
            e += 1
        oid += 1
    return list(zip(orbit, expo))


def _apply_to_vector(g, w):
    return (g[0] * w[0] + g[1] * w[1], g[2] * w[0] + g[3] * w[1])


def vector_equiv(Gamma, tab, w1, w2):
    """Is there gamma in Gamma_G with gamma * w1 = w2 exactly, as primitive
    vectors?  Returns (flag, witness)."""
    h = cusp_to_matrix(w1)
    g_b = cusp_to_matrix(w2)
    i_h = Gamma.coset_index(h)
    i_b = Gamma.coset_index(g_b)
    if tab[i_h][0] != tab[i_b][0]:
        return False, None
    d = tab[i_h][1] - tab[i_b][1]
    mid = mat_mul(mat_mul(Gamma.reps[i_b], (1, d, 0, 1)),
                  imat_inv_det1(Gamma.reps[i_h]))
    gamma_b = mat_mul(g_b, imat_inv_det1(Gamma.reps[i_b]))
    gamma_h = mat_mul(h, imat_inv_det1(Gamma.reps[i_h]))
    gamma = mat_mul(mat_mul(gamma_b, mid), imat_inv_det1(gamma_h))
    assert Gamma.contains(gamma)
    assert _apply_to_vector(gamma, w1) == w2
    return True, gamma


def cusp_equiv(Gamma, tab, a, b, plus=False):
    """Are cusps a, b equivalent under Gamma_G?  Returns (flag, witness).

    With plus=True the extra identification (-u, v) ~ (u, v) of the
    plus-quotient is applied to the source cusp.
    """
    a = cusp_normalize(*a)
    b = cusp_normalize(*b)
    sources = [a, (-a[0], -a[1])]
    if plus and a[0] != 0:
        sources += [(-a[0], a[1]), (a[0], -a[1])]
    for src in sources:
        eq, gamma = vector_equiv(Gamma, tab, src, b)
        if eq:
            return True, gamma
    return False, None


def cusp_vanishing(Gamma_small, tab_small, character, a, m=0):
    """Does the boundary class of the primitive vector a die in the weight
    m+2 boundary space (with the optional character)?

    The class [w] satisfies [gamma' w] = eps(gamma')^-1 [w] for gamma' in
    the larger group and [-w] = (-1)^m [w]; it vanishes exactly when some
    combination fixes the class with a scalar different from 1.
    """
    if character is None and m % 2 == 0:
        return False
    neg_a = (-a[0], -a[1])
    if character is None:
        one = rat(1)
        pairs = [(IDENT, one)]
    else:
        one = character.one
        pairs = []
        for key in character.quotient_keys:
            inv = character.values[key]
            inv = one / inv
            pairs.append((character.section(key), inv))
    for sec, eps_inv in pairs:
        sw = _apply_to_vector(sec, a)
        for c, target in ((1, a), (-1, neg_a)):
            scalar = eps_inv if (c == 1 or m % 2 == 0) else -eps_inv
            if scalar == one:
                continue
            if vector_equiv(Gamma_small, tab_small, sw, target)[0]:
                return True
    return False


class BoundaryInfo:
    def __init__(self, cusps, matrix):
        self.cusps = cusps
        self.matrix = matrix  # rows: basis elements, cols: cusp classes


def boundary_map(S):
    """Matrix of the boundary map on the basis, discovering cusp classes
    lazily.  A basis symbol [x^w y^(m-w), r] maps to the class of the first
    column of r (when w = m) minus the class of the second column (w = 0),
    with scalars tracked through vector-level witnesses."""
    if S._boundary is not None:
        return S._boundary
    table = S.table
    tab = orbit_table(table)
    small = S.small_table
    small_tab = tab if small is table else orbit_table(small)
    m = S.m
    cusps = []        # representative primitive vectors, one per kept class
    vanished = []
    rows = [[] for _ in range(S.dim)]
    zero = S.one * 0

    def _row_add(row, idx, val):
        while len(row) <= idx:
            row.append(zero)
        row[idx] = row[idx] + val

    def class_coefficient(t, w_vec, sign):
        for idx, rep_vec in enumerate(cusps):
            for c in (1, -1):
                target = (c * w_vec[0], c * w_vec[1])
                eq, gamma = vector_equiv(table, tab, rep_vec, target)
                if not eq:
                    continue
                # gamma * rep = c * w, so [w] = c^m eps(gamma)^-1 [rep]
                coeff = S.one
                if S.character is not None:
                    coeff = coeff / S.character.value(gamma)
                if c == -1 and m % 2 == 1:
                    coeff = -coeff
                _row_add(rows[t], idx, sign * coeff)
                return
        for rep_vec in vanished:
            for c in (1, -1):
                target = (c * w_vec[0], c * w_vec[1])
                if vector_equiv(table, tab, rep_vec, target)[0]:
                    return
        if cusp_vanishing(small, small_tab, S.character, w_vec, m):
            vanished.append(w_vec)
            return
        cusps.append(w_vec)
        _row_add(rows[t], len(cusps) - 1, sign * S.one)

    for t, (w, i) in enumerate(S.basis_tags):
        rep = table.reps[i]
        if w == m:
            class_coefficient(t, (rep[0], rep[2]), S.one)
        if w == 0:
            class_coefficient(t, (rep[1], rep[3]), -S.one)
    ncols = len(cusps)
    matrix = [row + [zero] * (ncols - len(row)) for row in rows]
    S._boundary = BoundaryInfo(cusps, matrix)
    return S._boundary


def cuspidal_subspace(S):
    """Basis of the kernel of the boundary map, as coordinate vectors."""
    info = boundary_map(S)
    if not info.cusps:
        return [list(v) for v in la.identity_matrix(S.dim, S.one)]
    return la.kernel(la.transpose(info.matrix), S.one)


def star_involution(S):
    """Matrix of the star involution (columns are images of basis symbols)."""
    if not is_real_type(S.G) or (S.character is not None
                                 and not is_real_type(S.character.Gp)):
        raise NotRealType("group is not of real type; no star involution")
    m = S.m
    cols = []
    for (w, i) in S.basis_tags:
        conj = _eta_conj(S.table.reps[i])
        sgn = -S.one if (m - w) % 2 == 0 else S.one
        poly = monomial(m, w)
        cols.append([sgn * x for x in S.manin_coords(poly, conj)])
    return la.transpose(cols)


def _eta_conj(g):
    """eta g eta^-1 for eta = diag(-1, 1)."""
    return (g[0], -g[1], -g[2], g[3])


def plus_subspace(S, cusp_basis, iota):
    """Basis of the +1 eigenspace of iota on the given cuspidal subspace,
    in ambient space coordinates."""
    if not cusp_basis:
        return []
    restr = la.restrict_to_invariant_subspace(iota, cusp_basis, S.one)
    d = len(cusp_basis)
    shifted = [[restr[i][j] - (S.one if i == j else S.one * 0) for j in range(d)]
               for i in range(d)]
    ker = la.kernel(shifted, S.one)
    out = []
    for v in ker:
        vec = S.zero_vector()
        for c, b in zip(v, cusp_basis):
            if c != 0:
                vec = [x + c * y for x, y in zip(vec, b)]
        out.append(vec)
    return out


def cusp_count(Gamma):
    """Number of cusps of the curve: orbits of the cosets under right
    multiplication by T and by -I (the stabilizer of infinity in SL2(Z))."""
    n = Gamma.index
    if Gamma.N == 1:
        return 1
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    N = Gamma.N
    for i in range(n):
        j = Gamma.coset_index_mod(mat_mod(
            (-Gamma.reps_mod[i][0], -Gamma.reps_mod[i][1],
             -Gamma.reps_mod[i][2], -Gamma.reps_mod[i][3]), N))
        for k in (Gamma.perm_T[i], j):
            a, b = find(i), find(k)
            if a != b:
                parent[a] = b
    return len({find(i) for i in range(n)})
