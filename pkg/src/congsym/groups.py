"""Subgroups of GL2(Z/N), induced congruence subgroups of SL2(Z), coset
tables, lifting, generators, and the intersection/conjugation machinery.

Matrices mod N and over Z are row-major 4-tuples (a, b, c, d) for
[[a, b], [c, d]].  Rational 2x2 matrices are GL2QElem.
"""

from math import gcd

from .backend import rat, egcd, inv_mod, crt, factor_int, sl2_order, as_fraction

GROUP_CAP = 2 ** 24
AMBIENT_CAP = 2 ** 20

IDENT = (1, 0, 0, 1)
S_MAT = (0, -1, 1, 0)
T_MAT = (1, 1, 0, 1)
TAU_MAT = (0, -1, 1, -1)
ETA_MAT = (-1, 0, 0, 1)


class GroupTooLarge(Exception):
    """Enumeration exceeded the configured cap."""


def mat_mod(g, n):
    if n == 1:
        return (0, 0, 0, 0)
    return (g[0] % n, g[1] % n, g[2] % n, g[3] % n)


def mat_mul(x, y, n=0):
    a = x[0] * y[0] + x[1] * y[2]
    b = x[0] * y[1] + x[1] * y[3]
    c = x[2] * y[0] + x[3] * y[2]
    d = x[2] * y[1] + x[3] * y[3]
    if n:
        return (a % n, b % n, c % n, d % n)
    return (a, b, c, d)


def mat_det(g):
    return g[0] * g[3] - g[1] * g[2]


def mat_inv_mod(g, n):
    """Inverse of a matrix with unit determinant mod n."""
    if n == 1:
        return (0, 0, 0, 0)
    di = inv_mod(mat_det(g) % n, n)
    return ((g[3] * di) % n, (-g[1] * di) % n, (-g[2] * di) % n, (g[0] * di) % n)


def imat_inv_det1(g):
    """Exact inverse of an integer matrix of determinant 1."""
    return (g[3], -g[1], -g[2], g[0])


def imat_adjugate(g):
    return (g[3], -g[1], -g[2], g[0])


def mat_neg(g):
    return (-g[0], -g[1], -g[2], -g[3])


def is_unit(x, n):
    return n == 1 or gcd(x % n, n) == 1


class GroupModN:
    """Enumerated subgroup of GL2(Z/N)."""

    def __init__(self, N, generators, elements):
        self.N = N
        self.generators = list(generators)
        self.elements = elements  # set of tuples
        self.G0 = sorted(g for g in elements if mat_det(g) % N == 1 % N)
        self.det_image = sorted({mat_det(g) % N for g in elements})

    def __contains__(self, g):
        return mat_mod(g, self.N) in self.elements

    def order(self):
        return len(self.elements)

    def conjugate_by(self, x):
        """The group x * G * x^-1 at the same level."""
        xi = mat_inv_mod(x, self.N)
        gens = [mat_mul(mat_mul(x, g, self.N), xi, self.N) for g in self.generators]
        return close_group(self.N, gens)

    def equals(self, other):
        if self.N != other.N:
            return False
        return all(g in other for g in self.generators) and all(
            h in self for h in other.generators)

    def __repr__(self):
        return "GroupModN(N=%d, order=%d)" % (self.N, self.order())


def close_group(N, gens, cap=GROUP_CAP):
    """Subgroup of GL2(Z/N) generated by gens, by breadth-first closure."""
    if N < 1:
        raise ValueError("modulus must be positive")
    if N == 1:
        e = (0, 0, 0, 0)
        return GroupModN(1, [], {e})
    norm = []
    for g in gens:
        gm = mat_mod(tuple(g), N)
        if not is_unit(mat_det(gm), N):
            raise ValueError("generator %r is not invertible mod %d" % (g, N))
        norm.append(gm)
    ident = mat_mod(IDENT, N)
    elements = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in norm:
                y = mat_mul(x, g, N)
                if y not in elements:
                    if len(elements) >= cap:
                        raise GroupTooLarge("group exceeds %d elements" % cap)
                    elements.add(y)
                    nxt.append(y)
        frontier = nxt
    return GroupModN(N, norm, elements)


def group_from_elements(N, elements):
    gens = minimize_generators(N, elements)
    return GroupModN(N, gens, set(elements))


def minimize_generators(N, elements):
    """Small generating set for a subgroup given by its element set."""
    if N == 1:
        return []
    gens = []
    closed = {mat_mod(IDENT, N)}
    for e in sorted(elements):
        if e not in closed:
            gens.append(e)
            closed = close_group(N, gens).elements
            if len(closed) == len(elements):
                break
    return gens


def membership(G, g):
    """Is g in the enumerated element set?  Moduli must agree."""
    if isinstance(g, GroupModN):
        raise TypeError("expected a matrix")
    gt = tuple(g)
    return mat_mod(gt, G.N) in G.elements


def lift_to_sl2(g, N):
    """Lift of a det-1 matrix mod N to SL2(Z) with entries bounded by N^2."""
    if N == 1:
        return IDENT
    a, b, c, d = mat_mod(tuple(g), N)
    if mat_det((a, b, c, d)) % N != 1 % N:
        raise ValueError("matrix does not have determinant 1 mod %d" % N)

    def sym(x):
        x %= N
        return x - N if x > N // 2 else x

    c0, d0 = sym(c), sym(d)
    if c0 == 0 and d0 == 0:
        raise ValueError("zero bottom row cannot have unit determinant")
    if c0 == 0:
        c0 = N
    if gcd(c0, d0) != 1:
        t = 0
        while True:
            t = -t if t > 0 else -t + 1
            if gcd(c0, d0 + t * N) == 1:
                d0 += t * N
                break
    g1, x0, y0 = egcd(d0, -c0)  # x0*d0 - y0*c0 = 1
    assert g1 == 1
    # top rows are (x0 + s*c0, y0 + s*d0); the congruence fixes s mod N
    s = ((a - x0) * (-y0) + (b - y0) * x0) % N
    s0 = s - N if s > N // 2 else s
    best = None
    for k in (-1, 0, 1):
        sk = s0 + k * N
        cand = (x0 + sk * c0, y0 + sk * d0, c0, d0)
        score = max(abs(e) for e in cand)
        if best is None or score < best[0]:
            best = (score, cand)
    lift = best[1]
    assert mat_det(lift) == 1
    assert mat_mod(lift, N) == (a, b, c, d)
    return lift


class CongruenceSubgroup:
    """Coset table of Gamma_G \\ SL2(Z) via G0 \\ SL2(Z/N)."""

    def __init__(self, G, cap=GROUP_CAP):
        self.G = G
        N = self.N = G.N
        total = sl2_order(N)
        g0 = G.G0
        if N == 1:
            self.index = 1
            self.reps = [IDENT]
            self.reps_mod = [(0, 0, 0, 0)]
            self.perm_S = [0]
            self.perm_T = [0]
            self.coset_of = {(0, 0, 0, 0): 0}
            return
        if total > cap:
            raise GroupTooLarge("SL2(Z/%d) has %d elements, beyond the cap" % (N, total))
        sm = mat_mod(S_MAT, N)
        tm = mat_mod(T_MAT, N)
        ident = mat_mod(IDENT, N)
        coset_of = {}
        reps_mod = []
        perm_s = []
        perm_t = []

        def new_coset(m):
            idx = len(reps_mod)
            reps_mod.append(m)
            perm_s.append(-1)
            perm_t.append(-1)
            for g in g0:
                coset_of[mat_mul(g, m, N)] = idx
            return idx

        new_coset(ident)
        i = 0
        while i < len(reps_mod):
            m = reps_mod[i]
            for gen, perm in ((sm, perm_s), (tm, perm_t)):
                y = mat_mul(m, gen, N)
                j = coset_of.get(y)
                if j is None:
                    j = new_coset(y)
                perm[i] = j
            i += 1
        self.index = len(reps_mod)
        assert self.index * len(g0) == total
        self.reps_mod = reps_mod
        self.coset_of = coset_of
        self.perm_S = perm_s
        self.perm_T = perm_t
        self.reps = [IDENT] + [lift_to_sl2(m, N) for m in reps_mod[1:]]

    def coset_index(self, x):
        """Index i with x in Gamma * reps[i]; x is an integer SL2 matrix."""
        if self.N == 1:
            return 0
        return self.coset_of[mat_mod(x, self.N)]

    def coset_index_mod(self, m):
        if self.N == 1:
            return 0
        return self.coset_of[m]

    def contains(self, x):
        """Is the integer matrix x in Gamma_G (det 1 and reduction in G0)?"""
        if mat_det(x) != 1:
            return False
        return self.N == 1 or mat_mod(x, self.N) in self.G.elements

    def __repr__(self):
        return "CongruenceSubgroup(N=%d, index=%d)" % (self.N, self.index)


def coset_table(G, cap=GROUP_CAP):
    return CongruenceSubgroup(G, cap)


def gamma_generators(Gamma):
    """Generators of Gamma_G by Schreier's lemma on the sigma/T coset action."""
    cached = getattr(Gamma, "_schreier_gens", None)
    if cached is not None:
        return cached
    gens = []
    seen = set()
    for gen_int, perm in ((S_MAT, Gamma.perm_S), (T_MAT, Gamma.perm_T)):
        for i in range(Gamma.index):
            j = perm[i]
            w = mat_mul(mat_mul(Gamma.reps[i], gen_int), imat_inv_det1(Gamma.reps[j]))
            if w != IDENT and w not in seen:
                assert Gamma.contains(w)
                seen.add(w)
                gens.append(w)
    Gamma._schreier_gens = gens
    return gens


class GL2QElem:
    """2x2 rational matrix with positive determinant."""

    def __init__(self, entries):
        self.m = tuple(rat(e) if isinstance(e, int) else e for e in entries)
        det = self.m[0] * self.m[3] - self.m[1] * self.m[2]
        if det <= 0:
            raise ValueError("determinant must be positive")
        self.det = det
        fracs = [as_fraction(e) for e in self.m]
        num_g = 0
        den_l = 1
        for f in fracs:
            num_g = gcd(num_g, abs(f.numerator))
            den_l = den_l * f.denominator // gcd(den_l, f.denominator)
        self.d1 = rat(num_g, den_l)
        dval = as_fraction(det / (self.d1 * self.d1))
        assert dval.denominator == 1
        self.Dval = int(dval.numerator)

    def primitive(self):
        """Integer matrix alpha/d1 with coprime entries; its det is D(alpha)."""
        out = []
        for e in self.m:
            f = as_fraction(e / self.d1)
            assert f.denominator == 1
            out.append(int(f.numerator))
        return tuple(out)

    def inverse(self):
        d = self.det
        a, b, c, dd = self.m
        return GL2QElem((dd / d, -b / d, -c / d, a / d))

    def __mul__(self, other):
        if isinstance(other, GL2QElem):
            other = other.m
        else:
            other = tuple(rat(e) if isinstance(e, int) else e for e in other)
        return GL2QElem(mat_mul(self.m, other))

    def __rmul__(self, other):
        other = tuple(rat(e) if isinstance(e, int) else e for e in other)
        return GL2QElem(mat_mul(other, self.m))

    def is_integral(self):
        return all(as_fraction(e).denominator == 1 for e in self.m)

    def __repr__(self):
        return "GL2QElem(%s)" % (self.m,)


def smith_gl2q(alpha):
    """x, y in SL2(Z) and (d1, n) with x*alpha*y = diag(d1, n*d1)."""
    m = list(alpha.primitive())
    n = mat_det(tuple(m))
    x = list(IDENT)
    y = list(IDENT)

    def row1_minus(q):  # left-multiply by [[1,0],[-q,1]]
        m[2] -= q * m[0]
        m[3] -= q * m[1]
        x[2], x[3] = x[2] - q * x[0], x[3] - q * x[1]

    def row_swap():  # left-multiply by [[0,-1],[1,0]]
        m[0], m[1], m[2], m[3] = -m[2], -m[3], m[0], m[1]
        x[0], x[1], x[2], x[3] = -x[2], -x[3], x[0], x[1]

    def col1_minus(q):  # right-multiply by [[1,-q],[0,1]]
        m[1] -= q * m[0]
        m[3] -= q * m[2]
        y[1], y[3] = y[1] - q * y[0], y[3] - q * y[2]

    def col_swap():  # right-multiply by [[0,-1],[1,0]]
        m[0], m[1], m[2], m[3] = m[1], -m[0], m[3], -m[2]
        y[0], y[1], y[2], y[3] = y[1], -y[0], y[3], -y[2]

    while m[1] != 0 or m[2] != 0:
        while m[2] != 0:
            if m[0] == 0:
                row_swap()
                continue
            row1_minus(m[2] // m[0])
            if m[2] != 0:
                row_swap()
        while m[1] != 0:
            if m[0] == 0:
                col_swap()
                continue
            col1_minus(m[1] // m[0])
            if m[1] != 0:
                col_swap()
    if m[0] < 0:
        # negate both rows (still determinant-1 on the left)
        m[0], m[1], m[2], m[3] = -m[0], -m[1], -m[2], -m[3]
        x = [-e for e in x]
    # unimodular operations preserve the content, which is 1 for a primitive
    # matrix, so the corner entry is 1 and the other diagonal entry is n
    assert m == [1, 0, 0, n], m
    xt, yt = tuple(x), tuple(y)
    assert mat_det(xt) == 1 and mat_det(yt) == 1
    return xt, yt, alpha.d1, alpha.Dval


def crt_general(a, n1, b, n2):
    """Solve x = a mod n1, x = b mod n2 (solvable when a = b mod gcd)."""
    g = gcd(n1, n2)
    if (a - b) % g != 0:
        raise ValueError("incompatible congruences")
    l = n1 // g * n2
    _, p, q = egcd(n1 // g, n2 // g)
    x = a + (b - a) // g * p * n1
    return x % l


def crt_matrix(g1, n1, g2, n2):
    n = n1 // gcd(n1, n2) * n2
    return tuple(crt_general(a, n1, b, n2) % n for a, b in zip(g1, g2))


def _kernel_subgroup_gens(G, d):
    """Generators of {g in G : g = 1 mod d}."""
    if d == 1:
        return minimize_generators(G.N, G.elements)
    ident_d = mat_mod(IDENT, d)
    elems = {g for g in G.elements if mat_mod(g, d) == ident_d}
    return minimize_generators(G.N, elems)


def intersect_induced(G, H):
    """Group K at level lcm(N_G, N_H) with Gamma_K = Gamma_G n Gamma_H."""
    n1, n2 = G.N, H.N
    d = gcd(n1, n2)
    L = n1 // d * n2
    if n1 == 1:
        return H
    if n2 == 1:
        return G
    ident1 = mat_mod(IDENT, n1)
    ident2 = mat_mod(IDENT, n2)
    a_g = [crt_matrix(g, n1, ident2, n2) for g in _kernel_subgroup_gens(G, d)]
    a_h = [crt_matrix(ident1, n1, h, n2) for h in _kernel_subgroup_gens(H, d)]
    a_d = []
    if d > 1:
        sect_g = {}
        for g in sorted(G.elements):
            sect_g.setdefault(mat_mod(g, d), g)
        sect_h = {}
        for h in sorted(H.elements):
            sect_h.setdefault(mat_mod(h, d), h)
        common = sorted(set(sect_g) & set(sect_h))
        for k in minimize_generators(d, common):
            a_d.append(crt_matrix(sect_g[k], n1, sect_h[k], n2))
    return close_group(L, a_g + a_h + a_d)


def _gamma_upper0_group(n):
    """Subgroup {b = 0 mod n} of GL2(Z/n) (lower triangular mod n)."""
    gens = [(1, 0, 1, 1)]
    for u in range(1, n):
        if gcd(u, n) == 1:
            gens.append((u, 0, 0, 1))
            gens.append((1, 0, 0, u))
    return close_group(n, gens)


def conj_induced(G, alpha):
    """Group H at level n*N with Gamma_H = alpha^-1 Gamma_G alpha n SL2(Z)."""
    N = G.N
    m = alpha.primitive()
    n = alpha.Dval
    if gcd(n, N) != 1:
        raise ValueError("gcd(D(alpha), N) must be 1")
    if n == 1:
        if N == 1:
            return G
        am = mat_mod(m, N)
        ai = mat_inv_mod(am, N)
        return close_group(N, [mat_mul(mat_mul(ai, g, N), am, N) for g in G.generators])
    _, y, _, _ = smith_gl2q(alpha)
    # level-n part: y * {upper-right = 0 mod n} * y^-1
    yn = mat_mod(y, n)
    yni = mat_inv_mod(yn, n)
    hn = [mat_mul(mat_mul(yn, b, n), yni, n) for b in _gamma_upper0_group(n).generators]
    lifts = []
    if N > 1:
        am = mat_mod(m, N)
        ai = mat_inv_mod(am, N)
        hN = [mat_mul(mat_mul(ai, g, N), am, N) for g in G.generators]
        identn = mat_mod(IDENT, n)
        lifts.extend(crt_matrix(h, N, identn, n) for h in hN)
        identN = mat_mod(IDENT, N)
        lifts.extend(crt_matrix(identN, N, b, n) for b in hn)
        return close_group(n * N, lifts)
    return close_group(n, hn)


def conj_inter(Gamma, alpha):
    """Group K with Gamma_K = Gamma n alpha^-1 Gamma alpha."""
    return intersect_induced(Gamma.G, conj_induced(Gamma.G, alpha))


def gl2_elements(N, cap=AMBIENT_CAP):
    order = 1
    if N > 1:
        order = N ** 4
        for p in factor_int(N):
            order = order // (p * p * p * p) * ((p * p - 1) * (p * p - p))
    if order > cap:
        raise GroupTooLarge("GL2(Z/%d) too large to enumerate" % N)
    out = []
    for a in range(N):
        for b in range(N):
            for c in range(N):
                for d in range(N):
                    if is_unit(a * d - b * c, N):
                        out.append((a, b, c, d))
    return out


def normalizer(G):
    """Normalizer of G in GL2(Z/N), by enumeration of the ambient group."""
    N = G.N
    if N == 1:
        return G
    elems = []
    for x in gl2_elements(N):
        xi = mat_inv_mod(x, N)
        if all(mat_mul(mat_mul(x, g, N), xi, N) in G.elements for g in G.generators):
            elems.append(x)
    return group_from_elements(N, elems)


def is_real_type(G):
    """Is G stable under conjugation by eta = diag(-1, 1) mod N?"""
    N = G.N
    if N == 1:
        return True
    eta = mat_mod(ETA_MAT, N)
    eta_i = mat_inv_mod(eta, N)
    return all(mat_mul(mat_mul(eta, g, N), eta_i, N) in G.elements for g in G.generators)


def find_det_element(G, n):
    """First element of G (in sorted order) with determinant n mod N."""
    N = G.N
    if N == 1:
        return (0, 0, 0, 0)
    nm = n % N
    if nm not in set(G.det_image):
        raise ValueError("no element of determinant %d: T_n undefined for this group" % n)
    for g in sorted(G.elements):
        if mat_det(g) % N == nm:
            return g
    raise AssertionError("det_image inconsistent")
