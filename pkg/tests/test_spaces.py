import pytest

from congsym.backend import XorShift64
from congsym.groups import coset_table, imat_inv_det1, mat_mul
from congsym.families import build_family
from congsym import linalg as la
from congsym import spaces as sp
from congsym.spaces import (build_space, monomial, sym_action, cusp_count,
                            cuspidal_subspace, star_involution, plus_subspace,
                            boundary_map, modular_symbol_to_basis, Character,
                            cusp_normalize, cusp_to_matrix, NotRealType)

from conftest import space_for

SIGMA = (0, -1, 1, 0)
TAU = (0, -1, 1, -1)
J = (-1, 0, 0, -1)


def manin_relation_defects(S):
    """Coordinate sums x + x.sigma, x + x.tau + x.tau^2, x - x.J over all
    basis symbols; all must vanish in the presented quotient."""
    defects = []
    tau2 = mat_mul(TAU, TAU)
    for (w, i) in S.basis_tags:
        P = monomial(S.m, w)
        r = S.table.reps[i]

        def act(h):
            return S.manin_coords(sym_action(imat_inv_det1(h), P),
                                  mat_mul(r, h))

        x = S.manin_coords(P, r)
        two = [a + b for a, b in zip(x, act(SIGMA))]
        three = [a + b + c for a, b, c in zip(x, act(TAU), act(tau2))]
        jrel = [a - b for a, b in zip(x, act(J))]
        for vec in (two, three, jrel):
            if any(c != 0 for c in vec):
                defects.append((w, i, vec))
    return defects


def test_sym_action_weight_zero():
    assert sym_action((1, 2, 3, 4), monomial(0, 0)) == monomial(0, 0)


def test_sym_action_composition():
    g = (1, 2, 0, 1)
    h = (2, 1, 1, 1)
    P = monomial(4, 1)
    lhs = sym_action(g, sym_action(h, P))
    rhs = sym_action(mat_mul(g, h), P)
    assert lhs == rhs


def test_cusp_helpers():
    assert cusp_normalize(-2, -4) == (1, 2)
    assert cusp_normalize(0, -3) == (0, 1)
    assert cusp_normalize(3, 0) == (1, 0)
    m = cusp_to_matrix((3, 7))
    assert m[0] == 3 and m[2] == 7
    assert m[0] * m[3] - m[1] * m[2] == 1


def test_dimensions_table():
    cases = [
        ("gamma0", 11, 2, 3, 2),
        ("gamma0", 22, 2, 7, 4),
        ("gamma_full", 1, 12, 3, 2),
        ("gamma_full", 1, 2, 0, 0),
        ("gamma1", 5, 2, 3, 0),
        ("gamma", 2, 2, 2, 0),
        ("ns_plus", 13, 2, 11, 6),
    ]
    for tag, param, k, dim_full, dim_cusp in cases:
        S = space_for(tag, param, k)
        assert S.dim == dim_full, (tag, param, k)
        assert len(cuspidal_subspace(S)) == dim_cusp, (tag, param, k)


def test_cusp_counts():
    assert cusp_count(coset_table(build_family("gamma0", 11))) == 2
    assert cusp_count(coset_table(build_family("gamma", 2))) == 3
    assert cusp_count(coset_table(build_family("gamma1", 5))) == 4
    assert cusp_count(coset_table(build_family("ns_plus", 13))) == 6


def test_manin_relations_gamma0_11(s_gamma0_11):
    assert manin_relation_defects(s_gamma0_11) == []


def test_three_term_path_relation(s_gamma0_11):
    S = s_gamma0_11
    rng = XorShift64(3)
    for _ in range(12):
        cusps = []
        while len(cusps) < 3:
            u = rng.randint(-12, 12)
            v = rng.randint(0, 12)
            if (u, v) != (0, 0):
                cusps.append((u, v))
        a, b, c = cusps
        P = monomial(S.m, 0)
        total = [x + y + z for x, y, z in zip(S.symbol_coords(P, a, b),
                                              S.symbol_coords(P, b, c),
                                              S.symbol_coords(P, c, a))]
        assert all(t == 0 for t in total)


def test_boundary_of_path_sum_vanishes(s_gamma0_11):
    S = s_gamma0_11
    info = boundary_map(S)
    rows = info.matrix
    P = monomial(S.m, 0)
    vec = [x + y + z for x, y, z in zip(S.symbol_coords(P, (1, 0), (0, 1)),
                                        S.symbol_coords(P, (0, 1), (1, 3)),
                                        S.symbol_coords(P, (1, 3), (1, 0)))]
    for j in range(len(info.cusps)):
        assert sum(vec[i] * rows[i][j] for i in range(S.dim)) == 0


def test_star_involution_square(s_gamma0_11):
    S = s_gamma0_11
    iota = star_involution(S)
    assert la.mat_mul(iota, iota) == la.identity_matrix(S.dim, S.one)


def test_plus_minus_dimensions(s_ns_plus_13):
    S = s_ns_plus_13
    cusp = cuspidal_subspace(S)
    iota = star_involution(S)
    plus = plus_subspace(S, cusp, iota)
    restr = la.restrict_to_invariant_subspace(iota, cusp, S.one)
    minus_dim = sum(1 for v in la.kernel(
        la.mat_add(restr, la.identity_matrix(len(cusp), S.one)), S.one)
        for _ in [0])
    assert len(plus) + minus_dim == len(cusp)
    assert len(plus) == 3


def test_star_requires_real_type(g_8e1):
    S = build_space(coset_table(g_8e1), 2)
    with pytest.raises(NotRealType):
        star_involution(S)


def test_character_space_dimensions():
    G = build_family("gamma1", 4)
    Gp = build_family("gamma0", 4)
    eps = Character(G, Gp, [((3, 0, 0, 3), -1)], 2)
    S = build_space(coset_table(G), 3, character=eps)
    assert S.dim == 2
    assert len(cuspidal_subspace(S)) == 0


def test_character_rejects_non_character():
    G = build_family("gamma1", 4)
    Gp = build_family("gamma0", 4)
    with pytest.raises(ValueError):
        Character(G, Gp, [((3, 0, 0, 3), 2)], 2)


def test_modular_symbol_wrapper(s_gamma0_11):
    S = s_gamma0_11
    P = monomial(S.m, 0)
    v = modular_symbol_to_basis(S, P, (0, 1), (1, 0))
    assert len(v) == S.dim
    back = [a + b for a, b in zip(v, modular_symbol_to_basis(
        S, P, (1, 0), (0, 1)))]
    assert all(c == 0 for c in back)
