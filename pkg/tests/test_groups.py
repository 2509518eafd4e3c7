import pytest

from congsym.groups import (close_group, coset_table, lift_to_sl2,
                            gamma_generators, is_real_type, normalizer,
                            find_det_element, mat_det, mat_mod, mat_mul,
                            conj_induced, intersect_induced, GroupTooLarge,
                            GL2QElem, smith_gl2q)
from congsym.families import build_family


def test_close_group_orders():
    assert build_family("gamma_full", 7).order() == 2016    # |GL2(F7)|
    assert build_family("gamma0", 11).order() == 1100       # Borel of GL2(F11)
    assert close_group(8, [(7, 0, 0, 7), (2, 3, 3, 5), (0, 7, 7, 7),
                           (3, 0, 0, 3), (4, 7, 7, 3)]).order() == 48


def test_coset_table_indices():
    assert coset_table(build_family("gamma0", 11)).index == 12
    assert coset_table(build_family("gamma1", 5)).index == 24
    assert coset_table(build_family("gamma", 2)).index == 6
    assert coset_table(build_family("ns_plus", 13)).index == 78
    assert coset_table(build_family("gamma_full", 1)).index == 1


def test_coset_table_permutations():
    Gamma = coset_table(build_family("gamma0", 11))
    n = Gamma.index
    assert sorted(Gamma.perm_S) == list(range(n))
    assert sorted(Gamma.perm_T) == list(range(n))
    for i in range(n):
        assert Gamma.coset_index(Gamma.reps[i]) == i


def test_lift_to_sl2():
    for N in (5, 11, 16):
        G = build_family("gamma_full", N)
        for g in list(sorted(G.G0))[:20]:
            m = lift_to_sl2(g, N)
            assert mat_det(m) == 1
            assert mat_mod(m, N) == g


def test_gamma_generators_membership():
    Gamma = coset_table(build_family("gamma0", 11))
    gens = gamma_generators(Gamma)
    assert gens
    for w in gens:
        assert Gamma.contains(w)


def test_real_type(g_8e1, g_h155):
    assert is_real_type(build_family("gamma0", 11))
    assert is_real_type(build_family("ns_plus", 13))
    assert not is_real_type(g_8e1)
    assert not is_real_type(g_h155)


def test_find_det_element():
    G = build_family("gamma0", 11)
    g = find_det_element(G, 2)
    assert (g[0] * g[3] - g[1] * g[2]) % 11 == 2
    with pytest.raises(ValueError):
        find_det_element(build_family("gamma", 11), 2)


def test_normalizer_contains_group():
    G = build_family("ns", 13)
    Np = normalizer(G)
    assert G.elements <= Np.elements
    assert build_family("ns_plus", 13).elements <= Np.elements


def test_conj_and_intersect_induced():
    G = build_family("gamma_full", 5)
    H = build_family("gamma0", 5)
    inter = intersect_induced(G, H)
    assert inter.elements == H.elements
    alpha = GL2QElem((1, 0, 0, 2))
    C = conj_induced(H, alpha)
    assert C.N % 5 == 0


def test_smith_form():
    alpha = GL2QElem((2, 1, 0, 3))
    x, y, d1, n = smith_gl2q(alpha)
    from congsym.groups import mat_mul
    prod = mat_mul(mat_mul(x, alpha.primitive()), y)
    assert prod == (1, 0, 0, n)
    assert d1 == 1 and n == 6


def test_group_too_large():
    with pytest.raises(GroupTooLarge):
        coset_table(close_group(2 ** 9, []))
