from congsym.backend import rat
from congsym.polys import (UniPoly, factor_rational_poly, is_irreducible_poly,
                           cyclotomic_poly, NumberField, min_poly_of_nf_elem)


def P(*coeffs):
    return UniPoly(coeffs)


def test_arithmetic():
    f = P(1, 2, 1)          # 1 + 2x + x^2
    g = P(1, 1)             # 1 + x
    assert f == g * g
    assert (f - g * g).is_zero()
    assert f % g == P()
    assert f // g == g
    assert g ** 3 == P(1, 3, 3, 1)
    assert f.degree == 2 and P().degree == -1


def test_divmod_and_gcd():
    f = P(-1, 0, 1)         # x^2 - 1
    g = P(1, 1)
    q, r = f.divmod(g)
    assert q * g + r == f
    assert f.gcd(P(-1, 1)) == P(-1, 1)
    assert P(2, 2).monic() == P(1, 1)


def test_evaluation_and_derivative():
    f = P(1, 0, 3)          # 1 + 3x^2
    assert f(rat(2)) == 13
    assert f.derivative() == P(0, 6)


def test_factorization():
    f = P(-1, 0, 1) * P(2, 1) * P(2, 1)     # (x-1)(x+1)(x+2)^2
    fac = factor_rational_poly(f)
    assert fac == [(P(-1, 1), 1), (P(1, 1), 1), (P(2, 1), 2)]
    assert is_irreducible_poly(P(-1, -1, 2, 1))     # x^3+2x^2-x-1
    assert not is_irreducible_poly(P(-1, 0, 1))


def test_cyclotomic():
    assert cyclotomic_poly(4) == P(1, 0, 1)
    assert cyclotomic_poly(1) == P(-1, 1)


def test_number_field():
    K = NumberField(P(-2, 0, 1))            # Q(sqrt 2)
    a = K.gen()
    assert a * a == K.elem([2])
    inv = (K.one() + a).inverse()
    assert (K.one() + a) * inv == K.one()
    assert (a / a) == K.one()
    assert min_poly_of_nf_elem(a + 1) == P(-1, -2, 1)


def test_to_str():
    assert P(-1, -1, 2, 1).to_str() == "x^3+2*x^2-x-1"
    assert P().to_str() == "0"
    K = NumberField(P(-2, 0, 1), var="a")
    assert (K.gen() * 3 - 1).to_str() == "3*a-1"
