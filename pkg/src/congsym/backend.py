"""Exact rational arithmetic backend and small integer utilities.

All computational kernels work over exact rationals.  Two interchangeable
implementations are supported: gmpy2.mpq (fast, used when importable) and
fractions.Fraction (pure Python fallback).  Set CONGSYM_PURE_RATIONAL=1 to
force the fallback; the `bench` CLI command compares both.

The PRNG used for seeded random Hecke combinations is xorshift64* with a
nonzero 64-bit state; seed s maps to state (s + 0x9E3779B97F4A7C15) | 1.
Default seed is 0 everywhere.
"""

import os
from fractions import Fraction
from math import gcd

try:
    from gmpy2 import mpq as _mpq
    _HAVE_GMPY2 = True
except ImportError:  # pragma: no cover
    _mpq = None
    _HAVE_GMPY2 = False

if _HAVE_GMPY2 and os.environ.get("CONGSYM_PURE_RATIONAL") != "1":
    rat = _mpq
    RAT_IMPL = "gmpy2.mpq"
else:  # pragma: no cover
    rat = Fraction
    RAT_IMPL = "fractions.Fraction"

ZERO = rat(0)
ONE = rat(1)


def make_rat(impl, a, b=1):
    """Rational constructor for an explicitly named implementation (bench)."""
    if impl == "gmpy2.mpq" and _HAVE_GMPY2:
        return _mpq(a, b)
    return Fraction(a, b)


def as_fraction(x):
    """Convert a backend rational (or int) to fractions.Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return Fraction(int(x.numerator), int(x.denominator))


def egcd(a, b):
    """Return (g, x, y) with a*x + b*y = g = gcd(a, b), g >= 0."""
    old_r, r = a, b
    old_x, x = 1, 0
    old_y, y = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_x, x = x, old_x - q * x
        old_y, y = y, old_y - q * y
    if old_r < 0:
        old_r, old_x, old_y = -old_r, -old_x, -old_y
    return old_r, old_x, old_y


def inv_mod(a, n):
    if n == 1:
        return 0
    g, x, _ = egcd(a % n, n)
    if g != 1:
        raise ValueError("%d is not invertible mod %d" % (a, n))
    return x % n


def crt(a1, n1, a2, n2):
    """Solve x = a1 mod n1, x = a2 mod n2 for coprime n1, n2."""
    g, p, q = egcd(n1, n2)
    if g != 1:
        raise ValueError("moduli not coprime")
    return (a1 * q * n2 + a2 * p * n1) % (n1 * n2)


def factor_int(n):
    """Prime factorization as a dict p -> exponent."""
    f = {}
    x = n
    p = 2
    while p * p <= x:
        if x % p == 0:
            e = 0
            while x % p == 0:
                x //= p
                e += 1
            f[p] = e
        p = 3 if p == 2 else p + 2
    if x > 1:
        f[x] = f.get(x, 0) + 1
    return f


def divisors(n):
    ds = [1]
    for p, e in factor_int(n).items():
        cur = []
        pe = 1
        for _ in range(e + 1):
            cur.extend(d * pe for d in ds)
            pe *= p
        ds = cur
    return sorted(ds)


def is_prime(n):
    if n < 2:
        return False
    return factor_int(n) == {n: 1}


def sl2_order(n):
    """|SL2(Z/nZ)| = n^3 * prod over p|n of (1 - 1/p^2)."""
    if n == 1:
        return 1
    order = n ** 3
    for p in factor_int(n):
        order = order // (p * p) * (p * p - 1)
    return order


class XorShift64:
    """xorshift64* generator; deterministic, documented, seedable."""

    def __init__(self, seed=0):
        # splitmix64 scramble: a bijection of the seed, so distinct seeds
        # get distinct nonzero states
        x = (seed + 0x9E3779B97F4A7C15) & 0xFFFFFFFFFFFFFFFF
        x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
        x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
        x ^= x >> 31
        self.state = x or 0x9E3779B97F4A7C15

    def next_u64(self):
        x = self.state
        x ^= (x >> 12)
        x ^= (x << 25) & 0xFFFFFFFFFFFFFFFF
        x ^= (x >> 27)
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & 0xFFFFFFFFFFFFFFFF

    def randint(self, lo, hi):
        """Uniform-ish integer in [lo, hi] (span far below 2^64)."""
        return lo + self.next_u64() % (hi - lo + 1)
