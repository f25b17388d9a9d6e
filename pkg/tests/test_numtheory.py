from math import gcd, isqrt

import pytest
from hypothesis import given, strategies as st

from quatlat.numtheory import (
    brute_force_norm_equation,
    hensel_lift_cd,
    is_prime,
    legendre,
    padic_sqrt,
    primitive_representations,
    solve_cd_mod_p,
    solve_norm_equation,
    sqrt_mod,
    valuation,
)
from quatlat.quat import Direction, Quat, satisfies_parity

PRIMES = (3, 5, 7, 11, 13)


def residue_legendre(a, p):
    if a % p == 0:
        return 0
    return 1 if any(x * x % p == a % p for x in range(1, p)) else -1


def test_is_prime_against_trial_division():
    def slow(n):
        return n > 1 and all(n % d for d in range(2, isqrt(n) + 1))
    assert [n for n in range(2000) if is_prime(n)] == [n for n in range(2000) if slow(n)]
    assert is_prime(2**61 - 1) and not is_prime(3215031751)


def test_legendre_known_values():
    assert legendre(-2, 3) == 1 and legendre(-2, 5) == -1
    assert legendre(-14, 3) == 1 and legendre(-14, 5) == 1
    assert legendre(-50, 3) == 1 and legendre(-50, 5) == 0
    assert legendre(-126, 3) == 0 and legendre(-126, 5) == 1


@pytest.mark.parametrize("p", PRIMES)
def test_legendre_matches_residue_search(p):
    for a in range(-50, 51):
        assert legendre(a, p) == residue_legendre(a, p)


@pytest.mark.parametrize("p", PRIMES)
def test_legendre_sign_identity(p):
    for n in range(1, 101):
        if n % p == 0:
            continue
        sign = 1 if p % 4 == 1 else -1
        assert legendre(-n, p) == sign * legendre(n, p)


@pytest.mark.parametrize("bad", [2, 9, 15, 1])
def test_legendre_rejects_bad_modulus(bad):
    with pytest.raises(ValueError):
        legendre(3, bad)


def test_sqrt_mod_examples():
    assert sqrt_mod(-1, 5) == 2
    assert all(x * x % 5 != 2 for x in range(5))
    assert sqrt_mod(2, 5) is None
    assert sqrt_mod(0, 7) == 0


@pytest.mark.parametrize("p", (3, 5, 7, 13, 17, 41, 97, 257))
def test_sqrt_mod_smallest_root(p):
    for a in range(p):
        roots = [x for x in range(p) if x * x % p == a]
        assert sqrt_mod(a, p) == (roots[0] if roots else None)


def test_padic_sqrt():
    for p in (3, 5, 7):
        for k in (1, 3, 6):
            mod = p ** k
            for a in range(-60, 60):
                t = padic_sqrt(a, p, k)
                if t is not None:
                    assert (t * t - a) % mod == 0
    assert padic_sqrt(3, 3, 4) is None  # odd valuation
    assert padic_sqrt(2, 5, 3) is None


def test_solve_cd_examples():
    assert solve_cd_mod_p(5) == (2, 0)
    assert solve_cd_mod_p(3) == (1, 1)
    assert solve_cd_mod_p(13) == (5, 0)
    for p in (3, 7, 11, 19, 23):
        c, d = solve_cd_mod_p(p)
        brute = min(c0 for c0 in range(1, p) if any((c0 * c0 + d0 * d0 + 1) % p == 0
                                                    for d0 in range(p)))
        assert c == brute and (c * c + d * d + 1) % p == 0


def test_hensel_examples():
    assert hensel_lift_cd(5, 3).c == 57 and hensel_lift_cd(5, 3).d == 0
    assert (57 ** 2 + 1) % 125 == 0
    assert (hensel_lift_cd(5, 1).c, hensel_lift_cd(5, 1).d) == (2, 0)
    cd = hensel_lift_cd(3, 2)
    assert (cd.c ** 2 + cd.d ** 2 + 1) % 9 == 0
    with pytest.raises(ValueError):
        hensel_lift_cd(3, 0)


@given(st.sampled_from((3, 5, 7, 11, 13, 17, 19)), st.integers(2, 12))
def test_hensel_coherent(p, k):
    hi, lo = hensel_lift_cd(p, k), hensel_lift_cd(p, k - 1)
    assert (hi.c ** 2 + hi.d ** 2 + 1) % hi.modulus == 0
    assert (hi.c % lo.modulus, hi.d % lo.modulus) == (lo.c, lo.d)
    assert 0 <= hi.c < hi.modulus and 0 <= hi.d < hi.modulus


def test_norm_equation_examples():
    sols = {(t.y0, t.z0, t.s) for t in solve_norm_equation(14, 3, 4)}
    assert {(5, 2, 4), (-5, 2, 4)} <= sols
    sols = {(t.y0, t.z0, t.s) for t in solve_norm_equation(14, 5, 4)}
    assert {(11, 6, 4), (-11, 6, 4)} <= sols
    assert [(t.y0, t.z0, t.s) for t in solve_norm_equation(2, 3, 1)] == [(1, 1, 1), (-1, 1, 1)]


@pytest.mark.parametrize("q", PRIMES)
def test_norm_equation_matches_brute_force(q):
    for n in range(1, 80):
        fast = [(t.s, t.z0, t.y0) for t in solve_norm_equation(n, q, 6)]
        assert fast == brute_force_norm_equation(n, q, 6)
        for s, z, y in fast:
            assert y * y + n * z * z == q ** s and gcd(y, z) == 1 and z > 0


def test_norm_equation_parity_filter():
    d = Direction(3, 1, -2)
    for t in solve_norm_equation(14, 5, 6, d):
        assert satisfies_parity(t.quaternion(d))
    assert Quat(-11, 18, 6, -12) in {t.quaternion(d) for t in solve_norm_equation(14, 5, 4, d)} | \
        {-t.quaternion(d) for t in solve_norm_equation(14, 5, 4, d)}


def test_primitive_representations_divisible_n():
    # q | n cases are covered by the valuation reduction
    for q in (3, 5):
        for n in (q, 2 * q, q * q, 2 * q * q, q ** 3):
            for s in range(1, 7):
                want = {(y, z) for ss, z, y in brute_force_norm_equation(n, q, s) if ss == s}
                assert primitive_representations(n, q, s) == want


def test_valuation():
    assert valuation(126, 3) == 2 and valuation(126, 5) == 0 and valuation(250, 5) == 3
    with pytest.raises(ValueError):
        valuation(0, 3)
