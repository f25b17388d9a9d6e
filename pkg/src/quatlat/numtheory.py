"""Legendre symbols, modular square roots, Hensel lifting and the
two-variable norm equation ``y0^2 + n z0^2 = q^s``."""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt
from typing import Optional

from .quat import Direction, Quat, satisfies_parity

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases.

    Deterministic below 3.3e24, which covers every input this package meets.
    """
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_odd_prime(p: int) -> None:
    if p % 2 == 0 or not is_prime(p):
        raise ValueError(f"{p} is not an odd prime")


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) via Euler's criterion; returns -1, 0 or 1."""
    check_odd_prime(p)
    v = pow(a % p, (p - 1) // 2, p)
    return -1 if v == p - 1 else v


def sqrt_mod(a: int, p: int) -> Optional[int]:
    """Smallest nonnegative r with r^2 = a (mod p), or None.

    Tonelli-Shanks, with the direct formula when p = 3 (mod 4).
    """
    a %= p
    if a == 0:
        return 0
    if legendre(a, p) != 1:
        return None
    if p % 4 == 3:
        r = pow(a, (p + 1) // 4, p)
        return min(r, p - r)
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while legendre(z, p) != -1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(a, q, p), pow(a, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c = i, b * b % p
        t, r = t * c % p, r * b % p
    return min(r, p - r)


def sqrt_mod_prime_power(a: int, p: int, k: int) -> Optional[int]:
    """A root of t^2 = a (mod p^k) for a prime to p, lifted by Newton steps."""
    if a % p == 0:
        raise ValueError("sqrt_mod_prime_power needs a unit")
    t = sqrt_mod(a, p)
    if t is None:
        return None
    mod = p
    for _ in range(1, k):
        mod *= p
        t = (t - (t * t - a) * pow(2 * t, -1, mod)) % mod
    return t % mod


def padic_sqrt(a: int, p: int, k: int) -> Optional[int]:
    """t mod p^k with t a genuine square root of a in Z_p, or None if a is
    not a square in Z_p."""
    mod = p ** k
    if a == 0:
        return 0
    e = 0
    while a % p == 0:
        a //= p
        e += 1
    if e % 2:
        return None
    half = e // 2
    if half >= k:
        return 0
    u = sqrt_mod_prime_power(a, p, k - half)
    if u is None:
        return None
    return (p ** half * u) % mod


def solve_cd_mod_p(p: int) -> tuple[int, int]:
    """Smallest-c solution of c^2 + d^2 + 1 = 0 (mod p), d = 0 when p = 1 (mod 4)."""
    check_odd_prime(p)
    if p % 4 == 1:
        return sqrt_mod(-1, p), 0
    for c in range(1, p):
        d = sqrt_mod(-1 - c * c, p)
        if d is not None:
            return c, d
    raise AssertionError(f"no solution of c^2+d^2+1 = 0 mod {p}")


@dataclass(frozen=True)
class PadicCD:
    p: int
    k: int
    c: int
    d: int

    @property
    def modulus(self) -> int:
        return self.p ** self.k


def hensel_lift_cd(p: int, k: int) -> PadicCD:
    """Lift the base solution to modulus p^k, holding d fixed and lifting c."""
    if k < 1:
        raise ValueError("precision k must be at least 1")
    c, d = solve_cd_mod_p(p)
    mod = p
    for _ in range(1, k):
        mod *= p
        c = (c - (c * c + d * d + 1) * pow(2 * c, -1, mod)) % mod
    return PadicCD(p, k, c % mod, d % mod)


@dataclass(frozen=True, order=True)
class NormEquationSolution:
    s: int
    z0: int
    y0: int
    q: int

    def quaternion(self, d: Direction) -> Quat:
        return Quat(self.y0, self.z0 * d.c1, self.z0 * d.c2, self.z0 * d.c3)


def _cornacchia(n: int, m: int, t: int) -> Optional[tuple[int, int]]:
    a, b = m, t
    limit = isqrt(m)
    while b > limit:
        a, b = b, a % b
    rem = m - b * b
    if rem < 0 or rem % n:
        return None
    y2 = rem // n
    y = isqrt(y2)
    if y == 0 or y * y != y2:
        return None
    return b, y


def primitive_representations(n: int, q: int, s: int) -> set[tuple[int, int]]:
    """All (x, y), y > 0, gcd(x, y) = 1 with x^2 + n y^2 = q^s."""
    m = q ** s
    if s == 0:
        return {(0, 1)} if n == 1 else set()
    found: set[tuple[int, int]] = set()
    if n % q:
        if legendre(-n, q) != 1:
            return found
        t0 = sqrt_mod_prime_power(-n, q, s)
        for t in {t0 % m, (-t0) % m}:
            sol = _cornacchia(n, m, t)
            if sol is None:
                continue
            x, y = sol
            found.add((x, y))
            if n == 1:
                found.add((y, x))
    elif s == 1:
        for y in range(1, isqrt(q // n) + 1):
            x2 = q - n * y * y
            x = isqrt(x2)
            if x * x == x2 and gcd(x, y) == 1:
                found.add((x, y))
    elif (n // q) % q == 0:
        for x, y in primitive_representations(n // (q * q), q, s - 2):
            if y % q:
                found.add((q * x, y))
    out = set()
    for x, y in found:
        if gcd(x, y) == 1:
            out.add((x, y))
            out.add((-x, y))
    return out


def solve_norm_equation(
    n: int, q: int, s_max: int, direction: Optional[Direction] = None
) -> list[NormEquationSolution]:
    """Coprime solutions of y0^2 + n z0^2 = q^s, 1 <= s <= s_max, z0 > 0.

    With a ``direction`` only solutions whose quaternion
    ``y0 + z0 (c1 i + c2 j + c3 k)`` satisfies the lattice parity rule are
    kept.  Sorted by (s, z0, |y0|) with the positive y0 first.
    """
    if n < 1:
        raise ValueError("n must be positive")
    check_odd_prime(q)
    sols = []
    for s in range(1, s_max + 1):
        for y0, z0 in primitive_representations(n, q, s):
            sol = NormEquationSolution(s, z0, y0, q)
            if direction is not None and not satisfies_parity(sol.quaternion(direction)):
                continue
            sols.append(sol)
    sols.sort(key=lambda t: (t.s, t.z0, abs(t.y0), t.y0 < 0))
    return sols


def brute_force_norm_equation(n: int, q: int, s_max: int) -> list[tuple[int, int, int]]:
    """Exhaustive z0 search; slow, kept as an independent cross-check."""
    out = []
    for s in range(1, s_max + 1):
        m = q ** s
        for z0 in range(1, isqrt(m // n) + 1):
            r = m - n * z0 * z0
            y = isqrt(r)
            if y * y == r and gcd(y, z0) == 1:
                out.extend({(s, z0, y), (s, z0, -y)})
    return sorted(out, key=lambda t: (t[0], t[1], abs(t[2]), t[2] < 0))


def valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of zero is infinite")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v
