"""Exact integer quaternions.

Coordinates are Python ints, so products never overflow.  Rotation
matrices are built from :class:`fractions.Fraction` entries.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import NamedTuple


class Quat(NamedTuple):
    """The integer quaternion ``x0 + x1 i + x2 j + x3 k``."""

    x0: int
    x1: int = 0
    x2: int = 0
    x3: int = 0

    def __mul__(self, other: "Quat") -> "Quat":  # type: ignore[override]
        return mul(self, other)

    def __neg__(self) -> "Quat":
        return Quat(-self.x0, -self.x1, -self.x2, -self.x3)

    def __add__(self, other: "Quat") -> "Quat":  # type: ignore[override]
        return Quat(self.x0 + other.x0, self.x1 + other.x1,
                    self.x2 + other.x2, self.x3 + other.x3)

    def __sub__(self, other: "Quat") -> "Quat":
        return Quat(self.x0 - other.x0, self.x1 - other.x1,
                    self.x2 - other.x2, self.x3 - other.x3)

    def scale(self, k: int) -> "Quat":
        return Quat(k * self.x0, k * self.x1, k * self.x2, k * self.x3)

    def is_real(self) -> bool:
        return self.x1 == 0 and self.x2 == 0 and self.x3 == 0

    def __str__(self) -> str:
        return format_quat(self)


class Direction(NamedTuple):
    """Coprime, sign-normalized imaginary direction and its norm ``n``."""

    c1: int
    c2: int
    c3: int

    @property
    def n(self) -> int:
        return self.c1 * self.c1 + self.c2 * self.c2 + self.c3 * self.c3

    @property
    def vector(self) -> tuple[int, int, int]:
        return (self.c1, self.c2, self.c3)


ONE = Quat(1, 0, 0, 0)


def mul(x: Quat, y: Quat) -> Quat:
    a0, a1, a2, a3 = x
    b0, b1, b2, b3 = y
    return Quat(
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    )


def conj(x: Quat) -> Quat:
    return Quat(x[0], -x[1], -x[2], -x[3])


def norm2(x: Quat) -> int:
    return x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3]


def re(x: Quat) -> int:
    return x[0]


def m_value(x: Quat) -> int:
    """Norm of the imaginary part, ``|x|^2 - Re(x)^2``."""
    return x[1] * x[1] + x[2] * x[2] + x[3] * x[3]


def content(x: Quat) -> int:
    """gcd of the four coordinates (0 for the zero quaternion)."""
    return gcd(gcd(x[0], x[1]), gcd(x[2], x[3]))


def _sign_normalize(coords):
    for c in coords:
        if c > 0:
            return tuple(coords)
        if c < 0:
            return tuple(-v for v in coords)
    return tuple(coords)


def primitive(x: Quat) -> Quat:
    """Divide out the content and make the first nonzero coordinate positive."""
    g = content(x)
    if g == 0:
        raise ValueError("the zero quaternion has no primitive representative")
    return Quat(*_sign_normalize([v // g for v in x]))


def direction(x: Quat) -> Direction:
    if x[1] == 0 and x[2] == 0 and x[3] == 0:
        raise ValueError("central element has no direction")
    g = gcd(gcd(x[1], x[2]), x[3])
    return Direction(*_sign_normalize([x[1] // g, x[2] // g, x[3] // g]))


def theta(y: Quat) -> tuple[tuple[Fraction, ...], ...]:
    """Rotation matrix of ``v -> y v y^-1`` on the imaginary quaternions.

    Column ``c`` is the image of the ``c``-th basis vector i, j, k.
    """
    n = norm2(y)
    if n == 0:
        raise ValueError("theta is undefined at the zero quaternion")
    yc = conj(y)
    cols = []
    for e in (Quat(0, 1, 0, 0), Quat(0, 0, 1, 0), Quat(0, 0, 0, 1)):
        img = mul(mul(y, e), yc)
        cols.append([Fraction(v, n) for v in img[1:]])
    return tuple(tuple(cols[c][r] for c in range(3)) for r in range(3))


def mat_apply(m, v) -> tuple[Fraction, ...]:
    return tuple(sum(m[r][c] * v[c] for c in range(3)) for r in range(3))


def mat_mul(a, b) -> tuple[tuple[Fraction, ...], ...]:
    return tuple(
        tuple(sum(a[r][k] * b[k][c] for k in range(3)) for c in range(3))
        for r in range(3)
    )


def mat_det(m) -> Fraction:
    return (
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    )


def satisfies_parity(x: Quat) -> bool:
    """Mod-4 parity rule for the lattice quaternions.

    Norm 1 mod 4: x0 odd, x1, x2, x3 even.  Norm 3 mod 4: x1 even, the
    others odd.  The rule is invariant under ``x -> -x``.
    """
    r = norm2(x) % 4
    odd = [v & 1 for v in x]
    if r == 1:
        return odd == [1, 0, 0, 0]
    if r == 3:
        return odd == [1, 0, 1, 1]
    return False


def format_quat(x: Quat) -> str:
    """Human-readable form such as ``3+2i+j+k`` or ``-5-6i-2j+4k``."""
    parts = []
    for coeff, unit in zip(x, ("", "i", "j", "k")):
        if coeff == 0:
            continue
        mag = abs(coeff)
        body = unit if (unit and mag == 1) else f"{mag}{unit}"
        sign = "-" if coeff < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    return out + "".join(s + b for s, b in parts[1:])


def parse_quat(text: str) -> Quat:
    """Parse ``"x0,x1,x2,x3"``."""
    fields = [f.strip() for f in text.split(",")]
    if len(fields) != 4:
        raise ValueError(f"expected four comma-separated integers, got {text!r}")
    return Quat(*(int(f) for f in fields))
