"""The lattice Gamma_{p,l}: generators, canonical elements, words, normal
forms, the square presentation and the p-adic matrix embedding.

A group element is stored as its primitive, sign-normalized quaternion.
Nonzero integer multiples of a quaternion map to the same element, so
this representative is a complete invariant.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import isqrt
from typing import Iterable, Sequence, Union

from . import quat as Q
from .numtheory import check_odd_prime, hensel_lift_cd
from .quat import Direction, Quat


class NotInGammaError(ValueError):
    """The quaternion does not represent an element of the lattice."""


class InvariantViolation(RuntimeError):
    """A theoretical guarantee failed at runtime; indicates a bug."""


@dataclass(frozen=True)
class LatticeParams:
    p: int
    l: int

    def __post_init__(self):
        check_odd_prime(self.p)
        check_odd_prime(self.l)
        if self.p == self.l:
            raise ValueError("p and l must be distinct")

    def prime(self, family: str) -> int:
        return self.p if family == "A" else self.l


@dataclass(frozen=True)
class GroupElement:
    rep: Quat
    r: int
    s: int
    params: LatticeParams = field(compare=True, repr=False)

    @property
    def length(self) -> int:
        return self.r + self.s

    def is_identity(self) -> bool:
        return self.r == 0 and self.s == 0

    @property
    def purity(self) -> str:
        if self.s == 0:
            return "pure-p"
        if self.r == 0:
            return "pure-l"
        return "mixed"

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        return multiply(self, other)

    def inverse(self) -> "GroupElement":
        return invert(self)

    def __pow__(self, k: int) -> "GroupElement":
        return power(self, k)

    def __str__(self) -> str:
        return f"psi({Q.format_quat(self.rep)})"


@dataclass(frozen=True, order=True)
class Generator:
    family: str
    index: int
    inverted: bool = False

    @property
    def name(self) -> str:
        return f"{self.family.lower()}{self.index}" + ("'" if self.inverted else "")

    @property
    def base_name(self) -> str:
        return f"{self.family.lower()}{self.index}"

    def inverse(self) -> "Generator":
        return Generator(self.family, self.index, not self.inverted)

    def __str__(self) -> str:
        return self.name

    @classmethod
    def parse(cls, text: str) -> "Generator":
        t = text.strip()
        inverted = t.endswith("'")
        if inverted:
            t = t[:-1]
        if len(t) < 2 or t[0] not in "abAB" or not t[1:].isdigit():
            raise ValueError(f"bad generator letter {text!r}")
        return cls(t[0].upper(), int(t[1:]), inverted)


Word = tuple  # tuple[Generator, ...]


def parse_word(text: str) -> Word:
    """``"a1,a2',b3"`` -> word; empty string is the empty word."""
    text = text.strip()
    if not text:
        return ()
    return tuple(Generator.parse(t) for t in text.split(","))


def format_word(word: Iterable[Generator]) -> str:
    return ",".join(g.name for g in word)


def free_reduce(word: Iterable[Generator]) -> Word:
    out: list[Generator] = []
    for g in word:
        if out and out[-1] == g.inverse():
            out.pop()
        else:
            out.append(g)
    return tuple(out)


def invert_word(word: Sequence[Generator]) -> Word:
    return tuple(g.inverse() for g in reversed(word))


# -- generators ---------------------------------------------------------------

@lru_cache(maxsize=None)
def _norm_family(q: int) -> tuple[Quat, ...]:
    found = []
    b = isqrt(q)
    for x0 in range(1, b + 1):
        for x1, x2 in product(range(-b, b + 1), repeat=2):
            r = q - x0 * x0 - x1 * x1 - x2 * x2
            if r < 0:
                continue
            x3 = isqrt(r)
            if x3 * x3 != r:
                continue
            for s3 in {x3, -x3}:
                x = Quat(x0, x1, x2, s3)
                if Q.satisfies_parity(x):
                    found.append(x)
    found.sort(key=lambda x: (x[1], x[2], x[3]), reverse=True)
    return tuple(found)


def enumerate_generators(params: LatticeParams) -> tuple[list[Quat], list[Quat]]:
    """All x with x0 > 0, norm p (resp. l) and the parity rule."""
    return list(_norm_family(params.p)), list(_norm_family(params.l))


def _first_imag_positive(x: Quat) -> bool:
    for v in x[1:]:
        if v:
            return v > 0
    return False


def choose_generator_representatives(family: Sequence[Quat]) -> list[Quat]:
    """One member of each conjugate pair: the one whose first nonzero
    imaginary coordinate is positive, in descending (x1, x2, x3) order."""
    reps = [x for x in family if _first_imag_positive(x)]
    reps.sort(key=lambda x: (x[1], x[2], x[3]), reverse=True)
    return reps


@lru_cache(maxsize=None)
def _reps(params: LatticeParams) -> tuple[tuple[Quat, ...], tuple[Quat, ...]]:
    a, b = enumerate_generators(params)
    return (tuple(choose_generator_representatives(a)),
            tuple(choose_generator_representatives(b)))


def generator_reps(params: LatticeParams, family: str) -> tuple[Quat, ...]:
    a, b = _reps(params)
    return a if family == "A" else b


def letter_quat(params: LatticeParams, g: Generator) -> Quat:
    reps = generator_reps(params, g.family)
    if not 1 <= g.index <= len(reps):
        raise IndexError(f"generator {g.name} out of range for (p, l) = ({params.p}, {params.l})")
    x = reps[g.index - 1]
    return Q.conj(x) if g.inverted else x


@lru_cache(maxsize=None)
def letters(params: LatticeParams, family: str) -> tuple[Generator, ...]:
    """a1, a1', a2, a2', ... for the family."""
    n = len(generator_reps(params, family))
    return tuple(Generator(family, i, inv) for i in range(1, n + 1) for inv in (False, True))


@lru_cache(maxsize=None)
def _quat_to_letter(params: LatticeParams) -> dict:
    return {letter_quat(params, g): g for fam in "AB" for g in letters(params, fam)}


def letter_of(params: LatticeParams, x: Quat) -> Generator:
    """The letter whose quaternion is +-x."""
    table = _quat_to_letter(params)
    x = Q.primitive(x)
    g = table.get(x)
    if g is None:
        raise NotInGammaError(f"{Q.format_quat(x)} is not a generator")
    return g


def letter_element(params: LatticeParams, g: Generator) -> GroupElement:
    return element_from_quat(params, letter_quat(params, g))


# -- elements -----------------------------------------------------------------

def _params(obj) -> LatticeParams:
    return obj if isinstance(obj, LatticeParams) else obj.params


def _split_norm(n: int, p: int, l: int):
    r = s = 0
    while n % p == 0:
        n //= p
        r += 1
    while n % l == 0:
        n //= l
        s += 1
    return (r, s) if n == 1 else None


def element_from_quat(params, x: Quat) -> GroupElement:
    params = _params(params)
    if Q.norm2(x) == 0:
        raise NotInGammaError("the zero quaternion is not in the lattice")
    rep = Q.primitive(Quat(*x))
    rs = _split_norm(Q.norm2(rep), params.p, params.l)
    if rs is None:
        raise NotInGammaError(
            f"not in Gamma: norm {Q.norm2(rep)} of {Q.format_quat(rep)} is not of the form "
            f"{params.p}^r {params.l}^s")
    if not Q.satisfies_parity(rep):
        raise NotInGammaError(
            f"not in Gamma: {Q.format_quat(rep)} fails the mod-4 parity condition")
    return GroupElement(rep, rs[0], rs[1], params)


def identity(params) -> GroupElement:
    return GroupElement(Q.ONE, 0, 0, _params(params))


def _same_params(g: GroupElement, h: GroupElement) -> None:
    if g.params != h.params:
        raise ValueError("elements belong to different lattices")


def multiply(g: GroupElement, h: GroupElement) -> GroupElement:
    _same_params(g, h)
    return element_from_quat(g.params, Q.mul(g.rep, h.rep))


def invert(g: GroupElement) -> GroupElement:
    return GroupElement(Q.primitive(Q.conj(g.rep)), g.r, g.s, g.params)


def power(g: GroupElement, k: int) -> GroupElement:
    base = g if k >= 0 else invert(g)
    out = identity(g.params)
    for _ in range(abs(k)):
        out = multiply(out, base)
    return out


def conjugate(g: GroupElement, x: GroupElement) -> GroupElement:
    """g x g^-1."""
    return multiply(multiply(g, x), invert(g))


def word_length(g: GroupElement) -> int:
    return g.r + g.s


def evaluate_word(presentation, word: Iterable[Generator]) -> GroupElement:
    params = _params(presentation)
    x = Q.ONE
    for g in word:
        x = Q.primitive(Q.mul(x, letter_quat(params, g)))
    return element_from_quat(params, x)


def commutes(g: GroupElement, h: GroupElement) -> bool:
    """Commutation via equality of directions; identity commutes with all."""
    _same_params(g, h)
    if g.is_identity() or h.is_identity():
        return True
    return Q.direction(g.rep) == Q.direction(h.rep)


def element_direction(g: GroupElement) -> Direction:
    return Q.direction(g.rep)


# -- peeling and normal forms -------------------------------------------------

def peel(g: GroupElement, family: str) -> tuple[Generator, GroupElement]:
    """Split off the last letter of the given family: g = remainder * letter."""
    params = g.params
    q = params.prime(family)
    if (g.r if family == "A" else g.s) < 1:
        raise ValueError(f"element has no {family}-letters to peel")
    hits = []
    for letter in letters(params, family):
        y = Q.mul(g.rep, Q.conj(letter_quat(params, letter)))
        if all(v % q == 0 for v in y):
            hits.append((letter, y))
    if len(hits) != 1:
        raise InvariantViolation(
            f"peel found {len(hits)} candidate letters for {g} (expected exactly one)")
    letter, y = hits[0]
    try:
        rest = element_from_quat(params, Quat(*(v // q for v in y)))
    except NotInGammaError as exc:
        raise InvariantViolation(f"peel remainder left the lattice: {exc}") from exc
    if rest.length != g.length - 1:
        raise InvariantViolation(f"peel of {g} did not shorten it by one")
    return letter, rest


def normal_form(g: GroupElement, order: str = "BA") -> Word:
    """Unique word for g: all B-letters then all A-letters ("BA"), or the
    reverse ("AB")."""
    if order not in ("BA", "AB"):
        raise ValueError("order must be 'BA' or 'AB'")
    last, first = ("A", "B") if order == "BA" else ("B", "A")
    tail: list[Generator] = []
    for fam in (last, first):
        while (g.r if fam == "A" else g.s) > 0:
            letter, g = peel(g, fam)
            tail.append(letter)
    return tuple(reversed(tail))


def tree_coordinates(g: GroupElement) -> tuple[GroupElement, GroupElement]:
    """Positions of the vertex g in the two trees.

    The p-tree coordinate is the A-part of the A-then-B normal form; the
    l-tree coordinate is the B-part of the B-then-A normal form.
    """
    params = g.params
    ab = normal_form(g, "AB")
    ba = normal_form(g, "BA")
    a_part = [x for x in ab if x.family == "A"]
    b_part = [x for x in ba if x.family == "B"]
    return evaluate_word(params, a_part), evaluate_word(params, b_part)


# -- Dickson factorisation and presentation ------------------------------------

def dickson_factor(params, x: Quat) -> tuple[Quat, Quat, Quat, Quat]:
    """Unique (z, y, y~, z~) with z, z~ of norm p, y, y~ of norm l and
    z y = +-x, y~ z~ = +-x."""
    params = _params(params)
    x = Quat(*x)
    if Q.norm2(x) != params.p * params.l:
        raise ValueError(f"norm of {Q.format_quat(x)} is not p*l = {params.p * params.l}")
    if not Q.satisfies_parity(x):
        raise NotInGammaError(f"{Q.format_quat(x)} fails the parity condition")
    a_all, b_all = enumerate_generators(params)
    neg = -x
    zy = [(z, y) for z in a_all for y in b_all if Q.mul(z, y) in (x, neg)]
    yz = [(y, z) for z in a_all for y in b_all if Q.mul(y, z) in (x, neg)]
    if len(zy) != 1 or len(yz) != 1:
        raise InvariantViolation(
            f"Dickson factorisation of {Q.format_quat(x)} not unique: {len(zy)}, {len(yz)}")
    (z, y), (yt, zt) = zy[0], yz[0]
    return z, y, yt, zt


@dataclass(frozen=True)
class Square:
    """Relation a b = b~ a~: bottom a, right b, left b~, top a~."""

    a: Generator
    b: Generator
    b_tilde: Generator
    a_tilde: Generator

    def relator(self) -> Word:
        return (self.a, self.b, self.a_tilde.inverse(), self.b_tilde.inverse())

    def orientations(self) -> tuple["Square", "Square", "Square", "Square"]:
        """The square read from each of its four corners."""
        a, b, bt, at = self.a, self.b, self.b_tilde, self.a_tilde
        return (
            self,
            Square(a.inverse(), bt, b, at.inverse()),
            Square(at, b.inverse(), bt.inverse(), a),
            Square(at.inverse(), bt.inverse(), b.inverse(), a.inverse()),
        )

    def corner_key(self) -> frozenset:
        return frozenset((s.a, s.b) for s in self.orientations())

    def to_json(self) -> dict:
        return {"a": self.a.name, "b": self.b.name,
                "b_tilde": self.b_tilde.name, "a_tilde": self.a_tilde.name}


@dataclass(frozen=True)
class Presentation:
    params: LatticeParams
    a_reps: tuple[GroupElement, ...]
    b_reps: tuple[GroupElement, ...]
    squares: tuple[Square, ...]

    def generator_names(self) -> list[str]:
        return ([f"a{i}" for i in range(1, len(self.a_reps) + 1)]
                + [f"b{i}" for i in range(1, len(self.b_reps) + 1)])

    def relators(self) -> list[Word]:
        return [sq.relator() for sq in self.squares]

    def to_json(self) -> dict:
        gens = [{"name": f"a{i}", "quat": list(g.rep)} for i, g in enumerate(self.a_reps, 1)]
        gens += [{"name": f"b{i}", "quat": list(g.rep)} for i, g in enumerate(self.b_reps, 1)]
        return {"p": self.params.p, "l": self.params.l, "generators": gens,
                "squares": [sq.to_json() for sq in self.squares]}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2) + "\n"

    @classmethod
    def from_json(cls, obj: Union[dict, str]) -> "Presentation":
        if isinstance(obj, str):
            obj = json.loads(obj)
        params = LatticeParams(obj["p"], obj["l"])
        a_reps, b_reps = [], []
        for gen in obj["generators"]:
            el = element_from_quat(params, Quat(*gen["quat"]))
            (a_reps if gen["name"].startswith("a") else b_reps).append(el)
        squares = tuple(
            Square(*(Generator.parse(sq[k]) for k in ("a", "b", "b_tilde", "a_tilde")))
            for sq in obj["squares"])
        return cls(params, tuple(a_reps), tuple(b_reps), squares)


def square_at(params, a: Generator, b: Generator) -> Square:
    """The square with bottom a and right b."""
    params = _params(params)
    x = Q.mul(letter_quat(params, a), letter_quat(params, b))
    _, _, yt, zt = dickson_factor(params, x)
    return Square(a, b, letter_of(params, yt), letter_of(params, zt))


@lru_cache(maxsize=None)
def derive_presentation(params: LatticeParams) -> Presentation:
    squares: list[Square] = []
    seen: set = set()
    for a in letters(params, "A"):
        for b in letters(params, "B"):
            sq = square_at(params, a, b)
            key = sq.corner_key()
            if key not in seen:
                seen.add(key)
                squares.append(sq)
    expected = (params.p + 1) * (params.l + 1) // 4
    if len(squares) != expected:
        raise InvariantViolation(f"found {len(squares)} squares, expected {expected}")
    a_reps = tuple(element_from_quat(params, x) for x in generator_reps(params, "A"))
    b_reps = tuple(element_from_quat(params, x) for x in generator_reps(params, "B"))
    return Presentation(params, a_reps, b_reps, tuple(squares))


def _cyclic_forms(word: Sequence[Generator]) -> set[Word]:
    out = set()
    for w in (tuple(word), invert_word(word)):
        for i in range(len(w)):
            out.add(w[i:] + w[:i])
    return out


def relators_equivalent(r1: Sequence[Generator], r2: Sequence[Generator]) -> bool:
    """Equal up to cyclic rotation and formal inversion."""
    return tuple(r2) in _cyclic_forms(r1)


def same_relator_set(rs1: Sequence[Sequence[Generator]], rs2: Sequence[Sequence[Generator]]) -> bool:
    if len(rs1) != len(rs2):
        return False
    pool = list(rs2)
    for r in rs1:
        for i, cand in enumerate(pool):
            if relators_equivalent(r, cand):
                del pool[i]
                break
        else:
            return False
    return True


# -- p-adic embedding -----------------------------------------------------------

@dataclass(frozen=True)
class PadicMatrixPair:
    k: int
    mod_p: int
    mod_l: int
    mat_p: tuple[tuple[int, int], tuple[int, int]]
    mat_l: tuple[tuple[int, int], tuple[int, int]]


def psi_matrix(x: Quat, c: int, d: int, modulus: int):
    x0, x1, x2, x3 = x
    return (
        ((x0 + x1 * c + x3 * d) % modulus, (-x1 * d + x2 + x3 * c) % modulus),
        ((-x1 * d - x2 + x3 * c) % modulus, (x0 - x1 * c - x3 * d) % modulus),
    )


def padic_embed(params, g: GroupElement, k: int) -> PadicMatrixPair:
    params = _params(params)
    cp = hensel_lift_cd(params.p, k)
    cl = hensel_lift_cd(params.l, k)
    return PadicMatrixPair(
        k, cp.modulus, cl.modulus,
        psi_matrix(g.rep, cp.c, cp.d, cp.modulus),
        psi_matrix(g.rep, cl.c, cl.d, cl.modulus),
    )


def mat2_mul(a, b, modulus: int):
    return tuple(
        tuple((a[i][0] * b[0][j] + a[i][1] * b[1][j]) % modulus for j in range(2))
        for i in range(2))


def mat2_det(a, modulus: int) -> int:
    return (a[0][0] * a[1][1] - a[0][1] * a[1][0]) % modulus


def projective_scalar(m1, m2, prime: int, modulus: int):
    """lambda with m1 = lambda * m2 (mod modulus), or None.

    m2 must have an entry prime to ``prime``; that entry fixes lambda.
    """
    for i, j in product(range(2), repeat=2):
        if m2[i][j] % prime:
            lam = m1[i][j] * pow(m2[i][j], -1, modulus) % modulus
            break
    else:
        raise ValueError("reference matrix is zero modulo the prime")
    ok = all((m1[i][j] - lam * m2[i][j]) % modulus == 0 for i, j in product(range(2), repeat=2))
    return lam if ok else None


def product_scalar(g: GroupElement, h: GroupElement) -> int:
    """Signed integer c with g.rep * h.rep = c * (g h).rep."""
    xy = Q.mul(g.rep, h.rep)
    rep = multiply(g, h).rep
    i = next(i for i in range(4) if rep[i])
    return xy[i] // rep[i]


def ball(params, radius: int) -> list[tuple[GroupElement, Word]]:
    """All elements of word length <= radius with a geodesic word, in
    breadth-first order (generator order within each layer)."""
    params = _params(params)
    gens = letters(params, "A") + letters(params, "B")
    start = identity(params)
    out = [(start, ())]
    seen = {start.rep}
    frontier = out[:]
    for _ in range(radius):
        nxt = []
        for g, w in frontier:
            for letter in gens:
                h = element_from_quat(params, Q.mul(g.rep, letter_quat(params, letter)))
                if h.rep not in seen and h.length == g.length + 1:
                    seen.add(h.rep)
                    nxt.append((h, w + (letter,)))
        out.extend(nxt)
        frontier = nxt
    return out
