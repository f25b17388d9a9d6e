"""Sampled invariant checks shared by ``quatlat verify`` and the test suite.

Every check takes a seeded ``random.Random`` and a sample count and
returns a :class:`CheckResult`.  Failures carry the first counterexample.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from importlib import resources
from itertools import product
from math import gcd
from pathlib import Path
from typing import Callable, Optional

from . import quat as Q
from .abelian import (
    Z2_NONPERIOD,
    Z2_PERIOD,
    Z_CERTIFIED,
    check_certificate,
    classify,
    describe_centralizer,
    find_commuting_complement,
    find_period_pair,
    period_pair_ok,
)
from .lattice import (
    GroupElement,
    LatticeParams,
    ball,
    commutes,
    conjugate,
    derive_presentation,
    dickson_factor,
    enumerate_generators,
    evaluate_word,
    free_reduce,
    identity,
    letters,
    mat2_det,
    mat2_mul,
    multiply,
    normal_form,
    padic_embed,
    product_scalar,
    parse_word,
    power,
    projective_scalar,
)
from .numtheory import (
    brute_force_norm_equation,
    hensel_lift_cd,
    legendre,
    solve_norm_equation,
    valuation,
)
from .quat import Quat
from .square_complex import (
    build_corner_table,
    displacement,
    grid_corner_paths_agree,
    grid_relations_hold,
    minset_region,
    render,
    tile_apartment,
)

P35 = LatticeParams(3, 5)
APARTMENT_ALPHA = "a1,a2',a1,a1"
APARTMENT_BETA = "b3,b2',b3',b1"
GOLDEN_PRESENTATION = "presentation_3_5.json"
GOLDEN_APARTMENT = "apartment_3_5_8x8.svg"


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f": {self.detail}" if self.detail else "")


# -- samplers --------------------------------------------------------------------

def random_quat(rng: random.Random, bound: int) -> Quat:
    return Quat(*(rng.randint(-bound, bound) for _ in range(4)))


def random_word(rng: random.Random, params, max_len: int, families: str = "AB"):
    pool = [g for f in families for g in letters(params, f)]
    n = rng.randint(0, max_len)
    return free_reduce(rng.choice(pool) for _ in range(n))


def random_element(rng, params, max_len: int, families: str = "AB") -> GroupElement:
    return evaluate_word(params, random_word(rng, params, max_len, families))


def random_nontrivial(rng, params, max_len: int, families: str = "AB") -> GroupElement:
    while True:
        g = random_element(rng, params, max_len, families)
        if not g.is_identity():
            return g


def _commuting_classes(params, radius: int) -> list[list[GroupElement]]:
    """Elements of the ball grouped by direction, classes of size >= 2."""
    groups: dict = {}
    for g, _ in ball(params, radius):
        if not g.is_identity():
            groups.setdefault(Q.direction(g.rep), []).append(g)
    return [v for _, v in sorted(groups.items()) if len(v) > 1]


def _fail(name, detail) -> CheckResult:
    return CheckResult(name, False, detail)


# -- quaternion algebra ----------------------------------------------------------

def check_quat_algebra(rng, samples) -> CheckResult:
    name = "quaternion algebra identities"
    for _ in range(samples):
        x, y = random_quat(rng, 10**6), random_quat(rng, 10**6)
        xy = Q.mul(x, y)
        if Q.norm2(xy) != Q.norm2(x) * Q.norm2(y):
            return _fail(name, f"norm multiplicativity at {x}, {y}")
        if Q.conj(xy) != Q.mul(Q.conj(y), Q.conj(x)):
            return _fail(name, f"conjugate reversal at {x}, {y}")
        if Q.re(xy) != Q.re(Q.mul(y, x)):
            return _fail(name, f"real part symmetry at {x}, {y}")
    return CheckResult(name, True, f"{samples} pairs")


def check_m_sandwich(rng, samples) -> CheckResult:
    name = "m(x y conj(x)) = |x|^4 m(y)"
    for _ in range(samples):
        x, y = random_quat(rng, 10**6), random_quat(rng, 10**6)
        lhs = Q.m_value(Q.mul(Q.mul(x, y), Q.conj(x)))
        if lhs != Q.norm2(x) ** 2 * Q.m_value(y):
            return _fail(name, f"at {x}, {y}")
    return CheckResult(name, True, f"{samples} pairs")


def check_theta(rng, samples) -> CheckResult:
    name = "theta multiplicative, orthogonal, scale invariant"
    for _ in range(samples):
        x, y = random_quat(rng, 50), random_quat(rng, 50)
        if Q.norm2(x) == 0 or Q.norm2(y) == 0:
            continue
        tx = Q.theta(x)
        if Q.mat_mul(tx, Q.theta(y)) != Q.theta(Q.mul(x, y)):
            return _fail(name, f"multiplicativity at {x}, {y}")
        if Q.mat_det(tx) != 1 or Q.theta(x.scale(-3)) != tx:
            return _fail(name, f"det or scaling at {x}")
        tt = tuple(tuple(tx[c][r] for c in range(3)) for r in range(3))
        if Q.mat_mul(tx, tt) != Q.theta(Q.ONE):
            return _fail(name, f"orthogonality at {x}")
        if not x.is_real() and Q.mat_apply(tx, x[1:]) != tuple(x[1:]):
            return _fail(name, f"axis not fixed at {x}")
    return CheckResult(name, True, f"{samples} pairs")


def check_primitive(rng, samples) -> CheckResult:
    name = "primitive idempotent and sign stable"
    for _ in range(samples):
        x = random_quat(rng, 1000).scale(rng.randint(1, 30))
        if Q.norm2(x) == 0:
            continue
        px = Q.primitive(x)
        if Q.primitive(px) != px or Q.primitive(-x) != px or Q.content(px) != 1:
            return _fail(name, f"at {x}")
    return CheckResult(name, True, f"{samples} samples")


def check_commutation_direction(rng, samples) -> CheckResult:
    """Half the pairs are built to commute (y = a + b x), half are random."""
    name = "commute iff equal direction"
    hits = 0
    for t in range(samples):
        x = random_quat(rng, 100)
        if t % 2:
            a, b = rng.randint(-50, 50), rng.choice([k for k in range(-5, 6) if k])
            y = Quat(a, 0, 0, 0) + x.scale(b)
        else:
            y = random_quat(rng, 100)
        if x.is_real() or y.is_real():
            continue
        same = Q.direction(x) == Q.direction(y)
        hits += same
        if (Q.mul(x, y) == Q.mul(y, x)) != same:
            return _fail(name, f"at {x}, {y}")
    return CheckResult(name, True, f"{samples} pairs, {hits} commuting")


# -- number theory ---------------------------------------------------------------

def check_legendre(rng, samples) -> CheckResult:
    name = "Legendre symbol vs residue search and sign identity"
    for p in (3, 5, 7, 11, 13):
        squares = {x * x % p for x in range(1, p)}
        for a in range(-50, 51):
            want = 0 if a % p == 0 else (1 if a % p in squares else -1)
            if legendre(a, p) != want:
                return _fail(name, f"({a}/{p})")
        for n in range(1, 101):
            if n % p == 0:
                continue
            sign = 1 if p % 4 == 1 else -1
            if legendre(-n, p) != sign * legendre(n, p):
                return _fail(name, f"sign identity n={n} p={p}")
    return CheckResult(name, True)


def check_hensel(rng, samples) -> CheckResult:
    name = "Hensel lift coherence"
    for p in (3, 5, 7, 11, 13, 17):
        for k in range(1, 10):
            cd = hensel_lift_cd(p, k)
            if (cd.c ** 2 + cd.d ** 2 + 1) % cd.modulus:
                return _fail(name, f"congruence p={p} k={k}")
            if k > 1:
                prev = hensel_lift_cd(p, k - 1)
                if (cd.c % prev.modulus, cd.d % prev.modulus) != (prev.c, prev.d):
                    return _fail(name, f"coherence p={p} k={k}")
    return CheckResult(name, True)


def check_norm_equation(rng, samples) -> CheckResult:
    name = "norm-equation solver vs brute force"
    for q in (3, 5, 7, 11, 13):
        for n in range(1, 60):
            fast = [(t.s, t.z0, t.y0) for t in solve_norm_equation(n, q, 6)]
            if fast != brute_force_norm_equation(n, q, 6):
                return _fail(name, f"n={n} q={q}")
            if any(y * y + n * z * z != q ** s for s, z, y in fast):
                return _fail(name, f"equation n={n} q={q}")
    return CheckResult(name, True)


# -- lattice ---------------------------------------------------------------------

def check_generator_counts(rng, samples) -> CheckResult:
    name = "generator counts p+1"
    for p, l in ((3, 5), (7, 11), (13, 17), (29, 37), (41, 3)):
        at, bt = enumerate_generators(LatticeParams(p, l))
        if len(at) != p + 1 or len(bt) != l + 1:
            return _fail(name, f"(p,l)=({p},{l})")
    return CheckResult(name, True)


def check_free_group(rng, samples) -> CheckResult:
    name = "A-words of length <= 6 are nontrivial"
    gens = letters(P35, "A")
    count = 0
    frontier = [()]
    for _ in range(6):
        nxt = []
        for w in frontier:
            for g in gens:
                if w and w[-1] == g.inverse():
                    continue
                nxt.append(w + (g,))
        for w in nxt:
            count += 1
            if evaluate_word(P35, w).is_identity():
                return _fail(name, f"word {w}")
        frontier = nxt
    return CheckResult(name, True, f"{count} words")


def check_length_additivity(rng, samples) -> CheckResult:
    name = "length additive across families"
    for _ in range(samples):
        a = random_element(rng, P35, 3, "A")
        b = random_element(rng, P35, 3, "B")
        if multiply(a, b).length != a.length + b.length:
            return _fail(name, f"{a} {b}")
    return CheckResult(name, True, f"{samples} pairs")


def check_square_length_equivalence(rng, samples, params=P35) -> CheckResult:
    """p does not divide n <=> l(g^2) = 2 l(g) <=> (-n/p) = 1, inside each factor."""
    name = "three-way equivalence on Gamma_p (l<=3) and Gamma_l (l<=2)"
    checked = 0
    for family, radius in (("A", 3), ("B", 2)):
        q = params.prime(family)
        for g, _ in _family_ball(params, family, radius):
            if g.is_identity():
                continue
            n = Q.direction(g.rep).n
            a = n % q != 0
            b = multiply(g, g).length == 2 * g.length
            c = legendre(-n, q) == 1
            checked += 1
            if not (a == b == c):
                return _fail(name, f"{g}: {a} {b} {c}")
    return CheckResult(name, True, f"{checked} elements")


def _family_ball(params, family, radius):
    return [(g, w) for g, w in ball(params, radius) if all(x.family == family for x in w)]


def check_normal_form(rng, samples) -> CheckResult:
    name = "normal-form round trip"
    for _ in range(samples):
        g = random_element(rng, P35, 8)
        for order in ("BA", "AB"):
            w = normal_form(g, order)
            if evaluate_word(P35, w) != g or len(w) != g.length:
                return _fail(name, f"{g} order {order}")
    return CheckResult(name, True, f"{samples} words")


def check_commutative_transitivity(rng, samples) -> CheckResult:
    name = "commutative transitivity"
    classes = _commuting_classes(P35, 3)
    premises = 0
    for _ in range(samples):
        cls = rng.choice(classes)
        g2 = rng.choice(cls)
        g1 = rng.choice(cls) if rng.random() < 0.7 else random_nontrivial(rng, P35, 3)
        g3 = rng.choice(cls) if rng.random() < 0.7 else random_nontrivial(rng, P35, 3)
        if commutes(g1, g2) and commutes(g2, g3):
            premises += 1
            if not commutes(g1, g3):
                return _fail(name, f"{g1} {g2} {g3}")
    return CheckResult(name, True, f"{samples} triples, {premises} with premise")


def check_conjugate_commutation(rng, samples) -> CheckResult:
    name = "b a b^-1 commutes with a iff b does"
    classes = _commuting_classes(P35, 3)
    for _ in range(samples):
        cls = rng.choice(classes)
        a = rng.choice(cls)
        b = rng.choice(cls) if rng.random() < 0.5 else random_element(rng, P35, 4)
        if commutes(conjugate(b, a), a) != commutes(b, a):
            return _fail(name, f"a={a} b={b}")
    return CheckResult(name, True, f"{samples} pairs")


def check_csa(rng, samples) -> CheckResult:
    name = "no power of a is normalized by g outside Z(a)"
    tried = 0
    for _ in range(samples):
        a = random_nontrivial(rng, P35, 3)
        g = random_element(rng, P35, 3)
        if commutes(g, a):
            continue
        tried += 1
        ak = a
        for k in range(1, 7):
            if commutes(conjugate(g, ak), a):
                return _fail(name, f"a={a} g={g} k={k}")
            ak = multiply(ak, a)
    return CheckResult(name, True, f"{tried} pairs")


def check_valuation_parity(rng, samples) -> CheckResult:
    name = "conjugation keeps valuation parity of n"
    for _ in range(samples):
        g = random_nontrivial(rng, P35, 4)
        h = random_element(rng, P35, 3)
        n0 = Q.direction(g.rep).n
        n1 = Q.direction(conjugate(h, g).rep).n
        for q in (P35.p, P35.l):
            if (valuation(n0, q) - valuation(n1, q)) % 2:
                return _fail(name, f"g={g} h={h} q={q}")
    return CheckResult(name, True, f"{samples} pairs")


def check_padic_embedding(rng, samples, k: int = 8) -> CheckResult:
    name = f"p-adic embedding, k={k}"
    for _ in range(samples):
        g = random_element(rng, P35, 4)
        h = random_element(rng, P35, 4)
        eg, eh, egh = padic_embed(P35, g, k), padic_embed(P35, h, k), padic_embed(P35, multiply(g, h), k)
        for e, x in ((eg, g), (eh, h)):
            n = Q.norm2(x.rep)
            if mat2_det(e.mat_p, e.mod_p) != n % e.mod_p or mat2_det(e.mat_l, e.mod_l) != n % e.mod_l:
                return _fail(name, f"det at {x}")
        for prime, mod, attr in ((P35.p, eg.mod_p, "mat_p"), (P35.l, eg.mod_l, "mat_l")):
            prod = mat2_mul(getattr(eg, attr), getattr(eh, attr), mod)
            lam = projective_scalar(prod, getattr(egh, attr), prime, mod)
            if lam is None or lam != product_scalar(g, h) % mod:
                return _fail(name, f"not proportional at {g}, {h} mod {prime}^{k}")
    return CheckResult(name, True, f"{samples} pairs")


# -- presentation and square complex --------------------------------------------

def check_dickson(rng, samples) -> CheckResult:
    name = "Dickson factorization unique for norm p*l"
    total = 0
    for p, l in ((3, 5), (3, 7), (5, 7)):
        params = LatticeParams(p, l)
        at, bt = enumerate_generators(params)
        prods = {}
        for z, y in product(at, bt):
            prods.setdefault(Q.primitive(Q.mul(z, y)), []).append((z, y))
        rev = {}
        for y, z in product(bt, at):
            rev.setdefault(Q.primitive(Q.mul(y, z)), []).append((y, z))
        if set(prods) != set(rev) or any(len(v) != 1 for v in prods.values()) \
                or any(len(v) != 1 for v in rev.values()):
            return _fail(name, f"({p},{l}) products not unique")
        for x in prods:
            total += 1
            z, y, yt, zt = dickson_factor(params, x)
            if [(z, y)] != prods[x] or [(yt, zt)] != rev[x]:
                return _fail(name, f"({p},{l}) at {x}")
    return CheckResult(name, True, f"{total} elements")


def check_corner_tables(rng, samples) -> CheckResult:
    name = "corner tables bijective"
    for p, l in ((3, 5), (3, 7), (5, 7)):
        pres = derive_presentation(LatticeParams(p, l))
        table = build_corner_table(pres)
        n = (p + 1) * (l + 1)
        if any(len(m) != n for m in (table.bottom_right, table.bottom_left,
                                     table.top_left, table.top_right)):
            return _fail(name, f"({p},{l})")
    return CheckResult(name, True)


def check_tilings(rng, samples) -> CheckResult:
    """Period pairs and their normal forms tile consistent apartments."""
    name = "period-pair apartments consistent"
    for p, l in ((3, 5), (3, 7), (5, 7)):
        params = LatticeParams(p, l)
        pair = find_period_pair(params, 12)
        if pair is None or not period_pair_ok(params, pair):
            return _fail(name, f"no period pair for ({p},{l})")
        pres = derive_presentation(params)
        alpha, beta = normal_form(pair.x), normal_form(pair.y)
        for periods in (1, 2, 3):
            grid = tile_apartment(pres, alpha, beta, periods * len(alpha), periods * len(beta))
            if not grid_relations_hold(params, grid) or not grid_corner_paths_agree(params, grid):
                return _fail(name, f"({p},{l}) periods={periods}")
    return CheckResult(name, True)


def check_minset_axis(rng, samples) -> CheckResult:
    name = "elements with l(g^2) = 2 l(g) have an axis through O"
    pres = derive_presentation(P35)
    tried = 0
    for _ in range(max(1, samples // 20)):
        g = random_nontrivial(rng, P35, 3)
        if multiply(g, g).length != 2 * g.length:
            continue
        tried += 1
        reg = minset_region(pres, g, 2)
        if reg.displacement != g.length or displacement(g, identity(P35)) != reg.displacement:
            return _fail(name, f"{g}")
    return CheckResult(name, True, f"{tried} elements")


def check_classification(rng, samples) -> CheckResult:
    """Coprime mixed elements are period, Legendre necessity and conjugation stability."""
    name = "classification consistency"
    budget = max(1, samples // 5)
    for _ in range(budget):
        g = random_nontrivial(rng, P35, 3)
        h = random_element(rng, P35, 2)
        v1, v2 = classify(P35, g), classify(P35, conjugate(h, g))
        for x, v in ((g, v1), (conjugate(h, g), v2)):
            if not check_certificate(P35, x, v):
                return _fail(name, f"certificate of {x}")
            if v.kind == Z2_PERIOD and (v.leg_p, v.leg_l) != (1, 1):
                return _fail(name, f"period verdict without Legendre condition at {x}")
            n = Q.direction(x.rep).n
            if x.purity == "mixed" and gcd(n, P35.p * P35.l) == 1 and v.kind != Z2_PERIOD:
                return _fail(name, f"mixed {x} with gcd(n, pl) = 1 is not period")
        rank2 = {Z2_PERIOD, Z2_NONPERIOD}
        if {v1.kind, v2.kind} & rank2 and Z_CERTIFIED in (v1.kind, v2.kind):
            return _fail(name, f"contradictory verdicts for {g} and its conjugate by {h}")
        d = describe_centralizer(P35, g)
        comp = find_commuting_complement(P35, g, 6)
        for other in filter(None, (power(g, 2), comp)):
            if describe_centralizer(P35, other).n != d.n:
                return _fail(name, f"n not well defined at {g}")
    return CheckResult(name, True, f"{budget} pairs")


def _golden_bytes(golden_dir: Optional[Path], fname: str) -> bytes:
    if golden_dir is None:
        return resources.files("quatlat").joinpath("data/golden/v1").joinpath(fname).read_bytes()
    return Path(golden_dir, fname).read_bytes()


def presentation_golden_text() -> str:
    return derive_presentation(P35).dumps()


def apartment_svg() -> str:
    grid = tile_apartment(derive_presentation(P35), parse_word(APARTMENT_ALPHA),
                          parse_word(APARTMENT_BETA), 8, 8)
    return render(grid, "svg")


def check_golden(golden_dir: Optional[Path] = None) -> list[CheckResult]:
    out = []
    for fname, make in ((GOLDEN_PRESENTATION, presentation_golden_text), (GOLDEN_APARTMENT, apartment_svg)):
        name = f"golden {fname}"
        try:
            want = _golden_bytes(golden_dir, fname)
        except OSError as exc:
            out.append(_fail(name, f"unreadable: {exc}"))
            continue
        same = make().encode() == want
        out.append(CheckResult(name, same, "" if same else "output differs from golden file"))
    return out


CHECKS: list[Callable[[random.Random, int], CheckResult]] = [
    check_quat_algebra, check_m_sandwich, check_theta, check_primitive,
    check_commutation_direction, check_legendre, check_hensel, check_norm_equation,
    check_generator_counts, check_free_group, check_length_additivity, check_square_length_equivalence,
    check_normal_form, check_commutative_transitivity, check_conjugate_commutation,
    check_csa, check_valuation_parity, check_padic_embedding, check_dickson,
    check_corner_tables, check_tilings, check_minset_axis, check_classification,
]


def run_all(seed: int, samples: int, golden_dir: Optional[Path] = None) -> list[CheckResult]:
    results = []
    for check in CHECKS:
        rng = random.Random(f"{seed}:{check.__name__}")
        try:
            results.append(check(rng, samples))
        except Exception as exc:  # a crash is a failed check, not a crashed report
            results.append(_fail(check.__name__, f"{type(exc).__name__}: {exc}"))
    results.extend(check_golden(golden_dir))
    return results
