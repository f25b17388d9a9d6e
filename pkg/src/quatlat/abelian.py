"""Maximal abelian subgroups: centralizer data, period-subgroup test,
commuting-complement search, rank certificates and period pairs."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, isqrt
from typing import Optional

from . import quat as Q
from .lattice import (
    GroupElement,
    LatticeParams,
    _params,
    ball,
    commutes,
    conjugate,
    element_from_quat,
    evaluate_word,
    format_word,
    parse_word,
)
from .numtheory import legendre, padic_sqrt, primitive_representations, solve_norm_equation, valuation
from .quat import Direction, Quat

Z2_PERIOD = "Z2_PERIOD"
Z2_NONPERIOD = "Z2_NONPERIOD"
Z_CERTIFIED = "Z_CERTIFIED"
UNDETERMINED = "UNDETERMINED"

DEFAULT_S_MAX = 12
DEFAULT_RADIUS = 2


@dataclass(frozen=True)
class CentralizerDescriptor:
    params: LatticeParams
    sample: GroupElement
    dir: Direction
    n: int
    leg_p: int
    leg_l: int
    purity: str


def describe_centralizer(params, g: GroupElement) -> CentralizerDescriptor:
    params = _params(params)
    if g.is_identity():
        raise ValueError("the identity has no proper centralizer")
    d = Q.direction(g.rep)
    n = d.n
    return CentralizerDescriptor(params, g, d, n, legendre(-n, params.p),
                                 legendre(-n, params.l), g.purity)


def is_period_eligible(desc: CentralizerDescriptor) -> bool:
    return desc.leg_p == 1 and desc.leg_l == 1


def translation_vector(g: GroupElement) -> tuple[int, int]:
    """Signed exponents of g at the split primes of its quadratic field.

    Writing the representative as x0 + z0*c with c^2 = -n, the component at
    q is v_q(x0 + z0 t) - v_q(x0 - z0 t) for a q-adic root t of -n, and 0
    when -n has no such root.  Commuting elements map additively, and the
    map is injective on each centralizer.
    """
    if g.is_identity():
        return (0, 0)
    d = Q.direction(g.rep)
    k = next(i for i in range(3) if d.vector[i])
    x0, z0 = g.rep.x0, g.rep[k + 1] // d.vector[k]
    out = []
    for q, e in ((g.params.p, g.r), (g.params.l, g.s)):
        if e == 0:
            out.append(0)
            continue
        mod = q ** (e + 1)
        t = padic_sqrt(-d.n, q, e + 1)
        if t is None:
            out.append(0)
            continue
        plus = valuation((x0 + z0 * t) % mod or mod, q)
        minus = valuation((x0 - z0 * t) % mod or mod, q)
        if plus + minus != e:
            raise AssertionError("q-adic valuations do not add up to the norm exponent")
        out.append(plus - minus)
    return tuple(out)


def independent(g: GroupElement, h: GroupElement) -> bool:
    """True iff commuting g, h generate a rank-2 subgroup."""
    if not commutes(g, h):
        raise ValueError("independence is only defined for commuting elements")
    u, v = translation_vector(g), translation_vector(h)
    return u[0] * v[1] - u[1] * v[0] != 0


def find_commuting_complement(params, g: GroupElement, s_max: int = DEFAULT_S_MAX
                              ) -> Optional[GroupElement]:
    """A commuting element independent of g with a pure p- or l-power norm."""
    params = _params(params)
    if g.is_identity():
        raise ValueError("the identity has no complement")
    d = Q.direction(g.rep)
    sols = []
    for q in (params.p, params.l):
        sols.extend(solve_norm_equation(d.n, q, s_max, d))
    sols.sort(key=lambda t: (t.s, t.q != params.p, t.z0, abs(t.y0), t.y0 < 0))
    for sol in sols:
        h = element_from_quat(params, sol.quaternion(d))
        if independent(g, h):
            return h
    return None


@dataclass(frozen=True)
class ClassificationVerdict:
    kind: str
    n: int
    leg_p: int
    leg_l: int
    certificate: dict = field(hash=False)

    def to_json(self) -> dict:
        return {"kind": self.kind, "n": self.n,
                "legendre": {"p": self.leg_p, "l": self.leg_l},
                "certificate": self.certificate}


def _pair_certificate(g: GroupElement, h: GroupElement) -> dict:
    return {"type": "independent_pair", "element": list(g.rep), "complement": list(h.rep),
            "direction": list(Q.direction(h.rep).vector),
            "translation_vectors": [list(translation_vector(g)), list(translation_vector(h))]}


def classify(params, g: GroupElement, s_max: int = DEFAULT_S_MAX,
             radius: int = DEFAULT_RADIUS) -> ClassificationVerdict:
    """Decide whether the maximal abelian subgroup containing g is a period
    subgroup, some other Z^2, or Z, within the given search bounds."""
    params = _params(params)
    desc = describe_centralizer(params, g)
    base = dict(n=desc.n, leg_p=desc.leg_p, leg_l=desc.leg_l)

    comp = find_commuting_complement(params, g, s_max)
    if is_period_eligible(desc):
        cert = _pair_certificate(g, comp) if comp else {"type": "period_criterion"}
        return ClassificationVerdict(Z2_PERIOD, certificate=cert, **base)
    if comp is not None:
        return ClassificationVerdict(Z2_NONPERIOD, certificate=_pair_certificate(g, comp), **base)

    for conj_by, word in ball(params, radius):
        c = conjugate(conj_by, g)
        cd = describe_centralizer(params, c)
        common = {"conjugator": format_word(word), "conjugate": list(c.rep), "n": cd.n}
        if cd.purity == "pure-p" and (cd.leg_p, cd.leg_l) == (1, -1) or \
                cd.purity == "pure-l" and (cd.leg_l, cd.leg_p) == (1, -1):
            cert = {"type": "corollary4", "purity": cd.purity,
                    "legendre": {"p": cd.leg_p, "l": cd.leg_l}, **common}
            return ClassificationVerdict(Z_CERTIFIED, certificate=cert, **base)
        if cd.purity == "mixed":
            for q in (params.p, params.l):
                v = valuation(cd.n, q)
                if v % 2:
                    cert = {"type": "odd_valuation", "prime": q, "valuation": v, **common}
                    return ClassificationVerdict(Z_CERTIFIED, certificate=cert, **base)
    return ClassificationVerdict(
        UNDETERMINED, certificate={"type": "exhausted", "s_max": s_max, "radius": radius}, **base)


def check_certificate(params, g: GroupElement, verdict: ClassificationVerdict) -> bool:
    """Re-derive the evidence attached to a verdict from scratch."""
    params = _params(params)
    cert = verdict.certificate
    kind = cert["type"]
    if verdict.kind == Z2_PERIOD and (verdict.leg_p, verdict.leg_l) != (1, 1):
        return False
    if kind == "independent_pair":
        h = element_from_quat(params, Quat(*cert["complement"]))
        x, y = g.rep, h.rep
        return Q.mul(x, y) == Q.mul(y, x) and independent(g, h)
    if kind in ("corollary4", "odd_valuation"):
        w = evaluate_word(params, parse_word(cert["conjugator"]))
        c = conjugate(w, g)
        if list(c.rep) != cert["conjugate"]:
            return False
        cd = describe_centralizer(params, c)
        if kind == "corollary4":
            if cd.purity == "pure-p":
                return (cd.leg_p, cd.leg_l) == (1, -1)
            return cd.purity == "pure-l" and (cd.leg_l, cd.leg_p) == (1, -1)
        return cd.purity == "mixed" and valuation(cd.n, cert["prime"]) % 2 == 1
    return kind in ("period_criterion", "exhausted")


# -- period pairs ----------------------------------------------------------------

@dataclass(frozen=True)
class PeriodPair:
    x: GroupElement
    y: GroupElement
    r: int
    dir: Direction


def directions_of_norm(n: int) -> list[Direction]:
    """Primitive sign-normalized (c1, c2, c3) with c1^2 + c2^2 + c3^2 = n,
    in descending lexicographic order."""
    out = set()
    b = isqrt(n)
    for c1 in range(0, b + 1):
        for c2 in range(-b, b + 1):
            rest = n - c1 * c1 - c2 * c2
            if rest < 0:
                continue
            c3 = isqrt(rest)
            if c3 * c3 != rest:
                continue
            for s3 in {c3, -c3}:
                if gcd(gcd(c1, c2), s3) == 1:
                    out.add(Q.direction(Quat(0, c1, c2, s3)))
    return sorted(out, reverse=True)


def _first_parity_rep(reps, d: Direction) -> Optional[Quat]:
    for y0, z0 in sorted(reps, key=lambda t: (t[1], abs(t[0]), t[0] < 0)):
        x = Quat(y0, z0 * d.c1, z0 * d.c2, z0 * d.c3)
        if Q.satisfies_parity(x):
            return x
    return None


def find_period_pair(params, r_max: int) -> Optional[PeriodPair]:
    """Commuting x, y with |x|^2 = p^r, |y|^2 = l^r and both Legendre
    symbols 1.  Smallest r wins; ties go to the smallest n, then to the
    first direction in descending order."""
    params = _params(params)
    p, l = params.p, params.l
    dir_cache: dict[int, list[Direction]] = {}
    for r in range(1, r_max + 1):
        # z0 >= 1 forces n <= min(p, l)^r
        for n in range(1, min(p, l) ** r + 1):
            if legendre(-n, p) != 1 or legendre(-n, l) != 1:
                continue
            reps_p = primitive_representations(n, p, r)
            if not reps_p:
                continue
            reps_l = primitive_representations(n, l, r)
            if not reps_l:
                continue
            if n not in dir_cache:
                dir_cache[n] = directions_of_norm(n)
            for d in dir_cache[n]:
                xq = _first_parity_rep(reps_p, d)
                yq = _first_parity_rep(reps_l, d)
                if xq is None or yq is None:
                    continue
                if Q.mul(xq, yq) != Q.mul(yq, xq):
                    raise AssertionError("same-direction quaternions failed to commute")
                return PeriodPair(element_from_quat(params, xq),
                                  element_from_quat(params, yq), r, d)
    return None


def period_pair_ok(params, pair: PeriodPair) -> bool:
    params = _params(params)
    x, y = pair.x.rep, pair.y.rep
    n = pair.dir.n
    return (Q.mul(x, y) == Q.mul(y, x)
            and commutes(pair.x, pair.y)
            and Q.norm2(x) == params.p ** pair.r
            and Q.norm2(y) == params.l ** pair.r
            and Q.direction(x) == pair.dir == Q.direction(y)
            and legendre(-n, params.p) == 1 and legendre(-n, params.l) == 1)
