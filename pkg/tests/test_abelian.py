import random
from math import gcd

import pytest

from quatlat import quat as Q
from quatlat.abelian import (
    UNDETERMINED,
    Z2_NONPERIOD,
    Z2_PERIOD,
    Z_CERTIFIED,
    check_certificate,
    classify,
    describe_centralizer,
    directions_of_norm,
    find_commuting_complement,
    find_period_pair,
    independent,
    is_period_eligible,
    period_pair_ok,
    translation_vector,
)
from quatlat.checks import random_nontrivial, random_element
from quatlat.lattice import (
    LatticeParams,
    conjugate,
    element_from_quat,
    evaluate_word,
    identity,
    multiply,
    parse_word,
    power,
)
from quatlat.numtheory import valuation
from quatlat.quat import Quat

P = LatticeParams(3, 5)


def el(word):
    return evaluate_word(P, parse_word(word))


EX6 = Quat(-15, 10, 2, 20)


def test_describe_centralizer():
    d = describe_centralizer(P, el("a1"))
    assert (d.n, d.leg_p, d.leg_l, d.purity) == (2, 1, -1, "pure-p")
    d = describe_centralizer(P, el("a2,b3"))
    assert d.n == 6 and d.purity == "mixed"
    d = describe_centralizer(P, element_from_quat(P, EX6))
    assert (d.n, d.leg_p, d.leg_l) == (126, 0, 1)
    with pytest.raises(ValueError):
        describe_centralizer(P, identity(P))


def test_period_eligibility():
    assert is_period_eligible(describe_centralizer(P, el("a1,a2',a1,a1")))
    assert not is_period_eligible(describe_centralizer(P, el("a1")))
    assert not is_period_eligible(describe_centralizer(P, element_from_quat(P, Quat(23, 0, 14, -2))))


def test_translation_vectors_are_additive():
    g = el("a1,a2',a1,a1")
    h = find_commuting_complement(P, g)
    u, v = translation_vector(g), translation_vector(h)
    w = translation_vector(multiply(power(g, 2), power(h, -3)))
    assert w == (2 * u[0] - 3 * v[0], 2 * u[1] - 3 * v[1])


def test_glide_reflection_is_not_independent_of_its_square():
    # a2 b3 and its square b2 b3 have bidegrees (1,1) and (0,2) yet lie in one cyclic group
    g = el("a2,b3")
    sq = multiply(g, g)
    assert (sq.r, sq.s) == (0, 2)
    assert not independent(g, sq)


def test_complement_examples():
    g = el("a1,a2',a1,a1")
    h = find_commuting_complement(P, g)
    assert h.rep == Quat(11, 18, 6, -12) and Q.norm2(h.rep) == 5 ** 4
    assert Q.direction(h.rep) == (3, 1, -2)
    assert find_commuting_complement(P, el("a1"), 8) is None


def test_classification_examples():
    cases = [("a1", Z_CERTIFIED, "corollary4"),
             ("a1,a2',a1,a1", Z2_PERIOD, "independent_pair"),
             ("a2,b3", Z_CERTIFIED, "odd_valuation"),
             ("b1,a1,b1'", Z_CERTIFIED, "corollary4")]
    for word, kind, cert in cases:
        v = classify(P, el(word))
        assert (v.kind, v.certificate["type"]) == (kind, cert), word
        assert check_certificate(P, el(word), v)
    v = classify(P, el("b1,a1,b1'"), radius=1)
    assert v.kind == Z_CERTIFIED and v.certificate["conjugator"] == "b1'"
    g = element_from_quat(P, EX6)
    v = classify(P, g)
    assert v.kind == Z2_NONPERIOD and v.certificate["direction"] == [5, 1, 10]
    assert check_certificate(P, g, v)
    assert v.to_json()["legendre"] == {"p": 0, "l": 1}


def test_undetermined_records_bounds():
    v = classify(P, el("b1,a1,b1'"), radius=0)
    assert v.kind == UNDETERMINED
    assert v.certificate == {"type": "exhausted", "s_max": 12, "radius": 0}


def test_tampered_certificate_fails():
    g = el("a2,b3")
    v = classify(P, g)
    v.certificate["prime"] = 5
    assert not check_certificate(P, g, v)


def test_classification_properties():
    rng = random.Random(17)
    for _ in range(60):
        g = random_nontrivial(rng, P, 3)
        h = random_element(rng, P, 2)
        v1, v2 = classify(P, g), classify(P, conjugate(h, g))
        if v1.kind == Z2_PERIOD:
            assert (v1.leg_p, v1.leg_l) == (1, 1)
        n = Q.direction(g.rep).n
        if g.purity == "mixed" and gcd(n, 15) == 1:
            assert v1.kind == Z2_PERIOD
        kinds = {v1.kind, v2.kind}
        assert not (kinds & {Z2_PERIOD, Z2_NONPERIOD} and Z_CERTIFIED in kinds)
        m = Q.direction(conjugate(h, g).rep).n
        for q in (3, 5):
            assert (valuation(n, q) - valuation(m, q)) % 2 == 0


def test_directions_of_norm():
    ds = directions_of_norm(14)
    assert ds == sorted(ds, reverse=True) and (3, 1, -2) in ds and (3, 2, 1) in ds
    assert all(d.n == 14 for d in ds)
    # brute-force oracle: all primitive vectors of norm 14 up to sign
    from itertools import product
    vecs = {Q.direction(Quat(0, *v)) for v in product(range(-4, 5), repeat=3)
            if sum(c * c for c in v) == 14 and gcd(gcd(*v[:2]), v[2]) == 1}
    assert set(ds) == vecs


@pytest.mark.parametrize("p,l", [(3, 5), (3, 7), (5, 7), (3, 11), (7, 11)])
def test_period_pairs(p, l):
    params = LatticeParams(p, l)
    pair = find_period_pair(params, 12)
    assert pair is not None and pair.r <= 12 and period_pair_ok(params, pair)
    assert Q.mul(pair.x.rep, pair.y.rep) == Q.mul(pair.y.rep, pair.x.rep)


def test_period_pair_3_5_and_5_13():
    pair = find_period_pair(P, 12)
    assert (pair.r, pair.dir.n) == (4, 14)
    assert find_period_pair(P, 3) is None
    pair = find_period_pair(LatticeParams(5, 13), 1)
    assert pair is not None and pair.r == 1
