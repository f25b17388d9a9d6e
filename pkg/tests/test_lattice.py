import json
import random
from itertools import product

import pytest

from quatlat import quat as Q
from quatlat.checks import random_element, random_nontrivial
from quatlat.lattice import (
    Generator,
    LatticeParams,
    NotInGammaError,
    Presentation,
    choose_generator_representatives,
    commutes,
    conjugate,
    derive_presentation,
    dickson_factor,
    element_from_quat,
    enumerate_generators,
    evaluate_word,
    format_word,
    free_reduce,
    identity,
    invert,
    letter_element,
    mat2_det,
    mat2_mul,
    multiply,
    normal_form,
    padic_embed,
    product_scalar,
    parse_word,
    peel,
    power,
    projective_scalar,
    same_relator_set,
    tree_coordinates,
)
from quatlat.quat import Quat

P = LatticeParams(3, 5)
W = parse_word


def brute_generators(q):
    """Norm-q quaternions with x0 > 0 and the parity rule, by a plain box search."""
    b = int(q ** 0.5) + 1
    return sorted(
        (Quat(*x) for x in product(range(1, b + 1), *[range(-b, b + 1)] * 3)
         if sum(v * v for v in x) == q and Q.satisfies_parity(Quat(*x))),
        key=lambda x: x[1:], reverse=True)


def test_params_validation():
    with pytest.raises(ValueError):
        LatticeParams(3, 3)
    with pytest.raises(ValueError):
        LatticeParams(2, 5)
    with pytest.raises(ValueError):
        LatticeParams(9, 5)


def test_generators_3_5():
    at, bt = enumerate_generators(P)
    assert set(at) == {Quat(1, 0, 1, 1), Quat(1, 0, 1, -1), Quat(1, 0, -1, 1), Quat(1, 0, -1, -1)}
    assert set(bt) == {Quat(1, s * 2 * (i == 0), s * 2 * (i == 1), s * 2 * (i == 2))
                       for i in range(3) for s in (1, -1)}
    assert choose_generator_representatives(at) == [Quat(1, 0, 1, 1), Quat(1, 0, 1, -1)]
    assert choose_generator_representatives(bt) == [Quat(1, 2), Quat(1, 0, 2), Quat(1, 0, 0, 2)]


@pytest.mark.parametrize("p,l", [(3, 5), (7, 11), (13, 17), (29, 37), (41, 3)])
def test_generator_counts_and_oracle(p, l):
    at, bt = enumerate_generators(LatticeParams(p, l))
    assert len(at) == p + 1 and len(bt) == l + 1
    assert at == brute_generators(p) and bt == brute_generators(l)


def test_p7_contains_example():
    at, _ = enumerate_generators(LatticeParams(7, 3))
    assert Quat(1, 2, 1, 1) in at and len(at) == 8


def test_element_from_quat():
    g = element_from_quat(P, Quat(115, 0, 70, -10))
    assert g.rep == Quat(23, 0, 14, -2) and (g.r, g.s) == (6, 0) and g.length == 6
    assert element_from_quat(P, Quat(-7)).is_identity()
    with pytest.raises(NotInGammaError, match="norm"):
        element_from_quat(P, Quat(1, 1))
    with pytest.raises(NotInGammaError, match="parity"):
        element_from_quat(P, Quat(0, 1, 1, 1))  # norm 3, x0 even


def test_products_from_examples():
    assert evaluate_word(P, W("a2,b3")).rep == Quat(3, 2, 1, 1)
    g = evaluate_word(P, W("a2,b3"))
    assert multiply(g, g) == evaluate_word(P, W("b2,b3"))
    assert multiply(g, g).rep == Quat(1, 4, 2, 2)
    c = evaluate_word(P, W("b1,a1,b1'"))
    assert c.rep == Quat(5, 0, -7, 1) and c.length == 3
    assert evaluate_word(P, W("a1,a2',a1,a1")) == element_from_quat(P, Quat(-5, -6, -2, 4))
    assert evaluate_word(P, W("b3,b2',b3',b1")) == element_from_quat(P, Quat(-11, 18, 6, -12))
    assert evaluate_word(P, ()) == identity(P)


def test_inverse_and_power():
    rng = random.Random(3)
    for _ in range(100):
        g = random_element(rng, P, 6)
        assert multiply(g, invert(g)).is_identity()
        assert power(g, 3) == multiply(g, multiply(g, g))
        assert power(g, -2) == invert(multiply(g, g))
    with pytest.raises(ValueError):
        multiply(identity(P), identity(LatticeParams(3, 7)))


def test_letter_errors():
    with pytest.raises(IndexError):
        letter_element(P, Generator("A", 3, False))
    with pytest.raises(ValueError):
        parse_word("a1,c2")


def test_words():
    w = W("a1,a2',b3")
    assert format_word(w) == "a1,a2',b3"
    assert free_reduce(W("a1,b2,b2',a1',a2")) == W("a2")


def test_peel():
    a1a2 = evaluate_word(P, W("a1,a2"))
    assert Q.mul(Quat(1, 0, 1, 1), Quat(1, 0, 1, -1)) == Quat(1, -2, 2, 0)
    assert a1a2.rep == Quat(1, -2, 2, 0)
    assert peel(a1a2, "A") == (Generator.parse("a2"), letter_element(P, Generator.parse("a1")))
    assert peel(letter_element(P, Generator.parse("a1")), "A") == (Generator.parse("a1"), identity(P))
    letter, rest = peel(element_from_quat(P, Quat(3, 2, 1, 1)), "B")
    assert letter == Generator.parse("b3") and rest == letter_element(P, Generator.parse("a2"))
    with pytest.raises(ValueError):
        peel(identity(P), "A")


def test_normal_form_examples():
    g = element_from_quat(P, Quat(23, 0, 14, -2))
    assert normal_form(g) == W("a2,a1',a2',a2',a1',a2")
    assert normal_form(identity(P)) == ()
    h = element_from_quat(P, Quat(3, 2, 1, 1))
    ba = normal_form(h, "BA")
    assert [x.family for x in ba] == ["B", "A"] and evaluate_word(P, ba) == h
    # exhaustive oracle over all 6*4 B-letter/A-letter pairs
    from quatlat.lattice import letters
    hits = [(b, a) for b in letters(P, "B") for a in letters(P, "A")
            if evaluate_word(P, (b, a)) == h]
    assert hits == [tuple(ba)]
    assert normal_form(h, "AB") == W("a2,b3")


def test_normal_form_round_trip():
    rng = random.Random(11)
    for _ in range(300):
        g = random_element(rng, P, 8)
        for order in ("BA", "AB"):
            w = normal_form(g, order)
            assert evaluate_word(P, w) == g and len(w) == g.length


def test_tree_coordinates():
    g = evaluate_word(P, W("a2,b3"))
    tp, tl = tree_coordinates(g)
    assert tp.s == 0 and tl.r == 0 and tp.length == 1 and tl.length == 1


def test_dickson_examples():
    z, y, yt, zt = dickson_factor(P, Quat(1, 2, 1, 3))
    assert (z, y) == (Quat(1, 0, -1, 1), Quat(1, 2))
    assert (yt, zt) == (Quat(1, 0, 0, -2), Quat(1, 0, -1, -1))
    assert Q.mul(z, y) == Quat(1, 2, 1, 3) and Q.mul(yt, zt) == Quat(-1, -2, -1, -3)
    z, y, _, _ = dickson_factor(P, Quat(3, 2, 1, 1))
    assert (z, y) == (Quat(1, 0, 1, -1), Quat(1, 0, 0, 2))
    with pytest.raises(ValueError):
        dickson_factor(P, Quat(1, 2))


@pytest.mark.parametrize("p,l", [(3, 5), (3, 7), (5, 7)])
def test_dickson_unique_against_products(p, l):
    params = LatticeParams(p, l)
    at, bt = enumerate_generators(params)
    zy = [Q.mul(z, y) for z, y in product(at, bt)]
    targets = {Q.primitive(x) for x in zy}
    assert len(targets) == len(zy)  # every product distinct up to sign
    for x in targets:
        z, y, yt, zt = dickson_factor(params, x)
        assert Q.mul(z, y) in (x, -x) and Q.mul(yt, zt) in (x, -x)
        assert sum(Q.mul(a, b) in (x, -x) for a, b in product(at, bt)) == 1
        assert sum(Q.mul(b, a) in (x, -x) for b, a in product(bt, at)) == 1


REFERENCE_RELATORS = ["a1,b1,a2,b2", "a1,b2,a2,b1'", "a1,b3,a2',b1", "a1,b3',a1,b2'",
                  "a1,b1',a2',b3", "a2,b3,a2,b2'"]


def test_presentation_3_5():
    pres = derive_presentation(P)
    assert len(pres.squares) == 6
    assert same_relator_set(pres.relators(), [W(r) for r in REFERENCE_RELATORS])
    for sq in pres.squares:
        lhs = evaluate_word(P, (sq.a, sq.b))
        assert lhs == evaluate_word(P, (sq.b_tilde, sq.a_tilde))


def test_presentation_json_round_trip():
    pres = derive_presentation(P)
    again = Presentation.from_json(pres.dumps())
    assert again.dumps() == pres.dumps()
    obj = json.loads(pres.dumps())
    assert obj["generators"][0] == {"name": "a1", "quat": [1, 0, 1, 1]}
    assert set(obj["squares"][0]) == {"a", "b", "b_tilde", "a_tilde"}


@pytest.mark.parametrize("p,l", [(3, 7), (5, 7), (7, 11)])
def test_presentation_counts(p, l):
    assert len(derive_presentation(LatticeParams(p, l)).squares) == (p + 1) * (l + 1) // 4


def test_same_relator_set_rejects_wrong():
    bad = [W(r) for r in REFERENCE_RELATORS[:-1]] + [W("a2,b3,a2,b2")]
    assert not same_relator_set(derive_presentation(P).relators(), bad)


def test_free_group_short_words():
    from quatlat.checks import check_free_group
    assert check_free_group(random.Random(0), 0).ok


def test_commutes_examples():
    x = element_from_quat(P, Quat(-5, -6, -2, 4))
    y = element_from_quat(P, Quat(-11, 18, 6, -12))
    assert commutes(x, y)
    a1, b1 = (letter_element(P, Generator.parse(s)) for s in ("a1", "b1"))
    assert not commutes(a1, b1)
    assert commutes(a1, identity(P)) and commutes(identity(P), a1)


def test_commutes_agrees_with_products():
    rng = random.Random(5)
    for _ in range(300):
        g, h = random_element(rng, P, 4), random_element(rng, P, 4)
        for x in (h, power(g, 2), multiply(g, power(g, -3))):
            direct = Q.primitive(Q.mul(g.rep, x.rep)) == Q.primitive(Q.mul(x.rep, g.rep))
            assert commutes(g, x) == direct


def test_conjugate_commutation_and_csa():
    rng = random.Random(8)
    for _ in range(300):
        a = random_nontrivial(rng, P, 4)
        b = random_element(rng, P, 4)
        assert commutes(conjugate(b, a), a) == commutes(b, a)
        if not commutes(b, a):
            assert not any(commutes(conjugate(b, power(a, k)), a) for k in range(1, 7))


def test_padic_embed_examples():
    e = padic_embed(P, identity(P), 5)
    assert e.mat_p == ((1, 0), (0, 1)) and e.mat_l == ((1, 0), (0, 1))
    e = padic_embed(P, letter_element(P, Generator.parse("a1")), 1)
    assert e.mat_p == ((2, 2), (0, 0))
    assert mat2_det(e.mat_p, 3) == 0


def test_padic_embed_multiplicative_up_to_scalar():
    rng = random.Random(2)
    for _ in range(200):
        g, h = random_element(rng, P, 4), random_element(rng, P, 4)
        eg, eh, egh = (padic_embed(P, x, 8) for x in (g, h, multiply(g, h)))
        assert mat2_det(eg.mat_p, eg.mod_p) == Q.norm2(g.rep) % eg.mod_p
        assert mat2_det(eg.mat_l, eg.mod_l) == Q.norm2(g.rep) % eg.mod_l
        lam = projective_scalar(mat2_mul(eg.mat_p, eh.mat_p, eg.mod_p), egh.mat_p, 3, eg.mod_p)
        assert lam == product_scalar(g, h) % eg.mod_p
        lam = projective_scalar(mat2_mul(eg.mat_l, eh.mat_l, eg.mod_l), egh.mat_l, 5, eg.mod_l)
        assert lam == product_scalar(g, h) % eg.mod_l


def test_product_scalar_cancellation():
    a1 = letter_element(P, Generator.parse("a1"))
    a1i = letter_element(P, Generator.parse("a1'"))
    assert product_scalar(a1, a1i) == 3
    e = padic_embed(P, a1, 4)
    prod = mat2_mul(e.mat_p, padic_embed(P, a1i, 4).mat_p, e.mod_p)
    assert prod == ((3, 0), (0, 3))
