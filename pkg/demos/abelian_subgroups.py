"""Which maximal abelian subgroups are period subgroups?

The answer depends only on n = c1^2 + c2^2 + c3^2 for the shared axis
(c1, c2, c3) and on two Legendre symbols.  This script classifies a few
elements and then searches for a commuting pair of pure p- and l-powers
for several prime pairs.

Run:  python3 demos/abelian_subgroups.py
"""
import json

from quatlat.abelian import classify, find_period_pair
from quatlat.lattice import LatticeParams, element_from_quat, evaluate_word, format_word, normal_form, parse_word
from quatlat.quat import Quat

params = LatticeParams(3, 5)
samples = {
    "a1": evaluate_word(params, parse_word("a1")),
    "a1 a2' a1 a1": evaluate_word(params, parse_word("a1,a2',a1,a1")),
    "a2 b3": evaluate_word(params, parse_word("a2,b3")),
    "b1 a1 b1'": evaluate_word(params, parse_word("b1,a1,b1'")),
    "psi(-15+10i+2j+20k)": element_from_quat(params, Quat(-15, 10, 2, 20)),
}
for name, g in samples.items():
    v = classify(params, g)
    print(f"{name:22s} n={v.n:<4d} legendre=({v.leg_p:+d},{v.leg_l:+d})  {v.kind}")
    print("    certificate:", json.dumps(v.certificate, sort_keys=True))

# Small exponents suffice in practice, far below the general bound.
print()
for p, l in ((3, 5), (3, 7), (5, 7), (3, 11), (7, 11), (5, 13)):
    pp = LatticeParams(p, l)
    pair = find_period_pair(pp, 12)
    print(f"({p},{l}): r={pair.r} n={pair.dir.n} x={format_word(normal_form(pair.x))}"
          f"  y={format_word(normal_form(pair.y))}")
