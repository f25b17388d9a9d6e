"""A tour of Gamma_{3,5}: generators, the six square relations, and a few
products worked out by hand-sized quaternion arithmetic.

Run:  python3 demos/presentation_tour.py
"""
from quatlat import quat as Q
from quatlat.lattice import (
    LatticeParams,
    derive_presentation,
    dickson_factor,
    evaluate_word,
    format_word,
    generator_reps,
    normal_form,
    parse_word,
)

params = LatticeParams(3, 5)

# Each generator is one quaternion of norm p (or l) from a conjugate pair;
# the other member of the pair is its inverse.
print("generators")
for fam, prefix in (("A", "a"), ("B", "b")):
    for i, x in enumerate(generator_reps(params, fam), 1):
        print(f"  {prefix}{i} = {Q.format_quat(x)}   norm {Q.norm2(x)}")

# Any a*b can be rewritten uniquely as b~*a~.  Grouping the 24 corner
# pairs into squares leaves (p+1)(l+1)/4 = 6 relations.
pres = derive_presentation(params)
print("\nrelators a.b.a~^-1.b~^-1")
for r in pres.relators():
    print("  " + format_word(r))

# The rewriting comes from factoring a quaternion of norm p*l both ways.
x = Q.Quat(1, 2, 1, 3)
z, y, yt, zt = dickson_factor(params, x)
print(f"\n{Q.format_quat(x)} = ({Q.format_quat(z)})({Q.format_quat(y)})"
      f" = -({Q.format_quat(yt)})({Q.format_quat(zt)})")

# Conjugating a1^6 by b1 lands back in the A-subgroup once the common
# factor 5 is divided out; the normal form shows the hidden A-word.
g = evaluate_word(params, parse_word("b1,a1,a1,a1,a1,a1,a1,b1'"))
print(f"\nb1 a1^6 b1^-1 = {g}, length {g.length}")
print("  as an A-word:", format_word(normal_form(g)))

# a2 b3 squares to a pure B-word: a glide reflection.
h = evaluate_word(params, parse_word("a2,b3"))
print(f"\na2 b3 = {h};  (a2 b3)^2 = {h * h} = b2 b3 ({h * h == evaluate_word(params, parse_word('b2,b3'))})")
