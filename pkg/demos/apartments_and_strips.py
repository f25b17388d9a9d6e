"""Draw part of a periodic apartment and two minimal-displacement strips.

Writes apartment.svg and strip.dot into the given directory (default: the
current one) and prints ASCII views.

Run:  python3 demos/apartments_and_strips.py [output-dir]
"""
import sys
from pathlib import Path

from quatlat.lattice import LatticeParams, derive_presentation, evaluate_word, parse_word
from quatlat.square_complex import (
    minset_region,
    region_columns,
    region_vertical_extent,
    render,
    tile_apartment,
)

params = LatticeParams(3, 5)
pres = derive_presentation(params)
out = Path(sys.argv[1] if len(sys.argv) > 1 else ".")

# The commuting pair a1 a2^-1 a1^2 and b3 b2^-1 b3^-1 b1 spans a flat.
# Filling squares from the bottom-left corner reproduces it; the labels
# repeat with period 4 in both directions.
grid = tile_apartment(pres, parse_word("a1,a2',a1,a1"), parse_word("b3,b2',b3',b1"), 8, 8)
(out / "apartment.svg").write_text(render(grid, "svg"))
print(render(tile_apartment(pres, parse_word("a1,a2',a1,a1"),
                            parse_word("b3,b2',b3',b1"), 4, 4), "ascii"))

# a2 b3 has no flat of its own.  Its minimal set near O is a strip one
# square wide that it maps to itself with a flip.
glide = minset_region(pres, evaluate_word(params, parse_word("a2,b3")), 3)
print(f"a2 b3: displacement {glide.displacement}, {region_columns(glide)} columns")
print(render(glide, "ascii"))

# b1 a1^6 b1^-1 translates along strips of height 2.  Near O several such
# strips share their lower two rows, so the region is drawn as a graph.
strip = minset_region(pres, evaluate_word(params, parse_word("b1,a1,a1,a1,a1,a1,a1,b1'")), 3)
print(f"b1 a1^6 b1': displacement {strip.displacement}, height {region_vertical_extent(strip)},"
      f" {len(strip.elements)} vertices within radius 3")
(out / "strip.dot").write_text(render(strip, "dot"))
