"""Exact arithmetic for quaternion lattices acting on a product of two trees."""
from .quat import Direction, Quat, conj, direction, mul, norm2, primitive
from .numtheory import hensel_lift_cd, legendre, solve_norm_equation, sqrt_mod
from .lattice import (
    Generator,
    GroupElement,
    LatticeParams,
    NotInGammaError,
    Presentation,
    Square,
    commutes,
    derive_presentation,
    dickson_factor,
    element_from_quat,
    enumerate_generators,
    evaluate_word,
    format_word,
    normal_form,
    padic_embed,
    parse_word,
)
from .abelian import ClassificationVerdict, PeriodPair, classify, find_period_pair
from .square_complex import (
    CornerTable,
    MinsetRegion,
    TileGrid,
    build_corner_table,
    minset_region,
    render,
    tile_apartment,
)

__version__ = "0.1.0"

__all__ = [
    "ClassificationVerdict", "CornerTable", "Direction", "Generator", "GroupElement",
    "LatticeParams", "MinsetRegion", "NotInGammaError", "PeriodPair", "Presentation",
    "Quat", "Square", "TileGrid", "build_corner_table", "classify", "commutes", "conj",
    "derive_presentation", "dickson_factor", "direction", "element_from_quat",
    "enumerate_generators", "evaluate_word", "find_period_pair", "format_word",
    "hensel_lift_cd", "legendre", "minset_region", "mul", "norm2", "normal_form",
    "padic_embed", "parse_word", "primitive", "render", "solve_norm_equation",
    "sqrt_mod", "tile_apartment",
]
