"""Square-complex geometry: corner tables, periodic apartment tilings,
minimal-displacement regions and text renderers (ASCII, SVG, DOT)."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import quat as Q
from .lattice import (
    Generator,
    GroupElement,
    InvariantViolation,
    Presentation,
    Square,
    _params,
    ball,
    commutes,
    element_from_quat,
    evaluate_word,
    invert,
    letter_of,
    letter_quat,
    letters,
    multiply,
    tree_coordinates,
)

__all__ = [
    "CornerTable", "MinsetRegion", "Square", "TileGrid", "build_corner_table",
    "minset_region", "render", "tile_apartment",
]


@dataclass(frozen=True)
class CornerTable:
    """Oriented squares indexed by each of their four corners."""

    bottom_right: dict  # (a, b) -> Square
    bottom_left: dict   # (a, b~)
    top_left: dict      # (a~, b~)
    top_right: dict     # (a~, b)

    def complete_from_bottom_left(self, a: Generator, b_tilde: Generator) -> Square:
        return self.bottom_left[(a, b_tilde)]


def build_corner_table(presentation: Presentation) -> CornerTable:
    params = presentation.params
    oriented = [o for sq in presentation.squares for o in sq.orientations()]
    npairs = (params.p + 1) * (params.l + 1)
    if len(set(oriented)) != npairs:
        raise InvariantViolation(f"{len(set(oriented))} oriented squares, expected {npairs}")
    pairs = {(a, b) for a in letters(params, "A") for b in letters(params, "B")}
    maps = []
    for key in (lambda s: (s.a, s.b), lambda s: (s.a, s.b_tilde),
                lambda s: (s.a_tilde, s.b_tilde), lambda s: (s.a_tilde, s.b)):
        table = {}
        for sq in oriented:
            k = key(sq)
            if k in table:
                raise InvariantViolation(f"corner {k} lies on two squares")
            table[k] = sq
        if set(table) != pairs:
            raise InvariantViolation("a corner orientation does not cover every letter pair")
        maps.append(table)
    return CornerTable(*maps)


@dataclass
class TileGrid:
    """h[i][j] labels the edge (i, j) -> (i+1, j); v[i][j] labels (i, j) -> (i, j+1)."""

    width: int
    height: int
    h: list = field(default_factory=list)
    v: list = field(default_factory=list)

    def row(self, j: int) -> list[Generator]:
        return [self.h[i][j] for i in range(self.width)]

    def column(self, i: int) -> list[Generator]:
        return [self.v[i][j] for j in range(self.height)]


def tile_apartment(presentation: Presentation, alpha: Sequence[Generator],
                   beta: Sequence[Generator], width: int, height: int) -> TileGrid:
    """Fill a width x height patch of the flat spanned by the commuting
    words alpha (A-letters, along the bottom) and beta (B-letters, up the
    left side)."""
    params = presentation.params
    if any(g.family != "A" for g in alpha) or any(g.family != "B" for g in beta):
        raise ValueError("alpha must use only A-letters and beta only B-letters")
    if (width and not alpha) or (height and not beta):
        raise ValueError("empty period word for a nonempty grid")
    if alpha and beta and not commutes(evaluate_word(params, alpha), evaluate_word(params, beta)):
        raise ValueError("not a periodic apartment pair: the words do not commute")
    table = build_corner_table(presentation)
    grid = TileGrid(width, height,
                    [[None] * (height + 1) for _ in range(width)],
                    [[None] * height for _ in range(width + 1)])
    for i in range(width):
        grid.h[i][0] = alpha[i % len(alpha)]
    for j in range(height):
        grid.v[0][j] = beta[j % len(beta)]
    for j in range(height):
        for i in range(width):
            sq = table.complete_from_bottom_left(grid.h[i][j], grid.v[i][j])
            grid.v[i + 1][j] = sq.b
            grid.h[i][j + 1] = sq.a_tilde
    if width and height:
        if height % len(beta) == 0 and grid.row(height) != grid.row(0):
            raise ValueError("not a periodic apartment pair: top row differs from bottom row")
        if width % len(alpha) == 0 and grid.column(width) != grid.column(0):
            raise ValueError("not a periodic apartment pair: right column differs from left column")
    return grid


def grid_relations_hold(params, grid: TileGrid) -> bool:
    """Check every square of the grid by quaternion multiplication."""
    params = _params(params)
    for i in range(grid.width):
        for j in range(grid.height):
            lhs = Q.mul(letter_quat(params, grid.h[i][j]), letter_quat(params, grid.v[i + 1][j]))
            rhs = Q.mul(letter_quat(params, grid.v[i][j]), letter_quat(params, grid.h[i][j + 1]))
            if Q.primitive(lhs) != Q.primitive(rhs):
                return False
    return True


def grid_vertex(params, grid: TileGrid, i: int, j: int) -> GroupElement:
    """Group element at vertex (i, j): along the bottom row, then up column i."""
    word = grid.row(0)[:i] + grid.column(i)[:j]
    return evaluate_word(params, word)


def grid_corner_paths_agree(params, grid: TileGrid) -> bool:
    """Bottom row then right column equals left column then top row."""
    params = _params(params)
    first = evaluate_word(params, grid.row(0) + grid.column(grid.width))
    second = evaluate_word(params, grid.column(0) + grid.row(grid.height))
    return first == second


# -- minimal displacement regions ------------------------------------------------

@dataclass(frozen=True)
class MinsetRegion:
    gamma: GroupElement
    elements: tuple[GroupElement, ...]
    displacement: int
    radius: int


def displacement(g: GroupElement, v: GroupElement) -> int:
    """Word length of v^-1 g v, i.e. how far g moves the vertex v."""
    return multiply(multiply(invert(v), g), v).length


def minset_region(presentation, g: GroupElement, radius: int) -> MinsetRegion:
    """All vertices within ``radius`` of O where g has minimal displacement."""
    if g.is_identity():
        raise ValueError("the identity displaces nothing")
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    params = _params(presentation)
    best, found = None, []
    for v, _ in ball(params, radius):
        d = displacement(g, v)
        if best is None or d < best:
            best, found = d, [v]
        elif d == best:
            found.append(v)
    found.sort(key=lambda e: tuple(e.rep))
    return MinsetRegion(g, tuple(found), best, radius)


def _tree_diameter(points: Sequence[GroupElement]) -> int:
    return max((multiply(invert(u), w).length for u in points for w in points), default=0)


def region_columns(region: MinsetRegion) -> int:
    """Number of distinct positions in the p-tree (vertical columns)."""
    return len({tree_coordinates(v)[0] for v in region.elements})


def region_rows(region: MinsetRegion) -> int:
    return len({tree_coordinates(v)[1] for v in region.elements})


def region_vertical_extent(region: MinsetRegion) -> int:
    """Diameter of the region's projection to the l-tree."""
    return _tree_diameter(list({tree_coordinates(v)[1] for v in region.elements}))


def region_horizontal_extent(region: MinsetRegion) -> int:
    return _tree_diameter(list({tree_coordinates(v)[0] for v in region.elements}))


# -- rendering -------------------------------------------------------------------

@dataclass
class _Layout:
    width: int
    height: int
    vertices: set
    h: dict          # (i, j) -> Generator on (i, j) -> (i+1, j)
    v: dict          # (i, j) -> Generator on (i, j) -> (i, j+1)
    origin: tuple


def _grid_layout(grid: TileGrid) -> _Layout:
    verts = {(i, j) for i in range(grid.width + 1) for j in range(grid.height + 1)}
    if grid.width == 0 or grid.height == 0:
        verts = set() if grid.width == grid.height == 0 else verts
    h = {(i, j): grid.h[i][j] for i in range(grid.width) for j in range(grid.height + 1)}
    v = {(i, j): grid.v[i][j] for i in range(grid.width + 1) for j in range(grid.height)}
    return _Layout(grid.width, grid.height, verts, h, v, (0, 0))


def _order_path(points: list, params) -> dict:
    """Positions along a tree path, with the identity at 0 before shifting."""
    idx = {p.rep: p for p in points}
    nbrs = {p.rep: [] for p in points}
    for u in points:
        for w in points:
            if u.rep < w.rep and multiply(invert(u), w).length == 1:
                nbrs[u.rep].append(w.rep)
                nbrs[w.rep].append(u.rep)
    if any(len(n) > 2 for n in nbrs.values()) or \
            sum(len(n) for n in nbrs.values()) != 2 * (len(points) - 1):
        raise ValueError("region is not a product of paths")
    start = Q.ONE if Q.ONE in idx else min(idx)
    ranked = sorted(nbrs[start], key=lambda w: (
        letter_of(params, multiply(invert(idx[start]), idx[w]).rep).inverted,
        letter_of(params, multiply(invert(idx[start]), idx[w]).rep).index))
    pos = {start: 0}
    for w, step in zip(ranked, (1, -1) if ranked and not letter_of(
            params, multiply(invert(idx[start]), idx[ranked[0]]).rep).inverted else (-1, 1)):
        prev, cur, at = start, w, step
        while cur is not None:
            pos[cur] = at
            nxt = [x for x in nbrs[cur] if x != prev]
            prev, cur, at = cur, (nxt[0] if nxt else None), at + step
    if len(pos) != len(points):
        raise ValueError("region is not connected")
    lo = min(pos.values())
    return {k: val - lo for k, val in pos.items()}


def _region_layout(region: MinsetRegion) -> _Layout:
    params = region.gamma.params
    coords = {v.rep: tree_coordinates(v) for v in region.elements}
    xs = _order_path(list({c[0].rep: c[0] for c in coords.values()}.values()), params)
    ys = _order_path(list({c[1].rep: c[1] for c in coords.values()}.values()), params)
    at = {}
    for v in region.elements:
        cp, cl = coords[v.rep]
        at[(xs[cp.rep], ys[cl.rep])] = v
    h, vv = {}, {}
    for (i, j), u in at.items():
        for (di, dj), store in (((1, 0), h), ((0, 1), vv)):
            w = at.get((i + di, j + dj))
            if w is not None:
                store[(i, j)] = letter_of(params, multiply(invert(u), w).rep)
    origin = next(k for k, u in at.items() if u.is_identity()) if any(
        u.is_identity() for u in at.values()) else min(at)
    return _Layout(max(xs.values()), max(ys.values()), set(at), h, vv, origin)


CELL = 40
MARGIN = 40


def _svg(lay: _Layout) -> str:
    w = lay.width * CELL + 2 * MARGIN
    ht = lay.height * CELL + 2 * MARGIN

    def pt(i, j):
        return MARGIN + CELL * i, MARGIN + CELL * (lay.height - j)

    ox, oy = pt(*lay.origin)
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{ht}" '
           f'viewBox="0 0 {w} {ht}" font-family="serif" font-size="11">',
           '<g class="axes" stroke="#999" stroke-width="1">',
           f'<line x1="{ox}" y1="{oy}" x2="{ox + lay.width * CELL + 20}" y2="{oy}"/>',
           f'<line x1="{ox}" y1="{oy}" x2="{ox}" y2="{oy - lay.height * CELL - 20}"/>',
           '</g>', '<g class="edges" stroke="black" stroke-width="1.5">']
    heads, labels = [], []
    for (i, j), g in sorted(lay.h.items()):
        x1, y1 = pt(i, j)
        x2, _ = pt(i + 1, j)
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y1}"/>')
        mx = (x1 + x2) // 2
        if g.inverted:
            heads.append(f'<polygon points="{mx - 5},{y1} {mx + 3},{y1 - 4} {mx + 3},{y1 + 4}"/>')
        else:
            heads.append(f'<polygon points="{mx + 5},{y1} {mx - 3},{y1 - 4} {mx - 3},{y1 + 4}"/>')
        labels.append(f'<text x="{mx}" y="{y1 + 14}" text-anchor="middle">{g.base_name}</text>')
    for (i, j), g in sorted(lay.v.items()):
        x1, y1 = pt(i, j)
        _, y2 = pt(i, j + 1)
        out.append(f'<line x1="{x1}" y1="{y1}" x2="{x1}" y2="{y2}"/>')
        my = (y1 + y2) // 2
        if g.inverted:
            heads.append(f'<polygon points="{x1},{my + 5} {x1 - 4},{my - 3} {x1 + 4},{my - 3}"/>')
        else:
            heads.append(f'<polygon points="{x1},{my - 5} {x1 - 4},{my + 3} {x1 + 4},{my + 3}"/>')
        labels.append(f'<text x="{x1 - 6}" y="{my + 4}" text-anchor="end">{g.base_name}</text>')
    out.append('</g>')
    out += ['<g class="arrows" fill="black">', *heads, '</g>',
            '<g class="labels">', *labels, '</g>',
            f'<circle cx="{ox}" cy="{oy}" r="3" fill="black"/>',
            f'<text x="{ox - 6}" y="{oy + 14}" text-anchor="end">O</text>',
            '</svg>']
    return "\n".join(out) + "\n"


def _ascii(lay: _Layout) -> str:
    lines = []
    for j in range(lay.height, -1, -1):
        if j < lay.height:
            arrows, names = [], []
            for i in range(lay.width + 1):
                g = lay.v.get((i, j))
                arrows.append(("v" if g.inverted else "^") if g else " ")
                names.append(("|" + g.base_name).ljust(6) if g else " " * 6)
                arrows.append(" " * 5)
            lines.append("".join(arrows).rstrip())
            lines.append("".join(names).rstrip())
        row = []
        for i in range(lay.width + 1):
            if (i, j) == lay.origin:
                row.append("O")
            else:
                row.append("+" if (i, j) in lay.vertices else " ")
            if i < lay.width:
                g = lay.h.get((i, j))
                if g is None:
                    row.append(" " * 5)
                elif g.inverted:
                    row.append(("-<" + g.base_name).ljust(5, "-"))
                else:
                    row.append(("-" + g.base_name + ">").ljust(5, "-"))
        lines.append("".join(row).rstrip())
    return "\n".join(lines) + "\n"


def _dot_grid(lay: _Layout, name: str) -> str:
    out = [f"digraph {name} {{", "  node [shape=point];"]
    for (i, j) in sorted(lay.vertices):
        label = ' [shape=plaintext, label="O"]' if (i, j) == lay.origin else ""
        out.append(f'  "{i},{j}"{label};')
    for store, (di, dj) in ((lay.h, (1, 0)), (lay.v, (0, 1))):
        for (i, j), g in sorted(store.items()):
            a, b = f'"{i},{j}"', f'"{i + di},{j + dj}"'
            if g.inverted:
                a, b = b, a
            out.append(f'  {a} -> {b} [label="{g.base_name}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def _dot_region(region: MinsetRegion) -> str:
    params = region.gamma.params
    names = {v.rep: ",".join(map(str, v.rep)) for v in region.elements}
    out = ["digraph minset {", "  node [shape=point];"]
    for v in region.elements:
        label = ' [shape=plaintext, label="O"]' if v.is_identity() else ""
        out.append(f'  "{names[v.rep]}"{label};')
    pos_letters = [g for fam in "AB" for g in letters(params, fam) if not g.inverted]
    for v in region.elements:
        for g in pos_letters:
            w = element_from_quat(params, Q.mul(v.rep, letter_quat(params, g)))
            if w.rep in names:
                out.append(f'  "{names[v.rep]}" -> "{names[w.rep]}" [label="{g.base_name}"];')
    out.append("}")
    return "\n".join(out) + "\n"


def render(obj, fmt: str = "svg") -> str:
    """Deterministic text rendering of a TileGrid or MinsetRegion."""
    if fmt not in ("ascii", "svg", "dot"):
        raise ValueError(f"unsupported format {fmt!r}")
    if isinstance(obj, MinsetRegion):
        if fmt == "dot":
            return _dot_region(obj)
        lay = _region_layout(obj)
    elif isinstance(obj, TileGrid):
        lay = _grid_layout(obj)
        if fmt == "dot":
            return _dot_grid(lay, "apartment")
    else:
        raise TypeError(f"cannot render {type(obj).__name__}")
    return _svg(lay) if fmt == "svg" else _ascii(lay)
