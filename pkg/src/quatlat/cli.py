"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (for example a quaternion
outside the lattice), 2 on a usage error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import quat as Q
from .abelian import DEFAULT_RADIUS, DEFAULT_S_MAX, classify, find_period_pair
from .checks import run_all
from .lattice import (
    GroupElement,
    LatticeParams,
    commutes,
    derive_presentation,
    dickson_factor,
    element_from_quat,
    evaluate_word,
    format_word,
    generator_reps,
    identity,
    letter_of,
    multiply,
    normal_form,
    padic_embed,
    parse_word,
)
from .square_complex import minset_region, render, tile_apartment


class UsageError(Exception):
    pass


class _AppendInput(argparse.Action):
    """Collect --quat and --word values into one ordered list."""

    def __call__(self, parser, namespace, value, option_string=None):
        kind = "quat" if option_string == "--quat" else "word"
        try:
            parsed = Q.parse_quat(value) if kind == "quat" else parse_word(value)
        except ValueError as exc:
            raise argparse.ArgumentError(self, str(exc))
        items = list(getattr(namespace, "inputs", None) or [])
        items.append((kind, parsed))
        namespace.inputs = items


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return v


def _word_arg(text: str):
    try:
        return parse_word(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _elements(args, params) -> list[GroupElement]:
    out = []
    for kind, value in args.inputs or []:
        if kind == "quat":
            out.append(element_from_quat(params, value))
        else:
            out.append(evaluate_word(params, value))
    return out


def _one(args, params) -> GroupElement:
    els = _elements(args, params)
    if len(els) != 1:
        raise UsageError("expected exactly one --quat or --word")
    return els[0]


def _element_json(g: GroupElement) -> dict:
    return {"quat": list(g.rep), "r": g.r, "s": g.s, "length": g.length}


def _element_text(g: GroupElement) -> str:
    return f"{g}  r={g.r} s={g.s} length={g.length}"


def _emit(args, obj, text: str) -> None:
    if args.format == "json":
        print(json.dumps(obj, indent=2))
    else:
        print(text)


def _only(args, *formats):
    if args.format not in formats:
        raise UsageError(f"format {args.format} is not available for {args.command}")


# -- commands --------------------------------------------------------------------

def cmd_gens(args, params):
    _only(args, "text", "json")
    rows = []
    for fam, prefix in (("A", "a"), ("B", "b")):
        for i, x in enumerate(generator_reps(params, fam), 1):
            rows.append((f"{prefix}{i}", x))
    _emit(args, {"p": params.p, "l": params.l,
                 "generators": [{"name": n, "quat": list(x)} for n, x in rows]},
          "\n".join(f"{n} = {Q.format_quat(x)}" for n, x in rows))


def cmd_present(args, params):
    _only(args, "text", "json")
    pres = derive_presentation(params)
    if args.format == "json":
        sys.stdout.write(pres.dumps())
    else:
        print("\n".join(format_word(r) for r in pres.relators()))


def cmd_mul(args, params):
    _only(args, "text", "json")
    g = identity(params)
    for h in _elements(args, params):
        g = multiply(g, h)
    _emit(args, _element_json(g), _element_text(g))


def cmd_normal_form(args, params):
    _only(args, "text", "json")
    g = _one(args, params)
    w = normal_form(g, args.order)
    _emit(args, {"order": args.order, "word": format_word(w), "length": len(w)}, format_word(w))


def cmd_length(args, params):
    _only(args, "text", "json")
    g = _one(args, params)
    _emit(args, {"length": g.length}, str(g.length))


def cmd_commute(args, params):
    _only(args, "text", "json")
    els = _elements(args, params)
    if len(els) != 2:
        raise UsageError("commute needs exactly two elements")
    c = commutes(*els)
    _emit(args, {"commute": c}, "true" if c else "false")


def cmd_factor_pl(args, params):
    _only(args, "text", "json")
    quats = [v for k, v in args.inputs or [] if k == "quat"]
    if len(quats) != 1 or len(args.inputs) != 1:
        raise UsageError("factor-pl needs exactly one --quat")
    z, y, yt, zt = dickson_factor(params, quats[0])
    names = [letter_of(params, x).name for x in (z, y, yt, zt)]
    obj = {"z": list(z), "y": list(y), "y_tilde": list(yt), "z_tilde": list(zt),
           "letters": dict(zip(("z", "y", "y_tilde", "z_tilde"), names))}
    text = (f"z*y = ({Q.format_quat(z)})({Q.format_quat(y)})  [{names[0]} {names[1]}]\n"
            f"y~*z~ = ({Q.format_quat(yt)})({Q.format_quat(zt)})  [{names[2]} {names[3]}]")
    _emit(args, obj, text)


def cmd_classify(args, params):
    _only(args, "text", "json")
    v = classify(params, _one(args, params), s_max=args.s_max, radius=args.radius)
    text = (f"{v.kind}  n={v.n}  legendre(-n/{params.p})={v.leg_p}  "
            f"legendre(-n/{params.l})={v.leg_l}\ncertificate: "
            + json.dumps(v.certificate, sort_keys=True))
    _emit(args, v.to_json(), text)


def cmd_find_period(args, params):
    _only(args, "text", "json")
    pair = find_period_pair(params, args.r_max)
    if pair is None:
        print(f"error: no period pair with r <= {args.r_max}", file=sys.stderr)
        return 1
    obj = {"r": pair.r, "n": pair.dir.n, "direction": list(pair.dir),
           "x": list(pair.x.rep), "y": list(pair.y.rep),
           "x_word": format_word(normal_form(pair.x)), "y_word": format_word(normal_form(pair.y))}
    text = (f"r={pair.r} n={pair.dir.n} direction={tuple(pair.dir)}\n"
            f"x = {pair.x}  {obj['x_word']}\ny = {pair.y}  {obj['y_word']}")
    _emit(args, obj, text)
    return 0


def cmd_tile(args, params):
    if args.alpha is None or args.beta is None:
        raise UsageError("tile needs --alpha and --beta")
    grid = tile_apartment(derive_presentation(params), args.alpha, args.beta,
                          args.width, args.height)
    if args.format == "json":
        print(json.dumps({"width": grid.width, "height": grid.height,
                          "h": [[g.name for g in col] for col in grid.h],
                          "v": [[g.name for g in col] for col in grid.v]}, indent=2))
    else:
        sys.stdout.write(render(grid, "ascii" if args.format == "text" else args.format))


def cmd_minset(args, params):
    reg = minset_region(derive_presentation(params), _one(args, params), args.radius)
    if args.format == "json":
        print(json.dumps({"displacement": reg.displacement, "radius": reg.radius,
                          "elements": [list(v.rep) for v in reg.elements]}, indent=2))
    else:
        sys.stdout.write(render(reg, "ascii" if args.format == "text" else args.format))


def cmd_embed(args, params):
    _only(args, "text", "json")
    e = padic_embed(params, _one(args, params), args.k)
    obj = {"k": e.k, "p": {"modulus": e.mod_p, "matrix": [list(r) for r in e.mat_p]},
           "l": {"modulus": e.mod_l, "matrix": [list(r) for r in e.mat_l]}}
    text = (f"mod {params.p}^{e.k}: {[list(r) for r in e.mat_p]}\n"
            f"mod {params.l}^{e.k}: {[list(r) for r in e.mat_l]}")
    _emit(args, obj, text)


def cmd_verify(args, params):
    _only(args, "text", "json")
    seed = args.seed if args.seed is not None else int(os.environ.get("QUATLAT_SEED", "0"))
    results = run_all(seed, args.samples, args.golden_dir)
    ok = all(r.ok for r in results)
    if args.format == "json":
        print(json.dumps({"seed": seed, "samples": args.samples, "ok": ok,
                          "checks": [{"name": r.name, "ok": r.ok, "detail": r.detail}
                                     for r in results]}, indent=2))
    else:
        print(f"seed: {seed}")
        for r in results:
            print(r.line())
        print(f"{sum(r.ok for r in results)}/{len(results)} checks passed")
    return 0 if ok else 1


COMMANDS = {
    "gens": cmd_gens, "present": cmd_present, "mul": cmd_mul,
    "normal-form": cmd_normal_form, "length": cmd_length, "commute": cmd_commute,
    "factor-pl": cmd_factor_pl, "classify": cmd_classify, "find-period": cmd_find_period,
    "tile": cmd_tile, "minset": cmd_minset, "embed": cmd_embed, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=int, default=3, help="first prime (default 3)")
    common.add_argument("--l", type=int, default=5, help="second prime (default 5)")
    common.add_argument("--format", choices=("text", "json", "svg", "dot"), default="text")
    common.add_argument("--quat", action=_AppendInput, metavar="X0,X1,X2,X3", dest="inputs")
    common.add_argument("--word", action=_AppendInput, metavar="LETTERS", dest="inputs",
                        help="comma-separated letters, prime for inverse: a1,a2',b3")
    common.add_argument("--s-max", type=_positive, default=DEFAULT_S_MAX)
    common.add_argument("--radius", type=_nonneg, default=DEFAULT_RADIUS)
    common.add_argument("--r-max", type=_positive, default=12)
    common.add_argument("--k", type=_positive, default=8, help="p-adic precision")
    common.add_argument("--order", choices=("BA", "AB"), default="BA")
    common.add_argument("--alpha", type=_word_arg)
    common.add_argument("--beta", type=_word_arg)
    common.add_argument("--width", type=_nonneg, default=8)
    common.add_argument("--height", type=_nonneg, default=8)
    common.add_argument("--seed", type=int, help="sampling seed (default $QUATLAT_SEED or 0)")
    common.add_argument("--samples", type=_positive, default=1000)
    common.add_argument("--golden-dir", type=Path)

    parser = argparse.ArgumentParser(prog="quatlat",
                                     description="Quaternion lattices acting on products of trees.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        params = LatticeParams(args.p, args.l)
    except ValueError as exc:
        parser.error(str(exc))
    try:
        rc = COMMANDS[args.command](args, params)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
