"""Command-line interface: JSON in, JSON out.

Exit codes: 0 success, 2 parse/format errors, 3 domain errors,
4 internal failures.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import braids, mcg, recoupling, skein, tl, tqft
from .scalars import QuantumParams, Scalar
from .skein import DomainError, LabeledLink, LinkFormatError
from .tqft import Spine, SpineFormatError

EXIT_PARSE = 2
EXIT_DOMAIN = 3
EXIT_INTERNAL = 4


class ParseFailure(ValueError):
    pass


def _scalar_json(x: Scalar):
    v = x.embed()
    return {"exact": x.to_json(), "approx": [v.real, v.imag]}


def _matrix_json(m):
    return [[_scalar_json(x) for x in row] for row in m]


def _load_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseFailure(f"cannot read JSON from {path}: {exc}") from exc


def _make_params(args) -> QuantumParams:
    try:
        return QuantumParams(args.r, getattr(args, "s", 1))
    except ValueError as exc:
        raise ParseFailure(str(exc)) from exc


def _load_link(path) -> LabeledLink:
    try:
        return LabeledLink.from_json(_load_json(path))
    except LinkFormatError as exc:
        raise ParseFailure(str(exc)) from exc


def _parse_braid_word(text) -> tuple:
    try:
        return tuple(int(t) for t in text.split())
    except ValueError as exc:
        raise ParseFailure(f"bad braid word {text!r}: generators are signed integers") from exc


def _parse_labels(text):
    if not text:
        return ()
    try:
        return tuple(int(t) for t in text.replace(",", " ").split())
    except ValueError as exc:
        raise ParseFailure(f"bad label list {text!r}") from exc


# ----------------------------------------------------------- subcommands

def cmd_eval_link(args):
    params = _make_params(args)
    link = _load_link(args.link)
    value = skein.evaluate(params, link)
    return {"r": params.r, "s": params.s, "value": _scalar_json(value)}


def cmd_projector(args):
    params = _make_params(args)
    if not 0 <= args.k <= params.r - 2:
        raise DomainError(f"projector label {args.k} out of range 0..{params.r - 2}")
    p = tl.jones_wenzl(params, args.k)
    terms = sorted(((diag.parens(), coeff) for diag, coeff in p.terms.items()))
    return {"r": params.r, "s": params.s, "k": args.k,
            "terms": [{"diagram": d, "coeff": _scalar_json(c)} for d, c in terms]}


def cmd_dump_recoupling(args):
    params = _make_params(args)
    return recoupling.dump_tables(params)


def cmd_dims(args):
    params = _make_params(args)
    if bool(args.spine) == bool(args.surface):
        raise ParseFailure("dims needs exactly one of --spine or --surface")
    if args.spine:
        try:
            spine = Spine.from_json(_load_json(args.spine))
        except SpineFormatError as exc:
            raise ParseFailure(str(exc)) from exc
        return {"dim": tqft.dim(params, spine)}
    model = mcg.surface_model(args.surface, _parse_labels(args.labels))
    return {"dim": model.dim(params)}


def cmd_rep_matrix(args):
    params = _make_params(args)
    model = mcg.surface_model(args.surface, _parse_labels(args.labels))
    word = mcg.parse_word(args.word)
    rep = model.represent(params, word)
    return {"r": params.r, "s": params.s, "surface": rep.surface,
            "labels": list(rep.labels), "dim": rep.dim,
            "matrix": _matrix_json(rep.matrix)}


def cmd_curve_op(args):
    params = _make_params(args)
    model = mcg.surface_model(args.surface, _parse_labels(args.labels))
    rep = model.curve_operator(params, args.curve)
    return {"r": params.r, "s": params.s, "surface": rep.surface,
            "labels": list(rep.labels), "curve": args.curve,
            "matrix": _matrix_json(rep.matrix)}


def cmd_trace(args):
    params = _make_params(args)
    model = mcg.surface_model(args.surface, _parse_labels(args.labels))
    word = mcg.parse_word(args.word)
    value = mcg.mapping_torus_trace(model, params, word)
    return {"r": params.r, "s": params.s, "surface": model.name,
            "trace": _scalar_json(value)}


def cmd_detect(args):
    word = mcg.parse_word(args.word)
    res = mcg.detect(args.surface, word, range(args.rmin, args.rmax + 1), s=args.s)
    return {"r0": res.r0,
            "verdicts": {str(r): v for r, v in sorted(res.verdicts.items())},
            "witness": {str(r): list(w) for r, w in sorted(res.witness.items())}}


def cmd_braid_rep(args):
    params = _make_params(args)
    braid = braids.BraidWord(args.n, _parse_braid_word(args.word))
    sectors = [args.m] if args.m is not None else braids.sector_labels(params, args.n)
    out = []
    for m in sectors:
        rep = braids.jones_sector_rep(params, braid, m)
        out.append({"m": m, "dim": rep.dim, "matrix": _matrix_json(rep.matrix)})
    return {"r": params.r, "s": params.s, "n": args.n, "sectors": out}


def cmd_braid_detect(args):
    braid = braids.BraidWord(args.n, _parse_braid_word(args.word))
    res = braids.braid_detect(braid, range(args.rmin, args.rmax + 1),
                              cabling_bound=args.cable_max, s=args.s)
    witness = {str(r): {"cabling": list(c), "m": m}
               for r, (c, m) in sorted(res.witness.items())}
    return {"r0": res.r0,
            "verdicts": {str(r): v for r, v in sorted(res.verdicts.items())},
            "witness": witness}


def _move_from_json(obj):
    if not isinstance(obj, dict) or "type" not in obj:
        raise ParseFailure("each move needs a 'type' field")
    t = obj["type"]
    if t == "handle_slide":
        try:
            return skein.HandleSlide(int(obj["slide"]), int(obj["over"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseFailure("handle_slide needs integer 'slide' and 'over'") from exc
    if t == "balanced_stabilization":
        return skein.BalancedStabilization()
    if t == "circumcision_pair":
        around = obj.get("around")
        if around is not None:
            try:
                around = int(around)
            except (TypeError, ValueError) as exc:
                raise ParseFailure("'around' must be a component index") from exc
        return skein.CircumcisionPair(around)
    raise ParseFailure(f"unknown move type {t!r}")


def cmd_verify_moves(args):
    params = _make_params(args)
    link = _load_link(args.link)
    moves = _load_json(args.moves)
    if not isinstance(moves, list):
        raise ParseFailure("moves file must hold a JSON list")
    results = []
    all_ok = True
    for obj in moves:
        move = _move_from_json(obj)
        ok = skein.verify_move(params, link, move)
        all_ok = all_ok and ok
        results.append({"move": obj, "preserved": ok})
    return {"r": params.r, "s": params.s, "all_preserved": all_ok,
            "results": results}


# ----------------------------------------------------------------- main

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseFailure(message)


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="skeinrep", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, fn, **kw):
        p = sub.add_parser(name, **kw)
        p.set_defaults(fn=fn)
        p.add_argument("--s", type=int, default=1, help="root-of-unity twist s")
        return p

    p = add("eval-link", cmd_eval_link, help="evaluate a labeled link diagram")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--link", required=True, help="link JSON file ('-' = stdin)")

    p = add("projector", cmd_projector, help="dump a Jones-Wenzl projector")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)

    p = add("dump-recoupling", cmd_dump_recoupling, help="dump recoupling tables")
    p.add_argument("--r", type=int, required=True)

    p = add("dims", cmd_dims, help="dimension of a TQFT space")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--spine", help="spine JSON file")
    p.add_argument("--surface", help="named surface")
    p.add_argument("--labels", default="", help="boundary labels")

    p = add("rep-matrix", cmd_rep_matrix, help="representation matrix of a twist word")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--surface", required=True)
    p.add_argument("--labels", default="")
    p.add_argument("--word", required=True, help="e.g. 'b0 b1 -b2'")

    p = add("curve-op", cmd_curve_op, help="curve operator matrix")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--surface", required=True)
    p.add_argument("--labels", default="")
    p.add_argument("--curve", required=True)

    p = add("trace", cmd_trace, help="mapping-torus trace of a twist word")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--surface", required=True)
    p.add_argument("--labels", default="")
    p.add_argument("--word", required=True)

    p = add("detect", cmd_detect, help="least r detecting a mapping class")
    p.add_argument("--surface", required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--rmin", type=int, default=3)
    p.add_argument("--rmax", type=int, required=True)

    p = add("braid-rep", cmd_braid_rep, help="Jones sector matrices of a braid")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word", required=True, help="e.g. '1 2 -1'")
    p.add_argument("--m", type=int, default=None, help="one sector only")

    p = add("braid-detect", cmd_braid_detect, help="detection search for a braid")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--word", required=True)
    p.add_argument("--rmin", type=int, default=3)
    p.add_argument("--rmax", type=int, required=True)
    p.add_argument("--cable-max", type=int, default=1)

    p = add("verify-moves", cmd_verify_moves, help="check moves preserve the bracket")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--link", required=True)
    p.add_argument("--moves", required=True, help="JSON list of move descriptions")

    return top


def run(argv) -> int:
    try:
        args = build_parser().parse_args(argv)
        out = args.fn(args)
    except ParseFailure as exc:
        json.dump({"error": "parse", "message": str(exc)}, sys.stdout)
        sys.stdout.write("\n")
        return EXIT_PARSE
    except (DomainError, LinkFormatError, SpineFormatError) as exc:
        json.dump({"error": "domain", "message": str(exc)}, sys.stdout)
        sys.stdout.write("\n")
        return EXIT_DOMAIN
    except Exception as exc:  # noqa: BLE001 - CLI boundary
        json.dump({"error": "internal", "message": f"{type(exc).__name__}: {exc}"},
                  sys.stdout)
        sys.stdout.write("\n")
        return EXIT_INTERNAL
    json.dump(out, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")
    return 0


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
