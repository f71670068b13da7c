"""Command line for characteristic and resonance varieties of arrangements.

Exit status: 0 success or true, 1 certified false or empty result, 2 usage
or input error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .arrangement import Arrangement, ArrangementError, decone, intersection_data, suggest_direction, wiring_diagram
from .braidgroup import fiber_data, fibered_presentation, presentation_from_wiring
from .catalog import deleted_b3_pattern, load_arrangement, load_coset, model_from, pattern_from
from .reproduce import EXAMPLES, reproduce
from .symbolic import rank_finite_field
from .varieties.depth import (
    Certificate,
    CharacterError,
    certify_coset,
    coset_matrix,
    depth,
    scan_points,
)
from .varieties.report import Component, char_poset_report, point_components, resonance_cosets
from .varieties.resonance import BudgetExceeded, resonance_components
from .varieties.torus import Character, TorusCoset, coset_intersect
from .varieties.translated import search_translated

OK, FALSE, USAGE, BUDGET = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _emit(args, payload: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(payload, indent=1))
    else:
        print(text)


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("CHARVAR_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"CHARVAR_THREADS must be an integer, got {env!r}")
    return 1


def _direction(text: str | None):
    if text is None:
        return None
    parts = [p for p in text.replace(" ", "").split(",") if p]
    if len(parts) != 2:
        raise UsageError("--direction takes two numbers, e.g. -1,1")
    return tuple(Fraction(p) for p in parts)


def _model(args, arr: Arrangement, data: dict, block: bool = False):
    fibered = True if getattr(args, "fibered", False) or block else None
    return model_from(arr, data, args.decone, _direction(args.direction), fibered, block)


def _affine(args, arr: Arrangement, data: dict):
    """Affine arrangement and projection direction used for wiring data.

    A fixture's stored direction is a fibration direction, so it is only
    used when a fibered presentation is requested.
    """
    if arr.ambient_dim == 2:
        return arr, _direction(args.direction) or suggest_direction(arr)
    stored = data.get("model", {})
    h = args.decone if args.decone is not None else stored.get("decone_at") or arr.n
    aff = decone(arr, h - 1).affine
    d = _direction(args.direction) or (stored.get("direction") if args.fibered else None)
    d = tuple(Fraction(x) for x in d) if d else suggest_direction(aff)
    return aff, d


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_poset(args) -> int:
    arr, _ = load_arrangement(args.arrangement)
    data = intersection_data(arr)
    flats = [[i + 1 for i in f] for f in data.flats]
    payload = {"n": arr.n, "census": {str(k): v for k, v in data.census().items()}, "flats": flats}
    lines = [f"{arr.n} hyperplanes; flats by size: "
             + ", ".join(f"{v} of size {k}" for k, v in data.census().items())]
    lines += ["  " + " ".join(map(str, f)) for f in flats if len(f) >= 3]
    _emit(args, payload, "\n".join(lines))
    return OK


def cmd_wiring(args) -> int:
    arr, data = load_arrangement(args.arrangement)
    aff, d = _affine(args, arr, data)
    if args.fibered:
        fd = fiber_data(aff, d)
        wd, lab = fd.wiring, aff.restrict(fd.wires).labels
    else:
        wd, lab = wiring_diagram(aff, d), aff.labels
    wd.validate()
    verts = [{"lines": [lab[wd.wire_lines[w - 1]] for w in v.wires], "wires": list(v.wires),
              "J": list(v.J), "position": str(v.position)} for v in wd.vertices]
    payload = {"direction": [str(x) for x in d], "wires": [lab[i] for i in wd.wire_lines], "vertices": verts}
    lines = [f"direction {d[0]},{d[1]}; wires bottom to top: " + " ".join(payload["wires"])]
    for v in verts:
        lines.append(f"  at {v['position']}: wires {v['wires']} (lines {' '.join(v['lines'])}), J={v['J']}")
    _emit(args, payload, "\n".join(lines))
    return OK


def cmd_present(args) -> int:
    arr, data = load_arrangement(args.arrangement)
    aff, d = _affine(args, arr, data)
    P = fibered_presentation(aff, d) if args.fibered else presentation_from_wiring(aff, d)
    _emit(args, P.to_json(), P.format_text())
    return OK


def cmd_alexmat(args) -> int:
    arr, data = load_arrangement(args.arrangement)
    model = _model(args, arr, data, block=args.block)
    M = model.matrix
    payload = M.to_json()
    payload["generators"] = [g.line for g in model.presentation.generators]
    text = f"# columns: hyperplanes {' '.join(payload['generators'])}\n{M}"
    _emit(args, payload, text)
    return OK


def cmd_resonance(args) -> int:
    arr, _ = load_arrangement(args.arrangement)
    comps = resonance_components(arr, d=args.d, budget=args.budget, seed=args.seed)
    payload = {"d": args.d, "count": len(comps), "components": [c.to_json() for c in comps]}
    lines = [f"{len(comps)} components of R_{args.d}"]
    lines += [f"  {c.kind:9} {c.label}  dim {c.dim}" for c in comps]
    _emit(args, payload, "\n".join(lines))
    return OK if comps else FALSE


def cmd_depth(args) -> int:
    arr, data = load_arrangement(args.arrangement)
    model = _model(args, arr, data)
    t = Character.parse(args.char)
    d = depth(model, t)
    _emit(args, {"character": t.to_json(), "depth": d}, str(d))
    return OK


def cmd_certify(args) -> int:
    arr, data = load_arrangement(args.arrangement)
    model = _model(args, arr, data)
    K = load_coset(args.coset)
    if args.method == "exact":
        cert = certify_coset(model, K, args.d)
    else:
        if K.dim == 0:
            cert = certify_coset(model, K, args.d)
        else:
            r = rank_finite_field(coset_matrix(model, K), p=args.prime, seed=args.seed, trials=args.trials)
            gd = (model.ngens - 1) - r
            cert = Certificate(gd >= args.d, args.d, r, gd, model.ngens, K.format_parametrization(), "mod-p")
    text = (f"{'holds' if cert.holds else 'fails'}: generic depth {cert.generic_depth} "
            f"(rank {cert.rank} of {cert.ngens - 1}, {cert.method}) on {cert.parametrization}")
    _emit(args, cert.to_json(), text)
    return OK if cert.holds else FALSE


def cmd_intersect(args) -> int:
    cosets = [load_coset(c) for c in args.cosets]
    n = cosets[0].n
    if any(K.n != n for K in cosets):
        raise UsageError("cosets live in tori of different dimensions")
    acc = [cosets[0]]
    for K in cosets[1:]:
        acc = sorted({P for A in acc for P in coset_intersect(A, K)}, key=TorusCoset.sort_key)
    payload = {"count": len(acc), "pieces": [dict(P.to_json(), dim=P.dim) for P in acc]}
    lines = [f"{len(acc)} pieces"] + [f"  dim {P.dim}: {P.format_parametrization()}" for P in acc]
    _emit(args, payload, "\n".join(lines))
    return OK if acc else FALSE


def _patterns(args):
    if args.pattern:
        return [pattern_from(args.pattern, args.pattern_coset or [])]
    return [deleted_b3_pattern()]


def cmd_search(args) -> int:
    arr, data = load_arrangement(args.arrangement)
    model = _model(args, arr, data)
    res = search_translated(model, _patterns(args), max_order=args.max_order, budget=args.budget,
                            seed=args.seed, workers=_threads(args))
    payload = {"count": len(res), "components": [c.to_json() for c in res]}
    lines = [f"{len(res)} translated components"]
    for c in res:
        lines.append(f"  C({' '.join(str(i + 1) for i in c.support)}): {c.coset.format_parametrization()}"
                     f", generic depth {c.certificate.generic_depth}")
    _emit(args, payload, "\n".join(lines))
    return OK if res else FALSE


def cmd_scan(args) -> int:
    arr, data = load_arrangement(args.arrangement)
    model = _model(args, arr, data)
    gens = [Character.parse(g) for g in args.gen or []]
    cosets = [load_coset(c) for c in args.on or []]
    if args.orders is not None and not cosets:
        raise UsageError("--orders needs at least one --on coset")
    hits = scan_points(model, gens, args.orders, cosets, d=args.d, budget=args.scan_budget)
    payload = {"d": args.d, "count": len(hits), "characters": [t.to_json() for t in hits]}
    lines = [f"{len(hits)} characters of depth >= {args.d}"] + [f"  {t}" for t in hits]
    _emit(args, payload, "\n".join(lines))
    return OK if hits else FALSE


def _named(items, what):
    out = []
    for item in items or []:
        if "=" not in item:
            raise UsageError(f"{what} must look like NAME=VALUE, got {item!r}")
        out.append(tuple(item.split("=", 1)))
    return out


def cmd_report(args) -> int:
    arr, data = load_arrangement(args.arrangement)
    model = _model(args, arr, data)
    parts = [] if args.no_resonance else resonance_cosets(
        resonance_components(arr, budget=args.budget, seed=args.seed))
    if args.fixture_components:
        for x in data.get("expectations", {}).get("report", {}).get("extra", []):
            if "char" in x:
                parts += point_components([(x["name"], Character.parse(x["char"]))])
            else:
                parts.append(Component(x["name"], load_coset(x.get("file") or x["inline"]),
                                       x.get("provenance", "translated")))
    if args.search:
        res = search_translated(model, _patterns(args), max_order=args.max_order, budget=args.budget, seed=args.seed,
                                workers=_threads(args))
        have = {c.coset for c in parts}
        parts += [Component(f"C({' '.join(str(i + 1) for i in c.support)})", c.coset, "translated")
                  for c in res if c.coset not in have]
    for name, path in _named(args.coset, "--coset"):
        parts.append(Component(name, load_coset(path), "supplied"))
    parts += point_components([(n, Character.parse(c)) for n, c in _named(args.point, "--point")])
    if not parts:
        raise UsageError("nothing to report")
    rep = char_poset_report(model, parts, generic=args.generic)
    _emit(args, rep.to_json(), rep.format_text())
    return OK


def cmd_reproduce(args) -> int:
    bundle = reproduce(args.example, seed=args.seed, workers=_threads(args), budget=args.budget,
                       scan_budget=args.scan_budget)
    _emit(args, bundle.to_json(), bundle.format_text())
    return OK if bundle.ok else FALSE


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for every randomized step")
    common.add_argument("--budget", type=int, default=10 ** 6,
                        help="partition-search nodes / retranslation candidates")
    common.add_argument("--scan-budget", type=int, default=10 ** 5, help="maximum characters in a scan")
    common.add_argument("--threads", type=int, default=None, help="worker processes (default CHARVAR_THREADS or 1)")

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument("--decone", type=int, default=None, help="hyperplane sent to infinity (1-based)")
    model.add_argument("--direction", default=None, help="projection covector, e.g. -1,1")
    model.add_argument("--fibered", action="store_true", help="use the fibered presentation")

    p = argparse.ArgumentParser(prog="charvar", description=__doc__.split("\n")[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, helptext, parents=(common,)):
        sp = sub.add_parser(name, parents=list(parents), help=helptext)
        sp.set_defaults(func=func)
        return sp

    sp = add("poset", cmd_poset, "rank-2 flats of an arrangement")
    sp.add_argument("arrangement")
    sp = add("wiring", cmd_wiring, "wiring diagram of a decone", (common, model))
    sp.add_argument("arrangement")
    sp = add("present", cmd_present, "presentation of the decone's group", (common, model))
    sp.add_argument("arrangement")
    sp = add("alexmat", cmd_alexmat, "Alexander matrix", (common, model))
    sp.add_argument("arrangement")
    sp.add_argument("--block", action="store_true", help="block form of the fibered presentation")
    sp = add("resonance", cmd_resonance, "components of the resonance variety R_d")
    sp.add_argument("arrangement")
    sp.add_argument("--d", type=int, default=1)
    sp = add("depth", cmd_depth, "depth of a torsion character", (common, model))
    sp.add_argument("arrangement")
    sp.add_argument("--char", required=True, help='rotation numbers, e.g. "0,1/2,1/2,0"')
    sp = add("certify", cmd_certify, "certify a coset inside V_d", (common, model))
    sp.add_argument("arrangement")
    sp.add_argument("coset", nargs="?")
    sp.add_argument("--coset", dest="coset_opt", default=None)
    sp.add_argument("--d", type=int, default=1)
    sp.add_argument("--method", choices=("exact", "modp"), default="exact")
    sp.add_argument("--prime", type=int, default=None)
    sp.add_argument("--trials", type=int, default=5)
    sp = add("intersect", cmd_intersect, "intersect cosets")
    sp.add_argument("cosets", nargs="+")
    sp = add("search-translated", cmd_search, "pattern search for translated components", (common, model))
    sp.add_argument("arrangement")
    sp.add_argument("--max-order", type=int, default=2)
    sp.add_argument("--pattern", default=None, help="reference arrangement (default: deleted B3)")
    sp.add_argument("--pattern-coset", action="append", help="translated coset of the reference")
    sp = add("scan", cmd_scan, "torsion characters of depth >= d in a finite search set", (common, model))
    sp.add_argument("arrangement")
    sp.add_argument("--gen", action="append", help="generator character (repeatable)")
    sp.add_argument("--orders", type=int, default=None, help="torsion order bound on --on cosets")
    sp.add_argument("--on", action="append", help="coset file (repeatable)")
    sp.add_argument("--d", type=int, default=1)
    sp = add("report", cmd_report, "intersection poset of components", (common, model))
    sp.add_argument("arrangement")
    sp.add_argument("--coset", action="append", help="NAME=FILE (repeatable)")
    sp.add_argument("--point", action="append", help="NAME=CHAR (repeatable)")
    sp.add_argument("--search", action="store_true", help="add translated components found by search")
    sp.add_argument("--max-order", type=int, default=2)
    sp.add_argument("--pattern", default=None, help="reference arrangement for --search (default: deleted B3)")
    sp.add_argument("--pattern-coset", action="append", help="translated coset of the reference")
    sp.add_argument("--fixture-components", action="store_true",
                    help="add the extra components stored in the fixture")
    sp.add_argument("--no-resonance", action="store_true")
    sp.add_argument("--generic", choices=("exact", "modp"), default="exact")
    sp = add("reproduce", cmd_reproduce, "run a shipped example against its expectations")
    sp.add_argument("example", choices=sorted(EXAMPLES))
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    if args.command == "certify":
        args.coset = args.coset or args.coset_opt
        if args.coset is None:
            return _fail(args, USAGE, "usage", "certify needs a coset file")
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        return _fail(args, BUDGET, "budget", str(exc))
    except (UsageError, ArrangementError, CharacterError, FileNotFoundError, KeyError, ValueError,
            json.JSONDecodeError) as exc:
        return _fail(args, USAGE, type(exc).__name__, str(exc))


def _fail(args, code: int, kind: str, message: str) -> int:
    if getattr(args, "format", "text") == "json":
        print(json.dumps({"error": kind, "message": message, "exit": code}))
    else:
        print(f"charvar: {message}", file=sys.stderr)
    return code


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
