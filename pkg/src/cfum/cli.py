"""Command-line front end.

Structured output goes to stdout as JSON, a one-line summary to stderr.
Exit codes: 0 success or pass, 1 semantic failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from cfum.critical import ExtractionError, build_critical, check_extraction, find_path_or_binary, load_recipe
from cfum.experiments import EXPERIMENTS, run_experiment
from cfum.hypergraph import (
    CF,
    UM,
    Coloring,
    ColoringKind,
    InstanceError,
    colors_used,
    format_coloring,
    format_hypergraph,
    is_valid,
    parse_coloring,
    parse_hypergraph,
)
from cfum.psf import binary_odd_refuter, cf_b7_explicit, cf_b7_iterated, cf_color_from_psf, psf_from_ksubsets
from cfum.solvers import SolveBudget, chromatic_number_exact, um_tree_exact
from cfum.transfer import PreconditionError, extremal_nonuniform, extremal_uniform, um_from_cf, um_from_cf_uniform
from cfum.trees import (
    SubdivisionWitness,
    Tree,
    complete_binary,
    format_tree,
    identity_witness,
    parse_tree,
    path_hypergraph,
    path_tree,
    um_color_complete_binary,
    um_color_path,
    validate_subdivision,
    verify_tree_coloring,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2
KIND_NAMES = [k.value for k in ColoringKind]


class _UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InstanceError(f"cannot read {path}: {exc.strerror}") from None


def _emit(payload: dict, summary: str) -> None:
    json.dump(payload, sys.stdout, indent=2, default=str)
    sys.stdout.write("\n")
    print(summary, file=sys.stderr)


def _write_outputs(prefix: Optional[str], **texts: str) -> dict:
    """Write ``prefix.<ext>`` for each text when ``--out`` is given."""
    if not prefix:
        return {}
    written = {}
    for ext, text in texts.items():
        target = Path(f"{prefix}.{ext}")
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(text)
        written[ext] = str(target)
    return {"files": written}


def _load_coloring(path: str, n: int) -> Coloring:
    C = parse_coloring(_read(path))
    if len(C) != n:
        raise InstanceError(f"coloring has {len(C)} entries for {n} vertices")
    return C


def _instance(args):
    """``(tree or None, hypergraph or None)`` from ``--tree`` / ``--input``."""
    if bool(args.tree) == bool(args.input):
        raise _UsageError("give exactly one of --input FILE.hg or --tree FILE.tree")
    if args.tree:
        return parse_tree(_read(args.tree)), None
    return None, parse_hypergraph(_read(args.input))


# -- subcommands ------------------------------------------------------------------


def cmd_verify(args) -> int:
    T, H = _instance(args)
    n = T.n if T is not None else H.n
    C = _load_coloring(args.coloring, n)
    cert = verify_tree_coloring(T, C, args.kind) if T is not None else is_valid(H, C, args.kind)
    _emit(cert.to_dict(), f"{args.kind}: {cert.verdict}" + (f" at {list(cert.edge)}" if cert.edge else ""))
    return EXIT_OK if cert.ok else EXIT_FAIL


def cmd_solve(args) -> int:
    T, H = _instance(args)
    budget = SolveBudget.from_env(max_colors=args.max_colors, time_limit=args.time_limit, node_limit=args.node_limit)
    if T is not None and ColoringKind.parse(args.kind) is UM and T.n <= 25:
        res = um_tree_exact(T)
    else:
        res = chromatic_number_exact(H if H is not None else path_hypergraph(T), args.kind, budget)
    out = res.to_dict()
    _emit(out, f"{args.kind}: chi={res.chi} ({res.status}, lower bound {res.lower})")
    return EXIT_OK


def cmd_gen(args) -> int:
    if args.family == "extremal":
        _need(args, "n", "k")
        P = extremal_uniform(args.n, args.k, args.l) if args.l else extremal_nonuniform(args.n, args.k)
        hg, col = format_hypergraph(P.base), format_coloring(P.part_coloring())
        payload = {"hypergraph": hg, "part_coloring": col, "parts": [list(p) for p in P.parts], "warnings": list(P.warnings)}
        payload.update(_write_outputs(args.out, hg=hg, coloring=col))
        summary = f"extremal instance: n={P.base.n}, m={P.base.m}, {P.k} parts"
    elif args.family == "critical":
        _need(args, "k")
        if args.recipe in (None, "canonical", "compact"):
            recipe = args.recipe or "canonical"
        else:
            recipe = load_recipe(_read(args.recipe))
        T = build_critical(args.k, recipe)
        payload = {"tree": format_tree(T)}
        payload.update(_write_outputs(args.out, tree=payload["tree"]))
        summary = f"{args.k}-critical tree on {T.n} vertices"
    else:
        _need(args, "d")
        T = complete_binary(args.d)
        payload = {"tree": format_tree(T)}
        payload.update(_write_outputs(args.out, tree=payload["tree"]))
        summary = f"complete binary tree with {args.d} levels"
    _emit(payload, summary)
    return EXIT_OK


def _tree_coloring_payload(T: Tree, C: Coloring, kind, prefix: Optional[str]) -> dict:
    cert = verify_tree_coloring(T, C, kind)
    payload = {
        "tree": format_tree(T),
        "coloring": format_coloring(C),
        "colors_used": colors_used(C),
        "certificate": cert.to_dict(),
    }
    payload.update(_write_outputs(prefix, tree=payload["tree"], coloring=payload["coloring"]))
    return payload


def cmd_color(args) -> int:
    method = args.method
    if method == "um-from-cf":
        if not (args.input and args.cf):
            raise _UsageError("um-from-cf needs --input FILE.hg and --cf COLORING")
        H = parse_hypergraph(_read(args.input))
        C = _load_coloring(args.cf, H.n)
        out = um_from_cf_uniform(H, C, args.uniform) if args.uniform else um_from_cf(H, C)
        cert = is_valid(H, out, UM)
        payload = {"coloring": format_coloring(out), "colors_used": colors_used(out), "certificate": cert.to_dict()}
        payload.update(_write_outputs(args.out, coloring=payload["coloring"]))
    elif method == "psf":
        _need(args, "n", "k", "r")
        T, C = cf_color_from_psf(psf_from_ksubsets(args.n, args.k), args.r)
        payload = _tree_coloring_payload(T, C, CF, args.out)
    elif method == "b7":
        T, C = cf_b7_iterated(args.iterate) if args.iterate else cf_b7_explicit()
        payload = _tree_coloring_payload(T, C, CF, args.out)
    elif method == "um-path":
        _need(args, "n")
        payload = _tree_coloring_payload(path_tree(args.n), um_color_path(args.n), UM, args.out)
    else:
        _need(args, "d")
        payload = _tree_coloring_payload(complete_binary(args.d), um_color_complete_binary(args.d), UM, args.out)
    cert = payload["certificate"]
    _emit(payload, f"{method}: {payload['colors_used']} colors, verifier {cert['verdict']}")
    return EXIT_OK if cert["verdict"] == "pass" else EXIT_FAIL


def cmd_extract(args) -> int:
    T = parse_tree(_read(args.input))
    try:
        res = find_path_or_binary(T, args.k, args.l)
    except ExtractionError as exc:
        _emit({"error": str(exc)}, f"extraction failed: {exc}")
        return EXIT_FAIL
    cert = check_extraction(T, res)
    payload = dict(res.to_dict(), certificate=cert.to_dict())
    _emit(payload, f"extracted a {payload['type']} witness, validation {cert.verdict}")
    return EXIT_OK if cert.ok else EXIT_FAIL


def cmd_refute(args) -> int:
    T = parse_tree(_read(args.tree))
    C = _load_coloring(args.coloring, T.n)
    if args.witness:
        w = SubdivisionWitness.from_dict(T, json.loads(_read(args.witness)))
    else:
        d = T.n.bit_length()
        if T.n != 2**d - 1:
            raise InstanceError("without --witness the tree must be a complete binary tree in heap order")
        w = identity_witness(d, T)
    check = validate_subdivision(w)
    if not check.ok:
        raise InstanceError(f"witness does not validate: {check.reason}")
    cert = binary_odd_refuter(T, w, C, args.k)
    summary = "all-even path found" if not cert.ok else "no refutation forced and none found"
    _emit(cert.to_dict(), summary)
    return EXIT_OK if cert.ok else EXIT_FAIL


def cmd_experiment(args) -> int:
    if args.name not in EXPERIMENTS:
        _emit({"error": f"unknown experiment {args.name!r}", "known": sorted(EXPERIMENTS)}, f"unknown experiment {args.name!r}")
        return EXIT_INPUT
    rep = run_experiment(args.name, seed=args.seed)
    out = rep.to_dict()
    out["seed"] = args.seed
    passed = sum(c.ok for c in rep.claims)
    _emit(out, f"{args.name}: {passed}/{len(rep.claims)} claims pass in {rep.seconds:.2f}s")
    return EXIT_OK if rep.ok else EXIT_FAIL


def _need(args, *names):
    missing = [f"--{n.replace('_', '-')}" for n in names if getattr(args, n, None) is None]
    if missing:
        raise _UsageError(f"{args.command} {getattr(args, 'family', None) or getattr(args, 'method', '')} needs {' '.join(missing)}")


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cfum", description="Unique-maximum, conflict-free and odd colorings of hypergraphs and trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_flags(p):
        p.add_argument("--kind", required=True, choices=KIND_NAMES)
        p.add_argument("--input", help="hypergraph file (.hg)")
        p.add_argument("--tree", help="tree file (.tree); its path hypergraph is used")

    p = sub.add_parser("verify", help="check a coloring")
    instance_flags(p)
    p.add_argument("--coloring", required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("solve", help="exact chromatic number with a witness")
    instance_flags(p)
    p.add_argument("--max-colors", type=int)
    p.add_argument("--time-limit", type=float, help="seconds; overrides CFUM_TIME_LIMIT")
    p.add_argument("--node-limit", type=int)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("gen", help="generate instances")
    p.add_argument("family", choices=["extremal", "critical", "binary"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--l", type=int, help="edge size for the uniform extremal family")
    p.add_argument("--d", type=int, help="levels of the complete binary tree")
    p.add_argument("--recipe", help="JSON recipe file, or 'canonical' / 'compact'")
    p.add_argument("--out", help="write PREFIX.hg / PREFIX.tree / PREFIX.coloring")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("color", help="run a coloring construction")
    p.add_argument("method", choices=["um-from-cf", "psf", "b7", "um-path", "um-binary"])
    p.add_argument("--input", help="hypergraph file for um-from-cf")
    p.add_argument("--cf", help="conflict-free coloring file for um-from-cf")
    p.add_argument("--uniform", type=int, metavar="L", help="use the l-uniform transfer")
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--iterate", type=int, metavar="R", help="stack the B_7 pattern R times")
    p.add_argument("--out")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("extract", help="long path or deep binary subdivision in a critical tree")
    p.add_argument("--input", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--l", type=int, required=True)
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("refute", help="all-even path in a colored binary subdivision")
    p.add_argument("--tree", required=True)
    p.add_argument("--coloring", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--witness", help="subdivision witness JSON; default is the identity on B_d")
    p.set_defaults(func=cmd_refute)

    p = sub.add_parser("experiment", help="run a named reproduction")
    p.add_argument("name", help=", ".join(EXPERIMENTS))
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INPUT
    try:
        return args.func(args)
    except PreconditionError as exc:
        cert = exc.certificate.to_dict() if exc.certificate is not None else None
        _emit({"error": str(exc), "certificate": cert}, f"input error: {exc}")
        return EXIT_INPUT
    except (InstanceError, _UsageError, json.JSONDecodeError, KeyError) as exc:
        _emit({"error": str(exc)}, f"input error: {exc}")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
