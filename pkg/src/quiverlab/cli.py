"""Command-line entry point.

Verbs cover the whole pipeline: quiver construction from reduced words,
mutation, reduction scripts, rank, reddening search, seed closure,
membership checks, localization exponents, frozen specialization, minor
identity verification, open-cell dimensions, and the HTTP service.

Exit codes: 0 success, 1 domain error (message on stderr), 2 usage error.
All numeric output is exact: fractions print as p/q, never floats.
"""

from __future__ import annotations

import argparse
import json
import sys

from .coxeter import DynkinDiagram, parse_word, richardson_dim, weyl_element
from .errors import QuiverlabError
from .exact import parse_expression
from .minors import verify_exchange_identities
from .quivers import (
    ReductionScript,
    apply_reduction,
    exchange_rank,
    find_reddening,
    gls_quiver,
    quiver_from_text,
    quiver_to_text,
)
from .seeds import (
    AlgebraFlavor,
    closure,
    initial_seed,
    localization_certificate,
    mutate_seed,
    seed_from_obj,
    seed_to_obj,
    specialize_frozen,
    starfish_membership,
)

__all__ = ["main"]


def _write_output(path, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _read_text(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_quiver(path: str):
    return quiver_from_text(_read_text(path))


def _load_seed(path: str):
    return seed_from_obj(json.loads(_read_text(path)))


def _seed_text(seed) -> str:
    return json.dumps(seed_to_obj(seed), indent=2) + "\n"


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _diagram(label: str) -> DynkinDiagram:
    return DynkinDiagram.from_label(label)


def _word(text: str):
    return parse_word(text)


# ---------------------------------------------------------------------------
# verb handlers


def _cmd_gls(args) -> int:
    q = gls_quiver(_diagram(args.type), _word(args.word))
    _write_output(args.out, quiver_to_text(q))
    return 0


def _cmd_mutate(args) -> int:
    obj = json.loads(_read_text(args.path))
    kind = obj.get("type") if isinstance(obj, dict) else None
    if kind == "ice_quiver":
        q = quiver_from_text(_read_text(args.path))
        for k in args.at:
            q = q.mutate(k)
        _write_output(args.out, quiver_to_text(q))
        return 0
    if kind == "seed":
        seed = seed_from_obj(obj)
        for k in args.at:
            seed = mutate_seed(seed, k)
        _write_output(args.out, _seed_text(seed))
        return 0
    raise QuiverlabError(f"unrecognized file type {kind!r} in {args.path}")


def _cmd_reduce(args) -> int:
    q = _load_quiver(args.path)
    script = ReductionScript.from_obj(json.loads(_read_text(args.script)))
    _write_output(args.out, quiver_to_text(apply_reduction(q, script)))
    return 0


def _cmd_rank(args) -> int:
    q = _load_quiver(args.path)
    sys.stdout.write(f"{exchange_rank(q)}\n")
    return 0


def _cmd_reddening(args) -> int:
    q = _load_quiver(args.path)
    seq = find_reddening(q, max_depth=args.depth)
    if args.json:
        sys.stdout.write(_json_text({"sequence": list(seq) if seq else None}))
    elif seq is None:
        sys.stdout.write("none\n")
    else:
        sys.stdout.write(",".join(str(k) for k in seq) + "\n")
    return 0


def _cmd_closure(args) -> int:
    q = _load_quiver(args.path)
    result = closure(initial_seed(q), max_seeds=args.max_seeds)
    if args.json:
        sys.stdout.write(_json_text({
            "seeds": len(result.seeds),
            "variables": result.variable_strings(),
            "edges": [list(e) for e in result.edges],
        }))
    else:
        sys.stdout.write(f"seeds {len(result.seeds)}\n")
        sys.stdout.write(f"variables {len(result.variables)}\n")
        sys.stdout.write(f"edges {len(result.edges)}\n")
    return 0


def _cmd_starfish(args) -> int:
    q = _load_quiver(args.path)
    f = parse_expression(args.expr, nvars=q.n)
    verdict = starfish_membership(q, f, flavor=AlgebraFlavor.parse(args.flavor))
    if args.json:
        sys.stdout.write(_json_text({
            "member": verdict.member,
            "failing": list(verdict.failing),
            "rings": list(verdict.rings),
        }))
    elif verdict.member:
        sys.stdout.write("member\n")
    else:
        sys.stdout.write("not a member: fails " + ", ".join(verdict.failing) + "\n")
    return 0


def _cmd_localize(args) -> int:
    q = _load_quiver(args.path)
    f = parse_expression(args.expr, nvars=q.n)
    power = localization_certificate(
        q,
        args.vertex,
        f,
        flavor=AlgebraFlavor.parse(args.flavor),
        d_max=args.max_power,
    )
    if args.json:
        sys.stdout.write(_json_text({"power": power}))
    else:
        sys.stdout.write("none\n" if power is None else f"{power}\n")
    return 0


def _cmd_specialize(args) -> int:
    seed = _load_seed(args.path)
    _write_output(args.out, _seed_text(specialize_frozen(seed, args.vertex)))
    return 0


def _cmd_verify_minors(args) -> int:
    report = verify_exchange_identities(
        _diagram(args.type),
        _word(args.word),
        trials=args.trials,
        seed=args.seed,
        jobs=args.jobs,
    )
    if args.json:
        sys.stdout.write(_json_text(report.to_obj()))
    else:
        for entry in report.entries:
            if entry.ok:
                sys.stdout.write(
                    f"vertex {entry.vertex}: ok ({entry.trials_run} trials)\n"
                )
            elif not entry.symbolic_ok:
                sys.stdout.write(f"vertex {entry.vertex}: FAIL (symbolic)\n")
            else:
                sys.stdout.write(
                    f"vertex {entry.vertex}: FAIL (trial {entry.first_failure[0]})\n"
                )
        sys.stdout.write("all ok\n" if report.all_ok else "FAILED\n")
    if not report.all_ok:
        sys.stderr.write("error: exchange identity verification failed\n")
        return 1
    return 0


def _cmd_richardson_dim(args) -> int:
    diagram = _diagram(args.type)
    v = weyl_element(diagram, _word(args.v))
    w = weyl_element(diagram, _word(args.w))
    sys.stdout.write(f"{richardson_dim(v, w)}\n")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(
        create_app(term_budget=args.term_budget),
        host=args.host,
        port=args.port,
        log_level="warning",
    )
    return 0


# ---------------------------------------------------------------------------
# parser


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quiverlab",
        description="workbench for ice quivers, seeds, and flag minor checks",
    )
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("gls", help="build the ice quiver of a reduced word")
    p.add_argument("--type", required=True, help="Dynkin label, e.g. A4")
    p.add_argument("--word", required=True, help="comma-separated letters")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_gls)

    p = sub.add_parser("mutate", help="mutate a quiver or seed file")
    p.add_argument("path", help="quiver or seed JSON file")
    p.add_argument(
        "--at", action="append", type=int, required=True,
        help="vertex to mutate; repeat for a sequence",
    )
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_mutate)

    p = sub.add_parser("reduce", help="apply a reduction script to a quiver")
    p.add_argument("path", help="quiver JSON file")
    p.add_argument("--script", required=True, help="reduction script JSON file")
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("rank", help="rank of the exchange matrix")
    p.add_argument("path", help="quiver JSON file")
    p.set_defaults(func=_cmd_rank)

    p = sub.add_parser("reddening", help="search for a reddening sequence")
    p.add_argument("path", help="quiver JSON file")
    p.add_argument("--depth", type=int, default=20, help="search depth bound")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_reddening)

    p = sub.add_parser("closure", help="enumerate the seed closure")
    p.add_argument("path", help="quiver JSON file")
    p.add_argument("--max-seeds", type=int, default=20000)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("starfish", help="membership in the common overlap ring")
    p.add_argument("path", help="quiver JSON file")
    p.add_argument("--expr", required=True, help="rational expression")
    p.add_argument(
        "--flavor", choices=["invertible", "non-invertible"],
        default="invertible", help="frozen variable convention",
    )
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_starfish)

    p = sub.add_parser(
        "localize", help="least power of a frozen-to-be variable clearing an expression"
    )
    p.add_argument("path", help="quiver JSON file")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--expr", required=True, help="rational expression")
    p.add_argument(
        "--flavor", choices=["invertible", "non-invertible"], default="invertible"
    )
    p.add_argument("--max-power", type=int, default=10)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_localize)

    p = sub.add_parser("specialize", help="set a frozen variable to 1 in a seed")
    p.add_argument("path", help="seed JSON file")
    p.add_argument("--vertex", type=int, required=True)
    p.add_argument("--out", help="output path (default stdout)")
    p.set_defaults(func=_cmd_specialize)

    p = sub.add_parser(
        "verify-minors", help="check exchange identities against flag minors"
    )
    p.add_argument("--type", required=True, help="Dynkin label (type A only)")
    p.add_argument("--word", required=True, help="comma-separated letters")
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_verify_minors)

    p = sub.add_parser("richardson-dim", help="dimension of the open cell")
    p.add_argument("--type", required=True, help="Dynkin label")
    p.add_argument("--v", required=True, help='word for v; "" is the identity')
    p.add_argument("--w", required=True, help='word for w; "" is the identity')
    p.set_defaults(func=_cmd_richardson_dim)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=7161)
    p.add_argument("--term-budget", type=int, default=200)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (QuiverlabError, ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
