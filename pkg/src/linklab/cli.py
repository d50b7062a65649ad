"""Batch front door: ``linklab <command> ...``; every report is sorted JSON.

Exit codes: 0 success (including inconclusive searches), 2 usage or bad
input, 3 exhausted/infeasible, 4 a measurement contradicting a theorem.
"""
from __future__ import annotations

import argparse
import platform
import sys

from . import __version__
from .errors import GeometryError, InvalidArgument, NonGenericDirection, ResourceExhausted, TheoremContradiction
from .graphcore import (MarkedGraph, build_D4, build_F, build_F115, build_F126, check_cycle,
                        complete_graph, complete_multipartite, k331, load_f_config)
from .invariants import certify_knotted
from .io import dumps, embedding_from_json, embedding_to_json, graph_from_json, graph_to_json, load_json
from .linkhunt import (cg_k6_checksum, f115_pipeline, find_knotted_cycle_through_path,
                       find_triangle_square_k331, k7_arf_checksum, theorem1_pipeline)
from .modsplice import reduce_to_multiple_of_n, scene_from_json, scene_to_json, sequence_table, synthetic_scene
from .spatial import gauss_data, linking_number, random_embedding, validate_general_position

EXIT_USAGE, EXIT_EXHAUSTED, EXIT_CONTRADICTION = 2, 3, 4


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _invocation(args, argv) -> dict:
    return {
        "argv": list(argv),
        "command": args.command,
        "seed": getattr(args, "seed", None),
        "budget": getattr(args, "budget", None),
        "versions": {"linklab": __version__, "python": platform.python_version()},
    }


def _load_embedding(path):
    data = load_json(path)
    return embedding_from_json(data), data


# ---------------------------------------------------------------- commands

def cmd_gen(args) -> tuple[dict, int]:
    kind = args.kind
    if kind == "k":
        if not args.params:
            raise UsageError("gen k needs a size, e.g. 'gen k 6' or 'gen k 3,3,1'")
        sizes = _int_list(args.params[0])
        g = complete_graph(sizes[0]) if len(sizes) == 1 else complete_multipartite(*sizes)
    elif kind == "k331":
        g = k331()
    elif kind == "F":
        g = build_F(load_f_config(args.f_config))
    elif kind == "F126":
        g = build_F126(build_F(load_f_config(args.f_config)))
    elif kind == "F115":
        g = build_F115(build_F(load_f_config(args.f_config)))
    elif kind == "D4":
        g = build_D4()
    else:
        raise UsageError(f"unknown graph kind {kind!r}")
    out = graph_to_json(g)
    if isinstance(g, MarkedGraph) and g.designated:
        out["designated"] = [list(c) for c in g.designated]
    return out, 0


def cmd_embed(args) -> tuple[dict, int]:
    data = load_json(args.graph)
    g = graph_from_json(data)
    host = g.graph if isinstance(g, MarkedGraph) else g
    e = random_embedding(host, args.seed, args.span)
    violations = validate_general_position(e)
    extra = {"general_position": {"ok": not violations, "violations": violations}}
    for key in ("designated",):
        if key in data:
            extra[key] = data[key]
    out = embedding_to_json(e, **extra)
    if "marks" in data:
        out["graph"]["marks"] = data["marks"]
    return out, 0


def cmd_hunt(args) -> tuple[dict, int]:
    e, data = _load_embedding(args.embedding)
    pipe = args.pipeline
    if pipe == "k6":
        checksum = cg_k6_checksum(e)
        return {"pipeline": pipe, "checksum": checksum}, (0 if checksum == 1 else EXIT_CONTRADICTION)
    if pipe == "k7arf":
        checksum = k7_arf_checksum(e)
        return {"pipeline": pipe, "checksum": checksum}, (0 if checksum == 1 else EXIT_CONTRADICTION)
    if pipe == "k331":
        tri, sq, lk = find_triangle_square_k331(e)
        return {"pipeline": pipe, "triangle": list(tri), "square": list(sq), "lk": lk}, 0
    if pipe in ("theorem1", "f115"):
        run = theorem1_pipeline if pipe == "theorem1" else f115_pipeline
        report = run(e, args.budget, args.max_len)
        return {"pipeline": pipe, **report.to_json()}, (EXIT_CONTRADICTION if report.contradiction else 0)
    if pipe == "path":
        marks = data.get("graph", {}).get("marks")
        if not marks:
            raise InvalidArgument("embedding carries no a-b-c marks")
        path = (marks["a"], marks["b"], marks["c"])
        search = find_knotted_cycle_through_path(e, path, args.max_len, args.budget)
        out = {"pipeline": pipe, "path": list(path), "found": search.found,
               "stage": "ok" if search.found else "inconclusive",
               "searched": [{"cycle": list(c), "determinant": str(d)} for c, d in search.log]}
        if search.found:
            out["cycle"] = list(search.cycle)
            out["certificate"] = search.certificate.to_json()
        return out, 0
    raise UsageError(f"unknown pipeline {pipe!r}")


def cmd_splice(args) -> tuple[dict, int]:
    if args.n is None or args.n < 2:
        raise InvalidArgument("splice needs --n >= 2 (n = 1 is trivial)")
    if args.scene:
        scene = scene_from_json(load_json(args.scene))
    else:
        if not args.targets:
            raise UsageError("splice needs --targets or --scene")
        if len(args.targets) != args.n:
            raise InvalidArgument(f"--targets must list {args.n} linking numbers")
        scene = synthetic_scene(args.n, args.targets, args.seed, args.vertices)
    result = reduce_to_multiple_of_n(scene, args.n)
    out = {"result": result.to_json()}
    if args.with_scene:
        out["scene"] = scene_to_json(scene)
    return out, 0


def cmd_seqs(args) -> tuple[dict, int]:
    lo, hi = (args.n, args.n) if args.n is not None else (args.lo, args.hi)
    if lo < 2 or hi < lo:
        raise InvalidArgument("need 2 <= lo <= hi")
    rows = sequence_table(range(lo, hi + 1))
    for row in rows:
        if row.pop("small_n"):
            row["note"] = "inferior bound: better bounds are known for n <= 4"
    return {"rows": rows}, 0


def cmd_lk(args) -> tuple[dict, int]:
    e, data = _load_embedding(args.embedding)
    cycles = args.cycle or [tuple(c) for c in data.get("cycles", [])]
    if len(cycles) < 2:
        raise UsageError("lk needs at least two --cycle arguments")
    for c in cycles:
        check_cycle(e.host, c)
    pairs = []
    for i in range(len(cycles)):
        for j in range(i + 1, len(cycles)):
            pairs.append({"i": i, "j": j, "lk": linking_number(e, cycles[i], cycles[j], args.seed)})
    return {"cycles": [list(c) for c in cycles], "pairs": pairs}, 0


def cmd_knot(args) -> tuple[dict, int]:
    e, data = _load_embedding(args.embedding)
    cyc = args.cycle or data.get("cycle")
    if not cyc:
        raise UsageError("knot needs --cycle")
    check_cycle(e.host, cyc)
    d = gauss_data(e, cyc, seed=args.seed)
    cert = certify_knotted(d, args.primes or ())
    return {"cycle": list(cyc), "crossings": len(d.crossings),
            "direction": list(d.direction), **cert.to_json()}, 0


# ------------------------------------------------------------------ parser

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="linklab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, budget=False):
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write JSON here instead of stdout")
        if budget:
            sp.add_argument("--budget", type=int, default=200, help="certificates per search")

    sp = sub.add_parser("gen", help="build a graph")
    sp.add_argument("kind", choices=["k", "k331", "F", "F126", "F115", "D4"])
    sp.add_argument("params", nargs="*")
    sp.add_argument("--f-config", default="default", help="middle-edge JSON for F")
    common(sp)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("embed", help="seeded general-position embedding of a graph")
    sp.add_argument("graph")
    sp.add_argument("--span", type=int, default=1000)
    common(sp)
    sp.set_defaults(func=cmd_embed)

    sp = sub.add_parser("hunt", help="run a search pipeline on an embedding")
    sp.add_argument("pipeline", choices=["k6", "k331", "k7arf", "theorem1", "f115", "path"])
    sp.add_argument("embedding")
    sp.add_argument("--max-len", type=int, default=15)
    common(sp, budget=True)
    sp.set_defaults(func=cmd_hunt)

    sp = sub.add_parser("splice", help="reduce a ring of keys to lk = kn")
    sp.add_argument("--n", type=int)
    sp.add_argument("--targets", type=_int_list)
    sp.add_argument("--scene", help="scene JSON instead of a synthetic one")
    sp.add_argument("--vertices", type=int, help="vertices per key cycle")
    sp.add_argument("--with-scene", action="store_true", help="include the final scene geometry")
    common(sp)
    sp.set_defaults(func=cmd_splice)

    sp = sub.add_parser("seqs", help="table of the vertex-bound sequences")
    sp.add_argument("lo", type=int, nargs="?", default=2)
    sp.add_argument("hi", type=int, nargs="?", default=10)
    sp.add_argument("--n", type=int, help="single row")
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_seqs)

    sp = sub.add_parser("lk", help="pairwise linking numbers of cycles")
    sp.add_argument("embedding")
    sp.add_argument("--cycle", type=_int_list, action="append")
    common(sp)
    sp.set_defaults(func=cmd_lk)

    sp = sub.add_parser("knot", help="knottedness certificate for one cycle")
    sp.add_argument("embedding")
    sp.add_argument("--cycle", type=_int_list)
    sp.add_argument("--primes", type=_int_list)
    common(sp)
    sp.set_defaults(func=cmd_knot)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        body, code = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (InvalidArgument, FileNotFoundError) as exc:
        print(f"linklab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceExhausted, NonGenericDirection, GeometryError) as exc:
        print(f"linklab: infeasible: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except TheoremContradiction as exc:
        print(f"linklab: contradiction: {exc}", file=sys.stderr)
        return EXIT_CONTRADICTION
    text = dumps({"invocation": _invocation(args, argv), **body})
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
