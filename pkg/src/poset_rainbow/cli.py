"""Command-line entry point: ``poset-rainbow <verb> [options]``.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 timeout.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path

from . import acceptance
from .constructions import CONSTRUCTION_KINDS, build, certify
from .copies import find_copy, is_valid_embedding
from .embedding import (
    build_bigraph,
    complete_crown,
    complete_p2km1,
    greedy_spider,
    min_degree_subgraph,
)
from .errors import EmbeddingFailure, PosetRainbowError, SearchTimeout
from .extremal import SearchConfig, ar_exact, check_sandwich, la_exact
from .families import check_lemma10, partition_f123
from .formats import dump_coloring, dump_family, embedding_to_json, load_coloring, load_family, load_poset, poset_to_json
from .poset import canonical_decomposition, extremal_elements, hasse, height

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_TIMEOUT = 0, 1, 2, 3


class UsageError(Exception):
    pass


def _threads(args):
    value = args.threads
    if value is None:
        value = os.environ.get("POSET_RAINBOW_THREADS") or 1
    try:
        value = int(value)
    except ValueError as exc:
        raise UsageError("thread count must be an integer") from exc
    if value < 1:
        raise UsageError("thread count must be positive")
    return value


def _emit(payload, fmt, out):
    if fmt == "csv":
        rows = payload if isinstance(payload, list) else [payload]
        keys = sorted({k for r in rows for k in r})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for r in rows:
            writer.writerow({k: json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v for k, v in r.items()})
        out.write(buf.getvalue())
    else:
        out.write(json.dumps(payload, sort_keys=True) + "\n")


def _write_json(path, data):
    Path(path).write_text(json.dumps(data, sort_keys=True, indent=1) + "\n")


# ------------------------------------------------------------------- verbs


def cmd_poset(args):
    P = load_poset(args.catalog)
    mins, maxs = extremal_elements(P)
    out = {"size": P.size, "height": height(P), "labels": list(P.labels)}
    if args.show in ("hasse", "all"):
        out["hasse"] = [[P.labels[p], P.labels[q]] for p, q in hasse(P).arcs]
    if args.show in ("layers", "all"):
        out["layers"] = [[P.labels[i] for i in sorted(layer)] for layer in canonical_decomposition(P)]
    if args.show == "all":
        out["minimal"] = sorted(P.labels[i] for i in mins)
        out["maximal"] = sorted(P.labels[i] for i in maxs)
    if args.out:
        _write_json(args.out, poset_to_json(P))
    return EXIT_OK, out


def _cfg(args, posets, convex=False):
    return SearchConfig(
        args.n,
        posets,
        args.mode,
        convex_only=convex,
        time_limit=args.time_limit,
        thread_budget=_threads(args),
        symmetry=not args.no_symmetry,
    )


def _result(r, witness):
    return {"value": r.value, "exact": r.exact, "nodes": r.nodes, "witness": witness}


def cmd_la(args):
    posets = [load_poset(p) for p in args.posets.split(",")]
    r = la_exact(_cfg(args, posets, args.convex))
    witness = None if r.witness is None else [format(m, "x") for m in r.witness]
    if args.emit_witness and r.witness is not None:
        Path(args.emit_witness).write_text(dump_family(r.witness))
    return (EXIT_OK if r.exact else EXIT_TIMEOUT), _result(r, witness)


def cmd_ar(args):
    P = load_poset(args.poset)
    r = ar_exact(_cfg(args, [P]))
    witness = None if r.witness is None else list(r.witness.colors)
    if args.emit_witness and r.witness is not None:
        _write_json(args.emit_witness, {"n": args.n, "colors": witness})
    return (EXIT_OK if r.exact else EXIT_TIMEOUT), _result(r, witness)


def cmd_construct(args):
    parts = [args.kind] + ([str(args.n)] if args.n is not None else []) + [str(p) for p in args.param]
    coloring = build(":".join(parts))
    if args.out:
        Path(args.out).write_text(dump_coloring(coloring))
    return EXIT_OK, {"kind": args.kind, "colors": coloring.color_count, "n": coloring.n}


def cmd_certify(args):
    coloring = load_coloring(args.coloring)
    rep = certify(coloring, load_poset(args.poset), args.mode)
    return (EXIT_OK if rep["rainbow"] is None else EXIT_FAIL), rep


def cmd_find_copy(args):
    F = load_family(args.family)
    P = load_poset(args.poset)
    emb = find_copy(P, F, args.mode)
    if emb is None:
        return EXIT_OK, {"found": False, "embedding": None}
    if not is_valid_embedding(P, emb.images, args.mode, family=F):
        return EXIT_FAIL, {"found": True, "verified": False}
    return EXIT_OK, {"found": True, "embedding": embedding_to_json(emb)}


def _core(F, j):
    B = build_bigraph(F, F, j)
    return min_degree_subgraph(B, max(1, int(B.average_degree() // 2)))


def cmd_embed_spider(args):
    F = load_family(args.family)
    core = _core(F, args.j)
    spider = greedy_spider(core, args.legs, args.leglen, args.discipline, k=args.k)
    emb = spider.as_copy()
    ok = is_valid_embedding(emb.poset, emb.images, "strong", family=F)
    return (EXIT_OK if ok else EXIT_FAIL), {"embedding": embedding_to_json(emb), "verified": ok}


def cmd_embed_crown(args):
    F = load_family(args.family)
    k = args.k
    if args.j is None:
        part = partition_f123(F, args.epsilon, k)
        j = part.dominant_j(1) or part.dominant_j(2)
        if j is None:
            return EXIT_FAIL, {"error": "no shadow-dense members to build on"}
    else:
        j = args.j
    core = _core(F, j)
    spider = greedy_spider(core, args.legs, k - 2, args.discipline, k=k)
    path = complete_p2km1(spider, F, k)
    crown = complete_crown(path, F.n)
    ok = is_valid_embedding(crown.poset, crown.images, "strong")
    return (EXIT_OK if ok else EXIT_FAIL), {"j": j, "embedding": embedding_to_json(crown), "verified": ok}


def cmd_lemma10(args):
    rep = check_lemma10(args.n, args.k, args.j)
    out = {
        "n": args.n,
        "k": args.k,
        "j": args.j,
        "ratio_margin": rep.ratio_margin,
        "sum_margin": rep.sum_margin,
        "single_margin": rep.single_margin,
        "all_positive": rep.all_positive,
    }
    return (EXIT_OK if rep.all_positive else EXIT_FAIL), out


def cmd_partition(args):
    F = load_family(args.family)
    part = partition_f123(F, args.epsilon, args.k)
    return EXIT_OK, {
        "f1": len(part.f1),
        "f2": len(part.f2),
        "f3": len(part.f3),
        "dominant_j1": part.dominant_j(1),
        "dominant_j2": part.dominant_j(2),
    }


def cmd_sandwich(args):
    rep = check_sandwich(args.n, load_poset(args.poset), args.mode, time_limit=args.time_limit)
    return (EXIT_OK if not rep["violations"] else EXIT_FAIL), rep


def cmd_repro(args):
    ids = list(acceptance.CRITERIA) if args.which == "all" else [args.which.upper()]
    if any(c not in acceptance.CRITERIA for c in ids):
        raise UsageError(f"unknown criterion {args.which!r}; choose from all, {', '.join(acceptance.CRITERIA)}")
    results = acceptance.run(ids)
    rows = [
        {"criterion": r.cid, "passed": r.passed, "seconds": round(r.elapsed, 3), "notes": r.notes}
        for r in results
    ]
    ok = all(r.passed for r in results)
    return (EXIT_OK if ok else EXIT_FAIL), rows


# ------------------------------------------------------------------ parser


def _common(p, mode=True, n=True):
    if n:
        p.add_argument("--n", type=int, required=True)
    if mode:
        p.add_argument("--mode", choices=("weak", "strong"), default="weak")


def build_parser():
    parser = argparse.ArgumentParser(prog="poset-rainbow", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--threads", type=int, default=None, help="worker cap (also POSET_RAINBOW_THREADS)")
    # the same two options are also accepted after the verb
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--format", choices=("json", "csv"), default=argparse.SUPPRESS)
    shared.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    sub = parser.add_subparsers(dest="verb", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[shared], **kw)

    sub.add_parser = add_parser

    p = sub.add_parser("poset", help="describe a catalog poset")
    p.add_argument("--catalog", required=True)
    p.add_argument("--show", choices=("summary", "hasse", "layers", "all"), default="summary")
    p.add_argument("--out")
    p.set_defaults(func=cmd_poset)

    for name, func in (("la", cmd_la), ("ar", cmd_ar)):
        p = sub.add_parser(name, help=f"exact {name} value")
        _common(p)
        if name == "la":
            p.add_argument("--posets", required=True, help="comma-separated catalog ids or JSON files")
            p.add_argument("--convex", action="store_true", help="restrict to convex families")
        else:
            p.add_argument("--poset", required=True)
        p.add_argument("--time-limit", type=float, default=None)
        p.add_argument("--no-symmetry", action="store_true")
        p.add_argument("--emit-witness")
        p.set_defaults(func=func)

    p = sub.add_parser("construct", help="build a named coloring")
    p.add_argument("--kind", choices=CONSTRUCTION_KINDS, required=True)
    p.add_argument("--n", type=int)
    p.add_argument("--param", type=int, action="append", default=[], help="extra integer parameter (s, k or h)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("certify", help="look for a rainbow copy in a coloring")
    p.add_argument("--coloring", required=True, help="coloring file or spec like butterfly:4")
    p.add_argument("--poset", required=True)
    _common(p, n=False)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("find-copy", help="find a copy of a poset in a family")
    p.add_argument("--family", required=True)
    p.add_argument("--poset", required=True)
    _common(p, n=False)
    p.set_defaults(func=cmd_find_copy)

    p = sub.add_parser("embed-spider", help="grow a spider in the inclusion bigraph of a family")
    p.add_argument("--family", required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--legs", type=int, required=True)
    p.add_argument("--leglen", type=int, required=True)
    p.add_argument("--discipline", choices=("full", "fraction"), default="full")
    p.add_argument("--k", type=int, default=None, help="needed for the fraction discipline")
    p.set_defaults(func=cmd_embed_spider)

    p = sub.add_parser("embed-crown", help="run the spider, path and crown pipeline")
    p.add_argument("--family", required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, default=None)
    p.add_argument("--legs", type=int, default=3)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--discipline", choices=("full", "fraction"), default="full")
    p.set_defaults(func=cmd_embed_crown)

    p = sub.add_parser("lemma10", help="log-margins of the three binomial estimates")
    p.add_argument("--n", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.set_defaults(func=cmd_lemma10)

    p = sub.add_parser("partition", help="split a family by shadow density")
    p.add_argument("--family", required=True)
    p.add_argument("--epsilon", type=float, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("sandwich", help="check the elementary ar/La bounds")
    _common(p)
    p.add_argument("--poset", required=True)
    p.add_argument("--time-limit", type=float, default=None)
    p.set_defaults(func=cmd_sandwich)

    p = sub.add_parser("repro", help="run acceptance criteria")
    p.add_argument("which", nargs="?", default="all")
    p.set_defaults(func=cmd_repro)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        _threads(args)
        code, payload = args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SearchTimeout as exc:
        _emit({"error": str(exc), "partial": repr(exc.best)}, args.format, out)
        return EXIT_TIMEOUT
    except EmbeddingFailure as exc:
        _emit({"error": str(exc), "partial": repr(exc.partial)}, args.format, out)
        return EXIT_FAIL
    except (PosetRainbowError, FileNotFoundError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(payload, args.format, out)
    return code


if __name__ == "__main__":
    sys.exit(main())
