"""Command-line surface.

Exit codes: 0 success, 1 verification mismatch, 2 parse/schema error,
3 domain error (bad mathematical input), 4 genericity failure.  Randomized
subcommands print their seed so any "generic" result can be replayed, and
identical flags plus seed give byte-identical output.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .apolarity import PartialFiltration, annihilator, \
    verify_ideal_presentation
from .constructions import (ExtensionSpec, allowed_component_indices,
                            is_a_modification, linear_extension,
                            relatively_compressed_modification,
                            restricted_components)
from .decomposition import symmetric_decomposition
from .errors import DomainError, GenericityError, ParseError, SchemaError
from .fields import Field
from .fuzz import SUITES, run_suite
from .io import corpus_load, corpus_verify, parse_poly, parse_ps, \
    render_decomposition
from .normalform import detect_exotic, normalize, split_connected_summand
from .poly import RingSpec


def _ring_from_args(args) -> RingSpec:
    vars = tuple(v.strip() for v in args.vars.split(",") if v.strip())
    return RingSpec(vars, Field(args.char))


def _add_ring_flags(sub):
    sub.add_argument("--vars", required=True,
                     help="comma-separated dual variable names, e.g. X,Y,Z")
    sub.add_argument("--char", type=int, default=0,
                     help="field characteristic (0 or a prime)")


def _parse_in(src, ring):
    return parse_poly(src, ring)


def cmd_decompose(args):
    ring = _ring_from_args(args)
    f = _parse_in(args.expr, ring)
    D = symmetric_decomposition(f, with_bases=args.show_bases)
    print(render_decomposition(D, style=args.format,
                               suppress_zero=args.suppress_zero,
                               show_bases=args.show_bases))
    return 0


def cmd_hilbert(args):
    ring = _ring_from_args(args)
    H = PartialFiltration(_parse_in(args.expr, ring)).hilbert()
    if args.format == "json":
        print(json.dumps({"hilbert": list(H)}))
    else:
        print(",".join(str(h) for h in H))
    return 0


def cmd_annihilator(args):
    ring = _ring_from_args(args)
    f = _parse_in(args.expr, ring)
    ideal = annihilator(f)
    if args.format == "json":
        print(json.dumps({
            "min_gens": [str(g) for g in ideal.min_gens],
            "orders": list(ideal.orders),
            "graded_dims": list(ideal.graded_dims()),
        }))
    else:
        for g, o in zip(ideal.min_gens, ideal.orders):
            print("order %d: %s" % (o, g))
    if args.verify is not None:
        gens = [parse_ps(s.strip(), ring, f.degree + 2)
                for s in args.verify.split(";") if s.strip()]
        ok = verify_ideal_presentation(gens, f)
        print("presentation %s" % ("matches" if ok else "DOES NOT match"))
        return 0 if ok else 1
    return 0


def cmd_exotic(args):
    ring = _ring_from_args(args)
    rep = detect_exotic(_parse_in(args.expr, ring))
    print("n:", ",".join(str(n) for n in rep.n_seq))
    print("adapted basis:", "; ".join(str(b) for b in rep.adapted_basis))
    if rep.exotic_terms:
        for d, t in rep.exotic_terms:
            print("exotic degree %d: %s" % (d, t))
    else:
        print("no exotic terms")
    return 0


def cmd_normalize(args):
    ring = _ring_from_args(args)
    g, change = normalize(_parse_in(args.expr, ring))
    print("normal form:", g)
    for i, img in enumerate(change.inv_images):
        print("w_%d = %s" % (i + 1, img))
    return 0


def cmd_modcheck(args):
    ring = _ring_from_args(args)
    f = _parse_in(args.expr1, ring)
    g = _parse_in(args.expr2, ring)
    verdict = is_a_modification(f, g, args.a)
    print("%d-modification: %s" % (args.a, "yes" if verdict else "no"))
    return 0 if verdict else 1


def cmd_rcm(args):
    ring = _ring_from_args(args)
    f = _parse_in(args.expr, ring)
    print("seed: %d" % args.seed)
    F, D = relatively_compressed_modification(
        f, args.a, seed=args.seed, coeff_bound=args.coeff_bound,
        retries=args.retries)
    print("generator:", F)
    print(render_decomposition(D, style=args.format))
    return 0


def cmd_extend(args):
    ring = _ring_from_args(args)
    f = _parse_in(args.expr, ring)
    hs = [parse_poly(s, ring) for s in args.h]
    znames = tuple(v.strip() for v in args.zvars.split(",") if v.strip())
    spec = ExtensionSpec(f, hs, znames)
    F = linear_extension(spec)
    print("generator:", F)
    print("allowed nonzero components:",
          ",".join(str(a) for a in sorted(allowed_component_indices(spec))))
    D = symmetric_decomposition(F)
    print(render_decomposition(D, style=args.format))
    if args.components:
        data = restricted_components(spec)
        for t, dims in sorted(data["B"].items()):
            print("B_%d dims: %s" % (t, dims or {}))
        for (t1, t2), dims in sorted(data["B_pairs"].items()):
            if dims:
                print("B_%d,%d dims: %s" % (t1, t2, dims))
    return 0


def cmd_consum_split(args):
    ring = _ring_from_args(args)
    res = split_connected_summand(_parse_in(args.expr, ring))
    print("summand 1:", res.summand_main)
    print("summand 2:", res.summand_quadric)
    print("split generator:", res.generator)
    return 0


def cmd_fuzz(args):
    rep = run_suite(args.suite, args.trials, args.seed)
    print(rep.line())
    for f in rep.failures:
        print("  " + f)
    return 0 if rep.ok else 1


def _verify_one(payload):
    path, index = payload
    entry = corpus_load(path)[index]
    return corpus_verify(entry)


def cmd_verify(args):
    entries = corpus_load(args.corpus)
    reports = []
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            for reps in pool.map(_verify_one,
                                 [(args.corpus, i) for i in range(len(entries))]):
                reports.extend(reps)
    else:
        for entry in entries:
            reports.extend(corpus_verify(entry))
    bad = 0
    for rep in reports:
        status = "ok" if rep["ok"] else "MISMATCH"
        print("%-28s char %-4d %s" % (rep["name"], rep["char"], status))
        for m in rep["mismatches"]:
            bad += 1
            print("    %s: expected %r, got %r"
                  % (m["field"], m["expected"], m["got"]))
    print("%d entries, %d runs, %d mismatches"
          % (len(entries), len(reports), bad))
    return 0 if bad == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="macdual",
        description="Exact Macaulay-dual computations for local Artinian "
                    "Gorenstein algebras")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("decompose", help="symmetric decomposition of H(A)")
    _add_ring_flags(p)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--show-bases", action="store_true")
    p.add_argument("--suppress-zero", action="store_true")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_decompose)

    p = sub.add_parser("hilbert", help="Hilbert function only")
    _add_ring_flags(p)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_hilbert)

    p = sub.add_parser("annihilator", help="minimal generators of Ann f")
    _add_ring_flags(p)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--verify", help="semicolon-separated generators to check")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_annihilator)

    p = sub.add_parser("exotic", help="detect exotic summands")
    _add_ring_flags(p)
    p.add_argument("expr")
    p.set_defaults(fn=cmd_exotic)

    p = sub.add_parser("normalize", help="remove exotic summands")
    _add_ring_flags(p)
    p.add_argument("expr")
    p.set_defaults(fn=cmd_normalize)

    p = sub.add_parser("modcheck", help="test the a-modification relation")
    _add_ring_flags(p)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("expr1")
    p.add_argument("expr2")
    p.set_defaults(fn=cmd_modcheck)

    p = sub.add_parser("rcm", help="relatively compressed a-modification")
    _add_ring_flags(p)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--coeff-bound", type=int, default=10)
    p.add_argument("--retries", type=int, default=5)
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_rcm)

    p = sub.add_parser("extend", help="extension linear in fresh variables")
    _add_ring_flags(p)
    p.add_argument("--h", action="append", required=True,
                   help="homogeneous summand (repeatable)")
    p.add_argument("--zvars", required=True)
    p.add_argument("--components", action="store_true",
                   help="also print the per-summand module dimensions")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("expr")
    p.set_defaults(fn=cmd_extend)

    p = sub.add_parser("consum-split", help="split a quadric connected summand")
    _add_ring_flags(p)
    p.add_argument("expr")
    p.set_defaults(fn=cmd_consum_split)

    p = sub.add_parser("fuzz", help="run a seeded property suite")
    p.add_argument("--suite", required=True, choices=sorted(SUITES))
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_fuzz)

    p = sub.add_parser("verify", help="recompute a corpus file and diff")
    p.add_argument("corpus")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(fn=cmd_verify)

    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, SchemaError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except GenericityError as exc:
        print("genericity failure: %s" % exc, file=sys.stderr)
        return 4
    except DomainError as exc:
        print("domain error: %s" % exc, file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
