"""Command-line front end: ``polyrank prove FILE`` and ``polyrank corpus``."""

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .cone import AlgebraicCone, AlgebraicPolyhedron, member, polyhedron_member
from .consequence import Limits
from .errors import ParseError, ResourceLimitError
from .formula import parse
from .oracle import prf_violations, qprf_violations, sample_models
from .polyring import Polynomial
from .ranking import prove, zero_stable_restrict

EXIT_PROVEN = 0
EXIT_VALIDATION = 1
EXIT_PARSE = 2
EXIT_RESOURCE = 3
EXIT_UNKNOWN = 10


def certificate(verdict):
    """JSON-ready dict of a verdict; polynomials use the printed syntax."""
    out = {"verdict": str(verdict.status), "mode": verdict.mode, "iterations": verdict.iterations}
    if verdict.prf is not None:
        poly = verdict.prf.polyhedron
        out["prf"] = {
            "witness": str(verdict.prf.witness),
            "zeros": [str(z) for z in poly.zeros],
            "positives": [str(p) for p in poly.positives],
            "vertices": [str(v) for v in poly.vertices],
        }
    if verdict.lprf:
        out["lprf"] = [
            {"zeros": [str(z) for z in s.cone.zeros], "positives": [str(p) for p in s.cone.positives]}
            for s in verdict.lprf
        ]
    return out


def verify_certificate(cert):
    """Re-parse a certificate dict and re-check its membership claims."""
    parse_all = lambda items: [Polynomial.parse(s) for s in items]  # noqa: E731
    if "prf" in cert:
        c = cert["prf"]
        poly = AlgebraicPolyhedron(parse_all(c["zeros"]), parse_all(c["positives"]), parse_all(c["vertices"]))
        if not polyhedron_member(Polynomial.parse(c["witness"]), poly):
            return False
    for step in cert.get("lprf", ()):
        cone = AlgebraicCone(parse_all(step["zeros"]), parse_all(step["positives"]))
        if not all(member(p, cone) for p in parse_all(step["positives"])):
            return False
    return True


def validate(formula, verdict, samples, seed, limits):
    """Sampling check of an emitted certificate; returns a list of failure messages."""
    failures = []
    if verdict.prf is not None:
        restricted = zero_stable_restrict(formula, limits)
        for domain in ("integer", "rational"):
            models = sample_models(restricted, n=samples, domain=domain, seed=seed)
            bad = prf_violations(verdict.prf.witness, models)
            if bad:
                failures.append(f"witness fails on {len(bad)} {domain} models, e.g. {_show(bad[0])}")
    for k, step in enumerate(verdict.lprf, 1):
        models = sample_models(step.formula, n=samples, seed=seed + k)
        for p in step.cone.positives:
            bad = qprf_violations(p, models)
            if bad:
                failures.append(f"step {k}: {p} is not quasi-ranking on {_show(bad[0])}")
    return failures


def _show(vals):
    return "{" + ", ".join(f"{k}: {v}" for k, v in sorted(vals.items())) + "}"


def _print_text(verdict, out):
    print(f"{verdict.describe()} [mode {verdict.mode}]", file=out)
    if verdict.prf is not None:
        poly = verdict.prf.polyhedron
        print(f"  zeros:     {', '.join(map(str, poly.zeros)) or '-'}", file=out)
        print(f"  positives: {', '.join(map(str, poly.positives))}", file=out)
        print(f"  vertices:  {', '.join(map(str, poly.vertices))}", file=out)
    for k, step in enumerate(verdict.lprf, 1):
        zeros = ", ".join(map(str, step.cone.zeros)) or "-"
        print(f"  step {k}: zeros [{zeros}] positives [{', '.join(map(str, step.cone.positives))}]", file=out)


def _limits(args):
    return Limits(max_degree=args.max_degree, max_cells=args.max_cells, max_iters=args.max_iters)


def cmd_prove(args, out=None, err=None):
    out, err = out or sys.stdout, err or sys.stderr
    try:
        with open(args.file, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_PARSE
    try:
        formula = parse(text)
    except ParseError as exc:
        print(f"{args.file}: parse error: {exc}", file=err)
        return EXIT_PARSE
    limits = _limits(args)
    try:
        verdict = prove(formula, args.mode, limits)
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=err)
        return EXIT_RESOURCE
    if args.format == "json":
        print(json.dumps(certificate(verdict), indent=2), file=out)
    else:
        _print_text(verdict, out)
    if args.validate and verdict.proven:
        failures = validate(formula, verdict, args.validate, args.seed, limits)
        for f in failures:
            print(f"validation: {f}", file=err)
        if failures:
            return EXIT_VALIDATION
        if args.format == "text":
            print(f"  validated on {args.validate} samples per check", file=out)
    return EXIT_PROVEN if verdict.proven else EXIT_UNKNOWN


def _run_entry(entry, limits):
    formula = parse(entry.text)
    results = {}
    for mode in ("prf", "lprf"):
        try:
            results[mode] = str(prove(formula, mode, limits).status)
        except ResourceLimitError:
            results[mode] = "ResourceLimit"
    return entry.name, results


def cmd_corpus(args, out=None, err=None):
    out, err = out or sys.stdout, err or sys.stderr
    from .corpus import load_corpus

    entries = load_corpus()
    limits = _limits(args)
    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
        results = dict(pool.map(_run_entry, entries, [limits] * len(entries)))
    mismatches = 0
    for entry in entries:
        got = results[entry.name]
        expected = entry.expect
        ok = all(got[m] == expected[m] for m in expected)
        mismatches += not ok
        flag = "ok  " if ok else "MISMATCH"
        print(f"{flag} {entry.name:28s} prf={got['prf']:16s} lprf={got['lprf']}", file=out)
    print(f"{len(entries) - mismatches}/{len(entries)} entries match their annotations", file=out)
    return 0 if mismatches == 0 else EXIT_VALIDATION


def build_parser():
    parser = argparse.ArgumentParser(prog="polyrank", description="Polynomial ranking function prover")
    sub = parser.add_subparsers(dest="command", required=True)

    def limits_flags(p):
        p.add_argument("--max-degree", type=int, default=None, help="degree bound for cone intersection")
        p.add_argument("--max-iters", type=int, default=50, help="cap on lexicographic iterations")
        p.add_argument("--max-cells", type=int, default=64, help="cap on DNF cells")

    prove_p = sub.add_parser("prove", help="prove termination of a loop file")
    prove_p.add_argument("file")
    prove_p.add_argument("--mode", choices=("prf", "lprf", "auto"), default="auto")
    limits_flags(prove_p)
    prove_p.add_argument("--validate", type=int, default=0, metavar="N", help="sample N models to check the certificate")
    prove_p.add_argument("--format", choices=("text", "json"), default="text")
    prove_p.add_argument("--seed", type=int, default=0)
    prove_p.set_defaults(func=cmd_prove)

    corpus_p = sub.add_parser("corpus", help="run the bundled corpus")
    limits_flags(corpus_p)
    corpus_p.add_argument("--jobs", type=int, default=None)
    corpus_p.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    return args.func(args)


def run(argv=None):
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
