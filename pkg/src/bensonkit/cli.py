"""Command-line front end.

Subcommands:

* ``check``    decide shifted efficiency and proper efficiency of a point,
* ``analyze``  classify a generated candidate set and run the
               all-or-none properness check,
* ``verify``   randomized structural property suites,
* ``examples`` reproduce the three built-in fixtures,
* ``plot``     render the 2-d regions to an SVG file.

Machine-readable output renders every rational as a "p/q" string; JSON
output is byte-identical across identical invocations. Exit codes:
0 success, 1 a checked point failed membership, 2 bad input, 3 an
internal self-check failed.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import analysis, efficiency, plotting
from .errors import BensonkitError, InternalCheckError, ParseError
from .fixtures import BUILTIN, builtin_problem
from .model import (LinearVOP, load_problem_file, query_point,
                    serialize_problem, validate_perturbation)
from .rationals import frac, frac_str, parse_vector, vector_str

EXIT_OK = 0
EXIT_NOT_MEMBER = 1
EXIT_INPUT = 2
EXIT_INTERNAL = 3


def _load(problem_ref: str) -> LinearVOP:
    if problem_ref.startswith("builtin:"):
        return builtin_problem(problem_ref[len("builtin:"):])
    if not os.path.exists(problem_ref):
        raise ParseError(f"problem file not found: {problem_ref}")
    return load_problem_file(problem_ref)


def _emit_json(doc: dict) -> None:
    sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _cert_text(cert) -> str:
    if cert is None:
        return "none"
    if isinstance(cert, efficiency.DominationWitness):
        return (f"dominating competitor {vector_str(cert.competitor)} with "
                f"objective {vector_str(cert.objective_value)}")
    if isinstance(cert, efficiency.ConeWitness):
        return (f"cone witness {vector_str(cert.ray)} "
                f"[{cert.branch} branch, {cert.form} form]")
    if isinstance(cert, efficiency.LPEvidence):
        return f"LP evidence: {cert.description} ({len(cert.outcomes)} solves)"
    return str(cert)


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def _cmd_check(args) -> int:
    problem = _load(args.problem)
    point = query_point(problem, parse_vector(args.point, problem.n))
    pert = parse_vector(args.perturbation, problem.m)
    validate_perturbation(problem, pert, args.kind)

    results: dict[str, efficiency.Verdict] = {}
    eff = efficiency.is_eps_efficient(problem, point, pert)
    eff.verify(problem, point, pert)
    results["efficient"] = eff

    forms = ("plain", "plusK") if args.form == "both" else (args.form,)
    for form in forms:
        verdict = efficiency.is_benson_proper(problem, point, pert, form=form)
        verdict.verify(problem, point, pert)
        results[f"proper_{form}"] = verdict
    if args.form == "both":
        a, b = results["proper_plain"], results["proper_plusK"]
        if a.member != b.member:
            raise InternalCheckError("criterion forms disagree on this point")

    if args.output == "json":
        _emit_json({
            "problem": args.problem,
            "point": [frac_str(c) for c in point.x],
            "perturbation": [frac_str(c) for c in pert],
            "kind": args.kind,
            "results": {k: efficiency.verdict_to_dict(v) for k, v in results.items()},
        })
    else:
        print(f"problem: {args.problem} (n={problem.n}, m={problem.m})")
        print(f"point: {vector_str(point.x)}")
        print(f"perturbation: {vector_str(pert)} [kind={args.kind}]")
        for key, verdict in results.items():
            print(f"{key}: {'yes' if verdict.member else 'no'}"
                  f"  ({_cert_text(verdict.certificate)})")
    return EXIT_OK if all(v.member for v in results.values()) else EXIT_NOT_MEMBER


# ---------------------------------------------------------------------------
# analyze
# ---------------------------------------------------------------------------

def _classification_table(rows):
    table = []
    for row in rows:
        cert = (row.proper_verdict.certificate if not row.benson_proper
                else row.eps_verdict.certificate if not row.eps_efficient
                else None)
        table.append({
            "point": [frac_str(c) for c in row.point],
            "provenance": row.provenance,
            "eps_efficient": row.eps_efficient,
            "benson_proper": row.benson_proper,
            "certificate": _cert_text(cert) if cert is not None else "",
        })
    return table


def _cmd_analyze(args) -> int:
    problem = _load(args.problem)
    pert = parse_vector(args.perturbation, problem.m)
    validate_perturbation(problem, pert, args.kind)
    candidates = analysis.enumerate_candidates(
        problem, max_vertices=args.max_vertices, ray_steps=args.ray_steps,
        grid_step=frac(args.grid_step))
    rows = analysis.classify(problem, pert, args.kind, candidates)
    report = analysis.dichotomy_check(rows)
    table = _classification_table(rows)

    doc = {
        "problem": args.problem,
        "perturbation": [frac_str(c) for c in pert],
        "kind": args.kind,
        "candidates": len(rows),
        "classification": table,
        "dichotomy": {
            "outcome": report.outcome,
            "efficient_count": report.efficient_count,
            "proper_count": report.proper_count,
        },
        "note": "structural checks hold on the generated candidates only",
    }

    if args.report_dir:
        os.makedirs(args.report_dir, exist_ok=True)
        csv_path = os.path.join(args.report_dir, "classification.csv")
        with open(csv_path, "w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh)
            writer.writerow(["point", "provenance", "eps_efficient",
                             "benson_proper", "certificate"])
            for entry in table:
                writer.writerow([",".join(entry["point"]), entry["provenance"],
                                 entry["eps_efficient"], entry["benson_proper"],
                                 entry["certificate"]])
        with open(os.path.join(args.report_dir, "report.json"), "w",
                  encoding="utf-8") as fh:
            fh.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        if problem.n == 2 and problem.m == 2:
            plotting.render_problem_figure(
                problem, os.path.join(args.report_dir, "regions.svg"),
                pert=pert, kind=args.kind, classification=rows,
                viewport=plotting.parse_viewport(args.viewport))

    if args.output == "json":
        _emit_json(doc)
    else:
        print(f"problem: {args.problem}  candidates: {len(rows)}")
        print(f"perturbation: {vector_str(pert)} [kind={args.kind}]")
        header = f"{'point':<24} {'origin':<10} {'efficient':<10} {'proper':<8}"
        print(header)
        print("-" * len(header))
        for row, entry in zip(rows, table):
            print(f"{vector_str(row.point):<24} {row.provenance:<10} "
                  f"{str(row.eps_efficient):<10} {str(row.benson_proper):<8}")
        print(f"dichotomy: {report.outcome} "
              f"({report.proper_count}/{report.efficient_count} efficient are proper)")
        print("note: structural checks hold on the generated candidates only")
        if args.report_dir:
            print(f"report written to {args.report_dir}")
    return EXIT_INTERNAL if report.outcome == "violation" else EXIT_OK


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------

def _cmd_verify(args) -> int:
    budget = args.budget
    suites = [
        analysis.forms_agreement_suite(count=budget, seed=args.seed),
        analysis.zero_shift_suite(count=max(1, budget // 2), seed=args.seed + 1),
        analysis.dichotomy_suite(count=budget, seed=args.seed + 2),
        analysis.dichotomy_suite(count=max(1, budget // 2), seed=args.seed + 3,
                                 orthant_only=True),
    ]
    ok = all(s.ok for s in suites)
    if args.output == "json":
        _emit_json({"seed": args.seed, "budget": budget, "ok": ok,
                    "suites": [s.to_dict() for s in suites]})
    else:
        print(f"seed: {args.seed}  budget: {budget}")
        for s in suites:
            print(f"[{'PASS' if s.ok else 'FAIL'}] {s.name}: {s.runs} runs, "
                  f"{len(s.failures)} failures")
            for failure in s.failures[:5]:
                print(f"    {failure}")
    return EXIT_OK if ok else EXIT_INTERNAL


# ---------------------------------------------------------------------------
# examples
# ---------------------------------------------------------------------------

def _cmd_examples(args) -> int:
    report = analysis.reproduce_examples()
    if args.report_dir:
        os.makedirs(args.report_dir, exist_ok=True)
        with open(os.path.join(args.report_dir, "examples.json"), "w",
                  encoding="utf-8") as fh:
            fh.write(json.dumps(report.to_dict(), indent=2, sort_keys=True) + "\n")
        with open(os.path.join(args.report_dir, "examples.txt"), "w",
                  encoding="utf-8") as fh:
            fh.write(report.to_text() + "\n")
        shifts = {"sign-flip": ("0,1", "epsilon"), "halfplane": ("1,0", "epsilon"),
                  "wedge": ("1,0", "e")}
        for name, (shift, kind) in shifts.items():
            problem = builtin_problem(name)
            pert = parse_vector(shift, 2)
            cand = analysis.enumerate_candidates(problem, grid_step=frac("1/2"),
                                                 lattice_extent=2)
            rows = analysis.classify(problem, pert, kind, cand)
            plotting.render_problem_figure(
                problem, os.path.join(args.report_dir, f"{name}.svg"),
                pert=pert, kind=kind, classification=rows)
    if args.output == "json":
        _emit_json(report.to_dict())
    else:
        print(report.to_text())
        if args.report_dir:
            print(f"report written to {args.report_dir}")
    return EXIT_OK if report.ok else EXIT_INTERNAL


# ---------------------------------------------------------------------------
# plot
# ---------------------------------------------------------------------------

def _cmd_plot(args) -> int:
    problem = _load(args.problem)
    viewport = plotting.parse_viewport(args.viewport)
    point = None
    pert = None
    witness_ray = None
    classification = None
    if args.point is not None:
        point = query_point(problem, parse_vector(args.point, problem.n)).x
    if args.perturbation is not None:
        pert = parse_vector(args.perturbation, problem.m)
        validate_perturbation(problem, pert, args.kind)
        candidates = analysis.enumerate_candidates(
            problem, max_vertices=args.max_vertices, ray_steps=args.ray_steps,
            grid_step=frac(args.grid_step))
        classification = analysis.classify(problem, pert, args.kind, candidates)
        if point is not None:
            verdict = efficiency.is_benson_proper(problem, point, pert)
            if not verdict.member:
                witness_ray = verdict.certificate.ray
    out = plotting.render_problem_figure(
        problem, args.out, pert=pert, kind=args.kind, point=point,
        classification=classification, viewport=viewport,
        witness_ray=witness_ray)
    print(f"figure written to {out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing and dispatch
# ---------------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bensonkit",
        description="Exact certification of shifted efficiency and proper "
                    "efficiency for linear vector optimization problems.")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    def add_common(p):
        p.add_argument("--output", choices=("text", "json"), default="text")

    def add_problem(p):
        p.add_argument("--problem", required=True,
                       help="problem JSON file, or builtin:<%s>" % "|".join(sorted(BUILTIN)))

    def add_strategy(p):
        p.add_argument("--grid-step", default="1", help="candidate lattice step (rational)")
        p.add_argument("--max-vertices", type=int, default=40)
        p.add_argument("--ray-steps", type=int, default=3)

    p_check = sub.add_parser("check", help="decide membership for one point")
    add_problem(p_check)
    p_check.add_argument("--point", required=True, help="comma-separated rationals")
    p_check.add_argument("--perturbation", required=True, help="comma-separated rationals")
    p_check.add_argument("--kind", choices=("epsilon", "e"), default="epsilon")
    p_check.add_argument("--form", choices=("plain", "plusK", "both"), default="both")
    add_common(p_check)

    p_an = sub.add_parser("analyze", help="classify a candidate set")
    add_problem(p_an)
    p_an.add_argument("--perturbation", required=True)
    p_an.add_argument("--kind", choices=("epsilon", "e"), default="epsilon")
    add_strategy(p_an)
    p_an.add_argument("--report-dir", default=None,
                      help="write classification.csv, report.json and regions.svg here")
    p_an.add_argument("--viewport", default="-5,5,-5,5")
    add_common(p_an)

    p_ver = sub.add_parser("verify", help="randomized structural property suites")
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--budget", type=int, default=25,
                       help="runs per suite (the acceptance levels are 200/100/200)")
    add_common(p_ver)

    p_ex = sub.add_parser("examples", help="reproduce the built-in fixtures")
    p_ex.add_argument("--report-dir", default=None,
                      help="write examples.txt, examples.json and one SVG per fixture")
    add_common(p_ex)

    p_plot = sub.add_parser("plot", help="render 2-d regions to SVG")
    add_problem(p_plot)
    p_plot.add_argument("--point", default=None)
    p_plot.add_argument("--perturbation", default=None)
    p_plot.add_argument("--kind", choices=("epsilon", "e"), default="epsilon")
    p_plot.add_argument("--viewport", default="-5,5,-5,5")
    add_strategy(p_plot)
    p_plot.add_argument("--out", required=True, help="output SVG path")

    return parser


_COMMANDS = {
    "check": _cmd_check,
    "analyze": _cmd_analyze,
    "verify": _cmd_verify,
    "examples": _cmd_examples,
    "plot": _cmd_plot,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return _COMMANDS[args.subcommand](args)
    except InternalCheckError as exc:
        print(f"internal self-check failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except BensonkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
