import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Dict, Optional, Sequence

from ..chordal import DEFAULT_K_MAX, SUN_SEARCH_GUARD, simplicial_elimination, strongly_chordal_desk
from ..contrafunctional import analyze_contrafunctional
from ..digraph import Digraph, classify, degree_stats, read_digraph, write_digraph
from ..generators import (Family, GeneratedInstance, directed_cycle, directed_path, directed_star, phi_member,
                          random_binary_tree, random_contrafunctional, random_digraph, random_directed_tree,
                          random_rooted_tree, random_tournament, sigma_instance, slater_realization_tree,
                          theta_instance)
from ..solvers import (PARAMETERS, ParameterValue, compute_parameters, gamma_o_lower_bound, gamma_t_lower_bound,
                       rho_lower_bound)
from ..transforms import build_split
from ..trees import max_packing_rooted_tree, phi_certificate, t1_bounds, tree_profile
from ..utilities import DigraphParseError, GuardExceededError
from ..verification import (dump_counterexamples, property_catalogue, reports_to_frame, resolve_property,
                            run_verification)

EXIT_PASS = 0
EXIT_PROPERTY_FAILURE = 1
EXIT_USAGE = 2
EXIT_GUARD = 3


def _rational(value: Optional[Fraction]) -> Optional[str]:
    return None if value is None else str(value)


def _parameter(value: Optional[ParameterValue]) -> Optional[Dict[str, object]]:
    if value is None:
        return None
    document = {"defined": value.defined, "value": value.value}
    if value.witness is not None:
        document["witness"] = sorted(value.witness)
    if value.reason is not None:
        document["reason"] = value.reason
    return document


def _emit(document: Dict[str, object]) -> None:
    print(json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False))


def cmd_compute(args: argparse.Namespace) -> int:
    d = read_digraph(args.file)
    report = compute_parameters(d, args.params)
    stats = report.stats
    _emit({"n": d.n,
           "arcs": len(d.arcs),
           "classification": report.classification,
           "degree_stats": {"max_out": stats.max_out, "max_in": stats.max_in,
                            "min_underlying": stats.min_underlying, "max_underlying": stats.max_underlying,
                            "delta_star": stats.delta_star},
           "rho": _parameter(report.rho),
           "gamma": _parameter(report.gamma),
           "gamma_t": _parameter(report.gamma_t),
           "gamma_o": _parameter(report.gamma_o),
           "slater": _parameter(report.slater_out),
           "bounds": None if "bounds" not in args.params else {
               "rho_lower": _rational(report.rho_lower_bound),
               "gamma_t_lower": _rational(report.gamma_t_lower_bound),
               "gamma_o_lower": _rational(report.gamma_o_lower_bound)}})
    return EXIT_PASS


def _require(args: argparse.Namespace, *names: str) -> None:
    missing = [name for name in names if getattr(args, name) is None]
    if missing:
        raise ValueError(f"{args.family} needs " + ", ".join(f"--{name.replace('_', '-')}" for name in missing))


def build_instance(args: argparse.Namespace) -> GeneratedInstance:
    family = Family(args.family)
    if family == Family.STAR:
        _require(args, "n")
        return directed_star(args.n)
    if family == Family.PATH:
        _require(args, "n")
        return directed_path(args.n)
    if family == Family.CYCLE:
        _require(args, "n")
        return directed_cycle(args.n)
    if family == Family.TOURNAMENT:
        _require(args, "n")
        return random_tournament(args.n, args.seed)
    if family == Family.ROOTED_TREE:
        _require(args, "n")
        return random_rooted_tree(args.n, args.seed)
    if family == Family.DIRECTED_TREE:
        _require(args, "n")
        return random_directed_tree(args.n, args.seed)
    if family == Family.CONTRAFUNCTIONAL:
        _require(args, "n")
        return random_contrafunctional(args.n, args.seed)
    if family == Family.BINARY_TREE:
        _require(args, "internal")
        return random_binary_tree(args.internal, args.seed)
    if family == Family.PHI_MEMBER:
        _require(args, "m")
        return phi_member(args.m, args.seed)
    if family == Family.RANDOM:
        _require(args, "n")
        return random_digraph(args.n, args.density, args.seed)
    if family == Family.THETA:
        _require(args, "r", "k")
        return theta_instance(args.r, args.k, args.extra_arcs, args.seed)
    if family == Family.SIGMA:
        _require(args, "base", "k")
        return sigma_instance(read_digraph(args.base), args.k, args.extra_arcs, args.seed)
    if family == Family.SLATER_TREE:
        _require(args, "a", "b")
        return slater_realization_tree(args.a, args.b)
    raise NotImplementedError(f"No generator for {family}")


def cmd_generate(args: argparse.Namespace) -> int:
    instance = build_instance(args)
    out = Path(args.out)
    comments = [f"family {instance.family.value}"]
    if instance.seed is not None:
        comments.append(f"seed {instance.seed}")
    comments.extend(f"certified {key} {value}" for key, value in sorted(instance.expected.items()))
    write_digraph(instance.digraph, out, comments)

    certificate = {"family": instance.family.value,
                   "seed": instance.seed,
                   "n": instance.digraph.n,
                   "arcs": len(instance.digraph.arcs),
                   "expected": dict(sorted(instance.expected.items())),
                   "statements": dict(sorted(instance.statements.items())),
                   "witness": None if instance.witness is None else sorted(instance.witness)}
    sidecar = out.with_name(out.name + ".cert.json")
    sidecar.write_text(json.dumps(certificate, indent=2, sort_keys=True) + "\n", newline="\n")
    logging.info(f"Wrote {out} and {sidecar}")
    _emit(certificate)
    return EXIT_PASS


def cmd_verify(args: argparse.Namespace) -> int:
    catalogue = property_catalogue()
    property_ids = list(catalogue.index) if args.property == "all" else [resolve_property(args.property)]
    reports = []
    for property_id in property_ids:
        exhaustive = args.exhaustive if catalogue.loc[property_id, "tree_property"] else 0
        report = run_verification(property_id, trials=args.trials, max_n=args.max_n, seed=args.seed,
                                  workers=args.workers, exhaustive_n=exhaustive)
        reports.append(report)
        if args.dump_dir and not report.passed:
            for path in dump_counterexamples(report, Path(args.dump_dir)):
                logging.info(f"Counterexample written to {path}")

    if args.property == "all":
        frame = reports_to_frame(reports)
        print(frame.to_string())
        if args.summary_csv:
            frame.to_csv(args.summary_csv)
    else:
        document = reports[0].as_dict()
        document["short_id"] = catalogue.loc[reports[0].property_id, "short_id"]
        _emit(document)

    return EXIT_PASS if all(report.passed for report in reports) else EXIT_PROPERTY_FAILURE


def _split_graph_section(split: Digraph, k_max: int) -> Dict[str, object]:
    # The sun search has a fixed order limit; past it only chordality is reported
    if split.n > SUN_SEARCH_GUARD:
        logging.info(f"Split graph has {split.n} vertices, skipping the sun search")
        section: Dict[str, object] = {"sun_search": f"skipped: order > {SUN_SEARCH_GUARD}"}
        try:
            section["chordal"] = simplicial_elimination(split) is not None
        except GuardExceededError as e:
            logging.info(str(e))
            section["chordal"] = None
            section["elimination"] = f"skipped: order > {e.guard}"
        return section

    verdict = strongly_chordal_desk(split, k_max=k_max)
    return {
        "chordal": verdict.chordal,
        "strongly_chordal": verdict.strongly_chordal,
        "desk_scale": verdict.desk_scale,
        "k_max": verdict.k_max,
        "sun": None if verdict.sun is None else {"k": verdict.sun.k, "core": list(verdict.sun.core),
                                                 "outer": list(verdict.sun.outer)},
    }


def cmd_analyze(args: argparse.Namespace) -> int:
    d = read_digraph(args.file)
    classification = classify(d)
    stats = degree_stats(d)
    document: Dict[str, object] = {
        "n": d.n,
        "arcs": len(d.arcs),
        "classification": classification.as_dict(),
        "degree_stats": {"max_out": stats.max_out, "max_in": stats.max_in,
                         "min_underlying": stats.min_underlying, "max_underlying": stats.max_underlying,
                         "delta_star": stats.delta_star},
        "bounds": {"rho_lower": _rational(rho_lower_bound(d)),
                   "gamma_t_lower": _rational(gamma_t_lower_bound(d)),
                   "gamma_o_lower": _rational(gamma_o_lower_bound(d))},
    }

    document["split_graph"] = _split_graph_section(build_split(d).split_graph, args.k_max)

    tree = classification.rooted_tree
    if tree is not None and tree.n >= 2:
        profile = tree_profile(tree)
        lower, upper = t1_bounds(tree)
        packing = max_packing_rooted_tree(tree)
        certificate = phi_certificate(tree)
        document["rooted_tree"] = {
            "root": tree.root, "leaves": profile.leaves, "supports": profile.supports, "height": profile.height,
            "rho_bounds": [lower, upper], "rho": len(packing.chosen_set), "packing": sorted(packing.chosen_set),
            "half_order_family": None if certificate is None else certificate.condition.value,
        }
    if classification.connected and classification.contrafunctional:
        analysis = analyze_contrafunctional(d)
        document["contrafunctional"] = {"cycle": list(analysis.cycle), "height": analysis.height,
                                        "stages": len(analysis.rdses.stages), "odd_terminal_cycle": analysis.omega,
                                        "rho": analysis.rho, "gamma": analysis.gamma}
    _emit(document)
    return EXIT_PASS


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="py-digraphpacking",
                                     description="Packing and domination parameters of digraphs")
    parser.add_argument("-v", "--verbose", action="store_true", help="Debug logging on stderr")
    commands = parser.add_subparsers(dest="command", required=True)

    s = commands.add_parser("compute", help="Compute parameters of a digraph file")
    s.add_argument("file")
    s.add_argument("--params", nargs="+", choices=PARAMETERS, default=list(PARAMETERS))
    s.set_defaults(main=cmd_compute)

    s = commands.add_parser("generate", help="Write a generated digraph and its certificate")
    s.add_argument("family", choices=[family.value for family in Family])
    s.add_argument("out")
    for name in ("n", "r", "k", "a", "b", "m", "internal"):
        s.add_argument(f"--{name}", type=int)
    s.add_argument("--density", type=float, default=0.5)
    s.add_argument("--base", help="Edge-list file of the contrafunctional base (sigma)")
    s.add_argument("--extra-arcs", action="store_true")
    s.add_argument("--seed", type=int, default=0)
    s.set_defaults(main=cmd_generate)

    s = commands.add_parser("verify", help="Check a property on seeded random instances")
    catalogue = property_catalogue()
    s.add_argument("property", choices=list(catalogue.index) + list(catalogue["short_id"]) + ["all"],
                   help="Property id, its short id, or all")
    s.add_argument("--trials", type=int)
    s.add_argument("--max-n", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--exhaustive", type=int, default=0, help="Also check every rooted tree up to this order")
    s.add_argument("--dump-dir", help="Write counterexamples here, one edge-list file each")
    s.add_argument("--summary-csv", help="With 'all', also write the summary table here")
    s.set_defaults(main=cmd_verify)

    s = commands.add_parser("analyze", help="Classification, bounds and split graph chordality")
    s.add_argument("file")
    s.add_argument("--k-max", type=int, default=DEFAULT_K_MAX)
    s.set_defaults(main=cmd_analyze)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(stream=sys.stderr, level=logging.DEBUG if args.verbose else logging.INFO,
                        format="%(levelname)s %(message)s")

    try:
        return args.main(args)
    except GuardExceededError as e:
        logging.error(str(e))
        return EXIT_GUARD
    except (DigraphParseError, ValueError, FileNotFoundError) as e:
        logging.error(str(e))
        return EXIT_USAGE
