import argparse
import logging
import sys
from dataclasses import asdict
from typing import List, Optional, Sequence

from tabulate import tabulate

from . import annealer, enumerator, facevec, gamma, moves, surgery
from .canonical import canonicalize
from .complex import Complex, validate
from .enumerator import CensusRecord, EnumerationTask
from .errors import IllegalMoveError, ManifoldStatsError
from .homology import betti_mod_p, integral_homology, orientable
from .pruning import ALL_RULES
from .stats import TriangulationStats
from .utils import (format_complex, format_facets, parse_face,
                    parse_facet_text, parse_range, read_complex)

RECORD_HEADERS = ("digest", "f", "g", "homology", "name", "missing_facets",
                  "provenance")


# argument types, ValueError makes argparse exit with status 2
def _weights(text: str) -> moves.Weights:
    parts = [float(part) for part in text.split(",")]
    if len(parts) != 4:
        raise ValueError(f"Expected four weights, got '{text}'")
    return tuple(parts)  # type: ignore


def _rules(text: str) -> frozenset:
    rules = frozenset(part.strip() for part in text.split(",") if part.strip())
    if not rules <= ALL_RULES:
        raise ValueError(f"Unknown rules {sorted(rules - ALL_RULES)}")
    return rules


def _matching(text: str) -> surgery.FacetMatching:
    return surgery.FacetMatching.parse(text)


def configure_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="python -m manifoldstats",
        description=
        ("CLI to manifoldstats package. Complexes are read from facet files "
         "(header 'd=3 n=<f0>', then one facet per line). Results are "
         "printed to stdout, logging goes to stderr.")
    )
    parser.add_argument("-v", "--verbose", action="count", default=0,
                        help="INFO logging, DEBUG when given twice.")
    parser.add_argument("-q", "--quiet", action="store_true",
                        help="Log errors only.")
    subparsers = parser.add_subparsers(help="Commands available.",
                                       dest="command", required=True)

    validate_parser = subparsers.add_parser(
        "validate", help="Checks that a facet file is a closed 3-manifold.")
    validate_parser.add_argument("file", help="Facet file.")

    stats_parser = subparsers.add_parser(
        "stats", help="Prints f-, h- and g-vector and derived statistics.")
    stats_parser.add_argument("file", help="Facet file.")

    homology_parser = subparsers.add_parser(
        "homology", help="Prints integral homology and orientability.")
    homology_parser.add_argument("file", help="Facet file.")
    homology_parser.add_argument("--prime", type=int, default=None,
                                 help="Also print Betti numbers mod prime.")

    flip_parser = subparsers.add_parser(
        "flip", help="Applies one bistellar move, given or random.")
    flip_parser.add_argument("file", help="Facet file.")
    flip_parser.add_argument("--kind", type=int, choices=range(4),
                             help="Kind of the move to apply.")
    flip_parser.add_argument("--face", type=parse_face,
                             help="Face A of the move, e.g. 1,2,3.")
    flip_parser.add_argument("--weights", type=_weights,
                             default=(1, 1, 1, 1),
                             help="Weights w0,w1,w2,w3 of a random move.")
    flip_parser.add_argument("--seed", type=int, default=0)

    anneal_parser = subparsers.add_parser(
        "anneal", help="Searches for small triangulations by annealing.")
    anneal_parser.add_argument("file", help="Facet file of the start.")
    anneal_parser.add_argument("--seed", type=int, default=0,
                               help="Seed of the first run.")
    anneal_parser.add_argument("--rounds", type=int, default=10)
    anneal_parser.add_argument("--mix-moves", type=int, default=10_000)
    anneal_parser.add_argument("--cool-moves", type=int, default=1_000_000)
    anneal_parser.add_argument("--floor", type=int, default=None,
                               help="Never remove vertices below best known "
                                    "f0 plus this offset.")
    anneal_parser.add_argument("--best-known-f0", type=int, default=None)
    anneal_parser.add_argument("--runs", type=int, default=1,
                               help="Independent runs with seeds seed, "
                                    "seed+1, ...")
    anneal_parser.add_argument("--jobs", type=int, default=1)
    anneal_parser.add_argument("--output", default=None,
                               help="Facet file for the best triangulation.")

    enumerate_parser = subparsers.add_parser(
        "enumerate", help="Enumerates triangulations with given f0, f1.")
    enumerate_parser.add_argument("--f0", type=int, required=True)
    enumerate_parser.add_argument("--f1", type=parse_range, required=True,
                                  help="Inclusive range LO:HI.")
    enumerate_parser.add_argument("--g2-cap", type=int, default=None)
    enumerate_parser.add_argument("--prefix", default=None,
                                  help="Facet file holding the star of "
                                       "vertex 1.")
    enumerate_parser.add_argument("--rules", type=_rules, default=ALL_RULES,
                                  help="Comma separated pruning rules, "
                                       "default all of " +
                                       ",".join(sorted(ALL_RULES)) + ".")
    enumerate_parser.add_argument("--jobs", type=int, default=1)
    enumerate_parser.add_argument("--summary", action="store_true",
                                  help="Print census rows instead of "
                                       "records.")
    enumerate_parser.add_argument("--candidates", action="store_true",
                                  help="Print only g2-minimal candidates, "
                                       "needs --g2-cap.")

    surgery_parser = subparsers.add_parser(
        "surgery", help="Subdivision, connected sum, handle addition and "
                        "missing facets.")
    surgery_parser.add_argument(
        "operation",
        choices=("subdivide", "sum", "handle", "missing", "split", "far"))
    surgery_parser.add_argument("file", help="Facet file.")
    surgery_parser.add_argument("other", nargs="?", default=None,
                                help="Second facet file for 'sum'.")
    surgery_parser.add_argument("--facet", type=parse_face,
                                help="Facet to subdivide or missing facet to "
                                     "split along.")
    surgery_parser.add_argument("--match", type=_matching,
                                help="Matching a1:b1,a2:b2,a3:b3,a4:b4.")

    bounds_parser = subparsers.add_parser(
        "bounds", help="Prints lower bounds and admissible regions.")
    bounds_parser.add_argument("--d", type=int, default=3)
    bounds_parser.add_argument("--beta1", type=parse_range, default=None,
                               help="Range of first Betti numbers.")
    bounds_parser.add_argument("--tight", type=int, default=None,
                               help="Tight-neighborly rows up to m.")
    bounds_parser.add_argument("--heawood", type=parse_range, default=None,
                               help="Range of surface Euler "
                                    "characteristics.")
    bounds_parser.add_argument("--pairs", type=int, default=None,
                               help="Admissible (f0, f1) for a g2 cap.")

    gamma_parser = subparsers.add_parser(
        "gamma", help="Certifies g2 bounds and updates a ledger.")
    gamma_parser.add_argument("file", help="Facet file.")
    gamma_parser.add_argument("--name", default=None,
                              help="Manifold name for the ledger.")
    gamma_parser.add_argument("--ledger", default=None,
                              help="Journal file to update.")
    gamma_parser.add_argument("--prime", type=int, default=2)
    gamma_parser.add_argument("--find-path", action="store_true",
                              help="Search a flip path to a neighborly "
                                   "complex.")
    gamma_parser.add_argument("--seed", type=int, default=0)
    gamma_parser.add_argument("--max-steps", type=int, default=10_000)

    canon_parser = subparsers.add_parser(
        "canon", help="Prints the canonical labelling and digest.")
    canon_parser.add_argument("file", help="Facet file.")
    return parser


def configure_logging(args: argparse.Namespace) -> None:
    if args.quiet:
        level = logging.ERROR
    elif args.verbose >= 2:
        level = logging.DEBUG
    elif args.verbose == 1:
        level = logging.INFO
    else:
        level = logging.WARNING
    logging.basicConfig(level=level, stream=sys.stderr,
                        format="%(levelname)s %(name)s: %(message)s")


def _tuple(values: Sequence[int]) -> str:
    return "(" + ",".join(str(v) for v in values) + ")"


def _records_table(records: Sequence[CensusRecord]) -> str:
    rows = [record.row() + (str(record.missing_facets), record.provenance)
            for record in sorted(records, key=lambda r: r.digest)]
    return tabulate(rows, headers=RECORD_HEADERS, tablefmt="tsv",
                    disable_numparse=True)


def _validate(args: argparse.Namespace) -> int:
    K = read_complex(args.file)
    report = validate(K)
    if not report.is_manifold:
        print(f"invalid: {report.first_violation}")
        return 1
    print(f"valid f={_tuple(K.f_vector())}")
    return 0


def _stats(args: argparse.Namespace) -> int:
    stats = TriangulationStats.from_file(args.file)
    report = stats.report()
    print(f"f={_tuple(report['f_vector'])} g={_tuple(report['g_vector'])}")
    for key, value in report.items():
        if isinstance(value, list):
            value = _tuple(value)
        print(key + ": " + str(value))
    return 0


def _homology(args: argparse.Namespace) -> int:
    K = read_complex(args.file)
    profile = integral_homology(K)
    print(f"homology: {profile.format()}")
    if profile.names:
        flag = " (ambiguous)" if profile.is_ambiguous else ""
        print(f"name: {profile.name_hint}{flag}")
    print(f"orientable: {orientable(K)}")
    if args.prime is not None:
        print(f"betti mod {args.prime}: "
              f"{_tuple(betti_mod_p(K, args.prime))}")
    return 0


def _flip(args: argparse.Namespace) -> int:
    K = read_complex(args.file)
    if args.face is not None:
        if args.kind is None:
            args.kind = 4 - len(args.face)
        move = _move_at(K, args.kind, args.face)
    else:
        weights = list(args.weights)
        if args.kind is not None:
            weights = [w if k == args.kind else 0
                       for k, w in enumerate(weights)]
        move, _ = moves.weighted_random_move(K, weights,
                                             moves.make_rng(args.seed))
        if move is None:
            print("no legal move", file=sys.stderr)
            return 1
    result = moves.apply(K, move)
    print(format_complex(result, [str(move)]), end="")
    return 0


def _move_at(K: Complex, kind: int, face: Sequence[int]
             ) -> moves.MoveDescriptor:
    """Move with face A, B read off the link of A."""
    face = tuple(sorted(face))
    if len(face) != 4 - kind:
        raise ValueError(f"A {kind}-move needs a face with {4 - kind} "
                         "vertices")
    if kind == 0:
        return moves.MoveDescriptor(0, face, (K.vertex_count + 1,))
    opposite = tuple(sorted(K.link_vertices(face))) if face in K else ()
    if len(opposite) != kind + 1:
        raise IllegalMoveError("link mismatch", face)
    return moves.MoveDescriptor(kind, face, opposite)


def _anneal(args: argparse.Namespace) -> int:
    K = read_complex(args.file)
    configs = [annealer.SearchConfig(
        seed=args.seed + i, rounds=args.rounds, mix_moves=args.mix_moves,
        cool_moves=args.cool_moves, f0_floor_offset=args.floor,
        best_known_f0=args.best_known_f0) for i in range(args.runs)]
    results = annealer.run_many(K, configs, args.jobs)
    trace = [{"seed": result.seed, "round": t.round,
              "after mix": _tuple(t.f_after_mix),
              "after cool": _tuple(t.f_after_cool),
              "best in round": _tuple(t.best_in_round),
              "stalls": t.stalls}
             for result in results for t in result.trace]
    print(tabulate(trace, headers="keys"))
    records = [record for result in results for record in result.best]
    if not records:
        return 0
    print()
    print(_records_table(records))
    best = min(records, key=lambda r: (r.f_vector[0], r.f_vector[1],
                                       r.digest))
    if args.output is not None:
        with open(args.output, "w", encoding="utf-8") as file:
            file.write(format_facets(best.facets, best.f_vector[0],
                                     [best.provenance,
                                      f"digest {best.digest}"]))
    return 0


def _enumerate(args: argparse.Namespace) -> int:
    prefix = None
    if args.prefix is not None:
        prefix = _read_prefix(args.prefix)
    task = EnumerationTask(args.f0, args.f1, args.g2_cap, args.rules, prefix)
    records = enumerator.enumerate_parallel(task, args.jobs)
    if args.candidates:
        if args.g2_cap is None:
            raise ValueError("--candidates needs --g2-cap")
        records = enumerator.g2_minimal_candidates(records, args.g2_cap)
    if args.summary:
        rows = [asdict(row) for row in enumerator.census_summary(records)]
        print(tabulate(rows, headers="keys", tablefmt="tsv"))
        report = enumerator.filter_missing_facets(records)
        print(f"# {report.total} records, {report.without_missing} without "
              "missing facets")
    else:
        print(_records_table(records))
    return 0


def _read_prefix(path: str):
    with open(path, "r", encoding="utf-8") as file:
        text = file.read()
    _, _, facets = parse_facet_text(text)
    return tuple(tuple(sorted(f)) for f in facets)


def _surgery(args: argparse.Namespace) -> int:
    K = read_complex(args.file)
    operation = args.operation
    if operation == "missing":
        for sigma in surgery.missing_facets(K):
            print(" ".join(str(v) for v in sigma))
        return 0
    if operation == "far":
        for facet_a, facet_b in surgery.far_facet_pairs(K, limit=20):
            print(" ".join(str(v) for v in facet_a), "|",
                  " ".join(str(v) for v in facet_b))
        return 0
    if operation in ("subdivide", "split"):
        if args.facet is None:
            raise ValueError(f"'{operation}' needs --facet")
        if operation == "subdivide":
            result = surgery.subdivide(K, args.facet)
            print(format_complex(result, [f"subdivided {args.facet}"]),
                  end="")
            return 0
        split = surgery.split_along_missing_facet(K, args.facet)
        print(f"# {split.kind}")
        for part in split.parts:
            print(format_complex(part), end="")
        return 0
    if args.match is None:
        raise ValueError(f"'{operation}' needs --match")
    if operation == "sum":
        other = read_complex(args.other) if args.other else K
        result = surgery.connected_sum(K, other, args.match)
    else:
        result = surgery.add_handle(K, args.match)
    f = facevec.FaceVector.from_counts(result.f_vector())
    print(format_complex(result, [f"{operation} g={facevec.g_vector(f)}"]),
          end="")
    return 0


def _bounds(args: argparse.Namespace) -> int:
    printed = False
    if args.beta1 is not None:
        low, high = args.beta1
        rows = [{"beta1": k,
                 "g2 >=": facevec.g2_lower_bound(args.d, k),
                 "f0 >=": facevec.min_vertices(args.d, k)}
                for k in range(low, high + 1)]
        print(tabulate(rows, headers="keys"))
        printed = True
    if args.tight is not None:
        rows = [asdict(row)
                for row in facevec.tight_neighborly_rows(args.tight)]
        print(tabulate(rows, headers="keys"))
        printed = True
    if args.heawood is not None:
        low, high = args.heawood
        rows = [{"chi": chi, "f0 >=": facevec.heawood_min_vertices(chi)}
                for chi in range(low, high + 1)]
        print(tabulate(rows, headers="keys"))
        printed = True
    if args.pairs is not None:
        rows = [{"f0": f0, "f1": f1, "g2": facevec.g2(f0, f1)}
                for f0, f1 in facevec.admissible_pairs(args.pairs)]
        print(tabulate(rows, headers="keys"))
        printed = True
    if not printed:
        raise ValueError("Give at least one of --beta1, --tight, --heawood "
                         "and --pairs")
    return 0


def _gamma(args: argparse.Namespace) -> int:
    K = read_complex(args.file)
    certificate = gamma.certify(K, args.prime)
    print(f"f={_tuple(certificate.f_vector)} g2={certificate.g2}")
    print(f"neighborly: {certificate.neighborly}")
    if certificate.hamiltonian_vertex is not None:
        print(f"hamiltonian link: vertex {certificate.hamiltonian_vertex} "
              f"cycle {_tuple(certificate.cycle or ())}")
    print(f"gamma >= {certificate.gamma_lower}")
    star = certificate.gamma_star_upper
    if star is None and args.find_path:
        path = gamma.find_neighborly_path(K, args.seed, args.max_steps)
        if path is not None:
            star = gamma.gamma_star_upper_via_path(K, path)
            print(f"flip path: {len(path)} moves")
    print(f"gamma <= {certificate.g2}")
    if star is not None:
        print(f"gamma* <= {star}")
    if args.ledger is not None:
        record = CensusRecord.from_complex(K, f"file={args.file}", args.name)
        entry = gamma.GammaEntry.from_record(record, args.name, star)
        entry = gamma.Ledger(args.ledger).upsert(entry)
        print("ledger: " + entry.journal_lines()[0])
    return 0


def _canon(args: argparse.Namespace) -> int:
    K = read_complex(args.file)
    facets, digest = canonicalize(K)
    print(format_facets(facets, K.vertex_count, [f"digest {digest}"]), end="")
    return 0


COMMANDS = {
    "validate": _validate,
    "stats": _stats,
    "homology": _homology,
    "flip": _flip,
    "anneal": _anneal,
    "enumerate": _enumerate,
    "surgery": _surgery,
    "bounds": _bounds,
    "gamma": _gamma,
    "canon": _canon,
}


def run(args: argparse.Namespace) -> int:
    """
    Runs CLI command with given arguments.

    :param args: Parsed arguments, `args.command` selects the command.
    :return: Exit status, 0 on success and 1 on a domain error.
    """
    try:
        return COMMANDS[args.command](args)
    except ManifoldStatsError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1
    except OSError as error:
        print(f"error: {error}", file=sys.stderr)
        return 1


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parses arguments and runs the command.

    :return: Exit status; 2 on a usage error.
    """
    parser = configure_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_:
        return int(exit_.code or 0)
    configure_logging(args)
    try:
        return run(args)
    except ValueError as error:
        parser.print_usage(sys.stderr)
        print(f"error: {error}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
