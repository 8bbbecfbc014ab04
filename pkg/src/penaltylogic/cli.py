"""Command-line front end.

Exit status: 0 success or a true answer, 1 a false answer, 2 usage or parse
error, 3 resource cap exceeded.  Boolean commands print ``true``/``false``
as well.  Input files named ``-`` are read from standard input.
"""

from __future__ import annotations

import argparse
import io
import sys
from contextlib import redirect_stderr, redirect_stdout
from typing import Optional, Sequence, TextIO

from penaltylogic import belief, encoders, inference, kb, logic, solver
from penaltylogic.errors import CapExceededError, FormulaSyntaxError, VocabularyError

EXIT_OK, EXIT_FALSE, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _read(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _mass(x) -> str:
    return f"{float(x):.12g}"


def _bool(answer: bool) -> int:
    print("true" if answer else "false")
    return EXIT_OK if answer else EXIT_FALSE


def _tags_text(pk: kb.PenaltyKB, a) -> str:
    positions = sorted(i for i, it in enumerate(pk.items, start=1) if it.tag in a)
    return "{" + ",".join(str(i) for i in positions) + "}"


def _parse_positions(pk: kb.PenaltyKB, text: str) -> frozenset:
    tags = set()
    for part in text.replace(",", " ").split():
        i = int(part)
        if not 1 <= i <= len(pk):
            raise _UsageError(f"item index {i} out of range 1..{len(pk)}")
        tags.add(pk.items[i - 1].tag)
    return frozenset(tags)


# --------------------------------------------------------------------------
# Commands


def cmd_solve(args, stdin) -> int:
    pk = kb.parse_kb(_read(args.kb, stdin))
    mode = "one" if args.one else "all"
    if args.oracle:
        result = solver.brute_force_min_cost(pk, witness_mode=mode)
    else:
        cfg = solver.SearchConfig(witness_mode=mode, variable_order=args.order)
        result = solver.min_cost_interpretations(pk, cfg)
    print(f"optimum {kb.format_cost(result.optimum)}")
    for line in sorted(logic.format_interpretation(w) for w in result.witnesses):
        print(line)
    return EXIT_OK


def cmd_cost(args, stdin) -> int:
    pk = kb.parse_kb(_read(args.kb, stdin))
    if args.world is not None:
        w = logic.parse_interpretation(args.world, pk.vocabulary)
        c = kb.interpretation_cost(pk, w)
    elif args.subtheory is not None:
        c = kb.subtheory_cost(pk, _parse_positions(pk, args.subtheory))
    else:
        f = logic.parse_formula(args.formula) if args.formula else logic.TOP
        c = solver.consistency_cost(pk, f, oracle=args.oracle)
    print(kb.format_cost(c))
    return EXIT_OK


def cmd_entail(args, stdin) -> int:
    pk = kb.parse_kb(_read(args.kb, stdin))
    if args.postulates:
        samples = [logic.parse_formula(s) for s in args.postulates]
        report = inference.check_postulates(pk, samples)
        print(report.summary())
        for cex in report.counterexamples:
            print(f"counterexample {cex}")
        return EXIT_OK if report.all_passed else EXIT_FALSE
    q = inference.Query.of(args.premise or "T", args.conclusion)
    if args.by_subtheories:
        answer = inference.nm_entails_by_subtheories(pk, q)
    elif args.reduction:
        answer = inference.reduction_check(pk, q)
    else:
        answer = inference.nm_entails(pk, q, oracle=args.oracle)
    return _bool(answer)


def cmd_subtheories(args, stdin) -> int:
    pk = kb.parse_kb(_read(args.kb, stdin))
    if args.formula:
        found = solver.phi_preferred_subtheories(pk, logic.parse_formula(args.formula))
    else:
        found = solver.preferred_subtheories(pk)
    for a in found:
        print(f"{_tags_text(pk, a)} cost {kb.format_cost(kb.subtheory_cost(pk, a))}")
    return EXIT_OK


def cmd_equiv(args, stdin) -> int:
    a, b = kb.parse_kb(_read(args.kb1, stdin)), kb.parse_kb(_read(args.kb2, stdin))
    return _bool(kb.semantically_equivalent(a, b))


def cmd_cheaper(args, stdin) -> int:
    a, b = kb.parse_kb(_read(args.kb1, stdin)), kb.parse_kb(_read(args.kb2, stdin))
    return _bool(kb.less_expensive(a, b))


def cmd_normalize(args, stdin) -> int:
    pk = kb.parse_kb(_read(args.kb, stdin))
    sys.stdout.write(kb.format_kb(kb.normalize(pk, semantic=args.semantic)))
    return EXIT_OK


def cmd_encode_clique(args, stdin) -> int:
    g = encoders.read_dimacs_graph(_read(args.graph, stdin))
    sys.stdout.write(kb.format_kb(encoders.encode_max_clique(g)))
    return EXIT_OK


def cmd_clique(args, stdin) -> int:
    g = encoders.read_dimacs_graph(_read(args.graph, stdin))
    r = encoders.solve_max_clique(g)
    members = sorted(r.vertices, key=g.vertices.index)
    print("clique " + " ".join(members))
    print(f"size {r.size}")
    print(f"cost {kb.format_cost(r.cost)}")
    return EXIT_OK


def cmd_ds_check(args, stdin) -> int:
    pk = kb.parse_kb(_read(args.kb, stdin))
    dev = belief.check_contour_identity(pk)
    print(f"max_deviation {_mass(dev)}")
    return EXIT_OK if dev <= args.tol else EXIT_FALSE


def cmd_ds_order(args, stdin) -> int:
    pk = kb.parse_kb(_read(args.kb, stdin))
    f = logic.parse_formula(args.formula) if args.formula else logic.TOP
    print(belief.infinitesimal_plausibility(pk, f))
    if args.plausibility:
        print(f"plausibility {_mass(belief.plausibility(belief.kb_mass(pk), f))}")
    return EXIT_OK


def cmd_export_wcnf(args, stdin) -> int:
    pk = kb.parse_kb(_read(args.kb, stdin))
    try:
        text = encoders.export_wcnf(pk, scale=kb.as_penalty(args.scale))
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="penaltylogic", description="Penalty logic engine.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="minimum-cost interpretations")
    p.add_argument("kb")
    p.add_argument("--one", action="store_true", help="only the lexicographically first witness")
    p.add_argument("--order", choices=solver.VARIABLE_ORDERS, default="frequency")
    p.add_argument("--oracle", action="store_true", help="use exhaustive enumeration")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("cost", help="cost of consistency, of an interpretation or of a subset")
    p.add_argument("kb")
    group = p.add_mutually_exclusive_group()
    group.add_argument("--formula", help="cost of consistency of this formula (default T)")
    group.add_argument("--world", help="interpretation as signed literals, e.g. 'a b !c'")
    group.add_argument("--subtheory", help="1-based item indices kept, e.g. '1,2,3'")
    p.add_argument("--oracle", action="store_true")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("entail", help="nonmonotonic entailment premise |~ conclusion")
    p.add_argument("kb")
    p.add_argument("--premise", default=None)
    p.add_argument("--conclusion")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--oracle", action="store_true")
    mode.add_argument("--by-subtheories", action="store_true")
    mode.add_argument("--reduction", action="store_true")
    mode.add_argument("--postulates", nargs="+", metavar="FORMULA")
    p.set_defaults(func=cmd_entail)

    p = sub.add_parser("subtheories", help="preferred (formula-consistent) sub-theories")
    p.add_argument("kb")
    p.add_argument("--formula")
    p.set_defaults(func=cmd_subtheories)

    for name, func, text in (
        ("equiv", cmd_equiv, "same cost function"),
        ("cheaper", cmd_cheaper, "first base never costs more"),
    ):
        p = sub.add_parser(name, help=text)
        p.add_argument("kb1")
        p.add_argument("kb2")
        p.set_defaults(func=func)

    p = sub.add_parser("normalize", help="merge repeated formulas")
    p.add_argument("kb")
    p.add_argument("--semantic", action="store_true", help="merge equivalent formulas too")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("encode-clique", help="max-clique encoding of a DIMACS graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_encode_clique)

    p = sub.add_parser("clique", help="maximum clique of a DIMACS graph")
    p.add_argument("graph")
    p.set_defaults(func=cmd_clique)

    p = sub.add_parser("ds-check", help="max |k(w) + ln pl(w)| over all interpretations")
    p.add_argument("kb")
    p.add_argument("--tol", type=float, default=1e-9)
    p.set_defaults(func=cmd_ds_check)

    p = sub.add_parser("ds-order", help="order of magnitude of the infinitesimal plausibility")
    p.add_argument("kb")
    p.add_argument("--formula")
    p.add_argument("--plausibility", action="store_true", help="also print Pl(formula)")
    p.set_defaults(func=cmd_ds_order)

    p = sub.add_parser("export-wcnf", help="weighted CNF export of a clausal base")
    p.add_argument("kb")
    p.add_argument("--scale", default="1")
    p.set_defaults(func=cmd_export_wcnf)
    return parser


def run(argv: Sequence[str], stdin: Optional[str] = None) -> tuple[str, str, int]:
    """Execute one command; returns ``(stdout, stderr, status)``."""
    out, err = io.StringIO(), io.StringIO()
    source = io.StringIO(stdin or "")
    with redirect_stdout(out), redirect_stderr(err):
        status = _dispatch(argv, source)
    return out.getvalue(), err.getvalue(), status


def _dispatch(argv: Sequence[str], stdin: TextIO) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
        if args.command == "entail" and not args.postulates and args.conclusion is None:
            raise _UsageError("entail: --conclusion is required")
        return args.func(args, stdin)
    except _UsageError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (FormulaSyntaxError, VocabularyError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv: Optional[Sequence[str]] = None) -> int:
    status = _dispatch(sys.argv[1:] if argv is None else argv, sys.stdin)
    sys.stdout.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
