"""Command-line entry point.

Exit status: 0 when the command succeeded or the checked property holds,
1 when a verification ran and the property fails, 2 on usage or input
errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import constructions, files, iid, measure, report, sampler
from .stats import ALPHAS, chi_square_test, sample_indices, sample_tuples
from .stats.sampling import FrequencyTable

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _int_list(text):
    try:
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _rational(text):
    try:
        return measure.parse_rational(text)
    except measure.RationalParseError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _emit(args, rep, ok: bool) -> int:
    if args.json:
        print(report.render_json(rep))
    else:
        sys.stdout.write(report.render_text(rep))
    return EXIT_OK if ok else EXIT_FAIL


def _variable(variables, name):
    try:
        return variables[name]
    except KeyError:
        raise ValueError(f"population file has no variable {name!r}; "
                         f"available: {', '.join(sorted(variables)) or 'none'}") from None


def cmd_construct(args):
    if args.kind == "discrete":
        s = constructions.discrete_construction(args.size, args.n, cap=args.cap)
    elif args.kind == "continuous":
        s = constructions.continuous_construction(args.size, args.n, cap=args.cap)
    else:
        pop, _ = files.load_population(args.population)
        s = constructions.product_construction(pop, args.n)
    files.dump_sampler(s, args.out)
    print(f"wrote {args.kind} sampler: N={s.population_size} n={s.n} "
          f"outcomes={s.experiment.size} -> {args.out}")
    return EXIT_OK


def cmd_verify(args):
    pop, _ = files.load_population(args.population)
    s = files.load_sampler(args.sampler)
    rep = sampler.simpleness_report(s, pop)
    if args.rectangles:
        agrees = sampler.exhaustive_rectangle_check(s, pop)
        if agrees != rep.is_simple:  # would contradict atom sufficiency
            raise RuntimeError("all-rectangles check disagrees with the atom check")
        rep = sampler.SimplenessReport(rep.is_simple, rep.worst_tuple, rep.worst_deviation,
                                       sampler.count_rectangles(pop.size, s.n))
    return _emit(args, rep, rep.is_simple)


def cmd_iid(args):
    pop, variables = files.load_population(args.population)
    s = files.load_sampler(args.sampler)
    rep = iid.check_iid(s, pop, _variable(variables, args.variable))
    return _emit(args, rep, rep.ok)


def cmd_subset_prob(args):
    s = files.load_sampler(args.sampler)
    print(measure.format_rational(sampler.subset_selection_probability(s, args.subset)))
    return EXIT_OK


def cmd_cdf(args):
    pop, variables = files.load_population(args.population)
    X = _variable(variables, args.variable)
    print(measure.format_rational(measure.cdf(pop, X, args.at)))
    return EXIT_OK


def cmd_cells(args):
    for t, iv in constructions.all_cells(args.size, args.n):
        print(f"{files.format_tuple(t)} {measure.format_rational(iv.lo)} "
              f"{measure.format_rational(iv.hi)}")
    return EXIT_OK


def cmd_sample(args):
    N, n = args.size, args.n
    if args.emit:
        idx = sample_indices(args.construction, N, n, args.count, args.seed, backend=args.backend)
        tuples = [constructions.digits_decompose(e, N, n) for e in idx]
        files.write_tuples(tuples, args.emit)
        ft = FrequencyTable.from_tuples(N, n, tuples)
    else:
        ft = sample_tuples(args.construction, N, n, args.count, args.seed, backend=args.backend)
    if args.json:
        print(json.dumps({"N": N, "n": n, "total": ft.total,
                          "counts": {files.format_tuple(t): c for t, c in sorted(ft.counts.items())}}))
    else:
        for t, c in sorted(ft.counts.items()):
            print(f"{files.format_tuple(t)} {c}")
    return EXIT_OK


def cmd_gof(args):
    N, n = args.size, args.n
    ft = FrequencyTable.from_tuples(N, n, files.read_tuples(args.counts))
    s = constructions.discrete_construction(N, n)
    rep = chi_square_test(ft, sampler.tuple_distribution(s), args.alpha)
    return _emit(args, rep, not rep.reject)


def _common_options(suppress: bool) -> argparse.ArgumentParser:
    # subcommands must not reset flags already given before the subcommand name
    default = argparse.SUPPRESS if suppress else False
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", default=default,
                        help="emit reports as JSON")
    common.add_argument("--plain", action="store_true", default=default,
                        help="plain output without styling (output is always plain)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_options(suppress=True)
    p = _Parser(prog="popsample", description="Exact population/sampler verification.",
                parents=[_common_options(suppress=False)])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", help="build a sampler file", parents=[common])
    csub = c.add_subparsers(dest="kind", required=True, parser_class=_Parser)
    for kind in ("discrete", "continuous"):
        ck = csub.add_parser(kind, parents=[common],
                             help=f"{kind}-generator construction over a classical population")
        ck.add_argument("--size", type=int, required=True, help="population size N")
        ck.add_argument("--n", type=int, required=True, help="sample size n")
        ck.add_argument("--cap", type=int, default=constructions.DEFAULT_ENUMERATION_CAP,
                        help="refuse if N**n exceeds this (default %(default)s)")
        ck.add_argument("--out", required=True)
    cp = csub.add_parser("product", parents=[common], help="product-space construction")
    cp.add_argument("--population", required=True)
    cp.add_argument("--n", type=int, required=True)
    cp.add_argument("--out", required=True)
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", parents=[common], help="exact simpleness check")
    v.add_argument("--population", required=True)
    v.add_argument("--sampler", required=True)
    v.add_argument("--rectangles", action="store_true",
                   help="also enumerate every rectangle (N*n <= 8 only)")
    v.set_defaults(func=cmd_verify)

    i = sub.add_parser("iid", parents=[common], help="exact iid check of induced sample variables")
    i.add_argument("--population", required=True)
    i.add_argument("--sampler", required=True)
    i.add_argument("--variable", required=True)
    i.set_defaults(func=cmd_iid)

    s = sub.add_parser("sample", parents=[common], help="draw tuples from a live generator")
    s.add_argument("--construction", choices=["discrete", "continuous"], required=True)
    s.add_argument("--size", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--count", type=int, required=True)
    s.add_argument("--seed", type=int, required=True)
    s.add_argument("--emit", help="write the tuple stream to this file")
    s.add_argument("--backend", choices=["pure", "compiled"], default=None)
    s.set_defaults(func=cmd_sample)

    g = sub.add_parser("gof", parents=[common], help="chi-square test of a tuple stream")
    g.add_argument("--counts", required=True, help="tuple stream file")
    g.add_argument("--size", type=int, required=True)
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--alpha", type=float, choices=ALPHAS, default=0.01)
    g.set_defaults(func=cmd_gof)

    sp = sub.add_parser("subset-prob", parents=[common], help="probability of drawing a subset")
    sp.add_argument("--sampler", required=True)
    sp.add_argument("--subset", type=_int_list, required=True, help="e.g. 1,3")
    sp.set_defaults(func=cmd_subset_prob)

    d = sub.add_parser("cdf", parents=[common], help="P(X < u) on a population")
    d.add_argument("--population", required=True)
    d.add_argument("--variable", required=True)
    d.add_argument("--at", type=_rational, required=True, help="threshold u as p/q")
    d.set_defaults(func=cmd_cdf)

    ce = sub.add_parser("cells", parents=[common], help="preimage cell of every tuple")
    ce.add_argument("--size", type=int, required=True)
    ce.add_argument("--n", type=int, required=True)
    ce.set_defaults(func=cmd_cells)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return args.func(args)
    except json.JSONDecodeError as exc:
        print(f"error: malformed JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}",
              file=sys.stderr)
    except (OSError, ValueError, IndexError, TypeError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_USAGE


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
