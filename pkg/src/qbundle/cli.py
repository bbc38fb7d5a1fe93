"""Command-line interface: ``qbundle <command> [options]``.

Exit status: 0 when every case passes, 1 when any case fails, 2 on usage
errors, 3 when nothing fails but some case is inconclusive.
"""
from __future__ import annotations

import argparse
import configparser
import json
import sys
from fractions import Fraction

from . import __version__
from .expr import ExprError, evaluate, render_value
from .gaussbundle import Permutation, flag_ore_set, gauss_decompose, gauss_verify
from .orelocal import OreNotFound, OreSet, ore_solve, verify_witness
from .qalgebra import NcPoly, get_algebra
from .qminor import laplace_check, laplace_suite, qdet, qminor_poly
from .report import SuiteReport, stopwatch
from .suites import SUITES, Config, UnknownSuite, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3

# config-file keys (camelCase accepted) -> Config fields
_KEYS = {
    "n": "n", "q": "q", "seed": "seed", "timing": "timing", "samples": "samples",
    "orebound": "ore_bound", "ore_bound": "ore_bound",
    "maxdegree": "max_degree", "max_degree": "max_degree",
    "sigmas": "sigmas", "suites": "suites",
    "stabilitybound": "stability_bound", "stability_bound": "stability_bound",
    "quasidetconvention": "quasidet_convention", "quasidet_convention": "quasidet_convention",
}


class UsageError(Exception):
    pass


def _parse_q(text):
    if text is None or str(text).strip().lower() in ("", "symbolic", "q"):
        return None
    try:
        v = Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"q must be 'symbolic' or a rational number, got {text!r}") from None
    if v == 0:
        raise UsageError("q must be nonzero")
    return v


def _parse_bool(text):
    t = str(text).strip().lower()
    if t in ("1", "true", "yes", "on"):
        return True
    if t in ("0", "false", "no", "off"):
        return False
    raise UsageError(f"expected a boolean, got {text!r}")


def _csv(text):
    if isinstance(text, (list, tuple)):
        return [str(x).strip() for x in text if str(x).strip()]
    return [x.strip() for x in str(text).split(",") if x.strip()]


def read_config(path):
    """Flat ``key = value`` file; ``#`` starts a comment."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#",), interpolation=None)
    parser.optionxform = str
    try:
        with open(path) as fh:
            parser.read_string("[config]\n" + fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read config: {exc}") from None
    except configparser.Error as exc:
        raise UsageError(f"malformed config: {exc}") from None
    out = {}
    for key, value in parser["config"].items():
        field = _KEYS.get(key.lower())
        if field is None:
            raise UsageError(f"unknown config key {key!r}")
        out[field] = value
    return out


def _coerce(field, value):
    try:
        if field in ("n", "seed", "ore_bound", "max_degree", "samples", "stability_bound"):
            return int(value)
    except ValueError:
        raise UsageError(f"{field} must be an integer, got {value!r}") from None
    if field == "q":
        return _parse_q(value)
    if field == "timing":
        return _parse_bool(value)
    if field == "sigmas":
        # config files separate permutations with spaces or semicolons
        items = value if isinstance(value, list) else str(value).replace(";", " ").split()
        return None if items in ([], ["all"]) else items
    if field == "suites":
        items = _csv(value)
        return list(SUITES) if items in ([], ["all"]) else items
    return value


def build_config(args, suites=None):
    values = {}
    if getattr(args, "config", None):
        values.update(read_config(args.config))
    cli = {"n": args.n, "q": args.q, "seed": args.seed, "ore_bound": args.bound, "timing": args.timing}
    if getattr(args, "sigma", None):
        cli["sigmas"] = args.sigma
    if suites is not None:
        cli["suites"] = suites
    values.update({k: v for k, v in cli.items() if v is not None})
    kwargs = {k: _coerce(k, v) for k, v in values.items()}
    try:
        cfg = Config(**kwargs)
        cfg.permutations()
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return cfg


# ----------------------------------------------------------------------
# output
# ----------------------------------------------------------------------

def exit_code(reports):
    if any(r.failed for r in reports):
        return EXIT_FAIL
    if any(r.inconclusive for r in reports):
        return EXIT_INCONCLUSIVE
    return EXIT_OK


def json_document(cfg, reports, extra=None):
    doc = {"version": __version__, "config": cfg.as_dict(),
           "reports": [r.as_dict(cfg.timing) for r in reports]}
    if extra:
        doc.update(extra)
    return json.dumps(doc, indent=2)


def _print_reports(reports, out, verbose=False):
    for r in reports:
        c = r.counts()
        out.write(f"{r.suite}: pass={c['pass']} fail={c['fail']} inconclusive={c['inconclusive']}\n")
        for case in r.cases:
            if verbose or case.status != "pass":
                out.write(f"  [{case.status}] {case.name}\n")
                if case.status != "pass":
                    out.write(f"    lhs: {case.lhs}\n    rhs: {case.rhs}\n    witness: {case.witness}\n")


def _emit(args, cfg, reports, out, extra=None):
    if args.json:
        out.write(json_document(cfg, reports, extra) + "\n")
    else:
        _print_reports(reports, out, getattr(args, "verbose", False))
    return exit_code(reports)


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def _alg(cfg):
    return get_algebra(cfg.n, cfg.q)


def _first_sigma(cfg):
    return cfg.permutations()[0] if cfg.sigmas else Permutation.identity(cfg.n)


def _ore_set(name, cfg, alg):
    if name in (None, "", "flag"):
        return flag_ore_set(alg, _first_sigma(cfg), cfg.ore_bound)
    if name == "D":
        return OreSet(alg, [qdet(alg)], name="S_D", labels=["D"], bound=cfg.ore_bound)
    if name.startswith("S_"):
        try:
            sigma = Permutation.identity(cfg.n) if name == "S_id" else Permutation.parse(name[2:])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        if sigma.n != cfg.n:
            raise UsageError(f"{name} is not a permutation of 1..{cfg.n}")
        return flag_ore_set(alg, sigma, cfg.ore_bound)
    raise UsageError(f"unknown Ore set {name!r}; use flag, D or S_<sigma>")


def cmd_normalize(args, out):
    cfg = build_config(args)
    alg = _alg(cfg)
    ore = _ore_set(args.set, cfg, alg) if args.set else None
    value = evaluate(args.expr, alg, ore)
    out.write(render_value(value, alg.field) + "\n")
    return EXIT_OK


def cmd_qdet(args, out):
    cfg = build_config(args)
    out.write(qdet(_alg(cfg)).render() + "\n")
    return EXIT_OK


def _labels(text, n):
    try:
        xs = tuple(int(x) for x in _csv(text))
    except ValueError:
        raise UsageError(f"expected comma-separated indices, got {text!r}") from None
    if not xs or list(xs) != sorted(set(xs)) or xs[0] < 1 or xs[-1] > n:
        raise UsageError(f"indices must be increasing within 1..{n}: {text!r}")
    return xs


def cmd_minor(args, out):
    cfg = build_config(args)
    rows, cols = _labels(args.rows, cfg.n), _labels(args.cols, cfg.n)
    if len(rows) != len(cols):
        raise UsageError("a minor needs as many rows as columns")
    out.write(qminor_poly(_alg(cfg), rows, cols).render() + "\n")
    return EXIT_OK


def cmd_laplace(args, out):
    cfg = build_config(args)
    alg = _alg(cfg)
    if args.rows is None:
        rep = laplace_suite(alg)
    else:
        rows, cols = _labels(args.rows, cfg.n), _labels(args.cols or args.rows, cfg.n)
        if len(rows) != len(cols):
            raise UsageError("row and column sets must have equal size")
        variants = (args.variant,) if args.variant else (1, 2, 3, 4)
        rep = laplace_check(alg, rows, cols, variants)
    return _emit(args, cfg, [rep], out)


def _ore_word(s, S, bound):
    k = S.index_of(s)
    if k is not None:
        return (k,)
    for length in range(2, bound + 1):
        for w in S.candidates(length):
            if S.product(w) == s:
                return tuple(w)
    return None


def cmd_ore_solve(args, out):
    cfg = build_config(args)
    alg = _alg(cfg)
    S = _ore_set(args.set, cfg, alg)
    r = evaluate(args.r, alg)
    s = evaluate(args.s, alg)
    if not isinstance(r, NcPoly):
        r = alg.scalar(r)
    if not isinstance(s, NcPoly):
        raise UsageError("s must be a polynomial in the Ore set")
    word = _ore_word(s, S, cfg.ore_bound)
    if word is None:
        raise UsageError(f"s is not a product of generators of {S.name} within the bound")
    rep = SuiteReport("ore-solve")
    rep.notes["set"] = S.name
    rep.notes["side"] = args.side
    name = f"{S.name} {args.side} r={r} s={S.word_text(word)}"
    with stopwatch() as t:
        try:
            rp, sp = ore_solve(r, word, S, bound=cfg.ore_bound, side=args.side)
        except OreNotFound as exc:
            rep.add(name, "inconclusive", "", "", str(exc), t[0])
            rp = None
    if rp is not None:
        ok = verify_witness(r, word, rp, sp, S, args.side)
        if args.side == "left":
            lhs, rhs = f"({rp})*{S.word_text(word)}", f"{S.word_text(sp)}*({r})"
        else:
            lhs, rhs = f"{S.word_text(word)}*({rp})", f"({r})*{S.word_text(sp)}"
        rep.add(name, ok, lhs, rhs, "witness fails re-verification", t[0])
        if not args.json:
            out.write(f"r' = {rp}\ns' = {S.word_text(sp)}\n")
    return _emit(args, cfg, [rep], out)


def cmd_gauss(args, out):
    cfg = build_config(args)
    alg = _alg(cfg)
    sigma = _first_sigma(cfg)
    partition = None
    if args.blocks:
        try:
            partition = {int(x) for x in _csv(args.blocks)}
        except ValueError:
            raise UsageError("--blocks takes a comma-separated subset of 1..n-1") from None
        if not partition <= set(range(1, cfg.n)):
            raise UsageError("--blocks takes a subset of 1..n-1")
    try:
        chart = gauss_decompose(alg, sigma, partition=partition, bound=cfg.ore_bound)
    except NotImplementedError as exc:
        raise UsageError(str(exc)) from None
    n = cfg.n
    entries = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i < j:
                entries[f"U[{i},{j}]"] = chart.U[(i, j)].simplify().render()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if chart.A[(i, j)]:
                entries[f"A[{i},{j}]"] = chart.A[(i, j)].simplify().render()
    rep = gauss_verify(chart)
    if not args.json:
        out.write(f"chart {chart.name()}  Ore set {chart.S.name}: {', '.join(chart.S.labels)}\n")
        for k, v in entries.items():
            out.write(f"{k} = {v}\n")
    return _emit(args, cfg, [rep], out, {"chart": {"sigma": chart.name(), "entries": entries}})


def cmd_check(args, out):
    suites = _csv(args.suite) if args.suite else None
    cfg = build_config(args, suites)
    try:
        reports = run_suite(cfg)
    except UnknownSuite as exc:
        raise UsageError(str(exc)) from None
    return _emit(args, cfg, reports, out)


def cmd_report(args, out):
    args.json = True
    return cmd_check(args, out)


# ----------------------------------------------------------------------
# argument parsing
# ----------------------------------------------------------------------

def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--n", type=int, help="matrix size (1..3)")
    common.add_argument("--q", help="'symbolic' (default) or a rational value")
    common.add_argument("--sigma", action="append", help="permutation such as 2,3,1 or 231 (repeatable)")
    common.add_argument("--bound", type=int, help="Ore search bound (word length)")
    common.add_argument("--seed", type=int, help="seed for sampled suites")
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--config", help="flat key=value config file")
    common.add_argument("--timing", dest="timing", action="store_true", default=None,
                        help="record per-case milliseconds")
    common.add_argument("--no-timing", dest="timing", action="store_false",
                        help="report 0 ms everywhere (byte-stable output)")
    common.add_argument("-v", "--verbose", action="store_true", help="list passing cases too")

    p = argparse.ArgumentParser(prog="qbundle", description="Quantum GL_n and its flag-bundle charts.")
    p.add_argument("--version", action="version", version=f"qbundle {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("normalize", parents=[common], help="normal form of an expression")
    s.add_argument("expr")
    s.add_argument("--set", help="Ore set for inv(...): flag, D or S_<sigma>")
    s.set_defaults(func=cmd_normalize)

    s = sub.add_parser("qdet", parents=[common], help="print the quantum determinant")
    s.set_defaults(func=cmd_qdet)

    s = sub.add_parser("minor", parents=[common], help="print a quantum minor")
    s.add_argument("rows", help="row labels, e.g. 1,2")
    s.add_argument("cols", help="column labels, e.g. 2,3")
    s.set_defaults(func=cmd_minor)

    s = sub.add_parser("laplace-check", parents=[common], help="verify Laplace expansions")
    s.add_argument("rows", nargs="?", help="row labels (omit to run every pair)")
    s.add_argument("cols", nargs="?", help="column labels (default: same as rows)")
    s.add_argument("--variant", type=int, choices=(1, 2, 3, 4))
    s.set_defaults(func=cmd_laplace)

    s = sub.add_parser("ore-solve", parents=[common], help="find r', s' with r' s = s' r")
    s.add_argument("--set", default="flag", help="flag (uses --sigma), D or S_<sigma>")
    s.add_argument("--r", required=True, help="numerator expression")
    s.add_argument("--s", required=True, help="denominator (product of Ore generators)")
    s.add_argument("--side", choices=("left", "right"), default="left")
    s.set_defaults(func=cmd_ore_solve)

    s = sub.add_parser("gauss", parents=[common], help="Gauss chart for a permutation")
    s.add_argument("--blocks", help="subset I' of 1..n-1 for a two-block chart")
    s.set_defaults(func=cmd_gauss)

    s = sub.add_parser("check", parents=[common], help="run verification suites")
    s.add_argument("--suite", help=f"comma list from: {', '.join(SUITES)} (default all)")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("report", parents=[common], help="run suites and emit a JSON report")
    s.add_argument("--suite", help="comma list of suites (default all)")
    s.set_defaults(func=cmd_report)
    return p


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args, out)
    except (UsageError, ExprError) as exc:
        sys.stderr.write(f"qbundle: error: {exc}\n")
        return EXIT_USAGE


def main_entry():
    sys.exit(main())


if __name__ == "__main__":
    main_entry()
