"""Command line interface.

Exit codes: 0 success, 1 verification failed, 2 invalid or malformed input,
3 I/O failure, 4 search budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from . import construct, graycode, minimize
from .combinatorics import SetFamily, check_I, check_J
from .formats import (FormatError, parse_fraction, polygon_from_json, read_json, rep_from_json,
                      rep_to_json, write_csv, write_json, expanded_matches)
from .geometry import (CANONICAL_UNBOUNDED, CLOSED, OPEN, BadIndex, PolygonError, bounding_box,
                       verify_classes, verify_sampled)

EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_IO, EXIT_BUDGET = 0, 1, 2, 3, 4


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


@dataclass
class Config:
    k: int = 1
    mode: str = OPEN
    budget: int | None = None
    seed: int | None = None
    deterministic: bool = False
    window: tuple[Fraction, Fraction, Fraction, Fraction] | None = None

    def __post_init__(self):
        if self.k < 1:
            raise CliError("--k must be at least 1", EXIT_INVALID)
        if self.budget is not None and self.budget < 1:
            raise CliError("--budget must be positive", EXIT_INVALID)


def _load_json(path) -> dict:
    try:
        return read_json(path)
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_IO) from None
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}", EXIT_INVALID) from None


def _load_polygon(path):
    try:
        return polygon_from_json(_load_json(path))
    except (PolygonError, FormatError) as exc:
        raise CliError(f"invalid polygon {path}: {exc}", EXIT_INVALID) from None


def _load_rep(path, P):
    try:
        rep, expanded = rep_from_json(_load_json(path))
        rep.check_indices(P)
    except (FormatError, BadIndex) as exc:
        raise CliError(f"invalid representation {path}: {exc}", EXIT_INVALID) from None
    return rep, expanded


def _write(path, writer, data) -> None:
    try:
        writer(data, path)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc}", EXIT_IO) from None


def parse_range(text: str) -> list[int]:
    """'3', '1..16' or '1,2,5'."""
    out = []
    try:
        for part in text.split(","):
            if ".." in part:
                lo, hi = part.split("..", 1)
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(part))
    except ValueError:
        raise CliError(f"bad range {text!r}; use forms like 3, 1..16 or 1,2,5", EXIT_INVALID) from None
    if not out or min(out) < 1:
        raise CliError(f"range {text!r} must be nonempty and positive", EXIT_INVALID)
    return out


def parse_window(text: str):
    parts = [parse_fraction(p.strip()) for p in text.split(",")]
    if len(parts) != 4 or parts[0] >= parts[2] or parts[1] >= parts[3]:
        raise argparse.ArgumentTypeError("window must be x0,y0,x1,y1 with x0<x1 and y0<y1")
    return tuple(parts)


# -- commands -----------------------------------------------------------------


def cmd_represent(args, cfg: Config) -> int:
    P = _load_polygon(args.polygon)
    rep = construct.construct_representation(P, cfg.k, cfg.mode, cfg.budget or construct.DEFAULT_BUDGET)
    data = rep_to_json(P, rep, expand=not args.no_expand)
    out = args.output or Path(args.polygon).with_suffix(f".{cfg.mode}.k{cfg.k}.json")
    _write(out, write_json, data)
    lower = construct.polygon_lower_bound(P, cfg.k)
    print(f"n={rep.n} (lower bound {lower})")
    print(f"wrote {out}")
    return EXIT_OK


def cmd_verify(args, cfg: Config) -> int:
    P = _load_polygon(args.polygon)
    rep, expanded = _load_rep(args.representation, P)
    ok = True
    if P.kind == CANONICAL_UNBOUNDED:
        bad = verify_classes(P, rep)
        if bad is None:
            print("exact: Pass (all sign classes)")
        else:
            lt, eq = bad
            print(f"exact: Fail on class negative={sorted(lt)} zero={sorted(eq)}")
            ok = False
        squarefree = all(len(set(s)) == len(s) for s in rep.family)
        if squarefree:
            fam = SetFamily.from_sets(P.m, rep.family)
            viol = check_I(fam) if rep.mode == OPEN else check_J(fam)
            name = "I" if rep.mode == OPEN else "J"
            print(f"condition ({name}): " + ("Pass" if viol is None else f"violated on interval {viol}"))
            ok &= viol is None
    extra = []
    if cfg.seed is not None:
        rng = random.Random(cfg.seed)
        x0, y0, x1, y1 = bounding_box(P)
        for _ in range(args.random_points):
            extra.append((x0 + (x1 - x0) * Fraction(rng.randrange(4097), 4096),
                          y0 + (y1 - y0) * Fraction(rng.randrange(4097), 4096)))
    report = verify_sampled(P, rep, extra)
    print(f"sampled: {report}")
    ok &= report.ok
    if expanded is not None:
        bad_table = expanded_matches(P, rep, expanded)
        print("expanded tables: " + ("Pass" if bad_table is None else f"member {bad_table + 1} mismatch"))
        ok &= bad_table is None
    print("Pass" if ok else "Fail")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_bounds(args, cfg: Config) -> int:
    budget = cfg.budget or construct.DEFAULT_BUDGET
    rows, exceeded = [], False
    for m in parse_range(args.m):
        for k in parse_range(args.k):
            rep = construct.theoretical_bounds(m, k, budget)
            row = {"m": m, "k": k, "lower": rep.lower_n, "achieved": rep.achieved_n,
                   "N_upper": rep.sandwich_N[1], "exact_open": "", "exact_closed": ""}
            if m <= args.exact_max_m and not exceeded:
                try:
                    row["exact_open"] = minimize.exact_n(m, k, OPEN, args.exact_budget).n_min
                    row["exact_closed"] = minimize.exact_n(m, k, CLOSED, args.exact_budget).n_min
                except minimize.BudgetExceeded as exc:
                    print(f"m={m}, k={k}: {exc}", file=sys.stderr)
                    exceeded = True
            rows.append(row)
    header = ["m", "k", "lower", "achieved", "N_upper", "exact_open", "exact_closed"]
    text = write_csv(header, ([r[h] for h in header] for r in rows))
    if args.output:
        _write(args.output, lambda t, p: Path(p).write_text(t), text)
    else:
        sys.stdout.write(text)
    if args.figure:
        from .plotting import plot_bounds
        _write(args.figure, lambda rows, p: plot_bounds(rows, p), rows)
    return EXIT_BUDGET if exceeded else EXIT_OK


def cmd_exact(args, cfg: Config) -> int:
    cache = minimize.load_cache(args.cache) if args.cache else None
    try:
        res = minimize.exact_cached(args.m, args.k, cfg.mode, cache, cfg.budget or minimize.DEFAULT_BUDGET)
    except minimize.BudgetExceeded as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_BUDGET
    if args.cache:
        _write(args.cache, minimize.save_cache, cache)
    print(f"n={res.n_min}")
    print("witness: " + " ".join("{" + ",".join(map(str, s)) + "}" for s in res.witness.members))
    stats = f"nodes: {res.nodes}"
    if not cfg.deterministic:
        stats += f", seconds: {res.seconds:.3f}"
    print(stats)
    return EXIT_OK


def cmd_exact_table(args, cfg: Config) -> int:
    cache = minimize.load_cache(args.cache) if args.cache else {}
    rows, table, code = [], {}, EXIT_OK
    for m in parse_range(args.m):
        for k in range(1, m + 1):
            for mode in (OPEN, CLOSED):
                try:
                    res = minimize.exact_cached(m, k, mode, cache, cfg.budget or minimize.DEFAULT_BUDGET)
                except minimize.BudgetExceeded as exc:
                    print(f"m={m}, k={k}, {mode}: {exc}", file=sys.stderr)
                    code = EXIT_BUDGET
                    continue
                rows.append((m, k, mode, res.n_min, res.nodes))
                table[(m, k, mode)] = res.n_min
    if args.cache:
        _write(args.cache, minimize.save_cache, cache)
    text = write_csv(["m", "k", "mode", "n_min", "nodes"], rows)
    if args.output:
        _write(args.output, lambda t, p: Path(p).write_text(t), text)
    else:
        sys.stdout.write(text)
    for issue in minimize.monotonicity_report(table):
        print(f"monotonicity: {issue}", file=sys.stderr)
    if args.figure:
        from .plotting import plot_bounds
        plot_rows = [{"m": m, "k": k, "lower": minimize.lower_bound(m, k), "achieved": n,
                      "exact_open": n} for m, k, mode, n, _ in rows if mode == OPEN]
        _write(args.figure, lambda r, p: plot_bounds(r, p), plot_rows)
    return code


def cmd_gray(args, cfg: Config) -> int:
    try:
        code = graycode.search_long_run(args.n, args.target, cfg.budget or graycode.DEFAULT_BUDGET)
    except graycode.NotFound as exc:
        print(str(exc))
        return EXIT_OK if exc.exhausted else EXIT_BUDGET
    profile = graycode.run_profile(code)
    print(code)
    print(f"min_run: {profile.min_run}")
    for i, runs in enumerate(profile.runs, start=1):
        print(f"row {i}: runs {' '.join(map(str, runs))}")
    print("transitions: " + " ".join(str(b + 1) for b in code.transitions))
    if args.figure:
        from .plotting import plot_gray_code
        _write(args.figure, lambda c, p: plot_gray_code(c, p), code)
    return EXIT_OK


def cmd_gray_catalog(args, cfg: Config) -> int:
    entries = graycode.build_catalog(args.max_n, cfg.budget or graycode.DEFAULT_BUDGET)
    _write(args.output, graycode.save_catalog, entries)
    for e in entries:
        print(f"n={e.n} best_min_run={e.best_min_run}" + (" (optimal)" if e.optimal else ""))
    return EXIT_OK


def cmd_plot(args, cfg: Config) -> int:
    from .plotting import plot_representation
    P = _load_polygon(args.polygon)
    rep, _ = _load_rep(args.representation, P)
    report = verify_sampled(P, rep)
    marks = [] if report.ok else [report.counterexample]
    _write(args.output, lambda _, p: plot_representation(P, rep, p, cfg.window, args.resolution, marks), None)
    print(f"wrote {args.output}")
    return EXIT_OK


# -- parser -------------------------------------------------------------------


def _opt(p, *names):
    """Attach shared options by name."""
    for name in names:
        if name == "k":
            p.add_argument("--k", type=int, default=1, help="maximum number of factors per product")
        elif name == "mode":
            p.add_argument("--mode", choices=[OPEN, CLOSED], default=OPEN)
        elif name == "budget":
            p.add_argument("--budget", type=int, default=None, help="search node budget")
        elif name == "seed":
            p.add_argument("--seed", type=int, default=None, help="seed for extra random verification points")
        elif name == "deterministic":
            p.add_argument("--deterministic", action="store_true", help="omit timing from output")
        elif name == "window":
            p.add_argument("--window", type=parse_window, default=None, help="plot window x0,y0,x1,y1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="polyrep", description=(
        "Describe convex polygons by few inequalities whose left-hand sides are "
        "products of at most k edge forms."))
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("represent", help="build a product representation")
    p.add_argument("polygon")
    p.add_argument("-o", "--output")
    p.add_argument("--no-expand", action="store_true", help="skip coefficient tables")
    _opt(p, "k", "mode", "budget")
    p.set_defaults(func=cmd_represent)

    p = sub.add_parser("verify", help="check a representation against a polygon")
    p.add_argument("polygon")
    p.add_argument("representation")
    p.add_argument("--random-points", type=int, default=1000)
    _opt(p, "seed")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bounds", help="lower bounds and constructed sizes as CSV")
    p.add_argument("--m", default="1..16", help="range such as 1..16 or 3,5,8")
    p.add_argument("--k", default="1..4")
    p.add_argument("--exact-max-m", type=int, default=0, help="also compute exact cells up to this m")
    p.add_argument("--exact-budget", type=int, default=minimize.DEFAULT_BUDGET)
    p.add_argument("-o", "--output")
    p.add_argument("--figure", help="also render a figure (format from suffix)")
    _opt(p, "budget")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("exact", help="exact minimum for one (m, k, mode)")
    p.add_argument("m", type=int)
    p.add_argument("k", type=int)
    p.add_argument("--cache")
    _opt(p, "mode", "budget", "deterministic")
    p.set_defaults(func=cmd_exact)

    p = sub.add_parser("exact-table", help="exact minima for all k <= m as CSV")
    p.add_argument("--m", default="1..7")
    p.add_argument("--cache")
    p.add_argument("-o", "--output")
    p.add_argument("--figure")
    _opt(p, "budget")
    p.set_defaults(func=cmd_exact_table)

    p = sub.add_parser("gray", help="search a Gray code with long bit runs")
    p.add_argument("n", type=int)
    p.add_argument("target", type=int)
    p.add_argument("--figure")
    _opt(p, "budget")
    p.set_defaults(func=cmd_gray)

    p = sub.add_parser("gray-catalog", help="rebuild the long-run code catalog")
    p.add_argument("--max-n", type=int, default=graycode.CATALOG_MAX_N)
    p.add_argument("-o", "--output", required=True)
    _opt(p, "budget")
    p.set_defaults(func=cmd_gray_catalog)

    p = sub.add_parser("plot", help="render a representation as SVG")
    p.add_argument("polygon")
    p.add_argument("representation")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--resolution", type=int, default=256)
    _opt(p, "window")
    p.set_defaults(func=cmd_plot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    k = args.k if isinstance(getattr(args, "k", None), int) else 1
    try:
        cfg = Config(k=k, mode=getattr(args, "mode", OPEN), budget=getattr(args, "budget", None),
                     seed=getattr(args, "seed", None), deterministic=getattr(args, "deterministic", False),
                     window=getattr(args, "window", None))
        return args.func(args, cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
