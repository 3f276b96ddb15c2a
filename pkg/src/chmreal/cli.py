"""``chmreal`` command line.

Exit status 0 on success, 1 when a check fails (violation, unreachable
count, failed verification), 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources
from pathlib import Path

from . import constructions as cons
from .equivalence import (
    DimensionMismatch,
    OrderTooLarge,
    TransformParseError,
    apply,
    dephase,
    find_equivalence,
    format_transform,
    load_transform,
)
from .matrix import (
    EXACT,
    NUMERIC,
    DEFAULT_TOL,
    ExactModeUnavailable,
    MatrixParseError,
    census,
    format_matrix,
    is_chm,
    load_matrix,
)
from .mubscreen import NotACHM, screen
from .search import audit, oracles, sweep, three_rows
from .search.predicates import PredicateId

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("HC_THREADS")
    try:
        return max(1, int(env)) if env else 1
    except ValueError:
        raise UsageError(f"HC_THREADS must be an integer, got {env!r}") from None


def _value(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, (list, tuple)):
        return "[" + ",".join(_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ",".join(f"{k}:{_value(x)}" for k, x in v.items()) + "}"
    if v is None:
        return "-"
    return str(v)


def _emit(args, fields: dict, text: str | None = None) -> None:
    """Print ``fields`` as JSON or as ``key=value`` pairs (or the given text)."""
    if args.json:
        print(json.dumps(fields, sort_keys=False))
    elif text is not None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        print(" ".join(f"{k}={_value(v)}" for k, v in fields.items()))


def _write_or_print(M, out: str | None) -> str | None:
    if out:
        Path(out).write_text(format_matrix(M))
        return out
    return None


# -- commands ----------------------------------------------------------------

def cmd_construct(args) -> int:
    try:
        M = cons.chm_with_count(args.n, args.count)
    except cons.NotAchievable as exc:
        print(str(exc), file=sys.stderr)
        _emit(args, {"n": args.n, "count": args.count, "error": "NotAchievable"})
        return FAIL
    except cons.NotFound as exc:
        print(f"NotFound: {exc}", file=sys.stderr)
        _emit(args, {"n": args.n, "count": args.count, "error": "NotFound"})
        return FAIL
    real = census(M).real_count
    assert real == args.count
    path = _write_or_print(M, args.out)
    fields = {"n": args.n, "count": real, "out": path}
    if path is None:
        fields["matrix"] = format_matrix(M)
        _emit(args, fields, format_matrix(M))
    else:
        _emit(args, fields)
    return OK


def cmd_verify(args) -> int:
    M = load_matrix(args.file)
    ok = is_chm(M, args.mode, args.tol)
    _emit(args, {"chm": ok, "mode": args.mode, "n": M.shape[0]})
    return OK if ok else FAIL


def cmd_census(args) -> int:
    M = load_matrix(args.file)
    c = census(M)
    _emit(args, {
        "real_count": c.real_count,
        "imaginary_array": list(c.imaginary_array),
        "per_row": list(c.per_row_counts),
        "per_column": list(c.per_column_counts),
        "approximate": c.approximate,
    })
    return OK


def cmd_transform(args) -> int:
    M = load_matrix(args.file)
    T = load_transform(args.transform_file)
    N = apply(T, M)
    path = _write_or_print(N, args.out)
    if path is None:
        _emit(args, {"matrix": format_matrix(N)}, format_matrix(N))
    else:
        _emit(args, {"out": path})
    return OK


def cmd_dephase(args) -> int:
    M = load_matrix(args.file)
    D, T = dephase(M)
    path = _write_or_print(D, args.out)
    if args.transform_out:
        Path(args.transform_out).write_text(format_transform(T))
    if path is None:
        _emit(args, {"matrix": format_matrix(D), "transform": format_transform(T)}, format_matrix(D))
    else:
        _emit(args, {"out": path, "transform_out": args.transform_out})
    return OK


def cmd_equivalent(args) -> int:
    A, B = load_matrix(args.file_a), load_matrix(args.file_b)
    T = find_equivalence(A, B)
    fields = {"equivalent": T is not None}
    if T is not None:
        fields["row_perm"] = list(T.row_perm)
        fields["col_perm"] = list(T.col_perm)
    _emit(args, fields)
    return OK if T is not None else FAIL


def cmd_sweep(args) -> int:
    rep = sweep.grid_sweep(args.n, args.q, args.mode, threads=_threads(args))
    paths = sweep.write_witnesses(rep, args.emit_witnesses) if args.emit_witnesses else None
    _emit(args, rep.as_dict(paths), sweep.format_report(rep, paths))
    return OK


def _suite_oracles(args) -> tuple[dict, bool]:
    q3 = args.q or 360
    q4 = args.q or 240
    r3 = oracles.sum3_oracle(q3) if q3 % 3 == 0 else None
    r4 = oracles.sum4_oracle(q4) if q4 % 2 == 0 else None
    if r3 is None and r4 is None:
        raise UsageError("q must be a multiple of 3 or even")
    fields = {"sum3_q": q3 if r3 is not None else None, "sum3": r3,
              "sum4_q": q4 if r4 is not None else None, "sum4": r4}
    return fields, all(x is not False for x in (r3, r4))


def _suite_three_rows(args) -> tuple[dict, bool]:
    q = args.q or 12
    if q % 12:
        raise UsageError("q must be divisible by 12")
    reps = three_rows.classify_three_rows(q)
    keys = {three_rows.canonical_key(R.exponents(q), q) for R in reps}
    known = {three_rows.canonical_key(cons.h6_prefix(k).exponents(q), q) for k in range(1, 5)}
    fields = {"q": q, "classes": len(reps), "matches_known": keys == known}
    return fields, keys == known


def _suite_predicates(args) -> tuple[dict, bool]:
    ran, found = audit.predicate_audit(args.samples, args.seed)
    fields = {
        "samples": args.samples,
        "seed": args.seed,
        "checks": {pid.value: ran[pid] for pid in PredicateId},
        "violations": [f"{name}: {v}" for name, v in found],
    }
    return fields, not found


def _suite_audit(args) -> tuple[dict, bool]:
    rep = audit.s6_membership_audit(args.samples, args.seed, _threads(args))
    fields = {
        "samples": rep.samples,
        "seed": rep.seed,
        "counts": sorted(rep.counts),
        "violations": [m for _, m, _ in rep.violations],
    }
    return fields, rep.passed


SUITES = {
    "oracles": _suite_oracles,
    "three-rows": _suite_three_rows,
    "predicates": _suite_predicates,
    "audit": _suite_audit,
}


def cmd_lemmas(args) -> int:
    if args.suite in ("predicates", "audit"):
        if args.seed is None:
            raise UsageError(f"--seed is required for suite {args.suite}")
        if args.samples is None:
            args.samples = 10_000 if args.suite == "predicates" else 100_000
    fields, ok = SUITES[args.suite](args)
    fields = {"suite": args.suite, "pass": ok, **fields}
    _emit(args, fields)
    return OK if ok else FAIL


def _screen_one(path: str):
    try:
        return path, screen(load_matrix(path)), None
    except NotACHM as exc:
        return path, None, str(exc)


def cmd_screen(args) -> int:
    threads = _threads(args)
    if threads > 1 and len(args.files) > 1:
        with ProcessPoolExecutor(threads) as ex:
            results = list(ex.map(_screen_one, args.files))
    else:
        results = [_screen_one(p) for p in args.files]
    status = OK
    many = len(args.files) > 1
    for path, verdict, err in results:
        if err is not None:
            print(f"{path}: NotACHM: {err}", file=sys.stderr)
            status = FAIL
            continue
        fields = verdict.as_dict()
        if many:
            fields = {"file": path, **fields}
        text = (f"{path}: " if many else "") + verdict.line()
        _emit(args, fields, text)
    return status


def cmd_recipes(args) -> int:
    if args.regen:
        recipes = cons.regenerate_recipes()
        target = args.out or str(resources.files("chmreal") / "data" / cons.RECIPE_FILE)
        cons.write_recipes(target, recipes)
        cons.recipe_table.cache_clear()
        _emit(args, {"written": target, "recipes": len(recipes)})
    else:
        table = cons.recipe_table()
        text = cons.format_recipes(table[k] for k in sorted(table))
        _emit(args, {"recipes": [table[k].format() for k in sorted(table)]}, text)
    return OK


# -- parser ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def shared(defaults: bool) -> argparse.ArgumentParser:
        # accepted before or after the subcommand; only the top level sets defaults
        g = argparse.ArgumentParser(add_help=False)
        g.add_argument("--json", action="store_true",
                       default=False if defaults else argparse.SUPPRESS,
                       help="machine-readable output")
        g.add_argument("--threads", type=int, default=None if defaults else argparse.SUPPRESS,
                       help="worker processes (default: $HC_THREADS or 1)")
        return g

    p = argparse.ArgumentParser(prog="chmreal", parents=[shared(True)],
                                description="Real entries of complex Hadamard matrices.")
    sub = p.add_subparsers(dest="command", required=True)
    common = shared(False)

    def add(name, func, help):
        sp = sub.add_parser(name, parents=[common], help=help)
        sp.set_defaults(func=func)
        return sp

    sp = add("construct", cmd_construct, "build a CHM with a given number of real entries")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--count", type=int, required=True)
    sp.add_argument("--out")

    sp = add("verify", cmd_verify, "check that a matrix file is a CHM")
    sp.add_argument("file")
    sp.add_argument("--mode", choices=[EXACT, NUMERIC], default=NUMERIC)
    sp.add_argument("--tol", type=float, default=DEFAULT_TOL)

    sp = add("census", cmd_census, "count real entries")
    sp.add_argument("file")

    sp = add("transform", cmd_transform, "apply a monomial transform")
    sp.add_argument("file")
    sp.add_argument("transform_file")
    sp.add_argument("--out")

    sp = add("dephase", cmd_dephase, "make the first row and column all ones")
    sp.add_argument("file")
    sp.add_argument("--out")
    sp.add_argument("--transform-out")

    sp = add("equivalent", cmd_equivalent, "decide permutation equivalence")
    sp.add_argument("file_a")
    sp.add_argument("file_b")

    sp = add("sweep", cmd_sweep, "census all CHMs over a root-of-unity grid")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--mode", choices=[sweep.FULL, sweep.PARAMETERIZED, sweep.FULL_PRUNED])
    sp.add_argument("--emit-witnesses", metavar="DIR")

    sp = add("lemmas", cmd_lemmas, "run oracle, classification, predicate or audit suites")
    sp.add_argument("--suite", choices=sorted(SUITES), required=True)
    sp.add_argument("--q", type=int)
    sp.add_argument("--samples", type=int)
    sp.add_argument("--seed", type=int)

    sp = add("screen", cmd_screen, "screen 6x6 CHMs for MUB-trio exclusion")
    sp.add_argument("files", nargs="+")

    sp = add("recipes", cmd_recipes, "show or regenerate the count recipe table")
    sp.add_argument("--regen", action="store_true")
    sp.add_argument("--out")
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (MatrixParseError, TransformParseError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
    except (UsageError, ExactModeUnavailable, sweep.InfeasibleSweep, DimensionMismatch,
            OrderTooLarge, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return USAGE


if __name__ == "__main__":
    sys.exit(main())
