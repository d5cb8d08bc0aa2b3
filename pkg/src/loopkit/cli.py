"""Command-line front end.

Subcommands: check, nuclei, pseudo, verify, isotope, generate,
matrix-demo.  Exit status 0 means every requested check passed, 1 means
some check failed (witnesses are printed), 2 means a usage or file
format error.  Output is deterministic for a fixed command line and
seed.
"""

from __future__ import annotations

import argparse
import concurrent.futures
import json
import os
import sys

from . import constructions, matrix_bruck, theorems
from .core import FormatError, LoopError, NotTwoSidedError, Permutation, dumps, load, save
from .identities import (
    BUILTIN_NAMES,
    Identity,
    builtin,
    check_identity,
    format_identity,
    parse_identity,
)
from .nuclei import NucleusKind, is_subloop, nucleus
from .pseudo import enumerate_pseudo, is_pseudo

KINDS = {k.value: k for k in NucleusKind}


def _identity_arg(text: str) -> tuple[str, Identity]:
    """Builtin name or identity source -> (label, Identity)."""
    if text in BUILTIN_NAMES:
        return text, builtin(text)
    ident = parse_identity(text)
    return format_identity(ident), ident


def _load_identity_file(path) -> list:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            s = raw.strip()
            if not s or s.startswith("#"):
                continue
            try:
                out.append(_identity_arg(s))
            except LoopError as err:
                raise FormatError(str(err), str(path), lineno) from err
    return out


# -- check ----------------------------------------------------------------------


def _cmd_check(args) -> int:
    L = load(args.table)
    requested = []
    for text in args.identities:
        requested.append(_identity_arg(text))
    for name in args.builtin or []:
        requested.append((name, builtin(name)))
    if args.identity_file:
        requested.extend(_load_identity_file(args.identity_file))
    if not requested:
        print("error: no identities given", file=sys.stderr)
        return 2
    failures = 0
    records = []
    for label, ident in requested:
        try:
            cex = check_identity(L, ident)
        except NotTwoSidedError as err:
            cex = None
            failures += 1
            print(f"{label}: FAILS ({err})")
            records.append(
                {"loop": args.table, "check": label, "status": "FAIL", "witness": None,
                 "note": str(err)}
            )
            continue
        if cex is None:
            print(f"{label}: HOLDS")
            records.append(
                {"loop": args.table, "check": label, "status": "PASS", "witness": None,
                 "note": ""}
            )
        else:
            failures += 1
            where = " ".join(f"{k}={v}" for k, v in cex.items())
            print(f"{label}: FAILS at {where}")
            records.append(
                {"loop": args.table, "check": label, "status": "FAIL", "witness": cex,
                 "note": ""}
            )
    if args.format == "records":
        for rec in records:
            print(json.dumps(rec, sort_keys=True))
    return 1 if failures else 0


# -- nuclei ---------------------------------------------------------------------


def _cmd_nuclei(args) -> int:
    L = load(args.table)
    for kind in NucleusKind:
        ns = nucleus(L, kind)
        sub = "yes" if is_subloop(L, ns) else "no"
        print(f"{kind.value:<6} : {' '.join(str(e) for e in ns)}   subloop={sub}")
    return 0


# -- pseudo ---------------------------------------------------------------------


def _cmd_pseudo(args) -> int:
    L = load(args.table)
    kind = KINDS[args.kind]
    if args.sigma is not None or args.companion is not None:
        if args.sigma is None or args.companion is None:
            print("error: --sigma and --companion must be given together", file=sys.stderr)
            return 2
        try:
            sigma = Permutation(int(v) for v in args.sigma.split())
        except ValueError as err:
            print(f"error: {err}", file=sys.stderr)
            return 2
        if sigma.n != L.n or not 0 <= args.companion < L.n:
            print("error: sigma or companion does not match the loop order", file=sys.stderr)
            return 2
        if is_pseudo(L, kind, sigma, args.companion):
            print(f"valid: {kind.value} {args.companion} : {sigma.one_line()}")
            return 0
        print(f"invalid: {kind.value} {args.companion} : {sigma.one_line()}")
        return 1
    pairs = enumerate_pseudo(L, kind)
    for p in pairs:
        print(f"{p.kind.value} {p.companion} : {p.sigma.one_line()}")
    print(f"total {len(pairs)}")
    return 0


# -- verify ---------------------------------------------------------------------


def _verify_one(job):
    rows, loop_id, names = job
    from .core import LoopTable

    return theorems.verify_loop(LoopTable(rows), loop_id, names)


def _cmd_verify(args) -> int:
    if (args.table is None) == (args.generate is None):
        print("error: give a table file or --generate, not both", file=sys.stderr)
        return 2
    names = tuple(args.theorem or ["main"])
    try:
        theorems.resolve_check_names(names)
    except KeyError as err:
        print(f"error: {err.args[0]}", file=sys.stderr)
        return 2
    jobs = []
    if args.table is not None:
        L = load(args.table)
        loop_id = os.path.splitext(os.path.basename(args.table))[0]
        jobs.append((L.table, loop_id, names))
    else:
        stream = constructions.all_loops(args.generate)
        if args.wcip_only:
            from .pseudo import has_wcip

            stream = (L for L in stream if has_wcip(L))
        for i, L in enumerate(stream):
            jobs.append((L.table, f"n{args.generate}#{i}", names))
    if args.jobs > 1 and len(jobs) > 1:
        with concurrent.futures.ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_verify_one, jobs, chunksize=16))
    else:
        reports = [_verify_one(job) for job in jobs]
    failed = 0
    for rep in reports:
        if args.format == "records":
            for rec in theorems.report_records(rep):
                print(json.dumps(rec, sort_keys=True))
        else:
            print(theorems.format_report(rep))
        if not rep.passed:
            failed += 1
    print(f"# {len(reports)} loops, {failed} with failures", file=sys.stderr)
    return 1 if failed else 0


# -- isotope ---------------------------------------------------------------------


def _cmd_isotope(args) -> int:
    L = load(args.table)
    result = constructions.commutative_isotope(L)
    case = "loop" if result.is_loop else "quasigroup (element 0 is not an identity)"
    lines = [f"# commutative isotope of {args.table}: {case}", str(L.n)]
    lines.extend(" ".join(str(v) for v in row) for row in result.table)
    text = "\n".join(lines) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


# -- generate ---------------------------------------------------------------------


def _cmd_generate(args) -> int:
    stream = constructions.all_loops(args.order)
    idents = [_identity_arg(text)[1] for text in args.filter or []]
    if idents:
        stream = constructions.filter_by(stream, idents)
    if args.count:
        print(sum(1 for _ in stream))
        return 0
    if args.out_dir:
        os.makedirs(args.out_dir, exist_ok=True)
        count = 0
        for i, L in enumerate(stream):
            save(L, os.path.join(args.out_dir, f"n{args.order}-{i:05d}.tbl"))
            count += 1
        print(f"wrote {count} tables to {args.out_dir}")
        return 0
    for i, L in enumerate(stream):
        print(f"# n{args.order}#{i}")
        sys.stdout.write(dumps(L))
    return 0


# -- matrix-demo -------------------------------------------------------------------


def _cmd_matrix_demo(args) -> int:
    tol = matrix_bruck.Tolerances(tau_id=args.tol) if args.tol else matrix_bruck.DEFAULT_TOLERANCES
    dims = tuple(args.dim or (2, 3))
    bound = tol.tau_id
    hold_names = ["BOL", "AIP", "RIP", "WCIP"]
    unit_sources = ["x*1 = x", "1*x = x", "x*x' = 1", "x'*x = 1"]
    fail_names = ["ASSOC", "COMM"]
    violation_floor = 1e-3
    rows = []
    ok = True
    for name in hold_names:
        for rep in matrix_bruck.check_identity_numeric(
            name, samples=args.samples, dims=dims, tol=tol, seed=args.seed
        ):
            good = rep.max_residual < bound
            ok &= good
            rows.append((name, rep.dim, rep.max_residual, f"< {bound:.1e}", good))
    for src in unit_sources:
        ident = parse_identity(src)
        for rep in matrix_bruck.check_identity_numeric(
            ident, samples=args.samples, dims=dims, tol=tol, seed=args.seed
        ):
            good = rep.max_residual < bound
            ok &= good
            rows.append((src, rep.dim, rep.max_residual, f"< {bound:.1e}", good))
    for name in fail_names:
        for rep in matrix_bruck.check_identity_numeric(
            name, samples=args.samples, dims=dims, tol=tol, seed=args.seed
        ):
            good = rep.max_residual > violation_floor
            ok &= good
            rows.append((name, rep.dim, rep.max_residual, f"> {violation_floor:.1e}", good))
    width = max(len(r[0]) for r in rows)
    print(f"{'identity':<{width}}  dim  samples  max-residual  expected   status")
    for label, dim, resid, expected, good in rows:
        print(
            f"{label:<{width}}  {dim}    {args.samples:<7}  {resid:.3e}     "
            f"{expected:<9}  {'ok' if good else 'VIOLATED'}"
        )
    for dim in dims:
        spectrum = [2.0, 0.5] + [1.0] * (dim - 2)
        a = matrix_bruck.pd_matrix(
            [[spectrum[i] if i == j else 0.0 for j in range(dim)] for i in range(dim)], tol
        )
        dev = matrix_bruck.left_nucleus_violation_sampler(
            a, samples=min(args.samples, 100), seed=args.seed, tol=tol
        )
        print(f"left-nucleus deviation for diag({','.join(str(s) for s in spectrum)}): {dev:.3e}")
    return 0 if ok else 1


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="loopkit", description="finite loop computations on Cayley tables"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="decide identities on a loop table")
    p.add_argument("table", help="Cayley-table file")
    p.add_argument("identities", nargs="*", help="identity strings, e.g. \"x*y = y*x\"")
    p.add_argument("--builtin", action="append", choices=BUILTIN_NAMES, help="named identity")
    p.add_argument("--identity-file", help="file with one identity per line, '#' comments")
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("nuclei", help="print the three nuclei")
    p.add_argument("table")
    p.set_defaults(func=_cmd_nuclei)

    p = sub.add_parser("pseudo", help="enumerate or test pseudoautomorphism pairs")
    p.add_argument("table")
    p.add_argument("--kind", choices=tuple(KINDS), required=True)
    p.add_argument("--sigma", help="permutation in one-line notation, e.g. \"0 2 1\"")
    p.add_argument("--companion", type=int)
    p.set_defaults(func=_cmd_pseudo)

    p = sub.add_parser("verify", help="run theorem checks over a loop or generated corpus")
    p.add_argument("table", nargs="?", help="Cayley-table file")
    p.add_argument("--generate", type=int, metavar="N", help="verify all loops of order N")
    p.add_argument("--wcip-only", action="store_true", help="keep only WCIP loops")
    p.add_argument(
        "--theorem",
        action="append",
        metavar="NAME",
        help="check or group to run (default: main); one of "
        + ", ".join(sorted(set(theorems.CHECKS) | set(theorems.CHECK_GROUPS))),
    )
    p.add_argument("--format", choices=("text", "records"), default="text")
    p.add_argument("--jobs", type=int, default=1, help="parallel verification processes")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("isotope", help="emit the commutative isotope x o y = x'\\y")
    p.add_argument("table")
    p.add_argument("-o", "--output", help="write to a file instead of stdout")
    p.set_defaults(func=_cmd_isotope)

    p = sub.add_parser("generate", help="exhaustively generate loops of a given order")
    p.add_argument("order", type=int)
    p.add_argument("--filter", action="append", metavar="IDENT",
                   help="builtin name or identity string; repeatable, conjunctive")
    p.add_argument("--count", action="store_true", help="print only the count")
    p.add_argument("--out-dir", help="write one .tbl file per loop")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("matrix-demo", help="residual table for the SPD matrix loop")
    p.add_argument("--dim", action="append", type=int, help="matrix dimension; repeatable")
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, help="identity residual tolerance (default 1e-8)")
    p.set_defaults(func=_cmd_matrix_demo)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except FormatError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except LoopError as err:
        print(f"error: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
