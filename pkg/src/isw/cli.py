"""``isw`` command line: validate, analyze, corpus, conjecture.

Exit codes: 0 ok, 1 invalid algebra, 2 I/O or parse trouble, 3 a
counterexample to the open ζ_n = H ∩ μ_n question was found.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .config import default_budget
from .corpus import standard_corpus
from .errors import BudgetExceeded, FormatError, InvalidSemigroup, OrderTooLarge, TheoremMismatch
from .io import dump_semigroup, dumps, load_semigroup
from .report import DEFAULT_MAX_N, build_report, format_text
from .series import conjecture_check, upper_central_series

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3


def _err(msg):
    print(f"isw: {msg}", file=sys.stderr)


def _load(path):
    """(semigroup, None) or (None, exit code) after reporting the problem."""
    try:
        return load_semigroup(path), None
    except InvalidSemigroup as e:
        print(json.dumps(e.to_json(), sort_keys=True), file=sys.stderr)
        return None, EXIT_INVALID
    except (FormatError, OrderTooLarge) as e:
        _err(str(e))
        return None, EXIT_IO


def cmd_validate(args) -> int:
    S, code = _load(args.path)
    if S is None:
        return code
    print(f"valid inverse semigroup of order {S.order} with {len(S.idempotents)} idempotents")
    return EXIT_OK


def cmd_analyze(args) -> int:
    S, code = _load(args.path)
    if S is None:
        return code
    if S.name is None:
        S.name = Path(args.path).stem
    doc = build_report(S, max_n=args.max_n, budget=args.budget)
    print(dumps(doc) if args.json else format_text(doc), end="" if args.json else "\n")
    return EXIT_OK


def cmd_corpus(args) -> int:
    out = Path(args.outdir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        for name, S in standard_corpus().items():
            dump_semigroup(S, out / f"{name}.json")
    except OSError as e:
        _err(f"cannot write corpus: {e}")
        return EXIT_IO
    print(f"wrote {len(standard_corpus())} files to {out}")
    return EXIT_OK


def _conjecture_row(S, n, budget):
    try:
        series = upper_central_series(S)
        r = conjecture_check(S, n, budget=budget, series=series)
        return {"name": S.name, "n": n, "status": "ok", "holds": r.holds, "witness": r.witness,
                "zeta_n": r.lhs.to_json(), "h_cap_mu_n": r.rhs.to_json()}
    except (BudgetExceeded, OrderTooLarge) as e:
        return {"name": S.name, "n": n, "status": "skipped", "reason": f"{type(e).__name__}: {e}"}
    except TheoremMismatch as e:
        # n <= 1 is a theorem, so this means a bug or a false theorem; report it loudly
        return {"name": S.name, "n": n, "status": "ok", "holds": False, "witness": e.witness,
                "error": str(e)}


def cmd_conjecture(args) -> int:
    if args.corpus == (args.path is not None):
        _err("give either a file or --corpus")
        return EXIT_IO
    if args.corpus:
        members = list(standard_corpus().values())
    else:
        S, code = _load(args.path)
        if S is None:
            return code
        if S.name is None:
            S.name = Path(args.path).stem
        members = [S]

    rows = []
    failures = []
    for S in members:
        row = _conjecture_row(S, args.n, args.budget)
        rows.append(row)
        if row["status"] == "ok" and not row["holds"]:
            failures.append((S, row))

    if args.json:
        print(dumps({"n": args.n, "rows": rows}), end="")
    else:
        for row in rows:
            verdict = ("holds" if row["holds"] else "COUNTEREXAMPLE") if row["status"] == "ok" \
                else f"skipped ({row['reason']})"
            print(f"{row['name']:<16} n={row['n']}  {verdict}")

    if not failures:
        return EXIT_OK
    out = Path(args.witness_dir)
    try:
        out.mkdir(parents=True, exist_ok=True)
        for S, row in failures:
            path = out / f"counterexample-{S.name}-n{args.n}.json"
            path.write_text(dumps({"semigroup": S.to_json(), "n": args.n, "result": row}),
                            encoding="utf-8")
            _err(f"counterexample written to {path}")
    except OSError as e:
        _err(f"counterexample found but witness could not be written: {e}")
    return EXIT_COUNTEREXAMPLE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="isw", description="Centrality and nilpotence for finite inverse semigroups.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check that a file holds an inverse semigroup")
    v.add_argument("path")
    v.set_defaults(func=cmd_validate)

    a = sub.add_parser("analyze", help="full report for one semigroup")
    a.add_argument("path")
    a.add_argument("--max-n", type=int, default=DEFAULT_MAX_N, help="highest conjecture level (default 3)")
    a.add_argument("--budget", type=int, default=None, help="iteration budget (default $ISW_BUDGET or 1e8)")
    a.add_argument("--json", action="store_true", help="machine-readable output")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("corpus", help="write the standard corpus as JSON files")
    c.add_argument("outdir")
    c.set_defaults(func=cmd_corpus)

    k = sub.add_parser("conjecture", help="compare zeta_n with H ∩ mu_n")
    k.add_argument("path", nargs="?")
    k.add_argument("--corpus", action="store_true", help="run on every corpus member")
    k.add_argument("--n", type=int, default=2)
    k.add_argument("--budget", type=int, default=None)
    k.add_argument("--json", action="store_true")
    k.add_argument("--witness-dir", default=".", help="where counterexample files go")
    k.set_defaults(func=cmd_conjecture)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "budget", None) is None and hasattr(args, "budget"):
        try:
            args.budget = default_budget()
        except ValueError:
            _err("ISW_BUDGET is not a number")
            return EXIT_IO
    if getattr(args, "n", 0) < 0 or getattr(args, "max_n", 0) < 0:
        _err("levels must be non-negative")
        return EXIT_IO
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
