"""Command-line interface: one subcommand per library surface, TSV output.

Exit codes: 0 success, 1 verification failure (with a witness file path on
stdout), 2 usage or input error.  Identical inputs produce byte-identical
stdout; every table is emitted in a fixed sorted order.
"""

import argparse
import os
import sys
import tempfile
from fractions import Fraction

from .arnold import arnold_report, format_polynomial
from .characters import format_table
from .e2 import BudgetExceeded
from .configspaces import (
    NotComputable,
    betti_unordered,
    colored_betti,
    e2_cell_dim,
    e2_page,
    load_manifold,
    stable_range_report,
)
from .manifolds import DescriptorError
from .partitions import format_partition, parse_partition
from .specht import monotonicity_witness, specht_module, verify_claims
from .stability import (
    InducedSpechtSequence,
    RangeParams,
    check_monotone,
    check_uniform_stability,
    propagate_ranges,
)

DEFAULT_BUDGET = 200_000


def _budget() -> int:
    raw = os.environ.get("REPSTAB_BUDGET")
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise SystemExit(2)


def _emit(rows: list[list[str]], fmt: str) -> str:
    if fmt == "pretty" and rows:
        widths = [max(len(str(r[i])) for r in rows if i < len(r)) for i in range(max(map(len, rows)))]
        lines = [
            "  ".join(str(cell).ljust(w) for cell, w in zip(row, widths)).rstrip()
            for row in rows
        ]
    else:
        lines = ["\t".join(str(cell) for cell in row) for row in rows]
    return "\n".join(lines)


def _write_witness(lines: list[str]) -> str:
    fd, path = tempfile.mkstemp(prefix="repstab-witness-", suffix=".txt")
    with os.fdopen(fd, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    return path


def cmd_chartable(args) -> tuple[int, str]:
    if args.n < 1 or args.n > 10:
        return 2, "chartable: need 1 <= n <= 10"
    return 0, format_table(args.n)


def cmd_branch(args) -> tuple[int, str]:
    lam = parse_partition(getattr(args, "lambda"))
    n = args.n
    sub = specht_module(lam, n)
    counts = sub.decompose()
    rows = [[format_partition(mu), str(c)] for mu, c in counts.items()]
    out = _emit(rows, args.format)
    if not args.verify:
        return 0, out
    claims = verify_claims(lam, n)
    witness_lines = []
    if not claims.ok:
        witness_lines += [f"claims failure: {f!r}" for f in claims.failures]
    skipped = ""
    if n <= 7:
        mono = monotonicity_witness(lam, n)
        if not mono.ok:
            witness_lines += [f"monotonicity failure: {f!r}" for f in mono.failures]
    else:
        skipped = "\nmonotonicity\tskipped (n > 7)"
    if witness_lines:
        path = _write_witness(witness_lines)
        return 1, out + f"\nverify\tFAIL\t{path}"
    return 0, out + skipped + "\nverify\tPASS"


def cmd_monotone(args) -> tuple[int, str]:
    lam = parse_partition(getattr(args, "lambda"))
    seq = InducedSpechtSequence(lam)
    start = max(sum(lam), 1)
    report = check_monotone(seq, start, args.n_max)
    rows = [[str(n), "ok" if flag else "FAIL"] for n, flag in sorted(report.monotone.items())]
    out = _emit(rows, args.format)
    if not report.ok:
        path = _write_witness([repr(w) for w in report.witnesses])
        return 1, out + f"\nwitness\t{path}"
    return 0, out


def cmd_stable(args) -> tuple[int, str]:
    lam = parse_partition(getattr(args, "lambda"))
    seq = InducedSpechtSequence(lam)
    start = max(sum(lam), 1)
    report = check_uniform_stability(seq, start, args.n_max)
    rows = []
    for n in sorted(report.multiplicities):
        mults = ";".join(
            f"{format_partition(label)}:{count}"
            for label, count in sorted(report.multiplicities[n].items())
        )
        inj = report.injectivity.get(n, "-")
        surj = report.surjectivity.get(n, "-")
        rows.append([str(n), str(inj), str(surj), mults])
    rows.append(["stable_from", str(report.multiplicity_stable_from()), "", ""])
    out = _emit(rows, args.format)
    structural = [w for w in report.witnesses if w[1] in ("injectivity", "surjectivity")]
    if structural:
        path = _write_witness([repr(w) for w in structural])
        return 1, out + f"\nwitness\t{path}"
    return 0, out


def cmd_ranges(args) -> tuple[int, str]:
    try:
        m = Fraction(args.m)
    except (ValueError, ZeroDivisionError):
        return 2, f"ranges: cannot parse m = {args.m!r}"
    try:
        params = RangeParams(m, args.ell)
    except ValueError as exc:
        return 2, f"ranges: {exc}"
    rows = [[str(r), stable, mono] for r, stable, mono in propagate_ranges(params, args.pages)]
    return 0, _emit(rows, args.format)


def cmd_arnold(args) -> tuple[int, str]:
    if args.m < 1 or args.m > 8 or args.d < 2:
        return 2, "arnold: need 1 <= m <= 8 and d >= 2"
    report = arnold_report(args.m, args.d)
    rows = [["poincare", format_polynomial(report["poincare"])]]
    chi = report["top_character"]
    for rho, value in zip(chi.classes, chi.values):
        rows.append(["top_character", format_partition(rho), str(value)])
    for mu, c in sorted(report["top_decomposition"].items(), reverse=True):
        rows.append(["top_irrep", format_partition(mu), str(c)])
    return 0, _emit(rows, args.format)


def cmd_e2(args) -> tuple[int, str]:
    desc = load_manifold(args.manifold)
    n = args.n
    d = desc.d
    rows = []
    max_p = n * max(desc.degrees)
    for q in range(n // 2 + 1):
        for p in range(max_p + 1):
            dim = e2_cell_dim(desc, n, p, q * (d - 1))
            if dim:
                rows.append([str(p), str(q * (d - 1)), str(dim)])
    rows.sort(key=lambda r: (int(r[1]), int(r[0])))
    out = [["p", "q", "dim"]] + rows
    if args.explicit:
        page = e2_page(desc, n, budget=_budget())
        explicit = {(p, qd1): dim for (p, qd1), dim in page.cell_dims().items()}
        for row in rows:
            p, qd1 = int(row[0]), int(row[1])
            if explicit.get((p, qd1), 0) != int(row[2]):
                return 1, _emit(out, args.format) + "\nexplicit\tMISMATCH"
        top = max(p + qd1 for (p, qd1) in explicit)
        betti = [["betti_ordered", str(i), str(page.betti_ordered(i))] for i in range(top + 1)]
        out += [["explicit", "agree", str(page.total_dim)]] + betti
    return 0, _emit(out, args.format)


def cmd_betti(args) -> tuple[int, str]:
    desc = load_manifold(args.manifold)
    value = betti_unordered(desc, args.n, args.i, budget=_budget())
    return 0, str(value)


def cmd_color_betti(args) -> tuple[int, str]:
    desc = load_manifold(args.manifold)
    mu = parse_partition(args.mu)
    value = colored_betti(desc, args.n, args.i, mu, budget=_budget())
    return 0, str(value)


def cmd_ranges_for(args) -> tuple[int, str]:
    desc = load_manifold(args.manifold)
    rows = [[name, text] for name, text in stable_range_report(desc, args.i)]
    return 0, _emit(rows, args.format)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="repstab",
        description="Exact symmetric-group stability and configuration-space Betti numbers",
    )
    parser.add_argument("--format", choices=("tsv", "pretty"), default="tsv")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chartable", help="character table of S_n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_chartable)

    p = sub.add_parser("branch", help="decomposition of I_n(V_lambda)")
    p.add_argument("--lambda", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action="store_true")
    p.set_defaults(func=cmd_branch)

    p = sub.add_parser("monotone", help="monotonicity of the induced sequence")
    p.add_argument("--lambda", required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(func=cmd_monotone)

    p = sub.add_parser("stable", help="uniform stability of the induced sequence")
    p.add_argument("--lambda", required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.set_defaults(func=cmd_stable)

    p = sub.add_parser("ranges", help="stable/monotone range propagation table")
    p.add_argument("--m", required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--pages", type=int, default=5)
    p.set_defaults(func=cmd_ranges)

    p = sub.add_parser("arnold", help="Euclidean configuration algebra summary")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=cmd_arnold)

    p = sub.add_parser("e2", help="E2 page dimensions")
    p.add_argument("--manifold", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--explicit", action="store_true")
    p.set_defaults(func=cmd_e2)

    p = sub.add_parser("betti", help="unordered configuration Betti number")
    p.add_argument("--manifold", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.set_defaults(func=cmd_betti)

    p = sub.add_parser("color-betti", help="colored configuration Betti number")
    p.add_argument("--manifold", required=True)
    p.add_argument("--mu", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.set_defaults(func=cmd_color_betti)

    p = sub.add_parser("ranges-for", help="theoretical stable ranges for a manifold")
    p.add_argument("--manifold", required=True)
    p.add_argument("--i", type=int, required=True)
    p.set_defaults(func=cmd_ranges_for)

    return parser


def dispatch(argv: list[str]) -> tuple[int, str]:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (0, "") if exc.code == 0 else (2, "usage error")
    try:
        return args.func(args)
    except (DescriptorError, NotComputable, ValueError) as exc:
        return 2, f"error: {exc}"
    except BudgetExceeded as exc:
        return 2, f"error: {exc} (raise REPSTAB_BUDGET to override)"


def main(argv: list[str] | None = None) -> int:
    code, text = dispatch(sys.argv[1:] if argv is None else argv)
    if text:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
