"""Command line front end.

Usage::

    snorm norm VECTOR.json [--p 2]
    snorm certify VECTOR.json [--p 2]
    snorm growth [--p 2] [--q-min 3] [--q-max 5] [--large]
    snorm verify SUITE|all [--seed 1] [--exhaustive 32]
    snorm sandwich [BLOCKS.json] [--seed 1]

Every command takes ``--format csv|json`` and ``--out PATH``.  The exit
status is 0 iff every check the command performs passes, 1 if one fails
and 2 on bad input.
"""

import argparse
import csv
import io
import json
import sys

from snorm.baernstein import CertificateError, certified_norm, nu_p
from snorm.errors import DomainError, InvalidPartitionError, SupportError
from snorm.experiments import DEFAULT_BUDGET, GROWTH_COLUMNS, run_growth
from snorm.numeric import format_scalar
from snorm.rng import MASK
from snorm.suites import CSV_HEADER, SUITES, random_sandwich_instance, run_suite, _rng
from snorm.tsirelson import TsirelsonNorm, sandwich_check
from snorm.vector import SparseVector

SANDWICH_COLUMNS = ["case", "A", "B", "ratio", "lower_ok", "upper_ok"]


class InputError(Exception):
    pass


def _exponent(text):
    try:
        return int(text)
    except ValueError:
        pass
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid exponent {text!r}") from None


def _seed(text):
    value = int(text, 0)
    if not 0 <= value <= MASK:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _load_json(path):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc


def load_vector(path):
    data = _load_json(path)
    try:
        return SparseVector.from_json(data)
    except DomainError as exc:
        raise InputError(f"{path}: {exc}") from exc


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _emit(args, payload, header=None, rows=None):
    if args.format == "csv":
        text = _csv_text(header, rows)
    else:
        text = json.dumps(payload, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_norm(args):
    x = load_vector(args.vector)
    res = certified_norm(x, args.p)
    data = res.to_json()
    _emit(
        args,
        data,
        ["p", "p_power", "decimal", "certificate"],
        [[data["p"], data["p_power"], data["decimal"], json.dumps(data["certificate"])]],
    )
    return 0


def cmd_certify(args):
    x = load_vector(args.vector)
    res = certified_norm(x, args.p)
    replay = nu_p(x, res.certificate, res.p)
    match = replay == res.value_p_power
    data = res.to_json()
    data["replayed_p_power"] = format_scalar(replay) if res.exact else repr(replay)
    data["match"] = match
    _emit(
        args,
        data,
        ["p", "p_power", "replayed_p_power", "match", "certificate"],
        [[data["p"], data["p_power"], data["replayed_p_power"], match, json.dumps(data["certificate"])]],
    )
    return 0 if match else 1


def cmd_growth(args):
    table = run_growth(args.p, args.q_min, args.q_max, large=args.large, budget=args.budget)
    rows = [r.cells() for r in table.rows]
    csv_rows = [[c[k] for k in GROWTH_COLUMNS] for c in rows]
    if not table.complete:
        csv_rows.append(["budget_exceeded"] + [""] * (len(GROWTH_COLUMNS) - 1))
    _emit(args, table.to_json(), GROWTH_COLUMNS, csv_rows)
    return 0 if table.ok else 1


def cmd_verify(args):
    names = list(SUITES) if args.suite == "all" else [args.suite]
    if args.suite != "all" and args.suite not in SUITES:
        raise InputError(f"unknown suite {args.suite!r}; available: all, {', '.join(SUITES)}")
    reports = []
    for name in names:
        options = {}
        if name == "uep":
            options["exhaustive"] = args.exhaustive
        if name == "closed-form":
            options["r_max"] = 8 if args.large else 6
        reports.append(run_suite(name, args.seed, **options))
    for rep in reports:
        for line in rep.lines():
            print(line, file=sys.stderr)
    payload = reports[0].to_json() if len(reports) == 1 else [r.to_json() for r in reports]
    rows = [row for rep in reports for row in rep.csv_rows()]
    _emit(args, payload, CSV_HEADER, rows)
    return 0 if all(r.ok for r in reports) else 1


def _sandwich_from_file(path):
    data = _load_json(path)
    try:
        xs = [SparseVector.from_json(v) for v in data["blocks"]]
        ks = data.get("k")
    except (KeyError, TypeError, AttributeError) as exc:
        raise InputError(f'{path}: expected {{"blocks": [...], "k": [...]}}') from exc
    except DomainError as exc:
        raise InputError(f"{path}: {exc}") from exc
    return xs, ks


def cmd_sandwich(args):
    tnorm = TsirelsonNorm()
    if args.blocks:
        xs, ks = _sandwich_from_file(args.blocks)
        records = [sandwich_check(xs, ks, tnorm)]
    else:
        records = [
            sandwich_check(*random_sandwich_instance(_rng(args.seed, "sandwich", case)), tnorm)
            for case in range(args.cases)
        ]
    ok = all(r.ok for r in records)
    payload = {
        "seed": None if args.blocks else args.seed,
        "ok": ok,
        "records": [{"case": i, **r.to_json()} for i, r in enumerate(records)],
    }
    rows = [[rec[k] for k in SANDWICH_COLUMNS] for rec in payload["records"]]
    _emit(args, payload, SANDWICH_COLUMNS, rows)
    return 0 if ok else 1


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p", type=_exponent, default=2, help="exponent (integer for exact mode)")
    common.add_argument("--seed", type=_seed, default=1, help="seed for sampled suites")
    common.add_argument("--format", choices=("json", "csv"), default="json")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--large", action="store_true", help="allow the q = 8 / r = 8 runs")

    parser = argparse.ArgumentParser(prog="snorm", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("norm", parents=[common], help="B_p norm of a vector file")
    p.add_argument("vector")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("certify", parents=[common], help="norm certificate and its replay")
    p.add_argument("vector")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("growth", parents=[common], help="diag(U_n) growth table")
    p.add_argument("--q-min", type=int, default=3)
    p.add_argument("--q-max", type=int, default=5)
    p.add_argument("--budget", type=float, default=DEFAULT_BUDGET, help="seconds")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("suite", help=f"one of: all, {', '.join(SUITES)}")
    p.add_argument("--exhaustive", type=int, default=32, help="uep: exhaustive bound")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("sandwich", parents=[common], help="Tsirelson blocking sandwich")
    p.add_argument("blocks", nargs="?", help='JSON {"blocks": [...], "k": [...]}')
    p.add_argument("--cases", type=int, default=50)
    p.set_defaults(func=cmd_sandwich)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (InputError, DomainError, InvalidPartitionError, SupportError) as exc:
        print(f"snorm: error: {exc}", file=sys.stderr)
        return 2
    except CertificateError as exc:
        print(f"snorm: check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
