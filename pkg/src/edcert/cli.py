"""edcert: command-line front end.

Exit status 0 on success, 1 when a verification fails, 2 on invalid input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import certs, codes, symx, tschirn
from .abgroup import AbGroup
from .centralgebra import certify_self_centralizing
from .errors import ConsistencyError, InvalidConstruction, ResourceError, UnsupportedError
from .monomat import build_H, verify_det_lemma

OK, FAIL, INVALID = 0, 1, 2


def _dump(obj, path: str | None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _parse_params(items: list[str]) -> dict:
    params: dict = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep:
            raise ValueError(f"parameter {item!r} is not key=value")
        params[key] = int(value) if value.lstrip("-").isdigit() else value
    return params


# -- subcommands -------------------------------------------------------------

def cmd_bounds(args) -> int:
    if args.all:
        specs = certs.default_specs()
    elif args.family:
        specs = [(args.family, _parse_params(args.params))]
    else:
        specs = []
    table = certs.bounds_table(specs)
    records = table.records()
    if args.json:
        Path(args.json).write_text(table.to_json())
    if args.tsv:
        Path(args.tsv).write_text(certs.render_tsv(records))
    if args.plot:
        from .plotting import plot_bounds

        plot_bounds(records, args.plot)
    sys.stdout.write(certs.render_text(records))
    for msg in table.failures:
        print(f"FAILED: {msg}", file=sys.stderr)
    return OK if table.ok else FAIL


def cmd_subgroup(args) -> int:
    A = AbGroup.parse(args.group)
    if A.order > certs.MAX_MATRIX_SIZE:
        raise InvalidConstruction(f"|A| = {A.order} exceeds the limit {certs.MAX_MATRIX_SIZE}")
    e = args.e if args.e is not None else A.order
    H = build_H(A, e)
    det = verify_det_lemma(A)
    out = {
        "group": str(A),
        "e": e,
        "n": H.n,
        "factors": list(H.factors),
        "order": H.order,
        "rank": H.rank,
        "checks": H.checks,
        "det_lemma_hypothesis": det.hypothesis,
        "all_unimodular": det.all_unimodular,
    }
    status = OK
    if args.verify_centralizer:
        res = certify_self_centralizing(A)
        out["self_centralizing"] = res.ok
        out["collision"] = [list(map(list, line)) for line in res.collision] if res.collision else None
        status = OK if res.ok else FAIL
    _dump(out, args.json)
    return status


def _code_report(code: codes.BinaryCode) -> dict:
    report = {
        "length": code.length,
        "dimension": code.dimension,
        "doubly_even": codes.is_doubly_even(code),
        "distinct_columns": codes.has_distinct_columns(code),
        "rows": code.to_strings(),
    }
    if report["doubly_even"] and report["distinct_columns"]:
        report["spin_bound"] = f"ed(Spin_{code.length};2) >= {code.dimension + 1}"
    return report


def cmd_code(args) -> int:
    if args.action == "family":
        code = codes.family_code(args.n)
    elif args.action == "verify":
        code = codes.BinaryCode.from_strings(Path(args.file).read_text().splitlines())
    else:
        res = codes.search_code(args.n, args.budget, args.seed)
        if res.code is None:
            _dump({"length": args.n, "dimension": 0, "found": False, **res.details,
                   "timed_out": res.timed_out}, None)
            return OK
        code = res.code
    if args.out:
        Path(args.out).write_text(code.dumps())
    report = _code_report(code)
    _dump(report, None)
    return OK if report["doubly_even"] and report["distinct_columns"] else FAIL


def cmd_xmn(args) -> int:
    w = symx.find_symmetric_witness(args.n, args.m, seed=args.seed, exact=not args.numeric)
    if w is None:
        print(f"no witness for X_({args.m},{args.n}) after {symx.RETRIES} attempts", file=sys.stderr)
        return FAIL
    _dump(w.to_record(), args.json)
    return OK


def cmd_tschirnhaus(args) -> int:
    result = tschirn.transform(args.n, args.m, args.sub, seed=args.seed)
    if args.json:
        _dump(result, args.json)
    else:
        print(f"f(x) = {result['f']}")
        print(f"z = {result['substitution']}")
        for j, c in enumerate(result["coefficients"], start=1):
            print(f"b_{j} = {c}")
        print(f"trdeg = {result['trdeg']}")
    return OK


# -- parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edcert", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="certify lower bounds and print the table")
    p.add_argument("--all", action="store_true", help="the default set of groups")
    p.add_argument("--family", choices=certs.FAMILIES)
    p.add_argument("--params", nargs="*", default=[], metavar="KEY=VALUE")
    p.add_argument("--json", metavar="FILE", help="write the JSON records")
    p.add_argument("--tsv", metavar="FILE", help="write a tab separated table")
    p.add_argument("--plot", metavar="FILE", help="write a figure (png, pdf, svg)")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("subgroup", help="build H = image of A x A* in SL_n/mu_e")
    p.add_argument("--group", required=True, help='e.g. "Z2^3" or "Z2^6xZ4"')
    p.add_argument("--e", type=int, help="default |A|, i.e. PGL_n")
    p.add_argument("--verify-centralizer", action="store_true")
    p.add_argument("--json", metavar="FILE")
    p.set_defaults(func=cmd_subgroup)

    p = sub.add_parser("code", help="doubly even codes for Spin_n")
    csub = p.add_subparsers(dest="action", required=True)
    c = csub.add_parser("family")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--out", metavar="FILE")
    c = csub.add_parser("verify")
    c.add_argument("file")
    c.add_argument("--out", metavar="FILE")
    c = csub.add_parser("search")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--budget", type=float, default=5.0, help="seconds")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", metavar="FILE")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("xmn", help="symmetric witness on X_(m,n)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--numeric", action="store_true", help="skip the closed-form path")
    p.add_argument("--json", metavar="FILE")
    p.set_defaults(func=cmd_xmn)

    p = sub.add_parser("tschirnhaus", help="transformed coefficients and their trdeg")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--sub", metavar="EXPR", help="g(x) in x and a_j; default (a_{n-1}/a_n) x")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", metavar="FILE")
    p.set_defaults(func=cmd_tschirnhaus)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, KeyError, InvalidConstruction, UnsupportedError, OSError) as exc:
        print(f"edcert: invalid input: {exc}", file=sys.stderr)
        return INVALID
    except (ConsistencyError, ResourceError, certs.VerificationFailure) as exc:
        print(f"edcert: verification failed: {exc}", file=sys.stderr)
        return FAIL


if __name__ == "__main__":
    sys.exit(main())
