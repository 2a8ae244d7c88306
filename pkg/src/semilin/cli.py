"""Command line entry point: ``semilin``."""
from __future__ import annotations

import argparse
import json
import sys

from .k0ring import K0Error, k0_from_json, k0a_mul, smith_normal_form
from .polyring import GF, QQ
from .semimod import (STYLES, DirectSum, Injections, Product, SemiModError, SemiModule, Subsets, TruncatedField,
                      TruncationTooSmall, Tuples, default_sizes, growth_fit)
from .suites import SUITES, Options, run_suite


class UsageError(Exception):
    pass


def parse_basis(text: str):
    """binom:k | psi | trivial | inj:k | tuples:k | sum:A,B,... | prod:A*B*..."""
    text = text.strip()
    if text.startswith("sum:"):
        parts = [p for p in text[4:].split(",") if p]
        if len(parts) < 1:
            raise UsageError("empty sum")
        return DirectSum(*[parse_basis(p) for p in parts])
    if text.startswith("prod:"):
        parts = [p for p in text[5:].split("*") if p]
        if len(parts) < 1:
            raise UsageError("empty product")
        return Product(*[parse_basis(p) for p in parts])
    if text == "psi":
        return Subsets(1)
    if text == "trivial":
        return Subsets(0)
    kind, _, arg = text.partition(":")
    cls = {"binom": Subsets, "inj": Injections, "tuples": Tuples}.get(kind)
    if cls is None or not arg.isdigit():
        raise UsageError(f"cannot parse descriptor {text!r}")
    return cls(int(arg))


def parse_field(text: str):
    if text in ("QQ", "Q"):
        return QQ
    if text.startswith("GF(") and text.endswith(")") and text[3:-1].isdigit():
        try:
            return GF(int(text[3:-1]))
        except Exception as exc:
            raise UsageError(str(exc))
    raise UsageError(f"unknown field {text!r}")


def build_module(args):
    K = TruncatedField(parse_field(args.field), args.style)
    M = SemiModule(K, parse_basis(args.descriptor), name=args.descriptor)
    return M.shifted(args.shift) if args.shift else M


def parse_range(text: str):
    a, sep, b = text.partition("..")
    if not sep or not a.strip().isdigit() or not b.strip().isdigit() or int(a) > int(b):
        raise UsageError(f"bad range {text!r}, expected A..B")
    return range(int(a), int(b) + 1)


def _load_json(text: str):
    try:
        if text.lstrip().startswith(("{", "[")):
            return json.loads(text)
        with open(text) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {text!r}: {exc}")


# commands -------------------------------------------------------------------

def cmd_verify(args):
    rep = run_suite(args.suite, Options(seed=args.seed, max_n=args.max_n, max_deg=args.max_deg))
    for r in rep.sorted_rows():
        params = json.dumps(r.params, sort_keys=True)
        line = f"{r.status.upper():8} {r.check} {params}"
        if r.witness and r.status != "pass":
            line += f"  -- {r.witness}"
        print(line)
    s = rep.summary()
    print(f"{args.suite}: {s['pass']} pass, {s['fail']} fail, {s['skipped']} skipped")
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(rep.to_json(), fh, indent=2)
    return rep.exit_code()


def cmd_dims(args):
    M = build_module(args)
    sizes = parse_range(args.t_range)
    values = []
    print("|T|  dim")
    for t in sizes:
        d = M.fixed_dim_at_size(t)
        values.append(d)
        print(f"{t:>3}  {d}")
    if len(values) >= 2:
        try:
            print(f"fit: {growth_fit(M, sizes)}")
        except SemiModError as exc:
            print(f"fit: none ({exc})")
    return 0


def cmd_fit(args):
    M = build_module(args)
    sizes = parse_range(args.sizes) if args.sizes else default_sizes(M)
    P = growth_fit(M, sizes)
    print(P)
    print(f"level: {P.degree}")
    return 0


def cmd_k0(args):
    try:
        a = k0_from_json(_load_json(args.left))
        b = k0_from_json(_load_json(args.right))
    except (KeyError, TypeError, AttributeError) as exc:
        raise UsageError(f"malformed K0 class: {exc}")
    print(json.dumps(k0a_mul(a, b).to_json()))
    return 0


def cmd_snf(args):
    A = _load_json(args.matrix)
    if not isinstance(A, list) or not A or not all(isinstance(r, list) for r in A):
        raise UsageError("matrix must be a nonempty list of rows")
    if len({len(r) for r in A}) != 1 or not all(isinstance(x, int) for r in A for x in r):
        raise UsageError("matrix must be rectangular with integer entries")
    U, D, V = smith_normal_form(A)
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    print(json.dumps({"U": U, "D": D, "V": V, "diagonal": diag}))
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="semilin", description="Semilinear representation checks.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", choices=SUITES)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--max-n", type=int, default=7)
    v.add_argument("--max-deg", type=int, default=12)
    v.add_argument("--json", metavar="PATH")
    v.set_defaults(func=cmd_verify)

    def module_args(q):
        q.add_argument("descriptor")
        q.add_argument("--field", default="QQ")
        q.add_argument("--style", default="free", choices=STYLES)
        q.add_argument("--shift", type=int, default=0)

    d = sub.add_parser("dims", help="fixed-vector dimensions over a range of |T|")
    module_args(d)
    d.add_argument("--t-range", required=True)
    d.set_defaults(func=cmd_dims)

    f = sub.add_parser("fit", help="growth polynomial in the binomial basis")
    module_args(f)
    f.add_argument("--sizes", help="range A..B of |T| used for the fit")
    f.set_defaults(func=cmd_fit)

    k = sub.add_parser("k0", help="arithmetic in the K0 ring")
    ksub = k.add_subparsers(dest="op", required=True)
    km = ksub.add_parser("mul")
    km.add_argument("left")
    km.add_argument("right")
    km.set_defaults(func=cmd_k0)

    s = sub.add_parser("snf", help="Smith normal form of an integer matrix")
    s.add_argument("matrix")
    s.set_defaults(func=cmd_snf)
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SemiModError as exc:
        print(f"semilin: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2 if isinstance(exc, TruncationTooSmall) else 1
    except (UsageError, K0Error) as exc:
        print(f"semilin: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
