"""Command-line interface: ``kdiamond <subcommand> ...`` (or ``python -m kdiamond``)."""

from __future__ import annotations

import argparse
import sys

from . import congruences, identities, oracle
from .operators import HeckeContext, eigen_check
from .qproducts import broken_diamond_gf, expand_spec, parse_spec
from .series import ring_mod, write_csv


def _emit_series(series, out_path):
    if out_path in (None, "-"):
        write_csv(series, sys.stdout)
    else:
        with open(out_path, "w", newline="") as fh:
            write_csv(series, fh)


def cmd_expand(args):
    series = expand_spec(parse_spec(args.spec), args.order, ring_mod(args.mod))
    _emit_series(series, args.out)
    return 0


def cmd_delta(args):
    _emit_series(broken_diamond_gf(args.k, args.order, ring_mod(args.mod)), args.out)
    return 0


def _parse_params(text):
    params = {}
    for item in filter(None, (t.strip() for t in (text or "").split(","))):
        key, _, value = item.partition("=")
        if not value:
            raise SystemExit(f"bad parameter {item!r}; expected key=value")
        params[key.strip()] = int(value)
    return params


def cmd_verify(args):
    try:
        congs = congruences.gen_family(args.family, **_parse_params(args.params))
    except congruences.FamilyParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    reports = congruences.verify_many(congs, args.order)
    for r in reports:
        print(r.to_json())
    print(f"# {'status':<6} {'congruence':<48} samples")
    for r in reports:
        line = f"# {r.status:<6} {str(r.congruence):<48} {r.samples}"
        if r.counterexample:
            n, v = r.counterexample
            line += f"  (n={n}: residue {v})"
        print(line)
    return 0 if all(r.passed for r in reports) else 1


def cmd_verify_identity(args):
    try:
        ic = identities.identity(args.name, args.order)
    except (KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    res = identities.verify_identity(ic)
    status = "pass" if res.passed else f"fail (first mismatch at q^{res.mismatch})"
    print(f"{ic.name}: {ic.description} [order {ic.order}]: {status}")
    return 0 if res.passed else 1


def cmd_hecke_check(args):
    ctx = HeckeContext.principal(args.weight, args.level) if args.level > 1 else HeckeContext(args.weight)
    f = expand_spec(parse_spec(args.series), args.order, ring_mod(args.mod))
    res = eigen_check(f, args.p, ctx, args.order // args.p)
    if res.ok:
        print(res.eigenvalue)
        return 0
    print(f"not an eigenform of T({args.p}): first failure at q^{res.failure_index}", file=sys.stderr)
    return 1


def cmd_oracle(args):
    print("n,delta")
    for n, d in enumerate(oracle.count_table(args.k, args.max_n)):
        print(f"{n},{d}")
    return 0


def cmd_scan(args):
    hits = congruences.scan_congruences(
        f"delta:{args.k}", args.mod, args.a_max, args.order, args.min_samples, n_min=args.n_min)
    for h in hits:
        print(h.to_json())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kdiamond", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="expand a product spec to a coefficient CSV")
    p.add_argument("--spec", required=True, help='e.g. "1 * q^0 * M(1)^1 * P(1)^-2 * M(5)^-1"')
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--mod", type=int, default=0, help="0 for exact integers")
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("delta", help="expand B_k(q), the broken k-diamond generating function")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--mod", type=int, default=0)
    p.add_argument("--out", default="-")
    p.set_defaults(func=cmd_delta)

    p = sub.add_parser("verify", help="generate and verify a congruence family")
    p.add_argument("--family", required=True, choices=sorted(congruences.FAMILIES))
    p.add_argument("--params", default="", help='e.g. "l=2" or "p=13"')
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("verify-identity", help="check a named q-series congruence")
    p.add_argument("--name", required=True, help=", ".join(identities.IDENTITY_NAMES))
    p.add_argument("--order", type=int, required=True)
    p.set_defaults(func=cmd_verify_identity)

    p = sub.add_parser("hecke-check", help="test a series for T(p)-eigenness and print the eigenvalue")
    p.add_argument("--series", required=True, help='product grammar, psi(d)^e allowed, e.g. "q*psi^8"')
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--weight", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--mod", type=int, default=0)
    p.add_argument("--level", type=int, default=1,
                   help="use the principal character mod LEVEL (default: chi = 1 everywhere)")
    p.set_defaults(func=cmd_hecke_check)

    p = sub.add_parser("oracle", help="brute-force Delta_k(n) table as CSV")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("scan", help="search for progressions A n + B with vanishing coefficients")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--mod", type=int, required=True)
    p.add_argument("--a-max", type=int, required=True)
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--min-samples", type=int, default=50)
    p.add_argument("--n-min", type=int, default=0)
    p.set_defaults(func=cmd_scan)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "mod", 0) == 1 or getattr(args, "mod", 0) < 0:
        print("error: --mod must be 0 (exact) or >= 2", file=sys.stderr)
        return 2
    if args.command == "scan" and args.mod < 2:
        print("error: scan needs --mod >= 2", file=sys.stderr)
        return 2
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
