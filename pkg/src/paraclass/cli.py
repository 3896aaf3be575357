"""paraclass command line.  Exit status: 0 all PASS, 1 any FAIL, 2 usage error."""
from __future__ import annotations

import argparse
import sys
import time

from .cyclotomic import cyclo_res_nilpotent
from .metabelian.groups import OutOfScope, UnknownPreset, make_group
from .metabelian.lcs import hilbert_coeffs, is_finitely_presentable, is_residually_nilpotent, lcs_quotient, lcs_routes_agree
from .para_class import classify_para
from .report import EXAMPLES, ResultCache, dumps, quad_report, render_text, run_scan, verify_example

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive(lo: int):
    def parse(s: str) -> int:
        try:
            v = int(s)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{s!r} is not an integer") from None
        if v < lo:
            raise argparse.ArgumentTypeError(f"must be >= {lo}")
        return v

    return parse


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="paraclass", description="Para-equivalence classes of split metabelian groups.")
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("scan", help="real quadratic fields d <= N: units, Laurent verdicts, class groups")
    s.add_argument("--max-d", type=_positive(2), required=True)
    s.add_argument("--jobs", type=_positive(1), default=1)
    s.add_argument("--out", help="write the JSON report here instead of stdout")
    s.add_argument("--no-cache", action="store_true")

    q = sub.add_parser("quad", help="one real quadratic field")
    q.add_argument("--d", type=_positive(2), required=True)
    q.add_argument("--json", action="store_true")

    c = sub.add_parser("cyclo", help="residual nilpotence of T ⋉ Z[zeta_n]")
    c.add_argument("--n", type=_positive(2), required=True)
    c.add_argument("--json", action="store_true")

    g = sub.add_parser("group", help="operations on a preset group")
    g.add_argument("--preset", required=True, help="lamplighter, wreath_zz, bs12, z_inv_n:N, quad:D, cyclo:N, unipotent2, zc2")
    g.add_argument("--op", required=True, choices=["lcs", "hilbert", "fp", "rn", "classify"])
    g.add_argument("--depth", type=_positive(1), default=6)
    g.add_argument("--json", action="store_true")

    v = sub.add_parser("verify", help="replay a named worked example")
    v.add_argument("--example", required=True, choices=EXAMPLES)
    v.add_argument("--json", action="store_true")
    return p


def _emit(payload: dict, as_json: bool, out=None):
    text = dumps(payload) if as_json else render_text(payload)
    if out:
        with open(out, "w") as fh:
            fh.write(dumps(payload) + "\n")
    else:
        print(text)


def _cmd_scan(args) -> int:
    cache = None if args.no_cache else ResultCache()
    t0 = time.perf_counter()
    rep = run_scan(args.max_d, args.jobs, cache)
    _emit(rep, True, args.out)
    lau = rep["diff"]["laurent"]
    print(
        f"scan d <= {args.max_d}: {len(rep['rows'])} squarefree d, Laurent {lau['computed']}, "
        f"{lau['agreeing_published_entries']}/{lau['published_count']} published entries agree, "
        f"{time.perf_counter() - t0:.2f} s",
        file=sys.stderr,
    )
    return EXIT_FAIL if rep["failures"] else EXIT_PASS


def _cmd_quad(args) -> int:
    cache = ResultCache()
    rep = cache.get("quad", args.d)
    if rep is None:
        try:
            rep = quad_report(args.d)
        except ValueError as e:
            raise UsageError(str(e)) from None
        if not rep.get("error"):
            cache.put("quad", args.d, rep)
    _emit(rep, args.json)
    return EXIT_FAIL if rep.get("error") else EXIT_PASS


def _cmd_cyclo(args) -> int:
    rep = cyclo_res_nilpotent(args.n).to_dict()
    _emit(rep, args.json)
    return EXIT_PASS if rep["agrees_with_prime_power_test"] else EXIT_FAIL


def _cmd_group(args) -> int:
    try:
        G = make_group(args.preset)
    except UnknownPreset as e:
        raise UsageError(str(e)) from None
    name = args.preset
    ok = True
    if args.op == "lcs":
        layers = []
        for n in range(1, args.depth + 1):
            agree = lcs_routes_agree(G, n)
            ok = ok and agree
            layers.append({"n": n, "quotient": lcs_quotient(G, n).to_dict(), "routes_agree": agree})
        rep = {"subject": name, "op": "lcs", "layers": layers}
    elif args.op == "hilbert":
        rep = {"subject": name, "op": "hilbert", **hilbert_coeffs(G, args.depth).to_dict()}
    elif args.op in ("fp", "rn"):
        fn = is_finitely_presentable if args.op == "fp" else is_residually_nilpotent
        rep = {"subject": name, "op": args.op, **fn(G).to_dict()}
    else:
        rep = classify_para(G).to_dict()
    _emit(rep, args.json)
    return EXIT_PASS if ok else EXIT_FAIL


def _cmd_verify(args) -> int:
    res = verify_example(args.example)
    if args.json:
        print(dumps(res.to_dict()))
    else:
        print("\n".join(res.transcript))
        print(f"{res.name}: {'PASS' if res.passed else 'FAIL'}")
    return EXIT_PASS if res.passed else EXIT_FAIL


COMMANDS = {"scan": _cmd_scan, "quad": _cmd_quad, "cyclo": _cmd_cyclo, "group": _cmd_group, "verify": _cmd_verify}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    try:
        return COMMANDS[args.cmd](args)
    except UsageError as e:
        print(f"paraclass: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OutOfScope as e:
        print(f"paraclass: out of scope: {e}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
