"""Command-line interface.

Subcommands: verify, chop, rank, endring-oracle, steinberg-margin,
suzuki-mult, run-manifest, selftest.  Exit codes: 0 success, 1 expectation
mismatch or inconclusive verdict, 2 usage or parse error (including size
refusals).  All randomized work is seeded; identical invocations produce
identical outputs.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog as catalog_mod
from . import manifest as manifest_mod
from . import modrep, permgrp, pimverify
from .prng import XorShift


def _common_flags(sub):
    sub.add_argument("--seed", type=int, default=1, metavar="U64",
                     help="run seed (default 1)")
    sub.add_argument("--json", metavar="PATH",
                     help="also write the result as JSON to this path")
    sub.add_argument("--parallel", type=int, default=1, metavar="N",
                     help="worker count for batch runs (default 1)")
    sub.add_argument("--cache-dir", metavar="PATH",
                     help="report cache directory (no caching when absent)")
    sub.add_argument("--max-dim", type=int, default=pimverify.DEFAULT_MAX_DIM,
                     metavar="N",
                     help="hard refusal above this coset count (default %d)"
                     % pimverify.DEFAULT_MAX_DIM)


def _pair_flags(sub, with_prime=True):
    sub.add_argument("--catalog", metavar="PATH",
                     help="catalog file (default: the shipped catalog)")
    sub.add_argument("--group", required=True)
    sub.add_argument("--subgroup", required=True)
    if with_prime:
        sub.add_argument("--prime", type=int, required=True)


def _check_common(args):
    if not 0 <= args.seed < 2**64:
        raise pimverify.VerifyError("seed must fit in 64 bits")
    if args.parallel < 1:
        raise pimverify.VerifyError("--parallel must be at least 1")
    if args.max_dim < 1:
        raise pimverify.VerifyError("--max-dim must be positive")


def _write_json(args, payload):
    if args.json:
        data = payload if isinstance(payload, bytes) else (
            json.dumps(payload, sort_keys=True, indent=2) + "\n"
        ).encode()
        with open(args.json, "wb") as fh:
            fh.write(data)


def _load_pair(args):
    cat = catalog_mod.load_catalog(args.catalog, seed=args.seed)
    return cat.resolve(args.group, args.subgroup)


def cmd_verify(args):
    group, sub = _load_pair(args)
    report = pimverify.verify_ipp(
        group.genset, sub.genset, args.prime,
        seed=args.seed, allow_shortcut=args.shortcut, max_dim=args.max_dim,
        group_name=group.name, subgroup_name=sub.name,
    )
    _write_json(args, report.json_bytes())
    if report.inconclusive:
        print("%s / %s at p=%d: inconclusive (%s)"
              % (group.name, sub.name, args.prime, report.reason))
        return 1
    if report.holds:
        print("%s / %s at p=%d: holds, dim Phi_1 = %d  [%s path, %d ms]"
              % (group.name, sub.name, args.prime, report.dim_phi1,
                 report.path, report.wall_time_ms))
    else:
        why = " (%s)" % report.reason if report.reason else ""
        print("%s / %s at p=%d: does not hold%s  [%s path, %d ms]"
              % (group.name, sub.name, args.prime, why,
                 report.path, report.wall_time_ms))
    return 0


def cmd_chop(args):
    group, sub = _load_pair(args)
    report = pimverify.verify_ipp(
        group.genset, sub.genset, args.prime,
        seed=args.seed, allow_shortcut=False, max_dim=args.max_dim,
        group_name=group.name, subgroup_name=sub.name,
    )
    if report.inconclusive:
        print("chop inconclusive (%s)" % report.reason)
        return 1
    print("k[%s/%s] over GF(%d): dim %d, %d distinct composition factors"
          % (group.name, sub.name, args.prime, report.index,
             len(report.factors)))
    print("%6s %6s %8s %8s" % ("dim", "mult", "trivial", "H-fixed"))
    for f in report.factors:
        print("%6d %6d %8s %8d"
              % (f["dim"], f["multiplicity"],
                 "yes" if f["is_trivial"] else "no", f["h_fixed_dim"]))
    _write_json(args, {"module_dim": report.index, "factors": report.factors})
    return 0


def cmd_rank(args):
    group, sub = _load_pair(args)
    act = permgrp.coset_action(group.genset, sub.bsgs, max_index=args.max_dim)
    rank = permgrp.permutation_rank(act, list(sub.genset.gens))
    print(rank)
    _write_json(args, {"group": group.name, "subgroup": sub.name, "rank": rank})
    return 0


def cmd_endring_oracle(args):
    group, sub = _load_pair(args)
    act = permgrp.coset_action(group.genset, sub.bsgs, max_index=args.max_dim)
    rank, local = pimverify.end_ring_local_oracle(act, sub.genset, args.prime)
    print("endomorphism ring of k[%s/%s] over GF(%d): rank %d, %s"
          % (group.name, sub.name, args.prime, rank,
             "local" if local else "not local"))
    _write_json(args, {"rank": rank, "local": local})
    return 0


def cmd_steinberg_margin(args):
    series = args.series
    if args.n is not None:
        n = args.n
    elif series in pimverify._STEINBERG_FIXED_RANK:
        n = pimverify._STEINBERG_FIXED_RANK[series]
    else:
        raise pimverify.VerifyError("--n is required for series %r" % series)
    spec = pimverify.SteinbergSpec(series, n, args.q)
    guaranteed, lower = pimverify.steinberg_margin(spec, args.h_order)
    print("series %s, q=%d, |H|=%d: guaranteed_positive %s, lower bound %s"
          % (series, args.q, args.h_order, guaranteed, lower))
    _write_json(args, {
        "series": series, "n": n, "q": args.q, "h_order": args.h_order,
        "guaranteed_positive": guaranteed, "lower_bound": str(lower),
    })
    return 0


def cmd_suzuki_mult(args):
    value = pimverify.suzuki_multiplicity(args.q2)
    print(value)
    _write_json(args, {"q2": args.q2, "multiplicity": value})
    return 0


def cmd_run_manifest(args):
    cat = catalog_mod.load_catalog(args.catalog, seed=args.seed)
    entries = manifest_mod.load_manifest(args.manifest)
    code, results = manifest_mod.run_manifest(
        entries, cat,
        run_seed=args.seed,
        parallelism=args.parallel,
        out_dir=args.out_dir,
        cache_dir=args.cache_dir,
        max_dim=args.max_dim,
    )
    for line in manifest_mod.summary_lines(results):
        print(line)
    if args.json:
        _write_json(args, {
            "exit_code": code,
            "results": [
                {"id": r.entry.entry_id, "status": r.status,
                 "got_dim": r.got_dim, "path": r.path, "detail": r.detail}
                for r in results
            ],
        })
    return code


def _selftest_checks():
    a5 = permgrp.GenSet.from_cycles(5, ["(1 2 3 4 5)", "(1 2 3)"], "A5")
    a4 = permgrp.GenSet.from_cycles(5, ["(1 2 3)", "(1 2)(3 4)"], "A4")
    d5 = permgrp.GenSet.from_cycles(5, ["(1 2 3 4 5)", "(2 5)(3 4)"], "D5")
    c5 = permgrp.GenSet.from_cycles(5, ["(1 2 3 4 5)"], "C5")

    def check_a5_a4():
        full = pimverify.verify_ipp(a5, a4, 5)
        fast = pimverify.verify_ipp(a5, a4, 5, allow_shortcut=True)
        return (full.holds and full.dim_phi1 == 5
                and fast.holds and fast.path == "shortcut")

    def check_a5_d5():
        r = pimverify.verify_ipp(a5, d5, 3)
        return r.holds and r.dim_phi1 == 6

    def check_a5_c5():
        r = pimverify.verify_ipp(a5, c5, 2)
        if not (r.holds and r.dim_phi1 == 12):
            return False
        rank, local = pimverify.end_ring_local_oracle(r.action, c5, 2)
        return local and rank == r.rank

    def check_negative():
        return pimverify.verify_ipp(a5, c5, 3).holds is False

    def check_product():
        return pimverify.product_property_check(a5, d5, 3, a5, d5)

    def check_arithmetic():
        spec = pimverify.SteinbergSpec("E8", 8, 2)
        guaranteed, _ = pimverify.steinberg_margin(spec, 72057594037927936)
        return guaranteed and pimverify.suzuki_multiplicity(8) == 4

    def check_prng():
        return XorShift(1, "pimcheck").next_u64() == 3722996746676882093

    return [
        ("2-transitive A5/A4 at p=5", check_a5_a4),
        ("A5/D5 at p=3 gives dim 6", check_a5_d5),
        ("A5/C5 at p=2 gives dim 12, ring local", check_a5_c5),
        ("A5/C5 at p=3 does not hold", check_negative),
        ("product identity squares dims", check_product),
        ("Steinberg/Suzuki arithmetic", check_arithmetic),
        ("seeded PRNG stream is pinned", check_prng),
    ]


def cmd_selftest(args):
    failures = 0
    for name, fn in _selftest_checks():
        try:
            ok = fn()
        except Exception as exc:  # noqa: BLE001 - selftest reports, never raises
            ok = False
            name = "%s (%s: %s)" % (name, type(exc).__name__, exc)
        print("%s %s" % ("PASS" if ok else "FAIL", name))
        failures += 0 if ok else 1
    return 1 if failures else 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="pimcheck",
        description="decide whether k[G/H] is the projective cover of the "
                    "trivial GF(p) module, against a validated group catalog",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    s = subs.add_parser("verify", help="verdict for one (group, subgroup, prime)")
    _pair_flags(s)
    s.add_argument("--shortcut", action="store_true",
                   help="allow the rank-2 shortcut to settle the verdict")
    _common_flags(s)
    s.set_defaults(func=cmd_verify)

    s = subs.add_parser("chop", help="composition factors of the induced module")
    _pair_flags(s)
    _common_flags(s)
    s.set_defaults(func=cmd_chop)

    s = subs.add_parser("rank", help="permutation rank of the coset action")
    _pair_flags(s, with_prime=False)
    _common_flags(s)
    s.set_defaults(func=cmd_rank)

    s = subs.add_parser("endring-oracle",
                        help="brute-force endomorphism-ring locality check")
    _pair_flags(s)
    _common_flags(s)
    s.set_defaults(func=cmd_endring_oracle)

    s = subs.add_parser("steinberg-margin",
                        help="exact Steinberg multiplicity lower bound")
    s.add_argument("--series", required=True,
                   choices=["A", "B", "C", "D", "G2", "3D4", "F4",
                            "E6", "2E6", "E7", "E8"])
    s.add_argument("--n", type=int, help="rank (classical series only)")
    s.add_argument("--q", type=int, required=True)
    s.add_argument("--h-order", type=int, required=True, dest="h_order")
    _common_flags(s)
    s.set_defaults(func=cmd_steinberg_margin)

    s = subs.add_parser("suzuki-mult",
                        help="exact trivial-character multiplicity for Sz(q)")
    s.add_argument("--q2", type=int, required=True,
                   help="q^2, an odd power of 2")
    _common_flags(s)
    s.set_defaults(func=cmd_suzuki_mult)

    s = subs.add_parser("run-manifest", help="run an expectation manifest")
    s.add_argument("--catalog", metavar="PATH",
                   help="catalog file (default: the shipped catalog)")
    s.add_argument("--manifest", metavar="PATH",
                   help="manifest file (default: the shipped manifest)")
    s.add_argument("--out-dir", default="pimcheck-reports", metavar="PATH",
                   help="directory for per-entry reports (default %(default)s)")
    _common_flags(s)
    s.set_defaults(func=cmd_run_manifest)

    s = subs.add_parser("selftest", help="fast built-in verification battery")
    _common_flags(s)
    s.set_defaults(func=cmd_selftest)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        _check_common(args)
        return args.func(args)
    except (catalog_mod.CatalogError, manifest_mod.ManifestError,
            permgrp.PermError, modrep.ModuleError,
            pimverify.VerifyError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
