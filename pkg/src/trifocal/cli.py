"""Command-line front end.

Subcommands: check, from-cameras, discover, hilbert, nzd, classify,
catalog.  Every command is deterministic given (--prime, --seed); JSON
reports embed the configuration and a schema tag.  Exit codes: 0 success
(for `check`: the tensor is trifocal), 1 negative verdict, 2 bad input or
an exceeded degree cap.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import ideal, orbits, rep
from .cameras import (DegenerateConfigurationError, trifocal_from_cameras,
                      triple_from_json)
from .ideal import (DegreeCapError, discover, graded_nonzerodivisor_check,
                    hilbert_quotient)
from .poly import f_determinant, parse_poly, witness_g
from .scalars import DEFAULT_PRIME, is_prime
from .tensor import tensor_from_json, tensor_to_json

SCHEMA = "trifocal-report/1"


class RunConfig:
    def __init__(self, prime=DEFAULT_PRIME, seed=2024, degree_cap=6, oversample=2):
        if not is_prime(prime):
            raise ValueError("--prime must be prime, got %d" % prime)
        if degree_cap > ideal.HARD_DEGREE_CAP:
            raise ValueError("--degree-cap is limited to %d" % ideal.HARD_DEGREE_CAP)
        if oversample < 1:
            raise ValueError("--oversample must be at least 1")
        self.prime = prime
        self.seed = seed
        self.degree_cap = degree_cap
        self.oversample = oversample

    def to_dict(self):
        return {"prime": self.prime, "seed": self.seed,
                "degree_cap": self.degree_cap, "oversample": self.oversample}


def _config(args) -> RunConfig:
    return RunConfig(prime=args.prime, seed=args.seed,
                     degree_cap=args.degree_cap, oversample=args.oversample)


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _read_file(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as exc:
        raise ValueError("cannot read %s: %s" % (path, exc)) from exc


def cmd_check(args) -> int:
    cfg = _config(args)
    t = tensor_from_json(_read_file(args.tensor))
    verdict, reason = orbits.is_trifocal(t, permutation_tolerant=args.permutation_tolerant,
                                         randomize=args.randomize, seed=cfg.seed)
    payload = {"schema": SCHEMA, "config": cfg.to_dict(),
               "is_trifocal": verdict, "reason": reason}
    _emit(args, payload, ["trifocal: %s" % verdict, "reason: %s" % reason])
    return 0 if verdict else 1


def cmd_from_cameras(args) -> int:
    ct = triple_from_json(_read_file(args.cameras))
    t = trifocal_from_cameras(ct)
    print(tensor_to_json(t))
    return 0


def cmd_classify(args) -> int:
    cfg = _config(args)
    t = tensor_from_json(_read_file(args.tensor))
    modules = None
    if args.with_modules:
        disc = discover(min(6, cfg.degree_cap), orbits.trifocal_normal_form(),
                        seed=cfg.seed, p=cfg.prime, oversample=cfg.oversample)
        modules = disc.modules()
    sig = orbits.signature(t, modules=modules)
    verdict, reason = orbits.is_trifocal(t, permutation_tolerant=args.permutation_tolerant)
    component = orbits.classify_component(t)
    payload = {"schema": SCHEMA, "config": cfg.to_dict(),
               "signature": sig.to_dict(), "component": component,
               "is_trifocal": verdict, "reason": reason}
    _emit(args, payload, [
        "frank: %r" % (sig.frank,),
        "prank: %r" % (sig.prank,),
        "cubic vanishing per axis: %r" % (sig.m3_axis_vanishing,),
        "component: %s" % component,
        "trifocal: %s (%s)" % (verdict, reason),
    ])
    return 0


def cmd_discover(args) -> int:
    cfg = _config(args)
    if args.degree > cfg.degree_cap:
        raise DegreeCapError("--degree %d exceeds --degree-cap %d" % (args.degree, cfg.degree_cap))
    progress = (lambda msg: print(msg, file=sys.stderr)) if args.progress else None
    disc = discover(args.degree, orbits.trifocal_normal_form(), seed=cfg.seed,
                    p=cfg.prime, oversample=cfg.oversample, progress=progress)
    inventory = []
    label_table = []
    for d in sorted(disc.scans):
        scan = disc.scans[d]
        for mod in scan.modules:
            inventory.append({"degree": d, "label": [list(p) for p in mod.label],
                              "dimension": mod.dim})
        for lab, kron, hw_dim, vanishing, new in scan.rows:
            label_table.append({"degree": d, "label": [list(p) for p in lab],
                                "kronecker": kron, "hw_dim": hw_dim,
                                "vanishing": vanishing, "new": new})
    payload = {"schema": SCHEMA, "config": cfg.to_dict(),
               "new_generators_by_degree": {str(d): n for d, n in disc.counts().items()},
               "modules": inventory,
               "labels": label_table}
    lines = ["new generators by degree: %s" % disc.counts()]
    for m in inventory:
        lines.append("  degree %d  label %s  dim %d" % (m["degree"], m["label"], m["dimension"]))
    lines.append("labels with vanishing highest weight vectors:")
    for row in label_table:
        if row["vanishing"]:
            lines.append("  degree %d  label %s  kronecker %d  hw %d  vanishing %d  new %d"
                         % (row["degree"], row["label"], row["kronecker"],
                            row["hw_dim"], row["vanishing"], row["new"]))
    _emit(args, payload, lines)
    return 0


def cmd_hilbert(args) -> int:
    cfg = _config(args)
    progress = (lambda msg: print(msg, file=sys.stderr)) if args.progress else None
    disc = discover(min(cfg.degree_cap, 6), orbits.trifocal_normal_form(),
                    seed=cfg.seed, p=cfg.prime, oversample=cfg.oversample)
    table = {}
    for d in range(1, cfg.degree_cap + 1):
        table[d] = hilbert_quotient(disc.gens, d, p=cfg.prime, cap=cfg.degree_cap,
                                    progress=progress)
    payload = {"schema": SCHEMA, "config": cfg.to_dict(),
               "hilbert_quotient": {str(d): v for d, v in table.items()}}
    _emit(args, payload, ["H(%d) = %d" % (d, v) for d, v in table.items()])
    return 0


def cmd_nzd(args) -> int:
    cfg = _config(args)
    if args.witness == "f":
        w = f_determinant()
    elif args.witness == "g":
        w = witness_g()
    else:
        w = parse_poly(_read_file(args.witness))
    progress = (lambda msg: print(msg, file=sys.stderr)) if args.progress else None
    disc = discover(min(cfg.degree_cap, 6), orbits.trifocal_normal_form(),
                    seed=cfg.seed, p=cfg.prime, oversample=cfg.oversample)
    report = graded_nonzerodivisor_check(disc.gens, w, cap=cfg.degree_cap,
                                         p=cfg.prime, progress=progress)
    payload = {"schema": SCHEMA, "config": cfg.to_dict(),
               "witness_degree": report.witness_degree,
               "non_zero_divisor": bool(report),
               "failing_degree": report.failing_degree,
               "table": {str(d): {"expected": e, "actual": a}
                          for d, (e, a) in report.table.items()}}
    lines = ["witness degree: %d" % report.witness_degree]
    for d, (e, a) in report.table.items():
        lines.append("  degree %d: expected %d actual %d %s"
                     % (d, e, a, "ok" if e == a else "MISMATCH"))
    lines.append("non-zero-divisor (up to cap): %s" % bool(report))
    _emit(args, payload, lines)
    return 0 if report else 1


def cmd_catalog(args) -> int:
    cat = orbits.catalog()
    if args.name is None:
        for name, nf in sorted(cat.items()):
            print("%-16s %s" % (name, nf.provenance))
        return 0
    if args.name not in cat:
        raise ValueError("unknown normal form %r (try `catalog` with no name)" % args.name)
    print(tensor_to_json(cat[args.name].tensor))
    return 0


def _add_common(sp):
    sp.add_argument("--prime", type=int, default=DEFAULT_PRIME)
    sp.add_argument("--seed", type=int, default=2024)
    sp.add_argument("--degree-cap", type=int, default=6, dest="degree_cap")
    sp.add_argument("--oversample", type=int, default=2)
    sp.add_argument("--json", action="store_true")
    sp.add_argument("--progress", action="store_true")


def build_parser():
    ap = argparse.ArgumentParser(prog="trifocal",
                                 description="exact computations with trifocal tensors")
    sub = ap.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("check", help="rank-based trifocal membership test")
    sp.add_argument("tensor")
    sp.add_argument("--permutation-tolerant", action="store_true", dest="permutation_tolerant")
    sp.add_argument("--randomize", action="store_true")
    _add_common(sp)
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("from-cameras", help="tensor from a camera-triple JSON file")
    sp.add_argument("cameras")
    _add_common(sp)
    sp.set_defaults(func=cmd_from_cameras)

    sp = sub.add_parser("classify", help="signature and component of a tensor")
    sp.add_argument("tensor")
    sp.add_argument("--permutation-tolerant", action="store_true", dest="permutation_tolerant")
    sp.add_argument("--with-modules", action="store_true", dest="with_modules",
                    help="also evaluate the degree-5/6 generator modules (slow)")
    _add_common(sp)
    sp.set_defaults(func=cmd_classify)

    sp = sub.add_parser("discover", help="minimal-generator search by degree")
    sp.add_argument("--degree", type=int, required=True)
    _add_common(sp)
    sp.set_defaults(func=cmd_discover)

    sp = sub.add_parser("hilbert", help="quotient Hilbert function table")
    _add_common(sp)
    sp.set_defaults(func=cmd_hilbert)

    sp = sub.add_parser("nzd", help="graded non-zero-divisor check for a witness")
    sp.add_argument("--witness", default="f",
                    help="'f', 'g', or a path to a polynomial text file")
    _add_common(sp)
    sp.set_defaults(func=cmd_nzd)

    sp = sub.add_parser("catalog", help="list or emit named normal forms")
    sp.add_argument("name", nargs="?")
    _add_common(sp)
    sp.set_defaults(func=cmd_catalog)

    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, DegreeCapError, DegenerateConfigurationError,
            json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
