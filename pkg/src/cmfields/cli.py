"""Command-line surface: cm, reflex-verify, and st pipelines.

Machine-readable records (one JSON object per line, sorted keys) go to
stdout; the human summary goes to stderr. Output is byte-identical for
identical inputs, seed, and version. Exit codes: 0 success, 1 identity or
verification failure, 2 usage/parse error, 3 closure too large.
"""

import argparse
import json
import os
import sys

from . import __version__
from .closure import splitting_data
from .cmreflex import (
    CMField,
    cm_check,
    enumerate_cm_types,
    reflex_field,
    verify_reflex_identities,
)
from .errors import ClosureTooLarge, Supersingular
from .intutil import primes_up_to
from .stverify import (
    DEFAULT_CORPUS,
    frobenius_element,
    load_curve,
    st_check_ideal,
    st_check_valuations,
)
from .wire import dumps, field_to_wire, parse_field

DEFAULT_BUDGET = 10**6


def _config_header(args, command):
    return {
        "record": "config",
        "command": command,
        "seed": args.seed,
        "bits": args.bits,
        "budget": args.budget,
        "format": args.format,
        "version": __version__,
    }


def _emit(args, record, human=None):
    if args.format == "records":
        print(dumps(record))
    if human:
        print(human, file=sys.stderr)


def _load_json(path):
    try:
        with open(path) as handle:
            return json.load(handle)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read {path}: {exc}", file=sys.stderr)
        raise SystemExit(2)


def cmd_cm(args):
    record = _load_json(args.field_file)
    try:
        field = parse_field(record)
    except (KeyError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    _emit(args, _config_header(args, "cm"))
    try:
        result = cm_check(field)
        if not isinstance(result, CMField):
            _emit(
                args,
                {"record": "cm", "field": field_to_wire(field), "cm": False,
                 "reason": result.reason},
                human=f"not CM: {result.reason}",
            )
            return 0
        types = enumerate_cm_types(result)
        out = {
            "record": "cm",
            "field": field_to_wire(field),
            "cm": True,
            "real_subfield": field_to_wire(result.real_subfield),
            "n_types": len(types),
        }
        _emit(args, out, human=f"CM field with {len(types)} CM-types")
        for idx, cmt in enumerate(types):
            rd = reflex_field(cmt)
            _emit(
                args,
                {
                    "record": "cm_type",
                    "index": idx,
                    "phi": cmt.indices(),
                    "reflex_field": field_to_wire(rd.reflex_field),
                    "reflex_type": rd.reflex_type.indices(),
                    "closure_degree": rd.closure.degree,
                },
            )
    except ClosureTooLarge as exc:
        print(f"closure too large: {exc}", file=sys.stderr)
        return 3
    return 0


def cmd_reflex_verify(args):
    record = _load_json(args.field_file)
    try:
        field = parse_field(record)
        result = cm_check(field)
        if not isinstance(result, CMField):
            print(f"not a CM field: {result.reason}", file=sys.stderr)
            return 2
        types = enumerate_cm_types(result)
        if not 0 <= args.type_index < len(types):
            print(f"type index out of range (0..{len(types) - 1})", file=sys.stderr)
            return 2
        cmt = types[args.type_index]
    except (KeyError, ValueError) as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    _emit(args, _config_header(args, "reflex-verify"))
    try:
        k = splitting_data(field).closure
        report = verify_reflex_identities(cmt, k, args.samples, args.seed)
    except ClosureTooLarge as exc:
        print(f"closure too large: {exc}", file=sys.stderr)
        return 3
    if args.inject_defect:
        report["identities"]["injected_defect"] = {
            "pass": 0, "fail": 1, "witness": "deliberate corruption (test mode)"
        }
        report["ok"] = False
    for name in sorted(report["identities"]):
        entry = report["identities"][name]
        rec = {"record": "identity", "name": name,
               "pass": entry["pass"], "fail": entry["fail"]}
        if entry.get("witness") is not None:
            rec["witness"] = str(entry["witness"])
        _emit(args, rec)
    _emit(
        args,
        {"record": "summary", "ok": report["ok"],
         "skipped_index_primes": report["skipped_index_primes"],
         "prime_count": report["prime_count"]},
        human=f"identity suite: {'PASS' if report['ok'] else 'FAIL'}",
    )
    return 0 if report["ok"] else 1


def cmd_st(args):
    if args.p_max < args.p_min:
        print("p-max must be >= p-min", file=sys.stderr)
        return 2
    if args.corpus_file == "default":
        corpus = list(DEFAULT_CORPUS)
    else:
        corpus = _load_json(args.corpus_file)
    _emit(args, _config_header(args, "st"))
    curves = [load_curve(rec) for rec in corpus]
    all_ok = True
    rows = []
    for ci, curve in enumerate(curves):
        E = curve.cmfield.field
        disc = -16 * (4 * curve.a4**3 + 27 * curve.a6**2)
        for p in primes_up_to(args.p_max):
            if p < max(args.p_min, 5) or disc % p == 0:
                continue
            if p >= args.budget:
                continue
            row = {"record": "st", "curve": ci, "a4": curve.a4, "a6": curve.a6, "p": p}
            try:
                frob = frobenius_element(curve, p, seed=args.seed)
            except Supersingular:
                row.update({"status": "supersingular"})
                rows.append(row)
                continue
            ideal_ok = st_check_ideal(frob, frob.cmtype, E, frob.prime_above)
            val_rep = st_check_valuations(frob, frob.cmtype, E, frob.prime_above)
            row.update(
                {
                    "status": "ordinary",
                    "a_p": frob.trace,
                    "pi": [str(c) for c in frob.pi.coords],
                    "ideal_match": ideal_ok,
                    "valuation_match": val_rep["ok"],
                }
            )
            if not (ideal_ok and val_rep["ok"]):
                all_ok = False
            rows.append(row)
    for row in rows:
        _emit(args, row)
    ordinary = [r for r in rows if r["status"] == "ordinary"]
    _emit(
        args,
        {"record": "summary", "ok": all_ok, "ordinary_rows": len(ordinary),
         "skipped_rows": len(rows) - len(ordinary)},
        human=(
            f"st: {len(ordinary)} ordinary rows, "
            f"{len(rows) - len(ordinary)} skipped, {'PASS' if all_ok else 'FAIL'}"
        ),
    )
    return 0 if all_ok else 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cmfields",
        description="Exact CM-field calculus: reflex norms, lattice models, "
        "and Shimura-Taniyama verification",
    )
    parser.add_argument("--seed", type=int, default=42)
    parser.add_argument("--bits", type=int, default=64)
    parser.add_argument(
        "--budget",
        type=int,
        default=int(os.environ.get("CMREFLEX_BUDGET", DEFAULT_BUDGET)),
    )
    parser.add_argument("--format", choices=("records", "summary"), default="records")
    sub = parser.add_subparsers(dest="command", required=True)

    p_cm = sub.add_parser("cm", help="CM analysis of a number field")
    p_cm.add_argument("field_file")
    p_cm.set_defaults(func=cmd_cm)

    p_rv = sub.add_parser("reflex-verify", help="reflex-norm identity suite")
    p_rv.add_argument("field_file")
    p_rv.add_argument("--type-index", type=int, default=0)
    p_rv.add_argument("--samples", type=int, default=100)
    p_rv.add_argument("--inject-defect", action="store_true",
                      help="test mode: force one failing identity")
    p_rv.set_defaults(func=cmd_reflex_verify)

    p_st = sub.add_parser("st", help="Shimura-Taniyama verification sweep")
    p_st.add_argument("corpus_file", help="JSON corpus or 'default'")
    p_st.add_argument("p_min", type=int)
    p_st.add_argument("p_max", type=int)
    p_st.set_defaults(func=cmd_st)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
