"""Command line entry point: `classtower <command> ...`."""

import argparse
import json
import sys

from . import classify as cl
from .artin import artin_pattern, format_ati, parse_ati2
from .families import (DescriptorError, GroupDescriptor, Unconstructible,
                       UnrecognizedIdentifier, IdentifierSyntaxError, build,
                       resolve_identifier)
from .fp import read_fp
from .ingest import emit_tree_dot, parse_records, report, report_rows
from .invariants import parse_list
from .pc import series_and_sizes, write_presentation
from .pquotient import p_quotient, rank_report
from .sigma import DEFAULT_MAX_LO, CapacityError, schur_status


class UsageError(Exception):
    pass


def _emit(args, payload, text):
    if args.format == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _add_group_args(p):
    p.add_argument("--id", help="relative identifier such as F[-#1;2] (needs --tree)")
    p.add_argument("--tree", choices=("Q", "U"))
    p.add_argument("--kind", choices=("mainline", "metab", "schur"))
    p.add_argument("--class", dest="c", type=int)
    p.add_argument("--coclass", dest="r", type=int, default=2)
    p.add_argument("--variant")
    p.add_argument("--ell", type=int)


def _descriptor(args):
    if args.id:
        if not args.tree:
            raise UsageError("--id needs --tree")
        d = resolve_identifier(args.id, args.tree)
        if isinstance(d, Unconstructible):
            raise UsageError(f"{args.id} names {d.label()}, which has no presentation here")
        return d
    if not (args.tree and args.kind and args.c):
        raise UsageError("give --id, or --tree, --kind and --class")
    return GroupDescriptor(args.tree, args.kind, args.c, r=args.r, variant=args.variant, ell=args.ell)


def _info(G):
    s = series_and_sizes(G)
    rr = rank_report(G)
    return {
        "log_order": s["log_order"], "class": s["class"], "coclass": s["coclass"],
        "derived_length": s["derived_length"],
        "lower_central_sizes": [x.log_order for x in s["lower_central_series"]],
        "d1": rr.d1, "d2": rr.d2, "nu": rr.nu,
    }


def cmd_group(args):
    d = _descriptor(args)
    G = build(d)
    if args.action == "build":
        text = write_presentation(G)
        _emit(args, {"label": d.label(), "presentation": text}, text.rstrip("\n"))
        return 0
    info = {"label": d.label(), **_info(G)}
    _emit(args, info, "\n".join(f"{k}: {v}" for k, v in info.items()))
    return 0


def cmd_pq(args):
    with open(args.file) as fh:
        F = read_fp(fh.read())
    G = p_quotient(F, args.prime, args.class_bound)
    text = write_presentation(G)
    _emit(args, {"presentation": text, "log_order": G.ngens}, text.rstrip("\n"))
    return 0


def cmd_pattern(args):
    G = build(_descriptor(args))
    ap = artin_pattern(G, second_order=not args.first_order)
    out = {"tkt": str(ap.tkt), "ati": ap.ati_string(), "alpha0": str(ap.alpha0)}
    if ap.ati2 is not None:
        out["ati2"] = ap.ati2_string()
    _emit(args, out, "\n".join(f"{k}: {v}" for k, v in out.items()))
    return 0


def cmd_sigma(args):
    d = _descriptor(args)
    rep = schur_status(build(d), check_h2=args.check_h2, max_lo=args.max_lo)
    rep = {"label": d.label(), **rep}
    _emit(args, rep, "\n".join(f"{k}: {v}" for k, v in rep.items()))
    return 0


def cmd_classify(args):
    ati2 = args.ati2
    if args.ati2_file:
        with open(args.ati2_file) as fh:
            ati2 = fh.read()
    entries = parse_ati2(ati2) if ati2 else None
    v = cl.classify_length(args.tkt, args.signature, entries)
    out = {"verdict": v.token, "reason": v.reason, "conjectural": v.conjectural}
    if args.ati:
        st = cl.detect_state(parse_list(args.ati), args.tkt)
        out["state"] = st.label
        out["tree"] = st.tree_hint or ""
    _emit(args, out, str(v))
    return 2 if v.token == "Unknown" else 0


def cmd_ingest(args):
    with open(args.file) as fh:
        records = parse_records(fh.read())
    if args.format == "json":
        print(json.dumps(report_rows(records, args.mode), indent=2, sort_keys=True))
    else:
        sys.stdout.write(report(records, args.mode))
    return 0


def cmd_tree_dot(args):
    sys.stdout.write(emit_tree_dot(args.tree, args.max_lo))
    return 0


def make_parser():
    ap = argparse.ArgumentParser(prog="classtower", description=__doc__)
    ap.add_argument("--format", choices=("text", "json"), default="text")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("group", help="build a family group or report its invariants")
    g.add_argument("action", choices=("build", "info"))
    _add_group_args(g)
    g.set_defaults(func=cmd_group)

    q = sub.add_parser("pq", help="p-quotient of a finitely presented group")
    q.add_argument("file")
    q.add_argument("--class-bound", type=int, default=10)
    q.add_argument("--prime", type=int, default=3)
    q.set_defaults(func=cmd_pq)

    p = sub.add_parser("pattern", help="TKT, ATI and ATI2 of a family group")
    _add_group_args(p)
    p.add_argument("--first-order", action="store_true", help="skip the second-order invariants")
    p.set_defaults(func=cmd_pattern)

    s = sub.add_parser("sigma", help="sigma-automorphism search and Schur status")
    _add_group_args(s)
    s.add_argument("--check-h2", action="store_true")
    s.add_argument("--max-lo", type=int, default=DEFAULT_MAX_LO)
    s.set_defaults(func=cmd_sigma)

    c = sub.add_parser("classify", help="tower length from TKT, signature and ATI2 (exit 2 on Unknown)")
    c.add_argument("--tkt", required=True)
    c.add_argument("--signature", required=True, choices=("real", "imaginary"))
    c.add_argument("--ati", help="first-order invariants, e.g. [32,21,21,21]")
    c.add_argument("--ati2")
    c.add_argument("--ati2-file")
    c.set_defaults(func=cmd_classify)

    i = sub.add_parser("ingest", help="screen, classify or summarize field records")
    i.add_argument("file")
    i.add_argument("--mode", choices=("screen", "classify", "stats"), default="classify")
    i.set_defaults(func=cmd_ingest)

    t = sub.add_parser("tree-dot", help="descendant tree in DOT")
    t.add_argument("--tree", choices=("Q", "U"), required=True)
    t.add_argument("--max-lo", type=int, default=14)
    t.set_defaults(func=cmd_tree_dot)

    # accept --format after the subcommand too
    for sp in (g, q, p, s, c, i, t):
        sp.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    return ap


def main(argv=None):
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DescriptorError, UnrecognizedIdentifier, IdentifierSyntaxError,
            CapacityError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
