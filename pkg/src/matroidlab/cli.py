"""Command line front end: batch subcommands over the library's file formats.

Every run prints one JSON report (or CSV where a table shape exists) built
from the same envelope: tool version, echoed config, seed.  Exit codes:
0 success, 2 bad input, 3 resource bound hit, 64 usage.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .core import (
    check_axioms,
    contract,
    delete,
    dual,
    enumerate_bases,
    enumerate_circuits,
)
from .cycles import (
    glue_all,
    mk_spectrum,
    nearly_finitary_verdict,
    no_glue,
    spectrum_search,
    verify_i3_violation,
)
from .errors import InputError, ResourceLimitError, StructuralMismatchError
from .families import contract_coloops, delete_edges, spectrum_scan
from .io import (
    dump_system,
    envelope,
    json_text,
    load_edit,
    load_family,
    load_gluing,
    load_matrix_family,
    load_nested_pair,
    load_system,
    read_json,
    spectrum_csv,
)
from .linear import nearly_thin_count
from .ops import (
    NestedPair,
    ch4_i3_witness,
    ch4_system,
    difference,
    smin_enumerate,
    spectrum,
    truncate_top,
    union,
    verify_difference_duality,
)
from .periodic import (
    bean_family,
    corridor_width,
    domination_witness,
    ends_of,
    ladder_family,
    ray_count,
)


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


# ---------------------------------------------------------------------------
# argument resolution


def _canned_family(text: str):
    if text == "bean":
        return bean_family()
    head, sep, tail = text.partition(":")
    if head == "ladder" and sep and tail.isdigit():
        return ladder_family(int(tail))
    return None


def _family_arg(text: str):
    fam = _canned_family(text)
    return fam if fam is not None else load_family(read_json(text))


def _pair_arg(text: str) -> NestedPair:
    head, sep, tail = text.partition(":")
    if head == "ch4" and sep and tail.isdigit():
        return ch4_system(int(tail))
    return load_nested_pair(read_json(text))


def _system_arg(text: str):
    head, sep, tail = text.partition(":")
    if head == "ch4" and sep and tail.isdigit():
        return ch4_system(int(tail)).inner
    return load_system(read_json(text))


def _glue_arg(text: str, family):
    if text == "all":
        return glue_all(family)
    if text == "none":
        return no_glue(family)
    glue = load_gluing(read_json(text))
    glue.validate_for(family)
    return glue


def _pair_from(args) -> NestedPair:
    if args.pair:
        if args.inner or args.outer:
            raise InputError("give either --pair or --inner/--outer, not both")
        return _pair_arg(args.pair)
    if args.inner and args.outer:
        return NestedPair(inner=_system_arg(args.inner), outer=_system_arg(args.outer))
    raise InputError("need --pair or both --inner and --outer")


def _label_mask(ground, text: str) -> int:
    mask = 0
    for label in filter(None, (part.strip() for part in text.split(","))):
        mask |= 1 << ground.index(label)
    return mask


def _mask_names(ground, masks):
    return [list(ground.names(s)) for s in masks]


def _vertex_arg(text: str):
    name, sep, window = text.partition(":")
    if not sep:
        return name
    if not window.isdigit():
        raise InputError(f"window index in {text!r} must be a natural number")
    return (name, int(window))


def _profile(args) -> tuple:
    if args.prefix < 0 or args.period < 1:
        raise InputError("profile bounds must be nonnegative prefix, positive period")
    return (args.prefix, args.period)


# ---------------------------------------------------------------------------
# subcommand handlers; each returns (json payload, csv text or None)


def cmd_axioms(args):
    report = check_axioms(_system_arg(args.system), args.axioms, args.cap)
    return report.to_dict(), None


def cmd_bases(args):
    sys_ = _system_arg(args.system)
    masks = enumerate_bases(sys_, args.cap)
    return {"count": len(masks), "bases": _mask_names(sys_.ground, masks)}, None


def cmd_circuits(args):
    sys_ = _system_arg(args.system)
    masks = enumerate_circuits(sys_, args.cap)
    return {"count": len(masks), "circuits": _mask_names(sys_.ground, masks)}, None


def cmd_dual(args):
    return dump_system(dual(_system_arg(args.system))), None


def cmd_minor(args):
    sys_ = _system_arg(args.system)
    if args.delete:
        sys_ = delete(sys_, _label_mask(sys_.ground, args.delete))
    if args.contract:
        sys_ = contract(sys_, _label_mask(sys_.ground, args.contract))
    return dump_system(sys_), None


def cmd_union(args):
    merged = union(_system_arg(args.left), _system_arg(args.right), args.cap)
    return dump_system(merged), None


def cmd_mk(args):
    if args.family and args.system:
        raise InputError("give either --system or --family, not both")
    if args.system:
        return dump_system(truncate_top(_system_arg(args.system), args.k, args.cap)), None
    if args.family:
        fam = _family_arg(args.family)
        report = mk_spectrum(fam, _glue_arg(args.glue, fam), args.k, _profile(args))
        return report.to_dict(), spectrum_csv(report)
    raise InputError("mk needs --system (finite truncation) or --family (glued system)")


def cmd_diff(args):
    outer = _system_arg(args.outer)
    inner = _system_arg(args.inner)
    if args.verify_duality:
        equal, witness = verify_difference_duality(outer, inner, args.cap)
        payload = {
            "equal": equal,
            "witness": list(outer.ground.names(witness)) if witness is not None else None,
        }
        return payload, None
    return dump_system(difference(outer, inner, args.cap)), None


def cmd_spectrum(args):
    if args.family:
        fam = _family_arg(args.family)
        report = spectrum_search(fam, _glue_arg(args.glue, fam), _profile(args))
    else:
        report = spectrum(_pair_from(args), args.cap)
    return report.to_dict(), spectrum_csv(report)


def cmd_smin(args):
    pair = _pair_from(args)
    masks = smin_enumerate(pair, args.cap)
    return {"count": len(masks), "sets": _mask_names(pair.ground, masks)}, None


def cmd_ch4(args):
    pair = ch4_system(args.r)
    report = spectrum(pair, args.cap)
    if args.r >= 2:
        raw = ch4_i3_witness(args.r)
        witness = {key: list(pair.ground.names(mask)) for key, mask in raw.items()}
    else:
        witness = None
    return {"spectrum": report.to_dict(), "i3_witness": witness}, spectrum_csv(report)


def cmd_rays(args):
    fam = _family_arg(args.family)
    widths = {
        label: corridor_width(fam, lanes) for label, lanes in ends_of(fam).items()
    }
    payload = {"rays": ray_count(fam), "corridor_widths": widths}
    if args.glue:
        verdict = nearly_finitary_verdict(fam, _glue_arg(args.glue, fam))
        payload["verdict"] = verdict.to_dict()
    return payload, None


def cmd_dominate(args):
    fam = _family_arg(args.family)
    depth = domination_witness(fam, _vertex_arg(args.vertex), args.k)
    return {"dominates": depth is not None, "depth": depth}, None


def cmd_bean(args):
    fam = bean_family()
    try:
        witness = verify_i3_violation(fam)
    except StructuralMismatchError as exc:
        return {"holds": False, "detail": str(exc)}, None
    witness.pop("raw", None)
    return {"holds": True, **witness}, None


def cmd_psi_spectrum(args):
    fam = _family_arg(args.family)
    report = spectrum_search(fam, _glue_arg(args.glue, fam), _profile(args))
    return report.to_dict(), spectrum_csv(report)


def cmd_thin(args):
    spec = load_matrix_family(read_json(args.matrix_family))
    count, rows = nearly_thin_count(spec, args.depth)
    return {"count": count, "growing_rows": list(rows)}, None


def _scan_entry(text: str, glue_text: str, profile: tuple):
    fam = _canned_family(text)
    if fam is not None:
        return (text, fam, _glue_arg(glue_text, fam))
    head, sep, tail = text.partition(":")
    if head == "ch4" and sep and tail.isdigit():
        return (text, ch4_system(int(tail)))
    obj = read_json(text)
    name = Path(text).stem
    if "repeat" in obj:
        fam = load_family(obj)
        return (name, fam, _glue_arg(glue_text, fam))
    if "base" in obj:
        fam, doomed, squeezed = load_edit(obj, base_dir=Path(text).parent)
        if doomed:
            fam = delete_edges(fam, doomed)
        if squeezed:
            view = contract_coloops(fam, _glue_arg(glue_text, fam), squeezed, profile)
            return (name, view)
        return (name, fam, _glue_arg(glue_text, fam))
    if "inner" in obj:
        return (name, load_nested_pair(obj))
    raise InputError(f"{text}: not a family, edit, or nested pair file")


def cmd_scan(args):
    profile = _profile(args)
    entries = [_scan_entry(t, args.glue, profile) for t in args.targets]
    rows = []
    table = ["name,values,gap"]
    for row in spectrum_scan(entries, profile):
        body = row["report"].to_dict()
        rows.append({"name": row["name"], "values": body["values"], "gap": row["gap"]})
        table.append(
            f'{row["name"]},{" ".join(str(v) for v in body["values"])},'
            f'{str(row["gap"]).lower()}'
        )
    return {"rows": rows}, "\n".join(table) + "\n"


HANDLERS = {
    "axioms": cmd_axioms,
    "bases": cmd_bases,
    "circuits": cmd_circuits,
    "dual": cmd_dual,
    "minor": cmd_minor,
    "union": cmd_union,
    "mk": cmd_mk,
    "diff": cmd_diff,
    "spectrum": cmd_spectrum,
    "smin": cmd_smin,
    "ch4": cmd_ch4,
    "rays": cmd_rays,
    "dominate": cmd_dominate,
    "bean": cmd_bean,
    "psi-spectrum": cmd_psi_spectrum,
    "thin": cmd_thin,
    "scan": cmd_scan,
}


# ---------------------------------------------------------------------------
# wiring


def build_parser() -> _Parser:
    common = _Parser(add_help=False)
    common.add_argument("--out", choices=("json", "csv"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=None, help="enumeration cap")

    profiled = _Parser(add_help=False)
    profiled.add_argument("--prefix", type=int, default=2, help="prefix block bound")
    profiled.add_argument("--period", type=int, default=1, help="pattern period bound")

    parser = _Parser(
        prog="matroidlab",
        description="Finite independence systems and periodic glued cycle systems.",
        epilog=(
            "Canned inputs: ladder:n, bean (families); ch4:r (nested pair, or its "
            "inner system where a system is expected)."
        ),
    )
    sub = parser.add_subparsers(dest="cmd", metavar="subcommand")

    def add(name, help_, parents=(common,), **kwargs):
        return sub.add_parser(name, help=help_, parents=list(parents), **kwargs)

    p = add("axioms", "axiom conformance report for a system file")
    p.add_argument("--system", required=True)
    p.add_argument("--axioms", choices=("I", "B", "F"), default="I")

    for name, help_ in (("bases", "all maximal independent sets"),
                        ("circuits", "all minimal dependent sets"),
                        ("dual", "dual system, written as an explicit system file")):
        p = add(name, help_)
        p.add_argument("--system", required=True)

    p = add("minor", "delete and contract by element labels")
    p.add_argument("--system", required=True)
    p.add_argument("--delete", default="", help="comma separated labels")
    p.add_argument("--contract", default="", help="comma separated labels")

    p = add("union", "independence union of two systems")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)

    p = add("mk", "k-step system: top truncation (--system) or removal spectrum (--family)",
            parents=(common, profiled))
    p.add_argument("--system")
    p.add_argument("--family")
    p.add_argument("--glue", default="all")
    p.add_argument("-k", type=int, required=True)

    p = add("diff", "difference system of a nested pair of system files")
    p.add_argument("--outer", required=True)
    p.add_argument("--inner", required=True)
    p.add_argument("--verify-duality", action="store_true")

    p = add("spectrum", "spectrum of a nested pair or a glued family",
            parents=(common, profiled))
    p.add_argument("--pair")
    p.add_argument("--inner")
    p.add_argument("--outer")
    p.add_argument("--family")
    p.add_argument("--glue", default="all")

    p = add("smin", "minimal spanning complements of a nested pair")
    p.add_argument("--pair")
    p.add_argument("--inner")
    p.add_argument("--outer")

    p = add("ch4", "block counterexample: spectrum and exchange-failure witness")
    p.add_argument("-r", type=int, required=True)

    p = add("rays", "ray census of a family; verdict when a gluing is given")
    p.add_argument("--family", required=True)
    p.add_argument("--glue")

    p = add("dominate", "smallest depth giving k disjoint paths from a vertex to the tail")
    p.add_argument("--family", required=True)
    p.add_argument("--vertex", required=True, help="prefix name, or lane:window")
    p.add_argument("-k", type=int, required=True)

    add("bean", "canonical exchange-failure family, all sub-claims checked")

    p = add("psi-spectrum", "spectrum of a family under an explicit gluing file",
            parents=(common, profiled))
    p.add_argument("--family", required=True)
    p.add_argument("--glue", required=True)

    p = add("thin", "rows of a periodic column family with growing support")
    p.add_argument("--matrix-family", required=True)
    p.add_argument("--depth", type=int, default=2)

    p = add("scan", "batch spectra with gap flags", parents=(common, profiled))
    p.add_argument("targets", nargs="+", help="family/edit/pair files or canned names")
    p.add_argument("--glue", default="all")

    return parser


def _config_echo(args) -> dict:
    config = {"subcommand": args.cmd, "format": args.out}
    for key, value in sorted(vars(args).items()):
        if key in ("cmd", "out", "seed") or value is None:
            continue
        config[key] = list(value) if isinstance(value, tuple) else value
    workers = os.environ.get("MATROIDLAB_WORKERS")
    if workers:
        config["workers"] = workers
    return config


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        parser.print_usage(sys.stderr)
        return 64
    if not args.cmd:
        parser.print_usage(sys.stderr)
        return 64
    config = _config_echo(args)
    try:
        payload, table = HANDLERS[args.cmd](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ResourceLimitError as exc:
        print(f"resource bound: {exc}", file=sys.stderr)
        return 3
    if args.out == "csv":
        if table is None:
            print(f"error: {args.cmd} has no CSV form", file=sys.stderr)
            return 2
        sys.stdout.write(table)
    else:
        sys.stdout.write(json_text(envelope(payload, config, args.seed)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
