"""Command-line front end: ``polykrull <command> [options]``.

Exit status: 0 on success, 2 on usage errors (bad flags, unparsable input),
3 when the requested operation raises a domain error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Callable

from .ballcalc import orbit_contains, reduce_family
from .errors import DomainError, ParseError
from .exactnum import format_ext, parse_group
from .monoval import DvrSpec, make_dvr_spec, mono_val, order_compare
from .polyarith import parse_poly
from .ringspec import (
    RingSpec,
    class_group,
    classify,
    construct_with_class_group,
    member,
    nonunitary_witness,
    probe_finite_character,
    ring_from_dict,
    ring_to_dict,
    ring_to_json,
    spectrum_summary,
    unitary_prime_is_maximal,
)

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 2, 3


class UsageError(Exception):
    pass


def _need(args, *names: str) -> None:
    missing = [n for n in names if getattr(args, n) in (None, [])]
    if missing:
        raise UsageError(f"{args.command} needs " + ", ".join("--" + n for n in missing))


def _specs_from_flags(args, count: int | None = None) -> list[DvrSpec]:
    _need(args, "p", "center", "radius")
    centers, radii = args.center, args.radius
    if len(centers) != len(radii):
        raise UsageError("--center and --radius must be given the same number of times")
    if count is not None and len(centers) != count:
        raise UsageError(f"{args.command} takes exactly {count} --center/--radius pair(s)")
    return [make_dvr_spec(args.p, c, r) for c, r in zip(centers, radii)]


def _load_ring(args) -> RingSpec:
    _need(args, "ring")
    if args.ring == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(args.ring, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.ring}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON in ring spec: {exc}") from None
    # accept the report printed by `construct --json` as well
    if isinstance(doc, dict) and "table" not in doc and "default" not in doc:
        doc = (doc.get("result") or {}).get("ring", doc)
    return ring_from_dict(doc)


def _poly(args):
    _need(args, "poly")
    return parse_poly(args.poly)


# -- commands: each returns (inputs, result, assumptions, human text) ----------


def cmd_val(args):
    (spec,) = _specs_from_flags(args, 1)
    f = _poly(args)
    v = mono_val(spec, f)
    return {"spec": str(spec), "poly": str(f)}, {"value": format_ext(v)}, [], format_ext(v)


def cmd_compare(args):
    s1, s2 = _specs_from_flags(args, 2)
    rel = order_compare(s1, s2)
    return {"first": str(s1), "second": str(s2)}, {"relation": rel}, [], rel


def cmd_contains(args):
    outer, inner = _specs_from_flags(args, 2)
    ok = orbit_contains(outer, inner)
    text = f"{'true' if ok else 'false'}"
    return {"outer": str(outer), "inner": str(inner)}, {"contains": ok}, [], text


def _reduce_report(specs: list[DvrSpec]) -> dict:
    kept, removed = reduce_family(specs)
    return {
        "kept": [str(s) for s in kept],
        "removed": [{"spec": str(s), "reason": why} for s, why in removed],
    }


def cmd_reduce(args):
    if args.ring:
        ring = _load_ring(args)
        families = {str(p): _reduce_report(list(fam)) for p, fam in ring.table}
        inputs = {"ring": ring_to_dict(ring)}
    else:
        specs = _specs_from_flags(args)
        families = {str(args.p): _reduce_report(specs)}
        inputs = {"specs": [str(s) for s in specs]}
    lines = []
    for p, rep in families.items():
        lines += [f"p={p} keep {s}" for s in rep["kept"]]
        lines += [f"p={p} drop {r['spec']}: {r['reason']}" for r in rep["removed"]]
    return inputs, {"families": families}, [], "\n".join(lines)


def cmd_member(args):
    ring = _load_ring(args)
    f = _poly(args)
    res = member(ring, f)
    text = "true" if res.member else "false"
    w = res.witness
    if not res.member:
        where = f"(p={w['p']}, j={w['j']})" if w["where"] == "table" else f"default at p={w['p']}"
        text += f" witness {where} value {w['value']}"
    return {"ring": ring_to_dict(ring), "poly": str(f)}, {"member": res.member, "witness": w}, [], text


def cmd_classify(args):
    ring = _load_ring(args)
    c = classify(ring, args.bound)
    d = c.as_dict()
    assumptions = d.pop("assumptions")
    lines = [f"Krull={c.krull}"]
    if c.krull_witness:
        lines.append(f"witness: {c.krull_witness}")
    if c.krull != "No":
        lines += [
            f"Dedekind={_flag(c.dedekind)}",
            f"AlmostDedekind={_flag(c.almost_dedekind)}",
            f"UFD={_flag(c.ufd)}",
            f"Pure={_flag(c.pure)}",
            f"ClassGroup={c.class_group if c.class_group is not None else 'undefined'}",
        ]
    return {"ring": ring_to_dict(ring), "bound": args.bound}, d, assumptions, "\n".join(lines)


def _flag(b) -> str:
    return "undefined" if b is None else ("true" if b else "false")


def cmd_clgroup(args):
    ring = _load_ring(args)
    g = class_group(ring)
    result = {"torsion": list(g.torsion), "free_rank": g.free_rank, "text": str(g)}
    return {"ring": ring_to_dict(ring)}, result, [], str(g)


def cmd_prime_max(args):
    ring = _load_ring(args)
    if args.poly is not None:
        if args.p is not None or args.index is not None:
            raise UsageError("prime-max takes either --poly or --p/--index, not both")
        q = _poly(args)
        witness = nonunitary_witness(ring, q)
        ok = witness is None
        inputs = {"ring": ring_to_dict(ring), "poly": str(q)}
        result = {"kind": "nonunitary", "maximal": ok, "witness": witness}
    else:
        _need(args, "p", "index")
        ok = unitary_prime_is_maximal(ring, args.p, args.index)
        inputs = {"ring": ring_to_dict(ring), "p": args.p, "index": args.index}
        result = {"kind": "unitary", "maximal": ok}
    return inputs, result, [], "maximal" if ok else "not maximal"


def cmd_probe(args):
    ring = _load_ring(args)
    g = _poly(args)
    rep = probe_finite_character(ring, g, args.bound)
    d = rep.as_dict()
    text = f"{d['verdict']}: {len(rep.hits)}/{d['considered']} primes <= {args.bound} hit {list(rep.hits)}"
    return {"ring": ring_to_dict(ring), "poly": str(g), "bound": args.bound}, d, [], text


def cmd_construct(args):
    _need(args, "group", "pool")
    g = parse_group(args.group)
    try:
        pool = [int(x) for x in args.pool.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"bad prime pool {args.pool!r}") from None
    ring = construct_with_class_group(g, pool)
    return {"group": str(g), "pool": pool}, {"ring": ring_to_dict(ring)}, [], ring_to_json(ring).rstrip("\n")


def cmd_spectrum(args):
    ring = _load_ring(args)
    s = spectrum_summary(ring)
    lines = [
        f"unitary (p={u['p']}, j={u['j']}) {u['spec']} center {u['center_ideal']} "
        + ("maximal" if u["maximal"] else "not maximal")
        for u in s["unitary"]
    ]
    if s["default_unitary"]:
        lines.append(f"unitary {s['default_unitary']}")
    lines.append(f"non-unitary {s['nonunitary']}")
    return {"ring": ring_to_dict(ring)}, s, [], "\n".join(lines)


COMMANDS: dict[str, tuple[Callable, str]] = {
    "val": (cmd_val, "monomial valuation of --poly"),
    "compare": (cmd_compare, "compare two DVRs by inclusion of their polynomial rings"),
    "contains": (cmd_contains, "does the first ball orbit contain the second"),
    "reduce": (cmd_reduce, "remove superfluous DVRs from a family"),
    "member": (cmd_member, "membership of --poly in the ring"),
    "classify": (cmd_classify, "Krull / Dedekind / UFD / pure classification"),
    "clgroup": (cmd_clgroup, "divisor class group"),
    "prime-max": (cmd_prime_max, "maximality of a unitary (--p --index) or non-unitary (--poly) prime"),
    "probe": (cmd_probe, "primes whose DVRs put --poly in the maximal ideal"),
    "construct": (cmd_construct, "build a ring with class group --group"),
    "spectrum": (cmd_spectrum, "height-one prime ideals"),
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--ring", metavar="FILE", help="ring spec JSON file, '-' for stdin")
    common.add_argument("--poly", metavar="EXPR", help='polynomial, e.g. "X^2+2*X+8" or "(X^2+2X+8)/4"')
    common.add_argument("--p", type=int, metavar="PRIME")
    common.add_argument("--center", action="append", default=[], help="rat:A, alg:POLY or trunc:a=A,N=N,e=E")
    common.add_argument("--radius", action="append", default=[], help="nonnegative rational or inf")
    common.add_argument("--index", type=int, metavar="J", help="1-based index in the family at --p")
    common.add_argument("--bound", type=int, default=100, help="probe bound (default 100)")
    common.add_argument("--group", metavar="LIST", help='invariant factors, 0 for Z, e.g. "2,6,0,0"')
    common.add_argument("--pool", metavar="PRIMES", help='comma-separated primes, e.g. "2,3,5"')
    common.add_argument("--json", action="store_true", help="machine-readable report")

    parser = argparse.ArgumentParser(
        prog="polykrull",
        description="Krull domains between Z[X] and Q[X] given by p-adic balls.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return parser


def _emit_json(payload: dict) -> None:
    sys.stdout.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = COMMANDS[args.command][0]
    try:
        inputs, result, assumptions, text = handler(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"polykrull {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DomainError as exc:
        code = EXIT_USAGE if isinstance(exc, ParseError) else EXIT_DOMAIN
        if args.json:
            _emit_json({"command": args.command, "error": {"name": exc.name, "message": str(exc)}, "exit": code})
        print(f"polykrull {args.command}: {exc.name}: {exc}", file=sys.stderr)
        return code
    if args.json:
        _emit_json(
            {
                "command": args.command,
                "inputs": inputs,
                "result": result,
                "assumptions": assumptions,
                "exit": EXIT_OK,
            }
        )
    else:
        print(text)
        for a in assumptions:
            print(f"assumption: {a}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
