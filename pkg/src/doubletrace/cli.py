"""``doubletrace`` command line.

JSON goes to stdout (or ``--out``); diagnostics and ``--format table`` go to
stderr. Exit codes: 0 ok, 2 bad input, 3 state budget exceeded, 4 the two
evaluators disagree under ``--method both``.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import Sequence

from .braid import BraidSyntaxError, Permutation, closure_component_count, parse_braid
from .catalog import GroupSpecError, catalog_specs, group_from_spec
from .double import BudgetExceeded, lens_tau_closed_form, tau_brute, tau_fast
from .groups import GroupTableError, abelianization_invariants
from .invariants import ScreenConfig, rt_value, screening_report
from .parallel import available_workers, default_budget
from .permsim import (
    cycle_type,
    cyclic_tensor_orbits,
    fixed_points,
    hom_dimension,
    similar_as_matrices,
    smith_determinant_check,
)
from .presentations import (
    PresentationError,
    count_homomorphisms,
    load_presentation_json,
    preset_presentation,
)

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_DISAGREE = 0, 2, 3, 4


class Disagreement(RuntimeError):
    pass


def _group(spec: str):
    return group_from_spec(spec)


def _braid(args):
    return parse_braid(args.braid or "", args.strands)


def cmd_tau(args) -> dict:
    G = _group(args.group)
    b = _braid(args)
    t0 = time.perf_counter()
    out = {
        "command": "tau",
        "group": args.group,
        "braid": str(b),
        "strands": b.strands,
        "components": closure_component_count(b),
        "method": args.method,
        "budget": args.budget,
    }
    if args.method in ("fast", "both"):
        fast = tau_fast(G, b, budget=args.budget, workers=args.threads)
        out["tau"] = str(fast)
    if args.method in ("brute", "both"):
        brute = tau_brute(G, b, budget=args.budget, workers=args.threads)
        out["tau"] = str(brute)
    if args.method == "both" and fast != brute:
        raise Disagreement(f"tau_fast = {fast} but tau_brute = {brute}")
    out["elapsed"] = round(time.perf_counter() - t0, 6)
    return out


def cmd_lens(args) -> dict:
    G = _group(args.group)
    closed = lens_tau_closed_form(G, args.n)
    out = {"command": "lens", "group": args.group, "n": args.n, "tau": str(closed), "order": G.order,
           "roots": G.count_power_roots(args.n)}
    if args.check:
        from .braid import lens_braid

        fast = tau_fast(G, lens_braid(args.n), budget=args.budget, workers=args.threads)
        out["tau_fast"] = str(fast)
        if fast != closed:
            raise Disagreement(f"closed form {closed} but tau_fast = {fast}")
    return out


def _presentation(name: str):
    if name.endswith(".json") or Path(name).is_file():
        return load_presentation_json(name)
    return preset_presentation(name)


def cmd_homcount(args) -> dict:
    G = _group(args.group)
    P = _presentation(args.presentation)
    n = count_homomorphisms(P, G, workers=args.threads)
    return {"command": "homcount", "target": args.group, "presentation": args.presentation,
            "presentation_data": P.to_json(), "count": str(n)}


def cmd_rt(args) -> dict:
    G = _group(args.group)
    b = _braid(args)
    v = rt_value(G, b, budget=args.budget, workers=args.threads)
    return {"command": "rt", "group": args.group, "braid": str(b), "strands": b.strands,
            "components": closure_component_count(b), "numerator": str(v.numerator),
            "denominator": str(v.denominator), "rt": str(v)}


def cmd_screen(args) -> dict:
    cfg = ScreenConfig()
    if args.battery:
        cfg = ScreenConfig.from_json(json.loads(Path(args.battery).read_text()))
    for word in args.extra or []:
        b = parse_braid(word)
        cfg.extra_braids.append((str(b), b.strands))
    cfg.budget = args.budget if args.budget is not None else cfg.budget
    cfg.workers = args.threads
    rep = screening_report(_group(args.group_a), _group(args.group_b), cfg, args.group_a, args.group_b)
    return {"command": "screen", **rep.to_json()}


def _perm(text: str, size: int | None) -> Permutation:
    try:
        return Permutation.from_cycles(text, size)
    except ValueError as exc:
        raise BraidSyntaxError(str(exc)) from None


def cmd_perm(args) -> dict:
    if args.perm_cmd == "similar":
        size = args.size or max(_perm(args.p, None).size, _perm(args.q, None).size, 1)
        p, q = _perm(args.p, size), _perm(args.q, size)
        res = similar_as_matrices(p, q)
        out = {"command": "perm similar", "p": args.p, "q": args.q, "size": size, "similar": res.similar,
               "cycle_type_p": cycle_type(p).as_dict(), "cycle_type_q": cycle_type(q).as_dict(),
               "verified": res.verify(p, q)}
        if res.similar:
            out["conjugator"] = res.conjugator.to_cycles()
        else:
            out["witness_power"] = res.witness_power
            out["witness_fixed_points"] = list(res.witness_fixed)
        return out
    if args.perm_cmd == "cycle-type":
        p = _perm(args.p, args.size)
        return {"command": "perm cycle-type", "p": args.p, "size": p.size,
                "cycle_type": cycle_type(p).as_dict(), "fixed_points": fixed_points(p)}
    if args.perm_cmd == "smith":
        det, prod, ok = smith_determinant_check(args.m)
        return {"command": "perm smith", "m": args.m, "det": str(det), "totient_product": str(prod), "equal": ok}
    if args.perm_cmd == "orbits":
        count, size = cyclic_tensor_orbits(args.n, args.m)
        return {"command": "perm orbits", "n": args.n, "m": args.m, "orbit_count": count, "orbit_size": size,
                "hom_dimension": hom_dimension(args.n, args.m)}
    raise AssertionError(args.perm_cmd)


def cmd_catalog(args) -> dict:
    rows = []
    for spec in catalog_specs():
        G = group_from_spec(spec)
        rows.append({"spec": spec, "order": G.order, "abelian": G.is_abelian(),
                     "profile": {str(k): v for k, v in G.order_profile().as_dict().items()},
                     "exponent": G.exponent(), "abelianization": abelianization_invariants(G)})
    return {"command": "catalog", "groups": rows}


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget", type=lambda s: int(float(s)), default=None,
                   help=f"state budget (default {default_budget():.0e}, env DOUBLETRACE_BUDGET)")
    p.add_argument("--threads", type=int, default=available_workers(), help="worker processes")
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("--format", choices=("json", "table"), default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="doubletrace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("tau", help="trace of a braid on D(kG)^n")
    p.add_argument("-g", "--group", required=True)
    p.add_argument("-b", "--braid", default="")
    p.add_argument("--strands", type=int)
    p.add_argument("--method", choices=("fast", "brute", "both"), default="fast")
    _common(p)
    p.set_defaults(func=cmd_tau)

    p = sub.add_parser("lens", help="tau of the lens braid b_n, closed form")
    p.add_argument("-g", "--group", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--check", action="store_true", help="also evaluate the braid and compare")
    _common(p)
    p.set_defaults(func=cmd_lens)

    p = sub.add_parser("homcount", help="#Hom(P, G) by exhaustive search")
    p.add_argument("-g", "--target", "--group", dest="group", required=True)
    p.add_argument("-p", "--presentation", required=True, help="preset name or JSON file")
    _common(p)
    p.set_defaults(func=cmd_homcount)

    p = sub.add_parser("rt", help="normalised RT value |G|^-(m+1) tau(b)")
    p.add_argument("-g", "--group", required=True)
    p.add_argument("-b", "--braid", default="")
    p.add_argument("--strands", type=int)
    _common(p)
    p.set_defaults(func=cmd_rt)

    p = sub.add_parser("screen", help="compare two groups on the invariant battery")
    p.add_argument("--group-a", required=True)
    p.add_argument("--group-b", required=True)
    p.add_argument("--battery", help="JSON battery file")
    p.add_argument("--extra", action="append", help="additional braid word (repeatable)")
    _common(p)
    p.set_defaults(func=cmd_screen)

    p = sub.add_parser("perm", help="permutation similarity tools")
    psub = p.add_subparsers(dest="perm_cmd", required=True)
    q = psub.add_parser("similar")
    q.add_argument("p")
    q.add_argument("q")
    q.add_argument("--size", type=int)
    _common(q)
    q = psub.add_parser("cycle-type")
    q.add_argument("p")
    q.add_argument("--size", type=int)
    _common(q)
    q = psub.add_parser("smith")
    q.add_argument("m", type=int)
    _common(q)
    q = psub.add_parser("orbits")
    q.add_argument("n", type=int)
    q.add_argument("m", type=int)
    _common(q)
    p.set_defaults(func=cmd_perm)

    p = sub.add_parser("catalog", help="list built-in groups")
    _common(p)
    p.set_defaults(func=cmd_catalog)
    return parser


def _table(result: dict) -> str:
    lines = []
    for k, v in result.items():
        if isinstance(v, list) and v and isinstance(v[0], dict):
            lines.append(f"{k}:")
            lines.extend("  " + "  ".join(f"{kk}={vv}" for kk, vv in row.items()) for row in v)
        else:
            lines.append(f"{k:>22}: {v}")
    return "\n".join(lines)


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result = args.func(args)
    except (GroupSpecError, GroupTableError, BraidSyntaxError, PresentationError, ValueError) as exc:
        print(f"doubletrace: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BudgetExceeded as exc:
        print(f"doubletrace: budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except Disagreement as exc:
        print(f"doubletrace: evaluators disagree: {exc}", file=sys.stderr)
        return EXIT_DISAGREE
    text = json.dumps(result, indent=2)
    if args.out:
        Path(args.out).write_text(text + "\n")
    else:
        print(text)
    if args.format == "table":
        print(_table(result), file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
