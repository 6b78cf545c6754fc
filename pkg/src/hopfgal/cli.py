"""Command-line front end.

Subcommands:
  enumerate   list all valid structures on a spec, cross-checked against
              the regular-subgroup count in Hol(G) when feasible
  verify      run one of the exact verification suites
              (lattice | conjugation | elementary | primitive | cyclic)
  report      counting table: sub-Hopf avatars vs intermediate-field avatars

Exit codes: 0 success, 2 input/config error, 3 cap exceeded,
4 verified identity failed (witness on stderr).
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import abelian, correspondence, holomorph, nilring
from .abelian import GroupSpec
from .correspondence import Context
from .errors import CapExceeded, InputError, TheoremViolation

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_CAP = 3
EXIT_VIOLATION = 4


def _add_common(parser):
    parser.add_argument("--p", type=int, help="the prime")
    parser.add_argument("--exp", type=str, help="comma-separated exponents, e.g. 2,1")
    parser.add_argument("--n", type=int, help="shorthand: n cyclic factors C_p (or the cyclic exponent for the cyclic family)")
    parser.add_argument("--family", type=str, help="trivial | primitive | cyclic:d | enumerate | fixture:klein")
    parser.add_argument("--d", type=int, help="parameter of the cyclic family")
    parser.add_argument("--all-d", action="store_true", help="scan every d in [0, p^(n-1))")
    parser.add_argument("--all-structures", action="store_true", help="scan every enumerated structure on the spec")
    parser.add_argument("--format", choices=["json", "table"], default="json")
    parser.add_argument("--out", type=str, help="output path (default: stdout)")
    parser.add_argument("--cap-enum", type=int, default=abelian.DEFAULT_ENUM_CAP)
    parser.add_argument("--cap-search", type=int, default=nilring.DEFAULT_SEARCH_CAP)
    parser.add_argument("--cap-hol", type=int, default=holomorph.DEFAULT_HOL_CAP)
    parser.add_argument("--seed", type=int, default=0, help="seed for sampled checks")


def _parse_spec(args, cyclic_n=False) -> GroupSpec:
    if args.p is None:
        raise InputError("--p is required")
    if args.exp is not None:
        exps = tuple(int(x) for x in args.exp.split(","))
    elif args.n is not None:
        exps = (args.n,) if cyclic_n else (1,) * args.n
    else:
        raise InputError("one of --exp or --n is required")
    return GroupSpec(args.p, exps)


def _resolve_structures(args, cyclic_n=False):
    """(label, structure) pairs selected by --family / --all-structures."""
    family = args.family
    if family == "fixture:klein":
        return [("fixture:klein", correspondence.klein_four_fixture().ring)]
    if args.all_structures or family == "enumerate":
        spec = _parse_spec(args, cyclic_n)
        return [
            (f"enumerated[{i}]", A)
            for i, A in enumerate(nilring.enumerate_structures(spec, args.cap_search))
        ]
    if family == "trivial":
        return [("trivial", nilring.trivial_structure(_parse_spec(args, cyclic_n)))]
    if family == "primitive":
        if args.n is None:
            raise InputError("primitive family requires --n")
        return [("primitive", nilring.primitive_structure(args.p, args.n, args.cap_enum))]
    if family is not None and family.startswith("cyclic"):
        if args.n is None:
            raise InputError("cyclic family requires --n")
        if ":" in family:
            ds = [int(family.split(":", 1)[1])]
        elif args.all_d:
            ds = range(args.p ** (args.n - 1))
        elif args.d is not None:
            ds = [args.d]
        else:
            raise InputError("cyclic family requires :d, --d, or --all-d")
        return [
            (f"cyclic:{d}", nilring.cyclic_structure(args.p, args.n, d)) for d in ds
        ]
    raise InputError(f"cannot resolve structures from family={family!r}")


def _emit(args, payload, table_lines):
    if args.format == "json":
        text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    else:
        text = "\n".join(table_lines) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_enumerate(args) -> int:
    spec = _parse_spec(args)
    structures = nilring.enumerate_structures(spec, args.cap_search)
    payload = {
        "spec": spec.to_json(),
        "structure_count": len(structures),
        "structures": [A.to_json() for A in structures],
    }
    hol_size = spec.order * len(holomorph.enumerate_automorphisms(spec))
    if hol_size <= args.cap_hol:
        regs = holomorph.enumerate_regular_subgroups(spec, args.cap_hol)
        abelian_regs = [T for T in regs if holomorph.is_abelian(T)]
        payload["regular_subgroup_count"] = len(regs)
        payload["abelian_regular_subgroup_count"] = len(abelian_regs)
        payload["counts_match"] = len(abelian_regs) == len(structures)
        if not payload["counts_match"]:
            raise TheoremViolation(
                "structure count differs from regular-subgroup count",
                witness=payload,
            )
    else:
        payload["regular_subgroup_count"] = None
        payload["abelian_regular_subgroup_count"] = None
        payload["counts_match"] = None
    lines = [f"spec            {spec}", f"structures      {len(structures)}"]
    if payload["regular_subgroup_count"] is not None:
        lines.append(f"regular subgrps {payload['regular_subgroup_count']}")
        lines.append(f"abelian regular {payload['abelian_regular_subgroup_count']}")
        lines.append(f"counts match    {payload['counts_match']}")
    _emit(args, payload, lines)
    return EXIT_OK


def _verify_lattice(args) -> dict:
    rows = []
    for label, A in _resolve_structures(args):
        report = correspondence.lattice_report(Context(A, args.cap_enum), args.cap_enum)
        rows.append(
            {
                "structure": label,
                "ideal_count": len(report.ideals),
                "gamma_subgroup_count": report.gamma_subgroup_count,
                "strong_ftgt": report.strong_ftgt,
                "circle_type": list(report.circle_type),
            }
        )
    return {"check": "lattice", "structures_checked": len(rows), "rows": rows}


def _verify_conjugation(args) -> dict:
    rng = random.Random(args.seed)
    rows = []
    for label, A in _resolve_structures(args):
        ctx = Context(A, args.cap_enum)
        report = correspondence.holomorph_conjugation_report(ctx)
        if report["failures"]:
            raise TheoremViolation(
                "conjugation identities failed", witness=report["failures"]
            )
        # sampled homomorphism check: translation by g+h = composition
        for _ in range(3):
            g = rng.choice(ctx.elements)
            h = rng.choice(ctx.elements)
            lhs = ctx.additive_translation_perm(abelian.add(ctx.spec, g, h))
            rhs = correspondence.perm_compose(
                ctx.additive_translation_perm(g), ctx.additive_translation_perm(h)
            )
            if lhs != rhs:
                raise TheoremViolation(
                    "additive translations do not compose additively",
                    witness={"g": list(g), "h": list(h)},
                )
        rows.append({"structure": label, "pairs_checked": report["pairs_checked"]})
    return {"check": "conjugation", "structures_checked": len(rows), "rows": rows}


def _verify_elementary(args) -> dict:
    spec = _parse_spec(args)
    scan = correspondence.elementary_scan(spec, args.cap_search, args.cap_enum)
    scan["check"] = "elementary"
    return scan


def _verify_primitive(args) -> dict:
    if args.p is None or args.n is None:
        raise InputError("primitive verification requires --p and --n")
    A = nilring.primitive_structure(args.p, args.n, args.cap_enum)
    ideal_list = nilring.ideals(A, args.cap_enum)
    sizes = [s.size for s in ideal_list]
    chain = all(
        set(a.elements) <= set(b.elements)
        for a, b in zip(ideal_list, ideal_list[1:])
    )
    if len(ideal_list) != args.n + 1 or not chain:
        raise TheoremViolation(
            "one-generator structure does not have a chain of n+1 ideals",
            witness={"ideal_sizes": sizes, "chain": chain},
        )
    return {
        "check": "primitive",
        "p": args.p,
        "n": args.n,
        "ideal_count": len(ideal_list),
        "ideal_sizes": sizes,
        "single_chain": chain,
    }


def _verify_cyclic(args) -> dict:
    if args.p is None or args.n is None:
        raise InputError("cyclic verification requires --p and --n")
    if args.family is None:
        args.family = "cyclic"
    spec = GroupSpec(args.p, (args.n,))
    subgroups = abelian.enumerate_subgroups(spec, args.cap_enum)
    sub_sets = [s.elements for s in subgroups]
    rows = []
    for label, A in _resolve_structures(args, cyclic_n=True):
        if nilring.validate(A):
            raise TheoremViolation("cyclic-family structure failed validation",
                                   witness=A.to_json())
        ideal_list = nilring.ideals(A, args.cap_enum)
        if [s.elements for s in ideal_list] != sub_sets:
            raise TheoremViolation(
                "ideals of the cyclic-family structure are not all additive subgroups",
                witness={"structure": A.to_json()},
            )
        report = correspondence.lattice_report(Context(A, args.cap_enum), args.cap_enum)
        if not report.strong_ftgt:
            raise TheoremViolation(
                "strong correspondence fails for a cyclic-family structure",
                witness={"structure": A.to_json()},
            )
        rows.append(
            {
                "structure": label,
                "ideal_count": len(ideal_list),
                "strong_ftgt": report.strong_ftgt,
            }
        )
    return {
        "check": "cyclic",
        "p": args.p,
        "n": args.n,
        "d_count": len(rows),
        "rows": rows,
    }


_VERIFY = {
    "lattice": _verify_lattice,
    "conjugation": _verify_conjugation,
    "elementary": _verify_elementary,
    "primitive": _verify_primitive,
    "cyclic": _verify_cyclic,
}


def cmd_verify(args) -> int:
    payload = _VERIFY[args.check](args)
    payload["status"] = "pass"
    lines = [f"check   {payload['check']}", "status  pass"]
    for key in sorted(payload):
        if key in ("check", "status", "rows"):
            continue
        lines.append(f"{key:<22} {payload[key]}")
    _emit(args, payload, lines)
    return EXIT_OK


def _subfield_count(A, cap_enum):
    """Subgroup count of the circle group, with the counting method used.

    Elementary abelian circle groups use the exact subspace-count
    formula; others are enumerated from the circle table.
    """
    cg = nilring.circle_group(A, cap_enum)
    if cg.invariants and all(e == 1 for e in cg.invariants):
        count = 1 + correspondence.gaussian_subspace_count(A.spec.p, len(cg.invariants))
        return count, "formula", cg
    ctx = Context(A, cap_enum)
    return correspondence.circle_subgroup_count(ctx, cap_enum), "enumeration", cg


def cmd_report(args) -> int:
    rows = []
    for label, A in _resolve_structures(args, cyclic_n=args.family is not None and args.family.startswith("cyclic")):
        ideal_list = nilring.ideals(A, args.cap_enum)
        subfields, method, cg = _subfield_count(A, args.cap_enum)
        rows.append(
            {
                "family": label,
                "spec": A.spec.to_json(),
                "circle_type": list(cg.invariants),
                "subhopf_count": len(ideal_list),
                "subfield_count": subfields,
                "count_method": method,
                "strong_ftgt": len(ideal_list) == subfields,
            }
        )
    payload = {"rows": rows}
    header = f"{'family':<16}{'spec':<16}{'circle type':<14}{'subHopf':>8}{'subfields':>10}{'strong':>8}  method"
    lines = [header, "-" * len(header)]
    for r in rows:
        spec_txt = "x".join(str(e) for e in r["spec"]["exponents"])
        lines.append(
            f"{r['family']:<16}{'p=' + str(r['spec']['p']) + ' exp=' + spec_txt:<16}"
            f"{str(r['circle_type']):<14}{r['subhopf_count']:>8}{r['subfield_count']:>10}"
            f"{str(r['strong_ftgt']):>8}  {r['count_method']}"
        )
    _emit(args, payload, lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hopfgal",
        description="Exact verification of the ideal / invariant-subgroup correspondence for nilpotent structures on abelian p-groups.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_enum = sub.add_parser("enumerate", help="enumerate structures on a spec")
    _add_common(p_enum)
    p_enum.set_defaults(func=cmd_enumerate)

    p_verify = sub.add_parser("verify", help="run a verification suite")
    p_verify.add_argument("check", choices=sorted(_VERIFY))
    _add_common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_report = sub.add_parser("report", help="counting table for a family")
    _add_common(p_report)
    p_report.set_defaults(func=cmd_report)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except TheoremViolation as exc:
        print(f"verified identity failed: {exc}", file=sys.stderr)
        if exc.witness is not None:
            print(json.dumps(exc.witness, indent=2, sort_keys=True), file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
