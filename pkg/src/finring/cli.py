"""Command-line front end: ``finring <command> ...``.

Exit codes: 0 success, 1 property violation, 2 invalid input, 3 search or
enumeration budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .actions import automorphism_group, orbit_count
from .errors import BudgetExceeded, NotSemisimple, RingError, SearchBudgetExceeded
from .iso import DEFAULT_BUDGET
from .profinite import free_nil_ring, theorem2_shadow
from .radical import maximal_ideal_report, nil_report
from .ringfile import dumps, load_ring
from .suites import SUITES, _jsonable, run_suite
from .wedderburn import decompose_semisimple, size_bounds

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


class Result:
    """What a command produced: a JSON-able payload, its text rendering and
    an exit code."""

    def __init__(self, payload: dict, text: str, code: int = EXIT_OK):
        self.payload, self.text, self.code = payload, text, code


def _vec(v) -> list[int]:
    return [int(x) for x in v]


def cmd_radical(args) -> Result:
    R = load_ring(args.file)
    rep = maximal_ideal_report(R)
    J = rep.phi_radical
    payload = {"ring": R.name, "order": R.order, "radical_order": J.order,
               "radical_gens": [_vec(g) for g in J.gens], "semisimple": J.is_zero(),
               "routes_agree": rep.agree}
    text = (f"J({R.name}) has order {J.order}; generators {payload['radical_gens']}\n"
            f"semisimple: {J.is_zero()}; maximal-ideal routes agree: {rep.agree}\n")
    return Result(payload, text, EXIT_OK if rep.agree else EXIT_VIOLATION)


def cmd_decompose(args) -> Result:
    R = load_ring(args.file)
    try:
        d = decompose_semisimple(R)
    except NotSemisimple as exc:
        w = _vec(exc.witness.coeffs)
        return Result({"ring": R.name, "semisimple": False, "witness": w},
                      f"not semisimple: {w} lies in the Jacobson radical\n", EXIT_VIOLATION)
    payload = {"ring": R.name, "semisimple": True, "decomposition": str(d),
               "factors": [list(f) for f in d.factors]}
    return Result(payload, str(d) + "\n")


def cmd_nil(args) -> Result:
    R = load_ring(args.file)
    rep = nil_report(R)
    payload = {"ring": R.name, "is_nil": rep.is_nil, "nilexponent": rep.nilexponent,
               "is_nilpotent": rep.is_nilpotent, "nilpotency_class": rep.nilpotency_class,
               "is_null": rep.is_null,
               "witness": _vec(rep.witness_element.coeffs) if rep.witness_element else None}
    text = (f"nil: {rep.is_nil}, nilexponent {rep.nilexponent}\n"
            f"nilpotent: {rep.is_nilpotent}, class {rep.nilpotency_class}\n"
            f"null: {rep.is_null}\n")
    return Result(payload, text)


def cmd_aut(args) -> Result:
    R = load_ring(args.file)
    G = automorphism_group(R, args.budget)
    gens = [f.images.tolist() for f in G.generators]
    payload = {"ring": R.name, "order": G.order, "generators": gens}
    text = f"|Aut({R.name})| = {G.order}\n" + "".join(
        f"generator {i}: {g}\n" for i, g in enumerate(gens))
    return Result(payload, text)


def cmd_orbits(args) -> Result:
    R = load_ring(args.file)
    rep = orbit_count(R, args.m, args.n)
    payload = {"ring": R.name, "m": args.m, "n": args.n, "orbits": rep.orbit_count,
               "method": rep.method}
    return Result(payload, f"{rep.orbit_count} orbits ({rep.method})\n")


def cmd_freenil(args) -> Result:
    if args.tower:
        rep = theorem2_shadow(args.p, args.tower)
        v = rep.verdict()
        payload = {"p": args.p, "rows": [[r.level, r.order, r.nilexponent, r.nilpotency_class]
                                         for r in rep.rows], "verdict": v.status}
        return Result(payload, rep.table() + "\n", EXIT_OK if v else EXIT_VIOLATION)
    R = free_nil_ring(args.p, args.g)
    return Result({"ring": dumps(R)}, dumps(R))


def cmd_bounds(args) -> Result:
    b = size_bounds(args.m, args.s)
    payload = {"m": b.m, "s": b.s, "k_bound": b.k_bound, "f_bound": b.f_bound,
               "w_degree": b.w_degree, "k_index_branch": b.k_index_branch,
               "k_poly_branch": b.k_poly_branch}
    text = "".join(f"{k}: {v}\n" for k, v in payload.items())
    return Result(payload, text)


def cmd_verify(args) -> Result:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    reports = [run_suite(n, args.seed) for n in names]
    if args.no_timing:
        for r in reports:
            for c in r.cases:
                c.ms = 0.0
    ok = all(r.ok for r in reports)
    if args.format == "json":
        body = [json.loads(r.to_json()) for r in reports]
        payload = body[0] if len(body) == 1 else {"suites": body}
    else:
        payload = {}
    text = "".join(r.to_text() for r in reports)
    return Result(payload, text, EXIT_OK if ok else EXIT_VIOLATION)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--seed", type=int, default=0)

    p = argparse.ArgumentParser(prog="finring", description="Finite ring toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=fn)
        return sp

    add("radical", cmd_radical, "Jacobson radical of a ring file").add_argument("file")
    add("decompose", cmd_decompose, "Wedderburn decomposition").add_argument("file")
    add("nil", cmd_nil, "nil / nilpotent / null report").add_argument("file")
    sp = add("aut", cmd_aut, "automorphism group")
    sp.add_argument("file")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp = add("orbits", cmd_orbits, "orbits of coordinate permutations")
    sp.add_argument("file")
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("-n", type=int, required=True)
    sp = add("freenil", cmd_freenil, "free nil ring level or tower report")
    sp.add_argument("-p", type=int, required=True)
    sp.add_argument("-g", type=int, default=1)
    sp.add_argument("--tower", type=int, default=0, help="report levels 1..K instead")
    sp = add("bounds", cmd_bounds, "size bounds for matrix quotients")
    sp.add_argument("-m", type=int, required=True)
    sp.add_argument("-s", type=int, required=True)
    sp = add("verify", cmd_verify, "run a verification suite")
    sp.add_argument("suite", choices=sorted(SUITES) + ["all"])
    sp.add_argument("--no-timing", action="store_true",
                    help="report 0 ms for every case so output is byte-identical across runs")
    return p


def _emit(args, res: Result) -> None:
    if args.format == "json" and res.payload:
        out = json.dumps(_jsonable(res.payload), sort_keys=True, indent=2) + "\n"
    else:
        out = res.text
    if getattr(args, "out", None):
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        res = args.func(args)
    except (SearchBudgetExceeded, BudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (RingError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _emit(args, res)
    return res.code


if __name__ == "__main__":
    sys.exit(main())
