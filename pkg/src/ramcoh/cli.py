"""Command-line front end: every subsystem behind one reproducible
reporting surface.

Reports are deterministic: identical configuration and seed give
byte-identical JSON (keys sorted, no timestamps).  Exit codes: 0 success,
1 a verification failed, 2 usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace
from fractions import Fraction
from typing import Dict, List, Optional

from . import __version__
from . import building as bt
from . import cyclotomic as cyc
from . import exactval as ev
from . import homology as hml
from . import liealg as la
from . import ramification as ram
from . import randgen
from . import selfcheck
from . import torsion
from . import towers
from . import witt as wt
from .errors import (
    InvalidInput,
    PrecisionExhausted,
    PreconditionViolation,
    ResourceLimit,
    UnsupportedRegime,
)

USAGE_ERROR, VERIFY_ERROR = 2, 1


def _report(command: str, config: Dict, result: Dict) -> Dict:
    return {
        "version": __version__,
        "command": command,
        "config": config,
        "result": result,
    }


def _emit(report: Dict, fmt: str, out: Optional[str], text_renderer=None) -> None:
    if fmt == "json":
        payload = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        payload = (
            text_renderer(report)
            if text_renderer
            else json.dumps(report, sort_keys=True, indent=2) + "\n"
        )
    if out:
        with open(out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


def _parse_profile(raw: str) -> ram.FiltrationProfile:
    data = json.loads(raw)
    if isinstance(data, dict):
        data = data["breaks"]
    return ram.FiltrationProfile.from_breaks(data)


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--format", choices=("json", "text"), default="json")
    sub.add_argument("--out", default=None, help="write the report to a file")
    sub.add_argument("--seed", type=int, default=1)
    sub.add_argument("--precision", type=int, default=12)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramcoh",
        description="exact-arithmetic ramification/cohomology cross-checks",
    )
    parser.add_argument("--version", action="version", version=__version__)
    subs = parser.add_subparsers(dest="command", required=True)

    p = subs.add_parser("different", help="different valuations of a profile")
    _add_common(p)
    p.add_argument("--profile", required=True, help='JSON [[u, order], ...]')

    p = subs.add_parser("herbrand", help="piecewise-linear transforms of a profile")
    _add_common(p)
    p.add_argument("--profile", required=True)
    p.add_argument("--at", action="append", default=[], help="rational points")

    p = subs.add_parser("jumps", help="cyclotomic tower jump sequence")
    _add_common(p)
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--e-l", type=int, default=1, dest="e_l")
    p.add_argument("--count", type=int, default=8)

    p = subs.add_parser("suffram", help="sufficiency scan of a jump sequence")
    _add_common(p)
    p.add_argument("--jumps", required=True, help="JumpSequence JSON")
    p.add_argument("--n-max", type=int, default=6, dest="n_max")

    p = subs.add_parser("tracelab", help="trace inequality verification")
    _add_common(p)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--n-max", type=int, default=2, dest="n_max")
    p.add_argument("--samples", type=int, default=50)

    p = subs.add_parser("ledger", help="torsion-exponent derivation tables")
    _add_common(p)
    p.add_argument("--theorem", default=None, help="registered id, e.g. 4.0.4")
    p.add_argument("--p-parity", choices=("odd", "even"), default="odd", dest="parity")
    p.add_argument("--tame", action="store_true")
    p.add_argument("--mode", choices=("paper", "conservative"), default="paper")
    p.add_argument("--n-shift", type=int, default=None, dest="n_shift")
    p.add_argument("--r", type=int, default=None)
    p.add_argument("--v-j", type=int, default=None, dest="v_j")
    p.add_argument("--d", type=int, default=None)
    p.add_argument("--delta", type=int, default=None)
    p.add_argument("--uniform-exp", type=int, default=1, dest="uniform_exp")

    p = subs.add_parser("liecoh", help="integral Lie-algebra cohomology")
    _add_common(p)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--scale-exp", type=int, default=0, dest="scale_exp")

    p = subs.add_parser("decalage", help="torsion-deletion invariant check")
    _add_common(p)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--a", type=int, default=1)
    p.add_argument("--count", type=int, default=25)

    p = subs.add_parser("btball", help="building ball enumeration")
    _add_common(p)
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--p", type=int, default=2)
    p.add_argument("--radius", type=int, default=1)
    p.add_argument("--char", type=int, action="append", default=[])

    p = subs.add_parser("theorema", help="graded dimensions of the rational series")
    _add_common(p)
    p.add_argument("--n", type=int, required=True)

    p = subs.add_parser("witt", help="Witt arithmetic verification sample")
    _add_common(p)
    p.add_argument("--p", type=int, default=3)
    p.add_argument("--trunc", type=int, default=32)

    p = subs.add_parser("selftest", help="run the verification suite")
    _add_common(p)
    p.add_argument("--level", choices=("quick", "full"), default="quick")
    p.add_argument("--full", action="store_true", help="alias for --level full")

    return parser


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------


def _cmd_different(args) -> Dict:
    prof = _parse_profile(args.profile)
    lower = ram.different_lower(prof)
    upper = ram.different_upper(prof)
    return {
        "breaks": [list(b) for b in prof.breaks],
        "different_lower": lower,
        "different_upper": str(upper),
        "equal": Fraction(lower) == upper,
    }


def _cmd_herbrand(args) -> Dict:
    prof = _parse_profile(args.profile)
    phi = ram.herbrand_phi(prof)
    psi = ram.herbrand_psi(prof)
    evaluations = []
    for raw in args.at:
        u = Fraction(raw)
        evaluations.append(
            {
                "u": str(u),
                "phi": str(phi(u)),
                "psi_of_phi": str(psi(phi(u))),
            }
        )
    def fn_dict(fn):
        return {
            "breakpoints": [[str(x), str(y)] for x, y in zip(fn.xs, fn.ys)],
            "final_slope": str(fn.final_slope),
        }
    return {
        "breaks": [list(b) for b in prof.breaks],
        "phi": fn_dict(phi),
        "psi": fn_dict(psi),
        "upper_jumps": [
            [str(v), order] for v, order in ram.lower_to_upper(prof)
        ],
        "evaluations": evaluations,
    }


def _cmd_jumps(args) -> Dict:
    seq = towers.cyclotomic_jumps(args.p, args.e_l)
    return {
        "sequence": json.loads(seq.to_json()),
        "first_jumps": [str(seq.jump(n)) for n in range(args.count)],
    }


def _cmd_suffram(args) -> Dict:
    seq = towers.JumpSequence.from_json(args.jumps)
    ok, slacks, tail = towers.sufficiency_report(seq, args.n_max)
    result = {
        "sequence": json.loads(seq.to_json()),
        "sufficiently_ramified": ok,
        "level_slacks": [str(s) for s in slacks],
        "tail_slack": None if tail is None else str(tail),
    }
    if ok:
        level, shifted = towers.stabilization_shift(seq)
        result["stabilization_level"] = level
        result["shifted"] = json.loads(shifted.to_json())
    return result


def _cmd_tracelab(args) -> Dict:
    return cyc.verify_trace_bounds(
        args.p, args.n_max, args.samples, precision=args.precision, seed=args.seed
    )


def _ledger_row(res: torsion.PipelineResult) -> Dict:
    subs = torsion.numeric_example(res)
    numeric = {}
    for i in res.derived.supported_degrees(4):
        e = res.derived.exponent(i)
        if e is not None:
            numeric[str(i)] = e.value(subs)
    return {
        "id": res.theorem_id,
        "parity": res.params.parity,
        "tame": res.params.tame,
        "mode": res.mode,
        "derived": res.derived.describe(),
        "stated": res.stated.describe(),
        "numeric_at_defaults": numeric,
        "substitutions": {k: v for k, v in subs.items()},
        "match": res.match,
        "comparison": res.comparison,
        "shape": res.shape,
        "notes": list(res.notes),
    }


def _cmd_ledger(args) -> Dict:
    params = torsion.LedgerParams(
        parity=args.parity,
        tame=args.tame,
        N=args.n_shift,
        r=args.r,
        v_j=args.v_j,
        d=args.d,
        delta=args.delta,
        uniform_exponent=args.uniform_exp,
    )
    if args.theorem:
        rows = [_ledger_row(torsion.pipeline(args.theorem, params, args.mode))]
    else:
        rows = [
            _ledger_row(res)
            for res in torsion.full_table(args.parity, args.tame, args.mode)
        ]
    return {"rows": rows, "all_match": all(r["match"] for r in rows)}


def _render_ledger_text(report: Dict) -> str:
    lines = ["id        parity  degrees -> exponent                numeric  match"]
    for row in report["result"]["rows"]:
        lines.append(
            f"{row['id']:<9} {row['parity']:<6}  {row['derived']:<40} "
            f"{row['numeric_at_defaults']}  {row['match']}"
        )
    lines.append(f"all_match: {report['result']['all_match']}")
    return "\n".join(lines) + "\n"


def _cmd_liecoh(args) -> Dict:
    if args.scale_exp:
        return la.lazard_check(args.n, args.p, args.scale_exp).to_dict()
    coh = la.lie_cohomology(la.LieAlgebraZ.gl(args.n))
    expected = la.exterior_poincare(la.odd_degree_generators(args.n))
    return {
        "n": args.n,
        "betti": [coh[i].free_rank for i in range(args.n**2 + 1)],
        "expected": [expected.get(i, 0) for i in range(args.n**2 + 1)],
        "torsion": [
            [int(d) for d in coh[i].divisors] for i in range(args.n**2 + 1)
        ],
    }


def _cmd_decalage(args) -> Dict:
    import random

    rng = random.Random(args.seed)
    matched = 0
    samples = []
    for k in range(args.count):
        c = randgen.random_complex(rng)
        eta = hml.decalage(c, args.p, args.a)
        ch, ce = hml.cohomology(c), hml.cohomology(eta)
        good = all(
            ce[i] == ch[i].without_torsion_power(args.p, args.a)
            for i in c.degrees()
        )
        matched += good
        if k < 3:
            samples.append(
                {
                    "before": {
                        str(i): [ch[i].free_rank, list(ch[i].divisors)]
                        for i in c.degrees()
                    },
                    "after": {
                        str(i): [ce[i].free_rank, list(ce[i].divisors)]
                        for i in c.degrees()
                    },
                    "match": good,
                }
            )
    return {
        "count": args.count,
        "matched": matched,
        "ok": matched == args.count,
        "samples": samples,
    }


def _cmd_btball(args) -> Dict:
    ball = bt.build_ball(args.n, args.p, args.radius)
    chars = args.char or [2, 5]
    return {
        "ball": json.loads(ball.to_json()),
        "vertex_count": len(ball.vertices),
        "cohomology": {
            str(q): {str(k): v for k, v in bt.simplicial_cohomology(ball, q).items()}
            for q in chars
        },
    }


def _cmd_theorema(args) -> Dict:
    series = la.theorem_a_series(args.n)
    return {
        "n": args.n,
        "dimensions": {str(k): v for k, v in sorted(series.items())},
        "total": sum(series.values()),
    }


def _cmd_witt(args) -> Dict:
    import random

    rng = random.Random(args.seed)
    p = args.p
    u = wt.PTypicalWitt(p, tuple(rng.randrange(-9, 10) for _ in range(3)))
    v = wt.PTypicalWitt(p, tuple(rng.randrange(-9, 10) for _ in range(3)))
    s = wt.witt_arith(u, v, "add")
    ghost_ok = wt.ghost(s) == tuple(
        a + b for a, b in zip(wt.ghost(u), wt.ghost(v))
    )
    field = wt.FF(p, 2) if p <= 7 else wt.FF(3, 2)
    f = wt.UnitSeries.random(field, args.trunc, rng)
    pp, rest = wt.series_split_p_typical(f)
    split_ok = wt.split_reconstruction(pp, rest) == f
    a = field.random(rng)
    root = wt.artin_schreier_solve(a)
    return {
        "p": p,
        "sample_sum_coords": list(s.coords),
        "ghost_additive": ghost_ok,
        "split_reconstructs": split_ok,
        "split_buckets": sorted(rest),
        "artin_schreier_in_base": root.in_base,
        "artin_schreier_degree": root.field_degree,
        "ok": ghost_ok and split_ok,
    }


def _cmd_selftest(args) -> Dict:
    level = "full" if args.full else args.level
    if level == "quick":
        return selfcheck.run_quick()
    return selfcheck.run_full(args.seed)


def _render_selftest_text(report: Dict) -> str:
    lines = []
    for c in report["result"]["checks"]:
        status = "pass" if c["ok"] else "FAIL"
        lines.append(f"[{status}] {c['name']}")
    lines.append("ok" if report["result"]["ok"] else "FAILED")
    return "\n".join(lines) + "\n"


COMMANDS = {
    "different": (_cmd_different, None),
    "herbrand": (_cmd_herbrand, None),
    "jumps": (_cmd_jumps, None),
    "suffram": (_cmd_suffram, None),
    "tracelab": (_cmd_tracelab, None),
    "ledger": (_cmd_ledger, _render_ledger_text),
    "liecoh": (_cmd_liecoh, None),
    "decalage": (_cmd_decalage, None),
    "btball": (_cmd_btball, None),
    "theorema": (_cmd_theorema, None),
    "witt": (_cmd_witt, None),
    "selftest": (_cmd_selftest, _render_selftest_text),
}

#: result keys whose falsity marks a verification failure (exit 1)
VERIFICATION_KEYS = ("ok", "equal", "all_match")


def dispatch(argv: List[str]) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else USAGE_ERROR
    fn, renderer = COMMANDS[args.command]
    config = {
        "seed": getattr(args, "seed", None),
        "precision": getattr(args, "precision", None),
        "format": args.format,
        "threads": os.environ.get("RAMCOH_THREADS", "1"),
    }
    try:
        result = fn(args)
    except (InvalidInput, PreconditionViolation, ValueError, KeyError) as exc:
        sys.stderr.write(f"ramcoh: invalid input: {exc}\n")
        return USAGE_ERROR
    except (ResourceLimit, UnsupportedRegime) as exc:
        sys.stderr.write(f"ramcoh: unsupported: {exc}\n")
        return USAGE_ERROR
    except PrecisionExhausted as exc:
        sys.stderr.write(f"ramcoh: precision exhausted: {exc}\n")
        return VERIFY_ERROR
    report = _report(args.command, config, result)
    _emit(report, args.format, args.out, renderer)
    for key in VERIFICATION_KEYS:
        if key in result and result[key] is False:
            return VERIFY_ERROR
    if args.command == "tracelab" and result.get("total_violations", 0):
        return VERIFY_ERROR
    return 0


def main() -> None:
    sys.exit(dispatch(sys.argv[1:]))


if __name__ == "__main__":
    main()
