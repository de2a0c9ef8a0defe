"""Named verification checks shared by the test-suite and the CLI.

Each check returns a JSON-serializable dict with an "ok" flag and enough
detail to re-derive the numbers by hand.  Determinism contract: the
output depends only on the seed, never on timing or iteration order.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Callable, Dict, List

from . import building as bt
from . import cyclotomic as cyc
from . import exactval as ev
from . import homology as hml
from . import liealg as la
from . import ramification as ram
from . import randgen
from . import torsion
from . import towers
from . import witt as wt


def check_different_cross(seed: int = 1) -> Dict:
    """Degree-9 cyclotomic profile over the 3-adics: both different
    formulas give 9, the discriminant exponent agrees, and the tower
    transitivity 9 = 6 + 3*1 holds."""
    prof = ram.FiltrationProfile.from_breaks([[0, 6], [1, 3], [2, 3], [3, 1]])
    lower = ram.different_lower(prof)
    upper = ram.different_upper(prof)
    p, n = 3, 2
    disc_exponent = p ** (n - 1) * (n * p - n - 1)
    sub = ram.FiltrationProfile.from_breaks([[-1, 3], [0, 3], [1, 3], [2, 3], [3, 1]])
    mid = ram.FiltrationProfile.tame_cyclic(2)
    transitivity = ram.different_lower(sub) + 3 * ram.different_lower(mid)
    ok = lower == 9 and upper == 9 and disc_exponent == 9 and transitivity == 9
    return {
        "ok": ok,
        "different_lower": lower,
        "different_upper": str(upper),
        "discriminant_exponent": disc_exponent,
        "transitivity_sum": transitivity,
    }


def check_different_formulas(seed: int = 1, count: int = 500) -> Dict:
    """The two different formulas agree exactly on random profiles."""
    rng = random.Random(seed)
    agreements = 0
    for _ in range(count):
        prof = randgen.random_profile(rng)
        if Fraction(ram.different_lower(prof)) == ram.different_upper(prof):
            agreements += 1
    return {"ok": agreements == count, "count": count, "agreements": agreements}


def check_jump_sequences(seed: int = 1) -> Dict:
    """Cyclotomic jump shapes, the closed-form step differents over the
    first ramified base, and boundary-exact sufficiency."""
    detail: Dict[str, object] = {}
    ok = True
    seq1 = towers.cyclotomic_jumps(3, 1)
    detail["plain_jumps"] = [str(seq1.jump(n)) for n in range(5)]
    ok &= [seq1.jump(n) for n in range(5)] == [-1, 1, 2, 3, 4]
    seq2 = towers.cyclotomic_jumps(3, 2)
    detail["scaled_jumps"] = [str(seq2.jump(n)) for n in range(4)]
    ok &= [seq2.jump(n) for n in range(4)] == [-1, 2, 4, 6]
    step_rows = []
    for p in (3, 5):
        seq = cyc.tower_jumps(p)
        for n in range(1, 5):
            got = towers.step_different(seq, n)
            expect = (p - 1) * p**n
            step_rows.append({"p": p, "n": n, "value": str(got)})
            ok &= got == expect
        suff, slacks, tail = towers.sufficiency_report(seq, 4)
        ok &= suff and all(s == 0 for s in slacks) and tail == 0
        detail[f"slacks_p{p}"] = [str(s) for s in slacks] + [f"tail {tail}"]
    detail["step_differents"] = step_rows
    return {"ok": bool(ok), **detail}


def check_trace_lab(seed: int = 1) -> Dict:
    """Zero violations of the four trace inequalities at both scales."""
    rep3 = cyc.verify_trace_bounds(3, 3, 200, precision=12, seed=seed)
    rep5 = cyc.verify_trace_bounds(5, 2, 100, precision=12, seed=seed)
    ok = rep3["total_violations"] == 0 and rep5["total_violations"] == 0
    return {"ok": ok, "p3": rep3, "p5": rep5}


def check_ledger_replay(seed: int = 1) -> Dict:
    """Every registered derivation matches its stated exponents in paper
    mode, for both parities."""
    rows = []
    ok = True
    for parity in ("odd", "even"):
        for tid in torsion.EQUALITY_ROWS:
            variants = [False, True] if tid == "4.0.4" else [False]
            for tame in variants:
                res = torsion.pipeline(
                    tid, torsion.LedgerParams(parity=parity, tame=tame)
                )
                rows.append(
                    {
                        "id": tid,
                        "parity": parity,
                        "tame": tame,
                        "match": res.match,
                        "derived": res.derived.describe(),
                    }
                )
                ok &= res.match
        dom = torsion.pipeline("5.3.4", torsion.LedgerParams(parity=parity))
        rows.append(
            {
                "id": "5.3.4",
                "parity": parity,
                "tame": False,
                "match": dom.match,
                "derived": dom.derived.describe(),
            }
        )
        ok &= dom.match
    return {"ok": bool(ok), "rows": rows}


def check_decalage(seed: int = 1, count: int = 100) -> Dict:
    """Torsion deletion matches the quotient-by-torsion of every
    cohomology group, on seeded random complexes; plus the canonical
    triangle-composite vanishing on random composable triples."""
    rng = random.Random(seed)
    matches = 0
    for _ in range(count):
        c = randgen.random_complex(rng)
        eta = hml.decalage(c, 3, 1)
        ch, ce = hml.cohomology(c), hml.cohomology(eta)
        if all(
            ce[i] == ch[i].without_torsion_power(3, 1) for i in c.degrees()
        ):
            matches += 1
    vanish = 0
    for _ in range(count):
        a1, a2, a3 = randgen.random_endomorphism_triple(rng)
        if hml.triangle_composite_vanishing(a1, a2, a3):
            vanish += 1
    ok = matches == count and vanish == count
    return {
        "ok": ok,
        "count": count,
        "decalage_matches": matches,
        "triangle_vanishing": vanish,
    }


def check_lie_cohomology(seed: int = 1) -> Dict:
    """Rational Betti numbers of the rank-2 and rank-3 matrix algebras
    against the odd-degree exterior products, then the scaled-lattice run
    with its observed torsion."""
    ok = True
    detail: Dict[str, object] = {}
    for n in (2, 3):
        coh = la.lie_cohomology(la.LieAlgebraZ.gl(n))
        betti = [coh[i].free_rank for i in range(n * n + 1)]
        expected = la.exterior_poincare(la.odd_degree_generators(n))
        expect = [expected.get(i, 0) for i in range(n * n + 1)]
        detail[f"gl{n}_betti"] = betti
        ok &= betti == expect
    rep = la.lazard_check(2, 3, 2)
    detail["scaled_gl2"] = rep.to_dict()
    ok &= rep.ranks_match and rep.max_exponent > 0
    rep3 = la.lazard_check(3, 3, 2)
    detail["scaled_gl3"] = rep3.to_dict()
    ok &= rep3.ranks_match
    return {"ok": bool(ok), **detail}


def check_theorem_a_series(seed: int = 1) -> Dict:
    """Graded dimensions on negative odd degrees: supports are the subset
    sums of {1 - 2i}, totals are 2^n."""
    ok = True
    rows = []
    for n in (1, 2, 3):
        series = la.theorem_a_series(n)
        sums = set()
        for mask in range(2**n):
            sums.add(
                sum((1 - 2 * (i + 1)) for i in range(n) if mask >> i & 1)
            )
        ok &= set(series) == sums
        ok &= all(v == 1 for v in series.values())
        ok &= sum(series.values()) == 2**n
        rows.append({"n": n, "series": {str(k): v for k, v in sorted(series.items())}})
    for n in (4, 5, 6):
        ok &= sum(la.theorem_a_series(n).values()) == 2**n
    return {"ok": bool(ok), "rows": rows}


def check_witt(seed: int = 1) -> Dict:
    """Ghost additivity/multiplicativity, ring axioms, split
    reconstruction at truncation 64, and verified Artin-Schreier roots."""
    rng = random.Random(seed)
    ok = True
    ghost_checks = 0
    for _ in range(200):
        p = rng.choice((2, 3))
        u = wt.PTypicalWitt(p, tuple(rng.randrange(-9, 10) for _ in range(3)))
        v = wt.PTypicalWitt(p, tuple(rng.randrange(-9, 10) for _ in range(3)))
        gs = wt.ghost(wt.witt_arith(u, v, "add"))
        gp = wt.ghost(wt.witt_arith(u, v, "mul"))
        if gs == tuple(a + b for a, b in zip(wt.ghost(u), wt.ghost(v))) and gp == tuple(
            a * b for a, b in zip(wt.ghost(u), wt.ghost(v))
        ):
            ghost_checks += 1
    ok &= ghost_checks == 200
    axioms = 0
    for _ in range(100):
        p = rng.choice((2, 3))
        tr = [
            wt.PTypicalWitt(p, tuple(rng.randrange(-5, 6) for _ in range(3)))
            for _ in range(3)
        ]
        a, b, c = tr
        assoc = wt.witt_arith(wt.witt_arith(a, b, "mul"), c, "mul") == wt.witt_arith(
            a, wt.witt_arith(b, c, "mul"), "mul"
        )
        dist = wt.witt_arith(a, wt.witt_arith(b, c, "add"), "mul") == wt.witt_arith(
            wt.witt_arith(a, b, "mul"), wt.witt_arith(a, c, "mul"), "add"
        )
        if assoc and dist:
            axioms += 1
    ok &= axioms == 100
    splits = 0
    field = wt.FF(3, 2)
    for _ in range(10):
        f = wt.UnitSeries.random(field, 64, rng)
        pp, rest = wt.series_split_p_typical(f)
        if wt.split_reconstruction(pp, rest) == f:
            splits += 1
    ok &= splits == 10
    as_roots = 0
    for k in (2, 3):
        field_k = wt.FF(3, k)
        for _ in range(100):
            a = field_k.random(rng)
            root = wt.artin_schreier_solve(a)
            if root.in_base:
                x = root.root_coeffs[0]
                good = (x.frobenius() - x).coeffs == a.coeffs
            else:
                lhs = wt._as_ext_pow(root.root_coeffs, 3, a)
                lhs = tuple(
                    lhs[i] - root.root_coeffs[i] for i in range(len(lhs))
                )
                good = lhs[0].coeffs == a.coeffs and all(
                    c.is_zero for c in lhs[1:]
                )
            if good:
                as_roots += 1
    ok &= as_roots == 200
    return {
        "ok": bool(ok),
        "ghost_checks": ghost_checks,
        "ring_axiom_checks": axioms,
        "split_reconstructions": splits,
        "artin_schreier_roots": as_roots,
    }


def check_building(seed: int = 1) -> Dict:
    """Tree vertex counts against the closed form and acyclicity of every
    supported ball in two characteristics."""
    ok = True
    counts = []
    for p in (2, 3, 5):
        for radius in range(0, 5):
            ball = bt.build_ball(2, p, radius)
            expect = bt.tree_ball_vertex_count(p, radius)
            counts.append(
                {"p": p, "radius": radius, "vertices": len(ball.vertices)}
            )
            ok &= len(ball.vertices) == expect
            coh = bt.simplicial_cohomology(ball, 2)
            ok &= coh[0] == 1 and all(v == 0 for k, v in coh.items() if k > 0)
    ball31 = bt.build_ball(3, 2, 1)
    ok &= len(ball31.vertices) == 15
    for q in (5, 7):
        coh = bt.simplicial_cohomology(ball31, q)
        ok &= coh[0] == 1 and all(v == 0 for k, v in coh.items() if k > 0)
    return {"ok": bool(ok), "tree_counts": counts, "rank3_vertices": 15}


def check_scalar_identities(seed: int = 1) -> Dict:
    """Dual-path unit valuations, unit p-th power images, the factorial
    bound sweep, and the ball-restriction verification."""
    ok = True
    for p in (3, 5, 7):
        for t in list(range(-64, 0)) + list(range(1, 65)):
            ev.one_plus_p_power_valuation(p, t)  # raises on branch mismatch
    images = {p: ev.unit_power_image(p, 1, 3) for p in (3, 5, 7)}
    ok &= all(images.values())
    worst = None
    for p in (2, 3, 5, 7):
        for n in range(1, 10_001):
            v, bound, holds = ev.factorial_valuation(n, p)
            if not holds:
                ok = False
            slack = bound - v
            if worst is None or slack < worst:
                worst = slack
    rng = random.Random(seed)
    window = ev.random_window(3, 1, Fraction(1, 4), 12, rng)
    m, verified = ev.ball_restriction_image(3, 1, 1, Fraction(1, 2), window)
    ok &= m == 4 and verified
    witness = ev.adversarial_witness(3, 1, Fraction(1, 2), 12)
    ok &= not ev.span_check(witness, 1, Fraction(1, 2), m - 1)
    ok &= ev.span_check(witness, 1, Fraction(1, 2), m)
    return {
        "ok": bool(ok),
        "unit_power_images": {str(k): v for k, v in images.items()},
        "factorial_min_slack": str(worst),
        "ball_restriction_m": m,
    }


def quick_checks() -> List[Dict]:
    """Fast sanity examples from every module (the trivially verifiable
    values)."""
    out = []
    ok = ev.vp(18, 3) == ev.ExtendedRational(2) and ev.vp(0, 5).is_infinite
    out.append({"name": "valuations", "ok": ok})
    prof = ram.FiltrationProfile.unramified(4)
    out.append(
        {
            "name": "unramified_different",
            "ok": ram.different_lower(prof) == 0
            and ram.different_upper(prof) == 0,
        }
    )
    seq = towers.cyclotomic_jumps(5, 5 - 1)
    out.append(
        {"name": "cyclotomic_jumps", "ok": seq.jump(2) == 2 * (5 - 1)}
    )
    z9 = cyc.CycElement.zeta(3, 2, 8)
    out.append(
        {
            "name": "trace_of_root",
            "ok": cyc.trace_step(z9).is_zero_at_precision(),
        }
    )
    c = hml.two_term_complex(hml.IntMatrix.from_rows([[5]]))
    out.append(
        {
            "name": "two_term_cohomology",
            "ok": hml.cohomology(c)[1] == hml.FgModule(0, (5,)),
        }
    )
    res = torsion.compose(
        torsion.TorsionCert.of({1: 2}), torsion.TorsionCert.of({1: 3})
    )
    out.append(
        {"name": "certificate_compose", "ok": res.exponent(1) == torsion.LinExpr(5)}
    )
    out.append(
        {
            "name": "exterior_square",
            "ok": la.exterior_poincare([1]) == {0: 1, 1: 1},
        }
    )
    out.append(
        {
            "name": "teichmuller_ghost",
            "ok": wt.ghost(wt.PTypicalWitt(3, (2, 0, 0))) == (2, 8, 512),
        }
    )
    out.append(
        {
            "name": "tree_star",
            "ok": len(bt.build_ball(2, 3, 1).vertices) == 5,
        }
    )
    return out


FULL_CHECKS: Dict[str, Callable[[int], Dict]] = {
    "different_cross": check_different_cross,
    "different_formulas": check_different_formulas,
    "jump_sequences": check_jump_sequences,
    "trace_lab": check_trace_lab,
    "ledger_replay": check_ledger_replay,
    "decalage": check_decalage,
    "lie_cohomology": check_lie_cohomology,
    "theorem_a_series": check_theorem_a_series,
    "witt": check_witt,
    "building": check_building,
    "scalar_identities": check_scalar_identities,
}


def run_full(seed: int = 1) -> Dict:
    checks = []
    for name, fn in FULL_CHECKS.items():
        result = fn(seed)
        checks.append({"name": name, **result})
    return {
        "seed": seed,
        "checks": checks,
        "ok": all(c["ok"] for c in checks),
    }


def run_quick() -> Dict:
    checks = quick_checks()
    return {"checks": checks, "ok": all(c["ok"] for c in checks)}
