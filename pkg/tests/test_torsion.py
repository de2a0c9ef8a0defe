import pytest
from hypothesis import given
from hypothesis import strategies as st

from ramcoh import torsion
from ramcoh.errors import InvalidInput, PreconditionViolation
from ramcoh.torsion import (
    EQUALITY_ROWS,
    LedgerParams,
    LinExpr,
    TorsionCert,
    compose,
    pipeline,
    res_cores,
    spectral_window,
    triangle,
    window_sum,
)

exprs = st.builds(
    LinExpr.of,
    st.integers(min_value=0, max_value=9),
    N=st.integers(min_value=0, max_value=3),
    d=st.integers(min_value=0, max_value=3),
)


def cert(entries, tail_from=None, tail=None):
    return TorsionCert.of(entries, tail_from, tail)


certs = st.builds(
    lambda e0, e1, tail: cert({0: e0, 1: e1}, 2, tail),
    exprs,
    exprs,
    exprs,
)


class TestLinExpr:
    def test_arithmetic_and_eval(self):
        e = LinExpr.sym("N") + 2
        assert str(e) == "N+2"
        assert e.value({"N": 5}) == 7
        assert (e + e).coefficient("N") == 2

    def test_nonnegative_enforced(self):
        with pytest.raises(InvalidInput):
            LinExpr(-1)
        with pytest.raises(InvalidInput):
            LinExpr.sym("bogus")

    def test_dominates_is_sound(self):
        big = LinExpr.of(3, d=2)
        small = LinExpr.of(1, d=1)
        assert big.dominates(small) and not small.dominates(big)
        for v in range(4):
            assert big.value({"d": v}) >= small.value({"d": v})


class TestCertOps:
    def test_compose_adds(self):
        out = compose(cert({1: 2}), cert({1: 3}))
        assert out.exponent(1) == LinExpr(5)

    def test_zero_cert_is_identity(self):
        c = cert({0: 1, 1: LinExpr.sym("N")}, 2, 1)
        z = cert({0: 0, 1: 0}, 2, 0)
        assert compose(c, z) == c

    @given(certs, certs)
    def test_compose_commutative(self, c1, c2):
        assert compose(c1, c2) == compose(c2, c1)

    @given(certs, certs, certs)
    def test_compose_associative(self, c1, c2, c3):
        assert compose(compose(c1, c2), c3) == compose(c1, compose(c2, c3))

    def test_undefined_propagates(self):
        partial = cert({1: 2})
        out = compose(partial, cert({0: 1, 1: 1}, 2, 1))
        assert out.exponent(0) is None and out.exponent(2) is None
        assert out.exponent(1) == LinExpr(3)

    def test_triangle_replays_the_octahedron_row(self):
        c_x = cert({0: 0, 1: LinExpr.sym("N") + 2}, 2, 0)
        c_y = cert({0: 0}, 1, 1)
        out = triangle(c_x, c_y)
        assert out.exponent(0) == LinExpr(0)
        assert out.exponent(1) == LinExpr.sym("N") + 3
        assert out.exponent(5) == LinExpr(1)

    def test_triangle_even_variant(self):
        c_x = cert({0: 0, 1: LinExpr.sym("N") + 3}, 2, 0)
        c_y = cert({0: 0}, 1, 2)
        out = triangle(c_x, c_y)
        assert out.exponent(1) == LinExpr.sym("N") + 5
        assert out.exponent(2) == LinExpr(2)

    def test_res_cores(self):
        assert res_cores(cert({1: 3}), 1).exponent(1) == LinExpr(4)
        c = cert({1: 5}, 2, 1)
        assert res_cores(c, 0) == c
        assert res_cores(cert({3: 5}), 2).exponent(3) == LinExpr(7)

    def test_spectral_window_modes(self):
        uniform = cert({0: 1}, 1, 1)
        assert spectral_window(uniform, 4, "paper").exponent(2) == LinExpr(4)
        assert spectral_window(uniform, 4, "conservative").exponent(2) == LinExpr(5)
        degenerate = cert({0: LinExpr.sym("r")}, 1, LinExpr.sym("r"))
        for mode in ("paper", "conservative"):
            assert spectral_window(degenerate, 0, mode).exponent(0) == LinExpr.sym("r")

    def test_spectral_window_needs_uniform(self):
        with pytest.raises(PreconditionViolation):
            spectral_window(cert({0: 1, 1: 2}), 3)

    def test_window_sum(self):
        cols = [LinExpr.sym("M", const=1) + LinExpr.sym("v_j")] * 3
        total = window_sum(cols)
        assert total == LinExpr.of(3, M=3, v_j=3)

    def test_tail_conflict_rejected(self):
        with pytest.raises(InvalidInput):
            TorsionCert(((2, LinExpr(5)),), 2, LinExpr(1))


class TestPipelines:
    @pytest.mark.parametrize("parity", ["odd", "even"])
    @pytest.mark.parametrize("tid", EQUALITY_ROWS)
    def test_equality_rows_match(self, parity, tid):
        res = pipeline(tid, LedgerParams(parity=parity))
        assert res.match, f"{tid} ({parity}): {res.derived.describe()}"

    @pytest.mark.parametrize("parity", ["odd", "even"])
    def test_tame_variant(self, parity):
        res = pipeline("4.0.4", LedgerParams(parity=parity, tame=True))
        assert res.match
        expect = 3 if parity == "odd" else 5
        assert res.derived.exponent(1) == LinExpr(expect)

    def test_theorem_c_value(self):
        res = pipeline("C")
        assert res.derived.exponent(1) == LinExpr(6)

    def test_tate_twist_numeric_column(self):
        res = pipeline("4.0.5", LedgerParams(parity="odd", v_j=2))
        assert res.derived.exponent(1) == LinExpr(4)
        assert res.derived.exponent(2) == LinExpr(1)

    def test_character_rows_symbolic_r(self):
        res = pipeline("4.4.2", LedgerParams(parity="even"))
        assert res.derived.exponent(1) == LinExpr.of(2, N=1, r=1)
        assert res.derived.exponent(3) == LinExpr(1)

    def test_dominates_row(self):
        for parity in ("odd", "even"):
            res = pipeline("5.3.4", LedgerParams(parity=parity))
            assert res.match and res.comparison == "dominates"
            assert set(n for n, _ in res.derived.exponent(1).terms) <= {"M", "d"}

    def test_unknown_id(self):
        with pytest.raises(InvalidInput):
            pipeline("9.9.9")

    def test_substitution_naturality(self):
        # numeric-then-derive equals derive-then-substitute
        import random

        rng = random.Random(3)
        for _ in range(100):
            n_val = rng.randrange(0, 6)
            r_val = rng.randrange(1, 5)
            sym = pipeline("4.4.1", LedgerParams(parity="odd"))
            num = pipeline("4.4.1", LedgerParams(parity="odd", N=n_val, r=r_val))
            subs = {"N": n_val, "r": r_val}
            assert (
                sym.derived.substitute(subs).exponent(1)
                == num.derived.exponent(1)
            )

    def test_conservative_never_smaller(self):
        for parity in ("odd", "even"):
            for tid in EQUALITY_ROWS + ("5.3.4",):
                paper = pipeline(tid, LedgerParams(parity=parity), "paper")
                cons = pipeline(tid, LedgerParams(parity=parity), "conservative")
                for i in paper.derived.supported_degrees(4):
                    pe = paper.derived.exponent(i)
                    ce = cons.derived.exponent(i)
                    assert ce is not None and ce.dominates(pe)

    def test_window_monotonicity_over_registry(self):
        # the two window counts, applied to every uniform registry output
        for parity in ("odd", "even"):
            for tid in EQUALITY_ROWS:
                res = pipeline(tid, LedgerParams(parity=parity))
                tailed = TorsionCert.of(
                    {},
                    tail_from=1,
                    tail=res.derived.exponent(1) or LinExpr(1),
                )
                for cd in range(0, 4):
                    paper = spectral_window(tailed, cd, "paper")
                    cons = spectral_window(tailed, cd, "conservative")
                    assert cons.exponent(2).dominates(paper.exponent(2))
