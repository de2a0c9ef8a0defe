import random
from fractions import Fraction

import pytest

from ramcoh import cyclotomic as cyc
from ramcoh.cyclotomic import CycElement
from ramcoh.errors import PrecisionExhausted, PreconditionViolation
from ramcoh.exactval import ExtendedRational


def sylvester_resultant(f, g):
    """Exact integer resultant via the Sylvester determinant (oracle)."""
    f = list(f)
    g = list(g)
    while f and f[-1] == 0:
        f.pop()
    while g and g[-1] == 0:
        g.pop()
    m, n = len(f) - 1, len(g) - 1
    if n < 0:
        return 0
    size = m + n
    rows = []
    for i in range(n):
        row = [0] * size
        for j, c in enumerate(reversed(f)):
            row[i + j] = c
        rows.append(row)
    for i in range(m):
        row = [0] * size
        for j, c in enumerate(reversed(g)):
            row[i + j] = c
        rows.append(row)
    return _det_fraction(rows)


def _det_fraction(rows):
    n = len(rows)
    mat = [[Fraction(x) for x in r] for r in rows]
    det = Fraction(1)
    for col in range(n):
        piv = next((i for i in range(col, n) if mat[i][col] != 0), None)
        if piv is None:
            return 0
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        det *= mat[col][col]
        inv = 1 / mat[col][col]
        for i in range(col + 1, n):
            if mat[i][col]:
                factor = mat[i][col] * inv
                mat[i] = [a - factor * b for a, b in zip(mat[i], mat[col])]
    assert det.denominator == 1
    return det.numerator


def minimal_polynomial(p, level):
    """x^(p^(level-1) * j) summed over j < p, as a coefficient list."""
    d = (p - 1) * p ** (level - 1)
    coeffs = [0] * (d + 1)
    for j in range(p):
        coeffs[j * p ** (level - 1)] = 1
    return coeffs


def norm_valuation_oracle(x: CycElement) -> Fraction:
    """v(x) = v_p(resultant(minpoly, f)) / degree, on exact coefficients."""
    f = list(x.coeffs)
    res = sylvester_resultant(minimal_polynomial(x.p, x.level), f)
    assert res != 0
    v = 0
    while res % x.p == 0:
        res //= x.p
        v += 1
    return Fraction(v, cyc.field_degree(x.p, x.level))


class TestValuation:
    def test_uniformizer(self):
        z9 = CycElement.zeta(3, 2, 12)
        one = CycElement.scalar(3, 2, 12, 1)
        assert cyc.valuation(z9 - one) == ExtendedRational(Fraction(1, 6))

    def test_scalar_p(self):
        assert cyc.valuation(CycElement.scalar(3, 2, 12, 3)) == ExtendedRational(1)

    def test_unit_root(self):
        assert cyc.valuation(CycElement.zeta(3, 2, 12)) == ExtendedRational(0)

    def test_matches_resultant_norm_oracle(self):
        rng = random.Random(4)
        for _ in range(40):
            level = rng.choice((1, 2))
            coeffs = tuple(
                rng.randrange(0, 81) for _ in range(cyc.field_degree(3, level))
            )
            if not any(coeffs):
                continue
            x = CycElement(3, level, 12, coeffs)
            assert cyc.valuation(x) == ExtendedRational(norm_valuation_oracle(x))

    def test_precision_exhausted_on_zero(self):
        zero = CycElement.scalar(3, 2, 6, 0)
        with pytest.raises(PrecisionExhausted):
            cyc.valuation(zero)

    def test_galois_invariance(self):
        rng = random.Random(8)
        for _ in range(30):
            x = CycElement.random(3, 2, 12, rng)
            v = cyc.valuation_with_flag(x)
            for a in (2, 4, 5, 7, 8):
                assert cyc.valuation_with_flag(cyc.galois_act(x, a)) == v

    def test_p2_excluded(self):
        with pytest.raises(PreconditionViolation):
            CycElement.scalar(2, 1, 8, 1)


class TestGaloisAction:
    def test_definition(self):
        z9 = CycElement.zeta(3, 2, 10)
        img = cyc.galois_act(z9, 4)
        expect = [0] * 6
        expect[4] = 1
        assert img.coeffs == tuple(expect)
        assert cyc.galois_act(z9, 1) == z9

    def test_fixed_points_of_the_subtower_generator(self):
        base = cyc.lift_to_level(CycElement.zeta(3, 1, 10), 2)
        assert (cyc.galois_act(base, 4) - base).is_zero_at_precision()


class TestTraces:
    def test_trace_kills_generator(self):
        assert cyc.trace_step(CycElement.zeta(3, 2, 10)).is_zero_at_precision()

    def test_trace_of_uniformizer_with_floor_bound(self):
        x = CycElement.zeta(3, 2, 12) - CycElement.scalar(3, 2, 12, 1)
        tr = cyc.trace_step(x)
        # value is the scalar -3
        assert tr == CycElement.scalar(3, 1, 12, -3)
        # relative valuation 2 against floor((1 + 6)/3) = 2
        assert 2 * cyc.valuation(tr).finite == 2
        assert (1 + 6) // 3 == 2

    def test_trace_of_scalar_multiplies_by_degree(self):
        one = cyc.lift_to_level(CycElement.scalar(3, 1, 10, 1), 2)
        assert cyc.trace_step(one) == CycElement.scalar(3, 1, 10, 3)

    def test_normalized_trace_examples(self):
        x = CycElement.zeta(3, 2, 12) - CycElement.scalar(3, 2, 12, 1)
        assert cyc.normalized_trace(x) == CycElement.scalar(3, 1, 11, -1)
        assert cyc.normalized_trace(CycElement.zeta(3, 2, 12)).is_zero_at_precision()
        base = CycElement.scalar(3, 1, 12, 7)
        assert cyc.normalized_trace(base) == base

    def test_trace_commutes_with_sigma(self):
        rng = random.Random(12)
        for _ in range(100):
            x = CycElement.random(3, 2, 10, rng)
            lhs = cyc.trace_step(cyc.sigma(x))
            rhs = cyc.sigma(cyc.trace_step(x))
            assert lhs == rhs

    def test_projection_identity(self):
        # the normalized trace of the normalized step equals the full one
        rng = random.Random(14)
        for _ in range(60):
            x = CycElement.random(3, 3, 12, rng)
            t_n = cyc.divide_by_p(cyc.trace_step(x))
            lhs = cyc.normalized_trace(t_n)
            rhs = cyc.normalized_trace(x)
            m = min(lhs.precision, rhs.precision)
            assert lhs.with_precision(m) == rhs.with_precision(m)


class TestVerifyTraceBounds:
    def test_small_run_is_clean(self):
        rep = cyc.verify_trace_bounds(3, 2, 40, precision=12, seed=1)
        assert rep["total_violations"] == 0
        assert rep["inequalities"]["trace_contraction"]["checked"] == 80

    def test_fixed_point_has_infinite_slack(self):
        # an element of the base field: sigma fixes it and x - t(x) = 0
        tally = cyc._SlackTally("t")
        tally.record(None)
        assert tally.min_slack is None and tally.violations == 0

    def test_example_element_slack(self):
        # v(x - t(x)) = 0 against v(sigma x - x) - 1 - 1/(p(p-1)) = 1/2 - 7/6
        x = CycElement.zeta(3, 2, 12) - CycElement.scalar(3, 2, 12, 1)
        diff = x - cyc.lift_to_level(cyc.normalized_trace(x), 2)
        sig = cyc.sigma(x) - x
        assert cyc.valuation(diff).finite == 0
        assert cyc.valuation(sig).finite == Fraction(1, 2)
        bound = Fraction(1, 2) - 1 - Fraction(1, 6)
        assert Fraction(0) >= bound

    def test_deterministic_under_seed(self):
        a = cyc.verify_trace_bounds(3, 1, 20, precision=12, seed=7)
        b = cyc.verify_trace_bounds(3, 1, 20, precision=12, seed=7)
        assert a == b
