import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ramcoh import homology as hml
from ramcoh.errors import InvalidInput, PrecisionExhausted, PreconditionViolation
from ramcoh.homology import (
    ChainMap,
    FgComplex,
    FgModule,
    IntMatrix,
    cohomology,
    cohomology_oracle,
    cone,
    decalage,
    identity_map,
    scalar_map,
    smith_form,
    snf,
    split_free_torsion,
    triangle_composite_vanishing,
    two_term_cohomology,
    two_term_complex,
)
from ramcoh.randgen import (
    random_chain_map,
    random_complex,
    random_endomorphism_triple,
)

small_matrices = st.integers(min_value=1, max_value=4).flatmap(
    lambda r: st.integers(min_value=1, max_value=4).flatmap(
        lambda c: st.lists(
            st.lists(st.integers(min_value=-9, max_value=9), min_size=c, max_size=c),
            min_size=r,
            max_size=r,
        )
    )
)


class TestSmith:
    def test_examples(self):
        assert snf(IntMatrix.from_rows([[2, 4], [6, 8]])) == ((2, 4), 2)
        assert snf(IntMatrix.identity(3)) == ((1, 1, 1), 3)
        assert snf(IntMatrix.zero(2, 3)) == ((), 0)

    @given(small_matrices)
    def test_transforms_are_unimodular_and_diagonalize(self, rows):
        a = IntMatrix.from_rows(rows)
        s = smith_form(a)
        assert abs(_det(s.u)) == 1 and abs(_det(s.v)) == 1
        prod = s.u * a * s.v
        for i in range(prod.rows):
            for j in range(prod.cols):
                expect = s.divisors[i] if i == j and i < len(s.divisors) else 0
                assert prod.data[i][j] == expect
        for d1, d2 in zip(s.divisors, s.divisors[1:]):
            assert d2 % d1 == 0

    def test_medium_random_matrix_terminates_fast(self):
        rng = random.Random(5)
        a = IntMatrix.from_rows(
            [[rng.randrange(-9, 10) for _ in range(50)] for _ in range(50)]
        )
        divisors, rank = snf(a)
        assert rank == 50 and all(d > 0 for d in divisors)


def _det(m: IntMatrix) -> int:
    from fractions import Fraction

    n = m.rows
    mat = [[Fraction(x) for x in r] for r in m.data]
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
                f = mat[i][col] * inv
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[col])]
    assert det.denominator == 1
    return det.numerator


class TestCohomology:
    def test_multiplication_by_p(self):
        c = two_term_complex(IntMatrix.from_rows([[5]]))
        coh = cohomology(c)
        assert coh[0] == FgModule(0) and coh[1] == FgModule(0, (5,))

    def test_square_zero_shorthand(self):
        c = two_term_complex(IntMatrix.from_rows([[0]]))
        coh = cohomology(c)
        assert coh[0] == FgModule(1) and coh[1] == FgModule(1)

    def test_dd_nonzero_rejected(self):
        with pytest.raises(InvalidInput):
            FgComplex(
                0,
                (1, 1, 1),
                (IntMatrix.from_rows([[1]]), IntMatrix.from_rows([[1]])),
            )

    def test_oracle_agreement_on_random_complexes(self):
        rng = random.Random(20)
        for _ in range(150):
            c = random_complex(rng)
            coh = cohomology(c)
            oracle = cohomology_oracle(c)
            for i in c.degrees():
                free, torsion_counts = oracle[i]
                assert coh[i].free_rank == free
                for q, t in torsion_counts.items():
                    assert sum(1 for d in coh[i].divisors if d % q == 0) == t


class TestCone:
    def test_identity_cone_is_acyclic(self):
        c = random_complex(random.Random(3))
        cx, _, _ = cone(identity_map(c))
        assert all(m.is_zero for m in cohomology(cx).values())

    def test_scalar_cone_is_the_cokernel(self):
        z = FgComplex(0, (1,), ())
        cx, _, _ = cone(scalar_map(z, 5))
        coh = cohomology(cx)
        assert coh[0] == FgModule(0, (5,))

    def test_euler_characteristic(self):
        rng = random.Random(6)
        for _ in range(40):
            f = random_chain_map(rng)
            cx, _, _ = cone(f)
            chi = lambda c: sum((-1) ** i * c.dim(i) for i in c.degrees())
            assert chi(cx) == chi(f.target) - chi(f.source)

    def test_long_exact_sequence_over_fields(self):
        # exactness at every node of H(S) -> H(T) -> H(cone) -> H(S)[1],
        # checked by rank counting over Q and small prime fields
        rng = random.Random(42)
        for _ in range(60):
            f = random_chain_map(rng)
            cx, inc, proj = cone(f)
            for rank in (hml.rank_rational, lambda m: hml.rank_mod(m, 5)):
                for i in range(cx.lo, cx.hi + 1):
                    h_s = f.source.dim(i) - rank(f.source.d(i)) - rank(
                        f.source.d(i - 1)
                    )
                    h_t = f.target.dim(i) - rank(f.target.d(i)) - rank(
                        f.target.d(i - 1)
                    )
                    h_c = cx.dim(i) - rank(cx.d(i)) - rank(cx.d(i - 1))
                    h_s1 = f.source.dim(i + 1) - rank(f.source.d(i + 1)) - rank(
                        f.source.d(i)
                    )
                    # Euler count of the 4-periodic exact sequence piece:
                    # rank is additive along it
                    assert h_c <= h_t + h_s1
                    assert h_t <= h_s + h_c

    def test_triangle_maps_commute_with_differentials(self):
        rng = random.Random(17)
        for _ in range(20):
            f = random_chain_map(rng)
            cone(f)  # ChainMap constructors inside validate commuting


class TestTriangleComposite:
    def test_identities_vacuous(self):
        c = random_complex(random.Random(1))
        i = identity_map(c)
        assert triangle_composite_vanishing(i, i, i)

    def test_multiplication_chain(self):
        z = FgComplex(0, (1,), ())
        m = scalar_map(z, 3)
        assert triangle_composite_vanishing(m, m, m)

    def test_random_triples(self):
        rng = random.Random(23)
        for _ in range(100):
            a1, a2, a3 = random_endomorphism_triple(rng)
            assert triangle_composite_vanishing(a1, a2, a3)


class TestDecalage:
    def test_kills_pure_torsion(self):
        c = two_term_complex(IntMatrix.from_rows([[3]]))
        eta = decalage(c, 3, 1)
        assert all(m.is_zero for m in cohomology(eta).values())

    def test_free_terms_untouched(self):
        c = FgComplex(0, (2, 1), (IntMatrix.zero(1, 2),))
        eta = decalage(c, 5, 1)
        assert cohomology(eta) == cohomology(c)

    def test_matches_torsion_quotient_on_random_complexes(self):
        rng = random.Random(77)
        for _ in range(100):
            c = random_complex(rng)
            a = rng.choice((1, 2))
            p = rng.choice((2, 3))
            eta = decalage(c, p, a)
            ch, ce = cohomology(c), cohomology(eta)
            for i in c.degrees():
                assert ce[i] == ch[i].without_torsion_power(p, a)

    def test_negative_degrees_by_shift(self):
        c = two_term_complex(IntMatrix.from_rows([[9]]), lo=-2)
        eta = decalage(c, 3, 1)
        ch = cohomology(eta)
        assert ch[-1] == FgModule(0, (3,))  # 9-torsion with one power deleted


class TestSplitFreeTorsion:
    def test_direct_sum(self):
        pres = IntMatrix.from_rows([[0, 0], [0, 9]])
        assert split_free_torsion(pres, 3) == (1, [2])

    def test_torsion_free(self):
        assert split_free_torsion(IntMatrix.zero(3, 1), 5) == (3, [])

    def test_extension_instances_respect_the_bound(self):
        # 0 -> Z^2 -> M -> (p^3-torsion) -> 0 built from a random gluing:
        # M = Z^4 / relations embedding p^3 on two coordinates twisted into
        # the free block
        rng = random.Random(10)
        for _ in range(40):
            n_exp = 3
            rows = [
                [27, 0, rng.randrange(-5, 6), rng.randrange(-5, 6)],
                [0, 27, rng.randrange(-5, 6), rng.randrange(-5, 6)],
            ]
            pres = IntMatrix.from_rows([list(col) for col in zip(*rows)], 2)
            rank, exps = split_free_torsion(pres, 3)
            assert rank == 2
            assert all(e <= n_exp for e in exps)


class TestTwoTermCohomology:
    def test_scalar_twist(self):
        h0, h1 = two_term_cohomology(IntMatrix.identity(1), 3, 10, r=1, u=1)
        assert h0 == FgModule(0) and h1 == FgModule(0, (3,))

    def test_trivial_twist_rejected(self):
        with pytest.raises(PreconditionViolation):
            two_term_cohomology(IntMatrix.identity(2), 3, 10)

    def test_unit_eigenvalue_against_scalar_valuation(self):
        from ramcoh.exactval import one_plus_p_power_valuation

        op = IntMatrix.from_rows([[1 + 3]])
        h0, h1 = two_term_cohomology(op, 3, 10)
        v = one_plus_p_power_valuation(3, 1)
        assert h1 == FgModule(0, (3 ** int(v),))

    def test_precision_guard(self):
        op = IntMatrix.from_rows([[1 + 3**9]])
        with pytest.raises(PrecisionExhausted):
            two_term_cohomology(op, 3, 10)

    def test_precision_precondition(self):
        with pytest.raises(PreconditionViolation):
            two_term_cohomology(IntMatrix.identity(1), 3, 4, r=2)


class TestSerialization:
    def test_matrix_json_round_trip(self):
        a = IntMatrix.from_rows([[1, -2], [30, 4]])
        assert IntMatrix.from_json(a.to_json()) == a

    def test_shift_sign_convention(self):
        c = two_term_complex(IntMatrix.from_rows([[7]]))
        s = c.shift(1)
        assert s.lo == -1 and s.d(-1).data == ((-7,),)
        assert c.shift(2).d(-2).data == ((7,),)
