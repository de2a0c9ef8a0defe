import random
from fractions import Fraction

import pytest

from ramcoh import ramification as ram
from ramcoh import towers
from ramcoh.errors import InvalidInput, PreconditionViolation
from ramcoh.randgen import random_jump_sequence
from ramcoh.towers import JumpSequence, cyclotomic_jumps


class TestJumpSequence:
    def test_cyclotomic_shapes(self):
        seq = cyclotomic_jumps(3, 1)
        assert [seq.jump(n) for n in range(5)] == [-1, 1, 2, 3, 4]
        seq2 = cyclotomic_jumps(3, 2)
        assert [seq2.jump(n) for n in range(4)] == [-1, 2, 4, 6]

    def test_wild_base_change_rejected(self):
        with pytest.raises(PreconditionViolation):
            cyclotomic_jumps(5, 5)

    def test_json_round_trip(self):
        seq = JumpSequence(3, 2, (Fraction(-1), Fraction(1), Fraction(3)), 1)
        assert JumpSequence.from_json(seq.to_json()) == seq

    def test_inertia_exponent_from_leading_block(self):
        seq = JumpSequence(3, 1, (Fraction(-1), Fraction(-1), Fraction(0), Fraction(1)), 2)
        assert seq.inertia_exponent == 1
        assert cyclotomic_jumps(3, 1).inertia_exponent == 0

    def test_validation(self):
        with pytest.raises(InvalidInput):
            JumpSequence(3, 1, (Fraction(0), Fraction(1)), 1)  # u_0 != -1
        with pytest.raises(InvalidInput):
            JumpSequence(3, 1, (Fraction(-1), Fraction(2), Fraction(1)), 1)
        with pytest.raises(InvalidInput):
            # difference beyond the stabilization index must equal e_K
            JumpSequence(3, 1, (Fraction(-1), Fraction(1), Fraction(4)), 1)


class TestStepDifferent:
    def test_base_examples(self):
        assert towers.step_different(cyclotomic_jumps(3, 1), 1) == 4
        seq = cyclotomic_jumps(3, 2)
        assert towers.step_different(seq, 1) == 6
        assert towers.step_different(seq, 2) == 18

    def test_closed_form_over_first_ramified_base(self):
        for p in (3, 5):
            seq = cyclotomic_jumps(p, p - 1)
            for n in range(1, 5):
                assert towers.step_different(seq, n) == (p - 1) * p**n

    def test_unramified_step_rejected(self):
        seq = JumpSequence(
            3, 1, (Fraction(-1), Fraction(-1), Fraction(1), Fraction(2)), 2
        )
        with pytest.raises(PreconditionViolation):
            towers.step_different(seq, 1)

    def test_against_finite_level_different_transitivity(self):
        # reconstruct each finite level as a filtration profile and compare
        # the step with the difference of cumulative differents
        rng = random.Random(9)
        for _ in range(25):
            seq = random_jump_sequence(rng)
            prev = 0
            for n in range(1, 6):
                prof = towers.finite_level_profile(seq, n)
                cum = ram.different_lower(prof)
                e_step = seq.p if n > 1 else seq.p ** (1 - seq.inertia_exponent)
                assert towers.step_different(seq, n) == cum - e_step * prev
                assert Fraction(cum) == ram.different_upper(prof)
                prev = cum


class TestSufficiency:
    def test_boundary_towers_have_zero_slack(self):
        for p in (3, 5):
            for e in (1, p - 1):
                seq = cyclotomic_jumps(p, e) if e > 1 else cyclotomic_jumps(p, 1)
                ok, slacks, tail = towers.sufficiency_report(seq, 5)
                assert ok
                if e == p - 1 or e == 1:
                    assert all(s == 0 for s in slacks) and tail == 0

    def test_unramified_level_fails(self):
        seq = JumpSequence(
            3, 1, (Fraction(-1), Fraction(-1), Fraction(1), Fraction(2)), 2
        )
        assert not towers.is_sufficiently_ramified(seq, 3)

    def test_monotone_under_tame_compose(self):
        rng = random.Random(31)
        checked = 0
        for _ in range(50):
            seq = random_jump_sequence(rng)
            if not towers.is_sufficiently_ramified(seq, 5):
                continue
            checked += 1
            e = rng.choice([x for x in (2, 3, 4, 5) if x % seq.p != 0])
            scaled_jumps = ram.tame_compose(
                [seq.jump(n) for n in range(len(seq.prefix))], e, seq.p
            )
            scaled = JumpSequence(
                seq.p, seq.e_K * e, tuple(scaled_jumps), seq.n_star
            )
            assert towers.is_sufficiently_ramified(scaled, 5)
        assert checked >= 10

    def test_symbolic_tail_is_a_proof(self):
        # a sequence whose slack would first fail far beyond any scan
        seq = JumpSequence(3, 1, (Fraction(-1), Fraction(0), Fraction(1)), 1)
        ok, slacks, tail = towers.sufficiency_report(seq, 3)
        assert not ok and tail < 0


class TestStabilizationShift:
    def test_already_sufficient_is_level_zero(self):
        for seq in (cyclotomic_jumps(3, 1), cyclotomic_jumps(3, 2)):
            level, shifted = towers.stabilization_shift(seq)
            assert level == 0 and shifted == seq

    def test_unramified_head_is_skipped(self):
        seq = JumpSequence(
            3, 1, (Fraction(-1), Fraction(-1), Fraction(1), Fraction(2)), 2
        )
        level, shifted = towers.stabilization_shift(seq)
        assert level == 1
        assert [shifted.jump(n) for n in range(4)] == [-1, 1, 2, 3]
        assert towers.is_sufficiently_ramified(shifted, 5)

    def test_random_sequences_stabilize(self):
        rng = random.Random(13)
        for _ in range(50):
            seq = random_jump_sequence(rng)
            level, shifted = towers.stabilization_shift(seq)
            assert towers.is_sufficiently_ramified(shifted, 5)
            if level == 0:
                assert shifted == seq
            else:
                r = seq.inertia_exponent
                assert shifted.e_K == seq.e_K * seq.p ** max(level - r, 0)
