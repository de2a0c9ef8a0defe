"""Jump sequences of ramified Z_p-extensions of a local field.

The upper-numbering filtration of such an extension is described by a
non-decreasing sequence u_0 <= u_1 <= ... that is eventually arithmetic
with common difference the absolute ramification index of the base.  We
store an explicit prefix plus the stabilization index.

Convention: u_0 = -1 always, and the inertia subgroup is the r-th power
of the full group exactly when the first r+1 entries equal -1 (r = 0 for
a totally ramified tower).

A phrase note: one of the source existence statements speaks of the
cyclotomic tower "over L" where the surrounding sentence introduces L as
a subextension; this module follows the only consistent reading (the
cyclotomic tower of the ground field, composed up).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .errors import InvalidInput, PreconditionViolation
from .exactval import require_prime
from .ramification import (
    FiltrationProfile,
    herbrand_psi,
    profile_from_upper_segments,
)


@dataclass(frozen=True)
class JumpSequence:
    """Eventually-arithmetic upper-numbering jumps of a Z_p-tower.

    jumps(n) equals prefix[n] for n < len(prefix) and continues with
    common difference e_K afterwards; n_star is a valid (not necessarily
    minimal) stabilization index: u_{n+1} = u_n + e_K for all n >= n_star,
    and u_{n_star} >= 0.
    """

    p: int
    e_K: int
    prefix: Tuple[Fraction, ...]
    n_star: int

    def __post_init__(self):
        require_prime(self.p)
        if self.e_K < 1:
            raise InvalidInput("e_K must be a positive integer")
        pre = tuple(Fraction(u) for u in self.prefix)
        if not pre or pre[0] != -1:
            raise InvalidInput("u_0 must equal -1")
        for a, b in zip(pre, pre[1:]):
            if b < a:
                raise InvalidInput("jumps must be non-decreasing")
        for u in pre:
            if u != -1 and u < 0:
                raise InvalidInput("jumps are -1 or >= 0")
        if not (1 <= self.n_star <= len(pre) - 1):
            raise InvalidInput("n_star must index into the prefix")
        if pre[self.n_star] < 0:
            raise InvalidInput("u_{n_star} must be >= 0")
        for n in range(self.n_star, len(pre) - 1):
            if pre[n + 1] - pre[n] != self.e_K:
                raise InvalidInput(
                    "differences beyond n_star must all equal e_K"
                )
        object.__setattr__(self, "prefix", pre)

    def jump(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("n must be nonnegative")
        if n < len(self.prefix):
            return self.prefix[n]
        return self.prefix[-1] + self.e_K * (n - len(self.prefix) + 1)

    @property
    def inertia_exponent(self) -> int:
        """r with inertia = p^r-th subgroup: one less than the count of
        leading -1 entries."""
        r = 0
        while self.jump(r + 1) == -1:
            r += 1
        return r

    def to_json(self) -> str:
        return json.dumps(
            {
                "p": self.p,
                "eK": self.e_K,
                "prefix": [str(u) for u in self.prefix],
                "Nstar": self.n_star,
            }
        )

    @classmethod
    def from_json(cls, s: str) -> "JumpSequence":
        d = json.loads(s)
        return cls(
            d["p"],
            d["eK"],
            tuple(Fraction(u) for u in d["prefix"]),
            d["Nstar"],
        )


def cyclotomic_jumps(p: int, e_L: int) -> JumpSequence:
    """Jumps of the cyclotomic tower composed up a tame base of absolute
    index e_L: -1, e_L, 2 e_L, 3 e_L, ..."""
    require_prime(p)
    if e_L < 1:
        raise ValueError("e_L must be positive")
    if e_L % p == 0:
        raise PreconditionViolation(f"base change is wild: p = {p} divides e_L")
    return JumpSequence(p, e_L, (Fraction(-1), Fraction(e_L)), 1)


def step_different(seq: JumpSequence, n: int) -> Fraction:
    """Different valuation of the n-th step of the tower, in the
    uniformizer of the n-th field:

        (e_rel / p^n) * sum_{k<n} (u_{k+1} - u_k)(p^{k+1} - p^k)

    with e_rel = p^(n - r) read off the leading -1 block.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    r = seq.inertia_exponent
    if n <= r:
        raise PreconditionViolation(f"step {n} is unramified (inertia index {r})")
    p = seq.p
    total = Fraction(0)
    for k in range(n):
        total += (seq.jump(k + 1) - seq.jump(k)) * (p ** (k + 1) - p**k)
    return total / p**r


def sufficiency_bound(seq: JumpSequence, n: int) -> Fraction:
    return Fraction(seq.e_K * (seq.p**n - 1) + (seq.p - 1))


def sufficiency_report(seq: JumpSequence, n_max: int):
    """Level-by-level slacks of the step-different lower bound, plus the
    symbolic tail certificate.

    Returns (ok, level_slacks, tail_slack).  The tail check compares the
    two forms, both linear in p^n once the jumps stabilize: with r = 0
    they share the slope e_K, so a single intercept comparison certifies
    every level beyond the scan.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    r = seq.inertia_exponent
    if r > 0:
        # some finite step is unramified, violating the definition
        return False, [], None
    p, e = seq.p, seq.e_K
    slacks: List[Fraction] = []
    ok = True
    for n in range(1, max(n_max, seq.n_star) + 1):
        slack = step_different(seq, n) - sufficiency_bound(seq, n)
        slacks.append(slack)
        ok = ok and slack >= 0
    # Tail: for n >= n_star, D(n) = C + e(p^n - p^{n_star}), bound =
    # e p^n + (p - 1 - e); compare intercepts.
    c = sum(
        (seq.jump(k + 1) - seq.jump(k)) * (p ** (k + 1) - p**k)
        for k in range(seq.n_star)
    )
    tail_slack = c - e * p**seq.n_star - (p - 1 - e)
    ok = ok and tail_slack >= 0
    return ok, slacks[:n_max], Fraction(tail_slack)


def is_sufficiently_ramified(seq: JumpSequence, n_max: int) -> bool:
    """True when every step different meets the lower bound
    e_K (p^n - 1) + (p - 1), checked explicitly up to n_max and certified
    symbolically for the arithmetic tail."""
    ok, _, _ = sufficiency_report(seq, n_max)
    return ok


def finite_level_upper_segments(seq: JumpSequence, n: int):
    """Upper step data of the degree-p^n quotient of the tower."""
    segs = []
    for k in range(n):
        a, b = seq.jump(k), seq.jump(k + 1)
        if b > a:
            segs.append((a, b, seq.p ** (n - k)))
    top = seq.jump(n)
    start = max(top, Fraction(0)) if segs else Fraction(-1)
    segs.append((start, start + 1, 1))
    return segs


def finite_level_profile(seq: JumpSequence, n: int) -> FiltrationProfile:
    """Lower-numbering profile of the n-th finite level over the base."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return profile_from_upper_segments(
        finite_level_upper_segments(seq, n), seq.p**n
    )


def rebase(seq: JumpSequence, level: int) -> JumpSequence:
    """Jump sequence of the same tower over its `level`-th finite layer.

    New jumps are the old ones pushed through the inverse Herbrand
    transform of the finite quotient (lower numbering restricts to the
    subgroup; the finite transform converts back to upper numbering).
    """
    if level == 0:
        return seq
    for m in range(level + 1):
        if seq.jump(m).denominator != 1:
            raise InvalidInput("rebase requires integer jumps")
    psi = herbrand_psi(finite_level_profile(seq, level))
    r = seq.inertia_exponent
    new_e = seq.e_K * seq.p ** max(level - r, 0)
    new_n_star = max(1, seq.n_star - level)
    count = max(new_n_star + 2, 3)
    prefix = [Fraction(-1)]
    prefix += [psi(seq.jump(level + m)) for m in range(1, count)]
    return JumpSequence(seq.p, new_e, tuple(prefix), new_n_star)


def stabilization_shift(seq: JumpSequence) -> Tuple[int, JumpSequence]:
    """Smallest N with the tower over level N sufficiently ramified,
    together with that rebased sequence.

    A valid N exists at max(n_star, r) + 1 at the latest, so the scan is
    provably bounded.
    """
    cap = max(seq.n_star, seq.inertia_exponent) + 1
    for level in range(cap + 1):
        shifted = rebase(seq, level)
        if is_sufficiently_ramified(shifted, max(5, shifted.n_star + 1)):
            return level, shifted
    raise AssertionError("no stabilization level found below the provable cap")
