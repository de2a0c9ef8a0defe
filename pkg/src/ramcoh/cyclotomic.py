"""Exact truncated arithmetic in the tower of p-power cyclotomic fields.

Level k is the field generated by a primitive p^k-th root of unity zeta;
elements are integer polynomials in zeta of degree < (p-1)p^(k-1) with
coefficients mod p^m.  The tower sits over the base level 1, where it is
maximally ramified in the sense of the step-different lower bound, with
equality at every level (verified by the towers module, not assumed).

Valuations are computed from the expansion in powers of the uniformizer
zeta - 1: the coefficient valuations have pairwise distinct fractional
parts, so the minimum term valuation is exact whenever it sits safely
below the working precision.  (The equivalent norm/resultant formulation
is kept as a test oracle.)

p = 2 is excluded: its unit group needs the level-2 congruence subgroup
and different constants throughout; the symbolic ledger covers that case.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from .errors import PrecisionExhausted, PreconditionViolation
from .exactval import ExtendedRational, INFINITY, require_prime
from .towers import JumpSequence, cyclotomic_jumps, is_sufficiently_ramified, step_different

PRECISION_GUARD = 2
MAX_PRECISION = 96


def field_degree(p: int, level: int) -> int:
    return (p - 1) * p ** (level - 1)


@lru_cache(maxsize=None)
def _reduction_table(p: int, level: int):
    """Expansion of each zeta^e, 0 <= e < p^level, in the power basis.

    Uses the single sparse relation zeta^d = -(zeta^(t) + zeta^(t + q) +
    ... ) with d the degree and q = p^(level-1): exponents d <= e < p^level
    reduce in one step to basis monomials.
    """
    d = field_degree(p, level)
    q = p ** (level - 1)
    pk = p**level
    table: List[Tuple[Tuple[int, int], ...]] = []
    for e in range(pk):
        if e < d:
            table.append(((e, 1),))
        else:
            t = e - d
            table.append(tuple((t + j * q, -1) for j in range(p - 1)))
    return table


@dataclass(frozen=True)
class CycElement:
    """Integer-coefficient element of cyclotomic level `level`, known
    mod p^precision."""

    p: int
    level: int
    precision: int
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        require_prime(self.p)
        if self.p == 2:
            raise PreconditionViolation("p = 2 is outside the lab's scope")
        if self.level < 1:
            raise ValueError("level must be >= 1")
        if self.precision < 1:
            raise ValueError("precision must be >= 1")
        d = field_degree(self.p, self.level)
        if len(self.coeffs) != d:
            raise ValueError(f"need exactly {d} coefficients")
        q = self.p**self.precision
        object.__setattr__(self, "coeffs", tuple(c % q for c in self.coeffs))

    # -- constructors ---------------------------------------------------

    @classmethod
    def zeta(cls, p: int, level: int, precision: int) -> "CycElement":
        d = field_degree(p, level)
        return cls(p, level, precision, tuple(int(i == 1) for i in range(d)))

    @classmethod
    def scalar(cls, p: int, level: int, precision: int, value: int) -> "CycElement":
        d = field_degree(p, level)
        return cls(p, level, precision, (value,) + (0,) * (d - 1))

    @classmethod
    def random(
        cls, p: int, level: int, precision: int, rng: random.Random
    ) -> "CycElement":
        d = field_degree(p, level)
        q = p**precision
        return cls(p, level, precision, tuple(rng.randrange(q) for _ in range(d)))

    def with_precision(self, precision: int) -> "CycElement":
        """Reinterpret the stored integer coefficients at a different
        working precision.  Raising the precision is exact for elements
        whose coefficients were chosen as integers (samples); use with
        care on computed values."""
        return CycElement(self.p, self.level, precision, self.coeffs)

    # -- ring operations --------------------------------------------------

    def _binop(self, other: "CycElement", fn) -> "CycElement":
        if (self.p, self.level) != (other.p, other.level):
            raise ValueError("level mismatch")
        m = min(self.precision, other.precision)
        q = self.p**m
        return CycElement(
            self.p,
            self.level,
            m,
            tuple(fn(a, b) % q for a, b in zip(self.coeffs, other.coeffs)),
        )

    def __add__(self, other: "CycElement") -> "CycElement":
        return self._binop(other, lambda a, b: a + b)

    def __sub__(self, other: "CycElement") -> "CycElement":
        return self._binop(other, lambda a, b: a - b)

    def scale(self, c: int) -> "CycElement":
        q = self.p**self.precision
        return CycElement(
            self.p, self.level, self.precision, tuple(c * a % q for a in self.coeffs)
        )

    def is_zero_at_precision(self) -> bool:
        return all(c == 0 for c in self.coeffs)


def galois_act(x: CycElement, a: int) -> CycElement:
    """The automorphism zeta -> zeta^a, for a coprime to p."""
    if a % x.p == 0:
        raise PreconditionViolation("a must be coprime to p")
    pk = x.p**x.level
    a %= pk
    table = _reduction_table(x.p, x.level)
    d = field_degree(x.p, x.level)
    out = [0] * d
    for i, c in enumerate(x.coeffs):
        if c:
            for idx, sign in table[(a * i) % pk]:
                out[idx] += sign * c
    q = x.p**x.precision
    return CycElement(x.p, x.level, x.precision, tuple(v % q for v in out))


def sigma(x: CycElement) -> CycElement:
    """The canonical topological generator over the base level: zeta ->
    zeta^(1+p)."""
    return galois_act(x, 1 + x.p)


def trace_step(x: CycElement) -> CycElement:
    """Trace one level down: the sum of the p conjugates under zeta ->
    zeta^(1 + t p^(level-1)).

    The result is supported on exponents divisible by p (checked), and is
    re-expressed in the basis one level below.
    """
    if x.level < 2:
        raise ValueError("trace_step needs level >= 2")
    p, k = x.p, x.level
    step = p ** (k - 1)
    total = galois_act(x, 1)
    for t in range(1, p):
        total = total + galois_act(x, 1 + t * step)
    for i, c in enumerate(total.coeffs):
        if i % p != 0 and c != 0:
            raise AssertionError("trace landed outside the subfield")
    d_low = field_degree(p, k - 1)
    coeffs = tuple(total.coeffs[p * j] for j in range(d_low))
    return CycElement(p, k - 1, total.precision, coeffs)


def divide_by_p(x: CycElement) -> CycElement:
    """Exact division by p; costs one digit of precision."""
    if x.precision < 2:
        raise PrecisionExhausted("no precision left for division by p")
    for c in x.coeffs:
        if c % x.p != 0:
            raise PrecisionExhausted("division by p is not exact here")
    return CycElement(
        x.p, x.level, x.precision - 1, tuple(c // x.p for c in x.coeffs)
    )


def normalized_trace(x: CycElement) -> CycElement:
    """p^(-n) times the trace down to the base level (n = level - 1)."""
    y = x
    while y.level > 1:
        y = divide_by_p(trace_step(y))
    return y


def lift_to_level(x: CycElement, level: int) -> CycElement:
    """Inclusion into a higher level: zeta_low = zeta^(p^(level - x.level))."""
    if level < x.level:
        raise ValueError("target level below the element's level")
    if level == x.level:
        return x
    stride = x.p ** (level - x.level)
    d = field_degree(x.p, level)
    out = [0] * d
    for j, c in enumerate(x.coeffs):
        out[j * stride] = c
    return CycElement(x.p, level, x.precision, tuple(out))


# ---------------------------------------------------------------------------
# Valuations
# ---------------------------------------------------------------------------


def _uniformizer_coefficients(x: CycElement) -> List[int]:
    """Coefficients of the expansion in powers of (zeta - 1), i.e. of the
    polynomial f(1 + y); the degree stays below the field degree, so no
    reduction against the minimal polynomial is needed."""
    q = x.p**x.precision
    out: List[int] = []  # out[j] = coefficient of y^j
    for c in reversed(x.coeffs):  # Horner: out <- out * (1 + y) + c
        new = [0] * (len(out) + 1)
        for j, v in enumerate(out):
            new[j] = (new[j] + v) % q
            new[j + 1] = (new[j + 1] + v) % q
        new[0] = (new[0] + c) % q
        out = new
    return out


def valuation_with_flag(x: CycElement) -> Tuple[ExtendedRational, bool]:
    """(value, exact): exact valuations sit strictly below precision minus
    the guard; otherwise the value is only a lower bound (= precision)."""
    d = field_degree(x.p, x.level)
    coeffs = _uniformizer_coefficients(x)
    m = x.precision
    best: Optional[Fraction] = None
    for j, c in enumerate(coeffs):
        if c == 0:
            continue
        v = 0
        while c % x.p == 0:
            c //= x.p
            v += 1
        cand = v + Fraction(j, d)
        if best is None or cand < best:
            best = cand
    if best is not None and best < m - PRECISION_GUARD:
        return ExtendedRational(best), True
    return ExtendedRational(Fraction(m)), False


def valuation(x: CycElement) -> ExtendedRational:
    """Absolute valuation normalized by v(p) = 1; exact for elements whose
    valuation sits below the precision guard, else PrecisionExhausted."""
    val, exact = valuation_with_flag(x)
    if not exact:
        raise PrecisionExhausted(
            f"valuation >= {x.precision - PRECISION_GUARD} cannot be certified "
            f"at precision {x.precision}"
        )
    return val


# ---------------------------------------------------------------------------
# The verification harness for the trace inequalities
# ---------------------------------------------------------------------------


def tower_jumps(p: int) -> JumpSequence:
    """Jump sequence of this tower over its base: -1, p-1, 2(p-1), ..."""
    return cyclotomic_jumps(p, p - 1)


class _SlackTally:
    def __init__(self, name: str):
        self.name = name
        self.checked = 0
        self.violations = 0
        self.min_slack: Optional[Fraction] = None

    def record(self, slack: Optional[Fraction]) -> None:
        """slack = lhs - rhs of the valuation inequality; None means the
        left side exceeds working precision (an automatic pass)."""
        self.checked += 1
        if slack is None:
            return
        if slack < 0:
            self.violations += 1
        if self.min_slack is None or slack < self.min_slack:
            self.min_slack = slack

    def summary(self) -> Dict[str, object]:
        return {
            "checked": self.checked,
            "violations": self.violations,
            "min_slack": "inf" if self.min_slack is None else str(self.min_slack),
        }


def _slack(lhs: CycElement, bound: Fraction) -> Optional[Fraction]:
    """v(lhs) - bound, or None when lhs vanishes past the precision guard
    while still safely above the bound."""
    val, exact = valuation_with_flag(lhs)
    if exact:
        return val.finite - bound
    if val.finite - PRECISION_GUARD >= bound:
        return None
    raise PrecisionExhausted("inequality undecidable at this precision")


def verify_trace_bounds(
    p: int,
    n_max: int,
    samples: int,
    precision: int = 12,
    seed: int = 1,
) -> Dict[str, object]:
    """Check the four valuation inequalities of the normalized trace on
    pseudorandom elements of every tower level up to n_max.

    For x at tower level n (cyclotomic level n+1), with t the normalized
    trace to the base and t_n the single normalized step:

      1. v(t(x))   >= v(x) - 1/(p-1)
      2. v(t_n(x)) >= v(x) - 1/p^n
      3. v(x - t(x)) >= v(sigma x - x) - 1 - 1/(p(p-1))
      4. each plain trace step obeys the floor bound
         v_rel(tr(y)) >= floor((v_rel(y) + d_step) / p)
         in relative valuations, with d_step the step different.

    Samples are drawn with integer coefficients below p^precision; when a
    valuation cannot be certified the same element is retried at doubled
    working precision (the element itself is exact integer data).
    """
    require_prime(p)
    if p == 2:
        raise PreconditionViolation("p = 2 is outside the lab's scope")
    seq = tower_jumps(p)
    if not is_sufficiently_ramified(seq, n_max):
        raise AssertionError("tower failed its ramification certificate")

    rng = random.Random(seed)
    tallies = {
        "trace_contraction": _SlackTally("trace_contraction"),
        "level_trace_contraction": _SlackTally("level_trace_contraction"),
        "trace_vs_sigma": _SlackTally("trace_vs_sigma"),
        "step_trace_floor": _SlackTally("step_trace_floor"),
    }
    retries = 0

    for n in range(1, n_max + 1):
        level = n + 1
        for _ in range(samples):
            base = CycElement.random(p, level, precision, rng)
            m_work = precision
            while True:
                try:
                    _check_one(base.with_precision(m_work), n, seq, tallies)
                    break
                except PrecisionExhausted:
                    m_work *= 2
                    retries += 1
                    if m_work > MAX_PRECISION:
                        raise

    report: Dict[str, object] = {
        "p": p,
        "n_max": n_max,
        "samples_per_level": samples,
        "precision": precision,
        "seed": seed,
        "precision_retries": retries,
        "tower_sufficiently_ramified": True,
        "inequalities": {k: t.summary() for k, t in tallies.items()},
        "total_violations": sum(t.violations for t in tallies.values()),
    }
    return report


def _check_one(
    x: CycElement, n: int, seq: JumpSequence, tallies: Dict[str, _SlackTally]
) -> None:
    p = x.p
    v_x, exact = valuation_with_flag(x)
    if not exact:
        raise PrecisionExhausted("sample valuation itself uncertifiable")
    vx = v_x.finite

    t_x = normalized_trace(x)
    tallies["trace_contraction"].record(_slack(t_x, vx - Fraction(1, p - 1)))

    t_n_x = divide_by_p(trace_step(x))
    tallies["level_trace_contraction"].record(
        _slack(t_n_x, vx - Fraction(1, p**n))
    )

    diff = x - lift_to_level(t_x, x.level)
    sig = sigma(x) - x
    v_sig, sig_exact = valuation_with_flag(sig)
    bound_shift = Fraction(1) + Fraction(1, p * (p - 1))
    if sig_exact:
        tallies["trace_vs_sigma"].record(_slack(diff, v_sig.finite - bound_shift))
    else:
        # sigma fixes x past precision; then x - t(x) must vanish as well
        if diff.is_zero_at_precision():
            tallies["trace_vs_sigma"].record(None)
        else:
            raise PrecisionExhausted("sigma-difference uncertifiable")

    # floor bound on each plain trace step, in relative valuations
    y = x
    while y.level >= 2:
        tr = trace_step(y)
        v_y, ey = valuation_with_flag(y)
        v_tr, etr = valuation_with_flag(tr)
        if not ey:
            raise PrecisionExhausted("step-floor input uncertifiable")
        e_top = field_degree(p, y.level)
        e_low = field_degree(p, y.level - 1)
        d_step = step_different(seq, y.level - 1)
        if d_step.denominator != 1:
            raise AssertionError("step different must be an integer here")
        rel_bound = (e_top * v_y.finite + d_step) // p  # floor of a Fraction
        if etr:
            slack = e_low * v_tr.finite - rel_bound
            tallies["step_trace_floor"].record(Fraction(slack))
        elif e_low * (v_tr.finite - PRECISION_GUARD) >= rel_bound:
            tallies["step_trace_floor"].record(None)
        else:
            raise PrecisionExhausted("step-floor trace uncertifiable")
        y = tr
