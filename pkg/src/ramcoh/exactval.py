"""Exact rational valuations with a tagged +infinity.

Every valuation in this package is an exact `fractions.Fraction` or the
distinguished element INFINITY; floats never appear.  The normalization is
absolute: v(p) = 1, so the valuation of a uniformizer of a field with
absolute ramification index e is 1/e.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import ceil, gcd
from typing import Dict, Iterable, Tuple, Union

from .errors import InvalidInput, PreconditionViolation

Rational = Union[int, Fraction]

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n < 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def require_prime(p: int) -> None:
    if not is_prime(p):
        raise ValueError(f"p = {p} is not prime")


class ExtendedRational:
    """A rational number or +infinity.

    +infinity absorbs addition and dominates every finite value in
    comparisons.  Instances are immutable and hashable.
    """

    __slots__ = ("_frac",)

    def __init__(self, value: Rational | None = None):
        # value=None builds +infinity; use the INFINITY constant instead.
        self._frac = None if value is None else Fraction(value)

    @property
    def is_infinite(self) -> bool:
        return self._frac is None

    @property
    def finite(self) -> Fraction:
        if self._frac is None:
            raise ValueError("value is +infinity")
        return self._frac

    def _key(self):
        return (1,) if self._frac is None else (0, self._frac)

    def __eq__(self, other) -> bool:
        other = _coerce(other)
        return other is not NotImplemented and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._frac is None:
            return False
        if other._frac is None:
            return True
        return self._frac < other._frac

    def __le__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self == other or self < other

    def __gt__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other < self

    def __ge__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other <= self

    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._frac is None or other._frac is None:
            return INFINITY
        return ExtendedRational(self._frac + other._frac)

    __radd__ = __add__

    def __neg__(self):
        if self._frac is None:
            raise ValueError("cannot negate +infinity")
        return ExtendedRational(-self._frac)

    def __mul__(self, other: Rational):
        k = Fraction(other)
        if self._frac is None:
            if k <= 0:
                raise ValueError("infinity times a nonpositive scalar")
            return INFINITY
        return ExtendedRational(self._frac * k)

    __rmul__ = __mul__

    def __str__(self) -> str:
        if self._frac is None:
            return "inf"
        return f"{self._frac.numerator}/{self._frac.denominator}"

    def __repr__(self) -> str:
        return f"ExtendedRational({self})"

    @staticmethod
    def parse(s: str) -> "ExtendedRational":
        s = s.strip()
        if s == "inf":
            return INFINITY
        return ExtendedRational(Fraction(s))


INFINITY = ExtendedRational()


def _coerce(x) -> "ExtendedRational":
    if isinstance(x, ExtendedRational):
        return x
    if isinstance(x, (int, Fraction)):
        return ExtendedRational(x)
    return NotImplemented


def vp(x: Rational, p: int) -> ExtendedRational:
    """Exact p-adic valuation of a rational; vp(0) = +infinity."""
    require_prime(p)
    x = Fraction(x)
    if x == 0:
        return INFINITY
    return ExtendedRational(_int_vp(x.numerator, p) - _int_vp(x.denominator, p))


def _int_vp(n: int, p: int) -> int:
    n = abs(n)
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def factorial_valuation(n: int, p: int) -> Tuple[Fraction, Fraction, bool]:
    """Legendre's value v_p(n!) next to the bound (n-1)/(p-1).

    Returns (value, bound, value <= bound); the inequality holds for every
    n >= 1 and is sharp exactly at the powers of p.
    """
    require_prime(p)
    if n < 0:
        raise ValueError("n must be nonnegative")
    v = 0
    q = p
    while q <= n:
        v += n // q
        q *= p
    bound = Fraction(n - 1, p - 1)
    return Fraction(v), bound, Fraction(v) <= bound


def one_plus_p_power_valuation(p: int, t: int) -> Fraction:
    """v_p((1+p)^t - 1) for an odd prime p and t != 0.

    Computed two ways that must agree: the closed form 1 + v_p(t), and (for
    |t| <= 64) direct big-integer expansion.  Finiteness certifies that
    multiplication by (1+p)^t - 1 is invertible on Q_p.
    """
    require_prime(p)
    if p == 2:
        raise ValueError("p must be odd")
    if t == 0:
        raise ValueError("t = 0 is the excluded degenerate case")
    closed = Fraction(1 + _int_vp(t, p))
    if abs(t) <= 64:
        # (1+p)^(-|t|) - 1 is a unit multiple of (1+p)^{|t|} - 1.
        direct = Fraction(_int_vp((1 + p) ** abs(t) - 1, p))
        if direct != closed:
            raise AssertionError(
                f"valuation branches disagree at p={p}, t={t}: {direct} vs {closed}"
            )
    return closed


def unit_power_image(p: int, i: int, precision: int) -> bool:
    """Whether p-th powers of 1 + p^i Z_p fill out 1 + p^(i+1) Z_p exactly.

    Works with the base field Q_p, where the hypothesis is i > 1/(p-1).
    The check enumerates both sides modulo p^precision.
    """
    require_prime(p)
    if i * (p - 1) <= 1:
        raise PreconditionViolation(f"need i > 1/(p-1); got i={i}, p={p}")
    if precision < i + 2:
        raise PreconditionViolation("precision must be at least i + 2")
    q = p**precision
    powers = {pow(1 + a * p**i, p, q) for a in range(p ** (precision - i))}
    target = {(1 + b * p ** (i + 1)) % q for b in range(p ** (precision - i - 1))}
    return powers == target


# ---------------------------------------------------------------------------
# Truncated power-series windows on closed balls
# ---------------------------------------------------------------------------

MAX_WINDOW_VARS = 3
MAX_WINDOW_DEGREE = 64


@dataclass(frozen=True)
class SeriesWindow:
    """Coefficient-valuation window of a bounded series on a closed ball.

    `coeffs` maps multi-indices (tuples of length num_vars) to coefficient
    valuations.  Membership in the integral sections over the ball of radius
    |p|^s_exp means every stored valuation is >= -|i| * s_exp.
    """

    p: int
    num_vars: int
    s_exp: Fraction
    degree_cutoff: int
    coeffs: Dict[Tuple[int, ...], ExtendedRational] = field(default_factory=dict)

    def __post_init__(self):
        require_prime(self.p)
        if not (1 <= self.num_vars <= MAX_WINDOW_VARS):
            raise InvalidInput(f"num_vars must be 1..{MAX_WINDOW_VARS}")
        if self.degree_cutoff < 0 or self.degree_cutoff > MAX_WINDOW_DEGREE:
            raise InvalidInput(f"degree_cutoff must be 0..{MAX_WINDOW_DEGREE}")
        if Fraction(self.s_exp) <= 0:
            raise InvalidInput("s_exp must be positive")
        object.__setattr__(self, "s_exp", Fraction(self.s_exp))

    def validate(self) -> None:
        """Raise InvalidInput when the boundedness invariant is broken."""
        for idx, val in self.coeffs.items():
            if len(idx) != self.num_vars or any(e < 0 for e in idx):
                raise InvalidInput(f"bad multi-index {idx}")
            total = sum(idx)
            if total > self.degree_cutoff:
                raise InvalidInput(f"multi-index {idx} beyond degree cutoff")
            if val < -total * self.s_exp:
                raise InvalidInput(
                    f"coefficient at {idx} has valuation {val}, below -|i|*s_exp"
                )


def span_check(window: SeriesWindow, j: int, r_exp: Fraction, m: int) -> bool:
    """The two coefficient inequalities behind the restriction-image claim.

    A monomial with |i| >= m must die modulo the j-th uniformizer power after
    the radius rescaling; one with |i| < m must have valuation > -1 (integral
    after the unit normalization of a discrete value group).
    """
    r_exp = Fraction(r_exp)
    for idx, val in window.coeffs.items():
        total = sum(idx)
        if total >= m:
            if val + total * r_exp < j:
                return False
        else:
            if not val > -1:
                return False
    return True


def ball_restriction_image(
    p: int,
    j: int,
    j_prime: int,
    r_exp: Fraction,
    window: SeriesWindow,
) -> Tuple[int, bool]:
    """Degree threshold M of the restriction image, plus its verification.

    Restriction maps sections over the ball of radius |pi|^s_exp, reduced
    mod the j'-th uniformizer power, into sections over the smaller ball of
    radius |pi|^r_exp mod the j-th power.  The image is spanned by the
    monomials of total degree < M with M = ceil((1+j)/r_exp); `verified`
    says the window's coefficients satisfy the two inequalities that prove
    it.
    """
    require_prime(p)
    r_exp = Fraction(r_exp)
    if j < 0 or j_prime < j:
        raise PreconditionViolation("need 0 <= j <= j'")
    if r_exp <= 0:
        raise PreconditionViolation("r_exp must be positive")
    if window.p != p:
        raise InvalidInput("window has a different residue characteristic")
    if window.s_exp > Fraction(r_exp, j + 1):
        raise PreconditionViolation(
            f"window lives on too small a ball: s_exp={window.s_exp} > r_exp/(j+1)"
        )
    window.validate()
    m = ceil(Fraction(1 + j, r_exp))
    return m, span_check(window, j, r_exp, m)


def random_window(
    p: int,
    num_vars: int,
    s_exp: Fraction,
    degree_cutoff: int,
    rng: random.Random,
    density: float = 0.5,
) -> SeriesWindow:
    """A pseudorandom valid window: minimal admissible valuation plus jitter."""
    s_exp = Fraction(s_exp)
    coeffs: Dict[Tuple[int, ...], ExtendedRational] = {}
    for idx in itertools.product(range(degree_cutoff + 1), repeat=num_vars):
        total = sum(idx)
        if total > degree_cutoff:
            continue
        if rng.random() > density:
            continue
        floor_val = -total * s_exp
        jitter = rng.randrange(0, 3)
        coeffs[idx] = ExtendedRational(_ceil_frac(floor_val) + jitter)
    return SeriesWindow(p, num_vars, s_exp, degree_cutoff, coeffs)


def adversarial_witness(
    p: int, j: int, r_exp: Fraction, degree_cutoff: int
) -> SeriesWindow:
    """A valid window falsifying the restriction claim for M - 1.

    Carries a single unit coefficient at total degree M - 1 scaled to the
    extreme admissible valuation -(M-1) * s_exp at s_exp = r_exp/(j+1).
    """
    r_exp = Fraction(r_exp)
    s_exp = Fraction(r_exp, j + 1)
    m = ceil(Fraction(1 + j, r_exp))
    if m - 1 > degree_cutoff:
        raise InvalidInput("cutoff too small to place the witness")
    coeffs = {(m - 1,): ExtendedRational(-(m - 1) * s_exp)}
    return SeriesWindow(p, 1, s_exp, degree_cutoff, coeffs)


def _ceil_frac(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)
