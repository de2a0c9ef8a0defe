"""Ramification filtrations of finite Galois extensions of local fields.

A filtration is stored as the step function u -> #G_u on integers u >= -1
(the value at a real u is read at ceil(u)).  Orders only: every formula in
scope (Herbrand transforms, the two different formulas, tame composition)
depends on the subgroup orders alone.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple

from .errors import InvalidInput, PreconditionViolation

Breaks = Tuple[Tuple[int, int], ...]


@dataclass(frozen=True)
class FiltrationProfile:
    """Orders of the lower-numbering subgroups, as integer break data.

    `breaks` lists (u, order) pairs with strictly increasing u starting at
    -1; the order at an integer u is the order of the last break <= u.  The
    final order is 1 (trivial tail), so the different sums below are finite.
    """

    breaks: Breaks

    def __post_init__(self):
        bs = tuple((int(u), int(o)) for u, o in self.breaks)
        if not bs or bs[0][0] != -1:
            raise InvalidInput("breaks must start at u = -1")
        prev_u, prev_o = None, None
        for u, o in bs:
            if o < 1:
                raise InvalidInput("orders must be positive")
            if prev_u is not None:
                if u <= prev_u:
                    raise InvalidInput("break positions must strictly increase")
                if o > prev_o or prev_o % o != 0:
                    raise InvalidInput(
                        "orders must weakly decrease through a subgroup chain"
                    )
            prev_u, prev_o = u, o
        if bs[-1][1] != 1:
            raise InvalidInput("profile must end with the trivial group")
        object.__setattr__(self, "breaks", bs)

    # -- construction --------------------------------------------------

    @classmethod
    def from_breaks(cls, pairs: Iterable[Sequence[int]]) -> "FiltrationProfile":
        """Build from (u, order) pairs, tolerating a missing -1 entry and
        repeated orders.  A missing u = -1 entry means a totally ramified
        extension (total order = order at 0)."""
        items = sorted((int(u), int(o)) for u, o in pairs)
        if not items:
            raise InvalidInput("empty profile")
        if items[0][0] != -1:
            items.insert(0, (-1, items[0][1]))
        compact: List[Tuple[int, int]] = []
        for u, o in items:
            if compact and compact[-1][1] == o:
                continue
            compact.append((u, o))
        if compact[-1][1] != 1:
            compact.append((compact[-1][0] + 1, 1))
        return cls(tuple(compact))

    @classmethod
    def unramified(cls, degree: int) -> "FiltrationProfile":
        if degree == 1:
            return cls(((-1, 1),))
        return cls(((-1, degree), (0, 1)))

    @classmethod
    def tame_cyclic(cls, e: int) -> "FiltrationProfile":
        if e == 1:
            return cls(((-1, 1),))
        return cls(((-1, e), (1, 1)))

    # -- queries ---------------------------------------------------------

    @property
    def total_order(self) -> int:
        return self.breaks[0][1]

    @property
    def e(self) -> int:
        """Inertia order, the relative ramification index."""
        return self.order_at(0)

    def order_at(self, u: int) -> int:
        if u < -1:
            raise ValueError("u must be >= -1")
        keys = [b[0] for b in self.breaks]
        return self.breaks[bisect_right(keys, u) - 1][1]

    @property
    def last_break(self) -> int:
        return self.breaks[-1][0]

    def to_json(self) -> str:
        return json.dumps({"breaks": [list(b) for b in self.breaks]})

    @classmethod
    def from_json(cls, s: str) -> "FiltrationProfile":
        return cls.from_breaks(json.loads(s)["breaks"])


@dataclass(frozen=True)
class PiecewiseLinearFn:
    """Continuous, strictly increasing, piecewise-linear bijection of
    [-1, oo), given by its values at breakpoints and a final slope."""

    xs: Tuple[Fraction, ...]
    ys: Tuple[Fraction, ...]
    final_slope: Fraction

    def __post_init__(self):
        xs = tuple(Fraction(x) for x in self.xs)
        ys = tuple(Fraction(y) for y in self.ys)
        if len(xs) != len(ys) or len(xs) < 2 or xs[0] != -1:
            raise InvalidInput("breakpoints must start at -1 and match values")
        for a, b in zip(xs, xs[1:]):
            if b <= a:
                raise InvalidInput("breakpoints must strictly increase")
        for (x0, y0), (x1, y1) in zip(zip(xs, ys), zip(xs[1:], ys[1:])):
            if (y1 - y0) <= 0:
                raise InvalidInput("function must strictly increase")
        if Fraction(self.final_slope) <= 0:
            raise InvalidInput("final slope must be positive")
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        object.__setattr__(self, "final_slope", Fraction(self.final_slope))

    def __call__(self, x: Fraction) -> Fraction:
        x = Fraction(x)
        if x < -1:
            raise ValueError("domain is [-1, oo)")
        if x >= self.xs[-1]:
            return self.ys[-1] + (x - self.xs[-1]) * self.final_slope
        keys = list(self.xs)
        k = bisect_right(keys, x) - 1
        x0, x1 = self.xs[k], self.xs[k + 1]
        y0, y1 = self.ys[k], self.ys[k + 1]
        return y0 + (x - x0) * (y1 - y0) / (x1 - x0)

    def inverse(self) -> "PiecewiseLinearFn":
        return PiecewiseLinearFn(self.ys, self.xs, 1 / self.final_slope)

    def compress(self) -> "PiecewiseLinearFn":
        """Merge collinear neighbouring segments (values are unchanged)."""
        xs, ys = list(self.xs), list(self.ys)
        out_x, out_y = [xs[0]], [ys[0]]
        for k in range(1, len(xs)):
            slope_in = (ys[k] - out_y[-1]) / (xs[k] - out_x[-1])
            if k + 1 < len(xs):
                slope_out = (ys[k + 1] - ys[k]) / (xs[k + 1] - xs[k])
            else:
                slope_out = self.final_slope
            if slope_in != slope_out:
                out_x.append(xs[k])
                out_y.append(ys[k])
        if len(out_x) < 2:
            out_x.append(xs[1])
            out_y.append(ys[1])
        return PiecewiseLinearFn(tuple(out_x), tuple(out_y), self.final_slope)


def herbrand_phi(profile: FiltrationProfile) -> PiecewiseLinearFn:
    """Lower-to-upper coordinate change: slope 1/[G_0 : G_u], identity on
    [-1, 0]."""
    e = profile.e
    xs: List[Fraction] = [Fraction(-1), Fraction(0)]
    ys: List[Fraction] = [Fraction(-1), Fraction(0)]
    for u in range(1, profile.last_break + 1):
        xs.append(Fraction(u))
        ys.append(ys[-1] + Fraction(profile.order_at(u), e))
    fn = PiecewiseLinearFn(tuple(xs), tuple(ys), Fraction(1, e))
    return fn.compress()


def herbrand_psi(profile: FiltrationProfile) -> PiecewiseLinearFn:
    """Exact piecewise-linear inverse of herbrand_phi."""
    return herbrand_phi(profile).inverse()


def lower_jumps(profile: FiltrationProfile) -> List[Tuple[int, int]]:
    """Integers u where the filtration genuinely drops just above u,
    together with the order at u (before the drop)."""
    out = []
    for u in range(-1, profile.last_break):
        if profile.order_at(u + 1) < profile.order_at(u):
            out.append((u, profile.order_at(u)))
    return out


def lower_to_upper(profile: FiltrationProfile) -> List[Tuple[Fraction, int]]:
    """Upper-numbering jump data: (phi(u), order at the jump) per drop.

    For profiles of abelian extensions the returned jump positions are
    integers; that integrality is a validation performed by callers, not an
    enforced invariant, since non-abelian profiles are legal inputs.
    """
    phi = herbrand_phi(profile)
    return [(phi(Fraction(u)), order) for u, order in lower_jumps(profile)]


def upper_segments(profile: FiltrationProfile) -> List[Tuple[Fraction, Fraction, int]]:
    """The upper filtration as half-open segments (a, b] with constant
    order, ending with the segment on which the group is trivial."""
    phi = herbrand_phi(profile)
    segs: List[Tuple[Fraction, Fraction, int]] = []
    prev = Fraction(-1)
    for u in range(0, profile.last_break + 1):
        cur = phi(Fraction(u))
        if cur > prev:
            segs.append((prev, cur, profile.order_at(u)))
            prev = cur
    return segs


def different_lower(profile: FiltrationProfile) -> int:
    """Valuation of the different in the uniformizer of the top field:
    the sum of (#G_i - 1) over integers i >= 0."""
    return sum(profile.order_at(i) - 1 for i in range(0, profile.last_break + 1))


def different_upper(profile: FiltrationProfile) -> Fraction:
    """The same different valuation, via the upper-numbering integral
    e * integral of (1 - 1/#G^u) du over (-1, oo)."""
    total = Fraction(0)
    for a, b, order in upper_segments(profile):
        total += (b - a) * (1 - Fraction(1, order))
    return profile.e * total


def tame_compose(
    inner_jumps: Sequence[Fraction], e: int, p: int
) -> List[Fraction]:
    """Upper jumps after base change along a tame extension of relative
    index e: positive jumps scale by e, the rest are preserved."""
    if e < 1:
        raise ValueError("e must be positive")
    if e % p == 0:
        raise PreconditionViolation(f"p = {p} divides e = {e}: extension is wild")
    return [Fraction(u) if u <= 0 else Fraction(u) * e for u in inner_jumps]


def profile_from_upper_segments(
    segments: Sequence[Tuple[Fraction, Fraction, int]],
    total_order: int,
) -> FiltrationProfile:
    """Rebuild the lower profile from upper step data.

    `segments` are half-open (a, b] pieces with constant order: the first
    starts at -1 and reaches b >= 0 (the filtration cannot drop strictly
    inside (-1, 0)), orders weakly decrease, and the last order is 1.
    Break positions produced by the inverse transform must come out
    integral; they always do for data coming from integer upper jumps,
    e.g. an abelian unit-group filtration.
    """
    segs = [(Fraction(a), Fraction(b), int(o)) for a, b, o in segments]
    if not segs or segs[0][0] != -1 or segs[0][1] < 0:
        raise InvalidInput("first segment must be (-1, b] with b >= 0")
    for (a0, b0, o0), (a1, b1, o1) in zip(segs, segs[1:]):
        if a1 != b0 or b1 <= a1 or o1 > o0 or o0 % o1 != 0:
            raise InvalidInput("segments must be contiguous with decreasing orders")
    if segs[-1][2] != 1:
        raise InvalidInput("upper segments must end with the trivial group")
    inertia = segs[0][2]

    # Inverse transform: identity below 0, slope inertia/order above.
    orders_at = {-1: total_order, 0: inertia}
    w = Fraction(0)
    for a, b, o in segs:
        lo = max(a, Fraction(0))
        w_hi = w + (b - lo) * Fraction(inertia, o)
        if w.denominator != 1 or w_hi.denominator != 1:
            raise InvalidInput("inverse transform produced non-integer breaks")
        for u in range(int(w) + 1, int(w_hi) + 1):
            orders_at[u] = o
        w = w_hi
    return FiltrationProfile.from_breaks(sorted(orders_at.items()))
