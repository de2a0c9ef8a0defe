"""p-typical Witt vectors, unit-series splittings, and Artin-Schreier
roots over small finite fields.

Witt arithmetic runs in torsion-free integer coordinates: lift, operate
on ghost components, un-ghost (the divisions are exact by integrality of
the structure polynomials), and reduce afterwards if a modulus is wanted.

Finite fields use deterministic moduli: the lexicographically smallest
monic irreducible of each degree, found by trial division.  This is a
reproducible stand-in for a compatibility-normalized table; only the
isomorphism class matters here.

The big-to-p-typical series splitting implemented below is the
coefficient-support decomposition (greedy from the lowest exponent); its
bucket coordinates are not multiplicatively closed across repeated
factors, so only the functionals and reconstruction identities proved
by that triangularity are asserted in the test-suite.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InvalidInput, PreconditionViolation, ResourceLimit
from .exactval import require_prime

MAX_WITT_LENGTH = 16
MAX_SERIES_TRUNCATION = 256


# ---------------------------------------------------------------------------
# Witt vectors over torsion-free coordinates
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PTypicalWitt:
    """Integer-coordinate p-typical Witt vector of fixed finite length."""

    p: int
    coords: Tuple[int, ...]

    def __post_init__(self):
        require_prime(self.p)
        if not (1 <= len(self.coords) <= MAX_WITT_LENGTH):
            raise InvalidInput(f"length must be 1..{MAX_WITT_LENGTH}")

    @property
    def length(self) -> int:
        return len(self.coords)

    @classmethod
    def zero(cls, p: int, length: int) -> "PTypicalWitt":
        return cls(p, (0,) * length)

    @classmethod
    def teichmuller(cls, p: int, a: int, length: int) -> "PTypicalWitt":
        return cls(p, (a,) + (0,) * (length - 1))

    def reduce(self, modulus: int) -> "PTypicalWitt":
        return PTypicalWitt(self.p, tuple(c % modulus for c in self.coords))


def ghost(w: PTypicalWitt) -> Tuple[int, ...]:
    """Ghost components w_n = sum_{i<=n} p^i a_i^(p^(n-i))."""
    p = w.p
    out = []
    for n in range(w.length):
        out.append(sum(p**i * w.coords[i] ** (p ** (n - i)) for i in range(n + 1)))
    return tuple(out)


def unghost(p: int, ghost_components: Sequence[int]) -> PTypicalWitt:
    """Invert the ghost map over the integers; divisions must be exact."""
    coords: List[int] = []
    for n, g in enumerate(ghost_components):
        acc = g - sum(p**i * coords[i] ** (p ** (n - i)) for i in range(n))
        q, rem = divmod(acc, p**n)
        if rem:
            raise InvalidInput("ghost vector is not integral")
        coords.append(q)
    return PTypicalWitt(p, tuple(coords))


def witt_arith(u: PTypicalWitt, v: PTypicalWitt, op: str) -> PTypicalWitt:
    """Sum or product through ghost coordinates (exact over Z; reduction
    mod p^m afterwards commutes with the operation)."""
    if u.p != v.p or u.length != v.length:
        raise InvalidInput("operands must share p and length")
    gu, gv = ghost(u), ghost(v)
    if op == "add":
        gw = tuple(a + b for a, b in zip(gu, gv))
    elif op == "mul":
        gw = tuple(a * b for a, b in zip(gu, gv))
    else:
        raise InvalidInput("op must be add or mul")
    return unghost(u.p, gw)


# ---------------------------------------------------------------------------
# Finite fields F_{p^k} as polynomial quotients
# ---------------------------------------------------------------------------


def _poly_mul_mod(a, b, modulus, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    # reduce by the monic modulus
    k = len(modulus) - 1
    for i in range(len(out) - 1, k - 1, -1):
        c = out[i]
        if c:
            for j in range(k + 1):
                out[i - k + j] = (out[i - k + j] - c * modulus[j]) % p
    return out[:k] + [0] * max(0, k - len(out))


def _poly_is_irreducible(f, p) -> bool:
    """Trial division by all smaller-degree monic polynomials."""
    n = len(f) - 1
    if n == 1:
        return True
    for deg in range(1, n // 2 + 1):
        for idx in range(p**deg):
            g = []
            v = idx
            for _ in range(deg):
                g.append(v % p)
                v //= p
            g.append(1)
            # long division f mod g
            r = list(f)
            while len(r) >= len(g) and any(r):
                if r[-1] == 0:
                    r.pop()
                    continue
                c = r[-1]
                shift = len(r) - len(g)
                for j in range(len(g)):
                    r[shift + j] = (r[shift + j] - c * g[j]) % p
                r.pop()
            if not any(r):
                return False
    return True


@lru_cache(maxsize=None)
def field_modulus(p: int, k: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree k over F_p
    (deterministic, recorded by construction)."""
    require_prime(p)
    if p > 7 or k > 6:
        raise ResourceLimit("fields are tabulated for p <= 7, k <= 6")
    if k == 1:
        return (0, 1)
    for idx in range(p**k):
        coeffs = []
        v = idx
        for _ in range(k):
            coeffs.append(v % p)
            v //= p
        f = coeffs + [1]
        if _poly_is_irreducible(f, p):
            return tuple(f)
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True)
class FF:
    """The finite field with p^k elements."""

    p: int
    k: int

    def __post_init__(self):
        field_modulus(self.p, self.k)

    @property
    def order(self) -> int:
        return self.p**self.k

    def element(self, coeffs: Sequence[int]) -> "FFElement":
        c = list(coeffs)[: self.k] + [0] * max(0, self.k - len(coeffs))
        return FFElement(self, tuple(x % self.p for x in c))

    def zero(self) -> "FFElement":
        return self.element([])

    def one(self) -> "FFElement":
        return self.element([1])

    def gen(self) -> "FFElement":
        return self.element([0, 1] if self.k > 1 else [1])

    def from_int(self, idx: int) -> "FFElement":
        coeffs = []
        for _ in range(self.k):
            coeffs.append(idx % self.p)
            idx //= self.p
        return self.element(coeffs)

    def elements(self):
        for idx in range(self.order):
            yield self.from_int(idx)

    def random(self, rng: random.Random) -> "FFElement":
        return self.from_int(rng.randrange(self.order))


@dataclass(frozen=True)
class FFElement:
    field: FF
    coeffs: Tuple[int, ...]

    def __add__(self, other: "FFElement") -> "FFElement":
        self._check(other)
        return self.field.element(
            [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __sub__(self, other: "FFElement") -> "FFElement":
        self._check(other)
        return self.field.element(
            [a - b for a, b in zip(self.coeffs, other.coeffs)]
        )

    def __neg__(self) -> "FFElement":
        return self.field.element([-a for a in self.coeffs])

    def __mul__(self, other: "FFElement") -> "FFElement":
        self._check(other)
        modulus = list(field_modulus(self.field.p, self.field.k))
        return self.field.element(
            _poly_mul_mod(list(self.coeffs), list(other.coeffs), modulus, self.field.p)
        )

    def _check(self, other: "FFElement") -> None:
        if self.field != other.field:
            raise InvalidInput("elements of different fields")

    @property
    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def pow(self, e: int) -> "FFElement":
        if e < 0:
            return self.inverse().pow(-e)
        out = self.field.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def inverse(self) -> "FFElement":
        if self.is_zero:
            raise ZeroDivisionError("inverting zero")
        return self.pow(self.field.order - 2)

    def frobenius(self) -> "FFElement":
        return self.pow(self.field.p)

    def trace(self) -> int:
        """Absolute trace down to the prime field, as an integer mod p."""
        acc = self.field.zero()
        x = self
        for _ in range(self.field.k):
            acc = acc + x
            x = x.frobenius()
        if any(acc.coeffs[1:]):
            raise AssertionError("trace left the prime field")
        return acc.coeffs[0]


# ---------------------------------------------------------------------------
# Unit power series and the support splitting
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class UnitSeries:
    """1 + a_1 x + ... + a_T x^T over a finite field, truncated at T."""

    field: FF
    trunc: int
    coeffs: Tuple[FFElement, ...]

    def __post_init__(self):
        if not (1 <= self.trunc <= MAX_SERIES_TRUNCATION):
            raise InvalidInput(f"truncation must be 1..{MAX_SERIES_TRUNCATION}")
        if len(self.coeffs) != self.trunc:
            raise InvalidInput("need exactly trunc coefficients a_1..a_T")

    @classmethod
    def one(cls, field: FF, trunc: int) -> "UnitSeries":
        return cls(field, trunc, tuple(field.zero() for _ in range(trunc)))

    @classmethod
    def from_dict(cls, field: FF, trunc: int, coeffs: Dict[int, FFElement]):
        base = [field.zero()] * trunc
        for e, c in coeffs.items():
            if not (1 <= e <= trunc):
                raise InvalidInput("exponent out of range")
            base[e - 1] = c
        return cls(field, trunc, tuple(base))

    @classmethod
    def random(cls, field: FF, trunc: int, rng: random.Random) -> "UnitSeries":
        return cls(field, trunc, tuple(field.random(rng) for _ in range(trunc)))

    def coeff(self, e: int) -> FFElement:
        if e == 0:
            return self.field.one()
        if 1 <= e <= self.trunc:
            return self.coeffs[e - 1]
        raise InvalidInput("exponent beyond truncation")

    def __mul__(self, other: "UnitSeries") -> "UnitSeries":
        if self.field != other.field or self.trunc != other.trunc:
            raise InvalidInput("series mismatch")
        t = self.trunc
        out = [self.field.zero()] * t
        for e in range(1, t + 1):
            acc = self.coeff(e) + other.coeff(e)
            for i in range(1, e):
                acc = acc + self.coeffs[i - 1] * other.coeffs[e - i - 1]
            out[e - 1] = acc
        return UnitSeries(self.field, t, tuple(out))

    def inverse(self) -> "UnitSeries":
        t = self.trunc
        out = [self.field.zero()] * t
        for e in range(1, t + 1):
            acc = -self.coeffs[e - 1]
            for i in range(1, e):
                acc = acc - out[i - 1] * self.coeffs[e - i - 1]
            out[e - 1] = acc
        return UnitSeries(self.field, t, tuple(out))

    def support(self) -> List[int]:
        return [e for e in range(1, self.trunc + 1) if not self.coeff(e).is_zero]


def prime_to_p_part(m: int, p: int) -> int:
    while m % p == 0:
        m //= p
    return m


def series_split_p_typical(
    f: UnitSeries,
) -> Tuple[UnitSeries, Dict[int, UnitSeries]]:
    """Unique support factorization f = h(x) * prod g_n(x^n) over n > 1
    prime to p, with h supported on p-power exponents and each g_n on
    p-power exponents of its own variable.

    Greedy from the lowest exponent: the coefficient mismatch at x^m is
    charged to the bucket of m's prime-to-p part.  The product of the
    factors reconstructs f exactly to the truncation order.
    """
    field, t, p = f.field, f.trunc, f.field.p
    factors: Dict[int, Dict[int, FFElement]] = {}
    product = UnitSeries.one(field, t)
    for m in range(1, t + 1):
        delta = f.coeff(m) - product.coeff(m)
        if delta.is_zero:
            continue
        n = prime_to_p_part(m, p)
        bucket = factors.setdefault(n, {})
        old = UnitSeries.from_dict(field, t, dict(bucket))
        bucket[m] = delta
        new = UnitSeries.from_dict(field, t, dict(bucket))
        product = product * old.inverse() * new
    p_part = UnitSeries.from_dict(field, t, factors.get(1, {}))
    others = {
        n: UnitSeries.from_dict(field, t, bucket)
        for n, bucket in factors.items()
        if n != 1
    }
    return p_part, others


def split_reconstruction(
    p_part: UnitSeries, others: Dict[int, UnitSeries]
) -> UnitSeries:
    product = p_part
    for n in sorted(others):
        product = product * others[n]
    return product


# ---------------------------------------------------------------------------
# Artin-Schreier roots
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ArtinSchreierRoot:
    """A root of x^p - x = a, either inside the base field or in the
    degree-p extension generated by the equation itself."""

    base: FF
    a: FFElement
    in_base: bool
    root_coeffs: Tuple[FFElement, ...]  # coords over the base field
    field_degree: int  # absolute degree of the field containing the root


def artin_schreier_solve(a: FFElement) -> ArtinSchreierRoot:
    """Solve x^p - x = a constructively.

    Inside F_{p^k} the map x -> x^p - x is F_p-linear, so a trace-zero
    right side is solved by exact linear algebra; otherwise the equation
    is irreducible and its own quotient ring is the splitting field, with
    the class of x as an explicit root.
    """
    field = a.field
    p, k = field.p, field.k
    if a.trace() % p == 0:
        basis_images = []
        for i in range(k):
            b = field.element([0] * i + [1])
            img = b.frobenius() - b
            basis_images.append(list(img.coeffs))
        sol = _solve_mod_p(basis_images, list(a.coeffs), p)
        if sol is None:
            raise AssertionError("trace-zero equation must be solvable")
        root = field.element([0] * k)
        for i, c in enumerate(sol):
            if c:
                root = root + field.element([0] * i + [c])
        check = root.frobenius() - root
        if check.coeffs != a.coeffs:
            raise AssertionError("linear solver returned a non-root")
        return ArtinSchreierRoot(field, a, True, (root,), k)
    # irreducible case: adjoin a root t with t^p = t + a
    root = tuple(
        field.one() if i == 1 else field.zero() for i in range(p)
    )
    lhs = _as_ext_pow(root, p, a)
    lhs = tuple(
        lhs[i] - (field.one() if i == 1 else field.zero()) for i in range(p)
    )
    if tuple(c.coeffs for c in lhs) != tuple(
        (a if i == 0 else field.zero()).coeffs for i in range(p)
    ):
        raise AssertionError("extension root fails its defining equation")
    return ArtinSchreierRoot(field, a, False, root, k * p)


def _as_ext_mul(x, y, a: FFElement):
    """Multiply in base[t]/(t^p - t - a): reduce via t^p = t + a."""
    field = a.field
    p = field.p
    out = [field.zero()] * (2 * p - 1)
    for i, xi in enumerate(x):
        if xi.is_zero:
            continue
        for j, yj in enumerate(y):
            if not yj.is_zero:
                out[i + j] = out[i + j] + xi * yj
    for e in range(2 * p - 2, p - 1, -1):
        c = out[e]
        if not c.is_zero:
            out[e] = field.zero()
            out[e - p + 1] = out[e - p + 1] + c
            out[e - p] = out[e - p] + c * a
    return tuple(out[:p])


def _as_ext_pow(x, e: int, a: FFElement):
    field = a.field
    out = tuple(
        field.one() if i == 0 else field.zero() for i in range(field.p)
    )
    base = x
    while e:
        if e & 1:
            out = _as_ext_mul(out, base, a)
        base = _as_ext_mul(base, base, a)
        e >>= 1
    return out


def _solve_mod_p(columns, target, p) -> Optional[List[int]]:
    """Solve sum_i v_i * columns[i] = target over F_p by elimination."""
    k = len(target)
    n = len(columns)
    aug = [[columns[j][i] % p for j in range(n)] + [target[i] % p] for i in range(k)]
    pivots = []
    row = 0
    for col in range(n):
        piv = next((i for i in range(row, k) if aug[i][col] % p), None)
        if piv is None:
            continue
        aug[row], aug[piv] = aug[piv], aug[row]
        inv = pow(aug[row][col], -1, p)
        aug[row] = [x * inv % p for x in aug[row]]
        for i in range(k):
            if i != row and aug[i][col]:
                f = aug[i][col]
                aug[i] = [(x - f * y) % p for x, y in zip(aug[i], aug[row])]
        pivots.append(col)
        row += 1
    for i in range(row, k):
        if aug[i][n] % p:
            return None
    sol = [0] * n
    for i, col in enumerate(pivots):
        sol[col] = aug[i][n] % p
    return sol
