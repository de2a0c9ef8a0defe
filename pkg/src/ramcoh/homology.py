"""Bounded complexes of finitely generated abelian groups.

Everything reduces to exact integer linear algebra: Smith normal form
with unimodular transforms, saturated kernel bases, and exact solves
against full-column-rank lattices.  Complexes are cochain complexes in
cohomological indexing; the shift [k] relabels degrees down by k and
multiplies differentials by (-1)^k.

The torsion-deletion construction implemented by `decalage` is the naive
subcomplex {x in p^(ai) C^i : dx in p^(a(i+1)) C^(i+1)}; on complexes
with free terms (the only ones built here) it agrees with the derived
version, so no distinction is drawn.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InvalidInput, PrecisionExhausted, PreconditionViolation

# ---------------------------------------------------------------------------
# Integer matrices
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise InvalidInput("matrix shape mismatch")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None):
        rows = [tuple(int(x) for x in r) for r in rows]
        if rows:
            cols = len(rows[0])
        elif cols is None:
            raise InvalidInput("empty matrix needs an explicit column count")
        return cls(len(rows), cols, tuple(rows))

    @classmethod
    def zero(cls, rows: int, cols: int):
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int):
        return cls(n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise InvalidInput("matrix product shape mismatch")
        out = []
        for row in self.data:
            acc = [0] * other.cols
            for k, a in enumerate(row):
                if a:
                    orow = other.data[k]
                    for j in range(other.cols):
                        acc[j] += a * orow[j]
            out.append(tuple(acc))
        return IntMatrix(self.rows, other.cols, tuple(out))

    def __neg__(self) -> "IntMatrix":
        return self.scale(-1)

    def scale(self, c: int) -> "IntMatrix":
        return IntMatrix(
            self.rows, self.cols, tuple(tuple(c * x for x in r) for r in self.data)
        )

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise InvalidInput("matrix sum shape mismatch")
        return IntMatrix(
            self.rows,
            self.cols,
            tuple(
                tuple(a + b for a, b in zip(r1, r2))
                for r1, r2 in zip(self.data, other.data)
            ),
        )

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def column(self, j: int) -> Tuple[int, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self, idx: Sequence[int]) -> "IntMatrix":
        return IntMatrix(
            self.rows, len(idx), tuple(tuple(r[j] for j in idx) for r in self.data)
        )

    def to_json(self) -> str:
        return json.dumps([[str(x) for x in r] for r in self.data])

    @classmethod
    def from_json(cls, s: str, cols: Optional[int] = None) -> "IntMatrix":
        return cls.from_rows([[int(x) for x in r] for r in json.loads(s)], cols)


def block_matrix(blocks: Sequence[Sequence[IntMatrix]]) -> IntMatrix:
    """Assemble a block matrix; block shapes must be consistent."""
    rows: List[Tuple[int, ...]] = []
    for brow in blocks:
        height = brow[0].rows
        if any(b.rows != height for b in brow):
            raise InvalidInput("inconsistent block heights")
        for i in range(height):
            out: List[int] = []
            for b in brow:
                out.extend(b.data[i])
            rows.append(tuple(out))
    cols = sum(b.cols for b in blocks[0]) if blocks else 0
    return IntMatrix.from_rows(rows, cols)


# ---------------------------------------------------------------------------
# Smith normal form
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """U * A * V = diag(divisors), with U, V unimodular."""

    divisors: Tuple[int, ...]  # positive, each dividing the next
    rank: int
    u: IntMatrix
    v: IntMatrix

    def diagonal(self, rows: int, cols: int) -> IntMatrix:
        m = [[0] * cols for _ in range(rows)]
        for i, d in enumerate(self.divisors):
            m[i][i] = d
        return IntMatrix.from_rows(m, cols)


def snf(a: IntMatrix) -> Tuple[Tuple[int, ...], int]:
    """Smith divisors and rank (no transforms).

    Uses the modular route: a fraction-free elimination finds the rank r
    and a nonzero r x r minor D; every elementary divisor divides D, and
    augmenting by D times the identity lets all further arithmetic happen
    in balanced residues mod D.  That caps coefficient growth at the size
    of a single minor, which is what makes dense random matrices fast.
    """
    rank, minor = _bareiss_rank_minor(a)
    if rank == 0:
        return (), 0
    if minor == 1:
        return (1,) * rank, rank
    divisors = _modular_divisors(a, minor)[:rank]
    return tuple(divisors), rank


def _bareiss_rank_minor(a: IntMatrix) -> Tuple[int, int]:
    """Rank over Q and the absolute value of a nonzero maximal minor,
    by fraction-free elimination with full pivoting."""
    m, n = a.rows, a.cols
    M = [list(r) for r in a.data]
    prev = 1
    rank = 0
    for k in range(min(m, n)):
        piv = None
        for i in range(k, m):
            for j in range(k, n):
                if M[i][j]:
                    piv = (i, j)
                    break
            if piv:
                break
        if piv is None:
            break
        if piv[0] != k:
            M[k], M[piv[0]] = M[piv[0]], M[k]
        if piv[1] != k:
            for row in M:
                row[k], row[piv[1]] = row[piv[1]], row[k]
        pkk = M[k][k]
        mk = M[k]
        for i in range(k + 1, m):
            mik = M[i][k]
            mi = M[i]
            for j in range(k + 1, n):
                mi[j] = (mi[j] * pkk - mik * mk[j]) // prev
            mi[k] = 0
        prev = pkk
        rank += 1
    return rank, abs(prev)


def _modular_divisors(a: IntMatrix, modulus: int) -> List[int]:
    """Divisor chain of [a | modulus * I] with balanced residues mod the
    modulus throughout; the first rank(a) entries are the divisors of a."""
    m = a.rows
    n = a.cols + m

    def red(x: int) -> int:
        r = x % modulus
        return r - modulus if r > modulus // 2 else r

    M = [[red(x) for x in row] + [0] * a.rows for row in a.data]
    for i in range(m):
        M[i][a.cols + i] = red(modulus)

    t = 0
    while t < m:
        pivot, best = None, None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best):
                    pivot, best = (i, j), abs(v)
        if pivot is None:
            break
        M[t], M[pivot[0]] = M[pivot[0]], M[t]
        if pivot[1] != t:
            for row in M:
                row[t], row[pivot[1]] = row[pivot[1]], row[t]
        if M[t][t] < 0:
            M[t] = [-x for x in M[t]]
        while True:
            restart = False
            for i in range(t + 1, m):
                if M[i][t]:
                    q = _balanced_quotient(M[i][t], M[t][t])
                    if q:
                        M[i] = [red(x - q * y) for x, y in zip(M[i], M[t])]
                    if M[i][t]:
                        M[i], M[t] = M[t], M[i]
                        if M[t][t] < 0:
                            M[t] = [-x for x in M[t]]
                        restart = True
            if restart:
                continue
            for j in range(t + 1, n):
                if M[t][j]:
                    q = _balanced_quotient(M[t][j], M[t][t])
                    if q:
                        for row in M:
                            if row[t]:
                                row[j] = red(row[j] - q * row[t])
                    if M[t][j]:
                        for row in M:
                            row[t], row[j] = row[j], row[t]
                        restart = True
            if restart:
                continue
            break
        t += 1

    values = [gcd(M[i][i], modulus) for i in range(t)]
    # a residual block vanishing in balanced residues has entries all
    # divisible by the modulus, so its lattice part is exactly modulus*Z^k
    values += [modulus] * (m - t)
    # canonical chain from the multiset of cyclic orders
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            g = gcd(values[i], values[j])
            values[i], values[j] = g, values[i] * values[j] // g
    return sorted(values)


def _balanced_quotient(x: int, d: int) -> int:
    """Quotient with remainder in (-d/2, d/2]; d must be positive.
    Balanced remainders are the coefficient-growth control."""
    return (2 * x + d) // (2 * d)


def smith_form(a: IntMatrix, transforms: bool = True) -> SmithForm:
    m, n = a.rows, a.cols
    M = [list(r) for r in a.data]
    U = [[int(i == j) for j in range(m)] for i in range(m)] if transforms else None
    V = [[int(i == j) for j in range(n)] for i in range(n)] if transforms else None

    def swap_rows(i, j):
        M[i], M[j] = M[j], M[i]
        if U:
            U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for r in M:
            r[i], r[j] = r[j], r[i]
        if V:
            for r in V:
                r[i], r[j] = r[j], r[i]

    def negate_row(i):
        M[i] = [-x for x in M[i]]
        if U:
            U[i] = [-x for x in U[i]]

    def row_op(i, j, q):
        # row_i -= q * row_j
        M[i] = [x - q * y for x, y in zip(M[i], M[j])]
        if U:
            U[i] = [x - q * y for x, y in zip(U[i], U[j])]

    def col_op(i, j, q):
        # col_i -= q * col_j
        for r in M:
            if r[j]:
                r[i] -= q * r[j]
        if V:
            for r in V:
                if r[j]:
                    r[i] -= q * r[j]

    t = 0
    while t < min(m, n):
        # smallest-magnitude pivot keeps coefficient growth in check
        pivot = None
        best = None
        for i in range(t, m):
            row = M[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best):
                    pivot, best = (i, j), abs(v)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        if M[t][t] < 0:
            negate_row(t)
        while True:
            restart = False
            for i in range(t + 1, m):
                if M[i][t]:
                    q = _balanced_quotient(M[i][t], M[t][t])
                    if q:
                        row_op(i, t, q)
                    if M[i][t]:
                        swap_rows(i, t)
                        if M[t][t] < 0:
                            negate_row(t)
                        restart = True
            if restart:
                continue
            for j in range(t + 1, n):
                if M[t][j]:
                    q = _balanced_quotient(M[t][j], M[t][t])
                    if q:
                        col_op(j, t, q)
                    if M[t][j]:
                        swap_cols(j, t)
                        if M[t][t] < 0:
                            negate_row(t)
                        restart = True
            if restart:
                continue
            break
        t += 1

    rank = t
    # enforce the divisibility chain with 2x2 unimodular fixes
    for i in range(rank):
        for j in range(i + 1, rank):
            a_, b_ = M[i][i], M[j][j]
            if b_ % a_ == 0:
                continue
            g, s, t_ = _xgcd(a_, b_)
            if transforms:
                ri = [s * x + t_ * y for x, y in zip(M[i], M[j])]
                rj = [(-b_ // g) * x + (a_ // g) * y for x, y in zip(M[i], M[j])]
                M[i], M[j] = ri, rj
                ui = [s * x + t_ * y for x, y in zip(U[i], U[j])]
                uj = [(-b_ // g) * x + (a_ // g) * y for x, y in zip(U[i], U[j])]
                U[i], U[j] = ui, uj
                for r in (M, V):
                    for row in r:
                        ci = row[i] + row[j]
                        cj = (-t_ * b_ // g) * row[i] + (s * a_ // g) * row[j]
                        row[i], row[j] = ci, cj
            else:
                M[i][i], M[j][j] = g, a_ // g * b_
    divisors = tuple(M[i][i] for i in range(rank))
    return SmithForm(
        divisors,
        rank,
        IntMatrix.from_rows(U, m) if transforms else IntMatrix.identity(0),
        IntMatrix.from_rows(V, n) if transforms else IntMatrix.identity(0),
    )


def _xgcd(a: int, b: int) -> Tuple[int, int, int]:
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def kernel_basis(a: IntMatrix) -> IntMatrix:
    """Columns form a basis of the saturated integer kernel lattice."""
    s = smith_form(a)
    return s.v.columns(range(s.rank, a.cols))


def solve_exact(b: IntMatrix, y: IntMatrix) -> IntMatrix:
    """Solve b @ x = y over the integers; b must have full column rank and
    the columns of y must lie in the column lattice of b."""
    s = smith_form(b)
    if s.rank != b.cols:
        raise InvalidInput("matrix does not have full column rank")
    w = s.u * y
    xs: List[List[int]] = []
    for i in range(b.cols):
        d = s.divisors[i]
        row = []
        for j in range(y.cols):
            q, rem = divmod(w.data[i][j], d)
            if rem:
                raise InvalidInput("solve_exact: no integral solution")
            row.append(q)
        xs.append(row)
    for i in range(b.cols, b.rows):
        if any(w.data[i][j] != 0 for j in range(y.cols)):
            raise InvalidInput("solve_exact: inconsistent system")
    return s.v * IntMatrix.from_rows(xs, y.cols)


def lattice_contains(a: IntMatrix, y: IntMatrix) -> bool:
    """Whether every column of y lies in the integer column lattice of a."""
    s = smith_form(a)
    w = s.u * y
    for i in range(a.rows):
        d = s.divisors[i] if i < s.rank else 0
        for j in range(y.cols):
            if d == 0:
                if w.data[i][j] != 0:
                    return False
            elif w.data[i][j] % d != 0:
                return False
    return True


def mod_power_kernel_basis(a: IntMatrix, modulus: int) -> IntMatrix:
    """Basis of the lattice {x : a x = 0 mod `modulus`} (contains
    modulus * Z^cols, so it has full rank)."""
    s = smith_form(a)
    scale = []
    for j in range(a.cols):
        if j < s.rank:
            d = s.divisors[j]
            scale.append(modulus // gcd(d, modulus))
        else:
            scale.append(1)
    cols = [
        tuple(s.v.data[i][j] * scale[j] for i in range(a.cols))
        for j in range(a.cols)
    ]
    return IntMatrix.from_rows(list(zip(*cols)), a.cols)


# ---------------------------------------------------------------------------
# Finitely generated modules and complexes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FgModule:
    """Canonical form of a finitely generated abelian group: free rank
    plus elementary divisors > 1 in a divisibility chain."""

    free_rank: int
    divisors: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise InvalidInput("negative free rank")
        ds = tuple(int(d) for d in self.divisors)
        prev = None
        for d in ds:
            if d <= 1:
                raise InvalidInput("elementary divisors must exceed 1")
            if prev is not None and d % prev != 0:
                raise InvalidInput("divisors must form a divisibility chain")
            prev = d
        object.__setattr__(self, "divisors", ds)

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.divisors

    def without_torsion_power(self, p: int, a: int = 1) -> "FgModule":
        """Quotient by the p^a-torsion subgroup."""
        q = p**a
        ds = []
        for d in self.divisors:
            nd = d // gcd(d, q)
            if nd > 1:
                ds.append(nd)
        return FgModule(self.free_rank, tuple(sorted(ds)))

    @classmethod
    def cokernel(cls, a: IntMatrix) -> "FgModule":
        divisors, rank = snf(a)
        tors = tuple(d for d in divisors if d > 1)
        return cls(a.rows - rank, tors)


@dataclass(frozen=True)
class FgComplex:
    """Cochain complex of free Z-modules on degrees lo..lo+len(dims)-1."""

    lo: int
    dims: Tuple[int, ...]
    diffs: Tuple[IntMatrix, ...]

    def __post_init__(self):
        if not self.dims:
            raise InvalidInput("complex needs at least one degree")
        if len(self.diffs) != len(self.dims) - 1:
            raise InvalidInput("need exactly one differential per adjacent pair")
        for k, d in enumerate(self.diffs):
            if (d.rows, d.cols) != (self.dims[k + 1], self.dims[k]):
                raise InvalidInput(f"differential {k} has the wrong shape")
        for k in range(len(self.diffs) - 1):
            if not (self.diffs[k + 1] * self.diffs[k]).is_zero():
                raise InvalidInput("d o d != 0")

    @property
    def hi(self) -> int:
        return self.lo + len(self.dims) - 1

    def dim(self, i: int) -> int:
        if self.lo <= i <= self.hi:
            return self.dims[i - self.lo]
        return 0

    def d(self, i: int) -> IntMatrix:
        """Differential C^i -> C^(i+1), zero outside the stored range."""
        k = i - self.lo
        if 0 <= k < len(self.diffs):
            return self.diffs[k]
        return IntMatrix.zero(self.dim(i + 1), self.dim(i))

    def degrees(self) -> range:
        return range(self.lo, self.hi + 1)

    def shift(self, k: int) -> "FgComplex":
        """[k]: degree labels decrease by k, differentials pick up (-1)^k."""
        sign = -1 if k % 2 else 1
        return FgComplex(
            self.lo - k, self.dims, tuple(d.scale(sign) for d in self.diffs)
        )

    def euler_characteristic(self) -> int:
        return sum((-1) ** i * self.dim(i) for i in self.degrees())

    def tensor_with_scalar(self, c: int) -> "FgComplex":
        return FgComplex(self.lo, self.dims, tuple(d.scale(c) for d in self.diffs))


def two_term_complex(a: IntMatrix, lo: int = 0) -> FgComplex:
    return FgComplex(lo, (a.cols, a.rows), (a,))


@dataclass(frozen=True)
class ChainMap:
    source: FgComplex
    target: FgComplex
    comps: Dict[int, IntMatrix] = field(default_factory=dict)

    def __post_init__(self):
        for i, m in self.comps.items():
            if (m.rows, m.cols) != (self.target.dim(i), self.source.dim(i)):
                raise InvalidInput(f"component {i} has the wrong shape")
        lo = min(self.source.lo, self.target.lo)
        hi = max(self.source.hi, self.target.hi)
        for i in range(lo, hi):
            lhs = self.target.d(i) * self.component(i)
            rhs = self.component(i + 1) * self.source.d(i)
            if not (lhs + (-rhs)).is_zero():
                raise InvalidInput(f"chain map does not commute at degree {i}")

    def component(self, i: int) -> IntMatrix:
        if i in self.comps:
            return self.comps[i]
        return IntMatrix.zero(self.target.dim(i), self.source.dim(i))

    def shift(self, k: int) -> "ChainMap":
        return ChainMap(
            self.source.shift(k),
            self.target.shift(k),
            {i - k: m for i, m in self.comps.items()},
        )

    def compose(self, inner: "ChainMap") -> "ChainMap":
        """self o inner."""
        if inner.target is not self.source and inner.target != self.source:
            raise InvalidInput("maps are not composable")
        comps = {}
        for i in range(
            min(inner.source.lo, self.target.lo),
            max(inner.source.hi, self.target.hi) + 1,
        ):
            m = self.component(i) * inner.component(i)
            if not m.is_zero():
                comps[i] = m
        return ChainMap(inner.source, self.target, comps)


def identity_map(c: FgComplex) -> ChainMap:
    return ChainMap(c, c, {i: IntMatrix.identity(c.dim(i)) for i in c.degrees()})


def scalar_map(c: FgComplex, k: int) -> ChainMap:
    return ChainMap(
        c, c, {i: IntMatrix.identity(c.dim(i)).scale(k) for i in c.degrees()}
    )


# ---------------------------------------------------------------------------
# Cohomology
# ---------------------------------------------------------------------------


def cocycle_data(c: FgComplex, i: int) -> Tuple[IntMatrix, IntMatrix]:
    """(K, X): K's columns are a basis of the cocycle lattice in degree i,
    and X presents H^i as the cokernel of X in that basis."""
    k = kernel_basis(c.d(i))
    x = solve_exact(k, c.d(i - 1)) if k.cols else IntMatrix.zero(0, c.dim(i - 1))
    return k, x


def cohomology(c: FgComplex) -> Dict[int, FgModule]:
    out: Dict[int, FgModule] = {}
    for i in c.degrees():
        _, x = cocycle_data(c, i)
        out[i] = FgModule.cokernel(x)
    return out


def rank_rational(a: IntMatrix) -> int:
    """Row-echelon rank over Q (independent of the Smith machinery)."""
    rows = [[Fraction(x) for x in r] for r in a.data]
    rank, col = 0, 0
    while rank < len(rows) and col < a.cols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


def rank_mod(a: IntMatrix, q: int) -> int:
    """Rank over the prime field F_q by elimination mod q."""
    rows = [[x % q for x in r] for r in a.data]
    rank, col = 0, 0
    while rank < len(rows) and col < a.cols:
        piv = next((i for i in range(rank, len(rows)) if rows[i][col] % q), None)
        if piv is None:
            col += 1
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, q)
        rows[rank] = [x * inv % q for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                f = rows[i][col]
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[rank])]
        rank += 1
        col += 1
    return rank


ORACLE_PRIMES = (2, 3, 5, 7, 11, 13)


def cohomology_oracle(c: FgComplex) -> Dict[int, Tuple[int, Dict[int, int]]]:
    """Independent rank-nullity oracle.

    Free rank of H^i from rational ranks; for each small prime q, the
    number of elementary divisors of H^i divisible by q from mod-q ranks
    via the universal-coefficient count, resolved from the top degree
    down.  Returns {i: (free_rank, {q: count})}.
    """
    free = {}
    dim_q = {q: {} for q in ORACLE_PRIMES}
    for i in c.degrees():
        r_hi = rank_rational(c.d(i))
        r_lo = rank_rational(c.d(i - 1))
        free[i] = c.dim(i) - r_hi - r_lo
        for q in ORACLE_PRIMES:
            dim_q[q][i] = c.dim(i) - rank_mod(c.d(i), q) - rank_mod(c.d(i - 1), q)
    out = {}
    tcount = {q: 0 for q in ORACLE_PRIMES}  # t_{i+1}(q) running value
    for i in reversed(list(c.degrees())):
        here = {}
        for q in ORACLE_PRIMES:
            t_i = dim_q[q][i] - free[i] - tcount[q]
            here[q] = t_i
            tcount[q] = t_i
        out[i] = (free[i], here)
    return out


# ---------------------------------------------------------------------------
# Cones, canonical triangle maps, torsion deletion
# ---------------------------------------------------------------------------


def cone(f: ChainMap) -> Tuple[FgComplex, ChainMap, ChainMap]:
    """Mapping cone with its canonical triangle maps.

    cone(f)^i = S^(i+1) (+) T^i with d(s, t) = (-d_S s, f s + d_T t);
    returns (cone, inclusion T -> cone, projection cone -> S[1]).
    """
    s, t = f.source, f.target
    lo = min(s.lo - 1, t.lo)
    hi = max(s.hi - 1, t.hi)
    dims = tuple(s.dim(i + 1) + t.dim(i) for i in range(lo, hi + 1))
    diffs = []
    for i in range(lo, hi):
        diffs.append(
            block_matrix(
                [
                    [-s.d(i + 1), IntMatrix.zero(s.dim(i + 2), t.dim(i))],
                    [f.component(i + 1), t.d(i)],
                ]
            )
        )
    cx = FgComplex(lo, dims, tuple(diffs))
    inc = ChainMap(
        t,
        cx,
        {
            i: block_matrix(
                [[IntMatrix.zero(s.dim(i + 1), t.dim(i))], [IntMatrix.identity(t.dim(i))]]
            )
            for i in t.degrees()
        },
    )
    s1 = s.shift(1)
    proj = ChainMap(
        cx,
        s1,
        {
            i: block_matrix(
                [[IntMatrix.identity(s.dim(i + 1)), IntMatrix.zero(s.dim(i + 1), t.dim(i))]]
            )
            for i in cx.degrees()
            if s.dim(i + 1)
        },
    )
    return cx, inc, proj


def connecting_map(f: ChainMap, g: ChainMap) -> ChainMap:
    """The canonical map cof(g) -> cof(f)[1] for composable f: X -> Y,
    g: Y -> Z: project the cone of g onto Y[1], then include Y[1] into
    the shifted cone of f."""
    if g.source != f.target:
        raise InvalidInput("maps are not composable")
    cg, _, proj_g = cone(g)
    cf, inc_f, _ = cone(f)
    return inc_f.shift(1).compose(proj_g)


def induced_map_is_zero(f: ChainMap) -> bool:
    """Whether f induces the zero map on every cohomology group: the image
    of each cocycle lattice must land in coboundaries."""
    s, t = f.source, f.target
    for i in range(min(s.lo, t.lo), max(s.hi, t.hi) + 1):
        k_s, _ = cocycle_data(s, i)
        if k_s.cols == 0:
            continue
        image = f.component(i) * k_s
        if image.is_zero():
            continue
        if not lattice_contains(t.d(i - 1), image):
            return False
    return True


def triangle_composite_vanishing(a1: ChainMap, a2: ChainMap, a3: ChainMap) -> bool:
    """For composable a1, a2, a3, the composite of the canonical maps
    cof(a3) -> cof(a2)[1] -> cof(a1)[2] must induce zero on cohomology."""
    first = connecting_map(a2, a3)
    second = connecting_map(a1, a2).shift(1)
    return induced_map_is_zero(second.compose(first))


def decalage(c: FgComplex, p: int, a: int = 1) -> FgComplex:
    """Subcomplex deleting p^a-torsion from cohomology.

    Degree i is the lattice p^(a(i-lo)) {x : dx = 0 mod p^a}, rewritten in
    its own basis; a uniform scaling normalizes negative lower degrees
    away without changing any cohomology.
    """
    if a < 1:
        raise InvalidInput("a must be >= 1")
    q = p**a
    bases: Dict[int, IntMatrix] = {}
    for i in c.degrees():
        if i == c.hi:
            b = IntMatrix.identity(c.dim(i))
        else:
            b = mod_power_kernel_basis(c.d(i), q)
        weight = q ** (i - c.lo)
        bases[i] = b.scale(weight)
    diffs = []
    for i in range(c.lo, c.hi):
        image = c.d(i) * bases[i]
        diffs.append(solve_exact(bases[i + 1], image))
    return FgComplex(c.lo, c.dims, tuple(diffs))


def split_free_torsion(presentation: IntMatrix, p: int) -> Tuple[int, List[int]]:
    """Rank and p-torsion exponents of the p-local module presented as the
    cokernel of the given relation matrix."""
    divisors, rank = snf(presentation)
    exps = []
    for d in divisors:
        v = 0
        while d % p == 0:
            d //= p
            v += 1
        if v:
            exps.append(v)
    return presentation.rows - rank, sorted(exps)


def two_term_cohomology(
    op: IntMatrix, p: int, m: int, r: Optional[int] = None, u: int = 1
) -> Tuple[FgModule, FgModule]:
    """Kernel and cokernel over Z_p of (op - lambda id) given mod p^m,
    with lambda = 1 + p^r u (lambda = 1 when r is None).

    The matrix entries are only meaningful mod p^m, so elementary-divisor
    valuations at or beyond m - 1 cannot be certified and raise.
    """
    if op.rows != op.cols:
        raise InvalidInput("operator must be square")
    if r is not None:
        if r < 1:
            raise PreconditionViolation("twist valuation r must be >= 1")
        if m <= r + 2:
            raise PreconditionViolation("need precision m > r + 2")
    lam = 1 if r is None else 1 + p**r * u
    n = op.rows
    a = op + IntMatrix.identity(n).scale(-lam)
    q = p**m
    if all(x % q == 0 for row in a.data for x in row):
        raise PreconditionViolation(
            "operator equals the scalar: the degenerate (trivial-twist) case"
        )
    divisors, rank = snf(a)
    p_exps = []
    for d in divisors:
        v = 0
        while d % p == 0:
            d //= p
            v += 1
        if v >= m - 1:
            raise PrecisionExhausted("elementary divisor at the precision edge")
        p_exps.append(v)
    free = n - rank
    torsion = tuple(p**v for v in sorted(p_exps) if v > 0)
    return FgModule(free), FgModule(free, torsion)
