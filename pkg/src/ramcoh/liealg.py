"""Integral Lie algebras and their exterior-algebra cochain cohomology.

Structure constants are exact integers; antisymmetry and the Jacobi
identity are checked at construction.  Cohomology (trivial coefficients)
goes through the integer-complex machinery, so free ranks and torsion
exponents come out exact.  Only trivial coefficients are in scope; a
scaled lattice (all brackets multiplied by a prime power) stands in for
congruence-level phenomena.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .errors import InvalidInput, ResourceLimit
from .homology import FgComplex, FgModule, IntMatrix, cohomology

MAX_DIM = 12


@dataclass(frozen=True)
class LieAlgebraZ:
    """Lie algebra over Z by structure constants: bracket[i][j] is the
    coordinate vector of [e_i, e_j]."""

    dim: int
    bracket: Tuple[Tuple[Tuple[int, ...], ...], ...]

    def __post_init__(self):
        n = self.dim
        if len(self.bracket) != n or any(
            len(row) != n or any(len(v) != n for v in row) for row in self.bracket
        ):
            raise InvalidInput("structure constants have the wrong shape")
        for i in range(n):
            for j in range(n):
                if any(
                    a != -b for a, b in zip(self.bracket[i][j], self.bracket[j][i])
                ):
                    raise InvalidInput("antisymmetry fails")
        for i in range(n):
            for j in range(i + 1, n):
                for k in range(j + 1, n):
                    acc = [0] * n
                    for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
                        inner = self.bracket[a][b]
                        for t, coeff in enumerate(inner):
                            if coeff:
                                outer = self.bracket[t][c]
                                for s in range(n):
                                    acc[s] += coeff * outer[s]
                    if any(acc):
                        raise InvalidInput(f"Jacobi fails on basis triple {(i,j,k)}")

    # -- constructions ---------------------------------------------------

    @classmethod
    def abelian(cls, n: int) -> "LieAlgebraZ":
        zero = tuple(tuple(0 for _ in range(n)) for _ in range(n))
        return cls(n, tuple(zero for _ in range(n)))

    @classmethod
    def from_dict(cls, n: int, pairs: Dict[Tuple[int, int], Dict[int, int]]):
        """Brackets [e_i, e_j] for i < j as sparse coordinate dicts."""
        table = [[[0] * n for _ in range(n)] for _ in range(n)]
        for (i, j), vec in pairs.items():
            for k, c in vec.items():
                table[i][j][k] = c
                table[j][i][k] = -c
        return cls(n, tuple(tuple(tuple(v) for v in row) for row in table))

    @classmethod
    def heisenberg(cls) -> "LieAlgebraZ":
        return cls.from_dict(3, {(0, 1): {2: 1}})

    @classmethod
    def sl2(cls) -> "LieAlgebraZ":
        # basis e, f, h
        return cls.from_dict(
            3, {(0, 1): {2: 1}, (2, 0): {0: 2}, (2, 1): {1: -2}}
        )

    @classmethod
    def gl(cls, n: int) -> "LieAlgebraZ":
        """gl_n with basis E_(a,b) at index a*n + b."""
        dim = n * n
        pairs: Dict[Tuple[int, int], Dict[int, int]] = {}
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    for d in range(n):
                        i, j = a * n + b, c * n + d
                        if i >= j:
                            continue
                        vec: Dict[int, int] = {}
                        if b == c:
                            vec[a * n + d] = vec.get(a * n + d, 0) + 1
                        if d == a:
                            vec[c * n + b] = vec.get(c * n + b, 0) - 1
                        if vec:
                            pairs[(i, j)] = vec
        return cls.from_dict(dim, pairs)

    def scaled(self, factor: int) -> "LieAlgebraZ":
        """Multiply every bracket by a constant (Jacobi survives)."""
        return LieAlgebraZ(
            self.dim,
            tuple(
                tuple(tuple(factor * c for c in vec) for vec in row)
                for row in self.bracket
            ),
        )

    def direct_sum(self, other: "LieAlgebraZ") -> "LieAlgebraZ":
        n, m = self.dim, other.dim
        table = [[[0] * (n + m) for _ in range(n + m)] for _ in range(n + m)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    table[i][j][k] = self.bracket[i][j][k]
        for i in range(m):
            for j in range(m):
                for k in range(m):
                    table[n + i][n + j][n + k] = other.bracket[i][j][k]
        return LieAlgebraZ(
            n + m, tuple(tuple(tuple(v) for v in row) for row in table)
        )


def ce_complex(algebra: LieAlgebraZ) -> FgComplex:
    """Exterior-algebra cochain complex with the standard differential for
    trivial coefficients, as integer matrices of binomial sizes."""
    n = algebra.dim
    if n > MAX_DIM:
        raise ResourceLimit(f"dimension {n} exceeds the cap {MAX_DIM}")
    bases = [list(combinations(range(n), k)) for k in range(n + 1)]
    index = [{s: t for t, s in enumerate(b)} for b in bases]
    diffs: List[IntMatrix] = []
    for k in range(n):
        rows = [[0] * len(bases[k]) for _ in range(len(bases[k + 1]))]
        for t, big in enumerate(bases[k + 1]):
            for i in range(k + 1):
                for j in range(i + 1, k + 1):
                    rest = tuple(x for pos, x in enumerate(big) if pos not in (i, j))
                    vec = algebra.bracket[big[i]][big[j]]
                    for c, coeff in enumerate(vec):
                        if coeff == 0 or c in rest:
                            continue
                        pos = sum(1 for x in rest if x < c)
                        merged_list = list(rest)
                        merged_list.insert(pos, c)
                        col = index[k][tuple(merged_list)]
                        sign = (-1) ** (i + j) * (-1) ** pos
                        rows[t][col] += sign * coeff
        diffs.append(IntMatrix.from_rows(rows, len(bases[k])))
    return FgComplex(0, tuple(len(b) for b in bases), tuple(diffs))


def lie_cohomology(algebra: LieAlgebraZ) -> Dict[int, FgModule]:
    return cohomology(ce_complex(algebra))


def exterior_poincare(gen_degrees: Sequence[int]) -> Dict[int, int]:
    """Graded dimensions of an exterior algebra on generators in the given
    degrees (negative degrees welcome)."""
    dims = {0: 1}
    for g in gen_degrees:
        new = dict(dims)
        for deg, count in dims.items():
            new[deg + g] = new.get(deg + g, 0) + count
        dims = new
    return {d: c for d, c in sorted(dims.items()) if c}


def theorem_a_series(n: int) -> Dict[int, int]:
    """Graded dimensions of the exterior algebra on one generator in
    degree 1 - 2i for each i = 1..n; total dimension 2^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return exterior_poincare([1 - 2 * i for i in range(1, n + 1)])


def odd_degree_generators(n: int) -> List[int]:
    return [2 * i - 1 for i in range(1, n + 1)]


@dataclass(frozen=True)
class LazardReport:
    n: int
    p: int
    scale_exp: int
    free_ranks: Tuple[int, ...]
    expected_ranks: Tuple[int, ...]
    ranks_match: bool
    torsion_exponents: Tuple[Tuple[int, ...], ...]
    max_exponent: int

    def to_dict(self) -> Dict[str, object]:
        return {
            "n": self.n,
            "p": self.p,
            "scale_exp": self.scale_exp,
            "ranks": list(self.free_ranks),
            "expected_ranks": list(self.expected_ranks),
            "ranks_match": self.ranks_match,
            "torsion_exponents": [list(t) for t in self.torsion_exponents],
            "max_exponent": self.max_exponent,
        }


def lazard_check(n: int, p: int, scale_exp: int) -> LazardReport:
    """Cohomology of the congruence-scaled gl_n lattice: free ranks must
    reproduce the exterior algebra on odd degrees 1, 3, ..., 2n-1; the
    observed maximal p-torsion exponent is reported, not asserted (only
    finiteness is claimed upstream)."""
    if not 1 <= n <= 3:
        raise ResourceLimit("n is capped at 3 (matrix sizes explode)")
    if scale_exp < 1:
        raise ValueError("scale_exp must be >= 1 for odd p")
    algebra = LieAlgebraZ.gl(n).scaled(p**scale_exp)
    coh = lie_cohomology(algebra)
    expected = exterior_poincare(odd_degree_generators(n))
    degrees = range(0, n * n + 1)
    free_ranks = tuple(coh[i].free_rank for i in degrees)
    expected_ranks = tuple(expected.get(i, 0) for i in degrees)
    torsion = []
    max_exp = 0
    for i in degrees:
        exps = []
        for dv in coh[i].divisors:
            v = 0
            while dv % p == 0:
                dv //= p
                v += 1
            if v:
                exps.append(v)
                max_exp = max(max_exp, v)
        torsion.append(tuple(exps))
    return LazardReport(
        n,
        p,
        scale_exp,
        free_ranks,
        expected_ranks,
        free_ranks == expected_ranks,
        tuple(torsion),
        max_exp,
    )
