"""Homothety classes of lattices and balls in the affine building for
projective linear groups of rank 2 and 3 over the p-adic numbers.

A class is a Hermite-normal-form representative, normalized so the
smallest elementary divisor is 1.  Adjacency comes from intermediate
lattices between L and pL, i.e. proper nonzero subspaces of L/pL;
simplices are the pairwise-incident subsets (a flag property that is
re-validated on every enumerated ball rather than trusted).

Supported regimes: rank-2 balls of radius <= 6 (trees, contractible) and
rank-3 balls of radius <= 1 (cones over the link, contractible).  Larger
rank-3 balls are excluded: whether those combinatorial balls remain
contractible is not settled by anything implemented here, so their
cohomology would be reported without an expected value.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import InvalidInput, UnsupportedRegime
from .exactval import require_prime

Matrix = Tuple[Tuple[int, ...], ...]


def _hnf_rows(rows: List[List[int]], n: int) -> Matrix:
    """Row-style Hermite normal form of a full-rank integer row lattice:
    upper triangular, positive pivots, entries above a pivot reduced."""
    rows = [r[:] for r in rows if any(r)]
    out: List[List[int]] = []
    for col in range(n):
        rows = [r for r in rows if any(r)]
        pool = [r for r in rows if r[col] != 0]
        if not pool:
            raise InvalidInput("row lattice is not full rank")
        while True:
            pool.sort(key=lambda r: abs(r[col]))
            piv = pool[0]
            done = True
            for r in pool[1:]:
                q = r[col] // piv[col]
                for j in range(n):
                    r[j] -= q * piv[j]
                if r[col]:
                    done = False
            pool = [piv] + [r for r in pool[1:] if r[col] != 0]
            if done:
                break
        if piv[col] < 0:
            piv[:] = [-x for x in piv]
        out.append(piv)
        rows = [r for r in rows if r is not piv and not (r[col] != 0)] + [
            r for r in pool[1:]
        ]
        rows = [r for r in rows if any(r)]
        # clear the column below (rows left all have 0 in col already)
    # reduce entries above pivots
    for i in reversed(range(n)):
        for k in range(i):
            q = out[k][i] // out[i][i]
            if q:
                for j in range(n):
                    out[k][j] -= q * out[i][j]
    return tuple(tuple(r) for r in out)


def _int_vp(x: int, p: int) -> int:
    v = 0
    x = abs(x)
    while x and x % p == 0:
        x //= p
        v += 1
    return v


@dataclass(frozen=True)
class LatticeClass:
    """Homothety class of a full lattice, by its normalized HNF rows."""

    n: int
    p: int
    rep: Matrix

    def __post_init__(self):
        require_prime(self.p)
        if self.n not in (2, 3):
            raise InvalidInput("rank must be 2 or 3")
        if len(self.rep) != self.n or any(len(r) != self.n for r in self.rep):
            raise InvalidInput("representative must be square")

    @classmethod
    def standard(cls, n: int, p: int) -> "LatticeClass":
        return cls(n, p, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    @classmethod
    def from_rows(cls, n: int, p: int, rows: Sequence[Sequence[int]]):
        h = _hnf_rows([list(r) for r in rows], n)
        # homothety normalization: divide out the common p-power (the
        # smallest elementary divisor is the gcd of all entries)
        g = 0
        for r in h:
            for x in r:
                g = gcd2(g, x)
        v = _int_vp(g, p)
        if v:
            h = tuple(tuple(x // p**v for x in r) for r in h)
        for i in range(n):
            d = h[i][i]
            if d <= 0 or d != p ** _int_vp(d, p):
                raise InvalidInput("diagonal entries must be p-powers")
        return cls(n, p, h)

    def index_valuation(self) -> int:
        """v_p of the index in the smallest standard lattice containing it."""
        v = 0
        for i in range(self.n):
            v += _int_vp(self.rep[i][i], self.p)
        return v

    def sort_key(self):
        return (self.index_valuation(), self.rep)


def gcd2(a: int, b: int) -> int:
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a


def _proper_subspaces(n: int, p: int) -> List[List[Tuple[int, ...]]]:
    """Bases of the proper nonzero subspaces of F_p^n (dims 1..n-1)."""
    out: List[List[Tuple[int, ...]]] = []
    # dimension 1: projective points, first nonzero coordinate 1
    points = []
    for idx in range(p**n):
        vec = []
        v = idx
        for _ in range(n):
            vec.append(v % p)
            v //= p
        if not any(vec):
            continue
        lead = next(i for i in range(n) if vec[i])
        if vec[lead] != 1:
            continue
        points.append(tuple(vec))
    out.extend([pt] for pt in points)
    if n == 3:
        # dimension 2: kernels of projective functionals
        for phi in points:
            basis = []
            lead = next(i for i in range(3) if phi[i])
            for i in range(3):
                if i == lead:
                    continue
                vec = [0, 0, 0]
                vec[i] = 1
                vec[lead] = (-phi[i]) % p
                basis.append(tuple(vec))
            out.append(basis)
    return out


def neighbors(c: LatticeClass) -> List[LatticeClass]:
    """Classes of lattices strictly between pL and L: one per proper
    nonzero subspace of L/pL, deduplicated through the normal form."""
    n, p = c.n, c.p
    seen = {}
    for basis in _proper_subspaces(n, p):
        rows = [[p * x for x in row] for row in c.rep]
        for vec in basis:
            lift = [0] * n
            for coeff, row in zip(vec, c.rep):
                if coeff:
                    for j in range(n):
                        lift[j] += coeff * row[j]
            rows.append(lift)
        cls = LatticeClass.from_rows(n, p, rows)
        seen[cls.rep] = cls
    return sorted(seen.values(), key=LatticeClass.sort_key)


@dataclass(frozen=True)
class BuildingBall:
    """Full subcomplex on the classes within a graph-distance radius of
    the standard class; simplices are the pairwise-incident subsets."""

    n: int
    p: int
    radius: int
    vertices: Tuple[LatticeClass, ...]
    simplices: Tuple[Tuple[int, ...], ...]  # sorted index tuples, all faces

    def simplices_of_dim(self, k: int) -> List[Tuple[int, ...]]:
        return [s for s in self.simplices if len(s) == k + 1]

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "p": self.p,
                "radius": self.radius,
                "vertices": [[list(r) for r in v.rep] for v in self.vertices],
                "simplices": [list(s) for s in self.simplices],
            }
        )

    @classmethod
    def from_json(cls, s: str) -> "BuildingBall":
        d = json.loads(s)
        vertices = tuple(
            LatticeClass(d["n"], d["p"], tuple(tuple(r) for r in rep))
            for rep in d["vertices"]
        )
        return cls(
            d["n"],
            d["p"],
            d["radius"],
            vertices,
            tuple(tuple(s) for s in d["simplices"]),
        )


def tree_ball_vertex_count(p: int, radius: int) -> int:
    """Closed form for balls in the (p+1)-regular tree."""
    if radius == 0:
        return 1
    return 1 + (p + 1) * (p**radius - 1) // (p - 1)


def scaled_containment(outer: LatticeClass, inner: LatticeClass) -> int:
    """Smallest k with p^k * inner contained in outer.

    Containment of row lattices is integrality of inner * outer^-1; the
    determinant of a normalized representative is a power of p, so some
    scaling always works."""
    n, p = outer.n, outer.p
    det, adj = _det_adjugate(outer.rep)
    a = _int_vp(det, p)
    if det != p**a:
        raise AssertionError("normalized representative must have p-power det")
    worst = 0
    for i in range(n):
        for j in range(n):
            num = sum(inner.rep[i][t] * adj[t][j] for t in range(n))
            if num:
                worst = max(worst, a - min(_int_vp(num, p), a))
    return worst


def _det_adjugate(m: Matrix) -> Tuple[int, Matrix]:
    n = len(m)
    if n == 2:
        det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
        adj = ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))
        return det, adj
    det = sum(
        m[0][j]
        * ((-1) ** j)
        * (
            m[1][(j + 1) % 3] * m[2][(j + 2) % 3]
            - m[1][(j + 2) % 3] * m[2][(j + 1) % 3]
        )
        for j in range(3)
    )
    cof = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            r = [x for x in range(3) if x != i]
            c = [x for x in range(3) if x != j]
            minor = m[r[0]][c[0]] * m[r[1]][c[1]] - m[r[0]][c[1]] * m[r[1]][c[0]]
            cof[i][j] = (-1) ** (i + j) * minor
    adj = tuple(tuple(cof[j][i] for j in range(3)) for i in range(3))
    return det, adj


def is_flag(classes: Sequence[LatticeClass]) -> bool:
    """Whether the classes admit representatives forming a chain
    L_1 > L_2 > ... > L_m > p L_1 (the defining property of a simplex)."""
    if len(classes) <= 1:
        return True
    base = classes[0]
    n, p = base.n, base.p
    scaled = []
    for c in classes:
        k = scaled_containment(base, c)
        if k is None:
            return False
        rows = [[x * p**k for x in r] for r in c.rep]
        scaled.append(_hnf_rows(rows, n))
    order = sorted(range(len(classes)), key=lambda i: _index_in(base.rep, scaled[i]))
    chain = [scaled[i] for i in order]
    for outer, inner in zip(chain, chain[1:]):
        if not _rows_contained(outer, inner, strict=True):
            return False
    last = chain[-1]
    p_first = tuple(tuple(p * x for x in r) for r in chain[0])
    return _rows_contained(last, p_first, strict=True)


def _index_in(outer: Matrix, inner: Matrix) -> int:
    det_o, _ = _det_adjugate(outer)
    det_i, _ = _det_adjugate(inner)
    return abs(det_i) // abs(det_o)


def _rows_contained(outer: Matrix, inner: Matrix, strict: bool = False) -> bool:
    det, adj = _det_adjugate(outer)
    n = len(outer)
    for i in range(n):
        for j in range(n):
            num = sum(inner[i][t] * adj[t][j] for t in range(n))
            if num % det != 0:
                return False
    return not strict or _index_in(outer, inner) > 1


def build_ball(n: int, p: int, radius: int) -> BuildingBall:
    """Breadth-first ball around the standard class, with its simplices.

    Supported regimes only; the simplex list is validated against the
    flag criterion (every pairwise-incident set must be a genuine chain).
    """
    require_prime(p)
    if n == 2:
        if radius > 6:
            raise UnsupportedRegime("rank-2 balls are capped at radius 6")
    elif n == 3:
        if radius > 1:
            raise UnsupportedRegime(
                "rank-3 balls beyond radius 1 have no contractibility certificate"
            )
    else:
        raise InvalidInput("rank must be 2 or 3")
    start = LatticeClass.standard(n, p)
    frontier = [start]
    dist = {start.rep: 0}
    verts = [start]
    for step in range(1, radius + 1):
        new_frontier = []
        for c in sorted(frontier, key=LatticeClass.sort_key):
            for nb in neighbors(c):
                if nb.rep not in dist:
                    dist[nb.rep] = step
                    new_frontier.append(nb)
                    verts.append(nb)
        frontier = new_frontier
    verts = sorted(verts, key=lambda c: (dist[c.rep], c.rep))
    index_of = {c.rep: i for i, c in enumerate(verts)}
    adjacency: Dict[int, set] = {i: set() for i in range(len(verts))}
    for i, c in enumerate(verts):
        for nb in neighbors(c):
            j = index_of.get(nb.rep)
            if j is not None:
                adjacency[i].add(j)
                adjacency[j].add(i)
    simplices: List[Tuple[int, ...]] = [(i,) for i in range(len(verts))]
    edges = [
        (i, j) for i in range(len(verts)) for j in sorted(adjacency[i]) if i < j
    ]
    simplices.extend(edges)
    if n == 3:
        for i, j in edges:
            for k in sorted(adjacency[i] & adjacency[j]):
                if k > j:
                    simplices.append((i, j, k))
    for s in simplices:
        if len(s) > n:
            raise AssertionError("simplex dimension exceeded the rank bound")
        if len(s) > 1 and not is_flag([verts[i] for i in s]):
            raise AssertionError(f"pairwise-incident set {s} is not a flag")
    return BuildingBall(n, p, radius, tuple(verts), tuple(simplices))


def simplicial_cohomology(ball: BuildingBall, char: int) -> Dict[int, int]:
    """Simplicial cochain cohomology dimensions over the prime field of
    the given characteristic."""
    require_prime(char)
    top = max(len(s) for s in ball.simplices)
    by_dim = [ball.simplices_of_dim(k) for k in range(top)]
    index = [{s: i for i, s in enumerate(layer)} for layer in by_dim]
    ranks = []
    for k in range(top - 1):
        rows = len(by_dim[k + 1])
        cols = len(by_dim[k])
        mat = [[0] * cols for _ in range(rows)]
        for r, simplex in enumerate(by_dim[k + 1]):
            for drop in range(len(simplex)):
                face = simplex[:drop] + simplex[drop + 1 :]
                mat[r][index[k][face]] += (-1) ** drop
        ranks.append(_rank_mod(mat, char))
    out = {}
    for k in range(top):
        dim = len(by_dim[k])
        r_up = ranks[k] if k < top - 1 else 0
        r_down = ranks[k - 1] if k > 0 else 0
        out[k] = dim - r_up - r_down
    return out


def _rank_mod(rows: List[List[int]], q: int) -> int:
    rows = [[x % q for x in r] for r in rows]
    rank, col = 0, 0
    ncols = len(rows[0]) if rows else 0
    while rank < len(rows) and col < ncols:
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
