"""Seeded generators for random test objects.

Complexes with d o d = 0 are built from elementary two-term summands and
free summands, then conjugated by random unimodular basis changes; chain
maps are built blockwise on the summands (where commuting is a one-line
congruence) and conjugated along.  Determinism: everything drives off an
explicit random.Random.
"""

from __future__ import annotations

import random
from math import gcd
from typing import Dict, List, Optional, Tuple

from .homology import ChainMap, FgComplex, IntMatrix
from .ramification import FiltrationProfile
from .towers import JumpSequence


def random_unimodular(n: int, rng: random.Random, ops: int = 4) -> Tuple[IntMatrix, IntMatrix]:
    """A random unimodular matrix and its inverse (products of elementary
    row additions and swaps; bounded entries keep Smith forms fast)."""
    fwd = [[int(i == j) for j in range(n)] for i in range(n)]
    inv = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(ops if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-1, 1))
        for col in range(n):
            fwd[i][col] += c * fwd[j][col]
        # inverse accumulates the opposite op on the right
        for row in range(n):
            inv[row][j] -= c * inv[row][i]
    return IntMatrix.from_rows(fwd, n), IntMatrix.from_rows(inv, n)


def _summands(rng: random.Random, length: int, max_pieces: int, max_entry: int):
    """Elementary summands: ('pair', deg, a) is Z --a--> Z in degrees
    (deg, deg+1); ('free', deg) is a single Z."""
    pieces = []
    for _ in range(rng.randrange(1, max_pieces + 1)):
        if length >= 2 and rng.random() < 0.75:
            deg = rng.randrange(0, length - 1)
            a = rng.randrange(-max_entry, max_entry + 1)
            pieces.append(("pair", deg, a))
        else:
            pieces.append(("free", rng.randrange(0, length), 0))
    return pieces


def _assemble(pieces, length: int) -> Tuple[FgComplex, List[List[Tuple[int, int]]]]:
    """Block-diagonal complex from summands; returns the complex and, per
    degree, the list of (piece index, role) occupying each coordinate
    (role 0 = source of a pair or a free piece, 1 = target of a pair)."""
    layout: List[List[Tuple[int, int]]] = [[] for _ in range(length)]
    for idx, (kind, deg, _a) in enumerate(pieces):
        layout[deg].append((idx, 0))
        if kind == "pair":
            layout[deg + 1].append((idx, 1))
    dims = tuple(len(layer) for layer in layout)
    diffs = []
    for k in range(length - 1):
        rows = [[0] * dims[k] for _ in range(dims[k + 1])]
        for col, (idx, role) in enumerate(layout[k]):
            kind, _deg, a = pieces[idx]
            if kind == "pair" and role == 0:
                row = layout[k + 1].index((idx, 1))
                rows[row][col] = a
        diffs.append(IntMatrix.from_rows(rows, dims[k]))
    return FgComplex(0, dims, tuple(diffs)), layout


def random_complex(
    rng: random.Random,
    max_length: int = 4,
    max_pieces: int = 4,
    max_entry: int = 9,
    conjugate: bool = True,
) -> FgComplex:
    length = rng.randrange(2, max_length + 1)
    pieces = _summands(rng, length, max_pieces, max_entry)
    cx, _ = _assemble(pieces, length)
    if not conjugate:
        return cx
    return conjugate_complex(cx, rng)[0]


def conjugate_complex(
    cx: FgComplex, rng: random.Random
) -> Tuple[FgComplex, Dict[int, Tuple[IntMatrix, IntMatrix]]]:
    """Random change of basis in every degree (returns the transforms)."""
    basis = {}
    for i in cx.degrees():
        basis[i] = random_unimodular(cx.dim(i), rng)
    diffs = []
    for i in range(cx.lo, cx.hi):
        p_next, _ = basis[i + 1]
        _, p_inv = basis[i]
        diffs.append(p_next * cx.d(i) * p_inv)
    return FgComplex(cx.lo, cx.dims, tuple(diffs)), basis


def random_chain_map(
    rng: random.Random,
    max_length: int = 3,
    max_pieces: int = 3,
    max_entry: int = 6,
) -> ChainMap:
    """A random chain map between freshly built complexes: elementary
    pairs map to each other through the congruence v a = b u, free pieces
    map to free pieces; both sides are then conjugated."""
    length = rng.randrange(2, max_length + 1)
    src_pieces = _summands(rng, length, max_pieces, max_entry)
    tgt_pieces = _summands(rng, length, max_pieces, max_entry)
    src, src_layout = _assemble(src_pieces, length)
    tgt, tgt_layout = _assemble(tgt_pieces, length)

    comps = {
        i: [[0] * src.dim(i) for _ in range(tgt.dim(i))] for i in src.degrees()
    }
    for si, (skind, sdeg, a) in enumerate(src_pieces):
        for ti, (tkind, tdeg, b) in enumerate(tgt_pieces):
            if sdeg != tdeg or rng.random() < 0.5:
                continue
            if skind == "pair" and tkind == "pair":
                # commuting for Z --a--> Z into Z --b--> Z means b u = v a
                g = gcd(a, b) if (a or b) else 0
                if g == 0:
                    u, v = rng.randrange(-2, 3), rng.randrange(-2, 3)
                else:
                    s = rng.randrange(-2, 3)
                    u, v = (a // g) * s, (b // g) * s
                r0 = tgt_layout[sdeg].index((ti, 0))
                c0 = src_layout[sdeg].index((si, 0))
                comps[sdeg][r0][c0] += u
                r1 = tgt_layout[sdeg + 1].index((ti, 1))
                c1 = src_layout[sdeg + 1].index((si, 1))
                comps[sdeg + 1][r1][c1] += v
            elif skind == "free" and tkind == "free":
                r0 = tgt_layout[sdeg].index((ti, 0))
                c0 = src_layout[sdeg].index((si, 0))
                comps[sdeg][r0][c0] += rng.randrange(-2, 3)

    f = ChainMap(
        src,
        tgt,
        {
            i: IntMatrix.from_rows(comps[i], src.dim(i))
            for i in src.degrees()
        },
    )
    src2, src_basis = conjugate_complex(src, rng)
    tgt2, tgt_basis = conjugate_complex(tgt, rng)
    new_comps = {}
    for i in src.degrees():
        q, _ = tgt_basis[i]
        _, p_inv = src_basis[i]
        new_comps[i] = q * f.component(i) * p_inv
    return ChainMap(src2, tgt2, new_comps)


def random_endomorphism_triple(
    rng: random.Random, max_entry: int = 5
) -> Tuple[ChainMap, ChainMap, ChainMap]:
    """Three composable maps: scalar multiples on a shared random complex
    (scalars always commute with the differentials)."""
    cx = random_complex(rng, max_length=3, max_pieces=3, max_entry=max_entry)
    maps = []
    for _ in range(3):
        k = rng.randrange(-max_entry, max_entry + 1)
        maps.append(
            ChainMap(
                cx,
                cx,
                {
                    i: IntMatrix.identity(cx.dim(i)).scale(k)
                    for i in cx.degrees()
                },
            )
        )
    return maps[0], maps[1], maps[2]


def random_profile(rng: random.Random, max_levels: int = 4) -> FiltrationProfile:
    """A random filtration profile from a divisor chain of <= max_levels
    proper subgroup drops at increasing integer breaks."""
    levels = rng.randrange(1, max_levels + 1)
    order = 1
    orders = [1]
    for _ in range(levels):
        order *= rng.choice((2, 2, 3, 4, 5))
        orders.append(order)
    orders.reverse()
    breaks = [(-1, orders[0])]
    u = rng.randrange(0, 2)
    for o in orders[1:]:
        breaks.append((u, o))
        u += rng.randrange(1, 4)
    return FiltrationProfile.from_breaks(breaks)


def random_jump_sequence(rng: random.Random, p: Optional[int] = None) -> JumpSequence:
    """Random eventually-arithmetic jumps with u_0 = -1 and no unramified
    steps (inertia index 0), as the sufficiency scans expect."""
    if p is None:
        p = rng.choice((2, 3, 5))
    e_k = rng.choice([e for e in (1, 2, 3, 4, 5, 6) if e % p != 0])
    prefix = [-1]
    u = rng.randrange(0, 3 * e_k + 1)
    n_star = rng.randrange(1, 4)
    for n in range(1, n_star + 1):
        prefix.append(u)
        u += rng.randrange(1, 3 * e_k + 1)
    # beyond n_star the difference is pinned to e_k
    prefix.append(prefix[-1] + e_k)
    return JumpSequence(p, e_k, tuple(prefix), n_star)
