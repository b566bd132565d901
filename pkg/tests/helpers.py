"""Random instances and brute-force oracles shared by the test modules.

The oracles deliberately avoid the code paths they check: lattice points
are found by scanning the whole integer box, sections by scanning the box
of exponents and testing the defining equations directly.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import ceil, floor, gcd, prod

from stackypoly.linalg import FgAbGroup, IntMatrix, rank_q
from stackypoly.polytope import RatPolytope, enumerate_vertices
from stackypoly.stacky import (
    StackyPolytope,
    StackyPolytopeError,
    derive_triple,
    delta_prime,
    verify_triple,
)


def random_matrix(rng: random.Random, rows: int, cols: int, lo: int = -20, hi: int = 20) -> IntMatrix:
    return IntMatrix([[rng.randint(lo, hi) for _ in range(cols)] for _ in range(rows)], ncols=cols)


def random_torsion(rng: random.Random, max_factors: int = 2) -> tuple[int, ...]:
    factors = []
    for _ in range(rng.randint(0, max_factors)):
        factors.append(rng.choice([2, 3, 4]) * (factors[-1] if factors else 1))
    return tuple(factors)


def _random_unimodular(rng: random.Random, n: int, steps: int = 3) -> list[list[int]]:
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        q = rng.choice([-1, 1])
        U[i] = [a + q * b for a, b in zip(U[i], U[j])]
    return U


def random_normals(rng: random.Random, r: int, max_d: int) -> list[tuple[int, ...]]:
    """Normals that positively span R^r: a simplex or cube shape, skewed, plus extras."""
    if rng.random() < 0.5 or 2 * r > max_d:
        base = [tuple(int(i == j) for j in range(r)) for i in range(r)] + [tuple([-1] * r)]
    else:
        base = [tuple(s * int(i == j) for j in range(r)) for i in range(r) for s in (1, -1)]
    U = _random_unimodular(rng, r)
    normals = [tuple(sum(U[i][k] * v[k] for k in range(r)) for i in range(r)) for v in base]
    while len(normals) < max_d and rng.random() < 0.5:
        v = tuple(rng.randint(-2, 2) for _ in range(r))
        if any(v) and v not in normals:
            normals.append(v)
    rng.shuffle(normals)
    return normals


def random_stacky_polytope(
    rng: random.Random,
    max_r: int = 3,
    max_d: int = 6,
    c_max: int = 5,
    torsion: bool = True,
    require_valid: bool = True,
) -> StackyPolytope:
    """A random valid stacky polytope with integer offsets in ``[0, c_max]``."""
    while True:
        r = rng.randint(1, max_r)
        normals = random_normals(rng, r, max_d)
        d = len(normals)
        if d > max_d:
            continue
        tors = random_torsion(rng) if torsion else ()
        cols = [tuple(rng.randrange(t) for t in tors) + n for n in normals]
        c = [rng.randint(0, c_max) for _ in range(d)]
        beta = IntMatrix.from_columns(cols)
        try:
            S = StackyPolytope(FgAbGroup(r, tors), beta, c)
        except StackyPolytopeError:
            continue
        if require_valid and not verify_triple(S, derive_triple(S)).valid:
            continue
        return S


def random_beta(rng: random.Random, max_d: int = 8, max_r: int = 4) -> tuple[FgAbGroup, IntMatrix]:
    """Random beta: Z^d -> N with finite cokernel (free block of full rank)."""
    while True:
        r = rng.randint(0, max_r)
        d = rng.randint(max(r, 1), max_d)
        tors = random_torsion(rng)
        free = random_matrix(rng, r, d, -3, 3)
        if r and rank_q(free.tolist()) < r:
            continue
        rows = [[rng.randrange(t) for _ in range(d)] for t in tors] + free.tolist()
        return FgAbGroup(r, tors), IntMatrix(rows, ncols=d)


# ---------------------------------------------------------------------------
# oracles


def naive_lattice_points(P: RatPolytope) -> list[tuple[int, ...]]:
    verts = enumerate_vertices(P)
    if not verts:
        return []
    box = [range(ceil(min(v[i] for v in verts)), floor(max(v[i] for v in verts)) + 1) for i in range(P.dim)]
    return [p for p in itertools.product(*box) if P.contains(p)]


def box_volume(P: RatPolytope) -> int:
    verts = enumerate_vertices(P)
    if not verts:
        return 0
    return prod(max(0, floor(max(v[i] for v in verts)) - ceil(min(v[i] for v in verts)) + 1) for i in range(P.dim))


def section_box(S: StackyPolytope) -> list[range]:
    verts = enumerate_vertices(delta_prime(derive_triple(S)))
    return [range(0, floor(max(v[nu] for v in verts)) + 1) for nu in range(S.d)] if verts else []


def naive_sections(S: StackyPolytope, box: list[range] | None = None) -> list[tuple[int, ...]]:
    """Scan exponent vectors and test ``beta^DG(alpha) = tau`` coordinatewise."""
    T = derive_triple(S)
    box = section_box(S) if box is None else box
    if not box:
        return []
    tors = T.group.torsion
    k = len(tors)
    out = []
    for alpha in itertools.product(*box):
        img = T.beta_dg.apply(alpha)
        if any(Fraction(x) != t for x, t in zip(img[k:], T.tau)):
            continue
        if any((x - y) % n for x, y, n in zip(img[:k], T.tau_torsion, tors)):
            continue
        out.append(alpha)
    return out


def determinantal_divisors(A: IntMatrix) -> list[int]:
    """Invariant factors from gcds of k x k minors (small matrices only)."""
    factors, prev = [], 1
    for k in range(1, min(A.shape) + 1):
        g = 0
        for rows in itertools.combinations(range(A.rows), k):
            for cols in itertools.combinations(range(A.cols), k):
                g = gcd(g, A.submatrix(rows, cols).det())
        if g == 0:
            break
        factors.append(g // prev)
        prev = g
    return factors
