"""Exact rational polyhedra given by half-spaces.

A half-space is stored as ``(normal, offset)`` and means
``<x, normal> >= -offset``, which is the form the facet inequalities of a
stacky polytope come in. Vertices are found by solving every square
active-constraint system exactly; this is exponential in the number of
constraints but fine for the desk-scale polytopes handled here.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import ceil, floor
from typing import Sequence

from .linalg import _rref, nullspace_q, rank_q, solve_q

Point = tuple[Fraction, ...]


class PolytopeError(ValueError):
    pass


class UnboundedError(PolytopeError):
    """The polyhedron is unbounded where a bounded one was required."""


class NoVertexError(PolytopeError):
    """The polyhedron is nonempty but contains a line, so has no vertex."""


@dataclass(frozen=True)
class Halfspace:
    normal: tuple[Fraction, ...]
    offset: Fraction

    def __post_init__(self):
        object.__setattr__(self, "normal", tuple(Fraction(x) for x in self.normal))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if self.normal and not any(self.normal):
            raise ValueError("half-space normal must be nonzero")

    def value(self, x: Sequence) -> Fraction:
        """Slack ``<x, normal> + offset``; nonnegative iff x is inside."""
        return sum((a * b for a, b in zip(self.normal, x)), Fraction(0)) + self.offset

    def contains(self, x: Sequence) -> bool:
        return self.value(x) >= 0

    def is_opposite(self, other: Halfspace) -> bool:
        """True when the two half-spaces are the two sides of one hyperplane."""
        i = next(k for k, a in enumerate(self.normal) if a)
        if other.normal[i] == 0:
            return False
        lam = -other.normal[i] / self.normal[i]
        return (
            lam > 0
            and all(b == -lam * a for a, b in zip(self.normal, other.normal))
            and other.offset == -lam * self.offset
        )

    def is_same(self, other: Halfspace) -> bool:
        i = next(k for k, a in enumerate(self.normal) if a)
        if other.normal[i] == 0:
            return False
        lam = other.normal[i] / self.normal[i]
        return (
            lam > 0
            and all(b == lam * a for a, b in zip(self.normal, other.normal))
            and other.offset == lam * self.offset
        )


@dataclass(frozen=True)
class PolytopeReport:
    bounded: bool
    nonempty: bool
    simple: bool
    facet_defining: tuple[bool, ...]
    dimension_full: bool

    @property
    def ok(self) -> bool:
        return self.bounded and self.nonempty and self.simple and self.dimension_full and all(self.facet_defining)


@dataclass(frozen=True, eq=False)
class RatPolytope:
    dim: int
    halfspaces: tuple[Halfspace, ...]
    _cache: dict = field(default_factory=dict, init=False, repr=False, compare=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "halfspaces", tuple(self.halfspaces))
        for h in self.halfspaces:
            if len(h.normal) != self.dim:
                raise ValueError(f"half-space of dimension {len(h.normal)} in ambient dimension {self.dim}")
            if self.dim > 0 and not any(h.normal):
                raise ValueError("half-space normal must be nonzero")

    @classmethod
    def from_inequalities(cls, normals: Sequence[Sequence], offsets: Sequence) -> RatPolytope:
        """Build ``{x | <x, normals[i]> >= -offsets[i]}``."""
        hs = tuple(Halfspace(tuple(n), o) for n, o in zip(normals, offsets, strict=True))
        dim = len(normals[0]) if normals else 0
        return cls(dim, hs)

    def contains(self, x: Sequence) -> bool:
        return all(h.contains(x) for h in self.halfspaces)

    def _cached(self, key, compute):
        with self._lock:
            if key not in self._cache:
                self._cache[key] = compute()
            return self._cache[key]

    @property
    def vertices(self) -> list[Point]:
        return self._cached("vertices", lambda: _vertices(self))

    def slice_first(self, value) -> RatPolytope | None:
        """Section ``x_0 = value`` as a polytope in the remaining coordinates.

        Returns None when a constraint not involving the remaining
        coordinates is already violated.
        """
        value = Fraction(value)
        hs = []
        for h in self.halfspaces:
            rest, off = h.normal[1:], h.offset + h.normal[0] * value
            if any(rest):
                hs.append(Halfspace(rest, off))
            elif off < 0:
                return None
        return RatPolytope(self.dim - 1, tuple(hs))


# ---------------------------------------------------------------------------
# vertex enumeration


def _split_equalities(hs: Sequence[Halfspace]) -> tuple[list[int], list[int]]:
    """Indices of implicit equality pairs (kept once) and of the plain inequalities."""
    eq, partner = [], set()
    for i, j in combinations(range(len(hs)), 2):
        if i in partner or j in partner:
            continue
        if hs[i].is_opposite(hs[j]):
            eq.append(i)
            partner.update((i, j))
    ineq = [i for i in range(len(hs)) if i not in partner]
    return eq, ineq


def _pointed_vertices(dim: int, hs: Sequence[Halfspace]) -> list[Point]:
    if dim == 0:
        return [()] if all(h.offset >= 0 for h in hs) else []
    eq, ineq = _split_equalities(hs)
    eq_rows = [hs[i].normal for i in eq]
    eq_rhs = [-hs[i].offset for i in eq]
    need = dim - rank_q(eq_rows) if eq_rows else dim
    found: dict[Point, None] = {}
    for subset in combinations(ineq, need):
        rows = eq_rows + [hs[i].normal for i in subset]
        rhs = eq_rhs + [-hs[i].offset for i in subset]
        x = solve_q(rows, rhs) if rows else ()
        if x is None:
            continue
        if all(h.contains(x) for h in hs):
            found.setdefault(x)
    return sorted(found)


def _vertices(P: RatPolytope) -> list[Point]:
    normals = [h.normal for h in P.halfspaces]
    if P.dim > 0 and (not normals or rank_q(normals) < P.dim):
        if is_nonempty(P):
            raise NoVertexError("unbounded-with-no-vertex: the polyhedron contains a line")
        return []
    return _pointed_vertices(P.dim, P.halfspaces)


def enumerate_vertices(P: RatPolytope) -> list[Point]:
    """All vertices of P, exact and sorted.

    Raises NoVertexError when P is nonempty but contains a line.
    """
    return list(P.vertices)


def is_nonempty(P: RatPolytope) -> bool:
    """Feasibility, by restricting to the span of the normals (where P is pointed)."""
    if P.dim == 0:
        return all(h.offset >= 0 for h in P.halfspaces)
    normals = [h.normal for h in P.halfspaces]
    if not normals:
        return True
    k = rank_q(normals)
    if k == P.dim:
        return bool(_pointed_vertices(P.dim, P.halfspaces))
    # x = R^T y with R a basis of the row space; constraints only see y
    m, pivots = _rref(normals)
    R = m[: len(pivots)]
    hs = []
    for h in P.halfspaces:
        n = tuple(sum((a * b for a, b in zip(h.normal, r)), Fraction(0)) for r in R)
        hs.append(Halfspace(n, h.offset))
    return bool(_pointed_vertices(k, hs))


# ---------------------------------------------------------------------------
# analysis


def _recession_is_zero(dim: int, normals: list[tuple[Fraction, ...]]) -> bool:
    if dim == 0:
        return True
    if not normals or rank_q(normals) < dim:
        return False
    # pointed cone {x : N x >= 0}: nonzero iff it has an extreme ray
    for subset in combinations(normals, dim - 1):
        rows = list(subset)
        if rows and rank_q(rows) < dim - 1:
            continue
        (ray,) = nullspace_q(rows, dim) if rows else nullspace_q([], dim)
        for r in (ray, tuple(-x for x in ray)):
            if all(sum((a * b for a, b in zip(n, r)), Fraction(0)) >= 0 for n in normals):
                return False
    return True


def _affine_rank(points: Sequence[Point]) -> int:
    if not points:
        return -1
    base = points[0]
    diffs = [tuple(a - b for a, b in zip(p, base)) for p in points[1:]]
    return rank_q(diffs) if diffs and diffs[0] else 0


def analyze(P: RatPolytope) -> PolytopeReport:
    """Boundedness, emptiness, simplicity and facet structure of P.

    The per-facet and simplicity flags are only computed for nonempty
    bounded P; otherwise they are reported False.
    """
    hs = P.halfspaces
    bounded = _recession_is_zero(P.dim, [h.normal for h in hs])
    nonempty = is_nonempty(P)
    if not (bounded and nonempty):
        return PolytopeReport(bounded, nonempty, False, (False,) * len(hs), False)

    verts = P.vertices
    dimension_full = _affine_rank(verts) == P.dim
    tight = [[i for i, h in enumerate(hs) if h.value(v) == 0] for v in verts]
    facet = []
    for i, h in enumerate(hs):
        duplicated = any(j != i and h.is_same(g) for j, g in enumerate(hs))
        face = [v for v, t in zip(verts, tight) if i in t]
        facet.append(not duplicated and _affine_rank(face) == P.dim - 1)
    simple = dimension_full and all(sum(1 for i in t if facet[i]) == P.dim for t in tight)
    return PolytopeReport(bounded, nonempty, simple, tuple(facet), dimension_full)


# ---------------------------------------------------------------------------
# lattice points


def bounding_box(P: RatPolytope) -> list[tuple[int, int]]:
    """Integer bounding box ``[(lo, hi), ...]`` from the exact vertices."""
    verts = P.vertices
    if not verts:
        return []
    return [(ceil(min(v[i] for v in verts)), floor(max(v[i] for v in verts))) for i in range(P.dim)]


def lattice_points(P: RatPolytope) -> list[tuple[int, ...]]:
    """All points of ``Z^dim`` in P, boundary included, in lexicographic order.

    Enumerates coordinate by coordinate: the range of the first coordinate
    comes from the exact vertices, and each integer value is recursed into
    as a lower-dimensional slice.
    """
    if not _recession_is_zero(P.dim, [h.normal for h in P.halfspaces]):
        raise UnboundedError("lattice point enumeration needs a bounded polytope")
    return _lattice_points(P)


def _lattice_points(P: RatPolytope) -> list[tuple[int, ...]]:
    if P.dim == 0:
        return [()] if P.contains(()) else []
    verts = P.vertices
    if not verts:
        return []
    lo = ceil(min(v[0] for v in verts))
    hi = floor(max(v[0] for v in verts))
    out = []
    for x in range(lo, hi + 1):
        sl = P.slice_first(x)
        if sl is None:
            continue
        out.extend((x,) + rest for rest in _lattice_points(sl))
    return out
