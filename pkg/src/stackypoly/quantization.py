"""Prequantisation test and holomorphic section counts.

Sections of the prequantum line bundle are spanned by the monomials
``z^alpha`` with ``alpha >= 0`` integral and ``beta^DG(alpha) = tau``. The
enumeration here solves that linear Diophantine system exactly, which turns
the search into a lattice-point count in an ``r``-dimensional polytope,
rather than scanning a box in ``Z^d``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .linalg import IntMatrix, lattice_basis, solve_diophantine
from .polytope import Halfspace, RatPolytope, UnboundedError, lattice_points
from .stacky import DerivedTriple, StackyPolytope, polytope_of


class EnumerationError(RuntimeError):
    """Internal failure of section enumeration (should not happen on valid input)."""


@dataclass(frozen=True)
class PrequantReport:
    dg_free: bool
    tau_integral: bool
    c_integral: bool

    @property
    def exists(self) -> bool:
        return self.dg_free and self.tau_integral

    @property
    def status(self) -> str:
        if not self.dg_free:
            return "out-of-scope"  # G is not a torus
        return "prequantisable" if self.tau_integral else "no-prequantisation"


def prequantization_exists(S: StackyPolytope, T: DerivedTriple) -> PrequantReport:
    """A prequantisation exists iff tau lies in the weight lattice ``DG(beta)``.

    Only decided when ``DG(beta)`` is free; with torsion the report says so
    through ``dg_free=False``.
    """
    return PrequantReport(
        dg_free=T.group.is_free,
        tau_integral=all(t.denominator == 1 for t in T.tau),
        c_integral=S.c_integral,
    )


@dataclass(frozen=True)
class SectionBasis:
    exponents: tuple[tuple[int, ...], ...]

    @property
    def q_dim(self) -> int:
        return len(self.exponents)

    def monomials(self) -> list[str]:
        return [monomial(a) for a in self.exponents]


def monomial(alpha: Sequence[int]) -> str:
    factors = [f"z{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(alpha) if e]
    return "*".join(factors) or "1"


def section_basis(
    S: StackyPolytope, T: DerivedTriple, tau_torsion: Sequence[int] | None = None
) -> SectionBasis:
    """Exponents alpha of the monomial basis, sorted lexicographically.

    ``tau_torsion`` is the torsion part of the level as an element of
    ``DG(beta)``; it defaults to the one determined by integral ``c``.
    """
    if any(t.denominator != 1 for t in T.tau):
        return SectionBasis(())
    tors = T.group.torsion
    if tau_torsion is None:
        tau_torsion = T.tau_torsion
        if tau_torsion is None:
            raise ValueError("DG(beta) has torsion; the torsion part of tau must be given")
    k, m, d = len(tors), T.m, S.d

    # free rows W alpha = tau; torsion rows Tr alpha + n z = tau_tors
    W, Tr = T.weight_matrix, T.torsion_block
    rows = [list(W.row(j)) + [0] * k for j in range(m)]
    rows += [list(Tr.row(i)) + [n if j == i else 0 for j in range(k)] for i, n in enumerate(tors)]
    rhs = [int(t) for t in T.tau] + [int(x) for x in tau_torsion]
    sol = solve_diophantine(IntMatrix(rows, ncols=d + k), rhs)
    if sol is None:
        return SectionBasis(())
    x0, K = sol
    alpha0 = x0[:d]
    basis = lattice_basis([col[:d] for col in K.columns()], d)
    if len(basis) != S.r:
        raise EnumerationError(f"solution lattice has rank {len(basis)}, expected {S.r}")

    # alpha = alpha0 + sum_j y_j basis[j] >= 0
    hs = []
    for nu in range(d):
        normal = tuple(b[nu] for b in basis)
        if any(normal):
            hs.append(Halfspace(normal, alpha0[nu]))
        elif alpha0[nu] < 0:
            return SectionBasis(())
    try:
        ys = lattice_points(RatPolytope(len(basis), tuple(hs)))
    except UnboundedError as exc:
        raise EnumerationError("level set polytope is unbounded; moment map not proper") from exc
    exps = sorted(
        tuple(a + sum(y * b[nu] for y, b in zip(ys_, basis)) for nu, a in enumerate(alpha0)) for ys_ in ys
    )
    return SectionBasis(tuple(exps))


@dataclass(frozen=True)
class MainTheoremCheck:
    q_dim: int
    lattice_count: int
    c_integral: bool

    @property
    def expected_q(self) -> int:
        return self.lattice_count if self.c_integral else 0

    @property
    def consistent(self) -> bool:
        return self.q_dim == self.expected_q


def main_theorem_check(S: StackyPolytope, T: DerivedTriple) -> MainTheoremCheck:
    """Compare the section count with ``#(Delta & N^dual)`` (zero unless all c are integers)."""
    q = section_basis(S, T).q_dim
    count = len(lattice_points(polytope_of(S)))
    return MainTheoremCheck(q, count, S.c_integral)
