"""Stacky polytopes and the torus data they determine.

A stacky polytope is given here by a finitely generated abelian group N,
an integer matrix ``beta`` whose d columns are the images ``beta(e_nu)`` in
N (torsion coordinates first, then free ones) and d rational offsets ``c``.
The polytope itself is ``{eta | <eta, beta(e_nu)> >= -c_nu}`` in the dual of
``N (x) R``.

:func:`derive_triple` computes the Gale dual ``DG(beta)`` as the first
cohomology of the dualised mapping cone of a lift of ``beta`` to free
presentations, the map ``beta^DG : (Z^d)^dual -> DG(beta)``, the weights of
the torus action and the level ``tau``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .linalg import (
    FgAbGroup,
    IntMatrix,
    PresentedQuotient,
    cokernel,
    hermite_normal_form,
    rank_q,
)
from .polytope import Halfspace, RatPolytope, analyze, is_nonempty


class StackyPolytopeError(ValueError):
    """Input violates one of the stacky polytope axioms.

    ``axiom`` names the violated condition; ``facet`` is the offending
    column index when there is one.
    """

    def __init__(self, axiom: str, message: str, facet: int | None = None):
        super().__init__(message)
        self.axiom = axiom
        self.facet = facet


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        raise TypeError("offsets must be exact rationals, not floats")
    return Fraction(x)


@dataclass(frozen=True)
class StackyPolytope:
    """The triple ``(N, Delta, beta)`` with Delta given through its offsets ``c``.

    Torsion rows of ``beta`` are reduced modulo their invariant factor on
    construction. With ``validate=True`` (the default) every axiom is
    checked and :class:`StackyPolytopeError` is raised on the first failure.
    """

    N: FgAbGroup
    beta: IntMatrix
    c: tuple[Fraction, ...]
    label: str | None = field(default=None, compare=False)
    validate: bool = field(default=True, repr=False, compare=False)

    def __post_init__(self):
        beta = self.beta if isinstance(self.beta, IntMatrix) else IntMatrix(self.beta)
        if beta.rows != self.N.ngens:
            raise ValueError(f"beta has {beta.rows} rows but N has {self.N.ngens} generators")
        k = len(self.N.torsion)
        rows = [[x % t for x in beta.row(i)] for i, t in enumerate(self.N.torsion)]
        rows += [list(beta.row(i)) for i in range(k, beta.rows)]
        object.__setattr__(self, "beta", IntMatrix(rows, ncols=beta.cols))
        c = tuple(_as_fraction(x) for x in self.c)
        if len(c) != beta.cols:
            raise ValueError(f"{len(c)} offsets given for {beta.cols} facets")
        object.__setattr__(self, "c", c)
        if self.validate:
            self.check()

    @property
    def d(self) -> int:
        return self.beta.cols

    @property
    def r(self) -> int:
        return self.N.free_rank

    @property
    def free_block(self) -> IntMatrix:
        """The free-part rows of beta: column nu is ``beta(e_nu) (x) 1``."""
        k = len(self.N.torsion)
        return self.beta.submatrix(range(k, self.beta.rows), range(self.d))

    @property
    def c_integral(self) -> bool:
        return all(x.denominator == 1 for x in self.c)

    def check(self) -> None:
        if self.d < 1:
            raise StackyPolytopeError("facets", "a stacky polytope needs at least one facet")
        F = self.free_block
        if F.rows and rank_q(F.tolist()) < self.r:
            raise StackyPolytopeError(
                "finite-cokernel", f"beta (x) R has rank {F.rank()} < {self.r}: cokernel is infinite"
            )
        for nu, col in enumerate(F.columns()):
            if self.r and not any(col):
                raise StackyPolytopeError("normal-nonzero", f"facet {nu}: normal beta(e_{nu}) (x) 1 is zero", nu)
        rep = analyze(polytope_of(self))
        if not rep.bounded:
            raise StackyPolytopeError("bounded", "the polytope Delta is unbounded")
        if not rep.nonempty:
            raise StackyPolytopeError("nonempty", "the polytope Delta is empty")
        if not rep.dimension_full:
            raise StackyPolytopeError("full-dimensional", "the polytope Delta is not full-dimensional")
        for nu, ok in enumerate(rep.facet_defining):
            if not ok:
                raise StackyPolytopeError(
                    "facet-defining", f"facet {nu}: inequality is not facet-defining", nu
                )
        if not rep.simple:
            raise StackyPolytopeError("simple", "the polytope Delta is not simple")


def polytope_of(S: StackyPolytope) -> RatPolytope:
    """Delta in ``R^r``: inward normals are the free parts of beta's columns."""
    cols = S.free_block.columns() if S.r else [()] * S.d
    # zero normals only get past validation when it is switched off
    hs = tuple(Halfspace(col, cv) for col, cv in zip(cols, S.c) if any(col) or not S.r)
    return RatPolytope(S.r, hs)


def weighted_projective(a: int, b: int, c, validate: bool | None = None) -> StackyPolytope:
    """The stacky polytope of the weighted projective stack ``CP(a, ab)``.

    ``N = Z/a + Z``, ``beta(e_1) = (1, -b)``, ``beta(e_2) = (0, 1)`` and
    ``Delta = [0, c]``, so the offsets are ``(b c, 0)``. At ``c = 0`` the
    polytope is a point and the data only make sense unvalidated, which is
    what ``validate=None`` picks.
    """
    c = _as_fraction(c)
    if a < 1 or b < 1:
        raise ValueError("a and b must be positive")
    if validate is None:
        validate = c != 0
    offsets = (b * c, Fraction(0))
    if a == 1:
        return StackyPolytope(FgAbGroup(1), IntMatrix([[-b, 1]]), offsets, label=f"CP(1,{b})", validate=validate)
    return StackyPolytope(
        FgAbGroup(1, (a,)), IntMatrix([[1, 0], [-b, 1]]), offsets, label=f"CP({a},{a * b})", validate=validate
    )


# ---------------------------------------------------------------------------
# Gale dual


@dataclass(frozen=True)
class DerivedTriple:
    """``(G, rho, tau)`` in computable form.

    ``beta_dg`` has one row per normal-form coordinate of ``DG(beta)``
    (torsion coordinates first, reduced, then free ones) and one column per
    facet. ``weights[nu]`` is the free part of column nu.
    """

    dg: PresentedQuotient
    beta_dg: IntMatrix
    ext1: FgAbGroup
    weights: tuple[tuple[int, ...], ...]
    tau: tuple[Fraction, ...]
    tau_torsion: tuple[int, ...] | None

    @property
    def group(self) -> FgAbGroup:
        return self.dg.normal_form

    @property
    def m(self) -> int:
        return self.group.free_rank

    @property
    def weight_matrix(self) -> IntMatrix:
        """The ``m x d`` matrix whose columns are the weights."""
        return IntMatrix.from_columns(self.weights, nrows=self.m)

    @property
    def torsion_block(self) -> IntMatrix:
        k = len(self.group.torsion)
        return self.beta_dg.submatrix(range(k), range(self.beta_dg.cols))

    @property
    def g_description(self) -> str:
        """``G = Hom(DG(beta), T)``: a torus times finite cyclic factors."""
        parts = [f"T^{self.m}"] if self.m else []
        parts += [f"Z/{t}" for t in self.group.torsion]
        return " x ".join(parts) or "1"


def presentation_matrices(S: StackyPolytope) -> tuple[IntMatrix, IntMatrix]:
    """Lift ``B: Z^d -> Z^s`` of beta and relation matrix ``Q: Z^t -> Z^s`` of N."""
    t, s = len(S.N.torsion), S.N.ngens
    Q = IntMatrix(([S.N.torsion[j] if i == j else 0 for j in range(t)] for i in range(s)), ncols=t)
    return S.beta, Q


def derive_triple(S: StackyPolytope) -> DerivedTriple:
    B, Q = presentation_matrices(S)
    d = S.d
    if S.r and rank_q(S.free_block.tolist()) < S.r:
        raise StackyPolytopeError("finite-cokernel", "beta has infinite cokernel")

    # dual cone differential (Z^s)^dual -> (Z^d)^dual + (Z^t)^dual
    M = B.hstack(Q).T
    dg = cokernel(M)
    k = len(dg.normal_form.torsion)
    m = dg.normal_form.free_rank
    # canonical free basis: Hermite form of the weight matrix
    P = dg.projection
    W0 = P.submatrix(range(k, k + m), range(d))
    _, U = hermite_normal_form(W0)
    dg = dg.with_free_change(U)
    beta_dg = dg.projection.submatrix(range(k + m), range(d))

    weights = tuple(tuple(col[k:]) for col in beta_dg.columns())
    tau = tuple(sum((cv * w[j] for cv, w in zip(S.c, weights)), Fraction(0)) for j in range(m))
    tau_torsion = None
    if S.c_integral:
        tau_torsion = tuple(
            sum(int(cv) * x for cv, x in zip(S.c, beta_dg.row(i))) % n
            for i, n in enumerate(dg.normal_form.torsion)
        )
    elif k == 0:
        tau_torsion = ()

    ext1 = cokernel(Q.T).normal_form
    return DerivedTriple(dg, beta_dg, ext1, weights, tau, tau_torsion)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class TripleReport:
    beta_surjective: bool
    mu_proper: bool
    level_nonempty: bool
    tau_regular: bool

    @property
    def valid(self) -> bool:
        return self.beta_surjective and self.mu_proper and self.level_nonempty and self.tau_regular


def beta_is_surjective(S: StackyPolytope) -> bool:
    B, Q = presentation_matrices(S)
    coker = cokernel(B.hstack(Q)).normal_form
    return coker.free_rank == 0 and not coker.torsion


def delta_prime(T: DerivedTriple) -> RatPolytope:
    """``{s in R^d | s >= 0, sum_nu s_nu w^nu = tau}``.

    Each equality is encoded as two opposite half-spaces.
    """
    d = len(T.weights)
    hs = [Halfspace(tuple(int(i == nu) for i in range(d)), 0) for nu in range(d)]
    W = T.weight_matrix
    for j in range(T.m):
        row = W.row(j)
        hs.append(Halfspace(row, -T.tau[j]))
        hs.append(Halfspace(tuple(-x for x in row), T.tau[j]))
    return RatPolytope(d, tuple(hs))


def _weights_pointed(T: DerivedTriple) -> bool:
    # Farkas: no t >= 0, t != 0 with sum t_nu w^nu = 0
    d = len(T.weights)
    W = T.weight_matrix
    hs = [Halfspace(tuple(int(i == nu) for i in range(d)), 0) for nu in range(d)]
    for j in range(T.m):
        hs.append(Halfspace(W.row(j), 0))
        hs.append(Halfspace(tuple(-x for x in W.row(j)), 0))
    ones = (1,) * d
    hs += [Halfspace(ones, -1), Halfspace(tuple(-x for x in ones), 1)]
    return not is_nonempty(RatPolytope(d, tuple(hs)))


def verify_triple(S: StackyPolytope, T: DerivedTriple) -> TripleReport:
    surjective = beta_is_surjective(S)
    proper = _weights_pointed(T)
    nonempty = regular = False
    if proper:
        verts = delta_prime(T).vertices
        nonempty = bool(verts)
        regular = nonempty and all(
            rank_q([w for w, s in zip(T.weights, v) if s > 0] or [[0] * T.m]) == T.m for v in verts
        )
    else:
        nonempty = is_nonempty(delta_prime(T))
    return TripleReport(surjective, proper, nonempty, regular)


def to_delta_prime(S: StackyPolytope, eta: Sequence) -> tuple[Fraction, ...]:
    """The affine map ``eta -> (<eta, beta(e_nu)> + c_nu)_nu`` carrying Delta onto Delta'."""
    F = S.free_block
    return tuple(
        sum((Fraction(e) * x for e, x in zip(eta, col)), Fraction(0)) + cv for col, cv in zip(F.columns(), S.c)
    )
