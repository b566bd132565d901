"""Regenerate the weighted projective stack tables and Euler spot checks."""

from __future__ import annotations

from fractions import Fraction
from importlib import resources

from .hrr import closed_form_cp1b, closed_form_cpaa, euler_characteristic
from .polytope import lattice_points
from .quantization import section_basis
from .stacky import derive_triple, polytope_of, weighted_projective

TAU_RANGE = range(1, 9)
CP1B_GRID = (range(1, 9), range(0, 41))
CPAA_GRID = (range(1, 7), range(0, 41))
EULER_SPOTS = [(1, 2, 5), (1, 3, 7), (2, 1, 4), (3, 1, 5)]


def _fmt(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def table_rows(a: int, b: int, show_count: bool) -> list[str]:
    label = f"CP({a},{a * b})"
    rows = [f"{label}: prequantisable iff {a * b}c in Z"]
    for tau in TAU_RANGE:
        c = Fraction(tau, a * b)
        S = weighted_projective(a, b, c)
        T = derive_triple(S)
        q = section_basis(S, T).q_dim
        row = f"{label}: c={_fmt(c)} τ={_fmt(T.tau[0])}"
        if show_count:
            row += f" #={len(lattice_points(polytope_of(S)))}"
        rows.append(row + f" Q={q}")
    return rows


def _q(a: int, b: int, tau: int) -> int:
    # the axioms do not depend on c > 0, so closed_form_rows checks them once per family
    S = weighted_projective(a, b, Fraction(tau, a * b), validate=False)
    return section_basis(S, derive_triple(S)).q_dim


def closed_form_rows() -> tuple[str, str]:
    for a, b in [(1, b) for b in CP1B_GRID[0]] + [(a, 1) for a in CPAA_GRID[0]]:
        weighted_projective(a, b, 1)
    bs, taus = CP1B_GRID
    bad = [(b, t) for b in bs for t in taus if _q(1, b, t) != closed_form_cp1b(b, t)]
    cp1b = f"CP(1,b): Q=⌊τ/b⌋+1 for b={bs[0]}..{bs[-1]}, τ={taus[0]}..{taus[-1]}: " + (
        "ok" if not bad else f"FAILED at (b, τ)={bad[0]}"
    )
    as_, taus = CPAA_GRID
    bad = [(a, t) for a in as_ for t in taus if _q(a, 1, t) != closed_form_cpaa(a, t)]
    cpaa = f"CP(a,a): Q=τ/a+1 if a|τ else 0 for a={as_[0]}..{as_[-1]}, τ={taus[0]}..{taus[-1]}: " + (
        "ok" if not bad else f"FAILED at (a, τ)={bad[0]}"
    )
    return cp1b, cpaa


def euler_rows() -> list[str]:
    out = []
    for a, b, tau in EULER_SPOTS:
        res = euler_characteristic(a, b, tau)
        out.append(f"χ({res.datum.label}, ℓ^{tau}) = {res.chi_rounded} (sections {res.chi_count})")
    return out


def demo_text() -> str:
    cp1b, cpaa = closed_form_rows()
    blocks = [
        table_rows(1, 2, False),
        table_rows(1, 3, False),
        [cp1b],
        table_rows(2, 1, True),
        table_rows(3, 1, True),
        [cpaa],
        euler_rows(),
    ]
    return "\n\n".join("\n".join(block) for block in blocks) + "\n"


def golden_text() -> str:
    return resources.files("stackypoly").joinpath("data/golden/demo.txt").read_text(encoding="utf-8")
