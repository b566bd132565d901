"""Run the full pipeline on an input document and render the result."""

from __future__ import annotations

import os
import sys
from typing import Any

import mpmath

from .document import InputDocument
from .hrr import euler_characteristic
from .polytope import lattice_points
from .quantization import monomial, prequantization_exists, section_basis
from .stacky import derive_triple, polytope_of, verify_triple


def recognise_family(T) -> tuple[int, int] | None:
    """``(a, b)`` when the quotient is ``CP(a, ab)`` with ``a = 1`` or ``b = 1``."""
    if len(T.weights) != 2 or T.m != 1 or not T.group.is_free:
        return None
    w1, w2 = sorted(w[0] for w in T.weights)
    if w1 <= 0 or w2 % w1:
        return None
    a, b = w1, w2 // w1
    return (a, b) if a == 1 or b == 1 else None


def build_report(
    doc: InputDocument,
    *,
    list_sections: bool = False,
    list_lattice: bool = False,
    euler: bool = False,
) -> dict[str, Any]:
    """Report dictionary with exact values only (ints and ``"p/q"`` strings).

    Raises :class:`stackypoly.stacky.StackyPolytopeError` on invalid data.
    """
    S = doc.stacky_polytope()
    T = derive_triple(S)
    tr = verify_triple(S, T)
    pq = prequantization_exists(S, T)

    report: dict[str, Any] = {"input": doc.to_obj()}
    report["dg"] = {"rank": T.m, "torsion": list(T.group.torsion)}
    report["ext1"] = {"rank": T.ext1.free_rank, "torsion": list(T.ext1.torsion)}
    report["group"] = T.g_description
    report["weights"] = [list(w) for w in T.weights]
    report["beta_dg"] = [list(col) for col in T.beta_dg.columns()]
    report["tau"] = [str(t) for t in T.tau]
    report["validity"] = {
        "beta_surjective": tr.beta_surjective,
        "mu_proper": tr.mu_proper,
        "level_nonempty": tr.level_nonempty,
        "tau_regular": tr.tau_regular,
        "valid": tr.valid,
    }
    report["prequantisation"] = {
        "dg_free": pq.dg_free,
        "tau_integral": pq.tau_integral,
        "c_integral": pq.c_integral,
        "exists": pq.exists,
        "status": pq.status,
    }

    lattice = lattice_points(polytope_of(S))
    report["lattice_count"] = len(lattice)
    if list_lattice:
        report["lattice"] = [list(p) for p in lattice]

    countable = pq.tau_integral and T.tau_torsion is not None
    basis = section_basis(S, T) if countable else None
    report["q_dim"] = basis.q_dim if basis is not None else None
    if basis is not None:
        expected = len(lattice) if S.c_integral else 0
        report["main_theorem"] = {"expected": expected, "consistent": basis.q_dim == expected}
    else:
        report["main_theorem"] = None
    if list_sections:
        report["sections"] = [list(a) for a in basis.exponents] if basis is not None else []

    if euler:
        fam = recognise_family(T)
        if fam and pq.tau_integral and T.tau[0] >= 0:
            res = euler_characteristic(fam[0], fam[1], int(T.tau[0]))
            report["euler"] = {
                "family": res.datum.label,
                "tau": res.datum.tau,
                "chi_formula": _fixed12(res.chi_formula),
                "chi_rounded": res.chi_rounded,
                "chi_count": res.chi_count,
                "agree": res.agree,
            }
        else:
            report["euler"] = None
    return report


def _fixed12(x) -> str:
    """Decimal string with exactly 12 places, rounded half up."""
    with mpmath.workdps(40):
        q = mpmath.floor(x * 10**12 + mpmath.mpf("0.5"))
    sign = "-" if q < 0 else ""
    q = abs(int(q))
    return f"{sign}{q // 10**12}.{q % 10**12:012d}"


# ---------------------------------------------------------------------------
# text rendering


def _use_color(stream) -> bool:
    return "NO_COLOR" not in os.environ and hasattr(stream, "isatty") and stream.isatty()


def _flag(value: bool, color: bool) -> str:
    word = "yes" if value else "no"
    if not color:
        return word
    return f"\033[32m{word}\033[0m" if value else f"\033[31m{word}\033[0m"


def render_text(report: dict[str, Any], stream=None) -> str:
    color = _use_color(stream or sys.stdout)
    inp = report["input"]
    lines = []
    if inp.get("label"):
        lines.append(f"label:           {inp['label']}")
    N = inp["N"]
    n_str = " + ".join(["Z^%d" % N["rank"]] + [f"Z/{t}" for t in N["torsion"]])
    lines.append(f"N:               {n_str}")
    lines.append(f"c:               {', '.join(str(x) for x in inp['c'])}")
    dg = report["dg"]
    lines.append(f"DG(beta):        {' + '.join(['Z^%d' % dg['rank']] + [f'Z/{t}' for t in dg['torsion']])}")
    lines.append(f"G:               {report['group']}")
    lines.append(f"weights:         {', '.join('(' + ', '.join(map(str, w)) + ')' for w in report['weights'])}")
    lines.append(f"tau:             ({', '.join(report['tau'])})")
    v = report["validity"]
    lines.append(
        "validity:        "
        + "  ".join(f"{k}={_flag(v[k], color)}" for k in ("beta_surjective", "mu_proper", "level_nonempty", "tau_regular"))
    )
    p = report["prequantisation"]
    lines.append(f"prequantisation: {p['status']} (exists={_flag(p['exists'], color)}, c_integral={_flag(p['c_integral'], color)})")
    lines.append(f"#(Delta & N^v):  {report['lattice_count']}")
    lines.append(f"Q(X):            {'-' if report['q_dim'] is None else report['q_dim']}")
    if report["main_theorem"] is not None:
        mt = report["main_theorem"]
        lines.append(f"lattice check:   expected {mt['expected']}, consistent={_flag(mt['consistent'], color)}")
    if "lattice" in report:
        lines.append("lattice points:")
        lines.extend(f"  ({', '.join(map(str, pt))})" for pt in report["lattice"])
    if "sections" in report:
        lines.append("sections:")
        lines.extend(f"  {tuple(a)}  {monomial(a)}" for a in report["sections"])
    if report.get("euler"):
        e = report["euler"]
        lines.append(
            f"euler:           chi({e['family']}, l^{e['tau']}) = {e['chi_formula']} ~ {e['chi_rounded']}"
            f" (count {e['chi_count']}, agree={_flag(e['agree'], color)})"
        )
    return "\n".join(lines) + "\n"

