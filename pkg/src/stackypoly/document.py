"""JSON input and report documents.

Input schema (UTF-8 JSON)::

    {
      "label": "CP(1,2), c = 2",          # optional
      "N": {"rank": 1, "torsion": []},     # torsion = invariant factors
      "beta": [[-2], [1]],                 # d columns, torsion entries first
      "c": [4, 0]                          # integers or "p/q" strings
    }

Exact numbers are written as JSON integers or ``"p/q"`` strings; floats are
rejected on input and never produced on output (apart from the rendered
Euler characteristic sum).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .linalg import FgAbGroup, IntMatrix
from .stacky import StackyPolytope

_RATIONAL = re.compile(r"\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*")


class InputError(ValueError):
    """Malformed input document; ``where`` names the field or line."""

    def __init__(self, where: str, message: str):
        super().__init__(f"{where}: {message}")
        self.where = where


def parse_rational(value: Any, where: str) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise InputError(where, f"expected an integer or 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL.fullmatch(value):
        try:
            return Fraction(value.replace(" ", ""))
        except ZeroDivisionError:
            raise InputError(where, "zero denominator") from None
    raise InputError(where, f"expected an integer or 'p/q' string, got {value!r}")


def format_rational(x: Fraction) -> int | str:
    return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def _int(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(where, f"expected an integer, got {value!r}")
    return value


@dataclass(frozen=True)
class InputDocument:
    rank: int
    torsion: tuple[int, ...]
    beta: tuple[tuple[int, ...], ...]  # columns
    c: tuple[Fraction, ...]
    label: str | None = None

    @classmethod
    def from_json(cls, text: str) -> InputDocument:
        try:
            raw = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from None
        return cls.from_obj(raw)

    @classmethod
    def from_obj(cls, raw: Any) -> InputDocument:
        if not isinstance(raw, dict):
            raise InputError("document", "expected a JSON object")
        unknown = set(raw) - {"N", "beta", "c", "label"}
        if unknown:
            raise InputError("document", f"unknown fields {sorted(unknown)}")
        for key in ("N", "beta", "c"):
            if key not in raw:
                raise InputError(key, "missing")

        N = raw["N"]
        if not isinstance(N, dict) or set(N) - {"rank", "torsion"} or "rank" not in N:
            raise InputError("N", "expected {'rank': int, 'torsion': [int, ...]}")
        rank = _int(N["rank"], "N.rank")
        if rank < 0:
            raise InputError("N.rank", "must be nonnegative")
        torsion_raw = N.get("torsion", [])
        if not isinstance(torsion_raw, list):
            raise InputError("N.torsion", "expected a list of integers")
        torsion = tuple(_int(t, f"N.torsion[{i}]") for i, t in enumerate(torsion_raw))
        try:
            FgAbGroup(rank, torsion)
        except ValueError as exc:
            raise InputError("N.torsion", str(exc)) from None

        beta = raw["beta"]
        if not isinstance(beta, list) or not beta:
            raise InputError("beta", "expected a nonempty list of columns")
        height = len(torsion) + rank
        cols = []
        for j, col in enumerate(beta):
            if not isinstance(col, list) or len(col) != height:
                raise InputError(f"beta[{j}]", f"expected a list of {height} integers (torsion then free)")
            col = [_int(x, f"beta[{j}][{i}]") for i, x in enumerate(col)]
            # torsion coordinates are stored reduced
            cols.append(tuple(x % t for x, t in zip(col, torsion)) + tuple(col[len(torsion):]))

        c = raw["c"]
        if not isinstance(c, list) or len(c) != len(cols):
            raise InputError("c", f"expected a list of {len(cols)} rationals, one per column of beta")
        offsets = tuple(parse_rational(x, f"c[{i}]") for i, x in enumerate(c))

        label = raw.get("label")
        if label is not None and not isinstance(label, str):
            raise InputError("label", "expected a string")
        return cls(rank, torsion, tuple(cols), offsets, label)

    def to_obj(self) -> dict[str, Any]:
        obj: dict[str, Any] = {}
        if self.label is not None:
            obj["label"] = self.label
        obj["N"] = {"rank": self.rank, "torsion": list(self.torsion)}
        obj["beta"] = [list(col) for col in self.beta]
        obj["c"] = [format_rational(x) for x in self.c]
        return obj

    def to_json(self) -> str:
        return json.dumps(self.to_obj(), indent=2, ensure_ascii=False) + "\n"

    def stacky_polytope(self, validate: bool = True) -> StackyPolytope:
        beta = IntMatrix.from_columns(self.beta, nrows=len(self.torsion) + self.rank)
        return StackyPolytope(FgAbGroup(self.rank, self.torsion), beta, self.c, label=self.label, validate=validate)
