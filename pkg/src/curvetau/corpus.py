"""The fixed test corpus of plane curves."""
from __future__ import annotations

from fractions import Fraction
from pathlib import Path

from curvetau.curve import Branch, Curve
from curvetau.document import CurveDocument
from curvetau.series import BivariatePoly

X, Y = BivariatePoly.X(), BivariatePoly.Y()


def line_x() -> Branch:
    """``X = 0``."""
    return Branch.make(X, {}, {1: 1})


def line_y() -> Branch:
    """``Y = 0``."""
    return Branch.make(Y, {1: 1}, {})


def cusp(a=1) -> Branch:
    """``Y^2 - a X^3`` with ``x = a t^2, y = a^2 t^3``."""
    a = Fraction(a)
    return Branch.make(Y ** 2 - X ** 3 * a, {2: a}, {3: a * a})


def perturbed_cusp() -> Branch:
    """``Y^2 - X^3 - X^4``: ``x = t^2``, ``y = t^3 sqrt(1 + t^2)`` lifted on demand."""
    return Branch.make(Y ** 2 - X ** 3 - X ** 4, {2: 1}, {3: 1, 5: Fraction(1, 2)}, trunc=6)


def parabola(c=1, cubic=0) -> Branch:
    """``Y - c X^2 - cubic X^3``."""
    return Branch.make(Y - X ** 2 * c - X ** 3 * cubic, {1: 1}, {2: c, 3: cubic})


def e6() -> Branch:
    return Branch.make(Y ** 3 - X ** 4, {3: 1}, {4: 1})


def branch_4_6_13() -> Branch:
    """Semigroup ``⟨4, 6, 13⟩``: ``x = t^4, y = t^6 + t^7``."""
    f = (Y ** 2 - X ** 3) ** 2 - X ** 5 * Y * 4 - X ** 7
    return Branch.make(f, {4: 1}, {6: 1, 7: 1})


def builtin_curves() -> dict:
    return {
        "node": Curve((line_x(), line_y())),
        "cusp": Curve((cusp(),)),
        "saito2": Curve((cusp(1), cusp(2))),
        "saito3": Curve((cusp(1), cusp(2), cusp(3))),
        "cusp_perturbed_pair": Curve((cusp(), perturbed_cusp())),
        "cusp_and_tangent": Curve((cusp(), line_y())),
        "cusp_and_transversal": Curve((cusp(), line_x())),
        "three_lines": Curve((line_x(), line_y(), Branch.make(X - Y, {1: 1}, {1: 1}))),
        "tacnode": Curve((parabola(1), parabola(-1))),
        "osculating_parabolas": Curve((parabola(1), parabola(1, 1))),
        "e6_and_cusp": Curve((e6(), cusp())),
        "branch_4_6_13_and_line": Curve((branch_4_6_13(), line_x())),
        "cusp_tangent_transversal": Curve((cusp(), line_y(), line_x())),
    }


def write_corpus(directory) -> list:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name, curve in builtin_curves().items():
        path = directory / f"{name}.json"
        path.write_text(CurveDocument(curve, name).dumps(), encoding="utf-8")
        paths.append(path)
    return paths


def load_corpus(directory) -> dict:
    return {p.stem: CurveDocument.load(p) for p in sorted(Path(directory).glob("*.json"))}
