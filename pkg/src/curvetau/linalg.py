"""Row reduction over the rationals.

Vectors are plain lists of :class:`~fractions.Fraction`.  An *echelon* is a
dict mapping a leading index to a vector whose first nonzero entry sits at
that index; leading indices are pairwise distinct, so the stored vectors are
linearly independent and any combination has its leading index at the
minimum leading index involved.
"""
from __future__ import annotations

from fractions import Fraction


def leading_index(v) -> int | None:
    for k, c in enumerate(v):
        if c:
            return k
    return None


def reduce_into(echelon: dict, v) -> int | None:
    """Reduce ``v`` against ``echelon`` and insert it; returns its new lead or None."""
    v = list(v)
    k = leading_index(v)
    while k is not None:
        w = echelon.get(k)
        if w is None:
            echelon[k] = v
            return k
        f = v[k] / w[k]
        for j in range(k, len(v)):
            wj = w[j]
            if wj:
                v[j] -= f * wj
        k = next((j for j in range(k + 1, len(v)) if v[j]), None)
    return None


def echelon_form(vectors) -> dict:
    ech: dict = {}
    for v in vectors:
        reduce_into(ech, v)
    return ech


def rank(vectors) -> int:
    return len(echelon_form(vectors))


def in_span(echelon: dict, v) -> bool:
    """Whether ``v`` lies in the span of ``echelon`` (which is left unchanged)."""
    trial = dict(echelon)
    return reduce_into(trial, v) is None


def to_fractions(rows):
    return [[Fraction(c) for c in row] for row in rows]
