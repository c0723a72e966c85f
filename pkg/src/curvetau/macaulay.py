"""Colength of a polynomial ideal in the local ring at the origin, by truncation.

``h(d) = dim Q[X,Y] / (I + m^d)`` is the codimension of the span of
``X^a Y^b g`` (``a + b < d``, terms of degree ``>= d`` dropped) among the
monomials of degree ``< d``.  It is nondecreasing and, once ``h(d) = h(d+1)``,
Nakayama gives ``m^d ⊆ I`` locally, so ``h(d)`` is the colength.
"""
from __future__ import annotations

from curvetau.errors import NonIsolated
from curvetau.linalg import reduce_into
from curvetau.series import BivariatePoly

DEFAULT_DEGREE_CAP = 64


def _index(d: int) -> dict:
    return {(a, s - a): n for n, (s, a) in enumerate((s, a) for s in range(d) for a in range(s + 1))}


def truncated_codim(gens, d: int) -> int:
    """``dim Q[X,Y] / (I + m^d)``."""
    idx = _index(d)
    ech: dict = {}
    for g in gens:
        if g.low_degree >= d:
            continue
        for s in range(d - g.low_degree):
            for a in range(s + 1):
                v = [0] * len(idx)
                nonzero = False
                for (i, j), c in g.terms:
                    key = (i + a, j + s - a)
                    if key[0] + key[1] < d:
                        v[idx[key]] = c
                        nonzero = True
                if nonzero:
                    reduce_into(ech, v)
    return len(idx) - len(ech)


def local_colength(gens, degree_cap: int = DEFAULT_DEGREE_CAP, rounds: int = 2) -> int:
    """``dim O/I`` for ``I = ⟨gens⟩ ⊂ Q{X,Y}``; ``rounds`` equal values in a row end the search.

    Raises :class:`NonIsolated` if the values have not settled by ``degree_cap``.
    """
    gens = [g for g in gens if not g.is_zero()]
    prev, streak = None, 0
    for d in range(1, degree_cap + 1):
        h = truncated_codim(gens, d)
        if h == prev:
            streak += 1
            if streak >= rounds - 1:
                return h
        else:
            streak = 0
        prev = h
    raise NonIsolated(f"codimension still growing at degree {degree_cap}: {prev}")


def intersection_number(p: BivariatePoly, q: BivariatePoly, degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    return local_colength([p, q], degree_cap)
