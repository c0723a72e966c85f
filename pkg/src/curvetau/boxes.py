"""Finite representation of value sets ``E ⊂ Z^r``.

A value set is stored as its minimum ``lo``, its conductor ``c`` and a boolean
array over the box ``∏ [lo_i, c_i]``.  Points outside the box are decided by
clamping: for ``α >= lo``, ``α ∈ E`` iff ``inf(α, c)`` is set.
"""
from __future__ import annotations

from itertools import combinations, product
from math import inf

import numpy as np

from curvetau.errors import ConductorNotStabilized


class ValueSetBox:
    __slots__ = ("lo", "c", "bits")

    def __init__(self, lo, c, bits: np.ndarray):
        self.lo = tuple(int(v) for v in lo)
        self.c = tuple(int(v) for v in c)
        bits = np.asarray(bits, dtype=bool)
        shape = tuple(ci - li + 1 for li, ci in zip(self.lo, self.c))
        if bits.shape != shape:
            raise ValueError(f"bits shape {bits.shape} does not match box {shape}")
        bits.setflags(write=False)
        self.bits = bits

    # -- construction ----------------------------------------------------
    @classmethod
    def from_membership(cls, lo, hi, member: np.ndarray) -> "ValueSetBox":
        """Build from a membership array over ``∏[lo_i, hi_i]``.

        ``hi`` must dominate the true conductor so that the array's top corner
        clamps correctly; the conductor is then the least ``β`` whose upper
        orthant inside the array is full.  Raises ConductorNotStabilized when
        the array is not consistent with its own conductor.
        """
        lo = tuple(lo)
        hi = tuple(hi)
        member = np.asarray(member, dtype=bool)
        if not member.any():
            raise ConductorNotStabilized("empty value set in window")
        full = member.copy()
        for ax in range(full.ndim):
            full = np.flip(np.logical_and.accumulate(np.flip(full, ax), axis=ax), ax)
        if not full[tuple(h - l for h, l in zip(hi, lo))]:
            raise ConductorNotStabilized(f"window corner {hi} is not in the value set")
        beta = [h - l for h, l in zip(hi, lo)]
        moved = True
        while moved:
            moved = False
            for k in range(len(beta)):
                while beta[k] > 0:
                    beta[k] -= 1
                    if full[tuple(beta)]:
                        moved = True
                    else:
                        beta[k] += 1
                        break
        idx = np.nonzero(member)
        mins = [int(a.min()) for a in idx]
        if not member[tuple(mins)]:
            raise ConductorNotStabilized(f"componentwise minimum {mins} is not in the value set")
        cond = [b + l for b, l in zip(beta, lo)]
        mn = [m + l for m, l in zip(mins, lo)]
        sl = tuple(slice(m, b + 1) for m, b in zip(mins, beta))
        box = cls(mn, cond, member[sl].copy())
        # clamp consistency over the whole supplied window
        for pt in zip(*np.nonzero(member != box._window_view(lo, hi))):
            raise ConductorNotStabilized(
                f"clamp rule fails at {tuple(int(p) + l for p, l in zip(pt, lo))}")
        return box

    @classmethod
    def rank1(cls, lo: int, hi: int, pred) -> "ValueSetBox":
        """Rank-1 set from ``pred`` on ``[lo, hi]`` with ``hi`` certified in the set's conductor range."""
        member = np.array([bool(pred(z)) for z in range(lo, hi + 1)], dtype=bool)
        return cls.from_membership((lo,), (hi,), member)

    @classmethod
    def from_values(cls, values, conductor: int) -> "ValueSetBox":
        """Rank-1 set ``values ∪ [conductor, ∞)``."""
        vals = set(values) | {conductor}
        lo = min(vals)
        return cls.rank1(lo, conductor, lambda z: z in vals)

    def _window_view(self, lo, hi) -> np.ndarray:
        """Membership over ``∏[lo_k, hi_k]`` using the clamp rule."""
        out = None
        idx = []
        for k, (l, h) in enumerate(zip(lo, hi)):
            g = np.arange(l, h + 1)
            idx.append(np.clip(np.minimum(g, self.c[k]) - self.lo[k], 0, None))
            shape = [1] * self.r
            shape[k] = len(g)
            ok = (g >= self.lo[k]).reshape(shape)
            out = ok if out is None else out & ok
        return self.bits[np.ix_(*idx)] & out

    # -- basic queries ---------------------------------------------------
    @property
    def r(self) -> int:
        return len(self.lo)

    def min_point(self) -> tuple:
        return self.lo

    def conductor(self) -> tuple:
        return self.c

    def _idx(self, k: int, v) -> int | None:
        if v < self.lo[k]:
            return None
        return min(v, self.c[k]) - self.lo[k]

    def __contains__(self, alpha) -> bool:
        return self.contains(alpha)

    def contains(self, alpha) -> bool:
        if len(alpha) != self.r:
            raise ValueError("dimension mismatch")
        idx = []
        for k, v in enumerate(alpha):
            if v == inf:
                return False
            i = self._idx(k, v)
            if i is None:
                return False
            idx.append(i)
        return bool(self.bits[tuple(idx)])

    def points(self):
        """Members inside the box ``∏[lo_i, c_i]``."""
        for pt in zip(*np.nonzero(self.bits)):
            yield tuple(int(p) + l for p, l in zip(pt, self.lo))

    def box_points(self):
        return product(*(range(l, c + 1) for l, c in zip(self.lo, self.c)))

    def __eq__(self, other) -> bool:
        return (isinstance(other, ValueSetBox) and self.lo == other.lo and self.c == other.c
                and np.array_equal(self.bits, other.bits))

    def __hash__(self) -> int:
        return hash((self.lo, self.c, self.bits.tobytes()))

    def __repr__(self) -> str:
        if self.r == 1:
            below = [z for z in range(self.lo[0], self.c[0]) if self.contains((z,))]
            return f"ValueSetBox({below} ∪ [{self.c[0]}, ∞))"
        return f"ValueSetBox(min={self.lo}, conductor={self.c}, members={self.bits.sum()})"

    # -- fibers ----------------------------------------------------------
    def _slice(self, k: int, kind: str, v):
        """Index selector for coordinate ``k`` under constraint ``kind`` against ``v``."""
        lo, c = self.lo[k], self.c[k]
        if kind == "eq":
            if v < lo:
                return None
            return min(v, c) - lo
        if kind == "gt":
            v = v + 1
        # "ge"
        start = max(min(v, c) - lo, 0)
        return slice(start, None)

    def _any(self, sels) -> bool:
        if any(s is None for s in sels):
            return False
        return bool(self.bits[tuple(sels)].any())

    def _all(self, sels) -> bool:
        if any(s is None for s in sels):
            return False
        return bool(self.bits[tuple(sels)].all())

    def fiber_nonempty(self, J, alpha) -> bool:
        """``F_J(E, α) ≠ ∅``: equal on ``J``, strictly larger off ``J``."""
        J = set(J)
        return self._any([self._slice(k, "eq" if k in J else "gt", a) for k, a in enumerate(alpha)])

    def closed_fiber_nonempty(self, i: int, alpha) -> bool:
        """``F̄_i(E, α) ≠ ∅``: equal at ``i``, at least as large elsewhere."""
        return self._any([self._slice(k, "eq" if k == i else "ge", a) for k, a in enumerate(alpha)])

    def closed_fiber_contained(self, i: int, alpha) -> bool:
        """``F̄_i(Z^r, α) ⊆ E``."""
        if any(a < self.lo[k] for k, a in enumerate(alpha)):
            return False
        return self._all([self._slice(k, "eq" if k == i else "ge", a) for k, a in enumerate(alpha)])

    def maximal_points(self) -> list:
        out = []
        for a in self.points():
            if not any(self.fiber_nonempty((i,), a) for i in range(self.r)):
                out.append(a)
        return out

    def relative_maximals(self) -> list:
        subsets = [J for s in range(2, self.r + 1) for J in combinations(range(self.r), s)]
        return [a for a in self.maximal_points() if all(self.fiber_nonempty(J, a) for J in subsets)]

    # -- derived sets ----------------------------------------------------
    def project(self, J) -> "ValueSetBox":
        """``pr_J(E)`` for an index tuple ``J`` (kept in the given order)."""
        J = tuple(J)
        if not J:
            raise ValueError("projection onto an empty index set")
        if J == tuple(range(self.r)):
            return self
        drop = tuple(k for k in range(self.r) if k not in J)
        proj = self.bits.any(axis=drop) if drop else self.bits
        keep = sorted(J)
        proj = np.transpose(proj, [keep.index(j) for j in J])
        return ValueSetBox.from_membership([self.lo[j] for j in J], [self.c[j] for j in J], proj)

    def permute(self, order) -> "ValueSetBox":
        """Relabel branches: new coordinate ``k`` is old coordinate ``order[k]``."""
        order = tuple(order)
        return ValueSetBox([self.lo[k] for k in order], [self.c[k] for k in order],
                           np.transpose(self.bits, order).copy())

    def translate(self, shift) -> "ValueSetBox":
        return ValueSetBox([l + s for l, s in zip(self.lo, shift)],
                           [c + s for c, s in zip(self.c, shift)], self.bits.copy())

    def n_set(self, i: int) -> "ValueSetBox":
        """``N_i = {δ : (c_1, …, δ, …, c_r) ∈ E}`` as a rank-1 set."""
        def pred(z):
            a = list(self.c)
            a[i] = z
            return self.contains(a)
        return ValueSetBox.rank1(self.lo[i], self.c[i], pred)

    def nu_partial_n(self, i: int, L) -> "ValueSetBox":
        """Values on branch ``i`` of the elements vanishing on the branches ``L``."""
        L = sorted(set(L))
        if i in L:
            raise ValueError("branch i must not be in L")
        if not L:
            return self.project((i,))
        J = tuple(sorted(L + [i]))
        P = self.project(J)
        pos = J.index(i)
        cp = P.c

        def pred(z):
            a = list(cp)
            a[pos] = z
            return P.closed_fiber_nonempty(pos, a)
        return ValueSetBox.rank1(P.lo[pos], cp[pos], pred)

    # -- Θ invariants ----------------------------------------------------
    def theta_via_rm(self) -> tuple:
        out = [0]
        for i in range(1, self.r):
            last = set()
            for s in range(1, i + 1):
                for rest in combinations(range(i), s):
                    J = rest + (i,)
                    for a in self.project(J).relative_maximals():
                        last.add(a[-1])
            out.append(len(last))
        return tuple(out)

    def theta_via_fiber(self) -> tuple:
        out = [0]
        for i in range(1, self.r):
            P = self.project(tuple(range(i + 1)))
            Ei = self.project((i,))
            cnt = 0
            for z in range(Ei.lo[0], self.c[i]):
                if not Ei.contains((z,)):
                    continue
                alpha = list(self.c[:i]) + [z]
                if not P.closed_fiber_nonempty(i, alpha):
                    cnt += 1
            out.append(cnt)
        return tuple(out)

    # -- rank-1 helpers --------------------------------------------------
    def gaps(self) -> list:
        """``{z >= min : z ∉ E}`` for a rank-1 set."""
        self._need_rank1()
        return [z for z in range(self.lo[0], self.c[0]) if not self.contains((z,))]

    def elements_below(self, bound: int) -> list:
        self._need_rank1()
        return [z for z in range(self.lo[0], bound) if self.contains((z,))]

    def count_minus(self, other: "ValueSetBox") -> int:
        """``#(self ∖ other)`` for rank-1 sets (finite whenever ``other`` has a conductor)."""
        self._need_rank1()
        top = max(self.c[0], other.c[0])
        return sum(1 for z in range(self.lo[0], top)
                   if self.contains((z,)) and not other.contains((z,)))

    def issubset(self, other: "ValueSetBox") -> bool:
        if self.r != other.r:
            return False
        hi = [max(a, b) for a, b in zip(self.c, other.c)]
        lo = [min(a, b) for a, b in zip(self.lo, other.lo)]
        return bool(np.all(~self._window_view(lo, hi) | other._window_view(lo, hi)))

    def _need_rank1(self):
        if self.r != 1:
            raise ValueError("operation defined for rank-1 value sets only")

    # -- serialization ---------------------------------------------------
    def to_json(self) -> dict:
        flat = self.bits.ravel(order="C")
        runs, cur, n = [], False, 0
        for b in flat:
            if bool(b) == cur:
                n += 1
            else:
                runs.append(n)
                cur, n = bool(b), 1
        runs.append(n)
        return {"min": list(self.lo), "conductor": list(self.c), "bits_rle": runs}

    @classmethod
    def from_json(cls, d: dict) -> "ValueSetBox":
        lo, c = d["min"], d["conductor"]
        vals, cur = [], False
        for n in d["bits_rle"]:
            vals.extend([cur] * n)
            cur = not cur
        shape = tuple(ci - li + 1 for li, ci in zip(lo, c))
        return cls(lo, c, np.array(vals, dtype=bool).reshape(shape))
