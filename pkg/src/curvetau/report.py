"""Assemble the canonical (reproducible) sections of CLI reports."""
from __future__ import annotations

import time

from curvetau.curve import Curve, branch_semigroup, validate
from curvetau.macaulay import DEFAULT_DEGREE_CAP
from curvetau.tjurina import (all_partitions, dimca_check, jacobian, lambda_shift, milnor,
                              rfold_check, tjurina_formula)
from curvetau.valueset import compute, GeneratingFamily


class Timer:
    def __init__(self):
        self.laps: dict = {}

    def lap(self, name, fn, *args, **kw):
        t = time.perf_counter()
        out = fn(*args, **kw)
        self.laps[name] = round(time.perf_counter() - t, 4)
        return out


def _box(E) -> dict:
    return E.to_json()


def invariants(curve: Curve, degree_cap: int = DEFAULT_DEGREE_CAP, multiplier: int = 1,
               timer: Timer | None = None) -> dict:
    timer = timer or Timer()
    timer.lap("validate", validate, curve, 64 * multiplier)
    gamma = timer.lap("gamma", lambda: compute(GeneratingFamily.local_ring(curve), multiplier)[0])
    jac = timer.lap("delta", jacobian, curve, multiplier)
    rep = timer.lap("tau", tjurina_formula, curve, degree_cap, multiplier)
    mu = timer.lap("milnor", milnor, curve, degree_cap)
    branches = []
    for i, b in enumerate(curve.branches):
        S = branch_semigroup(curve, i)
        branches.append({
            "index": i + 1,
            "multiplicity": b.multiplicity,
            "semigroup_below_conductor": S.elements_below(S.c[0]),
            "conductor": S.c[0],
            "tau": rep.branch_tau[i],
        })
    out = {
        "r": curve.r,
        "branches": branches,
        "intersection_matrix": rep.intersections,
        "gamma": _box(gamma),
        "gamma_theta": {"relative_maximals": list(gamma.theta_via_rm()),
                        "fibers": list(gamma.theta_via_fiber())},
        "delta": _box(jac.delta),
        "delta_theta": {"relative_maximals": list(jac.delta.theta_via_rm()),
                        "fibers": list(jac.delta.theta_via_fiber())},
        "lambda": _box(lambda_shift(jac.delta, gamma)),
        "tau": {"formula": rep.tau, "oracle": rep.tau_oracle, "corrections": list(rep.corrections)},
        "milnor": {"oracle": mu[0], "formula": mu[1]},
    }
    if curve.r >= 2:
        t_gap, m_gap = rfold_check(curve, degree_cap)
        out["rfold"] = {"tau_excess": t_gap, "milnor_excess": m_gap}
    return out


def dimca(curve: Curve, splits=None, degree_cap: int = DEFAULT_DEGREE_CAP, multiplier: int = 1,
          timer: Timer | None = None) -> dict:
    timer = timer or Timer()
    splits = all_partitions(curve.r) if splits is None else splits
    rows = []
    for J in splits:
        v = timer.lap("split " + ",".join(str(k + 1) for k in J), dimca_check, curve, J, degree_cap, multiplier)
        rows.append(v.to_json())
    return {"r": curve.r, "tau": tjurina_formula(curve, degree_cap, multiplier).tau, "partitions": rows}
