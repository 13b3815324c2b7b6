"""Desk-scale comparison of the coherent-state pipelines against the Fock oracle."""

from __future__ import annotations

import math
from typing import NamedTuple

from .breeding import CatSpec, Parity, breed, make_cat
from .coherent import Mode
from .fock import cat_to_fock, dyads_to_fock, fock_breed, fock_fidelity, fock_loss, trace_distance
from .loss import apply_loss
from .metrics import fidelity

TRACE_DISTANCE_TOL = 1e-7
FIDELITY_TOL = 1e-8
PROBABILITY_TOL = 1e-8


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str


def check_breed(alpha: float, eta: float) -> Check:
    ours = breed(alpha, eta)
    oracle = fock_breed(alpha, eta)
    N = oracle.effective_state.cutoff
    rho = dyads_to_fock(ours.effective_state, [Mode.A_PSI], N)
    td = trace_distance(rho.matrix, oracle.effective_state.matrix)
    target = CatSpec(math.sqrt(2) * alpha, Parity.ODD)
    df = abs(fidelity(ours.effective_state, make_cat(target)) - fock_fidelity(oracle.effective_state, cat_to_fock(target, N)))
    dp = abs(ours.success_probability - oracle.success_probability)
    ok = td < TRACE_DISTANCE_TOL and df < FIDELITY_TOL and dp < PROBABILITY_TOL
    return Check(f"breed alpha={alpha:g} eta={eta:g}", ok, f"trace_distance={td:.2e} dF={df:.2e} dP={dp:.2e} N={N}")


def check_loss(alpha: float, eta: float, parity: Parity) -> Check:
    oracle = fock_loss(CatSpec(alpha, parity), eta)
    rho = dyads_to_fock(apply_loss(CatSpec(alpha, parity), eta).state, [Mode.A_PSI], oracle.cutoff)
    td = trace_distance(rho.matrix, oracle.matrix)
    return Check(f"loss alpha={alpha:g} eta={eta:g} {parity.name.lower()}", td < TRACE_DISTANCE_TOL, f"trace_distance={td:.2e}")


def run_selftest() -> list[Check]:
    checks = [check_breed(a, e) for a in (0.5, 1.0) for e in (0.9, 1.0)]
    checks += [check_loss(1.0, e, p) for e in (0.05, 0.2) for p in Parity]
    return checks
