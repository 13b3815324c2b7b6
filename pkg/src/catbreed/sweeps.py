"""Grid evaluations behind the figure commands.

Each function returns plain row tuples in a deterministic order, so the CLI
only has to format them.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Sequence

import numpy as np

from .breeding import CatSpec, Parity, breed, make_cat
from .loss import loss_fidelity_exact, loss_fidelity_paper
from .metrics import NonUnimodalWarning, best_cat_fidelity, fidelity

BREED_COLUMNS = ("alpha", "eta", "fidelity", "best_magnitude", "success_probability", "fidelity_nominal", "naive_magnitude")
CROSS_COLUMNS = ("alpha", "fidelity", "best_magnitude", "success_probability")
LOSS_COLUMNS = ("alpha", "eta", "F_closed_form", "F_exact_even", "F_exact_odd")


def grid(lo: float, hi: float, steps: int) -> list[float]:
    if steps < 1:
        raise ValueError("steps must be >= 1")
    if steps == 1:
        return [float(lo)]
    return [float(x) for x in np.linspace(lo, hi, steps)]


def _map(fn: Callable, items: Sequence, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def breed_point(args: tuple[float, float, str, bool]) -> tuple[float, ...]:
    alpha, eta, parity_name, matched = args
    parity = Parity[parity_name]
    result = breed(alpha, eta, matched=matched)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", NonUnimodalWarning)
        best = best_cat_fidelity(result.effective_state, parity)
    nominal = fidelity(result.effective_state, make_cat(CatSpec(math.sqrt(2) * alpha, parity)))
    return (
        alpha,
        eta,
        best.fidelity,
        best.magnitude,
        result.success_probability,
        nominal,
        math.sqrt(2 * eta) * alpha,
    )


def breed_sweep(
    alphas: Iterable[float],
    etas: Iterable[float],
    parity: Parity = Parity.ODD,
    matched: bool = True,
    jobs: int = 1,
) -> list[tuple[float, ...]]:
    """Rows of :data:`BREED_COLUMNS`, alpha-major."""
    points = [(a, e, parity.name, matched) for a in alphas for e in etas]
    return _map(breed_point, points, jobs)


def cross_section(
    eta: float, alphas: Iterable[float], parity: Parity = Parity.ODD, matched: bool = True, jobs: int = 1
) -> list[tuple[float, ...]]:
    """Rows of :data:`CROSS_COLUMNS` at fixed mode overlap."""
    rows = breed_sweep(alphas, [eta], parity, matched, jobs)
    return [(r[0], r[2], r[3], r[4]) for r in rows]


def loss_point(args: tuple[float, float]) -> tuple[float, ...]:
    alpha, eta = args
    return (
        alpha,
        eta,
        loss_fidelity_paper(alpha, eta),
        loss_fidelity_exact(CatSpec(alpha, Parity.EVEN), eta),
        loss_fidelity_exact(CatSpec(alpha, Parity.ODD), eta),
    )


def loss_sweep(alphas: Iterable[float], etas: Iterable[float], jobs: int = 1) -> list[tuple[float, ...]]:
    """Rows of :data:`LOSS_COLUMNS`, alpha-major."""
    return _map(loss_point, [(a, e) for a in alphas for e in etas], jobs)
