"""Photon loss on a prepared cat: a beamsplitter to an environment mode that is traced out."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .breeding import CatSpec, Parity, beamsplitter, make_cat
from .coherent import DyadMixture, Mode, dyad_from_pure, partial_trace, simplify
from .errors import DegenerateInputError, DomainError
from .metrics import BestCat, best_cat_fidelity, fidelity


@dataclass(frozen=True)
class LossResult:
    state: DyadMixture
    gamma: float
    surviving_magnitude: float
    loss_rate: float


def _check_loss_args(cat: CatSpec, eta: float) -> None:
    if not (math.isfinite(eta) and 0.0 <= eta <= 1.0):
        raise DomainError(f"loss rate must lie in [0, 1], got {eta!r}")
    if cat.magnitude == 0 and cat.parity is Parity.ODD:
        raise DegenerateInputError("the odd cat of zero magnitude is the zero vector")


def coherence_factor(alpha: float, eta: float) -> float:
    """``<sqrt(eta) a| -sqrt(eta) a> = exp(-2 eta a^2)``, the surviving cat coherence."""
    return math.exp(-2.0 * eta * alpha**2)


def apply_loss(cat: CatSpec, eta: float, mode: Mode = Mode.A_PSI, environment: Mode = Mode.B_PSI) -> LossResult:
    """Send ``cat`` through a loss channel with loss rate ``eta``.

    The cat in ``mode`` meets vacuum in ``environment`` on a beamsplitter of
    transmissivity ``1 - eta``; the environment is then traced out.  The
    result has diagonal dyads on ``+-sqrt(1-eta) a`` with unit weight and
    cross dyads with weight ``+gamma`` (even) or ``-gamma`` (odd).
    """
    _check_loss_args(cat, eta)
    state = beamsplitter(make_cat(cat, mode), (mode, environment), 1.0 - eta)
    rho = simplify(partial_trace(dyad_from_pure(state), {environment}))
    return LossResult(
        state=rho,
        gamma=coherence_factor(cat.magnitude, eta),
        surviving_magnitude=math.sqrt(1.0 - eta) * cat.magnitude,
        loss_rate=float(eta),
    )


def loss_fidelity_paper(alpha: float, eta: float) -> float:
    """Closed form ``(1 + exp(-2 a^2 eta)) / 2``.

    This neglects the overlap between ``|+-sqrt(1-eta) a>`` and is the large
    ``alpha`` limit of :func:`loss_fidelity_exact`.
    """
    if not (math.isfinite(alpha) and alpha >= 0):
        raise DomainError(f"alpha must be finite and >= 0, got {alpha!r}")
    if not (math.isfinite(eta) and 0.0 <= eta <= 1.0):
        raise DomainError(f"loss rate must lie in [0, 1], got {eta!r}")
    return 0.5 * (1.0 + math.exp(-2.0 * alpha**2 * eta))


def loss_fidelity_exact(cat: CatSpec, eta: float, optimize: bool = False) -> float:
    """Normalized fidelity of the lossy state with a cat of the same parity.

    The target magnitude is ``sqrt(1 - eta) a``; with ``optimize=True`` it is
    instead chosen to maximize the fidelity.
    """
    return _loss_fit(cat, eta, optimize).fidelity


def loss_best_cat(cat: CatSpec, eta: float) -> BestCat:
    """Fidelity-maximizing target magnitude for the lossy state."""
    return _loss_fit(cat, eta, optimize=True)


def _loss_fit(cat: CatSpec, eta: float, optimize: bool) -> BestCat:
    result = apply_loss(cat, eta)
    if optimize:
        return best_cat_fidelity(result.state, cat.parity, upper=max(2.0 * cat.magnitude, 1.0))
    m = result.surviving_magnitude
    if m == 0 and cat.parity is Parity.ODD:
        raise DegenerateInputError("odd target of zero magnitude (total loss)")
    return BestCat(m, fidelity(result.state, make_cat(CatSpec(m, cat.parity))))


def max_alpha_for_fidelity(eta: float, target_F: float) -> float:
    """Largest ``alpha`` with ``loss_fidelity_paper(alpha, eta) >= target_F``.

    Inverts the closed form: ``alpha = sqrt(-ln(2F - 1) / (2 eta))``.
    """
    if not (math.isfinite(eta) and 0.0 < eta <= 1.0):
        raise DomainError(f"loss rate must lie in (0, 1], got {eta!r}")
    if not (0.5 < target_F < 1.0):
        raise DomainError(f"target fidelity must lie in (1/2, 1), got {target_F!r}")
    return math.sqrt(-math.log(2.0 * target_F - 1.0) / (2.0 * eta))
