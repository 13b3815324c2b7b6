"""Fidelity of mixed states against cat targets, and the searches built on it."""

from __future__ import annotations

import math
import warnings
from typing import Callable, NamedTuple

import numpy as np

from .breeding import CatSpec, Parity, breed, make_cat
from .coherent import DyadMixture, KetSuperposition, Mode, expectation, norm_squared, trace
from .errors import DegenerateInputError, DomainError, NotFoundError

INV_PHI = (math.sqrt(5) - 1) / 2
#: Lower end of the magnitude search; an odd cat of zero size is the zero vector.
MIN_MAGNITUDE = 1e-3
SCAN_POINTS = 48


class NonUnimodalWarning(UserWarning):
    """The fidelity-vs-magnitude curve has more than one local maximum."""


class BestCat(NamedTuple):
    magnitude: float
    fidelity: float


def fidelity(rho: DyadMixture, target: KetSuperposition) -> float:
    """``<t|rho|t> / (Tr(rho) <t|t>)``; invariant under rescaling either argument."""
    tr = trace(rho).real
    if not tr > 0:
        raise DegenerateInputError(f"state has non-positive trace {tr!r}")
    nt = norm_squared(target)
    if not nt > 0:
        raise DegenerateInputError("target has zero norm")
    return expectation(rho, target).real / (tr * nt)


def golden_section_max(f: Callable[[float], float], a: float, b: float, tol: float = 1e-6) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on ``[a, b]`` until the bracket is below ``tol``."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = 0.5 * (a + b)
    return x, f(x)


def _single_mode(rho: DyadMixture) -> Mode:
    modes = rho.modes
    if len(modes) > 1:
        raise DomainError(f"expected a single-mode state, got modes {sorted(m.name for m in modes)}")
    return next(iter(modes), Mode.A_PSI)


def best_cat_fidelity(
    rho: DyadMixture, parity: Parity = Parity.ODD, upper: float | None = None, tol: float = 1e-6
) -> BestCat:
    """Cat magnitude maximizing the fidelity with ``rho``, and that fidelity.

    A coarse scan over ``[MIN_MAGNITUDE, upper]`` locates the best bracket,
    which golden-section search then refines to ``tol``.  ``upper`` defaults to
    twice the largest amplitude present in ``rho``.  A
    :class:`NonUnimodalWarning` is emitted when the scan sees several local
    maxima or when the best point sits on a bracket endpoint.
    """
    mode = _single_mode(rho)
    if not trace(rho).real > 0:
        raise DegenerateInputError("cannot fit a cat to a state with non-positive trace")
    if upper is None:
        biggest = max((abs(a) for lab in rho.labels for _, a in lab.amplitudes), default=0.0)
        upper = max(2.0 * biggest, 1.0)

    def f(m: float) -> float:
        return fidelity(rho, make_cat(CatSpec(m, parity), mode))

    grid = np.linspace(MIN_MAGNITUDE, upper, SCAN_POINTS)
    values = np.array([f(m) for m in grid])
    i = int(np.argmax(values))
    interior = values[1:-1]
    n_peaks = int(np.sum((interior > values[:-2]) & (interior >= values[2:])))
    if i in (0, len(grid) - 1):
        warnings.warn(f"fidelity maximum at search endpoint m={grid[i]:.6g}", NonUnimodalWarning, stacklevel=2)
    elif n_peaks > 1:
        warnings.warn(f"fidelity has {n_peaks} local maxima in [{grid[0]:.3g}, {upper:.3g}]", NonUnimodalWarning, stacklevel=2)

    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    m, best = golden_section_max(f, lo, hi, tol)
    if values[i] > best:
        m, best = float(grid[i]), float(values[i])
    return BestCat(float(m), float(best))


def breeding_fidelity(alpha: float, eta: float, parity: Parity = Parity.ODD, **breed_kw) -> BestCat:
    """Best-cat fidelity of the effective state produced by ``breed``."""
    result = breed(alpha, eta, **breed_kw)
    return best_cat_fidelity(result.effective_state, parity)


def threshold_alpha(
    eta: float,
    target_F: float,
    *,
    lo: float = 0.1,
    hi: float = 10.0,
    tol: float = 1e-3,
    **breed_kw,
) -> float:
    """Largest input magnitude whose best-cat breeding fidelity reaches ``target_F``.

    Bisects on ``alpha`` in ``[lo, hi]``; the fidelity decreases with
    ``alpha`` so the crossing is unique.  Raises :class:`NotFoundError` when
    the curve does not cross ``target_F`` inside the range.
    """
    if not (0 < eta <= 1):
        raise DomainError(f"eta must lie in (0, 1], got {eta!r}")
    if not (0 < target_F < 1):
        raise DomainError(f"target fidelity must lie in (0, 1), got {target_F!r}")

    def F(a: float) -> float:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", NonUnimodalWarning)
            return breeding_fidelity(a, eta, **breed_kw).fidelity

    if F(lo) < target_F:
        raise NotFoundError(f"fidelity already below {target_F} at alpha={lo}")
    if F(hi) >= target_F:
        raise NotFoundError(f"fidelity stays above {target_F} up to alpha={hi}")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if F(mid) >= target_F:
            lo = mid
        else:
            hi = mid
    return lo
