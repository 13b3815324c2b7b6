"""Cat-state construction and the breeding protocol with mode-mismatch.

Pipeline, all on unnormalized coherent superpositions:

1. an odd cat in (A, psi) and an even cat in (B, phi);
2. the B-side cat is split into its psi and psi-bar components according to
   the mode overlap ``eta``;
3. a 50/50 beamsplitter acts on the psi pair and on the psi-bar pair;
4. both B modes are projected onto vacuum (the heralding event);
5. (A, psi-bar) is traced out, leaving the effective single-mode state.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .coherent import (
    CoherentLabel,
    DyadMixture,
    KetSuperposition,
    Mode,
    Spatial,
    Spectral,
    dyad_from_pure,
    norm_squared,
    partial_trace,
    simplify,
    tensor,
    trace,
)
from .errors import DegenerateInputError, DomainError


class Parity(enum.Enum):
    EVEN = 1
    ODD = -1

    @property
    def sign(self) -> int:
        return self.value

    @classmethod
    def parse(cls, text: str) -> Parity:
        try:
            return cls[text.upper()]
        except KeyError:
            raise DomainError(f"unknown parity {text!r}; expected 'even' or 'odd'") from None


@dataclass(frozen=True)
class CatSpec:
    """Recipe for ``|m> + |-m>`` (even) or ``|m> - |-m>`` (odd)."""

    magnitude: float
    parity: Parity = Parity.ODD

    def __post_init__(self):
        if not math.isfinite(self.magnitude) or self.magnitude < 0:
            raise DomainError(f"cat magnitude must be finite and >= 0, got {self.magnitude!r}")


def make_cat(spec: CatSpec, mode: Mode = Mode.A_PSI) -> KetSuperposition:
    """Two-term superposition for ``spec`` in ``mode``.

    At zero magnitude the terms merge: the even cat becomes ``2|0>`` and the
    odd cat is the empty superposition.
    """
    m = spec.magnitude
    state = KetSuperposition.from_terms(
        [(1.0, CoherentLabel.of({mode: m})), (spec.parity.sign, CoherentLabel.of({mode: -m}))]
    )
    return simplify(state)


def _check_eta(eta: float, name: str = "eta") -> float:
    if not (math.isfinite(eta) and 0.0 <= eta <= 1.0):
        raise DomainError(f"{name} must lie in [0, 1], got {eta!r}")
    return float(eta)


def beamsplitter(state: KetSuperposition, pair: tuple[Mode, Mode], transmissivity: float) -> KetSuperposition:
    """Real beamsplitter acting on coherent labels.

    With ``t = sqrt(T)`` and ``r = sqrt(1 - T)`` each label maps
    ``(a, b) -> (t a + r b, r a - t b)``.  The map is a real orthogonal
    reflection, so it is unitary on the coherent superposition.
    """
    m1, m2 = pair
    if m1 is m2:
        raise DomainError(f"beamsplitter needs two distinct modes, got {m1.name} twice")
    T = _check_eta(transmissivity, "transmissivity")
    t, r = math.sqrt(T), math.sqrt(1.0 - T)

    def act(label: CoherentLabel) -> CoherentLabel:
        a, b = label.amplitude(m1), label.amplitude(m2)
        return label.updated({m1: t * a + r * b, m2: r * a - t * b})

    return state.map_labels(act)


def beamsplitter_5050(state: KetSuperposition, pair: tuple[Mode, Mode]) -> KetSuperposition:
    """``(a, b) -> ((a + b)/sqrt2, (a - b)/sqrt2)`` on every label."""
    return beamsplitter(state, pair, 0.5)


def mismatch_split(
    state: KetSuperposition,
    eta: float,
    source: Mode = Mode.B_PSI,
    orthogonal: Mode = Mode.B_PSI_BAR,
) -> KetSuperposition:
    """Decompose the amplitude in ``source`` into overlapping/orthogonal parts.

    Each amplitude ``a`` in ``source`` becomes ``sqrt(eta) a`` in ``source``
    and ``sqrt(1 - eta) a`` in ``orthogonal``.
    """
    _check_eta(eta)
    if any(abs(lab.amplitude(orthogonal)) > 0 for lab in state.labels):
        raise DomainError(f"mode {orthogonal.name} must be empty before the mismatch split")
    return beamsplitter(state, (source, orthogonal), eta)


def condition_vacuum(
    state: KetSuperposition, modes: set[Mode] | frozenset[Mode], rescale: bool = False
) -> tuple[KetSuperposition, float]:
    """Project ``modes`` onto vacuum.

    Each weight is multiplied by ``prod_m <0|a_m>`` and the modes are removed
    from the labels.  Returns the projected state and the probability of the
    vacuum outcome.

    With ``rescale=True`` the largest per-term factor is divided out of the
    returned state so that huge mismatched amplitudes do not underflow the
    weights; the probability is computed with the exact factors either way.
    """
    modes = frozenset(modes)
    if not modes:
        raise DomainError("condition_vacuum needs at least one mode")
    before = norm_squared(state)
    if not before > 0:
        raise DegenerateInputError("cannot condition a zero-norm state")

    # log <0|a> = -|a|^2 / 2
    logs = [-0.5 * sum(abs(lab.amplitude(m)) ** 2 for m in modes) for lab in state.labels]
    shift = max(logs) if rescale else 0.0
    projected = KetSuperposition(
        tuple((w * math.exp(lg - shift), lab.without(modes)) for (w, lab), lg in zip(state.terms, logs))
    )
    after = norm_squared(projected)
    # shift <= 0, so exp(2 shift) cannot overflow
    return projected, float(after / before * math.exp(2.0 * shift))


@dataclass(frozen=True)
class BreedResult:
    effective_state: DyadMixture
    success_probability: float
    input_magnitude: float
    mode_overlap: float
    projected_state: KetSuperposition


def breed(alpha: float, eta: float, *, matched: bool = True, odd_on: Spatial = Spatial.A) -> BreedResult:
    """Run one breeding step with mode overlap ``eta``.

    ``alpha`` is the common psi-component magnitude entering the beamsplitter
    when ``matched`` (the B-side cat is prepared with magnitude
    ``alpha / sqrt(eta)``).  With ``matched=False`` both input cats have
    magnitude ``alpha`` and only ``sqrt(eta) alpha`` of the B cat interferes.

    At ``eta = 1`` the effective state is an odd cat of magnitude
    ``sqrt(2) alpha``.
    """
    if not math.isfinite(alpha) or alpha < 0:
        raise DomainError(f"alpha must be finite and >= 0, got {alpha!r}")
    eta = _check_eta(eta)
    if alpha == 0:
        raise DegenerateInputError("the odd input cat vanishes at alpha = 0")
    if matched and eta == 0:
        raise DomainError("amplitude matching needs eta > 0; use matched=False")

    b_mag = alpha / math.sqrt(eta) if matched else alpha
    a_mode = Mode.of(Spatial.A, Spectral.PSI)
    b_mode = Mode.of(Spatial.B, Spectral.PSI)
    odd, even = (Parity.ODD, Parity.EVEN) if odd_on is Spatial.A else (Parity.EVEN, Parity.ODD)
    cat_a = make_cat(CatSpec(alpha, odd), a_mode)
    cat_b = make_cat(CatSpec(b_mag, even), b_mode)
    psi_in = tensor(cat_a, cat_b)

    state = mismatch_split(psi_in, eta)
    state = beamsplitter_5050(state, (Mode.A_PSI, Mode.B_PSI))
    state = beamsplitter_5050(state, (Mode.A_PSI_BAR, Mode.B_PSI_BAR))
    projected, probability = condition_vacuum(state, {Mode.B_PSI, Mode.B_PSI_BAR}, rescale=True)
    projected = simplify(projected)

    rho = simplify(partial_trace(dyad_from_pure(projected), {Mode.A_PSI_BAR}))
    if not trace(rho).real > 0:
        raise DegenerateInputError(f"heralded state vanishes at alpha={alpha}, eta={eta}")
    return BreedResult(
        effective_state=rho,
        success_probability=probability,
        input_magnitude=float(alpha),
        mode_overlap=eta,
        projected_state=projected,
    )
