"""Exact algebra of finite superpositions of multimode coherent states.

Every state in the simulator is a finite weighted sum of multimode coherent
states, and every density operator is a finite weighted sum of dyads
``|k><b|`` between them.  Because coherent-state overlaps have a closed form,
inner products, traces and partial traces are evaluated exactly, with no
number-basis truncation.

States and operators are carried unnormalized throughout; normalization only
enters in fidelities and probabilities.
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

import numpy as np

from .errors import DomainError

#: Two labels merge when every per-mode amplitude differs by less than this.
MERGE_TOL = 1e-12
#: Weights this small relative to the largest weight are dropped by simplify.
DROP_TOL = 1e-14


class Spatial(enum.Enum):
    A = "A"
    B = "B"


class Spectral(enum.Enum):
    PSI = "psi"
    PSI_BAR = "psibar"


class Mode(enum.Enum):
    """One of the four (spatial, spectral) optical modes.

    The declaration order (A psi, B psi, A psibar, B psibar) is the canonical
    ordering used when labels are printed or laid out as arrays.
    """

    A_PSI = (Spatial.A, Spectral.PSI)
    B_PSI = (Spatial.B, Spectral.PSI)
    A_PSI_BAR = (Spatial.A, Spectral.PSI_BAR)
    B_PSI_BAR = (Spatial.B, Spectral.PSI_BAR)

    @property
    def spatial(self) -> Spatial:
        return self.value[0]

    @property
    def spectral(self) -> Spectral:
        return self.value[1]

    @classmethod
    def of(cls, spatial: Spatial, spectral: Spectral) -> Mode:
        return cls((spatial, spectral))

    def __repr__(self) -> str:
        return f"Mode.{self.name}"


MODE_ORDER: tuple[Mode, ...] = tuple(Mode)
_RANK = {m: i for i, m in enumerate(MODE_ORDER)}


def _check_finite(*values: complex) -> None:
    for v in values:
        if not cmath.isfinite(v):
            raise DomainError(f"non-finite coherent amplitude {v!r}")


@dataclass(frozen=True)
class CoherentLabel:
    """Complex coherent amplitude per mode; modes not listed are in vacuum."""

    amplitudes: tuple[tuple[Mode, complex], ...] = ()

    @classmethod
    def of(cls, amplitudes: Mapping[Mode, complex] | None = None) -> CoherentLabel:
        items = dict(amplitudes or {})
        _check_finite(*items.values())
        ordered = tuple(sorted(((m, complex(a)) for m, a in items.items()), key=lambda p: _RANK[p[0]]))
        return cls(ordered)

    @classmethod
    def vacuum(cls) -> CoherentLabel:
        return cls()

    @property
    def modes(self) -> frozenset[Mode]:
        return frozenset(m for m, _ in self.amplitudes)

    def as_dict(self) -> dict[Mode, complex]:
        return dict(self.amplitudes)

    def amplitude(self, mode: Mode) -> complex:
        for m, a in self.amplitudes:
            if m is mode:
                return a
        return 0j

    def without(self, modes: Iterable[Mode]) -> CoherentLabel:
        drop = set(modes)
        return CoherentLabel(tuple(p for p in self.amplitudes if p[0] not in drop))

    def updated(self, amplitudes: Mapping[Mode, complex]) -> CoherentLabel:
        merged = self.as_dict()
        merged.update(amplitudes)
        return CoherentLabel.of(merged)

    def __mul__(self, factor: complex) -> CoherentLabel:
        return CoherentLabel(tuple((m, a * factor) for m, a in self.amplitudes))

    __rmul__ = __mul__

    def __neg__(self) -> CoherentLabel:
        return self * -1

    def __repr__(self) -> str:
        inner = ", ".join(f"{m.name}: {a:.6g}" for m, a in self.amplitudes)
        return f"|{inner}>"


def mergeable(x: CoherentLabel, y: CoherentLabel, tol: float = MERGE_TOL) -> bool:
    """True when the two labels name the same coherent state within ``tol``."""
    for m in x.modes | y.modes:
        if abs(x.amplitude(m) - y.amplitude(m)) >= tol:
            return False
    return True


@dataclass(frozen=True)
class KetSuperposition:
    """Unnormalized pure state ``sum_i w_i |label_i>``."""

    terms: tuple[tuple[complex, CoherentLabel], ...] = ()

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[complex, CoherentLabel]]) -> KetSuperposition:
        return cls(tuple((complex(w), lab) for w, lab in terms))

    @classmethod
    def single(cls, label: CoherentLabel, weight: complex = 1.0) -> KetSuperposition:
        return cls(((complex(weight), label),))

    @property
    def modes(self) -> frozenset[Mode]:
        out: frozenset[Mode] = frozenset()
        for _, lab in self.terms:
            out |= lab.modes
        return out

    @property
    def labels(self) -> list[CoherentLabel]:
        return [lab for _, lab in self.terms]

    @property
    def weights(self) -> np.ndarray:
        return np.array([w for w, _ in self.terms], dtype=complex)

    def map_labels(self, fn: Callable[[CoherentLabel], CoherentLabel]) -> KetSuperposition:
        return KetSuperposition(tuple((w, fn(lab)) for w, lab in self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[complex, CoherentLabel]]:
        return iter(self.terms)

    def __add__(self, other: KetSuperposition) -> KetSuperposition:
        return KetSuperposition(self.terms + other.terms)

    def __sub__(self, other: KetSuperposition) -> KetSuperposition:
        return self + (-1) * other

    def __mul__(self, factor: complex) -> KetSuperposition:
        return KetSuperposition(tuple((w * factor, lab) for w, lab in self.terms))

    __rmul__ = __mul__


@dataclass(frozen=True)
class DyadMixture:
    """Unnormalized operator ``sum_i w_i |ket_i><bra_i|``."""

    terms: tuple[tuple[complex, CoherentLabel, CoherentLabel], ...] = ()

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[complex, CoherentLabel, CoherentLabel]]) -> DyadMixture:
        return cls(tuple((complex(w), k, b) for w, k, b in terms))

    @property
    def modes(self) -> frozenset[Mode]:
        out: frozenset[Mode] = frozenset()
        for _, k, b in self.terms:
            out |= k.modes | b.modes
        return out

    @property
    def labels(self) -> list[CoherentLabel]:
        """Distinct labels appearing on either side of any dyad."""
        seen: list[CoherentLabel] = []
        for _, k, b in self.terms:
            for lab in (k, b):
                if not any(mergeable(lab, s) for s in seen):
                    seen.append(lab)
        return seen

    def dagger(self) -> DyadMixture:
        return DyadMixture(tuple((w.conjugate(), b, k) for w, k, b in self.terms))

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[tuple[complex, CoherentLabel, CoherentLabel]]:
        return iter(self.terms)

    def __add__(self, other: DyadMixture) -> DyadMixture:
        return DyadMixture(self.terms + other.terms)

    def __mul__(self, factor: complex) -> DyadMixture:
        return DyadMixture(tuple((w * factor, k, b) for w, k, b in self.terms))

    __rmul__ = __mul__


# --------------------------------------------------------------------------
# overlaps


def coherent_overlap(a: complex, b: complex) -> complex:
    """Single-mode overlap ``<a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b)``."""
    _check_finite(a, b)
    a, b = complex(a), complex(b)
    return cmath.exp(-0.5 * abs(a) ** 2 - 0.5 * abs(b) ** 2 + a.conjugate() * b)


def _log_overlap(x: CoherentLabel, y: CoherentLabel) -> complex:
    total = 0j
    for m in x.modes | y.modes:
        a, b = x.amplitude(m), y.amplitude(m)
        total += -0.5 * abs(a) ** 2 - 0.5 * abs(b) ** 2 + a.conjugate() * b
    return total


def multimode_overlap(x: CoherentLabel, y: CoherentLabel) -> complex:
    """Product of single-mode overlaps over every mode either label occupies."""
    return cmath.exp(_log_overlap(x, y))


def _amplitude_array(labels: list[CoherentLabel], modes: list[Mode]) -> np.ndarray:
    out = np.zeros((len(labels), len(modes)), dtype=complex)
    col = {m: j for j, m in enumerate(modes)}
    for i, lab in enumerate(labels):
        for m, a in lab.amplitudes:
            out[i, col[m]] = a
    return out


def overlap_matrix(xs: list[CoherentLabel], ys: list[CoherentLabel]) -> np.ndarray:
    """Matrix ``G[i, j] = <xs[i]|ys[j]>``."""
    modes = sorted({m for lab in xs + ys for m in lab.modes}, key=_RANK.__getitem__)
    if not modes:
        return np.ones((len(xs), len(ys)), dtype=complex)
    X = _amplitude_array(xs, modes)
    Y = _amplitude_array(ys, modes)
    log = (
        -0.5 * np.sum(np.abs(X) ** 2, axis=1)[:, None]
        - 0.5 * np.sum(np.abs(Y) ** 2, axis=1)[None, :]
        + X.conj() @ Y.T
    )
    return np.exp(log)


def inner_product(u: KetSuperposition, v: KetSuperposition) -> complex:
    """``<u|v>`` expanded bilinearly over term pairs."""
    if not u.terms or not v.terms:
        return 0j
    G = overlap_matrix(u.labels, v.labels)
    return complex(u.weights.conj() @ G @ v.weights)


def norm_squared(u: KetSuperposition) -> float:
    return inner_product(u, u).real


def tensor(u: KetSuperposition, v: KetSuperposition) -> KetSuperposition:
    """Tensor product of states living on disjoint modes."""
    if u.modes & v.modes:
        raise DomainError(f"tensor factors share modes {sorted(m.name for m in u.modes & v.modes)}")
    return KetSuperposition(
        tuple((wu * wv, CoherentLabel.of({**lu.as_dict(), **lv.as_dict()})) for wu, lu in u for wv, lv in v)
    )


# --------------------------------------------------------------------------
# mixtures


def dyad_from_pure(u: KetSuperposition) -> DyadMixture:
    """Expand ``|u><u|`` into dyads."""
    return DyadMixture(tuple((wk * wb.conjugate(), k, b) for wk, k in u for wb, b in u))


def trace(rho: DyadMixture) -> complex:
    """``Tr rho = sum_i w_i <bra_i|ket_i>``."""
    return sum((w * multimode_overlap(b, k) for w, k, b in rho), 0j)


def expectation(rho: DyadMixture, target: KetSuperposition) -> complex:
    """``<t|rho|t>`` for an unnormalized target ket."""
    if not rho.terms or not target.terms:
        return 0j
    w = np.array([t[0] for t in rho.terms], dtype=complex)
    tk = overlap_matrix(target.labels, [t[1] for t in rho.terms])
    tb = overlap_matrix(target.labels, [t[2] for t in rho.terms])
    c = target.weights
    left = c.conj() @ tk
    right = (c.conj() @ tb).conj()
    return complex(np.sum(w * left * right))


def purity(rho: DyadMixture) -> float:
    """``Tr(rho^2) / Tr(rho)^2``; equals 1 exactly for a pure state."""
    if not rho.terms:
        raise DomainError("purity of an empty operator")
    w = np.array([t[0] for t in rho.terms], dtype=complex)
    kets = [t[1] for t in rho.terms]
    bras = [t[2] for t in rho.terms]
    # Tr(|k_i><b_i| |k_j><b_j|) = <b_i|k_j> <b_j|k_i>
    bk = overlap_matrix(bras, kets)
    tr2 = np.sum(np.outer(w, w) * bk * bk.T)
    tr = trace(rho)
    return float((tr2 / tr**2).real)


def partial_trace(rho: DyadMixture, traced: Iterable[Mode]) -> DyadMixture:
    """Trace out ``traced``: each dyad picks up the overlap of its traced parts."""
    traced = frozenset(traced)
    out = []
    for w, k, b in rho:
        factor = 1 + 0j
        for m in traced:
            factor *= coherent_overlap(b.amplitude(m), k.amplitude(m))
        out.append((w * factor, k.without(traced), b.without(traced)))
    return DyadMixture(tuple(out))


def simplify(x: KetSuperposition | DyadMixture, merge_tol: float = MERGE_TOL, drop_tol: float = DROP_TOL):
    """Merge terms with mergeable labels and drop negligible weights.

    Weights are dropped when ``|w| < drop_tol * max|w|`` after merging, so the
    result is independent of the overall (unnormalized) scale.
    """
    if isinstance(x, KetSuperposition):
        keys = [(lab,) for _, lab in x]
        weights = [w for w, _ in x]
    elif isinstance(x, DyadMixture):
        keys = [(k, b) for _, k, b in x]
        weights = [w for w, _, _ in x]
    else:
        raise TypeError(f"cannot simplify {type(x).__name__}")

    merged_keys: list[tuple[CoherentLabel, ...]] = []
    merged_w: list[complex] = []
    for key, w in zip(keys, weights):
        for i, other in enumerate(merged_keys):
            if all(mergeable(p, q, merge_tol) for p, q in zip(key, other)):
                merged_w[i] += w
                break
        else:
            merged_keys.append(key)
            merged_w.append(w)

    scale = max((abs(w) for w in merged_w), default=0.0)
    kept = [(w, key) for w, key in zip(merged_w, merged_keys) if scale > 0 and abs(w) >= drop_tol * scale]
    if isinstance(x, KetSuperposition):
        return KetSuperposition(tuple((w, key[0]) for w, key in kept))
    return DyadMixture(tuple((w, key[0], key[1]) for w, key in kept))


def is_hermitian(rho: DyadMixture, tol: float = 1e-10) -> bool:
    """Every dyad ``(w, k, b)`` has a partner ``(conj(w), b, k)`` after simplification."""
    s = simplify(rho)
    scale = max((abs(w) for w, _, _ in s), default=0.0)
    atol = tol * scale
    for w, k, b in s:
        partner = [w2 for w2, k2, b2 in s if mergeable(k2, b) and mergeable(b2, k)]
        if len(partner) != 1 or abs(partner[0] - w.conjugate()) > atol:
            return False
    return True


def dyads_to_matrix(rho: DyadMixture, basis: Callable[[CoherentLabel], np.ndarray]) -> np.ndarray:
    """Sum ``w |v(k)><v(b)|`` for a user-supplied vector encoding ``basis``."""
    out = None
    for w, k, b in rho:
        term = w * np.outer(basis(k), basis(b).conj())
        out = term if out is None else out + term
    if out is None:
        raise DomainError("cannot encode an empty operator")
    return out
