"""Truncated photon-number-basis oracle.

Re-runs the breeding and loss pipelines as dense linear algebra on number
states, independently of the coherent-label algebra, so the two routes can be
compared.  Only tests and the ``selftest`` command use this module.

Multimode tensors index modes in the order (A psi, B psi, A psibar, B psibar).
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np
from mpmath import mp, mpf

from .breeding import CatSpec, Parity
from .coherent import MODE_ORDER, CoherentLabel, DyadMixture, Mode
from .errors import CutoffError, DegenerateInputError, DomainError

#: Largest probability mass allowed beyond the cutoff for any encoded coherent state.
TAIL_TOL = 1e-10


def cutoff_for(mean_photons: float) -> int:
    """Cutoff ``N = ceil(mu + 8 sqrt(mu) + 12)`` for total mean photon number ``mu``."""
    mu = float(mean_photons)
    return math.ceil(mu + 8.0 * math.sqrt(mu) + 12.0)


@dataclass
class FockVector:
    cutoff: int
    amplitudes: np.ndarray  # shape (cutoff + 1,) * n_modes

    @property
    def n_modes(self) -> int:
        return self.amplitudes.ndim

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)


@dataclass
class FockOperator:
    cutoff: int
    n_modes: int
    matrix: np.ndarray  # shape (D, D) with D = (cutoff + 1) ** n_modes

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def is_hermitian(self, tol: float = 1e-10) -> bool:
        scale = max(np.max(np.abs(self.matrix)), 1e-300)
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T)) <= tol * scale)


def coherent_to_fock(a: complex, cutoff: int) -> np.ndarray:
    """Number-basis amplitudes ``exp(-|a|^2/2) a^n / sqrt(n!)`` for ``n <= cutoff``."""
    a = complex(a)
    c = np.empty(cutoff + 1, dtype=complex)
    c[0] = math.exp(-0.5 * abs(a) ** 2)
    for n in range(1, cutoff + 1):
        c[n] = c[n - 1] * a / math.sqrt(n)
    tail = 1.0 - float(np.sum(np.abs(c) ** 2))
    if tail > TAIL_TOL:
        need = cutoff_for(abs(a) ** 2)
        raise CutoffError(f"cutoff {cutoff} leaves mass {tail:.3g} of |{a:.4g}> above the cutoff; use >= {need}", need)
    return c


def cat_to_fock(spec: CatSpec, cutoff: int) -> np.ndarray:
    m = spec.magnitude
    return coherent_to_fock(m, cutoff) + spec.parity.sign * coherent_to_fock(-m, cutoff)


def label_to_fock(label: CoherentLabel, modes: Sequence[Mode], cutoff: int) -> np.ndarray:
    """Kronecker product of single-mode expansions, in the order ``modes``."""
    if label.modes - set(modes):
        raise DomainError(f"label occupies modes outside {[m.name for m in modes]}")
    out = np.ones(1, dtype=complex)
    for m in modes:
        out = np.kron(out, coherent_to_fock(label.amplitude(m), cutoff))
    return out


def dyads_to_fock(rho: DyadMixture, modes: Sequence[Mode], cutoff: int) -> FockOperator:
    """Dense number-basis matrix of a dyad mixture."""
    if not rho.terms:
        raise DegenerateInputError("cannot encode an empty operator")
    cache: dict[CoherentLabel, np.ndarray] = {}

    def vec(lab: CoherentLabel) -> np.ndarray:
        if lab not in cache:
            cache[lab] = label_to_fock(lab, modes, cutoff)
        return cache[lab]

    dim = (cutoff + 1) ** len(modes)
    mat = np.zeros((dim, dim), dtype=complex)
    for w, k, b in rho:
        mat += w * np.outer(vec(k), vec(b).conj())
    return FockOperator(cutoff, len(modes), mat)


#: Working precision (decimal digits) for beamsplitter matrix elements.
BLOCK_DPS = 40


@functools.lru_cache(maxsize=1024)
def beamsplitter_block(n: int, transmissivity: float) -> np.ndarray:
    """Beamsplitter restricted to total photon number ``n``.

    Element ``[m1, n1]`` maps ``|n1, n - n1>`` to ``|m1, n - m1>``.  The
    creation operators transform as ``a1+ -> t a1+ + r a2+`` and
    ``a2+ -> r a1+ - t a2+``, which is the number-basis form of the coherent
    map ``(a, b) -> (t a + r b, r a - t b)``.  Elements come from expanding
    ``(t a1+ + r a2+)^n1 (r a1+ - t a2+)^n2`` binomially.

    The alternating binomial sums cancel heavily beyond ~40 photons, so they
    are accumulated at ``BLOCK_DPS`` digits and rounded once at the end.
    """
    with mp.workdps(BLOCK_DPS):
        T = mpf(transmissivity)
        t, r = mpmath.sqrt(T), mpmath.sqrt(1 - T)
        t_pow = [t**p for p in range(n + 1)]
        r_pow = [r**p for p in range(n + 1)]
        sqrt_fact = [mpmath.sqrt(mpmath.factorial(k)) for k in range(n + 1)]
        U = np.zeros((n + 1, n + 1))
        for n1 in range(n + 1):
            n2 = n - n1
            for m1 in range(n + 1):
                acc = mpf(0)
                for j in range(max(0, m1 - n2), min(n1, m1) + 1):
                    k = m1 - j
                    c = math.comb(n1, j) * math.comb(n2, k)
                    if (n2 - k) % 2:
                        c = -c
                    p = j + n2 - k  # total power of t
                    acc += c * t_pow[p] * r_pow[n - p]
                U[m1, n1] = float(acc * sqrt_fact[m1] * sqrt_fact[n - m1] / (sqrt_fact[n1] * sqrt_fact[n2]))
    return U


def fock_beamsplitter(state: FockVector, pair: tuple[int, int], transmissivity: float = 0.5) -> FockVector:
    """Apply a beamsplitter to modes ``pair`` of a multimode number-basis tensor.

    Components with more than ``cutoff`` photons in the pair are discarded;
    the cutoff rule keeps that mass negligible.
    """
    i, j = pair
    if i == j:
        raise DomainError("beamsplitter needs two distinct modes")
    N = state.cutoff
    moved = np.moveaxis(state.amplitudes, (i, j), (0, 1))
    rest = moved.shape[2:]
    flat = moved.reshape(N + 1, N + 1, -1)
    out = np.zeros_like(flat)
    for n in range(N + 1):
        idx = np.arange(n + 1)
        block = beamsplitter_block(n, float(transmissivity))
        out[idx, n - idx] = block @ flat[idx, n - idx]
    out = np.moveaxis(out.reshape((N + 1, N + 1) + rest), (0, 1), (i, j))
    return FockVector(N, out)


def fock_vacuum_project(state: FockVector, modes: Sequence[int]) -> tuple[FockVector, float]:
    """Project ``modes`` onto vacuum; returns the remaining-mode state and the probability."""
    before = state.norm_squared()
    if not before > 0:
        raise DegenerateInputError("cannot condition a zero-norm state")
    index = tuple(0 if ax in set(modes) else slice(None) for ax in range(state.n_modes))
    projected = FockVector(state.cutoff, state.amplitudes[index])
    return projected, projected.norm_squared() / before


def fock_density(state: FockVector) -> FockOperator:
    v = state.amplitudes.reshape(-1)
    return FockOperator(state.cutoff, state.n_modes, np.outer(v, v.conj()))


def fock_partial_trace(op: FockOperator, modes: Sequence[int]) -> FockOperator:
    """Trace out the listed mode axes of a multimode operator."""
    d = op.cutoff + 1
    n = op.n_modes
    traced = sorted(set(modes))
    keep = [ax for ax in range(n) if ax not in traced]
    t = op.matrix.reshape((d,) * (2 * n))
    letters = "abcdefghijklmnopqrstuvwxyz"
    rows = list(letters[:n])
    cols = list(letters[n : 2 * n])
    for ax in traced:
        cols[ax] = rows[ax]
    spec = "".join(rows) + "".join(cols) + "->" + "".join(rows[ax] for ax in keep) + "".join(cols[ax] for ax in keep)
    reduced = np.einsum(spec, t)
    dk = d ** len(keep)
    return FockOperator(op.cutoff, len(keep), reduced.reshape(dk, dk))


def fock_fidelity(op: FockOperator, vec: np.ndarray) -> float:
    """``<v|rho|v> / (Tr(rho) <v|v>)``."""
    v = np.asarray(vec).reshape(-1)
    tr = op.trace().real
    nv = float(np.vdot(v, v).real)
    if not (tr > 0 and nv > 0):
        raise DegenerateInputError("fidelity needs positive trace and nonzero target")
    return float(np.vdot(v, op.matrix @ v).real / (tr * nv))


def trace_distance(rho: np.ndarray, sigma: np.ndarray) -> float:
    """Trace distance between the trace-normalized versions of two matrices."""
    a = rho / np.trace(rho)
    b = sigma / np.trace(sigma)
    diff = a - b
    diff = 0.5 * (diff + diff.conj().T)
    return 0.5 * float(np.sum(np.abs(np.linalg.eigvalsh(diff))))


# --------------------------------------------------------------------------
# pipelines


def breed_cutoff(alpha: float, eta: float, matched: bool = True) -> int:
    b_mag = alpha / math.sqrt(eta) if matched else alpha
    return cutoff_for(max(2.0 * alpha**2, alpha**2 + b_mag**2))


@dataclass
class FockBreedResult:
    effective_state: FockOperator
    success_probability: float


def fock_breed(alpha: float, eta: float, *, matched: bool = True, cutoff: int | None = None) -> FockBreedResult:
    """Breeding pipeline in the number basis (odd cat on A, even cat on B)."""
    if alpha <= 0:
        raise DegenerateInputError("the odd input cat vanishes at alpha = 0")
    if matched and eta <= 0:
        raise DomainError("amplitude matching needs eta > 0")
    N = cutoff if cutoff is not None else breed_cutoff(alpha, eta, matched)
    b_mag = alpha / math.sqrt(eta) if matched else alpha
    cat_a = cat_to_fock(CatSpec(alpha, Parity.ODD), N)
    cat_b = cat_to_fock(CatSpec(b_mag, Parity.EVEN), N)
    vac = np.zeros(N + 1, dtype=complex)
    vac[0] = 1.0
    psi = FockVector(N, np.einsum("a,b,c,d->abcd", cat_a, cat_b, vac, vac))
    norm_in = psi.norm_squared()

    ax = {m: i for i, m in enumerate(MODE_ORDER)}
    psi = fock_beamsplitter(psi, (ax[Mode.B_PSI], ax[Mode.B_PSI_BAR]), eta)
    psi = fock_beamsplitter(psi, (ax[Mode.A_PSI], ax[Mode.B_PSI]), 0.5)
    psi = fock_beamsplitter(psi, (ax[Mode.A_PSI_BAR], ax[Mode.B_PSI_BAR]), 0.5)
    proj, _ = fock_vacuum_project(psi, [ax[Mode.B_PSI], ax[Mode.B_PSI_BAR]])
    probability = proj.norm_squared() / norm_in
    # remaining axes: (A psi, A psibar)
    rho = fock_partial_trace(fock_density(proj), [1])
    return FockBreedResult(rho, probability)


def fock_loss(cat: CatSpec, eta: float, cutoff: int | None = None) -> FockOperator:
    """Loss channel in the number basis: beamsplitter to vacuum, trace the environment."""
    N = cutoff if cutoff is not None else cutoff_for(max(cat.magnitude**2, 1.0))
    vac = np.zeros(N + 1, dtype=complex)
    vac[0] = 1.0
    psi = FockVector(N, np.outer(cat_to_fock(cat, N), vac))
    psi = fock_beamsplitter(psi, (0, 1), 1.0 - eta)
    return fock_partial_trace(fock_density(psi), [1])
