import math

import numpy as np
import pytest

from catbreed.breeding import CatSpec, Parity, breed, make_cat
from catbreed.coherent import Mode, coherent_overlap
from catbreed.errors import CutoffError, DegenerateInputError, DomainError
from catbreed.fock import (
    FockOperator,
    FockVector,
    beamsplitter_block,
    breed_cutoff,
    cat_to_fock,
    coherent_to_fock,
    cutoff_for,
    dyads_to_fock,
    fock_beamsplitter,
    fock_breed,
    fock_density,
    fock_fidelity,
    fock_partial_trace,
    fock_vacuum_project,
    trace_distance,
)
from catbreed.metrics import fidelity


def binomial_block(n: int, T: float) -> np.ndarray:
    """Direct float binomial expansion; accurate only for small n."""
    t, r = math.sqrt(T), math.sqrt(1 - T)
    U = np.zeros((n + 1, n + 1))
    for n1 in range(n + 1):
        n2 = n - n1
        for j in range(n1 + 1):
            for k in range(n2 + 1):
                m1 = j + k
                c = math.comb(n1, j) * math.comb(n2, k) * t**j * r ** (n1 - j) * r**k * (-t) ** (n2 - k)
                U[m1, n1] += c * math.sqrt(math.factorial(m1) * math.factorial(n - m1) / (math.factorial(n1) * math.factorial(n2)))
    return U


def two_mode(a: complex, b: complex, N: int) -> FockVector:
    return FockVector(N, np.outer(coherent_to_fock(a, N), coherent_to_fock(b, N)))


class TestCoherentToFock:
    def test_vacuum(self):
        v = coherent_to_fock(0, 10)
        assert v[0] == 1 and not np.any(v[1:])

    def test_vacuum_amplitude_of_unit_state(self):
        assert coherent_to_fock(1.0, 20)[0] == pytest.approx(math.exp(-0.5), rel=1e-15)
        assert abs(coherent_to_fock(1.0, 20)[0] - 0.606531) < 1e-6

    def test_overlap_of_opposite_states(self):
        N = cutoff_for(1.0)
        assert np.vdot(coherent_to_fock(1, N), coherent_to_fock(-1, N)).real == pytest.approx(math.exp(-2), abs=1e-10)

    def test_normalized(self):
        for a in (0.5, 1 + 1j, 3.0):
            v = coherent_to_fock(a, cutoff_for(abs(a) ** 2))
            assert np.vdot(v, v).real == pytest.approx(1.0, abs=1e-10)

    def test_insufficient_cutoff(self):
        with pytest.raises(CutoffError) as info:
            coherent_to_fock(3.0, 10)
        assert info.value.required == cutoff_for(9.0)

    def test_cat_parity_support(self):
        odd = cat_to_fock(CatSpec(1.5, Parity.ODD), 40)
        even = cat_to_fock(CatSpec(1.5, Parity.EVEN), 40)
        assert np.allclose(odd[0::2], 0, atol=1e-15)
        assert np.allclose(even[1::2], 0, atol=1e-15)

    def test_matches_closed_form_overlap(self, rng):
        for _ in range(20):
            a, b = (complex(*rng.uniform(-2, 2, 2)) for _ in range(2))
            N = 45
            assert np.vdot(coherent_to_fock(a, N), coherent_to_fock(b, N)) == pytest.approx(coherent_overlap(a, b), abs=1e-10)


class TestBeamsplitter:
    @pytest.mark.parametrize("T", [0.5, 0.8, 0.95, 0.1])
    def test_matches_binomial_formula_small_n(self, T):
        for n in range(12):
            assert np.allclose(beamsplitter_block(n, T), binomial_block(n, T), atol=1e-12)

    @pytest.mark.parametrize("T", [0.5, 0.9, 0.99])
    def test_unitary_per_block(self, T):
        for n in range(0, 61):
            U = beamsplitter_block(n, T)
            assert np.max(np.abs(U.T @ U - np.eye(n + 1))) < 1e-10

    def test_vacuum_unchanged(self):
        v = two_mode(0, 0, 10)
        out = fock_beamsplitter(v, (0, 1))
        assert np.allclose(out.amplitudes, v.amplitudes)

    @pytest.mark.parametrize("a,b", [(1.0, 0.5), (0.3 + 0.4j, -1.1), (1.5, 1.5)])
    def test_coherent_inputs(self, a, b):
        N = 40
        out = fock_beamsplitter(two_mode(a, b, N), (0, 1))
        expected = two_mode((a + b) / math.sqrt(2), (a - b) / math.sqrt(2), N)
        assert np.max(np.abs(out.amplitudes - expected.amplitudes)) < 1e-8

    def test_general_transmissivity(self):
        N, T, a = 40, 0.7, 1.3
        out = fock_beamsplitter(two_mode(a, 0, N), (0, 1), T)
        expected = two_mode(math.sqrt(T) * a, math.sqrt(1 - T) * a, N)
        assert np.max(np.abs(out.amplitudes - expected.amplitudes)) < 1e-8

    def test_single_photon(self):
        N = 3
        amp = np.zeros((N + 1, N + 1), dtype=complex)
        amp[1, 0] = 1
        out = fock_beamsplitter(FockVector(N, amp), (0, 1)).amplitudes
        # a1+ -> (a1+ + a2+)/sqrt2
        assert out[1, 0] == pytest.approx(1 / math.sqrt(2))
        assert out[0, 1] == pytest.approx(1 / math.sqrt(2))
        assert np.sum(np.abs(out) ** 2) == pytest.approx(1.0)

    def test_same_mode_rejected(self):
        with pytest.raises(DomainError):
            fock_beamsplitter(two_mode(0, 0, 3), (1, 1))


class TestProjectionAndTrace:
    def test_project_vacuum_mode(self):
        v = two_mode(1.0, 0.0, 25)
        out, p = fock_vacuum_project(v, [1])
        assert p == pytest.approx(1.0, abs=1e-12)
        assert out.n_modes == 1

    def test_project_zero_state(self):
        with pytest.raises(DegenerateInputError):
            fock_vacuum_project(FockVector(3, np.zeros((4, 4), dtype=complex)), [0])

    def test_partial_trace_preserves_trace(self, rng):
        N = 4
        amp = rng.normal(size=(N + 1,) * 3) + 1j * rng.normal(size=(N + 1,) * 3)
        rho = fock_density(FockVector(N, amp))
        for modes in ([0], [1], [2], [0, 2]):
            red = fock_partial_trace(rho, modes)
            assert red.trace() == pytest.approx(rho.trace(), rel=1e-10)
            assert red.is_hermitian()

    def test_partial_trace_of_product(self):
        N = 20
        v = two_mode(0.7, -0.4, N)
        red = fock_partial_trace(fock_density(v), [1]).matrix
        a = coherent_to_fock(0.7, N)
        assert np.allclose(red, np.outer(a, a.conj()), atol=1e-12)

    def test_fidelity_identical_pure(self):
        v = cat_to_fock(CatSpec(1.2), 30)
        assert fock_fidelity(fock_density(FockVector(30, v)), v) == pytest.approx(1.0, abs=1e-12)

    def test_fidelity_degenerate(self):
        with pytest.raises(DegenerateInputError):
            fock_fidelity(FockOperator(2, 1, np.zeros((3, 3))), np.ones(3))


class TestPipelines:
    def test_cutoff_rule(self):
        assert cutoff_for(0) == 12
        assert cutoff_for(2 * 1.5**2) == math.ceil(4.5 + 8 * math.sqrt(4.5) + 12)
        assert breed_cutoff(2.0, 1.0) == cutoff_for(8.0)

    def test_breed_at_reference_point(self):
        alpha, eta = 1.5, 0.9
        oracle = fock_breed(alpha, eta)
        ours = breed(alpha, eta)
        N = oracle.effective_state.cutoff
        rho = dyads_to_fock(ours.effective_state, [Mode.A_PSI], N)
        assert trace_distance(rho.matrix, oracle.effective_state.matrix) < 1e-7
        assert oracle.effective_state.is_hermitian()
        target = CatSpec(math.sqrt(2) * alpha)
        F_oracle = fock_fidelity(oracle.effective_state, cat_to_fock(target, N))
        assert F_oracle == pytest.approx(0.891567169998, abs=1e-10)
        assert fidelity(ours.effective_state, make_cat(target)) == pytest.approx(F_oracle, abs=1e-8)

    def test_ideal_probability(self):
        assert fock_breed(1.0, 1.0).success_probability == pytest.approx(0.5, abs=1e-10)

    def test_unmatched_pipeline(self):
        oracle = fock_breed(1.0, 0.8, matched=False)
        ours = breed(1.0, 0.8, matched=False)
        rho = dyads_to_fock(ours.effective_state, [Mode.A_PSI], oracle.effective_state.cutoff)
        assert trace_distance(rho.matrix, oracle.effective_state.matrix) < 1e-7
        assert ours.success_probability == pytest.approx(oracle.success_probability, abs=1e-8)

    def test_trace_distance_basics(self):
        a = np.diag([1.0, 0.0])
        b = np.diag([0.0, 2.0])
        assert trace_distance(a, a) == 0
        assert trace_distance(a, b) == pytest.approx(1.0)
