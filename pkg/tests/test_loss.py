import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from catbreed.breeding import CatSpec, Parity, make_cat
from catbreed.coherent import Mode, is_hermitian, norm_squared, trace
from catbreed.errors import DegenerateInputError, DomainError
from catbreed.fock import dyads_to_fock, fock_loss, trace_distance
from catbreed.loss import (
    apply_loss,
    coherence_factor,
    loss_best_cat,
    loss_fidelity_exact,
    loss_fidelity_paper,
    max_alpha_for_fidelity,
)


class TestApplyLoss:
    def test_no_loss_is_pure_cat(self):
        r = apply_loss(CatSpec(1.4, Parity.ODD), 0.0)
        assert r.gamma == 1.0
        assert r.surviving_magnitude == pytest.approx(1.4)
        assert loss_fidelity_exact(CatSpec(1.4, Parity.ODD), 0.0) == pytest.approx(1.0, abs=1e-14)

    def test_total_loss_collapses_to_vacuum(self):
        r = apply_loss(CatSpec(1.0, Parity.EVEN), 1.0)
        assert r.surviving_magnitude == 0
        assert all(lab.amplitude(Mode.A_PSI) == 0 for lab in r.state.labels)

    def test_values_at_five_percent(self):
        r = apply_loss(CatSpec(1.0, Parity.EVEN), 0.05)
        assert r.gamma == pytest.approx(0.904837, abs=1e-6)
        assert r.surviving_magnitude == pytest.approx(0.974679, abs=1e-6)

    @pytest.mark.parametrize("parity", list(Parity))
    def test_four_dyad_structure(self, parity):
        r = apply_loss(CatSpec(1.3, parity), 0.2)
        m = r.surviving_magnitude
        assert len(r.state) == 4
        for w, k, b in r.state:
            ka, ba = k.amplitude(Mode.A_PSI).real, b.amplitude(Mode.A_PSI).real
            assert abs(ka) == pytest.approx(m) and abs(ba) == pytest.approx(m)
            if ka == ba:
                assert w == pytest.approx(1.0)
            else:
                assert w == pytest.approx(parity.sign * r.gamma, rel=1e-14)

    @given(st.floats(0.05, 5.0), st.floats(0.0, 1.0), st.sampled_from(list(Parity)))
    def test_trace_preserving_and_hermitian(self, alpha, eta, parity):
        cat = CatSpec(alpha, parity)
        r = apply_loss(cat, eta)
        assert trace(r.state).real == pytest.approx(norm_squared(make_cat(cat)), abs=1e-12)
        assert is_hermitian(r.state)
        assert 0 < trace(r.state).real <= 4 + 1e-12

    @given(st.floats(0.0, 5.0), st.floats(0.0, 1.0))
    def test_gamma_range(self, alpha, eta):
        g = coherence_factor(alpha, eta)
        assert 0 <= g <= 1
        if eta * alpha**2 == 0:
            assert g == 1

    def test_errors(self):
        with pytest.raises(DomainError):
            apply_loss(CatSpec(1.0), 1.5)
        with pytest.raises(DegenerateInputError):
            apply_loss(CatSpec(0.0, Parity.ODD), 0.1)

    @pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
    @pytest.mark.parametrize("eta", [0.05, 0.2])
    @pytest.mark.parametrize("parity", list(Parity))
    def test_matches_fock_oracle(self, alpha, eta, parity):
        cat = CatSpec(alpha, parity)
        oracle = fock_loss(cat, eta)
        ours = dyads_to_fock(apply_loss(cat, eta).state, [Mode.A_PSI], oracle.cutoff)
        assert trace_distance(ours.matrix, oracle.matrix) < 1e-8


class TestFidelity:
    def test_no_loss(self):
        assert loss_fidelity_paper(3.3, 0.0) == 1.0

    def test_threshold_region(self):
        assert loss_fidelity_paper(1.5, 0.05) == pytest.approx(0.5 * (1 + math.exp(-0.225)), rel=1e-14)
        assert loss_fidelity_paper(1.5, 0.05) == pytest.approx(0.899258, abs=1e-6)
        assert loss_fidelity_paper(1.5, 0.05) < 0.9 < loss_fidelity_paper(1.49, 0.05)

    def test_half_loss(self):
        assert loss_fidelity_paper(2.0, 0.5) == pytest.approx(0.50916, abs=1e-5)

    def test_exact_close_to_closed_form_for_large_cat(self):
        cat = CatSpec(3.0, Parity.EVEN)
        assert abs(loss_fidelity_exact(cat, 0.05) - loss_fidelity_paper(3.0, 0.05)) < 1e-6

    def test_exact_small_cat_closed_form(self):
        s, g = math.exp(-1.9), math.exp(-0.1)
        expected = (1 + s) * (1 + g) / (2 * (1 + g * s))
        got = loss_fidelity_exact(CatSpec(1.0, Parity.EVEN), 0.05)
        assert got == pytest.approx(expected, rel=1e-13)
        # frozen from the Fock oracle
        assert got == pytest.approx(0.964358878309804, abs=1e-10)
        assert abs(got - loss_fidelity_paper(1.0, 0.05)) > 0.01

    def test_exact_odd_closed_form(self):
        s, g = math.exp(-2 * 0.8 * 1.69), math.exp(-2 * 0.2 * 1.69)
        expected = (1 - s) * (1 + g) / (2 * (1 - g * s))
        assert loss_fidelity_exact(CatSpec(1.3, Parity.ODD), 0.2) == pytest.approx(expected, rel=1e-12)

    def test_odd_total_loss_degenerate(self):
        with pytest.raises(DegenerateInputError):
            loss_fidelity_exact(CatSpec(1.0, Parity.ODD), 1.0)

    @pytest.mark.parametrize("alpha", [1.0, 2.0, 3.0])
    @pytest.mark.parametrize("parity", list(Parity))
    def test_surviving_magnitude_maximizes_fidelity(self, alpha, parity):
        cat = CatSpec(alpha, parity)
        best = loss_best_cat(cat, 0.05)
        assert best.magnitude == pytest.approx(math.sqrt(0.95) * alpha, abs=1e-5)
        assert best.fidelity == pytest.approx(loss_fidelity_exact(cat, 0.05), abs=1e-10)

    def test_closed_form_monotone(self):
        alphas = np.linspace(0.1, 5, 25)
        etas = np.linspace(0.01, 1.0, 25)
        F = np.array([[loss_fidelity_paper(a, e) for e in etas] for a in alphas])
        # strict wherever F is still resolvable from its 1/2 floor
        live = F > 0.5 + 1e-12
        for axis in (0, 1):
            d = np.diff(F, axis=axis)
            head = live[:-1, :] if axis == 0 else live[:, :-1]
            assert np.all(d <= 0)
            assert np.all(d[head] < 0)


class TestMaxAlpha:
    def test_five_percent_ninety(self):
        assert max_alpha_for_fidelity(0.05, 0.9) == pytest.approx(math.sqrt(-math.log(0.8) / 0.1), rel=1e-14)
        assert max_alpha_for_fidelity(0.05, 0.9) == pytest.approx(1.4936, abs=1e-3)

    def test_ninety_nine(self):
        a = max_alpha_for_fidelity(0.05, 0.99)
        # independent check: bisection on the forward closed form
        lo, hi = 0.0, 5.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            lo, hi = (mid, hi) if loss_fidelity_paper(mid, 0.05) >= 0.99 else (lo, mid)
        assert a == pytest.approx(lo, abs=1e-12)
        assert a == pytest.approx(0.449474, abs=1e-6)

    def test_scaling(self):
        ref = max_alpha_for_fidelity(0.05, 0.9) * math.sqrt(0.05)
        for eta in (1e-4, 1e-3, 0.01, 0.3, 1.0):
            assert max_alpha_for_fidelity(eta, 0.9) * math.sqrt(eta) == pytest.approx(ref, rel=1e-12)

    def test_monotone(self):
        assert max_alpha_for_fidelity(0.1, 0.9) < max_alpha_for_fidelity(0.05, 0.9)
        assert max_alpha_for_fidelity(0.05, 0.95) < max_alpha_for_fidelity(0.05, 0.9)

    @pytest.mark.parametrize("eta,F", [(0.05, 0.5), (0.05, 0.3), (0.05, 1.0), (0.0, 0.9), (1.2, 0.9)])
    def test_domain(self, eta, F):
        with pytest.raises(DomainError):
            max_alpha_for_fidelity(eta, F)
