import numpy as np
import pytest
from hypothesis import settings
from hypothesis import strategies as st

from catbreed.coherent import MODE_ORDER, CoherentLabel, DyadMixture, KetSuperposition

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

amplitude = st.complex_numbers(max_magnitude=2.0, allow_nan=False, allow_infinity=False)
weight = st.complex_numbers(min_magnitude=0.05, max_magnitude=2.0, allow_nan=False, allow_infinity=False)


@st.composite
def labels(draw, modes=MODE_ORDER):
    chosen = draw(st.lists(st.sampled_from(modes), unique=True, max_size=len(modes)))
    return CoherentLabel.of({m: draw(amplitude) for m in chosen})


@st.composite
def kets(draw, modes=MODE_ORDER, max_terms=4):
    n = draw(st.integers(1, max_terms))
    return KetSuperposition.from_terms((draw(weight), draw(labels(modes))) for _ in range(n))


def random_label(rng: np.random.Generator, modes=MODE_ORDER, scale: float = 2.0) -> CoherentLabel:
    k = rng.integers(1, len(modes) + 1)
    picked = rng.choice(len(modes), size=k, replace=False)
    return CoherentLabel.of({modes[i]: complex(*(scale * rng.uniform(-1, 1, 2))) for i in picked})


def random_ket(rng: np.random.Generator, n_terms: int, modes=MODE_ORDER, scale: float = 2.0) -> KetSuperposition:
    return KetSuperposition.from_terms(
        (complex(*rng.normal(size=2)), random_label(rng, modes, scale)) for _ in range(n_terms)
    )


def random_mixture(rng: np.random.Generator, n_states: int = 3, n_terms: int = 3, modes=MODE_ORDER) -> DyadMixture:
    """Positive combination of pure-state dyads: Hermitian with positive trace."""
    from catbreed.coherent import dyad_from_pure

    out = DyadMixture()
    for _ in range(n_states):
        out = out + rng.uniform(0.1, 1.0) * dyad_from_pure(random_ket(rng, n_terms, modes))
    return out


@pytest.fixture
def rng():
    return np.random.default_rng(20070515)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: dict[int, str] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[n])
