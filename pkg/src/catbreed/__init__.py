"""Exact simulation of optical cat-state breeding under mode-mismatch and photon loss."""

from .breeding import BreedResult, CatSpec, Parity, beamsplitter_5050, breed, condition_vacuum, make_cat, mismatch_split
from .coherent import (
    CoherentLabel,
    DyadMixture,
    KetSuperposition,
    Mode,
    Spatial,
    Spectral,
    coherent_overlap,
    dyad_from_pure,
    inner_product,
    multimode_overlap,
    partial_trace,
    simplify,
    trace,
)
from .errors import CatBreedError, CutoffError, DegenerateInputError, DomainError, NotFoundError
from .loss import LossResult, apply_loss, loss_fidelity_exact, loss_fidelity_paper, max_alpha_for_fidelity
from .metrics import BestCat, best_cat_fidelity, fidelity, threshold_alpha

__version__ = "0.1.0"

__all__ = [
    "apply_loss",
    "beamsplitter_5050",
    "best_cat_fidelity",
    "BestCat",
    "breed",
    "BreedResult",
    "CatBreedError",
    "CatSpec",
    "coherent_overlap",
    "CoherentLabel",
    "condition_vacuum",
    "CutoffError",
    "DegenerateInputError",
    "DomainError",
    "dyad_from_pure",
    "DyadMixture",
    "fidelity",
    "inner_product",
    "KetSuperposition",
    "loss_fidelity_exact",
    "loss_fidelity_paper",
    "LossResult",
    "make_cat",
    "max_alpha_for_fidelity",
    "mismatch_split",
    "Mode",
    "multimode_overlap",
    "NotFoundError",
    "Parity",
    "partial_trace",
    "simplify",
    "Spatial",
    "Spectral",
    "threshold_alpha",
    "trace",
]
