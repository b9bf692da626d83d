"""Classification of solid configurations in PG(7,2) and their quantum-set
labelings, and the branch search refuting [[7,1,4]]_4 and [[8,0,5]]_4.

The layers, bottom up:

* :mod:`~evenstab.classify.mat4` — packed 4x4 matrices over GF(2);
* :mod:`~evenstab.classify.configs` — canonical forms and enumeration of
  4- and 6-solid configurations in general position;
* :mod:`~evenstab.classify.polarity` — per-solid polarities, the parity
  system of quantum-set labelings, and stabiliser reconstruction;
* :mod:`~evenstab.classify.refute` — the per-branch nonexistence search;
* :mod:`~evenstab.classify.census` — persistent stage store;
* :mod:`~evenstab.classify.tasks` — end-to-end resumable pipelines.
"""

from __future__ import annotations

from .census import Census
from .configs import (
    Config,
    canonical_params,
    config_automorphisms,
    enumerate_solid_configs,
    enumerate_solid_pairs,
    is_valid_params,
)
from .polarity import (
    polarity_from_marks,
    polarity_solutions,
    reconstruct_stabiliser,
    solutions_equivalent,
    transport_labeling,
)
from .refute import refute_branch
from .tasks import run_four_solids, run_refutation, run_six_solids

__all__ = [
    "Census",
    "Config",
    "canonical_params",
    "config_automorphisms",
    "enumerate_solid_configs",
    "enumerate_solid_pairs",
    "is_valid_params",
    "polarity_from_marks",
    "polarity_solutions",
    "reconstruct_stabiliser",
    "solutions_equivalent",
    "transport_labeling",
    "refute_branch",
    "run_four_solids",
    "run_refutation",
    "run_six_solids",
]
