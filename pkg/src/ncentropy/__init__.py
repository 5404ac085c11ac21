"""Finite-dimensional quantum probability toolkit.

Block algebras and their states, unital *-homomorphisms in canonical
multiplicity/unitary form, entropy-change functors, disintegrations, and
seeded verification suites for the entropy inequalities they satisfy.
"""

from .algebra import AlgebraElement, AlgebraShape, identity, is_positive, is_projection
from .disintegration import (
    NoDisintegration,
    QuantumDisintegrationData,
    StochasticMap,
    classical_disintegrate,
    disintegration_entropy,
    quantum_disintegrate,
)
from .entropy import entropy_change, holevo_change, k_functor, segal, shannon, von_neumann
from .harness import InstanceFamily, SuiteReport, generate_instance, run_all, run_suite
from .linalg import (
    DEFAULT_TOL,
    Seed,
    eigh,
    partial_trace_left,
    partial_trace_right,
    psd_log,
    sample_density,
    sample_simplex,
    sample_unitary,
    tensor,
)
from .morphism import (
    Morphism,
    apply,
    compose,
    external_sum_morphism,
    initial,
    identity_morphism,
    is_isomorphism,
    measurement_morphism,
    preserves_orthogonality,
    pullback,
    summand_projection,
)
from .state import (
    State,
    are_orthogonal,
    block_pure_state,
    classical_state,
    convex_combine,
    evaluate,
    external_sum_state,
    is_pure,
    make_state,
    support,
)

__all__ = [
    "AlgebraElement",
    "AlgebraShape",
    "DEFAULT_TOL",
    "InstanceFamily",
    "Morphism",
    "NoDisintegration",
    "QuantumDisintegrationData",
    "Seed",
    "State",
    "StochasticMap",
    "SuiteReport",
    "apply",
    "are_orthogonal",
    "block_pure_state",
    "classical_disintegrate",
    "classical_state",
    "compose",
    "convex_combine",
    "disintegration_entropy",
    "eigh",
    "entropy_change",
    "evaluate",
    "external_sum_morphism",
    "external_sum_state",
    "generate_instance",
    "holevo_change",
    "identity",
    "identity_morphism",
    "initial",
    "is_isomorphism",
    "is_positive",
    "is_projection",
    "is_pure",
    "k_functor",
    "make_state",
    "measurement_morphism",
    "partial_trace_left",
    "partial_trace_right",
    "preserves_orthogonality",
    "psd_log",
    "pullback",
    "quantum_disintegrate",
    "run_all",
    "run_suite",
    "sample_density",
    "sample_simplex",
    "sample_unitary",
    "segal",
    "shannon",
    "summand_projection",
    "support",
    "tensor",
    "von_neumann",
]
