"""Exact arithmetic and conjugacy decision for Houghton's groups H_n."""

from .core import (
    HoughtonElement,
    InvalidElementError,
    Point,
    Word,
    WordError,
    apply,
    compose,
    conjugate_element,
    deserialize,
    equals,
    evaluate,
    generator,
    generator_ids,
    identity,
    inverse,
    serialize,
)
from .orbits import (
    CycleDecomposition,
    EndsPartition,
    InfiniteOrbit,
    cycle_decomposition,
    cycle_type,
    ends_partition,
    infinite_orbit_count,
    sym_conjugate,
)
from .conjugacy import (
    BoundData,
    ConjugacyOutcome,
    centralizer_element,
    compute_bounds,
    conjugate,
    conjugate_mod_zero,
    construct_translation_element,
    coset_reduce,
    fsym_conjugate,
    verify,
)
from .oracle import SearchBudget, brute_force_conjugator, random_element, random_word, simulate_word

__all__ = [
    "HoughtonElement",
    "InvalidElementError",
    "Point",
    "Word",
    "WordError",
    "apply",
    "compose",
    "conjugate_element",
    "deserialize",
    "equals",
    "evaluate",
    "generator",
    "generator_ids",
    "identity",
    "inverse",
    "serialize",
    "CycleDecomposition",
    "EndsPartition",
    "InfiniteOrbit",
    "cycle_decomposition",
    "cycle_type",
    "ends_partition",
    "infinite_orbit_count",
    "sym_conjugate",
    "BoundData",
    "ConjugacyOutcome",
    "centralizer_element",
    "compute_bounds",
    "conjugate",
    "conjugate_mod_zero",
    "construct_translation_element",
    "coset_reduce",
    "fsym_conjugate",
    "verify",
    "SearchBudget",
    "brute_force_conjugator",
    "random_element",
    "random_word",
    "simulate_word",
]
