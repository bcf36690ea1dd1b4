"""Generalized toggle groups: construction, structure and certification."""

from .permgroup import (
    BlockSystem,
    Containment,
    CycleContainment,
    CycleStructure,
    GroupDescription,
    Parity,
    Permutation,
    compose,
    contains_element,
    cycle_containment,
    cycle_decomposition,
    is_primitive,
    minimal_block,
    nontrivial_block_systems,
    orbits,
    parity,
    schreier_sims,
)
from .togglecore import (
    Factorization,
    Leaf,
    Node,
    SetFamily,
    build_toggles,
    cartesian_product,
    classify_toggles,
    decompose,
    layers,
    normalize,
    toggle_group,
    try_factor,
    verify_direct_product,
)
from .generators import FamilyStream, Poset, enumerate_families, make_poset, order_ideals, parse_poset
from .certify import (
    CertResult,
    Status,
    SweepReport,
    certify_family,
    certify_product_long_cycle,
    check_lemma_suite,
    replay,
    survey_exceptionals,
    sweep,
)

__version__ = "0.1.0"
