"""Exact age computations for permutation quotients of projective space."""

from .age import (
    AgeReport,
    Verdict,
    VerdictKind,
    WeightVector,
    age_lower_bound,
    age_report,
    age_via_spectrum,
    chart_age,
    chart_ages,
    lemma_shortcut,
    min_age,
    quasi_reflection_charts,
    reid_tai_verdict,
    weights_of,
)
from .endo import EndoCertificate, MonomialMap, certificate, commutes, endo_degree, power_map
from .groups import (
    CapExceeded,
    MultiplicationTable,
    PermutationGroup,
    close_generators,
    cyclic,
    dihedral,
    direct_product,
    element_iter,
    heisenberg_mod_p,
    named_group,
    regular_representation,
    symmetric,
)
from .perm import (
    CycleType,
    ParseError,
    Permutation,
    compose,
    cycle_decomposition,
    cycle_type,
    format_cycles,
    inverse,
    is_forbidden_type,
    order,
    parse_cycles,
)

__version__ = "0.1.0"
