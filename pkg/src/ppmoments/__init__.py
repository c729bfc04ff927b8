"""Exact fine-structure expansion of transition-measure moments of
Poissonized Plancherel random partitions, cross-checked by brute-force
combinatorics and Monte Carlo sampling."""

from .algebra import (
    BigRational,
    DenominatorVanishesAtOrigin,
    FineStructureForm,
    NotFineStructure,
    PolyC,
    RationalFnC,
    SeriesX,
    catalan_number,
    catalan_series,
    expand_in_x,
    fine_structure_form,
    fine_structure_to_rational,
    rat_from_str,
    rat_to_str,
    theta_support_window,
)
from .ansatz import (
    AnsatzSum,
    AnsatzTerm,
    ansatz_to_series,
    chain_shape_violations,
    euler_apply,
    f_initial,
    f_series,
    g_apply,
    g_series,
    operator_chain,
    phi,
    y0_coefficient,
)
from .oracles import (
    DuplicateEntries,
    LatticePath,
    Marking,
    MomentPolynomial,
    Partition,
    RookPlacement,
    UnbalancedPath,
    count_markings,
    count_rook_placements,
    enum_paths,
    iter_paths,
    iter_rook_placements,
    marking_counts,
    moment_polynomial,
    partitions_of,
    path_to_partition,
    rook_counts,
    rook_polynomial,
    staircase_partitions,
    word_moment,
)
from .sampler import (
    DEFAULT_SEED,
    RngState,
    TransitionMeasure,
    mc_moment,
    mc_moments,
    poisson_sample,
    rsk_shape,
    sample_pp,
    transformed_moment,
    transition_measure,
)

__version__ = "0.1.0"
