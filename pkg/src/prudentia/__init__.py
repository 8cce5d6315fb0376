"""Exact tools for case-based plausibility rankings.

Similarity and pairwise matrices, axiom checks, hyperplane-arrangement
region counts, the Jacobi prudence test and an arbitrage-free bond
pricing application.
"""

from .arrangements import (
    Ambient,
    Arrangement,
    Chamber,
    Hyperplane,
    IntersectionPoset,
    build_arrangement,
    count_regions_mobius,
    count_regions_rank,
    enumerate_chambers,
    find_polar_pair,
    intersection_poset,
    mobius,
)
from .axioms import (
    AxiomReport,
    Verdict,
    check_2_diversity,
    check_archimedean,
    check_combination,
    check_completeness,
    check_conditional_2_diversity,
    check_k_diversity,
    check_partial_3_diversity,
    check_transitivity,
    default_sample,
)
from .core import (
    FREE_CASE,
    CaseTypeSet,
    Database,
    EventualitySet,
    Ranking,
    RankingFamily,
    canonicalize_database,
    car_list,
    parse_car,
)
from .engine import (
    Order,
    PairwiseMatrix,
    SimilarityMatrix,
    eval_pairwise,
    pairwise_from_global,
    rank_all,
    rank_all_pairwise,
    rank_pair,
)
from .finance import (
    ArbitrageFinding,
    YieldCurveModel,
    bond_price,
    check_no_arbitrage,
    detect_negative_yields,
    implied_yield,
    ranking_by_price,
)
from .representation import (
    LabeledObservation,
    PrudenceVerdict,
    assemble_global_matrix,
    build_pairwise_representation,
    check_rows_gsii,
    check_rows_main,
    check_uniqueness_equivalence,
    complexity_table,
    fit_separating_hyperplane,
    make_testworthy_extension,
    solve_jacobi_scaling,
    test_prudence,
)

__version__ = "0.1.0"
