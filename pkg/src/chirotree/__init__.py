"""Chirotope trees: bowtie decomposition, canonical trees, triangulation counting."""
from .bowtie import (
    BowtieFactors,
    ModularBipartition,
    antipodal_elements,
    bowtie,
    factorize,
    find_nontrivial_module,
    is_decomposable,
    is_module,
    is_quasi_module,
    quasi_modules,
)
from .canonical import canonical_tree, canonicalize, is_canonical, rewrite_once
from .chirotope import (
    Chirotope,
    SignFunction,
    caratheodory_witness,
    extreme_elements,
    hull_cycle,
    is_convex,
    is_extreme,
    radial_order,
    relabel,
    restrict,
    segments_cross,
    sign,
    validate_axioms,
)
from .errors import *  # noqa: F401,F403
from .polynomial import Poly
from .realization import PointConfig, chirotope_of_points, realize_bowtie, realize_tree
from .tree import (
    ChirotopeTree,
    Edge,
    contract_edge,
    eval_chi_T,
    expand,
    fingerprint,
    median_node,
    representative,
    split_at_edge,
    split_node,
    trees_isomorphic,
    validate_tree,
)
from .triangulations import (
    FullTriangulationPolynomial,
    R_poly,
    Triangulation,
    chain_count,
    chain_degree_poly,
    chain_tree,
    count_bowtie,
    count_noncrossing_matchings,
    count_tree,
    enumerate_triangulations,
    full_polynomial,
    merge_degree_polynomial,
    merge_leaf,
    project_triangulation,
)

__version__ = "0.1.0"
