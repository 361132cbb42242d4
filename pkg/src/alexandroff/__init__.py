"""Finite Alexandroff spaces: topology, fundamental groups, and regular coverings."""

from .complex import (
    ChainComplex,
    HomologyGroup,
    SimplicialComplex,
    chain_complex,
    homology,
    order_complex,
    smith_normal_form,
    space_homology,
)
from .covering import (
    Covering,
    GroupFunctor,
    comma_cover,
    deck_transformation,
    functor_from_tree_hom,
    is_trivial_on,
    opposite_comma_iso,
    pi0_cover,
    restriction_is_product,
    triviality_criterion,
    trivializing_tree,
    verify_covering,
)
from .group import FiniteGroup, GroupHom, coset_count, cyclic, from_table, hom_from_presentation, subgroup_generated
from .groupoid import (
    PathWord,
    Presentation,
    SpanningTree,
    Step,
    abelianization,
    basepoint_transport,
    extend_forest_to_tree,
    pi1_presentation,
    reduce_word,
    tree_path,
)
from .space import (
    FiniteSpace,
    PointMap,
    SubSpace,
    comparabilities,
    connected_components,
    from_relations,
    is_closed,
    is_continuous,
    is_open,
    kolmogorov_quotient,
    minimal_open_set,
)

__version__ = "0.1.0"
