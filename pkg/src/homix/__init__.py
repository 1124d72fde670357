"""Integral homology of clique complexes, Hom-graph search, and the
3-colouring to non-flat colouring reduction for reflexive graphs."""

from .errors import (
    Acyclic,
    BudgetExceeded,
    ClaimViolation,
    HomixError,
    ImproperColouring,
    InvalidGraph,
    InvalidWalk,
    NoPath,
    NotHomomorphism,
    NotNonFlat,
    TargetUnsuitable,
    Unreachable,
    UnsatWithinBudget,
)
from .gadgets import alpha_map, beta_map, build_sum_gadget, find_ell, gamma_colouring
from .graph import (
    ClosedWalk,
    Graph,
    IdentificationResult,
    VertexMap,
    add_cone,
    disjoint_union,
    distance,
    girth_cycle,
    identify_vertices,
    is_triangle_free,
    make_complete,
    make_cycle,
    make_path,
    tensor_product,
)
from .homology import (
    build_chain_complex,
    cycle_class,
    h1_presentation,
    image_class,
    is_flat,
    nt_basis,
)
from .homsearch import (
    count_homs,
    enumerate_homs,
    hom_adjacent,
    mix_bruteforce,
    reconfig_path,
    sample_homs,
)
from .kernels import BACKEND
from .pi import PiState, pi_contractible_bounded, pi_neighbours
from .reduction import build_Ga, build_Gstar, extract_colouring, verify_nt_basis, witness_hom
from .snf import smith_normal_form
from .surgery import verify_surgery_lemmas

pi_neighbors = pi_neighbours

__version__ = "0.1.0"
