"""Algebraic construction of finite-volume hyperbolic manifolds from Coxeter groups.

The pipeline: parse and classify a Coxeter symbol, check hyperbolicity and
simplex cofiniteness through its Gram matrix, list the prime-order torsion of
its maximal finite standard subgroups over explicit root systems, verify or
search for permutation modules avoiding that torsion, and compute the exact
Euler characteristic and volume of the resulting quotient manifold.
"""

__version__ = "0.1.0"

from .symbol import CoxeterSymbol, parse_symbol, emit_symbol, induced_subsymbol, make_symbol, SymbolError
from .classify import (
    IsoType,
    iso,
    classify,
    canonical_symbol,
    group_order,
    spherical_poset,
    lcm_finite_orders,
)
from .gram import gram_matrix, signature, is_hyperbolic, is_cofinite_simplex, GramError
from .roots import (
    root_system,
    reflect,
    word_to_element,
    element_order,
    fixed_roots,
    express_reflection_word,
    reflection_word,
)
from .torsion import (
    prime_class_diagrams,
    label_diagram,
    diagram_element,
    h_type_representatives,
    dihedral_representatives,
    reducible_representatives,
    representatives_for_type,
    brute_force_classes,
    inventory,
    TorsionInventory,
)
from .euler import (
    euler_characteristic,
    sigma_psi,
    serre_sum,
    gauss_bonnet_constant,
    manifold_invariants,
    SymbolicVolume,
)
from .action import (
    PermutationAction,
    parse_action,
    emit_action,
    verify_action,
    orbits,
    is_transitive,
    tensor,
    tensor_orbits,
    avoids,
    is_torsion_free,
    is_orientable,
    block_systems,
    check_divisibility,
    certify,
    ActionError,
)
from .search import SearchConfig, SearchResult, search_torsion_free
