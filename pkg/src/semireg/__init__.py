"""Block systems of transitive groups with an abelian semiregular subgroup.

The package computes spectra of digraphs through the character matrices
of their symbols, turns eigenspaces into invariant partitions, and applies
this to bi-Cayley digraphs and generalized Petersen graphs.
"""

from .abelian import (
    AbelianGroup,
    Character,
    RootOfUnity,
    Subgroup,
    char_eval,
    char_sum,
    generates_dual,
    make_subgroup,
    perp_of_characters,
    perp_of_subgroup,
    subgroup_generated_by_chars,
)
from .bicayley import (
    BiSymbol,
    ElementKind,
    classify_element,
    gp_graph,
    has_mixer,
    has_swap,
    mn_sets,
    thm_mn_check,
)
from .digraph import (
    Digraph,
    automorphism_group_oracle,
    cayley_digraph,
    is_edge_transitive_oracle,
    is_vertex_transitive_oracle,
    orbital_closure,
)
from .errors import *  # noqa: F401,F403
from .gp import gp_character_filter, gp_classify, gp_cover_lift
from .partitions import (
    GTriple,
    build_partition,
    check_primitive_theorem,
    classify_extreme,
    delta_lambda_chi,
    rebase,
    recover_g_triple,
    spectral_block_system,
)
from .perm import (
    Partition,
    Perm,
    PermGroup,
    all_block_systems_oracle,
    check_refinement,
    enumerate_group,
    is_invariant_partition,
    is_primitive,
    is_semiregular,
    kernel_of_partition_action,
    minimal_block,
)
from .spectral import char_matrix, eigenspace_V, eigenspace_W, spectrum
from .symbol import (
    SemiregularFrame,
    Symbol,
    assemble_adjacency,
    build_frame,
    digraph_from_symbol,
    extract_symbol,
)

__version__ = "0.1.0"
