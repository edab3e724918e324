"""factforest: factorisation forests on finite words.

Finite semigroups with full Green's-relations analysis, constructive ramseyan
and prefix-deterministic forward-ramseyan splits, factorisation trees,
star-restricted regular expressions for morphism preimages, and exact
compaction of additive labellings into per-position records, all paired with
brute-force oracles at desk scale.
"""

from ._kernels import IMPL_NAME as kernel_impl
from .compaction import (
    COMPLETE,
    DETERMINISTIC,
    CompactedWord,
    compact_complete,
    compact_det,
    complete_bit_budget,
    decode_complete,
    decode_det,
    det_bit_budget,
)
from .det_splits import (
    StreamingSplitBuilder,
    det_ramseyan_split,
    det_split_dclass,
    det_split_lclass,
)
from .forest import (
    FactTree,
    Leaf,
    Node,
    factorisation_tree,
    is_ramseyan_tree,
    split_to_tree,
    tree_height,
    tree_to_split,
    tree_yield,
)
from .labellings import (
    ALL_CUTS,
    INTERIOR_CUTS,
    AdditiveLabelling,
    CheckResult,
    Split,
    is_forward_ramseyan,
    is_ramseyan,
    k_neighbour_classes,
    labelling_from_word,
)
from .rexp import (
    EMPTY,
    RExpr,
    atom,
    build_ramseyan_expr,
    concat,
    expr_stats,
    image,
    is_phi_ramseyan,
    matches,
    parse,
    star,
    to_string,
    union,
)
from .semigroups import (
    FiniteSemigroup,
    GreenData,
    MonoidExtension,
    Morphism,
    adjoin_identity,
    eval_word,
    green,
    idempotents,
    lclass_to_group_projection,
    make_morphism,
    make_semigroup,
)
from .splits import ramseyan_split, split_dclosed, split_group_h, split_regular_d

__version__ = "0.1.0"
