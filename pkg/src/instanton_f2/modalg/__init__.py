"""Finitely generated modules over F2[x] and the linear algebra around them."""

from .blockmap import (
    BLOCK_NAMES,
    BlockFacts,
    BlockTriangularMap,
    Fact,
    block_map_facts,
    gr_eps_from_q3,
    graded_part,
)
from .module import (
    Decomposition,
    FgModule,
    FilteredSpace,
    PsiIso,
    SESDims,
    Summand,
    TorsionBasis,
    decompose,
    gf2_rank_dense,
    present,
    psi_apply,
    psi_iso,
    ses_dims,
    torsion_basis,
    v_space,
    x_action_matrix,
    x_order,
)
from .poly2 import ONE, X, ZERO, Poly2, gcd, xgcd
from .snf import (
    as_matrix,
    det,
    diag,
    diagonal,
    identity,
    is_diagonal,
    is_divisibility_chain,
    matmul,
    snf,
    snf_with_inverse,
)

__all__ = [
    "BLOCK_NAMES",
    "BlockFacts",
    "BlockTriangularMap",
    "Decomposition",
    "Fact",
    "FgModule",
    "FilteredSpace",
    "ONE",
    "Poly2",
    "PsiIso",
    "SESDims",
    "Summand",
    "TorsionBasis",
    "X",
    "ZERO",
    "as_matrix",
    "block_map_facts",
    "decompose",
    "det",
    "diag",
    "diagonal",
    "gcd",
    "gf2_rank_dense",
    "gr_eps_from_q3",
    "graded_part",
    "identity",
    "is_diagonal",
    "is_divisibility_chain",
    "matmul",
    "present",
    "psi_apply",
    "psi_iso",
    "ses_dims",
    "snf",
    "snf_with_inverse",
    "torsion_basis",
    "v_space",
    "x_action_matrix",
    "x_order",
    "xgcd",
]
