"""Exact arithmetic for quadratic Pfister forms, symbol p-algebras and
logarithmic differential forms in positive characteristic, with decision
tooling for factor and linkage questions over finite fields and
rational-function models of iterated Laurent series fields."""

from .exactfield import (
    GF,
    FieldElement,
    PolyRing,
    Poly,
    RationalFunctionField,
    RatFunc,
    field_inverse,
    frobenius,
    ratfunc_normalize,
    ZeroInverse,
    DivisionByZero,
)
from .diffforms import (
    DiffForm,
    SymbolExpr,
    TrivialityCertificate,
    d,
    dlog,
    wedge,
    artin_schreier,
    check_certificate,
    verify_triviality_chain,
    ChainReport,
)
from .symbolalg import (
    SymbolAlgebra,
    AlgElement,
    alg_mul,
    alg_pth_power_minus_self,
    verify_common_slot,
    quaternion_norm_form,
    CommonSlotReport,
)
from .quadform import (
    QForm,
    BForm,
    PfisterQuad,
    PfisterBilin,
    WittDecomposition,
    eval_quadratic,
    polar_form,
    tensor_bq,
    q_of_bilinear,
    witt_decompose,
    arf_invariant,
    is_quad_factor,
    FiniteModel,
    Verdict,
    TRUE,
    FALSE,
    INCONCLUSIVE,
)
from .laurent import (
    LaurentCtx,
    MonomialSlot,
    LaurentModel,
    top_valuation,
    residue_split,
    decide_hyperbolic,
    witt_index_laurent,
    HYPERBOLIC,
    ANISOTROPIC,
)
from .linkage import (
    SlotFamily,
    LinkageReport,
    is_bilin_factor,
    linkage_report,
    enumerate_factors,
    check_linkage_descent,
    find_common_quad_slot,
)

__version__ = "0.1.0"
