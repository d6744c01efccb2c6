"""Bicomplex linear algebra and the spectral theorem for self-adjoint operators.

Every bicomplex object splits along the idempotents ``e1 = (1+k)/2`` and
``e2 = (1-k)/2`` into two complex objects.  This package does the
arithmetic in that split, diagonalizes self-adjoint bicomplex matrices, and
builds the atomic spectral measures and unitaries that turn a cyclic
self-adjoint operator into multiplication by the coordinate.
"""
__version__ = "0.1.0"

from ._config import BACKEND
from .errors import (
    BicomplexError,
    DimensionMismatch,
    GridMismatch,
    NoConvergence,
    NotCyclic,
    NotHermitian,
    NotInvertible,
    NotSelfAdjoint,
    ParseError,
    ZeroComponent,
)
from .hilbert import (
    BCVector,
    ComponentVector,
    OrthonormalSet,
    inner,
    norm_hyperbolic,
    norm_real,
    orthonormalize_componentwise,
    vec_join,
    vec_split,
)
from .measure import (
    AtomicMeasurePair,
    BCFunctionSamples,
    L2Representation,
    MultiplicationOperator,
    cyclic_measure,
    decompose_function,
    join_function,
    l2_inner,
    l2_norm,
    sample_function,
    unitary_to_l2,
)
from .operators import (
    BCMatrix,
    CyclicBlock,
    CyclicDecomposition,
    SpectralDecomposition,
    adjoint,
    component_krylov_rank,
    cyclic_direct_sum,
    find_cyclic_vector,
    hermitian_eig,
    is_cyclic,
    is_self_adjoint,
    krylov_matrix,
    krylov_ranks,
    op_join,
    op_split,
    spectral_decompose,
)
from .scalars import (
    E1,
    E2,
    I,
    J,
    K,
    ONE,
    ZERO,
    Bicomplex,
    Hyperbolic,
    IdempotentPair,
    Order,
    conj_bar,
    conj_plus,
    conj_star,
    hyperbolic_compare,
    hyperbolic_is_nonneg,
    idempotent_join,
    idempotent_split,
    invert,
    is_zero_divisor,
    modulus,
)
