"""Exact-arithmetic toolkit for pairs of associative products.

Core layers:
  linalg     exact scalars, matrices, canonical subspaces, linear solving
  algebra    structure-constant products and their structural subspaces
  compat     compatibility checkers, linear solvers, certification
  builders   band/matrix/path/sum algebras, mutations, worked examples
  freealg    free non-unital (non)commutative polynomial engines
  cli        the `bicompat` command-line frontend
"""

from .algebra import (
    Algebra,
    AlgebraError,
    Endomorphism,
    FileFormatError,
    NonAssociativeError,
    Product,
    algebra_from_json,
    algebra_to_json,
    annihilator,
    apply_endo,
    associativity_witness,
    basis_vector,
    center,
    centralizer,
    centroid,
    find_units,
    is_associative,
    is_idempotent_algebra,
    multiply,
    product_from_json,
    product_to_json,
    transport_product,
)
from .builders import (
    BandSpec,
    CyclicQuiverError,
    NotInAnnihilatorError,
    NotInCentroidError,
    QuiverSpec,
    band_id_matching,
    band_swap_matching,
    centroid_product,
    centroid_product_span,
    direct_sum,
    example_3dim,
    example_6dim,
    example_band22,
    matrix_algebra,
    mutation,
    mutation_span,
    path_algebra,
    rectangular_band_algebra,
    zero_algebra,
)
from .compat import (
    AssociativityCertificate,
    CompatReport,
    InternalContradictionError,
    Kind,
    ProductSpace,
    all_members_associative,
    check,
    check_compatible_dual,
    remark13_audit,
    solve_linear,
    sum_product,
)
from .freealg import (
    CPoly,
    NCPoly,
    StarMap,
    cpoly_multi_var_product,
    cpoly_single_var_product,
    decompose_left,
    decompose_right,
    extend_star,
    nc_add,
    nc_degree,
    nc_mul,
    star_condition,
    truncated_centroid_dim,
    verify_id_matching_truncated,
)
from .linalg import (
    GF,
    QQ,
    AffineSubspace,
    FieldMismatchError,
    LinalgError,
    Matrix,
    Scalar,
    ShapeMismatchError,
    Subspace,
    kernel,
    rref,
    solve,
    subspace_intersect,
    subspace_member,
    subspace_sum,
)
