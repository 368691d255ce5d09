"""circfam: pairs of t-uniform set families with a circulant intersection matrix.

Constructions, verifiers, bound checkers and an exhaustive embedding search
for the banded circulant C(p, q) inside the intersection matrix of all
t-subsets of {1, ..., k}.
"""

from .boolmat import (
    BoolMatrix,
    CirculantSpec,
    bool_product,
    circulant,
    is_cyclic_variant,
    rotate_rows,
)
from .families import (
    FamilyPair,
    SetFamily,
    Subset,
    family_from_matrix_cols,
    family_from_matrix_rows,
    intersection_matrix,
    is_q_almost_cross_intersecting,
    pair_from_document,
    pair_to_document,
    read_certificate,
    write_certificate,
)
from .constructions import (
    ConstructionReport,
    circulant_factor_identity,
    construct,
    construct_blowup,
    construct_mid_p,
    construct_recursive_q2,
    construct_small_p,
)
from .analysis import (
    DecompositionAudit,
    IsolationSet,
    all_one_submatrix_check,
    audit_decomposition,
    audit_pair_decomposition,
    check_q_cap,
    frankl_kalai_cap,
    is_isolation_set,
    max_isolation_lower_bound,
)
from .search import (
    SearchLimits,
    SearchOutcome,
    SearchProblem,
    decide_embedding,
    sweep,
)

__version__ = "0.1.0"
