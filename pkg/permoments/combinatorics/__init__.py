"""Partitions, symmetric-function transition counts and plethysm"""

from .partitions import (
    Ordering,
    Partition,
    conjugate,
    dominates,
    hook_dim,
    hook_dim_alternating,
    lex_compare,
    partitions,
    partitions_in_rectangle,
    weyl_dim,
)
from .plethysm import (
    plethysm_bound,
    plethysm_oracle,
    plethysm_special,
    plethysm_two_row,
)
from .symfunc import (
    KostkaMatrix,
    RowColType,
    column_type_counts,
    ib_count,
    ib_count_typed,
    im_count,
    inverse_kostka,
    kostka,
    kostka_matrix,
    restricted_inverse_kostka,
)

__all__ = [
    'KostkaMatrix',
    'Ordering',
    'Partition',
    'RowColType',
    'column_type_counts',
    'conjugate',
    'dominates',
    'hook_dim',
    'hook_dim_alternating',
    'ib_count',
    'ib_count_typed',
    'im_count',
    'inverse_kostka',
    'kostka',
    'kostka_matrix',
    'lex_compare',
    'partitions',
    'partitions_in_rectangle',
    'plethysm_bound',
    'plethysm_oracle',
    'plethysm_special',
    'plethysm_two_row',
    'restricted_inverse_kostka',
    'weyl_dim',
]
