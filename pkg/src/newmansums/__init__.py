"""Exact generalized Newman digit sums, interval recurrences and conjecture scans."""

from newmansums.core import (
    GelfondCounts,
    Interval,
    SumSpec,
    digit_sum,
    gelfond_counts,
    newman_sum_interval_naive,
    newman_sum_naive,
    residue_count,
    sign,
)
from newmansums.transfer import (
    TransferMatrix,
    WeightTables,
    build_weight_tables,
    even_modulus_reduce,
    newman_sum_fast,
    transfer_matrix,
    vector_sums,
)

__version__ = "0.1.0"

__all__ = [
    "GelfondCounts",
    "Interval",
    "SumSpec",
    "TransferMatrix",
    "WeightTables",
    "build_weight_tables",
    "digit_sum",
    "even_modulus_reduce",
    "gelfond_counts",
    "newman_sum_fast",
    "newman_sum_interval_naive",
    "newman_sum_naive",
    "residue_count",
    "sign",
    "transfer_matrix",
    "vector_sums",
]
