"""Hyper-bent Boolean functions, Kloosterman sums and Dickson polynomials over GF(2^k)."""

from ._core import (
    Family,
    Field,
    HbfError,
    dickson_eval,
    dickson_exponents,
    dickson_preimage_count,
    kloosterman,
    quintic_pattern,
    rn_solve,
    run_criterion,
    subfield_sums,
    sums_record,
    weil_q,
)

__all__ = [
    "Family",
    "Field",
    "HbfError",
    "dickson_eval",
    "dickson_exponents",
    "dickson_preimage_count",
    "kloosterman",
    "quintic_pattern",
    "rn_solve",
    "run_criterion",
    "subfield_sums",
    "sums_record",
    "weil_q",
]
