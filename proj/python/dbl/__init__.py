"""Exact finite-stage computations with locally constant functions on finite spaces."""

from ._dbl import (
    DblError,
    Ring,
    Space,
    basis,
    cech,
    enumerate_equivalence,
    equivalence,
    mahler_coeffs,
    mahler_pairing,
    run_criterion,
    sw_certificate,
)

__all__ = [
    "DblError",
    "Ring",
    "Space",
    "basis",
    "cech",
    "enumerate_equivalence",
    "equivalence",
    "mahler_coeffs",
    "mahler_pairing",
    "run_criterion",
    "sw_certificate",
]
