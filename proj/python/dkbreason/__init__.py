"""Defeasible DL-Lite_R reasoning: safety checks, answer sets, entailment, queries."""

from ._dkbreason import (
    DKB,
    DKBError,
    UnsafeKBError,
    check,
    compile,
    entails,
    is_satisfiable,
    models,
    normalize,
    oracle_justified_chis,
    query,
)

__all__ = [
    "DKB",
    "DKBError",
    "UnsafeKBError",
    "check",
    "compile",
    "entails",
    "is_satisfiable",
    "models",
    "normalize",
    "oracle_justified_chis",
    "query",
]
