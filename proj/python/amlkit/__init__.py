"""Aristotelic modal logic workbench: parsing, proof checking, bounded proof
search and finite countermodels.

Formulas and proofs cross the boundary as text in the command-line syntax;
models as .model.json text.
"""

from ._amlkit import (
    ParseError,
    canonical,
    canonical_term,
    check,
    classify,
    evaluate,
    normalize,
    prove,
    refute,
)

__all__ = [
    "ParseError",
    "canonical",
    "canonical_term",
    "check",
    "classify",
    "evaluate",
    "normalize",
    "prove",
    "refute",
]
