"""Template-restricted termination proofs for term rewrite systems."""

from ._core import (
    TermcheckError,
    format_trs,
    normalize_strategy,
    normalize_template,
    parse_trs,
    prove,
    recheck_strategy,
)

__all__ = [
    "TermcheckError",
    "format_trs",
    "normalize_strategy",
    "normalize_template",
    "parse_trs",
    "prove",
    "recheck_strategy",
]
