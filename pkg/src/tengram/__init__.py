"""tengram: tensor terms, typed sequent calculi, and grammar translations."""

from .errors import TengramError
from .judgement import Judgement, alpha_equal, canonicalize, make_judgement
from .syntax import (
    format_judgement,
    format_term,
    format_type,
    parse_judgement,
    parse_term,
    parse_type,
)
from .term import TensorTerm, TermExpr, congruent, multiply, normalize
from .types import dual

__all__ = [
    "TengramError",
    "Judgement",
    "alpha_equal",
    "canonicalize",
    "make_judgement",
    "format_judgement",
    "format_term",
    "format_type",
    "parse_judgement",
    "parse_term",
    "parse_type",
    "TensorTerm",
    "TermExpr",
    "congruent",
    "multiply",
    "normalize",
    "dual",
]
