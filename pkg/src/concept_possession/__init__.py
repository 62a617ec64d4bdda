"""Compositional substrates, budgeted hypothesis spaces, and graded concept possession."""

from .terms import Basis, Symbol, Term, expand_chunks, parse_term, render_term, term_size
from .possession import InfoQuantity, degree_of_possession, log_factorial

__version__ = "0.1.0"
