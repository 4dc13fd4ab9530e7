"""Biunitary divisor sums, lemma verifiers and the (2,k)-multiperfect search."""

__version__ = "0.1.0"
