"""operad-forge: exact symbolic computation with graded operads."""

__version__ = "0.1.0"
