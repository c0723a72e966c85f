"""Exact value-set, colength and Tjurina-number computations for reduced plane curve singularities."""

from curvetau.series import BivariatePoly, TruncatedSeries, eval_poly, ZERO_TO_PRECISION

__all__ = ["BivariatePoly", "TruncatedSeries", "eval_poly", "ZERO_TO_PRECISION"]
__version__ = "0.1.0"
