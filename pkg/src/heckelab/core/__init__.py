from .fp import FpMatrix, Subspace, all_subspaces, enumerate_subspaces, rank_rref, rref_rows
from .laurent import ONE, V, ZERO, LaurentPoly, gauss_binomial, gauss_binomial_count, laurent_arith, qint
from .scalar import ScalarExt

__all__ = [
    "FpMatrix",
    "Subspace",
    "all_subspaces",
    "enumerate_subspaces",
    "rank_rref",
    "rref_rows",
    "LaurentPoly",
    "ScalarExt",
    "V",
    "ONE",
    "ZERO",
    "gauss_binomial",
    "gauss_binomial_count",
    "laurent_arith",
    "qint",
]
