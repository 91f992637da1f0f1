"""Optimal polynomial approximants in weighted Hardy spaces and the bidisk."""

from .bidisk import (
    HARDY,
    MonomialOrdering,
    Series2D,
    ShanksWitness,
    Space2D,
    builtin_shanks_f,
    embed_diagonal,
    inner_product_2d,
    opa_2d,
    scan_dirichlet_alpha,
    shanks_witness,
    taylor_counterexample,
)
from .exact import PI, Interval, radical_enclosure
from .univar import (
    Series1D,
    coeffs_extremal,
    extremal_ratio,
    inner_product_1d,
    jacobi_truncated_norm,
    opa1_zero,
    opa_1d,
)
from .weights import WeightSequence, diag_weight, weight_ratio

__version__ = "0.1.0"
