"""Linear resolutions of high powers of equigenerated ideals via Rees algebras."""

from .groebner import (
    GroebnerBasis,
    IdealGens,
    eliminate,
    ideal_power,
    initial_ideal,
    normal_form,
    reduced_groebner,
)
from .hilbert import hs_bigraded, hs_quotient
from .homology import betti_table, regularity_mon
from .polycore import MonomialOrder, Polynomial, RingSpec, bidegree, compare
from .rees import criterion, rees_presentation, split_linear, strand_of_free, xreg_bound
from .transform import BiTransform, SearchConfig, apply_bitransform, search_transform

__all__ = [
    "BiTransform", "GroebnerBasis", "IdealGens", "MonomialOrder", "Polynomial", "RingSpec",
    "SearchConfig", "apply_bitransform", "betti_table", "bidegree", "compare", "criterion",
    "eliminate", "hs_bigraded", "hs_quotient", "ideal_power", "initial_ideal", "normal_form",
    "reduced_groebner", "rees_presentation", "regularity_mon", "search_transform",
    "split_linear", "strand_of_free", "xreg_bound",
]
__version__ = "0.1.0"
