"""Bigraded local cohomology of monomial ideals, computed exactly as sums of box modules."""

from .boxmod import (INF, LAU, NEG, POS, BoxModule, GradedModule, SupportState, box_dim, module_dim,
                     parse_module, shift_module, total_grading_dims)
from .cech import (MonomialIdeal, cohomology_table, degreewise_complex, local_cohomology, localize,
                   oracle_dim, special_module)
from .core import Bidegree, RingSpec, neg_support, rank, total_bidegree
from .hilbert import dimension_polynomial, eval_series_window, hilbert_series, verify_terai_hypothesis
from .regions import (Block, Region, classify_support, region_contains, verify_rigidity, verify_tameness,
                      verify_vanishing)
from .weyl import (DX, DY, ModuleElement, MulX, MulY, apply_euler, apply_operator, check_generalized_eulerian,
                   koszul_homology_dims)

__version__ = "0.1.0"

__all__ = [
    "INF", "LAU", "NEG", "POS", "BoxModule", "GradedModule", "SupportState", "box_dim", "module_dim",
    "parse_module", "shift_module", "total_grading_dims",
    "MonomialIdeal", "cohomology_table", "degreewise_complex", "local_cohomology", "localize",
    "oracle_dim", "special_module",
    "Bidegree", "RingSpec", "neg_support", "rank", "total_bidegree",
    "dimension_polynomial", "eval_series_window", "hilbert_series", "verify_terai_hypothesis",
    "Block", "Region", "classify_support", "region_contains", "verify_rigidity", "verify_tameness",
    "verify_vanishing",
    "DX", "DY", "ModuleElement", "MulX", "MulY", "apply_euler", "apply_operator", "check_generalized_eulerian",
    "koszul_homology_dims",
]
