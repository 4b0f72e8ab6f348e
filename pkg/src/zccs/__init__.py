"""Z-complementary code sets of every even length from pseudo-Boolean functions."""
from .exactnum import CycloSum, IntPolynomial, cyclotomic_poly, is_zero_exact
from .expr import format_gbf, parse_gbf_expr
from .gbf import GBF, check_path_reduction, find_deletion_set, reverse_gbf
from .pbf import ConstructionParams, HFunction, check_h_condition
from .seqgen import CodeMatrix, CodeSet, PhaseSequence, generate_ccc, generate_zccs, plan_parameters
from .verify import check_ccc, check_optimality, check_zccs, measure_zcz
from .pmepr import check_pmepr_bound, pmepr_value

__version__ = "0.1.0"
