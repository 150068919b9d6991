from .hessian import det_quadratic, hessian_at_corner, hessian_entries, pair_weights
from .interval import PairCase, StableInterval, pair_case, stable_interval
from .classify import Status, Verdict, Witness, classify, classify_pair_at, verify_witness
from .scan import ScanResult, count_components, scan_simplex, simplex_grid
from .oracle import OracleResult, float_oracle, random_creases
from .split import SemistableInstance, bisect_boundary, locate_semistable, semistable_split, tangential_weights

__all__ = [
    "det_quadratic", "hessian_at_corner", "hessian_entries", "pair_weights", "PairCase", "StableInterval",
    "pair_case", "stable_interval", "Status", "Verdict", "Witness", "classify", "classify_pair_at",
    "verify_witness", "ScanResult", "count_components", "scan_simplex", "simplex_grid",
    "OracleResult", "float_oracle", "random_creases", "SemistableInstance", "bisect_boundary", "locate_semistable", "semistable_split", "tangential_weights",
]
