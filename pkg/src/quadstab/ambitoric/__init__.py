from .boundary import (ENDPOINTS, AmbitoricData, FormalSolution, PositivityCheck, check_positive, extremal_weight,
                       pi_q_pairing, residuals, solve_boundary_system, tune_weight)
from .hfield import (BoxEdge, ExtremalCheck, HField, build_H, edge_functions, expr_tree, extract_edge_weights,
                     moment_affine, moment_map, scalar_S, torus_basis, verify_extremal)
from .forward import (QuadratureError, coordinate_crease, crease_functional, crease_integral, forward_polygon,
                      forward_polytope, ibp_check, induced_zeta)
from .asymptotics import Cone, CuspThreeHalves, PoincareType, SingularityType, classify_asymptotics, root_multiplicity
from .legendre import (IncompatibleWeights, TrapeziumData, TrapeziumSolution, legendre_H,
                       legendre_trapezium_solve)

__all__ = [
    "ENDPOINTS", "AmbitoricData", "FormalSolution", "PositivityCheck", "check_positive", "extremal_weight",
    "pi_q_pairing", "residuals", "solve_boundary_system", "tune_weight",
    "BoxEdge", "ExtremalCheck", "HField", "build_H", "edge_functions", "expr_tree", "extract_edge_weights",
    "moment_affine", "moment_map", "scalar_S", "torus_basis", "verify_extremal",
    "QuadratureError", "coordinate_crease", "crease_functional", "crease_integral", "forward_polygon",
    "forward_polytope", "ibp_check", "induced_zeta",
    "Cone", "CuspThreeHalves", "PoincareType", "SingularityType", "classify_asymptotics", "root_multiplicity",
    "IncompatibleWeights", "TrapeziumData", "TrapeziumSolution", "legendre_H", "legendre_trapezium_solve",
]
