"""Exact finite median geometry, measured walls and the kernel hierarchy."""

from .errors import (CapExceededError, InvalidInputError, MedianWallsError, NotMedianError,
                     VerificationError)
from .kernels import (CndVerdict, HierarchyVerdict, HypermetricVerdict, Kernel,
                      MeasureDefiniteVerdict, classify, is_cnd, is_hypermetric_bounded,
                      is_measure_definite, pullback, schoenberg_power, sqrt_kernel,
                      squared_euclidean)
from .l1embed import (CutConeInfeasible, CutDecomposition, canonical_cuts, cut_cone_decompose,
                      verify_cut_certificate, walls_decomposition, walls_to_embedding)
from .lp import FarkasCertificate, LpInstance, LpSolution, lp_feasible
from .medianization import (AdmissibleSection, MedianizedSpace, boolean_median, check_median,
                            cube_adjacency, enumerate_sections, is_admissible, medianize,
                            section_of_point, section_walls)
from .metric import (FiniteMetric, L1Points, MedianVerdict, Rectangle, ball, central_rectangle,
                     delta_median_set, gate, interval, is_between, is_geodesic, is_median,
                     is_rectangle, median, median_closure, median_set, project_pair, quotient,
                     straighten_path)
from .rational import Rat, to_rat
from .walls import (SubdivisionResult, Wall, WallSpace, extract_convex_walls, reduce_to_pair,
                    ring_complement, ring_intersect, subdivide_interval, wall_decomposition_along_geodesic,
                    wall_interval, wall_metric, wall_pdist)

__version__ = "0.1.0"

__all__ = ["AdmissibleSection", "ball", "boolean_median", "canonical_cuts", "CapExceededError",
           "central_rectangle", "check_median", "classify", "CndVerdict", "cube_adjacency",
           "cut_cone_decompose", "CutConeInfeasible", "CutDecomposition", "delta_median_set",
           "enumerate_sections", "extract_convex_walls", "FarkasCertificate", "FiniteMetric",
           "gate", "HierarchyVerdict", "HypermetricVerdict", "interval", "InvalidInputError",
           "is_admissible", "is_between", "is_cnd", "is_geodesic", "is_hypermetric_bounded",
           "is_measure_definite", "is_median", "is_rectangle", "Kernel", "L1Points",
           "lp_feasible", "LpInstance", "LpSolution", "MeasureDefiniteVerdict", "median",
           "median_closure", "median_set", "medianize", "MedianizedSpace", "MedianVerdict",
           "MedianWallsError", "NotMedianError", "project_pair", "pullback", "quotient", "Rat",
           "Rectangle", "reduce_to_pair", "ring_complement", "ring_intersect", "schoenberg_power",
           "section_of_point", "section_walls", "sqrt_kernel", "squared_euclidean",
           "straighten_path", "subdivide_interval", "SubdivisionResult", "to_rat",
           "VerificationError", "verify_cut_certificate", "Wall",
           "wall_decomposition_along_geodesic", "wall_interval", "wall_metric", "wall_pdist",
           "walls_decomposition", "walls_to_embedding", "WallSpace"]
