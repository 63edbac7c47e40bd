"""hypred: reduced polygons in the hyperbolic plane.

Construction, validation and measurement of ordinary reduced polygons
(odd-gons whose vertices sit at distance w from their opposite sides), the
closed-form area machinery behind them, and numerical verification of the
extremal properties of the regular ones.
"""

from ._backend import backend_name
from .errors import HypredError
from .geometry import (BASE_POINT, GeodesicSegment, HLine, HPoint, Isometry,
                       IsometryClass, angle, classify, distance,
                       foot_of_perpendicular, from_poincare, line_through,
                       point_line_distance, rotation_about, segment_intersection,
                       to_poincare, translation_along)
from .kernels import (ButterflyScalars, KernelParams, alpha_bisection,
                      alpha_of_crossing, alpha_of_leg, circle_limit_area,
                      diameter_bound, kernel_params, leg_tanh,
                      quarter_disk_area, regular_ngon_area)
from .polygon import (ConvexPolygon, SupportingLineParam, WidthProfile,
                      diameter, gauss_bonnet_area, make_polygon, thickness,
                      triangulation_area, width_profile, width_wrt)
from .reduced import (ButterflyData, CrossingAngles, OrdinaryReducedPolygon,
                      area_from_crossing_angles, closure_isometry,
                      covering_check, extract_butterflies,
                      regular_reduced_ngon, sample_ordinary_reduced, validate)
from .extremal import (MonotonicityTable, OptimizationResult, maximize_area,
                       monotonicity_table)

__version__ = "0.1.0"

__all__ = [
    "BASE_POINT", "ButterflyData", "ButterflyScalars", "ConvexPolygon",
    "CrossingAngles", "GeodesicSegment", "HLine", "HPoint", "HypredError",
    "Isometry", "IsometryClass", "KernelParams", "MonotonicityTable",
    "OptimizationResult", "OrdinaryReducedPolygon", "SupportingLineParam",
    "WidthProfile", "alpha_bisection", "alpha_of_crossing", "alpha_of_leg",
    "angle", "area_from_crossing_angles", "backend_name", "circle_limit_area",
    "classify", "closure_isometry", "covering_check", "diameter",
    "diameter_bound", "distance", "extract_butterflies",
    "foot_of_perpendicular", "from_poincare", "gauss_bonnet_area",
    "kernel_params", "leg_tanh", "line_through", "make_polygon",
    "maximize_area", "monotonicity_table", "point_line_distance",
    "quarter_disk_area", "regular_ngon_area", "regular_reduced_ngon",
    "rotation_about", "sample_ordinary_reduced", "segment_intersection",
    "thickness", "to_poincare", "translation_along", "triangulation_area",
    "validate", "width_profile", "width_wrt", "__version__",
]
