"""Certified free subgroups and growth estimates for isometry groups of the
hyperbolic plane, with a tree model as the exact reference space."""

from .config import Config, default_config, load_config
from .criteria import (FreePairCertificate, FreenessRejection,
                       HyperbolicityWitness, freeness_check,
                       hyperbolic_witness_check, product_hyperbolic_check,
                       recheck_certificate)
from .growth import (BallCensus, GrowthEstimate, enumerate_ball,
                     free_pair_growth_bound, growth_estimate)
from .halfplane import (HALF_PLANE, FramePoint, H2Path, HalfPlane, Horoball,
                        PinchingConstants, ambient_distance_floor, busemann,
                        geodesic, h2_distance, horoball_contains, line,
                        neutered_path_bound_check, ray)
from .isometry import (Axis, GeneratingSet, Isometry, IsometryClass, apply,
                       axis, classify, compose, displacement, inverse, power,
                       set_size, translation_length)
from .metric import (MetricContext, Triangle, biinfinite_fellow_travel_defect,
                     fellow_travel_defect, fellow_travel_time,
                     four_point_defect, gromov_product, internal_vertices,
                     nearby_pentagon_check, obtuse_defect, polygon_check,
                     thinness_defect)
from .search import (DescentTrace, LowDisplacementPoint, NotFound,
                     SeparationEstimate, ShortHyperbolic, descent,
                     separation_estimate, short_hyperbolic,
                     translation_spectrum, uniform_free_pair)
from .tree import Tree, TreePath, tree_distance, tree_point

__version__ = "0.1.0"
