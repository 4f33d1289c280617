"""Exact tropical hypersurfaces, stable intersections, mixed volumes and
tropical degree bounds."""

__version__ = "0.1.0"

from .errors import *  # noqa: F401,F403
from .lattice import (IntegerMatrix, SnfResult, content, determinant, hermite_normal_form,
                      integer_kernel, lattice_index, lattice_length, primitive, rank,
                      saturate, select_independent_subsystem, smith_normal_form)
from .polytope import (LatticePolytope, convex_hull, l1_diameter, minkowski_sum,
                       mixed_volume, mixed_volume_ie, mixed_volume_interp,
                       normalized_volume, standard_simplex, volume)
from .tropical import (Facet, HCell, HypersurfaceComplex, LinkCone, LinkFan,
                       SubdivisionCell, TropicalPolynomial, evaluate, hypersurface,
                       link_at, on_hypersurface, outgoing_direction, regular_subdivision,
                       tropical_product)
from .intersect import (IntersectionPoint, LocalBound, MixedCell, bernstein_total,
                        bezout_bound, bezout_table, local_multiplicity_bound_check,
                        local_normal, mixed_cells, perturbation_oracle_2d,
                        stable_intersection_2d, total_multiplicity, transverse_multiplicity)
from .degree import (DegreeReport, TropicalLine, empirical_degree,
                     geodesic_monotonicity_check, line_hypersurface_intersections,
                     random_tropical_line, transverse_count)
from .systems import ParseError, SystemFile, parse_system
