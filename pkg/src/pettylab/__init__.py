"""Orlicz functionals and polar Orlicz-Petty bodies on polytopes."""
from . import errors
from .bodies import (HPolytope, ball_hpolytope, facet_areas, hausdorff_distance,
                     linear_image, make_hpolytope, polar_volume, random_polytope, scale,
                     support_eval, support_values, surface_area_measure, tighten, vertices,
                     volume, vrad)
from .experiments import continuity_experiment, degenerate_family_demo, random_audit
from .functionals import (CapacitarySetup, ball_capacitary_setup, ball_capacity,
                          cp_from_measure, hat_orlicz_mixed_pcapacity, hat_orlicz_mixed_volume,
                          inequality_audit, isocapacitary_bound, mixed_volume_q,
                          orlicz_mixed_pcapacity, orlicz_mixed_volume, orlicz_mixed_volume_two,
                          scale_setup)
from .measures import (DiscreteMeasure, from_arrays, hemisphere_check, make_measure,
                       perturb_measure, sphere_grid)
from .orlicz import OrliczFunction, luxemburg_norm, make_phi, parse_phi
from .solver import (Mode, SolveConfig, SolveReport, make_spec, objective_eval, solve,
                     solve_capacitary_petty, solve_orlicz_norm, solve_polar_orlicz,
                     solve_variational, solve_volume_normalized)

__version__ = "0.1.0"
