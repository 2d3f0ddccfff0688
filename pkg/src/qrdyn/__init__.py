"""Dynamics of the degree-two quasiregular maps H(z) = h_{K,theta}(z)^2.

h_{K,theta} is the affine stretch by K in direction e^{i theta}; its square
H is quasiregular with constant complex dilatation mu.  The package covers
the induced circle dynamics, fixed-ray structure and bifurcation, the
Blaschke model on S^1, dilatation growth of the iterates via Mobius chains
in the hyperbolic disk, the escaping/attracted plane partition, and trace
obstructions to quasiconformal equivalence near infinity.
"""

from .core import (MapParams, make_params, params_of_mu, mu_of_params,
                   eval_h, eval_H, eval_H_polar, radial_stretch, arg_h,
                   normalize_angle, circle_dist)
from .circle import (circle_map, circle_map_lift, circle_map_deriv,
                     circle_map_deriv2, circle_preimages, orbit,
                     classify_limit, backward_tree, BackwardTree,
                     LimitOutcome, LimitReport)
from .rays import (FixedRay, RegimeReport, Regime, Stability, fixed_rays,
                   solve_cubic, cubic_coeffs, trace_sq_of_angle, theta_of_K,
                   k_theta, interval_J)
from .mobius import (DiskMobius, mobius_apply, mobius_compose, mobius_inverse,
                     trace_sq, is_hyperbolic, contraction_k, hyperbolic_dist,
                     fixed_ray_mobius, dilatation_on_ray, dilatation_chain,
                     dilatation_distance_series, growth_fit, GrowthFit)
from .blaschke import (BlaschkeMap, blaschke_of_params, blaschke_apply,
                       julia_classification, julia_sample, immediate_basin,
                       JuliaKind, BasinInterval)
from .plane import (PointClass, PointResult, classify_point,
                    radial_fixed_point, Window, PlaneGrid, render_grid,
                    write_ppm, write_stats, R_ESCAPE, r_attract)
from .obstruct import (ObstructionVerdict, Verdict, Reason,
                       obstruction_report)
from .errors import (QrdynError, InvalidParameter, NumericalFailure,
                     ResourceLimit, NoBasin)

__version__ = "0.1.0"
