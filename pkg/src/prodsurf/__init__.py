"""Pointwise and integral geometry of hypersurfaces in products M x R
and constant-curvature ambients, at verification (desk) scale.

The package computes frames, curvatures, and conformal-field data of
hypersurfaces from analytic jets, checks the structural identities those
quantities satisfy, evaluates the integral balance laws on compact
surfaces, and reproduces the explicit radial graphs of constant Gauss
curvature over the hyperbolic plane — all with quantified residuals and
convergence orders.
"""

from .ambient import ambient_keys, make_ambient
from .calculus import FrameFields, QuadratureGrid
from .errors import GeometryError
from .graphs import (closed_form_f, closed_form_f_prime, closed_form_match,
                     completeness_criterion, corollary_equation_residual,
                     graph_curvature, radial_graph, solve_radial,
                     theorem_harness)
from .identities import run_suite
from .integral import (available_formulas, einstein_integral,
                       integral_formula, product_integral, run_formulas)
from .reports import (CheckResult, CompletenessVerdict, HarnessReport,
                      IntegralReport)
from .shape import GraphSurface, ParamSurface, frame_at
from .zoo import instantiate, list_scenarios, scenario_names

__version__ = "0.1.0"

__all__ = [
    "ambient_keys", "make_ambient",
    "FrameFields", "QuadratureGrid",
    "GeometryError",
    "closed_form_f", "closed_form_f_prime", "closed_form_match",
    "completeness_criterion", "corollary_equation_residual",
    "graph_curvature", "radial_graph", "solve_radial", "theorem_harness",
    "run_suite",
    "available_formulas", "einstein_integral", "integral_formula",
    "product_integral", "run_formulas",
    "CheckResult", "CompletenessVerdict", "HarnessReport", "IntegralReport",
    "GraphSurface", "ParamSurface", "frame_at",
    "instantiate", "list_scenarios", "scenario_names",
    "__version__",
]
