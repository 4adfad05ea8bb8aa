"""Spectral theory of hyperbolic weighted composition semigroups on Bergman
spaces: exact spectral regions from boundary invariants, plus independent
numerical cross-checks (ring-integral membership, orbit-integral resolvents,
a Galerkin truncation oracle) and deterministic JSON/SVG reporting.
"""

from .errors import (BergspecError, ConfigError, CoverageError,
                     EvaluationError, ExprSyntaxError, InversionError,
                     ModelInconsistencyError, OrbitIntegralError,
                     OutsideOmegaError, PetalExitError)
from .expr import AnalyticExpr, parse_expr
from .numerics import (MembershipVerdict, QuadratureGrid, ResolventCertificate,
                       ap_norm_rings, coboundary_growth_exponent,
                       eigen_identity_residual, eigenfunction,
                       local_membership, nonsurjectivity_witness,
                       orbit_integral_K, residual_check, resolvent_apply)
from .regions import (NEG_INF, Component, GammaProfile, SpectralRegion,
                      composition_spectrum, essential_spectrum, gammas_from,
                      generator_point_spectrum, generator_spectrum,
                      membership_rule, operator_point_spectrum,
                      operator_radius, operator_spectrum)
from .scenario import (FixedPointDatum, Scenario, alpha_at, beta_at, cocycle,
                       eval_h, eval_h_inverse, flow, generator_G, generator_g,
                       make_builtin, make_expression, make_parametric,
                       parse_complex, parse_scenario)
from .svgplot import Viewport, render_svg
from .truncation import (GalerkinQuadrature, TruncationMatrix, build_matrix,
                         eigen_cloud, gelfand_radius, resolution_horizon)

__version__ = "0.1.0"
