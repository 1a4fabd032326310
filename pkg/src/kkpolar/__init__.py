"""Universal lower and upper bounds on discrete potentials of spherical
(k,k)-designs: quadrature rules, one-sided Hermite interpolants, design
tests, and heuristic sphere extremization, plus a CLI front end.

Typical use:

    from kkpolar import catalog, certify_design, p_frame
    report = certify_design(catalog("cube_half"), 1, p_frame(4))
    assert report.all_passed
"""

from .codes import (CATALOG_DESIGNS, DesignCertificate, SphericalCode,
                    catalog, covering_radius_r, is_kk_design, load_code,
                    moment, save_code, waring_residual)
from .errors import (CodeFormatError, KkpolarError, NumericalDegeneracyError,
                     PreconditionError)
from .interpolants import (InterpolationScheme, Side, build_H2k, build_H2k_s,
                           build_H2k_tilde, hermite_confluent,
                           verify_one_sided)
from .polarization import (BoundReport, CertificationReport, CheckResult,
                           Direction, ExtremizationResult, average_check,
                           certify_design, extremize, lower_bound,
                           potential_U, upper_bound_finite, upper_bound_s)
from .polynomials import (GegenbauerFamily, Polynomial, gegenbauer,
                          integrate_mu, monomial_moment, substitute_t_squared)
from .potentials import (Potential, SignState, arcsine, certify_sign, eval_h,
                         gaussian_sym, monomial_2k, negate, p_frame,
                         parse_potential, riesz_sym, user_potential)
from .quadrature import (QuadratureRule, largest_gauss_node, rule_alpha,
                         rule_beta, verify_exactness)
from .signed_measure import (SignedMeasureContext, admissible_range,
                             build_context, rule_lambda, signed_inner_product)

__version__ = "0.1.0"

__all__ = [
    "BoundReport", "CATALOG_DESIGNS", "CertificationReport", "CheckResult",
    "CodeFormatError", "DesignCertificate", "Direction", "ExtremizationResult",
    "GegenbauerFamily", "InterpolationScheme", "KkpolarError",
    "NumericalDegeneracyError", "Polynomial", "Potential", "PreconditionError",
    "QuadratureRule", "Side", "SignState", "SignedMeasureContext",
    "SphericalCode", "admissible_range", "arcsine", "average_check",
    "build_H2k", "build_H2k_s", "build_H2k_tilde", "build_context", "catalog",
    "certify_design", "certify_sign", "covering_radius_r", "eval_h",
    "extremize", "gaussian_sym", "gegenbauer", "hermite_confluent",
    "integrate_mu", "is_kk_design", "largest_gauss_node", "load_code",
    "lower_bound", "moment", "monomial_2k", "monomial_moment", "negate",
    "p_frame", "parse_potential", "potential_U", "riesz_sym", "rule_alpha",
    "rule_beta", "rule_lambda", "save_code", "signed_inner_product",
    "substitute_t_squared", "upper_bound_finite", "upper_bound_s",
    "user_potential", "verify_exactness", "verify_one_sided",
]
