"""Universal bounds on the extremes of discrete potentials over spherical
(k,k)-designs, with heuristic extremization and design certification.

For a potential h and a code C the quantity of interest is the sum
U(x) = sum_i h(x . x_i) over directions x on the sphere.  Quadrature rules
exact on polynomials of degree 2k+1 turn one-sided Hermite interpolants of
h into bounds on min_x U and max_x U that hold for every (k,k)-design of
the same size, independent of the particular point configuration:

  * interior-node rule, interpolant below h   -> lower bound on the minimum
  * endpoint rule, interpolant below h        -> lower bound, for potentials
    whose relevant derivative is nonpositive (needs finite h(1))
  * endpoint rule, interpolant above h        -> upper bound on the maximum
    (needs finite h(1))
  * anchored rule at s < 1, interpolant above -> upper bound on the minimum,
    valid for codes whose covering radius stays below s

Extremization is a heuristic global search (exact on the circle), so its
results are estimates: an upper estimate of the minimum and a lower
estimate of the maximum.  Sandwich checks remain sound with estimates on
those sides.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np
from scipy import optimize

from .codes import (DesignCertificate, SphericalCode, _fibonacci_sphere,
                    _structured_seeds, covering_radius_r, is_kk_design)
from .errors import NumericalDegeneracyError, PreconditionError
from .interpolants import (Side, _interpolate, _scheme_from_nodes, build_H2k,
                           build_H2k_s, build_H2k_tilde, verify_one_sided)
from .polynomials import Polynomial, monomial_moment
from .potentials import Potential, SignState, certify_sign, eval_h
from .quadrature import (largest_gauss_node, rule_alpha, rule_beta,
                         verify_exactness)
from .signed_measure import ADMISSIBILITY_MARGIN, build_context, rule_lambda
from .sphere_opt import (nm_polish, projected_gradient_descent,
                         stationarity_norm)

SANDWICH_SLACK = 1e-8
_MARGIN_GRID = 2001
_ANCHORED_CAVEAT = ("anchored bound is conditional: it limits the minimum "
                    "only for codes whose covering radius lies below s")


class Direction(Enum):
    MIN = "MIN"
    MAX = "MAX"


@dataclass(frozen=True)
class ExtremizationResult:
    """Outcome of a sphere extremization.  value equals the potential sum
    at argpoint; restarts counts local searches run; stationarity_norm is
    the projected numerical gradient at the argpoint (diagnostic only,
    meaningless at kinks and poles)."""

    value: float
    argpoint: tuple[float, ...]
    restarts: int
    stationarity_norm: float

    def to_dict(self) -> dict:
        return {
            "value": self.value,
            "argpoint": list(self.argpoint),
            "restarts": self.restarts,
            "stationarity_norm": self.stationarity_norm,
        }


@dataclass(frozen=True)
class BoundReport:
    """A certified bound carrying everything that produced it: the rule
    (nodes/weights copied verbatim), the one-sided interpolant in t, the
    sign certificate that authorized the branch, and the numerical checks
    (one-sided margin, quadrature exactness residual) backing it."""

    kind: str
    n: int
    k: int
    N: int
    s: Optional[float]
    nodes: tuple[float, ...]
    weights: tuple[float, ...]
    bound_value: float
    per_point_value: float
    interpolant: Polynomial
    sign_state: str
    certificate_kind: str
    one_sided_margin: float
    exactness_residual: float
    notes: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "n": self.n,
            "k": self.k,
            "N": self.N,
            "nodes": list(self.nodes),
            "weights": list(self.weights),
            "bound_value": self.bound_value,
            "per_point_value": self.per_point_value,
            "interpolant_t_coeffs": list(self.interpolant.coeffs),
            "sign_state": self.sign_state,
            "certificate_kind": self.certificate_kind,
            "one_sided_margin": self.one_sided_margin,
            "exactness_residual": self.exactness_residual,
            "notes": list(self.notes),
        }
        if self.s is not None:
            out["s"] = self.s
        return out


def _check_problem(n: int, k: int, N: int) -> None:
    if n < 2:
        raise PreconditionError(f"dimension must be >= 2, got {n}")
    if k < 1:
        raise PreconditionError(f"design strength parameter must be >= 1, got {k}")
    if N < 1:
        raise PreconditionError(f"code size must be >= 1, got {N}")


def _assemble(kind: str, n: int, k: int, N: int, rule, pot: Potential,
              interpolant: Polynomial, side: Side,
              interval: tuple[float, float], state: SignState,
              notes: tuple[str, ...] = ()) -> BoundReport:
    per_point = math.fsum(
        w * eval_h(pot, t) for t, w in zip(rule.nodes, rule.weights))
    bound = N * per_point
    if not math.isfinite(bound):
        raise NumericalDegeneracyError(
            f"{kind} bound is not finite; the rule places weight where the "
            f"potential blows up")
    margin = verify_one_sided(interpolant, pot, side, interval,
                              grid_size=_MARGIN_GRID)
    residual = verify_exactness(rule, n, rule.exact_degree)
    return BoundReport(
        kind=kind, n=n, k=k, N=N, s=rule.s,
        nodes=rule.nodes, weights=rule.weights,
        bound_value=bound, per_point_value=per_point,
        interpolant=interpolant,
        sign_state=state.value, certificate_kind=pot.certificate_kind,
        one_sided_margin=margin, exactness_residual=residual,
        notes=notes)


def _lower_alpha(n: int, k: int, N: int, pot: Potential, state: SignState,
                 notes: tuple[str, ...] = ()) -> BoundReport:
    rule = rule_alpha(n, k)
    interpolant = build_H2k(n, k, pot)
    return _assemble("ULB_ALPHA", n, k, N, rule, pot, interpolant,
                     Side.BELOW, (-1.0, 1.0), state, notes)


def _lower_beta(n: int, k: int, N: int, pot: Potential, state: SignState,
                notes: tuple[str, ...] = ()) -> BoundReport:
    rule = rule_beta(n, k)
    interpolant = build_H2k_tilde(n, k, pot)
    return _assemble("ULB_BETA", n, k, N, rule, pot, interpolant,
                     Side.BELOW, (-1.0, 1.0), state, notes)


def lower_bound(n: int, k: int, N: int, pot: Potential) -> BoundReport:
    """Universal lower bound on min_x U(x) over all (k,k)-designs of N
    points on the unit sphere in R^n.

    The sign certificate for g^(k+1) on (0,1) picks the branch: interior
    nodes when nonnegative, endpoint nodes when nonpositive (this branch
    needs finite h(1)).  A vanishing certificate admits both; they are
    cross-checked and the interior-node report is returned.
    """
    _check_problem(n, k, N)
    state = certify_sign(pot, k, 1.0)
    if state is SignState.UNKNOWN:
        raise PreconditionError(
            f"cannot certify the derivative sign of {pot.name} at order "
            f"{k + 1} on (0,1); no lower-bound branch applies")
    if state is SignState.ZERO:
        note = ("vanishing higher derivative: interior-node and "
                "endpoint-node branches cross-checked",)
        report = _lower_alpha(n, k, N, pot, state, note)
        twin = _lower_beta(n, k, N, pot, state, note)
        if abs(report.bound_value - twin.bound_value) > 1e-10 * max(1.0, N):
            raise NumericalDegeneracyError(
                f"branch disagreement {report.bound_value} vs "
                f"{twin.bound_value} for a polynomial potential")
        return report
    if state is SignState.NONNEGATIVE:
        return _lower_alpha(n, k, N, pot, state)
    if not math.isfinite(pot.h_at_1):
        raise PreconditionError(
            f"{pot.name} has nonpositive certificate but infinite endpoint "
            f"value; no lower-bound branch applies")
    return _lower_beta(n, k, N, pot, state)


def upper_bound_finite(n: int, k: int, N: int, pot: Potential) -> BoundReport:
    """Universal upper bound on max_x U(x) over all (k,k)-designs of N
    points: endpoint rule against the above-side interpolant.  Requires a
    nonnegative derivative certificate and finite h(1)."""
    _check_problem(n, k, N)
    state = certify_sign(pot, k, 1.0)
    if not state.admits_nonnegative():
        raise PreconditionError(
            f"upper bound needs a nonnegative derivative certificate; "
            f"{pot.name} certifies {state.value}")
    if not math.isfinite(pot.h_at_1):
        raise PreconditionError(
            f"{pot.name} is infinite at the endpoints; use upper_bound_s "
            f"with an anchor s < 1 instead")
    rule = rule_beta(n, k)
    scheme = _scheme_from_nodes(rule.nodes, top_simple=True, u_max=1.0,
                                side=Side.ABOVE)
    interpolant = _interpolate(scheme, pot, k)
    return _assemble("UUB_BETA", n, k, N, rule, pot, interpolant,
                     Side.ABOVE, (-1.0, 1.0), state)


def upper_bound_s(n: int, k: int, N: int, s: float, pot: Potential,
                  r_witness: Optional[float] = None) -> BoundReport:
    """Anchored upper bound on min_x U(x) for (k,k)-designs of N points
    whose covering radius stays below the anchor s.

    Requires s strictly inside (largest interior quadrature node, 1) and a
    nonnegative derivative certificate on (0, s^2).  When the covering
    radius of a concrete code is supplied it is checked against s; without
    it the report carries the conditional-validity caveat only.
    """
    _check_problem(n, k, N)
    s = float(s)
    low = largest_gauss_node(n, k)
    if not (low + ADMISSIBILITY_MARGIN <= s < 1.0):
        raise PreconditionError(
            f"anchor s={s} outside the admissible open range "
            f"({low:.12g}, 1)")
    state = certify_sign(pot, k, s * s)
    if not state.admits_nonnegative():
        raise PreconditionError(
            f"anchored bound needs a nonnegative derivative certificate on "
            f"(0, s^2); {pot.name} certifies {state.value}")
    notes = [_ANCHORED_CAVEAT]
    if r_witness is not None:
        if s <= r_witness:
            raise PreconditionError(
                f"anchor s={s} does not exceed the code covering radius "
                f"{r_witness}")
        notes.append(f"covering radius {r_witness:.12g} < s confirmed for "
                     f"the supplied code")
    else:
        notes.append("no concrete code supplied; covering radius unchecked")
    ctx = build_context(n, k, s)
    rule = rule_lambda(ctx)
    interpolant = build_H2k_s(ctx, pot)
    return _assemble("UUB_LAMBDA", n, k, N, rule, pot, interpolant,
                     Side.ABOVE, (-s, s), state, tuple(notes))


# ---------------------------------------------------------------------------
# potential sums and extremization


def _g_of_u(pot: Potential, u: np.ndarray) -> np.ndarray:
    """Evaluate g elementwise, falling back to a scalar loop for
    potentials whose g does not accept arrays."""
    try:
        out = np.asarray(pot.eval_g(u), dtype=float)
        if out.shape != np.shape(u):
            raise TypeError("scalar-only callable")
        return out
    except (TypeError, ValueError):
        flat = np.array([float(pot.eval_g(float(v))) for v in np.ravel(u)])
        return flat.reshape(np.shape(u))


def _u_sum(points: np.ndarray, pot: Potential, x: np.ndarray) -> float:
    dots = points @ x
    u = np.minimum(dots * dots, 1.0)
    return float(np.sum(_g_of_u(pot, u)))


def _u_batch(points: np.ndarray, pot: Potential, mat: np.ndarray) -> np.ndarray:
    dots = mat @ points.T
    u = np.minimum(dots * dots, 1.0)
    return np.sum(_g_of_u(pot, u), axis=1)


def potential_U(x, code: SphericalCode, pot: Potential) -> float:
    """Sum of h(x . x_i) over the code, as an extended real (+inf when a
    term blows up).  x must be a unit vector."""
    x = np.asarray(x, dtype=float)
    if x.shape != (code.n,):
        raise PreconditionError(
            f"direction has shape {x.shape}, expected ({code.n},)")
    nrm = float(np.linalg.norm(x))
    if abs(nrm - 1.0) > 1e-9:
        raise PreconditionError(f"direction must be a unit vector, |x|={nrm}")
    return _u_sum(code.points, pot, x / nrm)


def _lat_long_grid(res: int = 36) -> np.ndarray:
    """Hemisphere latitude-longitude grid (the potential sum is even in x,
    so one hemisphere suffices); rings thin toward the pole."""
    rows = [np.array([0.0, 0.0, 1.0])]
    for lat in np.linspace(0.0, np.pi / 2.0, res)[1:]:
        ring = max(8, int(round(2 * res * math.sin(lat))))
        for lng in np.linspace(0.0, 2.0 * np.pi, ring, endpoint=False):
            rows.append(np.array([
                math.sin(lat) * math.cos(lng),
                math.sin(lat) * math.sin(lng),
                math.cos(lat)]))
    return np.vstack(rows)


def _extremize_circle(points: np.ndarray, pot: Potential,
                      sgn: float) -> ExtremizationResult:
    """Dense angle sweep plus bounded scalar refinement; exact on S^1 up
    to the refinement tolerance."""
    angles = np.arctan2(points[:, 1], points[:, 0])
    count = 4096
    phis = np.linspace(0.0, 2.0 * np.pi, count, endpoint=False)
    dots = np.cos(phis[:, None] - angles[None, :])
    vals = sgn * np.sum(_g_of_u(pot, np.minimum(dots * dots, 1.0)), axis=1)
    idx = int(np.argmin(vals))

    def objective(phi: float) -> float:
        d = np.cos(phi - angles)
        return sgn * float(np.sum(_g_of_u(pot, np.minimum(d * d, 1.0))))

    span = 2.0 * np.pi / count
    res = optimize.minimize_scalar(
        objective, bounds=(phis[idx] - span, phis[idx] + span),
        method="bounded", options={"xatol": 1e-13})
    phi = float(res.x) if res.fun <= vals[idx] else float(phis[idx])
    x = np.array([math.cos(phi), math.sin(phi)])
    step = 1e-7
    slope = (objective(phi + step) - objective(phi - step)) / (2.0 * step)
    return ExtremizationResult(
        value=_u_sum(points, pot, x), argpoint=tuple(x),
        restarts=1,
        stationarity_norm=abs(slope) if math.isfinite(slope) else math.inf)


def extremize(code: SphericalCode, pot: Potential, direction: Direction,
              seed: int = 0, restarts: Optional[int] = None) -> ExtremizationResult:
    """Heuristic global extremum of the potential sum over the sphere.

    A potential infinite at the endpoints attains an infinite maximum at
    any code point; that case is reported without search.  On the circle
    an angle sweep is essentially exact.  Elsewhere structured seeds
    (code points, axes, normalized pairwise sums, sign combinations), a
    latitude-longitude grid in R^3, and random directions are screened;
    the best survivors are refined by projected-gradient descent with
    numerical gradients followed by a derivative-free polish.  MIN results
    are upper estimates of the true minimum, MAX results lower estimates
    of the true maximum.
    """
    direction = Direction(direction)
    pts = code.points
    if direction is Direction.MAX and pot.h_at_1 == math.inf:
        return ExtremizationResult(math.inf, tuple(pts[0]), 0, 0.0)
    if direction is Direction.MIN and pot.h_at_1 == -math.inf:
        return ExtremizationResult(-math.inf, tuple(pts[0]), 0, 0.0)

    sgn = 1.0 if direction is Direction.MIN else -1.0
    if code.n == 2:
        return _extremize_circle(pts, pot, sgn)

    def f(x: np.ndarray) -> float:
        return sgn * _u_sum(pts, pot, x)

    seeds = _structured_seeds(pts)
    if code.n == 3:
        seeds.append(_lat_long_grid())
        seeds.append(_fibonacci_sphere(600))
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((max(128, restarts or 0), code.n))
    seeds.append(raw / np.linalg.norm(raw, axis=1, keepdims=True))
    mat = np.vstack(seeds)
    vals = sgn * _u_batch(pts, pot, mat)
    order = np.argsort(vals)

    best_val, best_x, runs = math.inf, mat[int(order[0])], 0
    for idx in order[:10]:
        val, x = projected_gradient_descent(f, mat[int(idx)])
        val2, x2 = nm_polish(f, x)
        if val2 < val:
            val, x = val2, x2
        runs += 1
        if val < best_val:
            best_val, best_x = val, x
    return ExtremizationResult(
        value=_u_sum(pts, pot, best_x), argpoint=tuple(best_x),
        restarts=runs, stationarity_norm=stationarity_norm(f, best_x))


# ---------------------------------------------------------------------------
# certification


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail}


@dataclass(frozen=True)
class CertificationReport:
    """Everything certify_design found: the design test, the applicable
    universal bounds, both extremization estimates, and the list of
    sandwich and exactness checks with their outcomes."""

    n: int
    k: int
    N: int
    potential: str
    design: DesignCertificate
    bounds: tuple[BoundReport, ...]
    minimum: ExtremizationResult
    maximum: ExtremizationResult
    covering_radius: float
    checks: tuple[CheckResult, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "N": self.N,
            "potential": self.potential,
            "design": self.design.to_dict(),
            "bounds": [b.to_dict() for b in self.bounds],
            "minimum": self.minimum.to_dict(),
            "maximum": self.maximum.to_dict(),
            "covering_radius": self.covering_radius,
            "checks": [c.to_dict() for c in self.checks],
            "all_passed": self.all_passed,
        }


def certify_design(code: SphericalCode, k: int, pot: Potential,
                   seed: int = 0) -> CertificationReport:
    """Run the design moment test, compute every applicable bound, and
    compare against extremization estimates.  Findings are reported as
    checks, never raised: a failed sandwich marks the report, and a bound
    whose preconditions fail is recorded as skipped.

    For the pure even monomial of matching degree the extremes of a design
    must equal the average value; non-designs must straddle it strictly.
    """
    cert = is_kk_design(code, k)
    n, size = code.n, code.size
    minimum = extremize(code, pot, Direction.MIN, seed=seed)
    maximum = extremize(code, pot, Direction.MAX, seed=seed)
    radius, _ = covering_radius_r(code, seed=seed)
    bounds: list[BoundReport] = []
    checks: list[CheckResult] = [CheckResult(
        "order", minimum.value <= maximum.value + 1e-12,
        f"min={minimum.value:.12g} max={maximum.value:.12g}")]

    if cert.is_design:
        try:
            low = lower_bound(n, k, size, pot)
            bounds.append(low)
            checks.append(CheckResult(
                "lower_sandwich",
                low.bound_value <= minimum.value + SANDWICH_SLACK,
                f"{low.kind}={low.bound_value:.12g} <= min={minimum.value:.12g}"))
        except PreconditionError as exc:
            checks.append(CheckResult("lower_bound_skipped", True, str(exc)))
        try:
            high = upper_bound_finite(n, k, size, pot)
            bounds.append(high)
            checks.append(CheckResult(
                "upper_sandwich",
                maximum.value <= high.bound_value + SANDWICH_SLACK,
                f"max={maximum.value:.12g} <= {high.kind}={high.bound_value:.12g}"))
        except PreconditionError as exc:
            checks.append(CheckResult("upper_finite_skipped", True, str(exc)))
        anchor = max(largest_gauss_node(n, k) + 1e-6, radius + 1e-6)
        if anchor < 1.0:
            try:
                anchored = upper_bound_s(n, k, size, anchor, pot,
                                         r_witness=radius)
                bounds.append(anchored)
                checks.append(CheckResult(
                    "anchored_min_bound",
                    minimum.value <= anchored.bound_value + SANDWICH_SLACK,
                    f"min={minimum.value:.12g} <= "
                    f"{anchored.kind}={anchored.bound_value:.12g} at "
                    f"s={anchor:.12g}"))
            except PreconditionError as exc:
                checks.append(CheckResult("anchored_skipped", True, str(exc)))
        else:
            checks.append(CheckResult(
                "anchored_skipped", True,
                f"covering radius {radius:.6g} admits no anchor below 1"))

    if pot.name == f"monomial:k={k}":
        target = monomial_moment(n, 2 * k) * size
        if cert.is_design:
            checks.append(CheckResult(
                "monomial_min_is_average",
                abs(minimum.value - target) <= SANDWICH_SLACK * max(1.0, size),
                f"min={minimum.value:.12g} target={target:.12g}"))
            checks.append(CheckResult(
                "monomial_max_is_average",
                abs(maximum.value - target) <= SANDWICH_SLACK * max(1.0, size),
                f"max={maximum.value:.12g} target={target:.12g}"))
        else:
            checks.append(CheckResult(
                "monomial_min_below_average", minimum.value < target,
                f"min={minimum.value:.12g} < target={target:.12g}"))
            checks.append(CheckResult(
                "monomial_max_above_average", maximum.value > target,
                f"max={maximum.value:.12g} > target={target:.12g}"))

    return CertificationReport(
        n=n, k=k, N=size, potential=pot.name, design=cert,
        bounds=tuple(bounds), minimum=minimum, maximum=maximum,
        covering_radius=radius, checks=tuple(checks))


def average_check(code: SphericalCode, k: int, samples: int = 10_000,
                  seed: int = 0) -> float:
    """Monte Carlo check of the sphere average of the degree-2k monomial
    potential sum: returns (sample average) - c_2k * N, which should be
    O(N / sqrt(samples)) for any code."""
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    if samples < 10_000:
        raise PreconditionError(
            f"averaging needs at least 10000 samples, got {samples}")
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((samples, code.n))
    x /= np.linalg.norm(x, axis=1, keepdims=True)
    dots = x @ code.points.T
    vals = np.sum(dots ** (2 * k), axis=1)
    return float(np.mean(vals)) - monomial_moment(code.n, 2 * k) * code.size
