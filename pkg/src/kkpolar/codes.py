"""Spherical codes: validated point sets, reference designs, moment tests,
the squared-inner-product Waring identity, covering radius, and JSON I/O.

The covering radius search is a heuristic global minimization (exact on the
circle, multistart elsewhere), so its value is an upper estimate of the
true min; structured seeds make it exact on the symmetric catalog codes.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import CodeFormatError, PreconditionError
from .polynomials import gegenbauer, monomial_moment
from .sphere_opt import nm_polish

_NORM_TOL = 1e-12
_DUP_TOL = 1e-12


@dataclass(frozen=True)
class SphericalCode:
    """N distinct unit vectors in R^n, rows of a read-only array."""

    n: int
    points: np.ndarray

    @classmethod
    def from_points(cls, points) -> "SphericalCode":
        pts = np.array(points, dtype=float)
        if pts.ndim != 2 or pts.shape[0] < 1 or pts.shape[1] < 2:
            raise CodeFormatError(
                f"need a nonempty 2-D array of vectors with dimension >= 2, "
                f"got shape {pts.shape}")
        norms = np.linalg.norm(pts, axis=1)
        if np.any(np.abs(norms - 1.0) > _NORM_TOL):
            worst = float(np.max(np.abs(norms - 1.0)))
            raise CodeFormatError(f"rows must be unit vectors (worst norm error {worst:.3e})")
        for i in range(len(pts)):
            close = np.linalg.norm(pts[i + 1:] - pts[i], axis=1) <= _DUP_TOL
            if np.any(close):
                j = i + 1 + int(np.argmax(close))
                raise CodeFormatError(f"repeated point: rows {i} and {j} coincide")
        pts.setflags(write=False)
        return cls(int(pts.shape[1]), pts)

    @property
    def size(self) -> int:
        return int(self.points.shape[0])

    def gram(self) -> np.ndarray:
        return self.points @ self.points.T


@dataclass(frozen=True)
class DesignCertificate:
    """Outcome of the even-moment test through order 2k."""

    k: int
    moments: dict
    max_even_moment_residual: float
    tol: float
    is_design: bool

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "moments": {str(ell): v for ell, v in self.moments.items()},
            "max_even_moment_residual": self.max_even_moment_residual,
            "tol": self.tol,
            "is_design": self.is_design,
        }


def moment(code: SphericalCode, ell: int) -> float:
    """Sum of the degree-ell Gegenbauer polynomial over all inner-product
    pairs; nonnegative up to roundoff."""
    if ell < 1:
        raise PreconditionError(f"moment order must be >= 1, got {ell}")
    return float(np.sum(gegenbauer(code.n, ell)(code.gram())))


def is_kk_design(code: SphericalCode, k: int, tol: float | None = None) -> DesignCertificate:
    """Even moments 2..2k must all vanish; tolerance scales with the N^2
    terms entering each moment sum."""
    if k < 1:
        raise PreconditionError(f"design order must be >= 1, got {k}")
    if tol is None:
        tol = 1e-9 * code.size**2
    moments = {ell: moment(code, ell) for ell in range(2, 2 * k + 1, 2)}
    residual = max(abs(v) for v in moments.values())
    return DesignCertificate(k, moments, residual, tol, residual <= tol)


def waring_residual(code: SphericalCode, x, ell: int) -> float:
    """Deviation of the power sum over the code from its design value:
    sum_i (x . x_i)^ell - c_ell N."""
    if ell < 2 or ell % 2 != 0:
        raise PreconditionError(f"power must be a positive even integer, got {ell}")
    x = np.asarray(x, dtype=float)
    if abs(np.linalg.norm(x) - 1.0) > 1e-9:
        raise PreconditionError("evaluation point must be a unit vector")
    powers = (code.points @ x) ** ell
    return float(np.sum(powers) - monomial_moment(code.n, ell) * code.size)


# ---------------------------------------------------------------------------
# covering radius


def _window_objective(points: np.ndarray, x: np.ndarray) -> float:
    return float(np.max(np.abs(points @ x)))


def _covering_radius_circle(points: np.ndarray) -> tuple[float, np.ndarray]:
    """Exact on S^1: the minimax point sits mid-gap in the antipodal
    closure, at depth cos(half the largest angular gap)."""
    doubled = np.vstack([points, -points])
    angles = np.sort(np.arctan2(doubled[:, 1], doubled[:, 0]))
    gaps = np.diff(np.append(angles, angles[0] + 2.0 * math.pi))
    i = int(np.argmax(gaps))
    mid = angles[i] + 0.5 * gaps[i]
    witness = np.array([math.cos(mid), math.sin(mid)])
    return math.cos(0.5 * float(np.max(gaps))), witness


def _fibonacci_sphere(count: int) -> np.ndarray:
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    i = np.arange(count)
    z = 1.0 - (2.0 * i + 1.0) / count
    rho = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = 2.0 * math.pi * i / golden
    return np.column_stack([rho * np.cos(phi), rho * np.sin(phi), z])


def _structured_seeds(points: np.ndarray) -> list[np.ndarray]:
    """Candidate deep points with exact closed forms on symmetric codes:
    normalized pairwise sums/differences, coordinate axes, and (for small
    codes) all sign combinations of the full point sum."""
    m, n = points.shape
    seeds = [points[i] for i in range(m)]
    seeds.extend(np.eye(n))
    for i in range(m):
        for j in range(i + 1, m):
            for combo in (points[i] + points[j], points[i] - points[j]):
                nrm = np.linalg.norm(combo)
                if nrm > 1e-9:
                    seeds.append(combo / nrm)
    if m <= 10:
        for signs in itertools.product((1.0, -1.0), repeat=m - 1):
            combo = points[0] + np.tensordot(np.array(signs), points[1:], axes=1)
            nrm = np.linalg.norm(combo)
            if nrm > 1e-9:
                seeds.append(combo / nrm)
    return seeds


def covering_radius_r(code: SphericalCode, seed: int = 0,
                      restarts: int | None = None) -> tuple[float, np.ndarray]:
    """Depth of the deepest hole: min over the sphere of max_i |x . x_i|,
    with the minimizing witness.

    Exact on S^1 by angle sweep.  Elsewhere: structured plus grid/random
    seeds, the best screened candidates polished by derivative-free local
    minimization in tangent coordinates.  The result is an upper estimate
    of the true minimum.
    """
    pts = code.points
    if code.n == 2:
        return _covering_radius_circle(pts)

    seeds = _structured_seeds(pts)
    if code.n == 3:
        seeds.extend(_fibonacci_sphere(1500))
    rng = np.random.default_rng(seed)
    count = max(64, restarts or 0)
    raw = rng.standard_normal((count, code.n))
    seeds.extend(raw / np.linalg.norm(raw, axis=1, keepdims=True))

    mat = np.vstack(seeds)
    scores = np.max(np.abs(mat @ pts.T), axis=1)
    order = np.argsort(scores)
    best_val, best_x = math.inf, None
    for idx in order[:12]:
        val, x = nm_polish(lambda y: _window_objective(pts, y), mat[idx])
        if val < best_val:
            best_val, best_x = val, x
    return best_val, best_x


# ---------------------------------------------------------------------------
# catalog


def _onb(n: int) -> np.ndarray:
    if n < 2:
        raise PreconditionError(f"dimension must be >= 2, got {n}")
    return np.eye(n)


def _simplex_frame(n: int) -> np.ndarray:
    """n+1 unit vectors in R^n with pairwise inner products -1/n."""
    if n < 2:
        raise PreconditionError(f"dimension must be >= 2, got {n}")
    m = n + 1
    centered = np.eye(m) - np.full((m, m), 1.0 / m)
    centered *= math.sqrt(m / n)
    # reflect the zero-sum hyperplane onto the first n coordinates
    v = np.full(m, 1.0 / math.sqrt(m))
    v = v - np.eye(m)[-1]
    v /= np.linalg.norm(v)
    rotated = centered @ (np.eye(m) - 2.0 * np.outer(v, v))
    pts = rotated[:, :n]
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def _cube_half() -> np.ndarray:
    pts = np.array([
        [1.0, 1.0, 1.0],
        [1.0, -1.0, -1.0],
        [-1.0, 1.0, -1.0],
        [-1.0, -1.0, 1.0],
    ])
    return pts / math.sqrt(3.0)


def _polygon_half(m: int) -> np.ndarray:
    if m < 1:
        raise PreconditionError(f"polygon half-size must be >= 1, got {m}")
    angles = np.arange(m) * math.pi / m
    return np.column_stack([np.cos(angles), np.sin(angles)])


def _icosahedron_half() -> np.ndarray:
    phi = (1.0 + math.sqrt(5.0)) / 2.0
    pts = np.array([
        [0.0, 1.0, phi], [0.0, -1.0, phi],
        [1.0, phi, 0.0], [-1.0, phi, 0.0],
        [phi, 0.0, 1.0], [phi, 0.0, -1.0],
    ])
    return pts / math.sqrt(1.0 + phi * phi)


def _cell24_half() -> np.ndarray:
    rows = []
    for a in range(4):
        for b in range(a + 1, 4):
            for sign in (1.0, -1.0):
                row = np.zeros(4)
                row[a] = 1.0
                row[b] = sign
                rows.append(row)
    return np.array(rows) / math.sqrt(2.0)


def catalog(name: str) -> SphericalCode:
    """Reference codes by name: onb:<n>, simplex_frame:<n>, cube_half,
    cross_half:<n>, polygon_half:<m>, icosahedron_half, cell24_half."""
    head, _, arg = name.strip().partition(":")
    try:
        if head == "onb" or head == "cross_half":
            return SphericalCode.from_points(_onb(int(arg)))
        if head == "simplex_frame":
            return SphericalCode.from_points(_simplex_frame(int(arg)))
        if head == "cube_half" and not arg:
            return SphericalCode.from_points(_cube_half())
        if head == "polygon_half":
            return SphericalCode.from_points(_polygon_half(int(arg)))
        if head == "icosahedron_half" and not arg:
            return SphericalCode.from_points(_icosahedron_half())
        if head == "cell24_half" and not arg:
            return SphericalCode.from_points(_cell24_half())
    except ValueError as exc:
        raise PreconditionError(f"bad catalog parameter in {name!r}") from exc
    raise PreconditionError(f"unknown catalog name {name!r}")


CATALOG_DESIGNS = {
    # name -> certified design order of the catalog entry
    "onb:3": 1, "onb:4": 1, "simplex_frame:3": 1, "cube_half": 1,
    "cross_half:4": 1, "polygon_half:5": 4, "icosahedron_half": 2,
    "cell24_half": 2,
}


# ---------------------------------------------------------------------------
# file I/O


def save_code(code: SphericalCode, path) -> None:
    payload = {"dim": code.n,
               "points": [[float(v) for v in row] for row in code.points]}
    Path(path).write_text(json.dumps(payload, indent=2) + "\n")


def load_code(path) -> SphericalCode:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise CodeFormatError(f"not valid JSON: {path}") from exc
    if not isinstance(data, dict) or "dim" not in data or "points" not in data:
        raise CodeFormatError('code JSON needs keys "dim" and "points"')
    try:
        pts = np.array(data["points"], dtype=float)
        n = int(data["dim"])
    except (TypeError, ValueError) as exc:
        raise CodeFormatError("points must be a rectangular numeric array") from exc
    if pts.ndim != 2 or pts.shape[0] < 1:
        raise CodeFormatError("a code must contain at least one point")
    if pts.shape[1] != n:
        raise CodeFormatError(
            f"dim says {n} but points have {pts.shape[1]} coordinates")
    norms = np.linalg.norm(pts, axis=1)
    off = np.abs(norms - 1.0)
    if np.any(off > 1e-9):
        raise CodeFormatError(
            f"row norms must be within 1e-9 of 1 (worst error {float(np.max(off)):.3e})")
    return SphericalCode.from_points(pts / norms[:, None])
