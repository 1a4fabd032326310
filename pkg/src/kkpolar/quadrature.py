"""Fixed quadrature rules exact through degree 2k+1 for the axis-projection
measure: the interior Gauss rule ("alpha") and the endpoint-augmented rule
("beta").

Weights are computed definition-faithfully, by integrating the fundamental
Lagrange polynomials with :func:`kkpolar.polynomials.integrate_mu`; Lagrange
polynomials are obtained by synthetic deflation of the node polynomial.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NumericalDegeneracyError, PreconditionError
from .polynomials import Polynomial, gegenbauer, integrate_mu, monomial_moment


@dataclass(frozen=True)
class QuadratureRule:
    """Nodes, positive weights, and the degree through which exactness is
    guaranteed.  Nodes are strictly increasing, symmetric about 0; weights
    sum to 1 (exactness on constants against a probability measure)."""

    kind: str
    n: int
    k: int
    nodes: tuple[float, ...]
    weights: tuple[float, ...]
    exact_degree: int
    s: float | None = None

    def apply(self, f) -> float:
        """Weighted sum of f over the nodes; f may return +inf."""
        return float(sum(w * f(x) for x, w in zip(self.nodes, self.weights)))

    def to_dict(self) -> dict:
        d = {
            "kind": self.kind,
            "n": self.n,
            "k": self.k,
            "nodes": list(self.nodes),
            "weights": list(self.weights),
        }
        if self.s is not None:
            d["s"] = self.s
        return d


def poly_roots_in_interval(p: Polynomial, a: float, b: float,
                           expected: int | None = None) -> list[float]:
    """All simple real roots of p in (a, b), ascending.

    Sign-change bracketing on a fine grid (>= 64 * degree points), then
    bisection to bracket width 1e-15 and a single Newton polish.  Callers
    for which orthogonality theory fixes the root count should pass
    ``expected``; a mismatch raises NumericalDegeneracyError.
    """
    if p.degree < 1:
        roots: list[float] = []
    else:
        m = max(64 * p.degree, 256)
        grid = np.linspace(a, b, m + 1)
        vals = p(grid)
        roots = []
        for i in range(m):
            lo, hi = grid[i], grid[i + 1]
            flo, fhi = vals[i], vals[i + 1]
            if flo == 0.0:
                if a < lo:
                    roots.append(float(lo))
                continue
            if flo * fhi < 0.0:
                roots.append(_refine_root(p, float(lo), float(hi)))
        if vals[-1] == 0.0 and grid[-1] < b:
            roots.append(float(grid[-1]))
    if expected is not None and len(roots) != expected:
        raise NumericalDegeneracyError(
            f"found {len(roots)} sign changes in ({a}, {b}), expected {expected} "
            f"simple roots of a degree-{p.degree} polynomial"
        )
    return roots


def _refine_root(p: Polynomial, lo: float, hi: float) -> float:
    flo = p(lo)
    while hi - lo > 1e-15:
        mid = 0.5 * (lo + hi)
        fmid = p(mid)
        if fmid == 0.0:
            return mid
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
    root = 0.5 * (lo + hi)
    # one Newton step, kept only if it stays inside the bracket
    d = p.eval_derivative(root)
    if d != 0.0:
        step = root - p(root) / d
        if lo <= step <= hi:
            root = step
    return root


def _symmetric_roots(p: Polynomial, expected: int,
                     halfwidth: float = 1.0) -> list[float]:
    """Roots of an even/odd polynomial in (-halfwidth, halfwidth), with
    symmetry enforced: nonnegative roots are computed, mirrored, and an odd
    count pins the middle root to exactly 0."""
    raw = poly_roots_in_interval(p, -halfwidth, halfwidth, expected=expected)
    half = expected // 2
    pos = [abs(r) for r in raw[len(raw) - half:]] if half else []
    nodes = [-r for r in reversed(pos)]
    if expected % 2 == 1:
        nodes.append(0.0)
    nodes.extend(pos)
    return nodes


def _interpolatory_weights(n: int, nodes: list[float]) -> list[float]:
    node_poly = Polynomial.from_roots(nodes)
    weights = []
    for x in nodes:
        quot, _ = node_poly.divide_linear(x)
        weights.append(integrate_mu(n, quot.scale(1.0 / quot(x))))
    # symmetrize: the node set is symmetric, so mirrored weights must agree
    m = len(weights)
    out = [0.5 * (weights[i] + weights[m - 1 - i]) for i in range(m)]
    return out


def _validated(rule: QuadratureRule) -> QuadratureRule:
    if any(w <= 0.0 for w in rule.weights):
        raise NumericalDegeneracyError(f"nonpositive weight in {rule.kind} rule: {rule.weights}")
    if abs(sum(rule.weights) - 1.0) > 1e-11:
        raise NumericalDegeneracyError(f"weights of {rule.kind} rule do not sum to 1")
    return rule


def rule_alpha(n: int, k: int) -> QuadratureRule:
    """Gauss rule on the k+1 roots of the degree-(k+1) Gegenbauer polynomial
    for dimension n; exact through degree 2k+1.  All nodes interior."""
    if n < 2 or k < 1:
        raise PreconditionError(f"need n >= 2 and k >= 1, got n={n}, k={k}")
    nodes = _symmetric_roots(gegenbauer(n, k + 1), k + 1)
    weights = _interpolatory_weights(n, nodes)
    return _validated(QuadratureRule("alpha", n, k, tuple(nodes), tuple(weights), 2 * k + 1))


def rule_beta(n: int, k: int) -> QuadratureRule:
    """Endpoint-augmented rule: +-1 plus the k roots of the degree-k
    Gegenbauer polynomial for dimension n+2; exact through degree 2k+1."""
    if n < 2 or k < 1:
        raise PreconditionError(f"need n >= 2 and k >= 1, got n={n}, k={k}")
    interior = _symmetric_roots(gegenbauer(n + 2, k), k)
    nodes = [-1.0] + interior + [1.0]
    weights = _interpolatory_weights(n, nodes)
    return _validated(QuadratureRule("beta", n, k, tuple(nodes), tuple(weights), 2 * k + 1))


def verify_exactness(rule: QuadratureRule, n: int, max_degree: int) -> float:
    """Max residual of the rule on monomials t^j, j <= max_degree, against
    the closed-form moments.  A passing rule stays below 1e-11 through its
    declared exact_degree."""
    nodes = np.asarray(rule.nodes)
    weights = np.asarray(rule.weights)
    worst = 0.0
    for j in range(max_degree + 1):
        residual = abs(float(weights @ nodes**j) - monomial_moment(n, j))
        worst = max(worst, residual)
    return worst


def largest_gauss_node(n: int, k: int) -> float:
    """Largest root of the degree-(k+1) Gegenbauer polynomial (the top node
    of the alpha rule); admissibility threshold for the signed-measure
    construction."""
    nodes = _symmetric_roots(gegenbauer(n, k + 1), k + 1)
    return nodes[-1]
