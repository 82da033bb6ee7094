"""Spectral-stability certificates for perturbed half-line Dirac operators.

Every certificate evaluates a double integral of the shape

    integral |V(x)| w(min(x, y)) |V(y)| dx dy

for a weight w determined by the kernel bound in force, and certifies
stability of the spectrum when the value is below 1.  The value is the
squared Hilbert-Schmidt norm of the corresponding sandwich kernel
|V|^{1/2} (...) |V|^{1/2}; the Nystrom operator norm of that kernel is a
sharper (never larger) statistic computable from the same grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import SpectralParams
from .potentials import QuadGrid, pointwise_norm, refine

SUFCON = "sufcon"
SUFCON_ALT = "sufcon_alt"
SUFCON_NON = "sufcon_non"
SUFCON_C = "sufcon_c"


@dataclass(frozen=True)
class Certificate:
    """One certificate evaluation.

    verdict is value < 1; marginal flags a value too close to 1 for the
    quadrature error to support a firm verdict.  value scales quadratically
    when the potential is scaled.
    """

    condition_id: str
    value: float
    verdict: bool
    marginal: bool
    quad_error_estimate: float
    params_used: SpectralParams | None = None
    beta: float | None = None
    c: float | None = None


def _profile(V):
    """Pointwise |V| as a vectorized callable, from a potential or callable."""
    if callable(V) and not hasattr(V, "norm"):
        return lambda x: np.asarray(V(np.asarray(x, dtype=float)), dtype=float)
    return lambda x: np.asarray(pointwise_norm(V, x), dtype=float)


def kernel_L(x, y, V, params: SpectralParams):
    """|V(x)|^1/2 sqrt(1 + (q + 2m min(x,y))^2) |V(y)|^1/2, broadcasting."""
    prof = _profile(V)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    s = params.q + 2.0 * params.m * np.minimum(x, y)
    return np.sqrt(prof(x)) * np.sqrt(1.0 + s * s) * np.sqrt(prof(y))


def kernels_L1_L2_Linf(x, y, V, params: SpectralParams, beta: float):
    """The rank-one part, its growth companion, and the Robin-side analogue.

    L1 = |V(x)|^1/2 |V(y)|^1/2
    L2 = |V(x)|^1/2 (q + 2m min) |V(y)|^1/2
    Linf = |V(x)|^1/2 (2m/beta + 2m min) |V(y)|^1/2
    Pointwise L <= L1 + L2.
    """
    if beta <= 0:
        raise ValueError("beta must be > 0")
    prof = _profile(V)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    root = np.sqrt(prof(x)) * np.sqrt(prof(y))
    mn = np.minimum(x, y)
    l1 = root
    l2 = root * (params.q + 2.0 * params.m * mn)
    linf = root * (2.0 * params.m / beta + 2.0 * params.m * mn)
    return l1, l2, linf


def _tensor_value(profile, grid: QuadGrid, weight_of_min) -> float:
    n = profile(grid.nodes)
    mn = np.minimum(grid.nodes[:, None], grid.nodes[None, :])
    v = grid.weights * n
    return float(v @ weight_of_min(mn) @ v)


def _certificate(condition_id, profile, grid, weight_of_min, prefactor=1.0,
                 params_used=None, beta=None, c=None) -> Certificate:
    coarse = prefactor * _tensor_value(profile, grid, weight_of_min)
    fine = prefactor * _tensor_value(profile, refine(grid), weight_of_min)
    err = abs(fine - coarse)
    value = coarse
    return Certificate(
        condition_id=condition_id,
        value=value,
        verdict=bool(value < 1.0),
        marginal=bool(abs(value - 1.0) < err),
        quad_error_estimate=err,
        params_used=params_used,
        beta=beta,
        c=c,
    )


def certificate_sufcon(V, params: SpectralParams, grid: QuadGrid) -> Certificate:
    """Full-matrix certificate with weight 1 + (q + 2m min(x,y))^2."""

    def w(mn):
        s = params.q + 2.0 * params.m * mn
        return 1.0 + s * s

    return _certificate(SUFCON, _profile(V), grid, w, params_used=params)


def certificate_alt(V, params: SpectralParams, grid: QuadGrid) -> Certificate:
    """Certificate for potentials supported in the (1,1) entry only.

    Weight max(1, 1/cot(alpha) + 2m min(x,y))^2; sharper than the full one
    for such potentials, and attained by point interactions.
    """
    if not V.is_entry11_only():
        raise ValueError("alt certificate requires V12 = V21 = V22 = 0")

    def w(mn):
        return np.maximum(1.0, 1.0 / params.cot_alpha + 2.0 * params.m * mn) ** 2

    return _certificate(SUFCON_ALT, _profile(V), grid, w, params_used=params)


def certificate_nonrel(V_scalar, m: float, beta: float, grid: QuadGrid) -> Certificate:
    """Robin Laplacian certificate with weight (2m/beta + 2m min(x,y))^2."""
    if m <= 0:
        raise ValueError("non-relativistic certificate requires m > 0")
    if beta <= 0:
        raise ValueError("beta must be > 0")

    def w(mn):
        return (2.0 * m / beta + 2.0 * m * mn) ** 2

    return _certificate(SUFCON_NON, _profile(V_scalar), grid, w, beta=beta)


def certificate_c(V, params: SpectralParams, c: float, grid: QuadGrid) -> Certificate:
    """Certificate for the speed-of-light dependent operator.

    (1/c^2) integral |V| [1 + (q_c + 2mc min)^2] |V| with
    q_c = max(cot(alpha)/(m c), m c / cot(alpha)); converges to the
    non-relativistic certificate with beta = 2 cot(alpha) as c grows.
    """
    if params.m <= 0:
        raise ValueError("c-dependent certificate requires m > 0")
    if c <= 0:
        raise ValueError("c must be > 0")
    m, cot = params.m, params.cot_alpha
    qc = max(cot / (m * c), m * c / cot)

    def w(mn):
        s = qc + 2.0 * m * c * mn
        return 1.0 + s * s

    return _certificate(
        SUFCON_C, _profile(V), grid, w, prefactor=1.0 / (c * c), params_used=params, c=c
    )


def nystrom_norm(kernel, grid: QuadGrid, tol: float = 1e-12, max_iter: int = 10_000) -> float:
    """Operator norm of a symmetric nonnegative integral kernel on [0, X].

    Nystrom matrix M_ij = sqrt(w_i) K(x_i, x_j) sqrt(w_j), largest
    eigenvalue by power iteration from the all-ones vector.  Deterministic;
    raises if the iteration does not settle.
    """
    x = grid.nodes
    K = np.asarray(kernel(x[:, None], x[None, :]), dtype=float)
    sw = np.sqrt(grid.weights)
    M = sw[:, None] * K * sw[None, :]
    v = np.ones(x.size)
    v /= math.sqrt(x.size)
    lam_prev = math.inf
    for _ in range(max_iter):
        w = M @ v
        lam = float(np.linalg.norm(w))
        if lam == 0.0:
            return 0.0
        v = w / lam
        if abs(lam - lam_prev) <= tol * max(1.0, lam):
            return lam
        lam_prev = lam
    raise RuntimeError("power iteration did not converge")


def split_check(V, params: SpectralParams, grid: QuadGrid, a_split: float) -> bool:
    """Sufficient condition via the rank-one split.

    True when ||L1|| <= 1 - a and ||L2|| <= a; then ||L|| < 1 by the
    triangle inequality (L <= L1 + L2 pointwise and all kernels are
    nonnegative).
    """
    if not (0.0 < a_split < 1.0):
        raise ValueError("a_split must lie in (0, 1)")
    prof = _profile(V)

    def l1(x, y):
        return np.sqrt(prof(x)) * np.sqrt(prof(y))

    def l2(x, y):
        return l1(x, y) * (params.q + 2.0 * params.m * np.minimum(x, y))

    return bool(
        nystrom_norm(l1, grid) <= 1.0 - a_split and nystrom_norm(l2, grid) <= a_split
    )
