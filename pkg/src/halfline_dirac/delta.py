"""Bound states created by an attractive point interaction in entry (1,1).

A coupling t at position a > 0 produces at most one eigenvalue in the
spectral gap (-m, m); it exists precisely for t below the critical coupling
t0 = -cot(alpha) / (1 + 2 m a cot(alpha)) and is the unique root of

    t = implicit_rhs(lambda)

with implicit_rhs strictly negative on the whole gap.  The eigenvalue
emerges from the upper edge +m as t crosses t0 from above and moves toward
-m as t decreases.  t_star = (1 + (q + 2 m a)^2)^{-1/2} is the coupling at
which the full-matrix certificate reaches 1; the entry-(1,1) certificate
reaches 1 exactly at t0, which is what makes it optimal for this family.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import SpectralParams


@dataclass(frozen=True)
class DeltaConfig:
    """Point-interaction coupling t at position a > 0 on top of params (m > 0)."""

    t: float
    a: float
    params: SpectralParams

    def __post_init__(self):
        if self.a <= 0:
            raise ValueError("interaction position must satisfy a > 0")
        if self.params.m <= 0:
            raise ValueError("bound-state analysis requires m > 0")


@dataclass(frozen=True)
class EigenResult:
    """An eigenvalue in (-m, m) with the residual of the implicit equation."""

    lam: float
    residual: float
    bracket: tuple


def implicit_rhs(lam, m: float, a: float, params: SpectralParams):
    """Right-hand side of the eigenvalue equation; negative on all of (-m, m).

    Evaluated in an overflow-safe form with the growing exponential folded
    into the denominator.  Accepts scalars or arrays.
    """
    lam_arr = np.asarray(lam, dtype=float)
    if np.any((lam_arr <= -m) | (lam_arr >= m)):
        raise ValueError("eigenvalue parameter must lie strictly inside (-m, m)")
    cot = params.cot_alpha
    kappa = np.sqrt(m * m - lam_arr * lam_arr)
    num = cot * kappa + m - lam_arr
    # denominator times exp(-a kappa):
    # cot (m+lam) sinh(a k) + k cosh(a k) = 0.5 [(cot (m+lam) + k)
    #   - (cot (m+lam) - k) exp(-2 a k)] exp(a k)
    p = cot * (m + lam_arr)
    den = 0.5 * ((p + kappa) - (p - kappa) * np.exp(-2.0 * a * kappa))
    value = -num / den
    if np.ndim(lam) == 0:
        return float(value)
    return value


def t_star(m: float, a: float, params: SpectralParams) -> float:
    """Coupling strength at which the full-matrix certificate equals 1."""
    s = params.q + 2.0 * m * a
    return 1.0 / math.sqrt(1.0 + s * s)


def t_zero(m: float, a: float, params: SpectralParams) -> float:
    """Critical coupling below which a gap eigenvalue exists; always < 0."""
    cot = params.cot_alpha
    return -cot / (1.0 + 2.0 * m * a * cot)


def solve_eigenvalue(t: float, m: float, a: float, params: SpectralParams,
                     scan_panels: int = 1024):
    """The unique gap eigenvalue for coupling t, or None when t >= t0.

    Strategy: sample the gap on a uniform grid, bracket the single sign
    change of implicit_rhs(lambda) - t, bisect the bracket down to 1e-12 and
    polish once with a secant step.
    """
    if m <= 0 or a <= 0:
        raise ValueError("solve_eigenvalue requires m > 0 and a > 0")
    t0 = t_zero(m, a, params)
    if t >= t0:
        return None
    delta = 1e-9 * m
    lam_grid = np.linspace(-m + delta, m - delta, scan_panels + 1)
    g = implicit_rhs(lam_grid, m, a, params) - t
    sign_flips = np.nonzero(np.sign(g[:-1]) * np.sign(g[1:]) <= 0)[0]
    if sign_flips.size == 0:
        raise RuntimeError(
            f"no sign change found for t={t} in ({-m + delta}, {m - delta}); "
            f"rhs range [{g.min() + t}, {g.max() + t}]"
        )
    i = int(sign_flips[0])
    lo, hi = float(lam_grid[i]), float(lam_grid[i + 1])
    bracket = (lo, hi)
    glo = implicit_rhs(lo, m, a, params) - t
    while hi - lo > 1e-12:
        mid = 0.5 * (lo + hi)
        gmid = implicit_rhs(mid, m, a, params) - t
        if gmid == 0.0:
            lo = hi = mid
            break
        if (glo < 0) == (gmid < 0):
            lo, glo = mid, gmid
        else:
            hi = mid
    lam = 0.5 * (lo + hi)
    # one secant polish on the bracket endpoints
    glo = implicit_rhs(lo, m, a, params) - t
    ghi = implicit_rhs(hi, m, a, params) - t
    if ghi != glo:
        cand = lo - glo * (hi - lo) / (ghi - glo)
        if -m < cand < m:
            if abs(implicit_rhs(cand, m, a, params) - t) <= abs(
                implicit_rhs(lam, m, a, params) - t
            ):
                lam = cand
    residual = abs(t - implicit_rhs(lam, m, a, params))
    return EigenResult(lam=float(lam), residual=float(residual), bracket=bracket)


def eigen_curve(t_min: float, t_max: float, n: int, m: float, a: float,
                params: SpectralParams) -> np.ndarray:
    """Eigenvalue as a function of the coupling on a uniform t-grid.

    Returns an (n, 2) array of rows (t, lambda); requires t_max <= t0 so
    that every point carries a bound state.
    """
    t0 = t_zero(m, a, params)
    if t_max > t0:
        raise ValueError(f"t_max must not exceed the critical coupling {t0}")
    ts = np.linspace(t_min, t_max, n)
    rows = np.empty((n, 2))
    for i, t in enumerate(ts):
        res = solve_eigenvalue(float(t), m, a, params)
        if res is None:
            raise RuntimeError(f"expected a bound state at t={t}")
        rows[i, 0] = t
        rows[i, 1] = res.lam
    return rows


def certificate_delta(t: float, a: float, params: SpectralParams, which: str = "full") -> float:
    """Closed-form certificate value of the point interaction.

    which = "full": t^2 [1 + (q + 2ma)^2]; which = "alt":
    t^2 max(1, 1/cot(alpha) + 2ma)^2.  The alt value equals 1 exactly at
    t = t0 whenever 1/cot(alpha) + 2ma > 1.
    """
    m = params.m
    if m <= 0 or a <= 0:
        raise ValueError("certificate_delta requires m > 0 and a > 0")
    if which == "full":
        s = params.q + 2.0 * m * a
        return t * t * (1.0 + s * s)
    if which == "alt":
        return t * t * max(1.0, 1.0 / params.cot_alpha + 2.0 * m * a) ** 2
    raise ValueError(f"unknown certificate flavor {which!r}")


def optimality_check(epsilon: float, m: float, a: float, params: SpectralParams,
                     epsilon_max: float = 0.5) -> bool:
    """Certify sharpness of the alt certificate at coupling t0 sqrt(1 + eps).

    True iff that coupling produces a gap eigenvalue while the alt
    certificate value equals 1 + eps to 1e-12 relative.  Requires the
    hypothesis 1/cot(alpha) + 2ma > 1.
    """
    if 1.0 / params.cot_alpha + 2.0 * m * a <= 1.0:
        raise ValueError("optimality hypothesis 1/cot(alpha) + 2*m*a > 1 violated")
    if not (0.0 <= epsilon <= epsilon_max):
        raise ValueError(f"epsilon must lie in [0, {epsilon_max}]")
    t = t_zero(m, a, params) * math.sqrt(1.0 + epsilon)
    res = solve_eigenvalue(t, m, a, params)
    if res is None:
        return False
    pm = SpectralParams(m=m, alpha=params.alpha)
    cert = certificate_delta(t, a, pm, which="alt")
    return abs(cert - (1.0 + epsilon)) <= 1e-12 * (1.0 + epsilon)


def interface_residual(lam: float, t: float, m: float, a: float,
                       params: SpectralParams) -> float:
    """Residual of the matching condition at the interaction point.

    Builds the solution branch on (0, a) satisfying the boundary condition
    and the decaying branch on (a, inf), glues them continuously in the
    first component, and evaluates the jump relation

        [[i t/2, -i], [1, 0]] psi(a+) + [[i t/2, i], [-1, 0]] psi(a-)

    returning its Euclidean norm relative to |psi(a-)|.  Zero exactly when
    (lam, t) solves the implicit eigenvalue equation.
    """
    if not (-m < lam < m):
        raise ValueError("candidate eigenvalue must lie strictly inside (-m, m)")
    cot = params.cot_alpha
    kappa = math.sqrt(m * m - lam * lam)
    A = (m + lam) * cot + kappa
    B = kappa - (m + lam) * cot
    # branch on (0, a), scaled by exp(-kappa a) for overflow safety
    damp = math.exp(-2.0 * kappa * a)
    psi_minus = np.array(
        [A + B * damp, kappa * (A - B * damp) / (m + lam)], dtype=complex
    )
    # decaying branch on (a, inf), glued continuously in the first component
    psi_plus = psi_minus[0] * np.array([1.0, -kappa / (m + lam)], dtype=complex)
    m_plus = np.array([[1j * t / 2.0, -1j], [1.0, 0.0]], dtype=complex)
    m_minus = np.array([[1j * t / 2.0, 1j], [-1.0, 0.0]], dtype=complex)
    r = m_plus @ psi_plus + m_minus @ psi_minus
    scale = float(np.linalg.norm(psi_minus))
    if scale == 0.0:
        raise RuntimeError("degenerate boundary branch: normalization vanished")
    return float(np.linalg.norm(r) / scale)
