"""Spectral parameters, 2x2 matrix utilities and branch-correct coefficients.

The free half-line Dirac operator with mass m >= 0 and boundary condition
psi1(0) * cot(alpha) = psi2(0), alpha in (0, pi/2), has purely continuous
spectrum (-inf, -m] u [m, +inf).  Everything downstream (kernels, bounds,
certificates) is driven by the two coefficients

    k(z)    = sqrt(z^2 - m^2)     with Im k(z) > 0 off the real spectrum,
    zeta(z) = (z + m) / k(z),

evaluated on the branch that is continuous from the upper half-plane.  On the
spectrum itself (real u with |u| > m) this limit is real, positive for u > m
and negative for u < -m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np


class SpectralEdgeError(ValueError):
    """Raised when a kernel coefficient is requested at z = +m or z = -m."""


class RegionTag(Enum):
    RESOLVENT_SET = "resolvent_set"
    SPECTRUM_POSITIVE = "spectrum_positive"
    SPECTRUM_NEGATIVE = "spectrum_negative"
    EDGE = "edge"


@dataclass(frozen=True)
class SpectralParams:
    """Mass and boundary angle of the half-line Dirac operator.

    alpha is the boundary angle in radians, restricted to the open interval
    (0, pi/2); outside it the free operator either has a bound state or a
    non-removable kernel singularity at z = +-m, so such angles are rejected.
    """

    m: float
    alpha: float

    def __post_init__(self):
        if not (math.isfinite(self.m) and self.m >= 0.0):
            raise ValueError(f"mass must be finite and >= 0, got {self.m}")
        if not (math.isfinite(self.alpha) and 0.0 < self.alpha < math.pi / 2):
            raise ValueError(
                f"boundary angle must lie strictly in (0, pi/2), got {self.alpha}"
            )

    @classmethod
    def from_cot(cls, m: float, cot_alpha: float) -> "SpectralParams":
        """Build parameters from cot(alpha) > 0 instead of the angle."""
        if not (math.isfinite(cot_alpha) and cot_alpha > 0.0):
            raise ValueError(f"cot(alpha) must be finite and > 0, got {cot_alpha}")
        return cls(m=m, alpha=math.atan(1.0 / cot_alpha))

    @property
    def cot_alpha(self) -> float:
        return math.cos(self.alpha) / math.sin(self.alpha)

    @property
    def q(self) -> float:
        c = self.cot_alpha
        return max(c, 1.0 / c)


@dataclass(frozen=True)
class Mat2:
    """A 2x2 complex matrix; the value type of all Dirac kernels."""

    a11: complex
    a12: complex
    a21: complex
    a22: complex

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22"):
            v = complex(getattr(self, name))
            if not (math.isfinite(v.real) and math.isfinite(v.imag)):
                raise ValueError(f"non-finite matrix entry {name} = {v!r}")

    @classmethod
    def from_array(cls, a) -> "Mat2":
        a = np.asarray(a)
        if a.shape != (2, 2):
            raise ValueError(f"expected a 2x2 array, got shape {a.shape}")
        return cls(complex(a[0, 0]), complex(a[0, 1]), complex(a[1, 0]), complex(a[1, 1]))

    def as_array(self) -> np.ndarray:
        return np.array([[self.a11, self.a12], [self.a21, self.a22]], dtype=complex)

    @property
    def norm(self) -> float:
        return op_norm(self)


def q_of(params: SpectralParams) -> float:
    """max(cot(alpha), 1/cot(alpha)); equals 1 only in the symmetric case."""
    return params.q


def k_of(z, m: float):
    """sqrt(z^2 - m^2) on the branch with Im k > 0 off the real spectrum.

    For real u with |u| > m the value is the boundary limit from the upper
    half-plane: sign(u) * sqrt(u^2 - m^2), purely real.  Inside the gap
    (-m, m) both one-sided limits coincide with i*sqrt(m^2 - u^2).  Accepts
    scalars or arrays (elementwise).  Raises SpectralEdgeError at z = +-m.
    """
    z = np.asarray(z, dtype=complex)
    w = z * z - m * m
    if np.any(w == 0):
        raise SpectralEdgeError("kernel singular at spectral edge")
    k = np.sqrt(w)
    # principal sqrt has Re >= 0; move to the Im k > 0 half where needed
    k = np.where(k.imag < 0, -k, k)
    # purely real k happens only on the spectrum; take the upper limit there
    k = np.where((k.imag == 0) & (z.real < 0), -k, k)
    if z.ndim == 0:
        return complex(k)
    return k


def zeta_of(z, m: float):
    """(z + m) / k(z) on the same branch as k_of.

    Unimodular on the spectrum boundary values and equal to 1 in the massless
    case on the positive imaginary axis.
    """
    k = k_of(z, m)
    z = np.asarray(z, dtype=complex)
    zeta = (z + m) / k
    if z.ndim == 0:
        return complex(zeta)
    return zeta


def op_norm_entries(a11, a12, a21, a22):
    """Largest singular value of [[a11, a12], [a21, a22]], elementwise.

    Closed form from the eigenvalues of the 2x2 Gram matrix; exact for
    diagonal and rank-one matrices.
    """
    a11 = np.asarray(a11, dtype=complex)
    g11 = np.abs(a11) ** 2 + np.abs(a21) ** 2
    g22 = np.abs(a12) ** 2 + np.abs(a22) ** 2
    g12 = np.conj(a11) * a12 + np.conj(a21) * np.asarray(a22, dtype=complex)
    half_tr = 0.5 * (g11 + g22)
    disc = np.sqrt((0.5 * (g11 - g22)) ** 2 + np.abs(g12) ** 2)
    out = np.sqrt(half_tr + disc)
    if np.ndim(out) == 0:
        return float(out)
    return out


def op_norm(M) -> float:
    """Operator norm on C^2 of a Mat2 (or 2x2 array-like)."""
    if isinstance(M, Mat2):
        entries = (M.a11, M.a12, M.a21, M.a22)
    else:
        a = np.asarray(M, dtype=complex)
        if a.shape != (2, 2):
            raise ValueError(f"expected a 2x2 matrix, got shape {a.shape}")
        entries = (a[0, 0], a[0, 1], a[1, 0], a[1, 1])
    for v in entries:
        v = complex(v)
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ValueError(f"non-finite matrix entry {v!r}")
    return float(op_norm_entries(*entries))


def classify(z, m: float, im_tol: float = 0.0) -> RegionTag:
    """Locate z relative to the spectrum (-inf, -m] u [m, +inf).

    The test for a real z is |Im z| <= im_tol (exact by default); the
    comparisons against +-m on the real part are exact.
    """
    z = complex(z)
    if abs(z.imag) > im_tol:
        return RegionTag.RESOLVENT_SET
    u = z.real
    if u == m or u == -m:
        return RegionTag.EDGE
    if u > m:
        return RegionTag.SPECTRUM_POSITIVE
    if u < -m:
        return RegionTag.SPECTRUM_NEGATIVE
    return RegionTag.RESOLVENT_SET
