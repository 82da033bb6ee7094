"""Matrix potentials on the half-line, their norm profiles and quadrature grids.

A potential is any object with a ``matrix(x)`` method returning 2x2 complex
values (vectorized to shape (n, 2, 2)), a ``norm(x)`` method returning the
pointwise operator norm, a ``default_domain()`` truncation length, a
``scaled(s)`` constructor and an ``is_entry11_only()`` structure probe.
Three concrete families are provided plus CSV ingestion of sampled tables.
"""

from __future__ import annotations

import csv
import math
import warnings
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import op_norm_entries

CSV_COLUMNS = ["x", "reV11", "imV11", "reV12", "imV12", "reV21", "imV21", "reV22", "imV22"]


@dataclass(frozen=True)
class GaussianBump11:
    """t times a normal density of width sigma at a, placed in entry (1,1).

    The total integral of the (1,1) entry is t up to the truncation of the
    left tail at x = 0; that truncation error is below 1e-12 once a >= 8
    sigma, otherwise a warning is emitted at construction.
    """

    t: float
    a: float
    sigma: float

    def __post_init__(self):
        if self.sigma <= 0:
            raise ValueError("sigma must be > 0")
        if self.a < 8.0 * self.sigma:
            warnings.warn(
                "Gaussian bump overlaps x = 0; its mass is truncated without "
                "renormalization",
                RuntimeWarning,
                stacklevel=2,
            )

    def _density(self, x):
        x = np.asarray(x, dtype=float)
        return np.exp(-0.5 * ((x - self.a) / self.sigma) ** 2) / (
            self.sigma * math.sqrt(2.0 * math.pi)
        )

    def matrix(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros(x.shape + (2, 2), dtype=complex)
        out[..., 0, 0] = self.t * self._density(x)
        return out

    def norm(self, x):
        return abs(self.t) * self._density(x)

    def default_domain(self) -> float:
        return self.a + 10.0 * self.sigma

    def refinement_window(self):
        return (max(0.0, self.a - 10.0 * self.sigma), self.a + 10.0 * self.sigma)

    def scaled(self, s: float) -> "GaussianBump11":
        return GaussianBump11(t=s * self.t, a=self.a, sigma=self.sigma)

    def is_entry11_only(self) -> bool:
        return True


@dataclass(frozen=True, eq=False)
class ExpDecay:
    """Constant 2x2 amplitude matrix times exp(-rate x), rate > 0."""

    amplitudes: np.ndarray
    rate: float

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2, 2):
            raise ValueError(f"amplitudes must be 2x2, got shape {amps.shape}")
        if not np.all(np.isfinite(amps.real) & np.isfinite(amps.imag)):
            raise ValueError("non-finite amplitude entry")
        if not (math.isfinite(self.rate) and self.rate > 0):
            raise ValueError("rate must be finite and > 0")
        object.__setattr__(self, "amplitudes", amps)

    def matrix(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        return np.exp(-self.rate * x)[..., None, None] * self.amplitudes

    def norm(self, x):
        x = np.asarray(x, dtype=float)
        a = self.amplitudes
        amp_norm = op_norm_entries(a[0, 0], a[0, 1], a[1, 0], a[1, 1])
        return amp_norm * np.exp(-self.rate * x)

    def default_domain(self) -> float:
        return 40.0 / self.rate

    def refinement_window(self):
        return None

    def scaled(self, s: float) -> "ExpDecay":
        return ExpDecay(amplitudes=s * self.amplitudes, rate=self.rate)

    def is_entry11_only(self) -> bool:
        a = self.amplitudes
        return a[0, 1] == 0 and a[1, 0] == 0 and a[1, 1] == 0


@dataclass(frozen=True, eq=False)
class SampledPotential:
    """Matrix values on a strictly increasing grid, piecewise-linear between.

    Evaluation outside [grid[0], grid[-1]] returns zero.
    """

    grid: np.ndarray
    values: np.ndarray  # shape (n, 2, 2)

    def __post_init__(self):
        g = np.asarray(self.grid, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if g.ndim != 1 or g.size < 1:
            raise ValueError("grid must be a nonempty 1-d array")
        if np.any(g < 0):
            raise ValueError("grid points must be >= 0")
        if g.size > 1 and np.any(np.diff(g) <= 0):
            raise ValueError("grid not strictly increasing")
        if v.shape != (g.size, 2, 2):
            raise ValueError(f"values must have shape (n, 2, 2), got {v.shape}")
        if not np.all(np.isfinite(v.real) & np.isfinite(v.imag)):
            raise ValueError("non-finite potential entry")
        object.__setattr__(self, "grid", g)
        object.__setattr__(self, "values", v)

    def matrix(self, x):
        x = np.atleast_1d(np.asarray(x, dtype=float))
        out = np.zeros(x.shape + (2, 2), dtype=complex)
        inside = (x >= self.grid[0]) & (x <= self.grid[-1])
        if np.any(inside):
            xi = x[inside]
            for i in range(2):
                for j in range(2):
                    col = self.values[:, i, j]
                    out[inside, i, j] = np.interp(xi, self.grid, col.real) + 1j * np.interp(
                        xi, self.grid, col.imag
                    )
        return out

    def norm(self, x):
        m = self.matrix(x)
        return op_norm_entries(m[..., 0, 0], m[..., 0, 1], m[..., 1, 0], m[..., 1, 1])

    def default_domain(self) -> float:
        return float(self.grid[-1])

    def refinement_window(self):
        return None

    def scaled(self, s: float) -> "SampledPotential":
        return SampledPotential(grid=self.grid.copy(), values=s * self.values)

    def is_entry11_only(self) -> bool:
        v = self.values
        return bool(
            np.all(v[:, 0, 1] == 0) and np.all(v[:, 1, 0] == 0) and np.all(v[:, 1, 1] == 0)
        )


@dataclass(frozen=True, eq=False)
class QuadGrid:
    """Composite Gauss-Legendre rule on [0, X]; nodes are panel-interior.

    ``edges`` holds the panel boundaries (length panels + 1, from 0 to X),
    which makes uniform refinement exact.
    """

    nodes: np.ndarray
    weights: np.ndarray
    x_max: float
    panels: int
    order: int
    edges: np.ndarray


def _grid_from_edges(edges: np.ndarray, order: int) -> QuadGrid:
    base_x, base_w = np.polynomial.legendre.leggauss(order)
    mid = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * np.diff(edges)
    nodes = (mid[:, None] + half[:, None] * base_x[None, :]).ravel()
    weights = (half[:, None] * base_w[None, :]).ravel()
    return QuadGrid(
        nodes=nodes,
        weights=weights,
        x_max=float(edges[-1]),
        panels=edges.size - 1,
        order=order,
        edges=edges,
    )


def make_grid(X: float, panels: int, order: int) -> QuadGrid:
    """Composite Gauss-Legendre grid of `panels` equal panels on [0, X]."""
    if not (X > 0):
        raise ValueError(f"domain length must be > 0, got {X}")
    if panels < 1:
        raise ValueError(f"need at least one panel, got {panels}")
    if not (2 <= order <= 64):
        raise ValueError(f"order must lie in [2, 64], got {order}")
    return _grid_from_edges(np.linspace(0.0, X, panels + 1), order)


def make_graded_grid(breakpoints, panels_per_segment, order: int) -> QuadGrid:
    """Composite Gauss-Legendre grid with per-segment panel counts.

    breakpoints must be strictly increasing and start at 0.
    """
    bp = np.asarray(breakpoints, dtype=float)
    if bp.ndim != 1 or bp.size < 2 or bp[0] != 0.0 or np.any(np.diff(bp) <= 0):
        raise ValueError("breakpoints must be strictly increasing and start at 0")
    counts = [int(p) for p in panels_per_segment]
    if len(counts) != bp.size - 1 or any(p < 1 for p in counts):
        raise ValueError("need one panel count >= 1 per segment")
    if not (2 <= order <= 64):
        raise ValueError(f"order must lie in [2, 64], got {order}")
    edges = [np.array([0.0])]
    for lo, hi, p in zip(bp[:-1], bp[1:], counts):
        edges.append(np.linspace(lo, hi, p + 1)[1:])
    return _grid_from_edges(np.concatenate(edges), order)


def refine(grid: QuadGrid) -> QuadGrid:
    """Bisect every panel, keeping the panel structure and order."""
    e = grid.edges
    mids = 0.5 * (e[:-1] + e[1:])
    new_edges = np.empty(2 * grid.panels + 1)
    new_edges[0::2] = e
    new_edges[1::2] = mids
    return _grid_from_edges(new_edges, grid.order)


def default_grid_for(V, panels: int = 64, order: int = 8, x_max: float | None = None) -> QuadGrid:
    """A grid adapted to the potential: panels concentrate on a sharp bump."""
    X = float(x_max) if x_max is not None else V.default_domain()
    window = V.refinement_window()
    if window is None:
        return make_grid(X, panels, order)
    lo, hi = max(0.0, window[0]), min(X, window[1])
    if lo <= 0.0 and hi >= X:
        return make_grid(X, panels, order)
    inner = max(8, (3 * panels) // 4)
    outer = max(4, (panels - inner) // 2)
    if lo <= 0.0:
        return make_graded_grid([0.0, hi, X], [inner, outer], order)
    if hi >= X:
        return make_graded_grid([0.0, lo, X], [outer, inner], order)
    return make_graded_grid([0.0, lo, hi, X], [outer, inner, outer], order)


def pointwise_norm(V, x):
    """Operator norm of V(x); zero outside the declared support."""
    out = V.norm(np.asarray(x, dtype=float))
    if np.ndim(x) == 0:
        return float(np.asarray(out).reshape(()))
    return out


class WeightedL1(NamedTuple):
    l1: float
    l1_weighted: float
    truncation_warning: bool


def weighted_l1(V, grid: QuadGrid) -> WeightedL1:
    """Quadrature of |V| and |V| (1 + x) over the grid.

    The truncation warning fires when the tail integral of |V| on
    [X, 1.5 X], probed with the same order, exceeds 1% of the value.
    """
    n = pointwise_norm(V, grid.nodes)
    l1 = float(np.sum(grid.weights * n))
    l1w = float(np.sum(grid.weights * n * (1.0 + grid.nodes)))
    tail_panels = max(2, grid.panels // 2)
    tail_edges = np.linspace(grid.x_max, 1.5 * grid.x_max, tail_panels + 1)
    tail_grid = _grid_from_edges(tail_edges, grid.order)
    tail = float(np.sum(tail_grid.weights * pointwise_norm(V, tail_grid.nodes)))
    warn = bool(l1 > 0 and tail > 0.01 * l1)
    return WeightedL1(l1=l1, l1_weighted=l1w, truncation_warning=warn)


def load_csv(path) -> SampledPotential:
    """Read a sampled potential table.

    Expected header: x,reV11,imV11,reV12,imV12,reV21,imV21,reV22,imV22.
    Errors carry the 1-based line number of the offending row.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError("empty potential file: missing header row") from None
        header = [h.strip() for h in header]
        for col in CSV_COLUMNS:
            if col not in header:
                raise ValueError(f"schema error: missing column '{col}'")
        idx = [header.index(col) for col in CSV_COLUMNS]
        xs, rows = [], []
        for ln, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) < len(header):
                raise ValueError(f"line {ln}: malformed row: expected {len(header)} fields")
            try:
                vals = [float(row[i]) for i in idx]
            except ValueError:
                raise ValueError(f"line {ln}: malformed row: non-numeric field") from None
            if not all(math.isfinite(v) for v in vals):
                raise ValueError(f"line {ln}: non-finite value")
            if xs and vals[0] <= xs[-1]:
                raise ValueError(f"line {ln}: grid not strictly increasing")
            xs.append(vals[0])
            rows.append(vals[1:])
    if not xs:
        raise ValueError("potential file has no data rows")
    data = np.asarray(rows, dtype=float)
    values = (data[:, 0::2] + 1j * data[:, 1::2]).reshape(-1, 2, 2)
    return SampledPotential(grid=np.asarray(xs), values=values)
