"""Densities, weighted measures of sets, F-concavity, and surface quotients.

A measure here is always d(mu) = phi dx with phi sampled per cell of a
uniform grid (midpoint rule).  Staircase sets are integrated column by
column: the base contribution is the midpoint value times the cell area,
the vertical contribution is exact overlap against the density's vertical
cells, so constant densities reproduce Lebesgue volume to rounding.

The surface-area quantities are one-sided difference quotients on a
geometric epsilon schedule; the liminf is operationalized as the minimum
of the last three quotients, which lower-bounds the true liminf because
the inner approximation only ever loses mass.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .curvsum import (
    T_FREE,
    WITH_T,
    SumSpec,
    curvilinear_sum_grid,
    scalar_dilate,
    staircase_sum_volume_exact,
)
from .errors import (
    CoverageError,
    DegenerateInputError,
    DomainError,
    RangeError,
    RegimeError,
)
from .funcs import GridFunction, sup_convolve
from .means import PowerVector, mean_alpha
from .reports import InequalityReport
from .sets import Grid, GridPointSet, SectionProfile, StaircaseSet, superlevel

EPS_SCHEDULE = tuple(2.0**-j for j in range(4, 11))

_SPOT_SEED = 1723
_SPOT_TRIPLES = 60


# ---------------------------------------------------------------------------
# densities


@dataclass(frozen=True)
class DensityMeasure:
    """Measure with density phi on a grid, optionally tagged alpha-concave.

    A set tag is spot-verified on construction: for lattice-aligned
    triples x, y, (1-s)x + sy with phi(x) phi(y) > 0 the sampled density
    must dominate the s-weighted alpha-mean of the endpoint values.  The
    check samples, it does not prove.
    """

    density: GridFunction
    alpha_concavity: float | None = None

    def __post_init__(self) -> None:
        if self.alpha_concavity is not None:
            self._spot_verify()

    @property
    def grid(self) -> Grid:
        return self.density.grid

    @property
    def is_lebesgue(self) -> bool:
        return bool(np.all(self.density.values == 1.0))

    def total_mass(self) -> float:
        return self.density.integral

    def _spot_verify(self) -> None:
        alpha = float(self.alpha_concavity)
        vals = self.density.values
        shape = vals.shape
        support = np.argwhere(vals > 0)
        if support.shape[0] < 2:
            return
        rng = np.random.default_rng(_SPOT_SEED)
        for _ in range(_SPOT_TRIPLES):
            i = support[rng.integers(support.shape[0])]
            # steps of 4 keep all three interior combination points on cells
            w = rng.integers(-3, 4, size=len(shape))
            j = i + 4 * w
            if np.any(j < 0) or np.any(j >= shape):
                continue
            fi = float(vals[tuple(i)])
            fj = float(vals[tuple(j)])
            if fi <= 0.0 or fj <= 0.0:
                continue
            for num in (1, 2, 3):
                s = num / 4.0
                mid = tuple(i + num * w)
                have = float(vals[mid])
                want = mean_alpha(fi, fj, s, alpha)
                if have < want - 1e-9:
                    raise DomainError(
                        f"declared {alpha}-concavity fails at cells {tuple(i)}, "
                        f"{tuple(j)}, s={s}: {have} < {want}"
                    )

    def to_json(self) -> dict:
        out = self.density.to_json()
        out["alpha_concavity"] = self.alpha_concavity
        return out

    @classmethod
    def from_json(cls, data: dict) -> "DensityMeasure":
        tag = data.get("alpha_concavity")
        return cls(GridFunction.from_json(data), None if tag is None else float(tag))


def _midpoints(grid: Grid) -> np.ndarray:
    return grid.cell_lower_corners() + grid.spacing / 2.0


def lebesgue(grid: Grid) -> DensityMeasure:
    return DensityMeasure(GridFunction(grid, np.ones(grid.shape)), math.inf)


def indicator_density(grid: Grid, lo: tuple[int, ...], hi: tuple[int, ...]) -> DensityMeasure:
    """Indicator of the inclusive cell-index box [lo, hi]; +inf-concave."""
    if len(lo) != grid.ndim or len(hi) != grid.ndim:
        raise RangeError("index corners must match grid dimension")
    vals = np.zeros(grid.shape)
    sel = tuple(slice(a, b + 1) for a, b in zip(lo, hi))
    vals[sel] = 1.0
    return DensityMeasure(GridFunction(grid, vals), math.inf)


def tent_density(grid: Grid, center: tuple[float, ...], scale: float) -> DensityMeasure:
    """(1 - |x - c|_1 / scale)_+ sampled at midpoints; 1-concave."""
    if scale <= 0:
        raise RangeError("scale must be positive")
    mids = _midpoints(grid)
    dist = np.abs(mids - np.asarray(center, dtype=float)).sum(axis=1)
    vals = np.maximum(0.0, 1.0 - dist / scale).reshape(grid.shape)
    return DensityMeasure(GridFunction(grid, vals), 1.0)


def gaussian_density(grid: Grid, center: tuple[float, ...], sigma: float) -> DensityMeasure:
    """exp(-|x-c|^2 / (2 sigma^2)) at midpoints; log-concave (alpha = 0)."""
    if sigma <= 0:
        raise RangeError("sigma must be positive")
    mids = _midpoints(grid)
    d2 = ((mids - np.asarray(center, dtype=float)) ** 2).sum(axis=1)
    vals = np.exp(-d2 / (2.0 * sigma * sigma)).reshape(grid.shape)
    return DensityMeasure(GridFunction(grid, vals), 0.0)


# ---------------------------------------------------------------------------
# integration


def _cell_indices(points: np.ndarray, grid: Grid, ndim: int) -> tuple:
    """Grid cell indices containing the given points, or CoverageError."""
    origin = np.asarray(grid.origin[:ndim])
    idx = np.floor((points - origin) / grid.spacing).astype(np.int64)
    shape = np.asarray(grid.shape[:ndim])
    if np.any(idx < 0) or np.any(idx >= shape):
        raise CoverageError("set extends beyond the density grid")
    return tuple(idx.T)


def _column_masses(a: StaircaseSet, mu: DensityMeasure) -> np.ndarray:
    """Integral of the density over each base cell's column, full grid shape.

    The density grid may live on the base space (values constant in the
    vertical, column integral = phi * height, exact) or on the ambient
    space (midpoint rule per vertical density cell with exact overlap
    lengths against [0, height]).
    """
    nb = a.base_dim
    dgrid = mu.grid
    heights = a.heights.ravel()
    corners = a.grid.cell_lower_corners()
    mids = corners + a.grid.spacing / 2.0
    mask = heights > 0
    out = np.zeros(heights.shape)
    if not np.any(mask):
        return out.reshape(a.grid.shape)
    mids = mids[mask]
    hv = heights[mask]
    if dgrid.ndim == nb:
        phi = mu.density.values[_cell_indices(mids, dgrid, nb)]
        out[mask] = phi * hv
        return out.reshape(a.grid.shape)
    if dgrid.ndim != nb + 1:
        raise DomainError(
            f"density dimension {dgrid.ndim} matches neither base {nb} nor ambient"
        )
    z0 = dgrid.origin[-1]
    hz = dgrid.spacing
    top = z0 + dgrid.shape[-1] * hz
    if z0 > 1e-12 or np.any(hv > top + 1e-9):
        raise CoverageError("columns extend beyond the density grid vertically")
    base_idx = _cell_indices(mids, dgrid, nb)
    cols = mu.density.values[base_idx]  # (m, K)
    k = np.arange(dgrid.shape[-1])
    z_lo = z0 + k * hz
    z_hi = z_lo + hz
    overlap = np.clip(np.minimum(hv[:, None], z_hi) - np.maximum(0.0, z_lo), 0.0, None)
    out[mask] = np.sum(cols * overlap, axis=1)
    return out.reshape(a.grid.shape)


def measure_of(a, mu: DensityMeasure) -> float:
    """mu-measure of a staircase set or a grid point set."""
    if isinstance(a, StaircaseSet):
        col = _column_masses(a, mu)
        return float(np.sum(col)) * a.grid.spacing**a.base_dim
    if isinstance(a, GridPointSet):
        if a.count == 0:
            return 0.0
        if mu.grid.ndim != a.dim:
            raise DomainError("density dimension does not match point set")
        mids = a.coords + a.spacing / 2.0
        phi = mu.density.values[_cell_indices(mids, mu.grid, a.dim)]
        return float(np.sum(phi)) * a.spacing**a.dim
    raise DomainError(f"cannot integrate over {type(a).__name__}")


def mu_section_quantities(
    a: StaircaseSet, mu: DensityMeasure, k: int
) -> tuple[SectionProfile, float, Callable[[float], GridPointSet]]:
    """Fiber masses over the last n-k base axes, their sup, and a thresholder.

    Returns (profile, m, C) with profile.values[u] the mu-mass of the fiber
    through u, m its maximum, and C(r) the grid cells where the fiber mass
    reaches r*m.  With a constant density this is sets.section_profile and
    sets.superlevel on the same staircase.
    """
    nb = a.base_dim
    if not 0 <= k <= nb:
        raise RangeError(f"k must lie in [0, {nb}], got {k}")
    col = _column_masses(a, mu)
    h = a.grid.spacing
    vals = col
    for _ in range(k):
        vals = vals.sum(axis=0) * h
    if k == nb:
        profile = SectionProfile(k, None, np.asarray(vals, dtype=float).reshape(()), h)
    else:
        sub = Grid(a.grid.origin[k:], h, a.grid.shape[k:])
        profile = SectionProfile(k, sub, np.asarray(vals, dtype=float), h)
    m = profile.sup_norm
    if m <= 0.0:
        raise DegenerateInputError("all fibers have zero mass")
    return profile, m, lambda r: superlevel(profile, r)


# ---------------------------------------------------------------------------
# F-maps


F_POWER = "power"
F_LOG = "log"
F_LINEAR = "linear"

_F_CHECK_POINTS = (0.25, 0.5, 1.0, 2.0, 4.0)


@dataclass(frozen=True)
class FSpec:
    """Invertible differentiable scalar map from a small built-in family.

    kind "power" is x**param (param != 0), "log" is ln x, "linear" is
    param*x + offset.  Construction self-checks the inverse and the
    derivative against finite differences on a fixed sample range.
    """

    kind: str
    param: float = 1.0
    offset: float = 0.0

    def __post_init__(self) -> None:
        if self.kind not in (F_POWER, F_LOG, F_LINEAR):
            raise RangeError(f"unknown F kind {self.kind!r}")
        if self.kind in (F_POWER, F_LINEAR) and self.param == 0.0:
            raise RangeError("param must be nonzero")
        for x in _F_CHECK_POINTS:
            y = self.value(x)
            back = self.inverse(y)
            if abs(back - x) > 1e-10 * max(1.0, abs(x)):
                raise RangeError(f"inverse check failed at {x}: {back}")
            d = 1e-6 * max(1.0, x)
            fd = (self.value(x + d) - self.value(x - d)) / (2.0 * d)
            want = self.derivative(x)
            if abs(fd - want) > 1e-6 * max(1e-12, abs(want)):
                raise RangeError(f"derivative check failed at {x}: {fd} vs {want}")

    def value(self, x: float) -> float:
        if self.kind == F_POWER:
            if x < 0 or (x == 0 and self.param < 0):
                raise RangeError(f"power map needs x >= 0, got {x}")
            return float(x**self.param)
        if self.kind == F_LOG:
            if x <= 0:
                raise RangeError(f"log map needs x > 0, got {x}")
            return math.log(x)
        return self.param * x + self.offset

    def inverse(self, y: float) -> float:
        if self.kind == F_POWER:
            if y < 0 or (y == 0 and self.param < 0):
                raise RangeError(f"power inverse got out-of-range {y}")
            return float(y ** (1.0 / self.param))
        if self.kind == F_LOG:
            return math.exp(y)
        return (y - self.offset) / self.param

    def derivative(self, x: float) -> float:
        if self.kind == F_POWER:
            if x <= 0 and self.param != 1.0:
                raise RangeError(f"power derivative needs x > 0, got {x}")
            return float(self.param * x ** (self.param - 1.0))
        if self.kind == F_LOG:
            if x <= 0:
                raise RangeError(f"log derivative needs x > 0, got {x}")
            return 1.0 / x
        return self.param

    @property
    def derivative_at_one(self) -> float:
        return self.derivative(1.0)

    def describe(self) -> dict:
        return {"kind": self.kind, "param": self.param, "offset": self.offset}


# ---------------------------------------------------------------------------
# surface quotients


@dataclass(frozen=True)
class SurfaceEstimate:
    """Difference quotients on a decreasing epsilon schedule.

    estimate is the minimum of the last three quotients; trend records
    whether the sequence moved one way or oscillated.  A spread above 20%
    of scale among the last three marks the estimate unsettled; callers
    report that, it is not an error here.
    """

    quotients: tuple[tuple[float, float], ...]
    estimate: float
    trend: str

    def __post_init__(self) -> None:
        eps = [e for e, _ in self.quotients]
        if any(b >= a for a, b in zip(eps, eps[1:])):
            raise RangeError("epsilon schedule must be strictly decreasing")

    @classmethod
    def build(cls, quotients: list[tuple[float, float]]) -> "SurfaceEstimate":
        if not quotients:
            raise RangeError("need at least one quotient")
        vals = [q for _, q in quotients]
        tail = vals[-3:]
        scale = max(1e-12, max(abs(v) for v in vals))
        diffs = [b - a for a, b in zip(vals, vals[1:])]
        up = all(d >= -1e-12 * scale for d in diffs)
        down = all(d <= 1e-12 * scale for d in diffs)
        trend = "monotone" if (up or down) else "oscillating"
        return cls(tuple(quotients), min(tail), trend)

    @property
    def unsettled(self) -> bool:
        tail = [q for _, q in self.quotients[-3:]]
        scale = max(1e-12, max(abs(v) for v in tail))
        return (max(tail) - min(tail)) > 0.2 * scale


def _t_free_spec(p: float, alphas: PowerVector, lambda_points: int) -> SumSpec:
    if p < 1.0:
        raise RegimeError("surface quotients cover p >= 1 only")
    return SumSpec(
        p=p, alphas=alphas, t=None,
        lambda_points=lambda_points, coefficient_form=T_FREE,
    )


def _exact_sum_path(a, b, mu: DensityMeasure) -> bool:
    return (
        isinstance(a, StaircaseSet)
        and isinstance(b, StaircaseSet)
        and a.base_dim == 1
        and mu.is_lebesgue
    )


def _mu_of_sum(a, b, spec: SumSpec, mu: DensityMeasure) -> float:
    if _exact_sum_path(a, b, mu):
        return staircase_sum_volume_exact(a, b, spec)
    return measure_of(curvilinear_sum_grid(a, b, spec), mu)


def _reach_extras(a: StaircaseSet, b: StaircaseSet, spec: SumSpec) -> tuple:
    """Per-axis base-reach maximizers over support-cell edge pairs.

    The sum paths inject the vertical per-pair maximizer themselves, but
    the base-coordinate one lives near 0 or 1 when the operands are at
    very different scales (surface quotients dilate one operand by eps),
    far below any uniform grid value; without it the evaluated union
    misses a first-order boundary strip of the larger operand.
    """
    if spec.p <= 1.0:
        return ()
    ca, _ = a.support_cells()
    cb, _ = b.support_cells()
    if ca.shape[0] == 0 or cb.shape[0] == 0:
        return ()
    alphas = spec.alphas.alphas
    found = []
    for ax in range(a.base_dim):
        u = np.unique(ca[:, ax]) + a.grid.spacing
        v = np.unique(cb[:, ax]) + b.grid.spacing
        lam = spec.pair_lambda_star(u[:, None], v[None, :], alphas[ax])
        found.append(np.unique(lam))
    return tuple(float(x) for x in np.unique(np.concatenate(found)))


def surface_area_sets(
    a: StaircaseSet,
    b: StaircaseSet,
    mu: DensityMeasure,
    p: float,
    alphas: PowerVector,
    eps_schedule: tuple[float, ...] = EPS_SCHEDULE,
    lambda_points: int = 64,
) -> SurfaceEstimate:
    """Difference quotients of eps -> mu(A + eps x B) at eps -> 0.

    The sum is the t-free one; eps x B is realized by scalar dilation.
    One-base-axis staircases under a constant density use the exact
    envelope volume, everything else goes through the grid sum.
    """
    spec = _t_free_spec(p, alphas, lambda_points)
    if b.volume == 0.0:
        qs = [(float(e), 0.0) for e in eps_schedule]
        return SurfaceEstimate.build(qs)
    if _exact_sum_path(a, b, mu):
        mu_a = a.volume
    else:
        mu_a = measure_of(a, mu)
    qs = []
    for eps in eps_schedule:
        eb = scalar_dilate(float(eps), b, spec)
        spec_e = spec.with_extra_lambdas(_reach_extras(a, eb, spec))
        val = _mu_of_sum(a, eb, spec_e, mu)
        qs.append((float(eps), (val - mu_a) / float(eps)))
    return SurfaceEstimate.build(qs)


def surface_area_funcs(
    f: GridFunction,
    g: GridFunction,
    mu: DensityMeasure,
    p: float,
    alphas: PowerVector,
    eps_schedule: tuple[float, ...] = EPS_SCHEDULE,
    lambda_points: int = 64,
) -> SurfaceEstimate:
    """Quotients of eps -> integral of (f convolved with eps x g) d(mu).

    Identical to surface_area_sets on the hypographs: the convolution is
    the set sum of hypographs and the integral of a function against a
    base-space density equals the column measure of its hypograph.
    """
    return surface_area_sets(
        f.hypograph(), g.hypograph(), mu, p, alphas, eps_schedule, lambda_points
    )


# ---------------------------------------------------------------------------
# concavity and first-variation checks


def _pair_measures(a, b, mu: DensityMeasure) -> tuple[float, float, bool]:
    is_func = isinstance(a, GridFunction)
    if is_func != isinstance(b, GridFunction):
        raise DomainError("mixed set/function pair")
    if is_func:
        return measure_of(a.hypograph(), mu), measure_of(b.hypograph(), mu), True
    return measure_of(a, mu), measure_of(b, mu), False


def f_concavity_check(
    a,
    b,
    mu: DensityMeasure,
    F: FSpec,
    spec: SumSpec,
    t_samples: tuple[float, ...] = (0.25, 0.5, 0.75),
    tol: float = 1e-9,
    seed: int = 0,
    can_refine: bool = True,
    check_id: str | None = None,
) -> InequalityReport:
    """mu(sum at t) >= F^{-1}((1-t) F(mu A) + t F(mu B)) over sampled t.

    Accepts a pair of staircase sets or a pair of grid functions; reports
    the worst slack over the t samples.
    """
    if not t_samples:
        raise RangeError("need at least one t sample")
    mu_a, mu_b, is_func = _pair_measures(a, b, mu)
    name = check_id or ("f_concavity_funcs" if is_func else "f_concavity_sets")
    if mu_a <= 0.0 or mu_b <= 0.0:
        return InequalityReport.from_values(
            name, seed, 0.0, 0.0, tol,
            lambda_points=spec.lambda_points, can_refine=can_refine,
            params={"zero_measure": True, "F": F.describe()},
        )
    worst = None
    grid_h = None
    for t in t_samples:
        t = float(t)
        spec_t = SumSpec(
            p=spec.p, alphas=spec.alphas, t=t,
            lambda_points=spec.lambda_points, mode=spec.mode,
            coefficient_form=WITH_T,
        )
        if is_func:
            conv = sup_convolve(a, b, spec_t)
            lhs_t = measure_of(conv.hypograph(), mu)
            grid_h = conv.grid.spacing
        elif _exact_sum_path(a, b, mu):
            lhs_t = staircase_sum_volume_exact(a, b, spec_t)
            grid_h = a.grid.spacing
        else:
            s = curvilinear_sum_grid(a, b, spec_t)
            lhs_t = measure_of(s, mu)
            grid_h = s.grid.spacing
        rhs_t = F.inverse((1.0 - t) * F.value(mu_a) + t * F.value(mu_b))
        if worst is None or (lhs_t - rhs_t) < (worst[1] - worst[2]):
            worst = (t, lhs_t, rhs_t)
    t_min, lhs, rhs = worst
    return InequalityReport.from_values(
        name, seed, lhs, rhs, tol,
        grid_h=grid_h, lambda_points=spec.lambda_points, can_refine=can_refine,
        params={"t": t_min, "t_samples": [float(t) for t in t_samples],
                "F": F.describe()},
    )


def minkowski_first_check(
    a,
    b,
    mu: DensityMeasure,
    F: FSpec,
    p: float,
    alphas: PowerVector,
    eps_schedule: tuple[float, ...] = EPS_SCHEDULE,
    lambda_points: int = 64,
    t_samples: tuple[float, ...] = (0.25, 0.5, 0.75),
    tol: float = 1e-9,
    gate_tol: float | None = None,
    seed: int = 0,
    can_refine: bool = True,
) -> InequalityReport:
    """S(A,B) >= S(A,A) + (F(mu B) - F(mu A)) / F'(mu A).

    The F-concavity hypothesis is sampled first on the same pair; when the
    gate does not pass, the verdict is capped at refine because the
    inequality's hypothesis is unverified, not falsified.
    """
    mu_a, mu_b, is_func = _pair_measures(a, b, mu)
    name = "minkowski_first_funcs" if is_func else "minkowski_first_sets"
    gate_spec = SumSpec(p=p, alphas=alphas, t=0.5, lambda_points=lambda_points)
    gate = f_concavity_check(
        a, b, mu, F, gate_spec,
        t_samples=t_samples, tol=tol if gate_tol is None else gate_tol,
        seed=seed, can_refine=False,
    )
    surf = surface_area_funcs if is_func else surface_area_sets
    s_ab = surf(a, b, mu, p, alphas, eps_schedule, lambda_points)
    s_aa = surf(a, a, mu, p, alphas, eps_schedule, lambda_points)
    lhs = s_ab.estimate
    rhs = s_aa.estimate + (F.value(mu_b) - F.value(mu_a)) / F.derivative(mu_a)
    report = InequalityReport.from_values(
        name, seed, lhs, rhs, tol,
        lambda_points=lambda_points, can_refine=can_refine,
        params={
            "F": F.describe(),
            "gate": gate.verdict,
            "trend_ab": s_ab.trend,
            "trend_aa": s_aa.trend,
            "unsettled": bool(s_ab.unsettled or s_aa.unsettled),
        },
    )
    if gate.verdict != "pass":
        # hypothesis unverified: the instance is inconclusive either way
        return InequalityReport(
            report.check_id, report.instance_seed, report.lhs, report.rhs,
            report.slack, report.grid_h, report.lambda_points,
            "refine", report.params,
        )
    return report


def mixed_volume_quantities(
    a: StaircaseSet,
    b: StaircaseSet,
    mu: DensityMeasure,
    F: FSpec,
    p: float,
    alphas: PowerVector,
    eps_schedule: tuple[float, ...] = EPS_SCHEDULE,
    lambda_points: int = 64,
) -> tuple[float, float]:
    """First-variation pair (V, M).

    V is F'(1) times the surface quotient of (A, B).  M subtracts the
    one-sided derivative of eps -> mu(eps x A) at eps = 1 from mu(A)/F'(1);
    the derivative is estimated from below-one dilations on the same
    geometric schedule.
    """
    d1 = F.derivative_at_one
    v = d1 * surface_area_sets(a, b, mu, p, alphas, eps_schedule, lambda_points).estimate
    spec = _t_free_spec(p, alphas, lambda_points)
    exact = isinstance(a, StaircaseSet) and mu.is_lebesgue
    mu_a = a.volume if exact else measure_of(a, mu)
    qs = []
    for eps in eps_schedule:
        c = 1.0 - float(eps)
        ca = scalar_dilate(c, a, spec)
        val = ca.volume if exact else measure_of(ca, mu)
        qs.append((float(eps), (mu_a - val) / float(eps)))
    deriv = SurfaceEstimate.build(qs).estimate
    m = mu_a / d1 - deriv
    return v, m


def mixed_volume_check(
    a: StaircaseSet,
    b: StaircaseSet,
    mu: DensityMeasure,
    F: FSpec,
    p: float,
    alphas: PowerVector,
    eps_schedule: tuple[float, ...] = EPS_SCHEDULE,
    lambda_points: int = 64,
    tol: float = 1e-9,
    seed: int = 0,
    can_refine: bool = True,
) -> InequalityReport:
    """V + F'(1) M >= F'(1) (F(mu B) - F(mu A)) / F'(mu A) + mu(A)."""
    v, m = mixed_volume_quantities(a, b, mu, F, p, alphas, eps_schedule, lambda_points)
    mu_a, mu_b, _ = _pair_measures(a, b, mu)
    d1 = F.derivative_at_one
    lhs = v + d1 * m
    rhs = d1 * (F.value(mu_b) - F.value(mu_a)) / F.derivative(mu_a) + mu_a
    return InequalityReport.from_values(
        "mixed_volume_variation", seed, lhs, rhs, tol,
        lambda_points=lambda_points, can_refine=can_refine,
        params={"F": F.describe(), "V": v, "M": m},
    )
