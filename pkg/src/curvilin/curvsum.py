"""Curvilinear and quasi-curvilinear set summation.

The two-set sum is a union over the coefficient parameter lam of
coordinatewise combined point sets: with coefficients (C, D) drawn from
either the with-t form ((1-t)^(1/p) (1-lam)^(1/q), t^(1/p) lam^(1/q)) or the
t-free form ((1-lam)^(1/q), lam^(1/q)), coordinate i of a combined point is
the (C, D)-weighted alpha_i-mean of the parent coordinates.  The quasi
variant replaces the mean by min(C^(1/alpha_i) x_i, D^(1/alpha_i) y_i).
For p >= 1 the sum is the union over lam, for 0 < p < 1 the intersection
(supported, flagged experimental).

Grid realization: operands are staircase sets; every pair of support cells
is combined at every lam of the evaluation set and the result is snapped to
the floor cell of an output grid, keeping the recorded (cell, height) pairs
dominated by true members of the sum.  The evaluation set is the uniform
lam grid of the spec augmented with the closed-form maximizers for the
volume pair and for each height pair, so suprema realized at isolated lam
values are not lost to the grid.  Recorded volumes are exact cell sums of
the recorded heights.

Exact realizations are kept alongside the grid path: interval unions in
one dimension, explicit region boxes for box-union operands, and a swept
max-envelope for staircase operands with one base axis (the workhorse of
the surface-area quotients, where grid snapping would drown the signal).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    BudgetError,
    DegenerateInputError,
    DomainError,
    GridAlignmentError,
    RangeError,
    RegimeError,
    ResolutionError,
)
from .means import PowerVector, conjugate, mean_alpha
from .sets import BoxUnion, Grid, GridPointSet, IntervalUnion, StaircaseSet, normalize

_INF = math.inf
_SNAP = 1e-9  # floor snap guard, in cell units
_PAIR_CHUNK = 1 << 22

CURVILINEAR = "curvilinear"
QUASI = "quasi"
WITH_T = "with_t"
T_FREE = "t_free"
_MIXED = "mixed"  # internal: affine base, quasi vertical (convex combination form)


@dataclass(frozen=True)
class SumSpec:
    """Parameters of a summation: exponent p, weight t, powers, lam grid."""

    p: float
    alphas: PowerVector
    t: float | None = None
    lambda_points: int = 64
    mode: str = CURVILINEAR
    coefficient_form: str = WITH_T
    extra_lambdas: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        if self.p <= 0:
            raise RangeError(f"p must be positive, got {self.p}")
        if self.mode not in (CURVILINEAR, QUASI):
            raise RangeError(f"unknown mode {self.mode!r}")
        if self.coefficient_form not in (WITH_T, T_FREE):
            raise RangeError(f"unknown coefficient form {self.coefficient_form!r}")
        if self.coefficient_form == WITH_T:
            if self.t is None or not 0.0 < self.t < 1.0:
                raise RangeError("with_t coefficients need t in (0, 1)")
        if self.lambda_points < 1:
            raise RangeError("lambda_points must be >= 1")
        if self.mode == QUASI and any(a == 0.0 for a in self.alphas.alphas):
            raise DomainError("quasi summation requires nonzero powers")
        if any(not 0.0 < lam < 1.0 for lam in self.extra_lambdas):
            raise RangeError("extra lam values must lie in (0, 1)")

    @property
    def q(self) -> float:
        return conjugate(self.p)

    def lambda_grid(self) -> np.ndarray:
        n = self.lambda_points
        grid = np.arange(1, n + 1, dtype=float) / (n + 1)
        if self.extra_lambdas:
            grid = np.unique(np.concatenate([grid, np.asarray(self.extra_lambdas)]))
        return grid

    def with_lambda_points(self, n: int) -> "SumSpec":
        return SumSpec(
            self.p, self.alphas, self.t, n, self.mode, self.coefficient_form,
            self.extra_lambdas,
        )

    def with_extra_lambdas(self, extras: tuple[float, ...]) -> "SumSpec":
        merged = tuple(sorted(set(self.extra_lambdas) | set(extras)))
        return SumSpec(
            self.p, self.alphas, self.t, self.lambda_points, self.mode,
            self.coefficient_form, merged,
        )

    def coefficients(self, lam):
        """(C, D) for scalar or array lam."""
        lam = np.asarray(lam, dtype=float)
        if self.p == 1.0:
            if self.coefficient_form == WITH_T:
                c = np.full_like(lam, 1.0 - self.t)
                d = np.full_like(lam, self.t)
            else:
                c = np.ones_like(lam)
                d = np.ones_like(lam)
            return c, d
        invq = 1.0 - 1.0 / self.p
        c = (1.0 - lam) ** invq
        d = lam**invq
        if self.coefficient_form == WITH_T:
            c = (1.0 - self.t) ** (1.0 / self.p) * c
            d = self.t ** (1.0 / self.p) * d
        return c, d

    def pair_lambda_star(self, a, b, alpha: float):
        """Maximizer of lam -> combined alpha-mean of the positive pair (a, b)."""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        pa = self.p * alpha
        with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
            if self.coefficient_form == WITH_T:
                r = (1.0 - self.t) / self.t * (a / b) ** pa
            else:
                r = (a / b) ** pa
            lam = 1.0 / (1.0 + r)
        return np.clip(np.nan_to_num(lam, nan=0.5), 1e-300, 1.0 - 1e-16)

    def quasi_crossing_lambda(self, a, b, alpha: float):
        """Crossing of C^(1/alpha) a = D^(1/alpha) b, the maximizer of their min."""
        a = np.asarray(a, dtype=float)
        b = np.asarray(b, dtype=float)
        if self.p == 1.0:
            return np.full(np.broadcast(a, b).shape, 0.5)
        q = self.q
        with np.errstate(divide="ignore", invalid="ignore"):
            logr = alpha * (np.log(b) - np.log(a))
            if self.coefficient_form == WITH_T:
                logr = logr + (math.log(self.t) - math.log(1.0 - self.t)) / self.p
            x = np.atleast_1d(q * logr)
            lam = np.empty_like(x)
            pos = x >= 0
            e = np.exp(-x[pos])
            lam[pos] = e / (1.0 + e)
            lam[~pos] = 1.0 / (1.0 + np.exp(x[~pos]))
        lam = np.clip(np.nan_to_num(lam, nan=0.5), 1e-300, 1.0 - 1e-16)
        return lam.reshape(np.broadcast(a, b).shape) if np.ndim(a) or np.ndim(b) else lam[0]

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "t": self.t,
            "alphas": list(self.alphas.alphas),
            "lambda_points": self.lambda_points,
            "mode": self.mode,
            "coefficient_form": self.coefficient_form,
            "extra_lambdas": list(self.extra_lambdas),
        }

    @classmethod
    def from_json(cls, data: dict) -> "SumSpec":
        return cls(
            p=float(data["p"]),
            alphas=PowerVector(tuple(data["alphas"])),
            t=None if data.get("t") is None else float(data["t"]),
            lambda_points=int(data.get("lambda_points", 64)),
            mode=data.get("mode", CURVILINEAR),
            coefficient_form=data.get("coefficient_form", WITH_T),
            extra_lambdas=tuple(float(x) for x in data.get("extra_lambdas", ())),
        )


# ---------------------------------------------------------------------------
# kernels


def combine(u, v, c, d, alpha: float):
    """Coordinatewise (c, d)-weighted alpha-mean, continuous at zero.

    For alpha > 0 a zero argument contributes nothing (the limit value
    d^(1/alpha) v survives); for alpha <= 0 a zero argument forces zero.
    Inputs are nonnegative arrays or scalars.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if alpha == _INF:
        return np.maximum(u, v)
    if alpha == -_INF:
        return np.minimum(u, v)
    if alpha == 0.0:
        return u**c * v**d
    if alpha == 1.0:
        return c * u + d * v
    with np.errstate(divide="ignore", over="ignore"):
        out = (c * u**alpha + d * v**alpha) ** (1.0 / alpha)
    return out


def combine_quasi(u, v, c, d, alpha: float):
    """Coordinatewise min(c^(1/alpha) u, d^(1/alpha) v)."""
    if alpha == 0.0:
        raise RegimeError("quasi combination undefined for zero power")
    if math.isinf(alpha):
        return np.minimum(u, v)
    e = 1.0 / alpha
    return np.minimum(c**e * np.asarray(u, dtype=float), d**e * np.asarray(v, dtype=float))


def _axis_extent(spec: SumSpec, amax: float, bmax: float, alpha: float) -> float:
    """Upper bound for sup over lam of the combined coordinate.

    For p >= 1 the bound covers the full open interval of lam (closed
    forms); for 0 < p < 1 only the spec's lam grid is ever evaluated, so
    the grid maximum suffices.
    """
    if spec.p < 1.0:
        kernel = combine_quasi if spec.mode == QUASI else combine
        c, d = spec.coefficients(spec.lambda_grid())
        return float(np.max(kernel(amax, bmax, c, d, alpha)))
    if spec.mode == QUASI:
        if math.isinf(alpha) or alpha > 0:
            return min(amax, bmax)
        lam = spec.quasi_crossing_lambda(amax, bmax, alpha)
        c, d = spec.coefficients(lam)
        return float(combine_quasi(amax, bmax, c, d, alpha))
    if alpha == _INF:
        return max(amax, bmax)
    if spec.coefficient_form == WITH_T:
        if alpha == 0.0:
            return max(amax, 1.0) * max(bmax, 1.0)
        if alpha > 0:
            return mean_alpha(amax, bmax, spec.t, spec.p * alpha)
        return max(
            (1.0 - spec.t) ** (1.0 / (spec.p * alpha)) * amax,
            spec.t ** (1.0 / (spec.p * alpha)) * bmax,
        )
    if alpha == 0.0:
        return max(amax, 1.0) * max(bmax, 1.0)
    if alpha > 0:
        return (amax ** (spec.p * alpha) + bmax ** (spec.p * alpha)) ** (
            1.0 / (spec.p * alpha)
        )
    return max(amax, bmax)


def derive_out_grid(a: StaircaseSet, b: StaircaseSet, spec: SumSpec) -> Grid:
    """Output grid from the origin covering every reachable coordinate."""
    n = a.base_dim
    h = min(a.grid.spacing, b.grid.spacing)
    shape = []
    for ax in range(n):
        ext = _axis_extent(
            spec, a.grid.upper()[ax], b.grid.upper()[ax], spec.alphas.alphas[ax]
        )
        shape.append(max(1, int(math.ceil(ext / h + _SNAP))))
    return Grid((0.0,) * n, h, tuple(shape))


def _check_out_grid(grid: Grid, a: StaircaseSet, b: StaircaseSet, spec: SumSpec) -> None:
    n = a.base_dim
    if grid.ndim != n:
        raise ResolutionError("output grid dimension mismatch")
    for ax in range(n):
        ext = _axis_extent(
            spec, a.grid.upper()[ax], b.grid.upper()[ax], spec.alphas.alphas[ax]
        )
        if grid.origin[ax] > 0.0 or grid.upper()[ax] < ext - 1e-9:
            raise ResolutionError(
                f"output grid does not cover [0, {ext:.6g}] on axis {ax}"
            )


def _support(s: StaircaseSet):
    corners, heights = s.support_cells()
    if corners.shape[0] == 0:
        raise DegenerateInputError("summand has empty support")
    return corners, heights


def _lambda_values(spec: SumSpec, vol_a: float, vol_b: float) -> np.ndarray:
    lams = spec.lambda_grid()
    extras = []
    a_last = spec.alphas.last
    if spec.p > 1.0 and a_last != 0.0 and not math.isinf(a_last):
        if spec.mode == CURVILINEAR:
            extras.append(float(spec.pair_lambda_star(vol_a, vol_b, a_last)))
        else:
            extras.append(float(spec.quasi_crossing_lambda(vol_a, vol_b, a_last)))
    if extras:
        lams = np.concatenate([lams, np.asarray(extras)])
    return np.unique(lams)


def _accumulate(out, out_grid, spec, xa, ha, xb, hb, lam_values, kind):
    """Max-accumulate all (cell pair, lam) images into the output heights."""
    n = xa.shape[1]
    alphas = spec.alphas.alphas
    base_kernel = combine_quasi if kind == QUASI else combine
    vert_kernel = combine if kind == CURVILINEAR else combine_quasi
    shape = out.shape
    flat = out.ravel()
    ma = xa.shape[0]
    mb = xb.shape[0]
    chunk = max(1, _PAIR_CHUNK // max(mb, 1))
    a_last = alphas[-1]
    inject_pairs = spec.p > 1.0 and a_last != 0.0 and not math.isinf(a_last)
    h_out = out_grid.spacing
    for start in range(0, ma, chunk):
        stop = min(ma, start + chunk)
        xs = xa[start:stop]
        hs = ha[start:stop]
        u = hs[:, None]
        v = hb[None, :]
        cd_list = [spec.coefficients(lam) for lam in lam_values]
        if inject_pairs:
            if kind == CURVILINEAR:
                lam_star = spec.pair_lambda_star(u, v, a_last)
            else:
                lam_star = spec.quasi_crossing_lambda(u, v, a_last)
            cd_list.append(spec.coefficients(lam_star))
        for c, d in cd_list:
            vert = vert_kernel(u, v, c, d, a_last)
            idx = np.empty((xs.shape[0], mb, n), dtype=np.int64)
            for ax in range(n):
                z = base_kernel(xs[:, ax][:, None], xb[:, ax][None, :], c, d, alphas[ax])
                k = np.floor((z - out_grid.origin[ax]) / h_out + _SNAP).astype(np.int64)
                np.clip(k, 0, shape[ax] - 1, out=k)
                idx[:, :, ax] = k
            flat_idx = np.ravel_multi_index(
                tuple(idx[:, :, ax].ravel() for ax in range(n)), shape
            )
            np.maximum.at(flat, flat_idx, vert.ravel())
    return out


def curvilinear_sum_grid(
    a: StaircaseSet,
    b: StaircaseSet,
    spec: SumSpec,
    out_grid: Grid | None = None,
) -> StaircaseSet:
    """Curvilinear sum of two staircases on an output grid.

    Union over lam for p >= 1; intersection over the lam grid for
    0 < p < 1 (experimental regime: only containment monotonicity is
    asserted there).
    """
    if spec.mode != CURVILINEAR:
        raise RegimeError("spec.mode must be curvilinear here")
    return _sum_grid(a, b, spec, out_grid, kind=CURVILINEAR)


def quasi_sum_grid(
    a: StaircaseSet,
    b: StaircaseSet,
    spec: SumSpec,
    out_grid: Grid | None = None,
) -> StaircaseSet:
    """Quasi-curvilinear sum of two staircases on an output grid."""
    if spec.mode != QUASI:
        raise RegimeError("spec.mode must be quasi here")
    return _sum_grid(a, b, spec, out_grid, kind=QUASI)


def convex_quasi_sum_grid(
    a: StaircaseSet,
    b: StaircaseSet,
    spec: SumSpec,
    out_grid: Grid | None = None,
) -> StaircaseSet:
    """Scalar quasi convex combination: affine base, quasi vertical kernel.

    Base points combine as C x + D y while the vertical pair combines as
    min(C^(1/alpha) a, D^(1/alpha) b); this is the convex-combination form
    of the quasi sum that the sectional and marginal bounds quantify over.
    Base powers must all be 1.
    """
    if spec.mode != QUASI:
        raise RegimeError("spec.mode must be quasi here")
    if spec.p < 1.0:
        raise RegimeError("convex combination form covers p >= 1 only")
    if any(x != 1.0 for x in spec.alphas.alphas[:-1]):
        raise DomainError("convex combination form needs base powers all 1")
    return _sum_grid(a, b, spec, out_grid, kind=_MIXED)


def _sum_grid(a, b, spec, out_grid, kind):
    if a.base_dim != b.base_dim:
        raise DomainError("summands live in different dimensions")
    if a.base_dim != spec.alphas.n:
        raise DomainError(
            f"power vector has {spec.alphas.n} base entries, sets have {a.base_dim}"
        )
    xa, ha = _support(a)
    xb, hb = _support(b)
    # mixed form reaches affine base extents regardless of spec.mode
    grid_spec = (
        SumSpec(
            spec.p, spec.alphas, spec.t, spec.lambda_points, CURVILINEAR,
            spec.coefficient_form, spec.extra_lambdas,
        )
        if kind == _MIXED
        else spec
    )
    if out_grid is None:
        out_grid = derive_out_grid(a, b, grid_spec)
    else:
        _check_out_grid(out_grid, a, b, grid_spec)
    if spec.p >= 1.0:
        out = np.zeros(out_grid.shape)
        _accumulate(
            out, out_grid, spec, xa, ha, xb, hb,
            _lambda_values(spec, a.volume, b.volume), kind,
        )
        return StaircaseSet(out_grid, out)
    # 0 < p < 1: intersection over the lam grid, computed slicewise
    result = None
    for lam in spec.lambda_grid():
        slice_out = np.zeros(out_grid.shape)
        _accumulate(
            slice_out, out_grid, spec, xa, ha, xb, hb,
            np.asarray([lam]), kind,
        )
        if result is None:
            result = slice_out
        else:
            np.minimum(result, slice_out, out=result)
    return StaircaseSet(out_grid, result)


# ---------------------------------------------------------------------------
# exact one-dimensional path


def curvilinear_sum_1d(k: IntervalUnion, l: IntervalUnion, spec: SumSpec) -> IntervalUnion:
    """Exact curvilinear sum of interval unions on the half line.

    Per (lam, interval pair) the image of [a,b] x [c,d] under the
    combined mean is the interval [m(a,c), m(b,d)] (monotone continuous
    map); the result is the normalized union over the lam evaluation set,
    including the closed-form maximizers for the volume pair, each length
    pair, and each right-endpoint pair.
    """
    if spec.alphas.n != 0:
        raise DomainError("curvilinear_sum_1d needs a single-entry power vector")
    if spec.mode != CURVILINEAR:
        raise RegimeError("interval path supports curvilinear mode only")
    if spec.p < 1.0:
        raise RegimeError("interval path supports p >= 1 only")
    alpha = spec.alphas.last
    ka = normalize(k).intervals
    la = normalize(l).intervals
    if not ka or not la:
        raise DegenerateInputError("summand has empty support")

    lams = list(spec.lambda_grid())
    if spec.p > 1.0 and alpha != 0.0 and not math.isinf(alpha):
        lams.append(float(spec.pair_lambda_star(k.volume, l.volume, alpha)))
        for a, b in ka:
            for c, d in la:
                if b > a and d > c:
                    lams.append(float(spec.pair_lambda_star(b - a, d - c, alpha)))
                if b > 0 and d > 0:
                    lams.append(float(spec.pair_lambda_star(b, d, alpha)))
    lam_arr = np.unique(np.asarray(lams))
    c_arr, d_arr = spec.coefficients(lam_arr)

    pieces = []
    for a, b in ka:
        for c, d in la:
            # max/min powers ignore the lam coefficients; force lam shape
            lo = np.broadcast_to(combine(a, c, c_arr, d_arr, alpha), lam_arr.shape)
            hi = np.broadcast_to(combine(b, d, c_arr, d_arr, alpha), lam_arr.shape)
            pieces.extend(zip(lo.tolist(), hi.tolist()))
    return normalize(IntervalUnion(tuple(pieces)))


# ---------------------------------------------------------------------------
# exact box path


def curvilinear_sum_boxes(a: BoxUnion, b: BoxUnion, spec: SumSpec) -> BoxUnion:
    """Exact region boxes of the sum of two box unions at the lam set.

    Every (box pair, lam) contributes the product of per-axis image
    intervals; the union of these boxes is exactly the sum restricted to
    the evaluated lam values, so its volume lower-bounds the full sum.
    """
    if spec.mode != CURVILINEAR:
        raise RegimeError("box path supports curvilinear mode only")
    if spec.p < 1.0:
        raise RegimeError("box path supports p >= 1 only")
    if a.dim != b.dim or a.dim != spec.alphas.n + 1:
        raise DomainError("box dimensions do not match the power vector")
    dim = a.dim
    alphas = spec.alphas.alphas
    lams = list(spec.lambda_grid())
    a_last = alphas[-1]
    if spec.p > 1.0 and a_last != 0.0 and not math.isinf(a_last):
        va, vb = a.volume, b.volume
        if va > 0 and vb > 0:
            lams.append(float(spec.pair_lambda_star(va, vb, a_last)))
    lam_arr = np.unique(np.asarray(lams))
    c_arr, d_arr = spec.coefficients(lam_arr)
    boxes = []
    for alo, ahi in a.boxes:
        for blo, bhi in b.boxes:
            los = [
                np.broadcast_to(
                    combine(alo[ax], blo[ax], c_arr, d_arr, alphas[ax]), lam_arr.shape
                )
                for ax in range(dim)
            ]
            his = [
                np.broadcast_to(
                    combine(ahi[ax], bhi[ax], c_arr, d_arr, alphas[ax]), lam_arr.shape
                )
                for ax in range(dim)
            ]
            for i in range(len(lam_arr)):
                lo = tuple(float(los[ax][i]) for ax in range(dim))
                hi = tuple(float(his[ax][i]) for ax in range(dim))
                if all(h > l for l, h in zip(lo, hi)):
                    boxes.append((lo, hi))
    return BoxUnion(dim, tuple(boxes))


# ---------------------------------------------------------------------------
# exact envelope path (one base axis)


def staircase_sum_regions(a: StaircaseSet, b: StaircaseSet, spec: SumSpec):
    """(z_lo, z_hi, v) region arrays of the sum for one-base-axis staircases.

    Each (cell pair, lam) yields the base interval [m(x_lo, y_lo),
    m(x_hi, y_hi)] at height m(h_a, h_b); the anchored union of these
    rectangles is exactly the sum restricted to the lam set.
    """
    return _regions(a, b, spec, spec.mode)


def _regions(a, b, spec, kind):
    if a.base_dim != 1 or b.base_dim != 1:
        raise DomainError("region path needs one base axis")
    if spec.alphas.n != 1:
        raise DomainError("power vector must have one base entry")
    if spec.p < 1.0:
        raise RegimeError("region path supports p >= 1 only")
    xa, ha = _support(a)
    xb, hb = _support(b)
    alpha0 = spec.alphas.alphas[0]
    alpha1 = spec.alphas.last
    base_kernel = combine_quasi if kind == QUASI else combine
    vert_kernel = combine if kind == CURVILINEAR else combine_quasi
    lam_values = _lambda_values(spec, a.volume, b.volume)
    u = ha[:, None]
    v = hb[None, :]
    cd_list = [spec.coefficients(lam) for lam in lam_values]
    if spec.p > 1.0 and alpha1 != 0.0 and not math.isinf(alpha1):
        if kind == CURVILINEAR:
            cd_list.append(spec.coefficients(spec.pair_lambda_star(u, v, alpha1)))
        else:
            cd_list.append(spec.coefficients(spec.quasi_crossing_lambda(u, v, alpha1)))
    xlo_a = xa[:, 0][:, None]
    xhi_a = xlo_a + a.grid.spacing
    xlo_b = xb[:, 0][None, :]
    xhi_b = xlo_b + b.grid.spacing
    z_lo, z_hi, vert = [], [], []
    for c, d in cd_list:
        z_lo.append(base_kernel(xlo_a, xlo_b, c, d, alpha0).ravel())
        z_hi.append(base_kernel(xhi_a, xhi_b, c, d, alpha0).ravel())
        vert.append(vert_kernel(u, v, c, d, alpha1).ravel())
    return np.concatenate(z_lo), np.concatenate(z_hi), np.concatenate(vert)


def envelope_segments(z_lo, z_hi, v):
    """Max envelope of anchored rectangles as (breakpoints, values).

    Returns (bps, vals) with len(vals) = len(bps) - 1; the envelope is
    vals[i] on [bps[i], bps[i+1]).  Linear sweep with a lazy-deletion heap.
    """
    import heapq

    z_lo = np.asarray(z_lo, dtype=float)
    z_hi = np.asarray(z_hi, dtype=float)
    v = np.asarray(v, dtype=float)
    keep = (z_hi > z_lo) & (v > 0)
    z_lo, z_hi, v = z_lo[keep], z_hi[keep], v[keep]
    if z_lo.size == 0:
        return np.asarray([0.0]), np.asarray([])
    bps = np.unique(np.concatenate([z_lo, z_hi]))
    order = np.argsort(z_lo, kind="stable")
    z_lo_s, z_hi_s, v_s = z_lo[order], z_hi[order], v[order]
    heap: list[tuple[float, float]] = []
    vals = np.zeros(len(bps) - 1)
    ptr = 0
    m = len(z_lo_s)
    for i in range(len(bps) - 1):
        z0 = bps[i]
        while ptr < m and z_lo_s[ptr] <= z0:
            heapq.heappush(heap, (-v_s[ptr], z_hi_s[ptr]))
            ptr += 1
        while heap and heap[0][1] <= z0:
            heapq.heappop(heap)
        vals[i] = -heap[0][0] if heap else 0.0
    return bps, vals


def envelope_volume(z_lo, z_hi, v) -> float:
    bps, vals = envelope_segments(z_lo, z_hi, v)
    if vals.size == 0:
        return 0.0
    return float(np.sum(np.diff(bps) * vals))


def staircase_sum_volume_exact(a: StaircaseSet, b: StaircaseSet, spec: SumSpec) -> float:
    """Exact volume of the lam-set sum for one-base-axis staircases."""
    z_lo, z_hi, v = staircase_sum_regions(a, b, spec)
    return envelope_volume(z_lo, z_hi, v)


def convex_quasi_sum_volume_exact(
    a: StaircaseSet, b: StaircaseSet, spec: SumSpec
) -> float:
    """Exact lam-set volume of the convex-combination quasi sum, one base axis."""
    if spec.mode != QUASI:
        raise RegimeError("spec.mode must be quasi here")
    if spec.alphas.alphas[0] != 1.0:
        raise DomainError("convex combination form needs base power 1")
    z_lo, z_hi, v = _regions(a, b, spec, _MIXED)
    return envelope_volume(z_lo, z_hi, v)


# ---------------------------------------------------------------------------
# dilation


def scalar_dilate(c: float, x, spec: SumSpec):
    """Dilation c x X: coordinate i scales by c^(1 / (p alpha_i)).

    Satisfies the group law c x (c' x X) = (c c') x X and turns the
    t-free sum of (1-t) x A and t x B into the with-t sum.
    """
    if c <= 0:
        raise DomainError(f"dilation factor must be positive, got {c}")
    alphas = spec.alphas.alphas
    if any(a == 0.0 or math.isinf(a) for a in alphas):
        raise DomainError("dilation needs finite nonzero powers")
    factors = [c ** (1.0 / (spec.p * a)) for a in alphas]
    if isinstance(x, StaircaseSet):
        if x.base_dim != spec.alphas.n:
            raise DomainError("power vector does not match set dimension")
        base = factors[:-1]
        if any(abs(f - base[0]) > 1e-12 * base[0] for f in base):
            raise GridAlignmentError(
                "unequal base powers need per-axis spacings; dilate as boxes"
            )
        f = base[0]
        grid = Grid(
            tuple(o * f for o in x.grid.origin), x.grid.spacing * f, x.grid.shape
        )
        return StaircaseSet(grid, x.heights * factors[-1])
    if isinstance(x, BoxUnion):
        if x.dim != len(factors):
            raise DomainError("power vector does not match box dimension")
        boxes = tuple(
            (
                tuple(l * f for l, f in zip(lo, factors)),
                tuple(h * f for h, f in zip(hi, factors)),
            )
            for lo, hi in x.boxes
        )
        return BoxUnion(x.dim, boxes)
    if isinstance(x, GridPointSet):
        if x.dim > len(factors):
            raise DomainError("power vector does not match point dimension")
        base = factors[: x.dim]
        if any(abs(f - base[0]) > 1e-12 * base[0] for f in base):
            raise GridAlignmentError("unequal powers need per-axis spacings")
        f = base[0]
        return GridPointSet(x.coords * f, x.spacing * f)
    raise DomainError(f"cannot dilate {type(x).__name__}")


# ---------------------------------------------------------------------------
# base-space sums of grid point sets


def lp_minkowski_sum_base(
    x: GridPointSet,
    y: GridPointSet,
    p: float,
    t: float,
    lambda_points: int = 64,
) -> GridPointSet:
    """Union over lam of {C u + D v} for grid cells u, v, snapped to the lattice.

    The lam evaluation set is the uniform grid plus lam = t (where
    C + D = 1) and, in one dimension, the per-pair maximizers of C u + D v.
    """
    if p < 1.0:
        raise RegimeError("base-space sums cover p >= 1 only")
    if abs(x.spacing - y.spacing) > 1e-9 * x.spacing:
        raise GridAlignmentError("point sets live on different lattices")
    if x.count == 0 or y.count == 0:
        raise DegenerateInputError("point set is empty")
    if x.dim != y.dim:
        raise DomainError("point sets live in different dimensions")
    spec = SumSpec(
        p=p,
        alphas=PowerVector((1.0,) * (x.dim + 1)),
        t=t,
        lambda_points=lambda_points,
    )
    lams = list(spec.lambda_grid()) + [t]
    h = x.spacing
    u = x.coords[:, None, :]
    v = y.coords[None, :, :]
    cells = []
    cd_list = [spec.coefficients(lam) for lam in np.unique(np.asarray(lams))]
    if x.dim == 1 and p > 1.0:
        lam_star = spec.pair_lambda_star(u[..., 0], v[..., 0], 1.0)
        cd_list.append(spec.coefficients(lam_star))
    for c, d in cd_list:
        c = np.asarray(c)[..., None] if np.ndim(c) else c
        d = np.asarray(d)[..., None] if np.ndim(d) else d
        z = c * u + d * v
        idx = np.floor(z / h + _SNAP).astype(np.int64)
        cells.append(idx.reshape(-1, x.dim))
    all_idx = np.unique(np.concatenate(cells, axis=0), axis=0)
    return GridPointSet(all_idx.astype(float) * h, h)


# ---------------------------------------------------------------------------
# oracle


def sum_oracle(
    a: StaircaseSet,
    b: StaircaseSet,
    spec: SumSpec,
    budget: int = 4_000_000,
    out_grid: Grid | None = None,
) -> StaircaseSet:
    """Brute-force reference sum: plain Python loops, scalar arithmetic.

    Enumerates exactly the same (cell pair, lam) tuples as the fast path,
    including the injected maximizers, but shares none of its array
    machinery.  Intended for tiny operands; raises BudgetError beyond the
    evaluation budget.
    """
    if spec.mode != CURVILINEAR or spec.p < 1.0:
        raise RegimeError("oracle covers the curvilinear p >= 1 regime")
    xa, ha = _support(a)
    xb, hb = _support(b)
    lam_values = [float(l) for l in _lambda_values(spec, a.volume, b.volume)]
    n = a.base_dim
    alphas = spec.alphas.alphas
    a_last = alphas[-1]
    inject = spec.p > 1.0 and a_last != 0.0 and not math.isinf(a_last)
    total = len(xa) * len(xb) * (len(lam_values) + (1 if inject else 0))
    if total > budget:
        raise BudgetError(f"oracle would evaluate {total} tuples, budget {budget}")
    if out_grid is None:
        out_grid = derive_out_grid(a, b, spec)

    def scalar_combine(uu: float, vv: float, cc: float, dd: float, al: float) -> float:
        if al == _INF:
            return max(uu, vv)
        if al == -_INF:
            return min(uu, vv)
        if al == 0.0:
            return uu**cc * vv**dd
        if al < 0.0 and (uu == 0.0 or vv == 0.0):
            return 0.0
        if al == 1.0:
            return cc * uu + dd * vv
        return (cc * uu**al + dd * vv**al) ** (1.0 / al)

    def coeff(lam: float) -> tuple[float, float]:
        if spec.p == 1.0:
            if spec.coefficient_form == WITH_T:
                return 1.0 - spec.t, spec.t
            return 1.0, 1.0
        invq = 1.0 - 1.0 / spec.p
        cc = (1.0 - lam) ** invq
        dd = lam**invq
        if spec.coefficient_form == WITH_T:
            cc *= (1.0 - spec.t) ** (1.0 / spec.p)
            dd *= spec.t ** (1.0 / spec.p)
        return cc, dd

    heights = np.zeros(out_grid.shape)
    h_out = out_grid.spacing
    for i in range(len(xa)):
        for j in range(len(xb)):
            lams = list(lam_values)
            if inject:
                lams.append(float(spec.pair_lambda_star(ha[i], hb[j], a_last)))
            for lam in lams:
                cc, dd = coeff(lam)
                idx = []
                for ax in range(n):
                    z = scalar_combine(xa[i, ax], xb[j, ax], cc, dd, alphas[ax])
                    k = int(math.floor((z - out_grid.origin[ax]) / h_out + _SNAP))
                    k = min(max(k, 0), out_grid.shape[ax] - 1)
                    idx.append(k)
                vert = scalar_combine(ha[i], hb[j], cc, dd, a_last)
                key = tuple(idx)
                if vert > heights[key]:
                    heights[key] = vert
    return StaircaseSet(out_grid, heights)
