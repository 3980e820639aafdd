"""Finite set representations on the nonnegative orthant.

Three concrete carriers:

* :class:`IntervalUnion` for subsets of the half line,
* :class:`BoxUnion` for finite unions of axis-aligned boxes,
* :class:`StaircaseSet` for vertically anchored cell stacks over a uniform
  base grid (the compressed normal form every summation routine consumes).

A staircase over base cells Q_i with heights v_i is the set
union_i Q_i x [0, v_i]; compression of a box union rearranges each vertical
fiber into such a stack, which preserves volume exactly as long as the box
edges live on a common rational grid.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DegenerateInputError,
    DomainError,
    GridAlignmentError,
    RangeError,
)

_EDGE_DENOMINATOR_CAP = 1 << 20


# ---------------------------------------------------------------------------
# grids


@dataclass(frozen=True)
class Grid:
    """Uniform cell grid: cell index i covers origin + [i*h, (i+1)*h) per axis."""

    origin: tuple[float, ...]
    spacing: float
    shape: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.spacing <= 0:
            raise RangeError(f"grid spacing must be positive, got {self.spacing}")
        if len(self.origin) != len(self.shape):
            raise RangeError("origin and shape dimensions differ")
        if any(s < 1 for s in self.shape):
            raise RangeError("grid shape entries must be >= 1")
        object.__setattr__(self, "origin", tuple(float(x) for x in self.origin))
        object.__setattr__(self, "shape", tuple(int(s) for s in self.shape))

    @property
    def ndim(self) -> int:
        return len(self.shape)

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.ndim

    def upper(self) -> tuple[float, ...]:
        return tuple(o + s * self.spacing for o, s in zip(self.origin, self.shape))

    def axis_edges(self, axis: int) -> np.ndarray:
        n = self.shape[axis]
        return self.origin[axis] + self.spacing * np.arange(n + 1)

    def cell_lower_corners(self) -> np.ndarray:
        """(N, ndim) array of cell lower corners in row-major cell order."""
        axes = [self.origin[i] + self.spacing * np.arange(self.shape[i]) for i in range(self.ndim)]
        mesh = np.meshgrid(*axes, indexing="ij")
        return np.stack([m.ravel() for m in mesh], axis=-1)

    def refined(self, factor: int) -> "Grid":
        return Grid(self.origin, self.spacing / factor, tuple(s * factor for s in self.shape))


# ---------------------------------------------------------------------------
# interval unions


@dataclass(frozen=True)
class IntervalUnion:
    """Finite union of closed intervals in [0, inf), stored as given."""

    intervals: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        ivs = tuple((float(a), float(b)) for a, b in self.intervals)
        for a, b in ivs:
            if a < 0 or b < a:
                raise DomainError(f"bad interval [{a}, {b}]")
        object.__setattr__(self, "intervals", ivs)

    @property
    def volume(self) -> float:
        return sum(b - a for a, b in normalize(self).intervals)

    def to_json(self) -> dict:
        return {"intervals": [[a, b] for a, b in self.intervals]}

    @classmethod
    def from_json(cls, data: dict) -> "IntervalUnion":
        return cls(tuple((a, b) for a, b in data["intervals"]))


def normalize(u: IntervalUnion) -> IntervalUnion:
    """Canonical form: sorted, disjoint, zero-length pieces dropped."""
    ivs = sorted((a, b) for a, b in u.intervals if b > a)
    merged: list[tuple[float, float]] = []
    for a, b in ivs:
        if merged and a <= merged[-1][1]:
            prev_a, prev_b = merged[-1]
            merged[-1] = (prev_a, max(prev_b, b))
        else:
            merged.append((a, b))
    return IntervalUnion(tuple(merged))


# ---------------------------------------------------------------------------
# box unions


@dataclass(frozen=True)
class BoxUnion:
    """Finite union of axis-aligned boxes in the nonnegative orthant."""

    dim: int
    boxes: tuple[tuple[tuple[float, ...], tuple[float, ...]], ...]

    def __post_init__(self) -> None:
        clean = []
        for lo, hi in self.boxes:
            lo = tuple(float(x) for x in lo)
            hi = tuple(float(x) for x in hi)
            if len(lo) != self.dim or len(hi) != self.dim:
                raise DomainError("box dimension mismatch")
            if any(l < 0 for l in lo) or any(h < l for l, h in zip(lo, hi)):
                raise DomainError(f"bad box {lo}..{hi}")
            clean.append((lo, hi))
        object.__setattr__(self, "boxes", tuple(clean))

    @property
    def volume(self) -> float:
        return box_union_volume(self)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "boxes": [{"lo": list(lo), "hi": list(hi)} for lo, hi in self.boxes],
        }

    @classmethod
    def from_json(cls, data: dict) -> "BoxUnion":
        boxes = tuple((tuple(b["lo"]), tuple(b["hi"])) for b in data["boxes"])
        return cls(int(data["dim"]), boxes)


def box_union_volume(u: BoxUnion) -> float:
    """Exact volume of a box union by coordinate-sweep occupancy.

    Edge coordinates are compressed per axis, each box marks its covered
    cell range with a corner delta of alternating sign, and a prefix sum
    recovers per-cell cover counts.
    """
    boxes = [b for b in u.boxes if all(h > l for l, h in zip(*b))]
    if not boxes:
        return 0.0
    d = u.dim
    edges = []
    for ax in range(d):
        vals = sorted({b[0][ax] for b in boxes} | {b[1][ax] for b in boxes})
        edges.append(np.asarray(vals))
    counts_shape = tuple(len(e) - 1 + 1 for e in edges)  # +1 slot absorbs hi deltas
    delta = np.zeros(counts_shape, dtype=np.int32)
    for lo, hi in boxes:
        ilo = [int(np.searchsorted(edges[ax], lo[ax])) for ax in range(d)]
        ihi = [int(np.searchsorted(edges[ax], hi[ax])) for ax in range(d)]
        for corner in range(1 << d):
            idx = tuple(
                ihi[ax] if corner >> ax & 1 else ilo[ax] for ax in range(d)
            )
            sign = -1 if bin(corner).count("1") % 2 else 1
            delta[idx] += sign
    occ = delta
    for ax in range(d):
        occ = np.cumsum(occ, axis=ax)
    occ = occ[tuple(slice(0, len(e) - 1) for e in edges)]
    widths = [np.diff(e) for e in edges]
    cellvol = widths[0]
    for w in widths[1:]:
        cellvol = np.multiply.outer(cellvol, w)
    return float(np.sum(cellvol, where=occ > 0))


def box_union_volume_ie(u: BoxUnion) -> float:
    """Inclusion-exclusion over box subsets; oracle for small unions."""
    boxes = [b for b in u.boxes if all(h > l for l, h in zip(*b))]
    m = len(boxes)
    if m > 20:
        raise DomainError("inclusion-exclusion oracle limited to 20 boxes")
    total = 0.0
    for mask in range(1, 1 << m):
        los = [max(boxes[i][0][ax] for i in range(m) if mask >> i & 1) for ax in range(u.dim)]
        his = [min(boxes[i][1][ax] for i in range(m) if mask >> i & 1) for ax in range(u.dim)]
        vol = 1.0
        for l, h in zip(los, his):
            if h <= l:
                vol = 0.0
                break
            vol *= h - l
        sign = -1.0 if bin(mask).count("1") % 2 == 0 else 1.0
        total += sign * vol
    return total


# ---------------------------------------------------------------------------
# staircase sets


@dataclass(frozen=True)
class StaircaseSet:
    """Vertically anchored stack of cells over a uniform base grid.

    heights[i] is the vertical extent of the fiber over base cell i; the
    represented set is union of cell x [0, height].  The base grid lives
    in R^n and the set in R^(n+1).
    """

    grid: Grid
    heights: np.ndarray

    def __post_init__(self) -> None:
        h = np.asarray(self.heights, dtype=float)
        if h.shape != self.grid.shape:
            raise DomainError(
                f"heights shape {h.shape} does not match grid shape {self.grid.shape}"
            )
        if np.any(h < 0) or not np.all(np.isfinite(h)):
            raise DomainError("heights must be finite and nonnegative")
        h = h.copy()
        h.setflags(write=False)
        object.__setattr__(self, "heights", h)

    @property
    def base_dim(self) -> int:
        return self.grid.ndim

    @property
    def volume(self) -> float:
        return float(np.sum(self.heights)) * self.grid.cell_volume

    @property
    def sup_height(self) -> float:
        return float(np.max(self.heights)) if self.heights.size else 0.0

    def support_cells(self) -> tuple[np.ndarray, np.ndarray]:
        """(lower corners (m, n), heights (m,)) of the cells with mass."""
        mask = self.heights.ravel() > 0
        corners = self.grid.cell_lower_corners()[mask]
        return corners, self.heights.ravel()[mask]

    def refined(self, factor: int = 2) -> "StaircaseSet":
        """Same set on a grid with cells split by ``factor`` per axis."""
        h = self.heights
        for ax in range(h.ndim):
            h = np.repeat(h, factor, axis=ax)
        return StaircaseSet(self.grid.refined(factor), h)

    def boxes(self) -> BoxUnion:
        """The staircase as an explicit box union in R^(n+1)."""
        corners, heights = self.support_cells()
        s = self.grid.spacing
        bxs = []
        for corner, v in zip(corners, heights):
            lo = tuple(corner) + (0.0,)
            hi = tuple(c + s for c in corner) + (float(v),)
            bxs.append((lo, hi))
        return BoxUnion(self.base_dim + 1, tuple(bxs))

    def to_json(self) -> dict:
        return {
            "origin": list(self.grid.origin),
            "spacing": self.grid.spacing,
            "shape": list(self.grid.shape),
            "heights": [float(v) for v in self.heights.ravel()],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StaircaseSet":
        grid = Grid(tuple(data["origin"]), float(data["spacing"]), tuple(data["shape"]))
        heights = np.asarray(data["heights"], dtype=float).reshape(grid.shape)
        return cls(grid, heights)


@dataclass(frozen=True)
class GridPointSet:
    """Finite set of grid cells given by lower corners; volume is count * h^d."""

    coords: np.ndarray
    spacing: float

    def __post_init__(self) -> None:
        c = np.atleast_2d(np.asarray(self.coords, dtype=float))
        if self.spacing <= 0:
            raise RangeError("spacing must be positive")
        c = c.copy()
        c.setflags(write=False)
        object.__setattr__(self, "coords", c)

    @property
    def dim(self) -> int:
        return self.coords.shape[1]

    @property
    def count(self) -> int:
        return 0 if self.coords.size == 0 else self.coords.shape[0]

    @property
    def volume(self) -> float:
        return self.count * self.spacing**self.dim


# ---------------------------------------------------------------------------
# compression


def _aligned_spacing(values: list[float], spacing: float | None) -> float:
    """Common rational spacing for the given edge coordinates."""
    if spacing is not None:
        for v in values:
            k = round(v / spacing)
            if abs(v - k * spacing) > 1e-9 * max(1.0, abs(v)):
                raise GridAlignmentError(
                    f"coordinate {v} is not a multiple of spacing {spacing}"
                )
        return spacing
    fracs = [Fraction(v).limit_denominator(_EDGE_DENOMINATOR_CAP) for v in values]
    for v, f in zip(values, fracs):
        if abs(float(f) - v) > 1e-12 * max(1.0, abs(v)):
            raise GridAlignmentError(
                f"coordinate {v} has no small rational representation; "
                "pass an explicit spacing"
            )
    den = 1
    for f in fracs:
        den = den * f.denominator // math.gcd(den, f.denominator)
        if den > _EDGE_DENOMINATOR_CAP:
            raise GridAlignmentError("edge coordinates are not commensurate")
    nums = [f.numerator * (den // f.denominator) for f in fracs]
    g = 0
    for n in nums:
        g = math.gcd(g, n)
    if g == 0:
        return 1.0
    return g / den


def compress(a: BoxUnion, spacing: float | None = None) -> StaircaseSet:
    """Rearrange each vertical fiber of a box union into an anchored stack.

    The last coordinate is vertical.  The base grid spacing is taken from
    ``spacing`` or derived as the coarsest rational grid through all base
    edge coordinates; misaligned inputs raise GridAlignmentError.  Volume
    is preserved exactly because each fiber is a 1-D interval union whose
    measure becomes the stack height.
    """
    if a.dim < 2:
        raise DomainError("compress needs dim >= 2 (base plus vertical)")
    n = a.dim - 1
    boxes = [b for b in a.boxes if all(h > l for l, h in zip(*b))]
    if not boxes:
        raise DegenerateInputError("cannot compress an empty union")
    base_edges = [v for (lo, hi) in boxes for v in list(lo[:n]) + list(hi[:n])]
    h = _aligned_spacing(base_edges, spacing)
    hi_max = [max(b[1][ax] for b in boxes) for ax in range(n)]
    lo_min = [min(b[0][ax] for b in boxes) for ax in range(n)]
    origin = tuple(math.floor(l / h + 1e-9) * h for l in lo_min)
    shape = tuple(
        int(math.ceil((hm - o) / h - 1e-9)) for hm, o in zip(hi_max, origin)
    )
    grid = Grid(origin, h, shape)
    heights = np.zeros(shape)
    corners = grid.cell_lower_corners().reshape(shape + (n,))
    it = np.ndindex(*shape)
    for idx in it:
        c = corners[idx]
        mid = c + h / 2.0
        fibers = []
        for lo, hi in boxes:
            if all(lo[ax] <= mid[ax] <= hi[ax] for ax in range(n)):
                fibers.append((lo[n], hi[n]))
        if fibers:
            heights[idx] = IntervalUnion(tuple(fibers)).volume
    return StaircaseSet(grid, heights)


def is_compressed(s: StaircaseSet) -> bool:
    """Staircases are compressed by construction; kept for API symmetry."""
    return True


# ---------------------------------------------------------------------------
# volumes and sections


def volume(s) -> float:
    """Volume of any carrier defined in this module."""
    if isinstance(s, (IntervalUnion, BoxUnion, StaircaseSet, GridPointSet)):
        return s.volume
    raise DomainError(f"no volume for {type(s).__name__}")


@dataclass(frozen=True)
class SectionProfile:
    """Section volume function u -> V_{k+1}(A cap (span(e_1..e_k) x R_+ + u)).

    values live on the grid of the remaining base axes; sup_norm is the
    maximum section volume.
    """

    k: int
    grid: Grid | None
    values: np.ndarray
    spacing: float

    @property
    def sup_norm(self) -> float:
        return float(np.max(self.values)) if self.values.size else 0.0

    def integral(self) -> float:
        d = 0 if self.grid is None else self.grid.ndim
        return float(np.sum(self.values)) * self.spacing**d


def section_profile(a: StaircaseSet, k: int) -> SectionProfile:
    """Integrate the fiber heights over the first k base axes.

    k = 0 returns the heights themselves; k = n collapses to a single
    number, the total volume.
    """
    n = a.base_dim
    if not 0 <= k <= n:
        raise RangeError(f"k must lie in [0, {n}], got {k}")
    h = a.grid.spacing
    vals = a.heights
    for _ in range(k):
        vals = vals.sum(axis=0) * h
    if k == n:
        return SectionProfile(k, None, np.asarray(vals, dtype=float).reshape(()), h)
    sub = Grid(a.grid.origin[k:], h, a.grid.shape[k:])
    return SectionProfile(k, sub, np.asarray(vals, dtype=float), h)


def superlevel(profile: SectionProfile, r: float) -> GridPointSet:
    """Cells where the profile reaches the fraction r of its sup."""
    if not 0.0 <= r <= 1.0:
        raise RangeError(f"r must lie in [0, 1], got {r}")
    sup = profile.sup_norm
    if sup <= 0:
        raise DegenerateInputError("profile has empty support")
    if profile.grid is None:
        raise DomainError("superlevel needs a positive-dimension profile")
    thresh = r * sup
    mask = profile.values.ravel() >= thresh - 1e-12 * sup
    corners = profile.grid.cell_lower_corners()[mask]
    return GridPointSet(corners, profile.grid.spacing)


def normalized_compression(a: StaircaseSet, k: int) -> StaircaseSet:
    """Section profile over the last n-k axes scaled to sup 1."""
    prof = section_profile(a, k)
    if prof.sup_norm <= 0:
        raise DegenerateInputError("set has zero volume")
    if prof.grid is None:
        raise DomainError("k = n leaves no base axes; use section_profile")
    return StaircaseSet(prof.grid, prof.values / prof.sup_norm)


# ---------------------------------------------------------------------------
# io helpers


def load_set(path: str):
    """Read a BoxUnion, StaircaseSet, or IntervalUnion from a JSON file."""
    with open(path) as f:
        data = json.load(f)
    return set_from_json(data)


def set_from_json(data: dict):
    if "boxes" in data:
        return BoxUnion.from_json(data)
    if "heights" in data:
        return StaircaseSet.from_json(data)
    if "intervals" in data:
        return IntervalUnion.from_json(data)
    raise DomainError("unrecognized set payload")
