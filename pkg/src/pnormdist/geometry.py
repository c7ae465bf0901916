"""Points, p-norms, and distance-matrix assembly.

The p-norm ||v||_p = (sum |v_k|^p)^(1/p) is a norm for p >= 1 and a
quasi-norm (triangle inequality fails) for 0 < p < 1; both ranges are
supported. Distance matrices are built once per unordered pair and mirrored,
so they are bitwise symmetric by construction.

File formats owned by this module: points are CSV with one point per row and
d float columns (no header); matrices are CSV with n rows of n floats.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import TYPE_CHECKING, Optional, Sequence, Union

import numpy as np

from .errors import InputError
from .serialize import fmt_float

if TYPE_CHECKING:
    from .profiles import RadialProfile


@dataclass(frozen=True)
class PExponent:
    """A validated exponent p > 0 for the p-norm."""

    p: float

    def __post_init__(self):
        p = float(self.p)
        if not np.isfinite(p) or p <= 0.0:
            raise ValueError(f"p must be a finite positive real, got {self.p!r}")
        object.__setattr__(self, "p", p)

    @property
    def is_quasi_norm(self) -> bool:
        return self.p < 1.0

    @property
    def is_norm(self) -> bool:
        return self.p >= 1.0

    @property
    def is_euclidean(self) -> bool:
        return self.p == 2.0


PLike = Union[float, PExponent]


def as_pexponent(p: PLike) -> PExponent:
    return p if isinstance(p, PExponent) else PExponent(float(p))


@dataclass(frozen=True)
class PointSet:
    """An ordered set of n points in R^d, stored as an (n, d) array."""

    points: np.ndarray

    def __post_init__(self):
        arr = np.array(self.points, dtype=float, copy=True)
        if arr.ndim != 2:
            raise ValueError(f"points must be a 2-d array, got shape {arr.shape}")
        if arr.shape[0] < 1 or arr.shape[1] < 1:
            raise ValueError(f"need n >= 1 points of dimension d >= 1, got shape {arr.shape}")
        if not np.isfinite(arr).all():
            raise ValueError("points must have finite coordinates")
        arr.setflags(write=False)
        object.__setattr__(self, "points", arr)

    @property
    def n(self) -> int:
        return self.points.shape[0]

    @property
    def d(self) -> int:
        return self.points.shape[1]

    def is_distinct(self) -> bool:
        """True if no two points coincide coordinate-wise."""
        return np.unique(self.points, axis=0).shape[0] == self.n

    def translate(self, shift) -> "PointSet":
        shift = np.asarray(shift, dtype=float)
        if shift.shape != (self.d,):
            raise ValueError(f"shift must have shape ({self.d},), got {shift.shape}")
        return PointSet(self.points + shift)

    def permute(self, order) -> "PointSet":
        return PointSet(self.points[np.asarray(order)])


PointsLike = Union[PointSet, np.ndarray, Sequence[Sequence[float]]]


def as_point_set(x: PointsLike) -> PointSet:
    return x if isinstance(x, PointSet) else PointSet(np.asarray(x, dtype=float))


@dataclass(frozen=True)
class DistanceMatrix:
    """Symmetric n x n matrix of profile values of pairwise p-norm distances."""

    entries: np.ndarray
    provenance: Optional[tuple] = None  # (PointSet, PExponent, profile or None)

    def __post_init__(self):
        arr = np.asarray(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"entries must be square, got shape {arr.shape}")
        arr = np.array(arr, copy=True)
        arr.setflags(write=False)
        object.__setattr__(self, "entries", arr)

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def pow_abs(values, p: float) -> np.ndarray:
    """|values|^p elementwise, computed as exp(p*ln|v|) with 0 mapped to 0.

    The exp/log form avoids platform-dependent pow corner cases; zero entries
    contribute exactly 0.
    """
    a = np.abs(np.asarray(values, dtype=float))
    out = np.zeros_like(a)
    nz = a > 0.0
    out[nz] = np.exp(p * np.log(a[nz]))
    return out


def pnorm(v, p: PLike) -> float:
    """(sum_k |v_k|^p)^(1/p); returns 0 exactly iff v = 0."""
    pe = as_pexponent(p)
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size < 1:
        raise ValueError(f"v must be a 1-d vector of dimension >= 1, got shape {v.shape}")
    if not np.isfinite(v).all():
        raise ValueError("v must have finite coordinates")
    s = pow_abs(v, pe.p).sum()
    if s == 0.0:
        return 0.0
    return float(s ** (1.0 / pe.p))


def _pairwise_power_sums(pts: PointSet, p: float):
    """sum_k |x_i,k - x_j,k|^p for each unordered pair i < j.

    Returns (iu, ju, sums) with the upper-triangle index arrays.
    """
    iu, ju = np.triu_indices(pts.n, 1)
    diffs = pts.points[iu] - pts.points[ju]
    sums = pow_abs(diffs, p).sum(axis=1)
    return iu, ju, sums


def build_distance_matrix(
    x: PointsLike, p: PLike, profile: "Optional[RadialProfile]" = None
) -> DistanceMatrix:
    """Assemble A_ij = profile(||x_i - x_j||_p), each unordered pair computed once.

    `profile=None` means the raw p-norm distance (identity profile). A
    profile's `input_convention` decides whether it consumes the distance r,
    the squared distance r^2, or the p-th power r^p; the diagonal is the
    profile's value at 0 (exactly 0 for the raw distance).
    """
    pts = as_point_set(x)
    pe = as_pexponent(p)
    n = pts.n
    entries = np.zeros((n, n))
    if n > 1:
        iu, ju, sums = _pairwise_power_sums(pts, pe.p)
        if profile is None:
            vals = np.power(sums, 1.0 / pe.p)
        else:
            vals = profile.apply_to_power_sums(sums, pe.p)
        entries[iu, ju] = vals
        entries[ju, iu] = vals
    diag = 0.0 if profile is None else profile(0.0)
    np.fill_diagonal(entries, diag)
    return DistanceMatrix(entries, provenance=(pts, pe, profile))


# ---------------------------------------------------------------------------
# CSV formats


def _read_rows(path) -> list[list[float]]:
    rows = []
    width = None
    with open(path, "r", newline="", encoding="utf-8") as fh:
        for lineno, row in enumerate(csv.reader(fh), start=1):
            if not row or all(cell.strip() == "" for cell in row):
                continue  # tolerate blank lines
            vals = []
            for col, cell in enumerate(row, start=1):
                try:
                    vals.append(float(cell))
                except ValueError:
                    raise InputError(
                        f"{path}:{lineno}: column {col}: not a number: {cell.strip()!r}"
                    ) from None
            if width is None:
                width = len(vals)
            elif len(vals) != width:
                raise InputError(
                    f"{path}:{lineno}: expected {width} columns, got {len(vals)}"
                )
            rows.append(vals)
    if not rows:
        raise InputError(f"{path}: no data rows")
    return rows


def read_points_csv(path) -> PointSet:
    """Read points from CSV (one point per row, d float columns, no header)."""
    try:
        return PointSet(np.array(_read_rows(path)))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def write_points_csv(path, points: PointsLike) -> None:
    pts = as_point_set(points)
    with open(path, "w", encoding="utf-8") as fh:
        for row in pts.points:
            fh.write(",".join(fmt_float(v) for v in row))
            fh.write("\n")


def read_matrix_csv(path) -> np.ndarray:
    """Read an n x n float matrix from CSV (no header)."""
    rows = _read_rows(path)
    arr = np.array(rows)
    if arr.shape[0] != arr.shape[1]:
        raise InputError(f"{path}: expected a square matrix, got shape {arr.shape}")
    return arr


def write_matrix_csv(path, matrix) -> None:
    arr = matrix.entries if isinstance(matrix, DistanceMatrix) else np.asarray(matrix, dtype=float)
    with open(path, "w", encoding="utf-8") as fh:
        for row in np.atleast_2d(arr):
            fh.write(",".join(fmt_float(v) for v in row))
            fh.write("\n")
