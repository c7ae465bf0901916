"""Radial profiles: the scalar maps applied to pairwise distances.

A profile f is CND1 (conditionally negative definite of order 1) when
f(|x^i - x^j|^2) is always an AND matrix, and strictly CND1 when that matrix
is strictly AND for distinct points. The shipped catalog and its class flags
are established facts (Micchelli's completely-monotonic-derivative criterion
and Schoenberg's theory), stored rather than re-proved at runtime:

    identity        t          CND1 (not strictly; f' is constant)
    power(tau)      t^tau      strictly CND1 for tau in (0, 1)
    multiquadric    (1+t)^1/2  strictly CND1
    exponential     e^-t       strictly positive definite (not CND1)

Compositions inherit flags by the composition rule: g o f is CND1 when g and
f are CND1 and f(0) = 0, strictly CND1 when additionally g is strictly CND1
and f vanishes only at 0. A positive definite g composed over a CND1 f with
f(0) = 0 stays positive definite (strictly, for f vanishing only at 0),
because f's matrix embeds as squared Euclidean distances.

Three input conventions are in play and silent mismatch is the main hazard,
so each profile records explicitly whether it consumes the distance r, the
squared distance r^2, or the p-th power r^p.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Optional

import numpy as np

from . import geometry
from .andmatrix import AndReport, check_and, verdict_rank
from .errors import VerdictMismatchError
from .geometry import DistanceMatrix, PLike, PointsLike

DISTANCE = "distance"
SQUARED_DISTANCE = "squared-distance"
PTH_POWER_DISTANCE = "p-th-power-distance"

_CONVENTIONS = (DISTANCE, SQUARED_DISTANCE, PTH_POWER_DISTANCE)


@dataclass(frozen=True)
class ClassFlags:
    cnd1: bool = False
    strictly_cnd1: bool = False
    positive_definite: bool = False
    strictly_positive_definite: bool = False
    vanishes_only_at_zero: bool = False


@dataclass(frozen=True)
class RadialProfile:
    """Immutable descriptor of a scalar radial map plus its class flags."""

    kind: str
    tau: Optional[float] = None
    outer: Optional["RadialProfile"] = None
    inner: Optional["RadialProfile"] = None
    input_convention: str = DISTANCE
    flags: ClassFlags = ClassFlags()

    def __post_init__(self):
        if self.input_convention not in _CONVENTIONS:
            raise ValueError(f"unknown input convention: {self.input_convention!r}")

    def __call__(self, t):
        return evaluate(self, t)

    def with_convention(self, convention: str) -> "RadialProfile":
        return replace(self, input_convention=convention)

    def apply_to_power_sums(self, sums, p: float) -> np.ndarray:
        """Map pairwise p-th-power sums s = ||x_i - x_j||_p^p to profile values."""
        sums = np.asarray(sums, dtype=float)
        if self.input_convention == DISTANCE:
            t = np.power(sums, 1.0 / p)
        elif self.input_convention == SQUARED_DISTANCE:
            t = np.power(sums, 2.0 / p)
        else:
            t = sums
        return evaluate(self, t)

    def describe(self) -> str:
        if self.kind == "power":
            return f"power({self.tau:g})"
        if self.kind == "composition":
            return f"({self.outer.describe()} o {self.inner.describe()})"
        return self.kind


def identity(convention: str = DISTANCE) -> RadialProfile:
    return RadialProfile(
        kind="identity",
        input_convention=convention,
        flags=ClassFlags(cnd1=True, vanishes_only_at_zero=True),
    )


def power(tau: float, convention: str = DISTANCE) -> RadialProfile:
    """t -> t^tau. Carries the CND1 flags only for tau in (0, 1).

    tau >= 1 is accepted (e.g. to exercise the derivative spot-check on a
    profile that is not CND1-generating) but earns no flags beyond tau = 1,
    which is the identity in disguise.
    """
    tau = float(tau)
    if not np.isfinite(tau) or tau <= 0.0:
        raise ValueError(f"power exponent must be positive, got {tau!r}")
    if tau < 1.0:
        flags = ClassFlags(cnd1=True, strictly_cnd1=True, vanishes_only_at_zero=True)
    elif tau == 1.0:
        flags = ClassFlags(cnd1=True, vanishes_only_at_zero=True)
    else:
        flags = ClassFlags(vanishes_only_at_zero=True)
    return RadialProfile(kind="power", tau=tau, input_convention=convention, flags=flags)


def multiquadric(convention: str = DISTANCE) -> RadialProfile:
    return RadialProfile(
        kind="multiquadric",
        input_convention=convention,
        flags=ClassFlags(cnd1=True, strictly_cnd1=True, vanishes_only_at_zero=True),
    )


def exponential(convention: str = DISTANCE) -> RadialProfile:
    return RadialProfile(
        kind="exponential",
        input_convention=convention,
        flags=ClassFlags(
            positive_definite=True,
            strictly_positive_definite=True,
            vanishes_only_at_zero=True,
        ),
    )


def compose(
    outer: RadialProfile, inner: RadialProfile, convention: Optional[str] = None
) -> RadialProfile:
    """outer o inner, with class flags derived from the composition rule.

    Flags are never upgraded beyond what the rule grants; unprovable flags
    are simply False.
    """
    inner_at_zero = evaluate(inner, 0.0)
    cnd1 = outer.flags.cnd1 and inner.flags.cnd1 and inner_at_zero == 0.0
    strictly_cnd1 = cnd1 and outer.flags.strictly_cnd1 and inner.flags.vanishes_only_at_zero
    pd = outer.flags.positive_definite and inner.flags.cnd1 and inner_at_zero == 0.0
    strictly_pd = (
        pd and outer.flags.strictly_positive_definite and inner.flags.vanishes_only_at_zero
    )
    flags = ClassFlags(
        cnd1=cnd1,
        strictly_cnd1=strictly_cnd1,
        positive_definite=pd,
        strictly_positive_definite=strictly_pd,
        vanishes_only_at_zero=(
            outer.flags.vanishes_only_at_zero and inner.flags.vanishes_only_at_zero
        ),
    )
    return RadialProfile(
        kind="composition",
        outer=outer,
        inner=inner,
        input_convention=inner.input_convention if convention is None else convention,
        flags=flags,
    )


# `classify_composition` is the operation name; `compose` the short spelling.
classify_composition = compose


def evaluate(profile: RadialProfile, t):
    """Evaluate the scalar map at t >= 0 (scalar or array)."""
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0.0):
        raise ValueError("profile argument must be non-negative")
    if profile.kind == "identity":
        out = arr
    elif profile.kind == "power":
        out = np.power(arr, profile.tau)
    elif profile.kind == "multiquadric":
        out = np.sqrt(1.0 + arr)
    elif profile.kind == "exponential":
        out = np.exp(-arr)
    elif profile.kind == "composition":
        out = evaluate(profile.outer, evaluate(profile.inner, arr))
    else:
        raise ValueError(f"unknown profile kind: {profile.kind!r}")
    if np.isscalar(t) or arr.ndim == 0:
        return float(out)
    return out


# ---------------------------------------------------------------------------
# Completely-monotonic-derivative spot check


def _derivative_of_fprime(profile: RadialProfile, order: int, t: np.ndarray) -> np.ndarray:
    """Closed-form (f')^(order) for the two catalog profiles with known forms."""
    if profile.kind == "power":
        tau = profile.tau
        coeff = tau
        for i in range(1, order + 1):
            coeff *= tau - i
        return coeff * np.power(t, tau - 1.0 - order)
    if profile.kind == "multiquadric":
        # f'(t) = (1/2)(1+t)^(-1/2)
        coeff = 0.5
        for i in range(1, order + 1):
            coeff *= 0.5 - i
        return coeff * np.power(1.0 + t, -0.5 - order)
    raise ValueError(f"unsupported profile for derivative spot-check: {profile.kind!r}")


def cm_derivative_spotcheck(profile: RadialProfile, order: int, grid) -> bool:
    """Check (-1)^k (f')^(k)(t) >= 0 on the grid for all k = 0..order.

    This is the sign pattern of a completely monotonic derivative, the
    criterion behind the CND1 catalog; analytic derivative formulas are
    shipped for power and multiquadric only, with order capped at 4.
    """
    if not 0 <= order <= 4:
        raise ValueError(f"order must be in [0, 4], got {order}")
    t = np.asarray(grid, dtype=float)
    if t.size == 0 or np.any(t <= 0.0):
        raise ValueError("grid must be non-empty with strictly positive entries")
    for k in range(order + 1):
        vals = _derivative_of_fprime(profile, k, t)
        if np.any((-1.0) ** k * vals < 0.0):
            return False
    return True


# ---------------------------------------------------------------------------
# Theory-predicted verdicts


def _base_matrix_class(convention: str, p: float):
    """What is known about the raw convention matrix itself.

    Returns (class, source) where class is "strict" (strictly AND given
    distinct points), "and" (AND, strictness not guaranteed), or None
    (no guarantee). All three convention matrices have zero diagonal.
    """
    if convention == DISTANCE:
        if 1.0 < p < 2.0:
            return "strict", f"p-norm distance matrix, p={p} in (1,2)"
        if p == 2.0:
            return "strict", "Euclidean distance matrix"
        if p == 1.0:
            return "and", "1-norm distance matrix (sum of coordinate distance matrices)"
        return None, f"p-norm distance matrix with p={p}: no guarantee"
    if convention == PTH_POWER_DISTANCE:
        if 0.0 < p < 2.0:
            return "and", f"p-th power distance matrix, p={p} in (0,2)"
        if p == 2.0:
            return "and", "squared Euclidean distance matrix"
        return None, f"p-th power distance matrix with p={p}: no guarantee"
    if convention == SQUARED_DISTANCE:
        if p == 2.0:
            return "and", "squared Euclidean distance matrix"
        return None, f"squared p-norm distance matrix with p={p}: no guarantee"
    raise ValueError(f"unknown input convention: {convention!r}")


def predict_verdict(profile: RadialProfile, p: PLike, n: int, distinct: bool):
    """Strongest AND verdict the catalog guarantees, or None if no guarantee.

    Returns (verdict, source). The identity profile passes the base matrix
    straight through; a CND1 profile over any guaranteed-AND base matrix
    gives at least AND, strictly when the profile is strictly CND1 and the
    points are distinct (nonzero off-diagonal arguments).
    """
    pe = geometry.as_pexponent(p)
    base, source = _base_matrix_class(profile.input_convention, pe.p)
    if base is None:
        return None, source
    if profile.kind == "identity":
        if base == "strict" and distinct and n >= 2:
            return "strictly-AND", source
        return "AND", source
    if profile.flags.cnd1:
        if profile.flags.strictly_cnd1 and distinct and n >= 2:
            return "strictly-AND", f"strictly CND1 profile over {source}"
        return "AND", f"CND1 profile over {source}"
    return None, f"profile carries no CND1 flag over {source}"


def predict_positive_definite(profile: RadialProfile, p: PLike, n: int, distinct: bool):
    """True when the matrix is guaranteed positive definite, else None."""
    pe = geometry.as_pexponent(p)
    base, source = _base_matrix_class(profile.input_convention, pe.p)
    if base is None or not profile.flags.strictly_positive_definite:
        return None, source
    if distinct and n >= 1:
        return True, f"strictly positive definite profile over {source}"
    return None, source


@dataclass(frozen=True)
class ProfileMatrixResult:
    matrix: DistanceMatrix
    report: AndReport
    predicted_verdict: Optional[str]
    prediction_source: str
    predicted_positive_definite: Optional[bool] = None
    min_eigenvalue: Optional[float] = None


def matrix_from_profile(
    x: PointsLike, p: PLike, profile: RadialProfile, tol: float = 1e-10
) -> ProfileMatrixResult:
    """Build the profile matrix and cross-check the observed verdict.

    The numerical verdict from check_and must be at least as strong as the
    theory-predicted verdict for (profile, p, distinctness); a weaker
    observation raises VerdictMismatchError. Matrices predicted strictly
    positive definite must additionally have min eigenvalue > 0.
    """
    pts = geometry.as_point_set(x)
    pe = geometry.as_pexponent(p)
    if pts.n < 2:
        raise ValueError("need n >= 2 points for a meaningful verdict")
    distinct = pts.is_distinct()
    dm = geometry.build_distance_matrix(pts, pe, profile)
    report = check_and(dm.entries, tol)
    predicted, source = predict_verdict(profile, pe, pts.n, distinct)
    predicted_pd, pd_source = predict_positive_definite(profile, pe, pts.n, distinct)
    min_eig = None
    if profile.flags.positive_definite:
        min_eig = float(np.linalg.eigvalsh(dm.entries).min())
    result = ProfileMatrixResult(
        matrix=dm,
        report=report,
        predicted_verdict=predicted,
        prediction_source=source,
        predicted_positive_definite=predicted_pd,
        min_eigenvalue=min_eig,
    )
    if predicted is not None and verdict_rank(report.verdict) < verdict_rank(predicted):
        raise VerdictMismatchError(
            f"predicted {predicted} ({source}) but observed {report.verdict}",
            record=result,
        )
    if predicted_pd and min_eig is not None and min_eig <= 0.0:
        raise VerdictMismatchError(
            f"predicted positive definite ({pd_source}) but min eigenvalue is {min_eig:.3e}",
            record=result,
        )
    return result


# ---------------------------------------------------------------------------
# JSON expression form


def to_json_dict(profile: RadialProfile) -> dict:
    out: dict = {"kind": profile.kind}
    if profile.kind == "power":
        out["tau"] = float(profile.tau)
    if profile.kind == "composition":
        out["outer"] = to_json_dict(profile.outer)
        out["inner"] = to_json_dict(profile.inner)
        default = profile.inner.input_convention
    else:
        default = DISTANCE
    if profile.input_convention != default:
        out["input_convention"] = profile.input_convention
    return out


def from_json_dict(obj: dict) -> RadialProfile:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError(f"not a profile expression: {obj!r}")
    kind = obj["kind"]
    convention = obj.get("input_convention")
    if kind == "identity":
        return identity(convention or DISTANCE)
    if kind == "power":
        return power(float(obj["tau"]), convention or DISTANCE)
    if kind == "multiquadric":
        return multiquadric(convention or DISTANCE)
    if kind == "exponential":
        return exponential(convention or DISTANCE)
    if kind == "composition":
        outer = from_json_dict(obj["outer"])
        inner = from_json_dict(obj["inner"])
        return compose(outer, inner, convention)
    raise ValueError(f"unknown profile kind: {kind!r}")
