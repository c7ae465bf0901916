"""Almost-negative-definite (AND) matrix machinery.

A symmetric A is AND when y^T A y <= 0 for every y in the zero-sum
hyperplane Z_n = {y : sum y_i = 0}, and strictly AND when the inequality is
strict for nonzero y. The test basis is f^i = e^n - e^i (i < n), which spans
Z_n with integer entries; in that basis the negated form has the closed-form
entries

    B'_ij = A_in + A_nj - A_ij - A_nn,   1 <= i, j <= n-1,

so A is AND iff B' is non-negative definite, strictly AND iff B' is positive
definite.

An AND matrix with zero diagonal is exactly a matrix of squared Euclidean
distances (Schoenberg): A_ij = |y^i - y^j|^2 for some vectors y^i. The
embedding here follows that construction, fixing y^n = 0.

A strictly AND matrix with non-negative trace has n-1 negative and 1
positive eigenvalue, hence (-1)^(n-1) det A > 0; `det_sign_certificate`
checks that sign numerically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import EmbeddingError, NotAndError, NotPsdError

VERDICT_NOT_AND = "not-AND"
VERDICT_AND = "AND"
VERDICT_STRICTLY_AND = "strictly-AND"

_VERDICT_RANK = {VERDICT_NOT_AND: 0, VERDICT_AND: 1, VERDICT_STRICTLY_AND: 2}

DEFAULT_EIG_TOL = 1e-10


def verdict_rank(verdict: str) -> int:
    return _VERDICT_RANK[verdict]


def _require_symmetric(A) -> np.ndarray:
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"matrix must be square, got shape {A.shape}")
    if not np.array_equal(A, A.T):
        raise ValueError("matrix must be symmetric")
    return A


@dataclass(frozen=True)
class AndReport:
    """Verdict record for one matrix.

    restricted_eigenvalues is the spectrum of the (negated-back) quadratic
    form of A on the zero-sum hyperplane, i.e. the negatives of B''s
    eigenvalues, sorted ascending. det_log_magnitude is None when the
    determinant is numerically zero.
    """

    verdict: str
    restricted_eigenvalues: np.ndarray
    trace: float
    det_sign: int
    det_log_magnitude: Optional[float]

    def to_json_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "eigenvalues": [float(v) for v in self.restricted_eigenvalues],
            "trace": float(self.trace),
            "det_sign": int(self.det_sign),
            "det_log_magnitude": (
                "zero" if self.det_log_magnitude is None else float(self.det_log_magnitude)
            ),
        }


def restrict_to_zero_sum(A) -> np.ndarray:
    """Negated form of A on the zero-sum hyperplane, in the e^n - e^i basis.

    Returns the (n-1) x (n-1) matrix B' with B'_ij = A_in + A_nj - A_ij - A_nn.
    A is AND iff B' is non-negative definite; strictly AND iff positive
    definite.
    """
    A = _require_symmetric(A)
    n = A.shape[0]
    if n < 2:
        raise ValueError("need n >= 2")
    return A[:-1, -1][:, None] + A[-1, :-1][None, :] - A[:-1, :-1] - A[-1, -1]


def det_sign_logmag(A, tol: float = DEFAULT_EIG_TOL):
    """Sign and log-magnitude of det(A) by partially pivoted elimination.

    Tracks the permutation parity and accumulates log|pivot| so the magnitude
    never overflows; a pivot below tol*max(1, |A|_max) makes the determinant
    numerically zero, returned as (0, None).
    """
    U = np.array(A, dtype=float, copy=True)
    n = U.shape[0]
    scale = max(1.0, float(np.abs(U).max())) if U.size else 1.0
    cut = tol * scale
    sign = 1
    logmag = 0.0
    for k in range(n):
        piv = k + int(np.argmax(np.abs(U[k:, k])))
        if abs(U[piv, k]) <= cut:
            return 0, None
        if piv != k:
            U[[k, piv]] = U[[piv, k]]
            sign = -sign
        pivot = U[k, k]
        if pivot < 0:
            sign = -sign
        logmag += math.log(abs(pivot))
        if k + 1 < n:
            U[k + 1 :, k:] -= np.outer(U[k + 1 :, k] / pivot, U[k, k:])
    return sign, logmag


def check_and(A, tol: float = DEFAULT_EIG_TOL) -> AndReport:
    """Classify A as not-AND / AND / strictly-AND from its restricted spectrum.

    Eigenvalue comparisons are relative to scale = max(1, |A|_max); the
    determinant sign comes from sign-tracking pivoted elimination on A itself.
    """
    A = _require_symmetric(A)
    n = A.shape[0]
    if n < 2:
        raise ValueError("need n >= 2 (the zero-sum hyperplane of a 1x1 matrix is trivial)")
    B = restrict_to_zero_sum(A)
    mu = np.linalg.eigvalsh(B)
    scale = max(1.0, float(np.abs(A).max()))
    if mu.min() > tol * scale:
        verdict = VERDICT_STRICTLY_AND
    elif mu.min() >= -tol * scale:
        verdict = VERDICT_AND
    else:
        verdict = VERDICT_NOT_AND
    sign, logmag = det_sign_logmag(A, tol)
    restricted = np.sort(-mu)
    return AndReport(
        verdict=verdict,
        restricted_eigenvalues=restricted,
        trace=float(np.trace(A)),
        det_sign=sign,
        det_log_magnitude=logmag,
    )


def psd_factor(B, tol: float = DEFAULT_EIG_TOL) -> np.ndarray:
    """Factor a non-negative definite B as B = P^T P via eigendecomposition.

    Eigenvalues in [-tol*||B||, 0] are clamped to 0 (rank-deficient input is
    a first-class case); anything below raises NotPsdError.
    """
    B = _require_symmetric(B)
    w, V = np.linalg.eigh(B)
    norm = float(np.abs(w).max()) if w.size else 0.0
    if w.size and w.min() < -tol * norm:
        raise NotPsdError(
            f"matrix is not non-negative definite: min eigenvalue {w.min():.3e} "
            f"< -tol*||B|| = {-tol * norm:.3e}"
        )
    w = np.clip(w, 0.0, None)
    return np.sqrt(w)[:, None] * V.T  # rows sqrt(w_i) * v_i^T, so P^T P = B


@dataclass(frozen=True)
class Embedding:
    """Vectors y^1..y^n with |y^i - y^j|^2 reproducing a zero-diagonal AND matrix.

    y^n = 0 exactly by construction; residual = max_ij | |y^i-y^j|^2 - A_ij |.
    """

    vectors: np.ndarray
    residual: float

    @property
    def n(self) -> int:
        return self.vectors.shape[0]

    def squared_distances(self) -> np.ndarray:
        G = self.vectors @ self.vectors.T
        sq = np.diag(G)[:, None] + np.diag(G)[None, :] - 2.0 * G
        return sq


def schoenberg_embed(A, tol: float = DEFAULT_EIG_TOL, rank: Optional[int] = None) -> Embedding:
    """Embed a zero-diagonal AND matrix as squared Euclidean distances.

    Construction: B' = restrict_to_zero_sum(A); P with P^T P = B'; the
    embedding vectors are the columns of P/sqrt(2) plus the zero vector, in
    dimension n-1 (or `rank` if truncation is requested, keeping the
    dominant eigendirections). Distinctness transfers: A_ij != 0 for i != j
    implies y^i != y^j.
    """
    A = _require_symmetric(A)
    n = A.shape[0]
    if np.any(np.diag(A) != 0.0):
        raise ValueError("matrix must have an exactly zero diagonal")
    report = check_and(A, tol)
    if report.verdict == VERDICT_NOT_AND:
        raise NotAndError(
            "matrix is not almost negative definite; no squared-distance embedding exists",
            record=report,
        )
    B = restrict_to_zero_sum(A)
    P = psd_factor(B, tol)  # rows ordered by ascending eigenvalue
    if rank is not None:
        if not 1 <= rank <= n - 1:
            raise ValueError(f"rank must be in [1, {n - 1}], got {rank}")
        P = P[-rank:]  # keep the largest-eigenvalue rows
    vectors = np.zeros((n, P.shape[0]))
    vectors[: n - 1] = P.T / math.sqrt(2.0)
    emb = Embedding(vectors=vectors, residual=0.0)
    residual = float(np.abs(emb.squared_distances() - A).max())
    scale = max(1.0, float(np.abs(A).max()))
    if rank is None and residual > 10.0 * tol * scale:
        raise EmbeddingError(
            f"embedding residual {residual:.3e} exceeds tolerance {10.0 * tol * scale:.3e}"
        )
    return Embedding(vectors=vectors, residual=residual)


@dataclass(frozen=True)
class DetSignCertificate:
    sign: int
    verified: bool
    report: AndReport


def det_sign_certificate(A, tol: float = DEFAULT_EIG_TOL) -> DetSignCertificate:
    """Certify (-1)^(n-1) det A > 0 for a strictly AND matrix with trace >= 0.

    `verified` is False only on numerical breakdown (the identity holds in
    exact arithmetic); the failure is reported, never silently corrected.
    """
    A = _require_symmetric(A)
    n = A.shape[0]
    report = check_and(A, tol)
    if report.verdict != VERDICT_STRICTLY_AND:
        raise ValueError(f"matrix is not strictly AND (verdict: {report.verdict})")
    if report.trace < 0.0:
        raise ValueError(f"trace must be non-negative, got {report.trace}")
    expected = 1 if (n - 1) % 2 == 0 else -1
    return DetSignCertificate(
        sign=report.det_sign, verified=report.det_sign == expected, report=report
    )
