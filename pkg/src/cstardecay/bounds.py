"""Certified off-diagonal decay bounds for f(A).

Two families are provided. The Hermitian family uses a Bernstein ellipse
E_chi around [-1, 1]; the general family uses a Taylor disk |z| <= R around
the field-of-values disk |z| <= r, multiplied by the Crouzeix constant Q.
Either one can be applied with band offsets (optionally with different
lower and upper bandwidths) or with graph distances in the sparsity graph.

``strict=True`` switches the prefactor to the variant that also covers the
first offset outside each polynomial degree's band (an extra factor chi or
R/r). The default keeps the textbook constants, which the first off-band
offset can exceed (f(z) = z on a tridiagonal matrix already does).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .approx import BernsteinEllipse, as_scalar_function, disk_max, ellipse_max
from .errors import InvalidRadiusError, RegionViolationError
from .matrix import Bandwidths, CStarMatrix, op_norm_upper

__all__ = [
    "CROUZEIX",
    "CROUZEIX_CONJECTURE",
    "DecayBound",
    "ChiEnvelope",
    "bernstein_bound",
    "taylor_bound",
    "asymmetric_ratios",
    "fov_disk_radius",
    "bound_matrix",
    "optimize_chi",
]

CROUZEIX = 11.08
CROUZEIX_CONJECTURE = 2.0

HERMITIAN = "hermitian-bernstein"
NONNORMAL = "nonnormal-taylor"


@dataclass(frozen=True)
class DecayBound:
    """||[f(A)]_ij|| <= prefactor * ratio_lower**(i-j) below the diagonal and
    prefactor * ratio_upper**(j-i) above it (band mode), or
    prefactor * base**d(i,j) (graph mode).

    ``base`` is 1/chi or r/R; ``ratio`` is base**(1/m).
    """

    kind: str
    prefactor: float
    ratio: float
    ratio_lower: float
    ratio_upper: float
    base: float
    distance: str = "band"
    params: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not self.prefactor > 0:
            raise ValueError("prefactor must be positive")
        for name in ("ratio", "ratio_lower", "ratio_upper", "base"):
            v = getattr(self, name)
            if not 0 <= v < 1:
                raise ValueError(f"{name} must lie in [0, 1), got {v}")
        if self.distance not in ("band", "graph"):
            raise ValueError(f"unknown distance mode {self.distance!r}")

    @property
    def theta(self) -> float:
        """Decay rate in c * exp(-theta |i-j|)."""
        return -math.log(self.ratio) if self.ratio > 0 else math.inf

    def with_distance(self, distance: str) -> "DecayBound":
        return DecayBound(self.kind, self.prefactor, self.ratio, self.ratio_lower,
                          self.ratio_upper, self.base, distance, dict(self.params))

    def offset_curve(self, offsets) -> np.ndarray:
        """c * ratio**delta for symmetric offsets delta."""
        return self.prefactor * np.power(self.ratio, np.asarray(offsets, dtype=float))


def _root(base: float, w: int) -> float:
    # An empty side of the band (w = 0) has no nonzero entries to bound.
    if w < 0:
        raise ValueError("bandwidth must be nonnegative")
    return 0.0 if w == 0 else base ** (1.0 / w)


def asymmetric_ratios(source, p: int, s: int) -> tuple:
    """Per-side ratios (lambda_1, lambda_2) = (base**(1/p), base**(1/s)).

    ``source`` is either chi (base = 1/chi) or a pair (r, R) (base = r/R).
    lambda_1 applies below the diagonal, lambda_2 above it. A zero bandwidth
    on one side gives ratio 0 there.
    """
    if isinstance(source, (tuple, list)):
        r, R = source
        if not 0 <= r < R:
            raise InvalidRadiusError(f"need 0 <= r < R, got r={r}, R={R}")
        base = r / R
    else:
        if not source > 1:
            raise ValueError(f"chi must exceed 1, got {source}")
        base = 1.0 / source
    return _root(base, p), _root(base, s)


def _sides(m, p, s):
    if p is None and s is None:
        return m, m, m
    p = m if p is None else p
    s = m if s is None else s
    return max(p, s, 1), p, s


def bernstein_bound(f, chi: float, m: int = 1, norm_fA: Optional[float] = None,
                    strict: bool = False, p: Optional[int] = None,
                    s: Optional[int] = None, samples: int = 720) -> DecayBound:
    """Decay bound for Hermitian A with spectrum in [-1, 1].

    c = max(||f(A)||, 2 M / (chi - 1)) with M = max |f| on E_chi, and
    zeta = chi**(-1/m). When ``norm_fA`` is omitted, M itself is used
    (||f(A)|| <= max |f| on [-1, 1] <= M).

    Raises RegionViolationError if f is not analytic inside E_chi.
    """
    f = as_scalar_function(f)
    m, p, s = _sides(m, p, s)
    if m < 1:
        raise ValueError("bandwidth m must be at least 1")
    M = ellipse_max(f, BernsteinEllipse(chi), samples)
    tail = 2.0 * M / (chi - 1.0)
    if strict:
        tail *= chi
    source = "op_norm_upper(f(A))" if norm_fA is not None else "M(f)"
    norm = M if norm_fA is None else float(norm_fA)
    base = 1.0 / chi
    lo, up = _root(base, p), _root(base, s)
    return DecayBound(HERMITIAN, max(norm, tail), base ** (1.0 / m), lo, up, base,
                      params={"chi": chi, "m": m, "p": p, "s": s, "M": M,
                              "norm_fA": norm, "norm_source": source, "strict": strict})


def taylor_bound(f, r: float, R: float, m: int = 1, Q: float = CROUZEIX,
                 norm_fA: Optional[float] = None, p: Optional[int] = None,
                 s: Optional[int] = None, strict: bool = False,
                 samples: int = 720) -> DecayBound:
    """Decay bound for general A whose field of values lies in |z| <= r.

    K = max(||f(A)||, Q M(R) r / (R - r)) and lambda = (r/R)**(1/m), with
    M(R) = max |f| on |z| = R. ``Q = 2`` is the conjectured Crouzeix constant
    and is flagged as not certified. Without ``norm_fA`` the surrogate Q M(R)
    is used.
    """
    f = as_scalar_function(f)
    if not 0 < r < R:
        raise InvalidRadiusError(f"need 0 < r < R, got r={r}, R={R}")
    if Q not in (CROUZEIX, CROUZEIX_CONJECTURE):
        raise ValueError(f"Q must be {CROUZEIX} or {CROUZEIX_CONJECTURE}, got {Q}")
    m, p, s = _sides(m, p, s)
    if m < 1:
        raise ValueError("bandwidth m must be at least 1")
    M = disk_max(f, R, samples)
    tail = Q * M * r / (R - r)
    if strict:
        tail *= R / r
    source = "op_norm_upper(f(A))" if norm_fA is not None else "Q*M(R)"
    norm = Q * M if norm_fA is None else float(norm_fA)
    base = r / R
    return DecayBound(NONNORMAL, max(norm, tail), base ** (1.0 / m), _root(base, p),
                      _root(base, s), base,
                      params={"r": r, "R": R, "Q": Q, "certified": Q == CROUZEIX,
                              "m": m, "p": p, "s": s, "M": M, "norm_fA": norm,
                              "norm_source": source, "strict": strict})


def fov_disk_radius(A: CStarMatrix) -> float:
    """Radius of a disk about 0 containing the closed field of values of A."""
    return op_norm_upper(A)


def _single_bound_matrix(b: DecayBound, n: int, bw: Optional[Bandwidths],
                         dist: Optional[np.ndarray]) -> np.ndarray:
    if b.distance == "graph" or dist is not None:
        if dist is None:
            raise ValueError("graph-mode bound needs a distance matrix")
        d = np.asarray(dist, dtype=float)
        out = np.zeros(d.shape)
        finite = np.isfinite(d)
        out[finite] = b.prefactor * np.power(b.base, d[finite])
        return out
    lo, up = b.ratio_lower, b.ratio_upper
    if bw is not None:
        lo, up = _root(b.base, bw.p), _root(b.base, bw.s)
    off = np.subtract.outer(np.arange(n), np.arange(n)).astype(float)
    with np.errstate(divide="ignore"):
        below = np.power(lo, np.where(off > 0, off, 0.0))
        above = np.power(up, np.where(off < 0, -off, 0.0))
    return b.prefactor * below * above


def bound_matrix(b: Union[DecayBound, Sequence[DecayBound]], n: Optional[int] = None,
                 bw: Optional[Bandwidths] = None,
                 dist: Optional[np.ndarray] = None) -> np.ndarray:
    """Entrywise bound matrix B with ||[f(A)]_ij|| <= B_ij.

    A list of bounds yields the entrywise minimum (the envelope). Passing
    ``dist`` (graph distances, ``inf`` when unreachable) selects graph mode;
    ``bw`` recomputes the per-side ratios from each bound's base.
    """
    bounds = [b] if isinstance(b, DecayBound) else list(b)
    if not bounds:
        raise ValueError("need at least one bound")
    if n is None:
        if dist is None:
            raise ValueError("need n or a distance matrix")
        n = np.asarray(dist).shape[0]
    out = _single_bound_matrix(bounds[0], n, bw, dist)
    for other in bounds[1:]:
        np.minimum(out, _single_bound_matrix(other, n, bw, dist), out=out)
    return out


@dataclass
class ChiEnvelope:
    """Pointwise minimum over chi of c(chi) * zeta(chi)**delta."""

    bounds: list
    offsets: np.ndarray
    values: np.ndarray
    best_chi: np.ndarray
    rejected: list


def optimize_chi(f, chis: Iterable[float], m: int = 1, norm_fA: Optional[float] = None,
                 max_offset: int = 50, strict: bool = False,
                 p: Optional[int] = None, s: Optional[int] = None) -> ChiEnvelope:
    """Best Bernstein bound per offset over a grid of chi.

    Values of chi for which f is not analytic inside E_chi are dropped with
    a warning; if none survive RegionViolationError is raised.
    """
    bounds, rejected = [], []
    for chi in chis:
        try:
            bounds.append(bernstein_bound(f, chi, m, norm_fA, strict, p, s))
        except RegionViolationError as exc:
            rejected.append(chi)
            warnings.warn(f"chi={chi:g} dropped: {exc}", stacklevel=2)
    if not bounds:
        raise RegionViolationError("no admissible chi in the grid")
    offsets = np.arange(max_offset + 1)
    curves = np.array([b.offset_curve(offsets) for b in bounds])
    best = np.argmin(curves, axis=0)
    chis_ok = np.array([b.params["chi"] for b in bounds])
    return ChiEnvelope(bounds, offsets, curves.min(axis=0), chis_ok[best], rejected)
