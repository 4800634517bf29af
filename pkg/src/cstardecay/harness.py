"""Evaluate f(A), build decay bounds, verify them entrywise and emit reports."""

from __future__ import annotations

import csv
import io
import json
import time
import warnings
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Optional

import numpy as np

from .approx import FUNCTIONS, ScalarFunction
from .bounds import (
    CROUZEIX,
    HERMITIAN,
    NONNORMAL,
    bound_matrix,
    optimize_chi,
    taylor_bound,
)
from .errors import InvalidRadiusError, PreconditionViolationError, RegionViolationError
from .funcalc import inverse_unit_triangular, matfun_hermitian, matfun_taylor
from .generators import bidiagonal_c, generate
from .matrix import (
    CStarMatrix,
    bandwidths,
    graph_distances,
    is_hermitian,
    matricial_norm,
    op_norm_upper,
)

__all__ = [
    "PipelineParams",
    "VerificationReport",
    "run_pipeline",
    "emit",
    "to_json",
    "from_json",
    "to_csv",
    "DEMO_CONFIGS",
    "demo_runs",
    "VIOLATION_SLACK",
]

VIOLATION_SLACK = 1e-8
BOUND_KINDS = ("auto", HERMITIAN, NONNORMAL, "graph")
F_NAMES = ("exp", "log_shift5", "inverse_neumann", "identity")

DEFAULT_CHI = {
    "exp": (1.5, 2.0, 5.0, 20.0),
    "identity": (1.5, 2.0, 5.0),
    "log_shift5": (1.2, 1.5, 2.0, 2.5, 2.9),
    "inverse_neumann": (1.2, 1.5, 2.0, 2.5),
}


@dataclass(frozen=True)
class PipelineParams:
    """Run parameters. Empty ``chi`` / ``R`` select per-function defaults.

    ``strict=False`` uses the textbook prefactors, which are not certified
    (see ``bounds``).
    """

    n: int = 20
    seed: int = 0
    chi: tuple = ()
    R: tuple = ()
    Q: float = CROUZEIX
    grid: int = 201
    tol: float = 1e-14
    degree: Optional[int] = None
    strict: bool = True


@dataclass(eq=False)
class VerificationReport:
    matrix_id: str
    f_name: str
    bound_kind: str
    parameters: dict
    entry_norms: np.ndarray
    bounds: np.ndarray
    max_violation_ratio: float
    truncation_certificate: float
    runtime_ms: float = field(default=0.0, compare=False)

    @property
    def passed(self) -> bool:
        return self.max_violation_ratio <= 1.0 + VIOLATION_SLACK

    def __eq__(self, other):
        if not isinstance(other, VerificationReport):
            return NotImplemented
        return (self.matrix_id == other.matrix_id and self.f_name == other.f_name
                and self.bound_kind == other.bound_kind
                and self.parameters == other.parameters
                and np.array_equal(self.entry_norms, other.entry_norms)
                and np.array_equal(self.bounds, other.bounds)
                and self.max_violation_ratio == other.max_violation_ratio
                and self.truncation_certificate == other.truncation_certificate)


# ---------------------------------------------------------------------------
# Pipeline stages
# ---------------------------------------------------------------------------

@dataclass
class _Evaluated:
    fA: CStarMatrix
    method: str
    degree: int
    certificate: float
    # f(A) = g(A_tilde) with sigma(A_tilde) in [-1, 1] (Hermitian bounds)
    g: Optional[ScalarFunction] = None
    A_tilde: Optional[CStarMatrix] = None
    # f(A) = h(B) for the disk bounds
    h: Optional[ScalarFunction] = None
    B: Optional[CStarMatrix] = None


def _taylor_eval_radius(f, r):
    sing = [abs(s) for s in (f.singularities or ())]
    if sing and min(sing) <= r:
        raise InvalidRadiusError(f"{f.name} is singular inside |z| <= {r:.6g}")
    R = r + 2.0
    if sing:
        R = min(R, 0.5 * (r + min(sing)))
    return R


def _evaluate(example_id, A, f_name, p: PipelineParams) -> _Evaluated:
    herm = is_hermitian(A)
    if f_name == "inverse_neumann":
        if example_id == "ex2":
            C = bidiagonal_c(A.n, p.grid)
            Ci = inverse_unit_triangular(C)
            fA = Ci.adjoint() @ Ci
            # singular values of C = I + N lie in [1 - ||N||, 1 + ||N||]
            rn = op_norm_upper(C - CStarMatrix.identity(A.n, A.algebra))
            if not rn < 1:
                raise PreconditionViolationError("cannot enclose the spectrum of C C^*")
            lo, hi = (1 - rn) ** 2, (1 + rn) ** 2
            half, mid = 0.5 * (hi - lo), 0.5 * (hi + lo)
            At = (A - CStarMatrix.identity(A.n, A.algebra).scale(mid)).scale(1.0 / half)
            g = ScalarFunction(lambda z: 1.0 / (half * np.asarray(z) + mid),
                               "inverse", (-mid / half,))
            return _Evaluated(fA, "exact-neumann", A.n - 1, 0.0, g=g, A_tilde=At)
        fA = inverse_unit_triangular(A)
        B = A - CStarMatrix.identity(A.n, A.algebra)
        h = ScalarFunction(lambda w: 1.0 / (1.0 + np.asarray(w)), "neumann", (-1.0,))
        return _Evaluated(fA, "exact-neumann", A.n - 1, 0.0, h=h, B=B)

    f = FUNCTIONS[f_name]
    if herm:
        res = matfun_hermitian(A, f, tol=p.tol, degree=p.degree)
        beta = res.scale
        g = f.compose_affine(beta) if beta > 0 else None
        At = A.scale(1.0 / beta) if beta > 0 else None
        return _Evaluated(res.matrix, res.method, res.degree, res.certificate,
                          g=g, A_tilde=At, h=f, B=A)
    r = op_norm_upper(A)
    res = matfun_taylor(A, f, _taylor_eval_radius(f, r), k=p.degree, tol=p.tol)
    return _Evaluated(res.matrix, res.method, res.degree, res.certificate, h=f, B=A)


def _default_radii(h, r):
    sing = [abs(s) for s in (h.singularities or ())]
    if sing:
        return tuple(r + t * (min(sing) - r) for t in (0.25, 0.5, 0.75))
    return (1.5 * r, 2.0 * r, 4.0 * r)


def _violation(norms, bounds):
    live = bounds > 0
    if not live.any():
        return 0.0
    return float(np.max(norms[live] / bounds[live]))


def _plain(x):
    if isinstance(x, dict):
        return {k: _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (np.floating, float)):
        return float(x)
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def run_pipeline(example_id: str, f_name: str = "exp", bound_kind: str = "auto",
                 params: Optional[PipelineParams] = None, A: Optional[CStarMatrix] = None,
                 **overrides) -> VerificationReport:
    """Generate (or take) A, evaluate f(A), bound it, and verify entrywise.

    ``bound_kind`` is ``hermitian-bernstein``, ``nonnormal-taylor``, ``graph``
    (graph distances, Bernstein for Hermitian A and Taylor otherwise) or
    ``auto`` (band distances, chosen the same way).
    """
    t0 = time.perf_counter()
    p = replace(params or PipelineParams(), **overrides)
    if f_name not in F_NAMES:
        raise KeyError(f"unknown function {f_name!r}; choose from {F_NAMES}")
    if bound_kind not in BOUND_KINDS:
        raise KeyError(f"unknown bound kind {bound_kind!r}; choose from {BOUND_KINDS}")
    if A is None:
        A = generate(example_id, p.n, p.seed, G=p.grid)
    ev = _evaluate(example_id, A, f_name, p)
    norm_fA = op_norm_upper(ev.fA)
    graph = bound_kind == "graph"
    kind = bound_kind
    if kind in ("auto", "graph"):
        kind = HERMITIAN if ev.g is not None else NONNORMAL

    info = {"n": A.n, "seed": p.seed, "grid": p.grid, "tol": p.tol, "degree": ev.degree,
            "method": ev.method, "strict": p.strict, "distance": "graph" if graph else "band",
            "norm_fA": norm_fA, "norm_source": "op_norm_upper(f(A))"}
    if kind == HERMITIAN:
        if ev.g is None:
            raise PreconditionViolationError(
                "hermitian-bernstein bounds need a Hermitian matrix")
        bw = bandwidths(ev.A_tilde)
        m = max(bw.m, 1)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            env = optimize_chi(ev.g, p.chi or DEFAULT_CHI[f_name], m=m, norm_fA=norm_fA,
                               strict=p.strict)
        info.update(chi=[b.params["chi"] for b in env.bounds], chi_rejected=list(env.rejected),
                    m=m, p=bw.p, s=bw.s)
        blist = env.bounds
        dist = graph_distances(ev.A_tilde) if graph else None
    else:
        r = op_norm_upper(ev.B)
        bw = bandwidths(ev.B)
        m = max(bw.m, 1)
        blist, rejected = [], []
        for R in (p.R or _default_radii(ev.h, r)):
            try:
                blist.append(taylor_bound(ev.h, r, R, m=m, Q=p.Q, norm_fA=norm_fA,
                                          p=bw.p, s=bw.s, strict=p.strict))
            except (RegionViolationError, InvalidRadiusError):
                rejected.append(R)
        if not blist:
            raise RegionViolationError(f"no admissible Taylor radius among {p.R}")
        info.update(R=[b.params["R"] for b in blist], R_rejected=rejected, r=r, Q=p.Q,
                    certified=p.Q == CROUZEIX, m=m, p=bw.p, s=bw.s)
        dist = graph_distances(ev.B) if graph else None
    if graph:
        blist = [b.with_distance("graph") for b in blist]
    B = bound_matrix(blist, A.n, dist=dist)
    norms = matricial_norm(ev.fA)
    return VerificationReport(
        matrix_id=example_id, f_name=f_name, bound_kind="graph" if graph else kind,
        parameters=_plain(info), entry_norms=norms, bounds=B,
        max_violation_ratio=_violation(norms, B),
        truncation_certificate=float(ev.certificate),
        runtime_ms=1000.0 * (time.perf_counter() - t0))


# ---------------------------------------------------------------------------
# Bundled demos
# ---------------------------------------------------------------------------

DEMO_CONFIGS = {
    "ex1": [("inverse_neumann", NONNORMAL, {}), ("inverse_neumann", "graph", {})],
    "ex2": [("inverse_neumann", HERMITIAN, {}), ("inverse_neumann", "graph", {})],
    "ex3": [("exp", HERMITIAN, {"degree": 8})],
    "ex4": [("exp", HERMITIAN, {}), ("exp", "graph", {}), ("exp", NONNORMAL, {})],
    "ex4bis": [("log_shift5", HERMITIAN, {}), ("log_shift5", NONNORMAL, {})],
    "ex6": [("exp", NONNORMAL, {}), ("exp", "graph", {}), ("exp", NONNORMAL, {"Q": 2.0})],
    "ex7a": [("exp", HERMITIAN, {}), ("exp", NONNORMAL, {})],
    "ex7b": [("exp", "graph", {}), ("exp", HERMITIAN, {})],
}


def demo_runs(example_id: str, n: int, seed: int = 0, strict_variants: bool = True):
    """Yield the report of every shipped configuration for one example,
    with the strict prefactors and, optionally, the textbook ones."""
    for f_name, kind, extra in DEMO_CONFIGS[example_id]:
        for strict in ((True, False) if strict_variants else (True,)):
            yield run_pipeline(example_id, f_name, kind, n=n, seed=seed, strict=strict,
                               **extra)


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

_FIELD_ORDER = [f.name for f in fields(VerificationReport)]


def _report_dict(report: VerificationReport, timing: bool) -> dict:
    d = {}
    for name in _FIELD_ORDER:
        if name == "runtime_ms" and not timing:
            continue
        v = getattr(report, name)
        d[name] = v.tolist() if isinstance(v, np.ndarray) else _plain(v)
    return d


def to_json(report: VerificationReport, timing: bool = False) -> str:
    return json.dumps(_report_dict(report, timing), indent=2, allow_nan=False) + "\n"


def from_json(text: str) -> VerificationReport:
    d = json.loads(text)
    d["entry_norms"] = np.asarray(d["entry_norms"], dtype=float)
    d["bounds"] = np.asarray(d["bounds"], dtype=float)
    return VerificationReport(**d)


def to_csv(report: VerificationReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["i", "j", "entry_norm", "bound"])
    n = report.entry_norms.shape[0]
    for i in range(n):
        for j in range(n):
            w.writerow([i, j, repr(float(report.entry_norms[i, j])),
                        repr(float(report.bounds[i, j]))])
    return buf.getvalue()


def emit(report: VerificationReport, format: str, path, timing: bool = False) -> Path:
    """Write ``report`` as CSV or JSON. A directory ``path`` gets a file named
    after the run."""
    if format not in ("csv", "json"):
        raise ValueError(f"format must be csv or json, got {format!r}")
    path = Path(path)
    if path.is_dir() or not path.suffix:
        path.mkdir(parents=True, exist_ok=True)
        path = path / f"{report.matrix_id}_{report.f_name}_{report.bound_kind}.{format}"
    text = to_csv(report) if format == "csv" else to_json(report, timing)
    path.write_text(text)
    return path

