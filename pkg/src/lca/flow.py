"""Riemannian gradient ascent of ``J(U) = tr(U ρ U† θ)`` on the unitary group.

Steps are exact exponential retractions ``U <- exp(i η A*) U`` along the
gradient generator ``A* = i[UρU†, θ]``, with a backtracking line search on
``η``.  ``trap_audit`` runs many such flows to check empirically that every
randomised start ends on the global maximum.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import NonConvergence, StepUnderflow
from .matcore import (
    dagger,
    exp_from_eigen,
    frobenius_norm,
    hermitian_eigen,
    random_hermitian,
    random_unitary,
    reunitarize,
    spawn_rngs,
    unitarity_defect,
    unitary_exp,
    UNITARY_TOL,
)
from .oracle import landscape_at
from .spectra import Spectrum
from .tables import permutation_of_table
from .topology import MAXIMUM, MINIMUM, analyze

log = logging.getLogger(__name__)

CONVERGED = "converged"
PRECISION_FLOOR = "precision_floor"
STEP_UNDERFLOW = "step_underflow"
MAX_ITERS = "max_iters"

# smallest step tried, relative to step0
MIN_STEP_RATIO = 2.0**-40
# increases smaller than this many ulps of the J scale cannot be resolved
RESOLUTION_ULPS = 64.0


@dataclass(frozen=True)
class FlowParams:
    step0: float | None = None  # None: 0.5 / (||θ|| ||ρ||)
    shrink: float = 0.5
    grad_tol: float = 1e-9
    max_iters: int = 100_000
    reunit_every: int = 50

    def __post_init__(self):
        if self.step0 is not None and not self.step0 > 0:
            raise ValueError("step0 must be positive")
        if not 0 < self.shrink < 1:
            raise ValueError("shrink must lie in (0, 1)")
        if not self.grad_tol > 0:
            raise ValueError("grad_tol must be positive")
        if self.max_iters < 1 or self.reunit_every < 1:
            raise ValueError("max_iters and reunit_every must be positive")


@dataclass
class Trajectory:
    J_series: list[float]
    final_U: np.ndarray
    final_grad_norm: float
    iterations: int
    converged_to: float
    status: str = CONVERGED

    @property
    def converged(self) -> bool:
        return self.status in (CONVERGED, PRECISION_FLOOR)


def default_step(rho_diag, theta_diag) -> float:
    scale = float(np.max(np.abs(rho_diag)) * np.max(np.abs(theta_diag)))
    return 0.5 / scale if scale > 0 else 0.5


def gradient_generator(u, rho_diag, theta_diag) -> np.ndarray:
    """Hermitian ascent generator ``i[UρU†, θ]``.

    The derivative of ``J(exp(isA*) U)`` at ``s = 0`` equals ``||[θ, UρU†]||_F²``.
    """
    u = np.asarray(u)
    x = (u * np.asarray(rho_diag)) @ dagger(u)
    theta = np.asarray(theta_diag, dtype=float)
    # [X, θ]_kl = X_kl (θ_l - θ_k)
    return 1j * x * (theta[None, :] - theta[:, None])


def ascend(u0, rho_diag, theta_diag, params: FlowParams | None = None, strict: bool = False) -> Trajectory:
    """Gradient ascent from ``u0`` until the generator norm drops below ``grad_tol``.

    Every accepted step strictly increases ``J``.  When no trial step can
    increase ``J`` any more, the run stops with status ``precision_floor`` if
    the predicted gain is below double-precision resolution, otherwise with
    ``step_underflow``.  With ``strict=True`` the failure statuses raise
    :class:`StepUnderflow` / :class:`NonConvergence` instead.
    """
    params = params or FlowParams()
    rho_diag = np.asarray(rho_diag, dtype=float)
    theta_diag = np.asarray(theta_diag, dtype=float)
    step0 = params.step0 or default_step(rho_diag, theta_diag)
    j_scale = float(np.sum(np.abs(rho_diag)) * np.max(np.abs(theta_diag))) or 1.0
    resolution = RESOLUTION_ULPS * np.finfo(float).eps * j_scale

    u = np.array(u0, dtype=complex)
    j = landscape_at(u, rho_diag, theta_diag)
    series = [j]
    status = MAX_ITERS
    it = 0
    g = 0.0
    while True:
        a = gradient_generator(u, rho_diag, theta_diag)
        g = frobenius_norm(a)
        if g <= params.grad_tol:
            status = CONVERGED
            break
        if it >= params.max_iters:
            status = MAX_ITERS
            break
        values, vectors = hermitian_eigen(a)
        eta = step0
        accepted = False
        while eta >= step0 * MIN_STEP_RATIO:
            trial = exp_from_eigen(values, vectors, eta) @ u
            j_trial = landscape_at(trial, rho_diag, theta_diag)
            if j_trial > j:
                accepted = True
                break
            eta *= params.shrink
        if not accepted:
            status = PRECISION_FLOOR if step0 * g * g <= resolution else STEP_UNDERFLOW
            break
        u, j = trial, j_trial
        it += 1
        if it % params.reunit_every == 0 and unitarity_defect(u) > 0.1 * UNITARY_TOL:
            u = reunitarize(u)
        series.append(j)

    if unitarity_defect(u) > 0.1 * UNITARY_TOL:
        u = reunitarize(u)
    traj = Trajectory(series, u, g, it, landscape_at(u, rho_diag, theta_diag), status)
    log.debug("ascent stopped after %d iterations: %s (grad %.3e)", it, status, g)
    if strict and status == STEP_UNDERFLOW:
        raise StepUnderflow(traj)
    if strict and status == MAX_ITERS:
        raise NonConvergence(traj)
    return traj


@dataclass
class AuditReport:
    trajectories: list[dict]
    summary: dict
    levels: list[float] = field(default_factory=list)


def _nearest_level(value, levels):
    gaps = [abs(value - lv) for lv in levels]
    i = int(np.argmin(gaps))
    return i, gaps[i]


def trap_audit(
    rho: Spectrum,
    theta: Spectrum,
    n_starts: int,
    seed,
    params: FlowParams | None = None,
    value_tol: float = 1e-6,
    saddle_kick: float = 1e-3,
    saddle_starts: bool = True,
) -> AuditReport:
    """Run ``n_starts`` Haar-random ascents plus one kicked start near each saddle.

    A saddle start is the saddle's permutation matrix multiplied by
    ``exp(iH)`` for a random Hermitian ``H`` of Frobenius norm ``saddle_kick``.
    Each final value is matched against the predicted critical levels ``J(K)``.
    """
    if n_starts < 1:
        raise ValueError("n_starts must be at least 1")
    params = params or FlowParams()
    report = analyze(rho, theta)
    levels = [rec.J for rec in report.records]
    j_max = report.summary["J_max"]
    a, t = rho.expanded(), theta.expanded()
    n = rho.n

    starts = [("haar", None)] * n_starts
    if saddle_starts:
        starts += [
            ("saddle", rec) for rec in report.records if rec.kind not in (MAXIMUM, MINIMUM) and rec.kind != "flat"
        ]
    rngs = spawn_rngs(seed, len(starts))

    rows = []
    for idx, ((origin, rec), rng) in enumerate(zip(starts, rngs)):
        if origin == "haar":
            u0 = random_unitary(n, rng)
        else:
            kick = unitary_exp(random_hermitian(n, rng, norm=saddle_kick))
            u0 = kick @ permutation_of_table(rec.table).unitary()
        traj = ascend(u0, a, t, params)
        level, gap = _nearest_level(traj.converged_to, levels)
        rows.append(
            {
                "index": idx,
                "origin": origin,
                "start_table": rec.table.tolist() if rec is not None else None,
                "J_start": traj.J_series[0],
                "converged_to": traj.converged_to,
                "iterations": traj.iterations,
                "status": traj.status,
                "final_grad_norm": traj.final_grad_norm,
                "nearest_level": level,
                "level_gap": gap,
                "at_max": abs(traj.converged_to - j_max) <= value_tol,
            }
        )

    haar = [r for r in rows if r["origin"] == "haar"]
    saddle = [r for r in rows if r["origin"] == "saddle"]
    histogram: dict[int, int] = {}
    for r in rows:
        histogram[r["nearest_level"]] = histogram.get(r["nearest_level"], 0) + 1
    summary = {
        "n": n,
        "J_max": j_max,
        "starts": len(haar),
        "saddle_starts": len(saddle),
        "fraction_at_max": sum(r["at_max"] for r in haar) / len(haar),
        "saddle_escape_fraction": (sum(r["at_max"] for r in saddle) / len(saddle)) if saddle else None,
        "all_on_levels": all(r["level_gap"] <= value_tol for r in rows),
        "histogram": [
            {"level": i, "J": levels[i], "count": histogram[i]} for i in sorted(histogram)
        ],
        "mean_iterations_haar": float(np.mean([r["iterations"] for r in haar])),
        "mean_iterations_saddle": float(np.mean([r["iterations"] for r in saddle])) if saddle else None,
        "statuses": {s: sum(r["status"] == s for r in rows) for s in sorted({r["status"] for r in rows})},
    }
    return AuditReport(rows, summary, levels)
