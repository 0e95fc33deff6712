"""Desk-scale composite experiments over the walk samplers.

Five pipelines: equidistribution certification of a walk's endpoint
distribution, recurrence of the walk to the identity ball with block
statistics, conditional behavior around a recurrence event, the
maximal-inequality stability test for the continuous model, and a
saturation-window scan of low-complexity visit frequencies.

Every empirical frequency carries a 99% Clopper-Pearson interval and all
verdicts compare intervals, never bare points. Where an exact reference
volume exists (state space) it is used; unitary-space references are Monte
Carlo Haar volumes and reports carry a reference="MC" tag, since the
large-d constants of the printed volume bounds are vacuous at desk scale.
Outputs are deterministic functions of (parameters, rng state); JSON
summaries embed schema_version for downstream consumers.
"""

from __future__ import annotations

import csv
import dataclasses
import json
import math
from pathlib import Path

import numpy as np

from . import complexity as cx
from . import ensembles, geometry, moments, qmath

SCHEMA_VERSION = 1
CONFIDENCE = 0.99


def write_json(path, payload: dict):
    Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def write_csv(path, fieldnames, rows):
    with open(path, "w", newline="") as fh:
        writer = csv.DictWriter(fh, fieldnames=fieldnames)
        writer.writeheader()
        for row in rows:
            writer.writerow(row)


def _arch_params(arch: ensembles.CircuitArchitecture) -> dict:
    return {
        "kind": arch.kind,
        "n": arch.n,
        "q": arch.q,
        "graph": [list(e) for e in arch.graph],
        "gateset": arch.gateset.name if arch.gateset else None,
        "slh_dt": arch.slh_dt if arch.kind == "slh" else None,
    }


def _e0(d: int) -> np.ndarray:
    vec = np.zeros(d, dtype=complex)
    vec[0] = 1.0
    return vec


# ---------------------------------------------------------------------------
# Equidistribution certification


@dataclasses.dataclass(frozen=True)
class EquidCell:
    center_index: int
    radius: float
    hits: int
    n_samples: int
    estimate: float
    ci_low: float
    ci_high: float
    ref_low: float
    ref_high: float

    @property
    def contained(self) -> bool:
        return self.ref_low <= self.ci_low and self.ci_high <= self.ref_high

    @property
    def disjoint(self) -> bool:
        return self.ci_high < self.ref_low or self.ci_low > self.ref_high


@dataclasses.dataclass(frozen=True)
class EquidCertificate:
    """Ball-measure audit of the endpoint distribution at depth t.

    verdict pass iff every cell's CI sits inside [ref(alpha R), ref(beta R)];
    fail iff some cell's CI is disjoint from its reference interval.
    """

    arch: ensembles.CircuitArchitecture
    space: str
    t: int
    eps: float
    alpha: float
    beta: float
    n_centers: int
    n_samples: int
    radii: tuple
    reference: str
    cells: tuple
    verdict: str
    guidance: str | None = None
    seed: int | None = None

    def summary(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "experiment": "equidistribution_certificate",
            "params": {
                "arch": _arch_params(self.arch), "space": self.space,
                "t": self.t, "eps": self.eps, "alpha": self.alpha,
                "beta": self.beta, "n_centers": self.n_centers,
                "n_samples": self.n_samples, "radii": list(self.radii),
                "seed": self.seed,
            },
            "reference": self.reference,
            "verdict": self.verdict,
            "guidance": self.guidance,
            "cells": [dataclasses.asdict(c) | {"contained": c.contained,
                                               "disjoint": c.disjoint}
                      for c in self.cells],
        }

    def csv_rows(self):
        fields = ["center_index", "radius", "hits", "n_samples", "estimate",
                  "ci_low", "ci_high", "ref_low", "ref_high", "contained",
                  "disjoint"]
        rows = [dataclasses.asdict(c) | {"contained": c.contained,
                                         "disjoint": c.disjoint}
                for c in self.cells]
        return fields, rows


def _state_ball_volume(d: int, radius: float) -> float:
    return geometry.vol_state_ball(d, min(radius, 1.0))


def certify_equidistribution(arch: ensembles.CircuitArchitecture, t: int,
                             eps: float, alpha: float, beta: float,
                             n_centers: int, n_samples: int, rng,
                             space: str = "state",
                             mc_reference_samples: int = 200_000,
                             seed: int | None = None) -> EquidCertificate:
    """Estimate endpoint-ball measures at radii {eps, 2 eps} around Haar
    centers and compare against reference volumes at alpha R and beta R."""
    if space not in ("state", "unitary"):
        raise ValueError(f"space must be state or unitary, got {space!r}")
    if not 0 < alpha <= beta:
        raise ValueError("need 0 < alpha <= beta")
    d = arch.d
    radii = (eps, 2.0 * eps)

    endpoints = ensembles.walk_endpoint_matrices(arch, t, n_samples, rng)
    if space == "state":
        points = endpoints @ _e0(d)
        centers = qmath.haar_state_vectors(d, n_centers, rng)
        reference = "exact"
        ref = _state_ball_volume
    else:
        points = endpoints
        centers = qmath.haar_unitary_matrices(d, n_centers, rng)
        reference = "MC"
        ref_cache = {}

        def ref(dd, radius):
            radius = min(radius, 2.0)
            if radius not in ref_cache:
                ref_cache[radius] = geometry.mc_ball_volume(
                    "unitary", dd, radius, mc_reference_samples, rng).estimate
            return ref_cache[radius]

    cells = []
    for c_idx in range(n_centers):
        if space == "state":
            dists = qmath.batched_distance_state(points, centers[c_idx])
        else:
            dists = qmath.batched_distance_unitary(points, centers[c_idx])
        for radius in radii:
            hits = int(np.count_nonzero(dists <= radius))
            lo, hi = geometry.clopper_pearson(hits, n_samples, CONFIDENCE)
            cells.append(EquidCell(
                center_index=c_idx, radius=radius, hits=hits,
                n_samples=n_samples, estimate=hits / n_samples,
                ci_low=lo, ci_high=hi,
                ref_low=ref(d, alpha * radius), ref_high=ref(d, beta * radius)))

    if any(c.disjoint for c in cells):
        verdict = "fail"
    elif all(c.contained for c in cells):
        verdict = "pass"
    else:
        verdict = "inconclusive"
    guidance = None
    if verdict == "inconclusive" and any(c.hits == 0 for c in cells):
        guidance = "zero-hit cells cannot separate the hypotheses; raise n_samples"
    return EquidCertificate(arch=arch, space=space, t=t, eps=eps, alpha=alpha,
                            beta=beta, n_centers=n_centers, n_samples=n_samples,
                            radii=radii, reference=reference, cells=tuple(cells),
                            verdict=verdict, guidance=guidance, seed=seed)


# ---------------------------------------------------------------------------
# Recurrence statistics


@dataclasses.dataclass(frozen=True)
class RecurrenceReport:
    """Per-realization recurrence times plus pooled block-hit statistics.

    saturation_time is the end of the certified equilibration window
    (tau_block); the recurrence search starts strictly after it, so every
    counted recurrence_time exceeds it by construction.
    """

    arch: ensembles.CircuitArchitecture
    eps: float
    r1: int
    r2: int
    tau_block: int
    t_max: int
    n_realizations: int
    recurrence_times: tuple
    blocks_to_hit: tuple
    censored: int
    block_hits: int
    block_trials: int
    block_hit_ci: tuple
    vol_reference: geometry.MCVolume | None
    reference: str
    min_complexity_in_window: tuple | None
    bounds: dict | None
    seed: int | None = None

    def __post_init__(self):
        for rt in self.recurrence_times:
            if rt is not None and rt <= self.tau_block:
                raise ValueError("counted recurrences must follow the "
                                 "saturation window")

    @property
    def saturation_time(self) -> int:
        return self.tau_block

    @property
    def mean_blocks(self) -> float | None:
        vals = [b for b in self.blocks_to_hit if b is not None]
        return float(np.mean(vals)) if vals else None

    def summary(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "experiment": "recurrence",
            "params": {
                "arch": _arch_params(self.arch), "eps": self.eps,
                "r1": self.r1, "r2": self.r2, "tau_block": self.tau_block,
                "t_max": self.t_max, "n_realizations": self.n_realizations,
                "seed": self.seed,
            },
            "reference": self.reference,
            "censored": self.censored,
            "mean_blocks_to_hit": self.mean_blocks,
            "block_hits": self.block_hits,
            "block_trials": self.block_trials,
            "block_hit_ci": list(self.block_hit_ci),
            "vol_reference": None if self.vol_reference is None else {
                "estimate": self.vol_reference.estimate,
                "ci_low": self.vol_reference.ci_low,
                "ci_high": self.vol_reference.ci_high,
                "n_samples": self.vol_reference.n_samples,
            },
            "bounds": self.bounds,
        }

    def csv_rows(self):
        fields = ["realization", "recurrence_time", "blocks_to_hit", "censored",
                  "min_complexity_in_window"]
        rows = []
        for i, rt in enumerate(self.recurrence_times):
            mc = None
            if self.min_complexity_in_window is not None:
                mc = self.min_complexity_in_window[i]
            rows.append({
                "realization": i,
                "recurrence_time": "" if rt is None else rt,
                "blocks_to_hit": "" if self.blocks_to_hit[i] is None
                                 else self.blocks_to_hit[i],
                "censored": rt is None,
                "min_complexity_in_window":
                    "" if mc is None else ("exceeds r_max" if mc == -1 else mc),
            })
        return fields, rows


def run_recurrence(arch: ensembles.CircuitArchitecture, eps: float, r1: int,
                   r2: int, t_max: int, n_realizations: int, tau_block: int,
                   rng, complexity_gateset: ensembles.GateSet | None = None,
                   complexity_r_max: int = 6,
                   bound_inputs: moments.BoundInputs | None = None,
                   vol_samples: int = 200_000,
                   seed: int | None = None) -> RecurrenceReport:
    """First return of the walk to B(I, eps) after the equilibration window.

    The primary observable is the r2 = 0 recurrence (distance to the
    identity), checked every step; block statistics examine the endpoints
    t = tau_block * k, k >= 2, whose hit count against the Haar ball volume
    is the geometric-law reference. Realizations with no block hit by t_max
    are censored, never extrapolated.
    """
    if arch.kind == "slh":
        raise ensembles.ArchitectureError("recurrence runs on discrete walks")
    if tau_block < 1 or t_max <= tau_block:
        raise ValueError("need tau_block >= 1 and t_max > tau_block")
    d = arch.d

    vol = geometry.mc_ball_volume("unitary", d, eps, vol_samples, rng)

    table = None
    if complexity_gateset is not None:
        if complexity_gateset.q ** complexity_gateset.locality != d:
            raise qmath.DimensionMismatchError(
                "complexity gate set acts on a different dimension than the walk")
        table = cx.WordTable(complexity_gateset, complexity_r_max)

    rec_times = [None] * n_realizations
    blocks = [None] * n_realizations
    min_cx = [None] * n_realizations if table is not None else None
    block_hits = 0
    block_trials = 0

    unitaries = np.broadcast_to(np.eye(d, dtype=complex),
                                (n_realizations, d, d)).copy()
    active = np.arange(n_realizations)
    t = 0
    while len(active) and t < t_max:
        t += 1
        steps = ensembles.step_matrices(arch, len(active), rng)
        unitaries[active] = steps @ unitaries[active]
        dists = qmath.batched_distance_to_identity(unitaries[active])

        if table is not None and t <= tau_block:
            for pos, w in enumerate(active):
                res = table.complexity_unitary(unitaries[w], eps)
                val = -1 if res.value is None else res.value
                if min_cx[w] is None or (val >= 0 and (min_cx[w] < 0 or val < min_cx[w])):
                    min_cx[w] = val

        if t > tau_block:
            hit = dists <= eps
            for pos in np.nonzero(hit)[0]:
                w = active[pos]
                if rec_times[w] is None:
                    rec_times[w] = t
            if t % tau_block == 0:
                k = t // tau_block - 1
                block_trials += len(active)
                block_hits += int(np.count_nonzero(hit))
                finished = []
                for pos in np.nonzero(hit)[0]:
                    w = active[pos]
                    blocks[w] = k
                    finished.append(w)
                if finished:
                    active = active[~np.isin(active, finished)]

    censored = sum(1 for b in blocks if b is None)
    ci = geometry.clopper_pearson(block_hits, max(block_trials, 1), CONFIDENCE)

    bounds = None
    if bound_inputs is not None:
        bound_inputs = dataclasses.replace(bound_inputs, r1=r1, r2=r2)
        bounds = moments.design_depth_formulas(bound_inputs, "recurrence_T1_T2")

    return RecurrenceReport(
        arch=arch, eps=eps, r1=r1, r2=r2, tau_block=tau_block, t_max=t_max,
        n_realizations=n_realizations, recurrence_times=tuple(rec_times),
        blocks_to_hit=tuple(blocks), censored=censored, block_hits=block_hits,
        block_trials=block_trials, block_hit_ci=ci, vol_reference=vol,
        reference="MC", min_complexity_in_window=None if min_cx is None
        else tuple(min_cx), bounds=bounds, seed=seed)


# ---------------------------------------------------------------------------
# Conditional behavior around a recurrence


@dataclasses.dataclass(frozen=True)
class ConditionalProfile:
    """P(far at t-T and t+T | walk in B(I, eps) at t) over a grid of T."""

    arch: ensembles.CircuitArchitecture
    eps: float
    far_eps: float
    t: int
    n_realizations: int
    n_conditioned: int
    rows: tuple
    inconclusive: bool
    seed: int | None = None

    def summary(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "experiment": "conditional_recurrence_profile",
            "params": {
                "arch": _arch_params(self.arch), "eps": self.eps,
                "far_eps": self.far_eps, "t": self.t,
                "n_realizations": self.n_realizations, "seed": self.seed,
            },
            "n_conditioned": self.n_conditioned,
            "inconclusive": self.inconclusive,
            "rows": [dict(r) for r in self.rows],
        }

    def csv_rows(self):
        fields = ["T", "n_conditioned", "far_hits", "far_freq", "far_ci_low",
                  "far_ci_high", "complexity_hits", "complexity_freq",
                  "complexity_inconclusive"]
        rows = []
        for r in self.rows:
            row = {f: r.get(f, "") for f in fields}
            rows.append(row)
        return fields, rows


def conditional_recurrence_profile(arch: ensembles.CircuitArchitecture,
                                   eps: float, T_grid, t: int,
                                   n_realizations: int, rng,
                                   far_eps: float | None = None,
                                   complexity_gateset=None, r: int | None = None,
                                   min_conditioned: int = 100,
                                   seed: int | None = None) -> ConditionalProfile:
    """Condition on D(U_t, I) <= eps and measure how often the walk is far
    (distance > far_eps, optionally complexity > r) at both t-T and t+T."""
    if arch.kind == "slh":
        raise ensembles.ArchitectureError("profile runs on discrete walks")
    T_grid = sorted(int(T) for T in T_grid)
    if T_grid and (T_grid[0] < 0 or T_grid[-1] > t):
        raise ValueError("need 0 <= T <= t for every grid entry")
    far = 2.0 * eps if far_eps is None else far_eps
    d = arch.d
    horizon = t + (T_grid[-1] if T_grid else 0)

    need = sorted({t} | {t - T for T in T_grid} | {t + T for T in T_grid})
    snapshots = {}
    unitaries = np.broadcast_to(np.eye(d, dtype=complex),
                                (n_realizations, d, d)).copy()
    if 0 in need:
        snapshots[0] = unitaries.copy()
    for step in range(1, horizon + 1):
        unitaries = ensembles.step_matrices(arch, n_realizations, rng) @ unitaries
        if step in need:
            snapshots[step] = unitaries.copy()

    cond = qmath.batched_distance_to_identity(snapshots[t]) <= eps
    n_cond = int(np.count_nonzero(cond))

    table = None
    if complexity_gateset is not None and r is not None:
        table = cx.WordTable(complexity_gateset, r)

    rows = []
    for T in T_grid:
        before = snapshots[t - T][cond]
        after = snapshots[t + T][cond]
        far_both = ((qmath.batched_distance_to_identity(before) > far)
                    & (qmath.batched_distance_to_identity(after) > far))
        hits = int(np.count_nonzero(far_both))
        lo, hi = geometry.clopper_pearson(hits, max(n_cond, 1), CONFIDENCE)
        row = {"T": T, "n_conditioned": n_cond, "far_hits": hits,
               "far_freq": hits / n_cond if n_cond else math.nan,
               "far_ci_low": lo, "far_ci_high": hi}
        if table is not None:
            c_hits = 0
            trunc = False
            for u_b, u_a in zip(before, after):
                res_b = table.complexity_unitary(u_b, eps)
                res_a = table.complexity_unitary(u_a, eps)
                trunc = trunc or res_b.truncated or res_a.truncated
                big_b = res_b.value is None or res_b.value > r
                big_a = res_a.value is None or res_a.value > r
                if big_b and big_a:
                    c_hits += 1
            row["complexity_hits"] = c_hits
            row["complexity_freq"] = c_hits / n_cond if n_cond else math.nan
            row["complexity_inconclusive"] = trunc
        rows.append(row)

    return ConditionalProfile(arch=arch, eps=eps, far_eps=far, t=t,
                              n_realizations=n_realizations,
                              n_conditioned=n_cond, rows=tuple(rows),
                              inconclusive=n_cond < min_conditioned, seed=seed)


# ---------------------------------------------------------------------------
# Maximal-inequality stability of the continuous model


@dataclasses.dataclass(frozen=True)
class StabilityReport:
    """Exceedance of max_t [D(U_t, I) - m t / 2] against 2d exp(-x^2/(2ms))."""

    arch: ensembles.CircuitArchitecture
    m: int
    s: float
    x_grid: tuple
    n_realizations: int
    exceed_freq: tuple
    ci_halfwidth: tuple
    bound: tuple
    unitarity_defect: float
    verdict: str
    seed: int | None = None

    def __post_init__(self):
        if len(self.x_grid) != len(self.exceed_freq) or \
                len(self.x_grid) != len(self.bound):
            raise ValueError("grid and result lengths differ")

    def summary(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "experiment": "slh_stability",
            "params": {
                "arch": _arch_params(self.arch), "s": self.s,
                "n_realizations": self.n_realizations, "seed": self.seed,
            },
            "m": self.m,
            "unitarity_defect": self.unitarity_defect,
            "verdict": self.verdict,
            "rows": [
                {"x": x, "exceed_freq": f, "ci_halfwidth": h, "bound": b}
                for x, f, h, b in zip(self.x_grid, self.exceed_freq,
                                      self.ci_halfwidth, self.bound)],
        }

    def csv_rows(self):
        fields = ["x", "exceed_freq", "ci_halfwidth", "bound"]
        rows = [{"x": x, "exceed_freq": f, "ci_halfwidth": h, "bound": b}
                for x, f, h, b in zip(self.x_grid, self.exceed_freq,
                                      self.ci_halfwidth, self.bound)]
        return fields, rows


def slh_stability_test(arch: ensembles.CircuitArchitecture, s: float, x_grid,
                       n_realizations: int, rng,
                       seed: int | None = None) -> StabilityReport:
    """Simulate continuous paths on [0, s] and compare the exceedance
    frequency of the drift-corrected maximal deviation with its bound."""
    if arch.kind != "slh":
        raise ensembles.ArchitectureError("stability test needs an slh architecture")
    m = len(arch.graph)
    d = arch.d
    x_grid = tuple(float(x) for x in x_grid)

    times, dists, finals = ensembles.slh_paths(arch, s, n_realizations, rng,
                                               return_final=True)
    dev = dists - 0.5 * m * times[None, :]
    max_dev = dev.max(axis=1)

    gram = np.einsum("pab,pac->pbc", finals.conj(), finals)
    defect = float(np.max(np.abs(gram - np.eye(d))))

    freqs, halves, bounds = [], [], []
    ok = True
    for x in x_grid:
        hits = int(np.count_nonzero(max_dev > x))
        lo, hi = geometry.clopper_pearson(hits, n_realizations, CONFIDENCE)
        freq = hits / n_realizations
        half = (hi - lo) / 2.0
        bound = 2.0 * d * math.exp(-x * x / (2.0 * m * s))
        freqs.append(freq)
        halves.append(half)
        bounds.append(bound)
        if freq > bound + 3.0 * half:
            ok = False
    return StabilityReport(arch=arch, m=m, s=s, x_grid=x_grid,
                           n_realizations=n_realizations,
                           exceed_freq=tuple(freqs), ci_halfwidth=tuple(halves),
                           bound=tuple(bounds), unitarity_defect=defect,
                           verdict="pass" if ok else "fail", seed=seed)


# ---------------------------------------------------------------------------
# Saturation-window scan


@dataclasses.dataclass(frozen=True)
class SaturationScan:
    """Visit frequency of {complexity <= r} inside a post-equilibration
    window against the union bound K |G|^(r+1) Vol(beta eps)."""

    arch: ensembles.CircuitArchitecture
    eps: float
    beta: float
    t0: int
    K: int
    tau_block: int
    n_realizations: int
    rows: tuple
    vol_reference: geometry.MCVolume
    reference: str
    seed: int | None = None

    def summary(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "experiment": "saturation_window_scan",
            "params": {
                "arch": _arch_params(self.arch), "eps": self.eps,
                "beta": self.beta, "t0": self.t0, "K": self.K,
                "tau_block": self.tau_block,
                "n_realizations": self.n_realizations, "seed": self.seed,
            },
            "reference": self.reference,
            "vol_reference": {
                "estimate": self.vol_reference.estimate,
                "ci_low": self.vol_reference.ci_low,
                "ci_high": self.vol_reference.ci_high,
            },
            "rows": [dict(r) for r in self.rows],
        }

    def csv_rows(self):
        fields = ["r", "time_hits", "time_trials", "time_fraction",
                  "time_ci_low", "time_ci_high", "any_hits", "any_freq",
                  "any_ci_low", "any_ci_high", "bound", "violated",
                  "inconclusive"]
        return fields, [dict(r) for r in self.rows]


def saturation_window_scan(arch: ensembles.CircuitArchitecture, eps: float,
                           r, window, rng, gateset: ensembles.GateSet,
                           n_realizations: int = 200, tau_block: int = 1,
                           beta: float = 1.0, vol_samples: int = 200_000,
                           node_budget: int = cx.DEFAULT_NODE_BUDGET,
                           seed: int | None = None) -> SaturationScan:
    """window = (t0, K): examine block endpoints t0 + tau_block * j,
    j = 1..K. r may be a single threshold or a sequence."""
    if arch.kind == "slh":
        raise ensembles.ArchitectureError("the scan runs on discrete walks")
    t0, K = window
    if K < 1:
        raise ValueError("window needs at least one block")
    r_list = [int(r)] if np.isscalar(r) else [int(v) for v in r]
    d = arch.d
    if gateset.q ** gateset.locality != d:
        raise qmath.DimensionMismatchError(
            "scan gate set acts on a different dimension than the walk")

    vol = geometry.mc_ball_volume("unitary", d, min(beta * eps, 2.0),
                                  vol_samples, rng)
    table = cx.WordTable(gateset, max(r_list), node_budget=node_budget)

    values = np.empty((n_realizations, K), dtype=float)
    truncated = False
    unitaries = np.broadcast_to(np.eye(d, dtype=complex),
                                (n_realizations, d, d)).copy()
    for step in range(1, t0 + K * tau_block + 1):
        unitaries = ensembles.step_matrices(arch, n_realizations, rng) @ unitaries
        if step > t0 and (step - t0) % tau_block == 0:
            j = (step - t0) // tau_block - 1
            for w in range(n_realizations):
                res = table.complexity_unitary(unitaries[w], eps)
                truncated = truncated or res.truncated
                values[w, j] = math.inf if res.value is None else res.value

    rows = []
    time_trials = n_realizations * K
    for r_val in r_list:
        hit_mask = values <= r_val
        time_hits = int(np.count_nonzero(hit_mask))
        t_lo, t_hi = geometry.clopper_pearson(time_hits, time_trials, CONFIDENCE)
        any_hits = int(np.count_nonzero(hit_mask.any(axis=1)))
        a_lo, a_hi = geometry.clopper_pearson(any_hits, n_realizations, CONFIDENCE)
        bound = min(1.0, K * gateset.size ** (r_val + 1) * vol.estimate)
        rows.append({
            "r": r_val, "time_hits": time_hits, "time_trials": time_trials,
            "time_fraction": time_hits / time_trials,
            "time_ci_low": t_lo, "time_ci_high": t_hi,
            "any_hits": any_hits, "any_freq": any_hits / n_realizations,
            "any_ci_low": a_lo, "any_ci_high": a_hi,
            "bound": bound, "violated": a_lo > bound,
            "inconclusive": truncated,
        })
    return SaturationScan(arch=arch, eps=eps, beta=beta, t0=t0, K=K,
                          tau_block=tau_block, n_realizations=n_realizations,
                          rows=tuple(rows), vol_reference=vol, reference="MC",
                          seed=seed)
