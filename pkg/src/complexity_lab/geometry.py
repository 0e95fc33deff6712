"""Volumes, distribution laws, packing/covering estimators and the
polynomial state kernel with its tail bound.

Unitary ball volumes at desk dimensions are estimated by Monte Carlo with
Clopper-Pearson intervals; the analytic two-sided bounds carry constants
aimed at large d and are reported alongside (raw values can exceed 1).
"""

from __future__ import annotations

import dataclasses
import math

import numpy as np
from scipy.stats import beta as _beta_dist

from . import qmath

# absolute constants in the two-sided unitary volume bound
C_LOWER = 1.0 / (9.0 * np.pi)
C_UPPER = 87.0


@dataclasses.dataclass(frozen=True)
class VolumeBounds:
    lower: float
    upper: float
    exact: float | None = None

    def __post_init__(self):
        if self.lower > self.upper + 1e-15:
            raise ValueError(f"lower bound {self.lower} exceeds upper bound {self.upper}")
        if self.exact is not None and not (self.lower <= self.exact <= self.upper):
            raise ValueError("exact value falls outside the bounds")


@dataclasses.dataclass
class PackingResult:
    """A set of centers with pairwise distances >= radius."""

    centers: list
    radius: float
    count: int

    def verify(self, metric) -> bool:
        """Exhaustively re-check the pairwise separation invariant."""
        for i in range(self.count):
            for j in range(i + 1, self.count):
                if metric(self.centers[i], self.centers[j]) < self.radius:
                    return False
        return True


@dataclasses.dataclass(frozen=True)
class MCVolume:
    """Monte Carlo ball-measure estimate with a 99% Clopper-Pearson interval."""

    space: str
    d: int
    eps: float
    n_samples: int
    hits: int
    estimate: float
    ci_low: float
    ci_high: float


@dataclasses.dataclass(frozen=True)
class StateKernel:
    """Polynomial kernel F_k concentrated at a center state.

    normalizer is 1/binomial(d+k-1, k), the Haar average of overlap^k.
    """

    k: int
    d: int
    center: qmath.PureState
    normalizer: float

    @staticmethod
    def create(k: int, d: int, center: qmath.PureState) -> "StateKernel":
        if center.dim != d:
            raise qmath.DimensionMismatchError(f"center has dim {center.dim}, expected {d}")
        return StateKernel(k=k, d=d, center=center, normalizer=1.0 / math.comb(d + k - 1, k))


def clopper_pearson(hits: int, n: int, confidence: float = 0.99):
    """Exact two-sided binomial interval."""
    a = (1.0 - confidence) / 2.0
    lo = 0.0 if hits == 0 else float(_beta_dist.ppf(a, hits, n - hits + 1))
    hi = 1.0 if hits == n else float(_beta_dist.ppf(1.0 - a, hits + 1, n - hits))
    return lo, hi


def vol_state_ball(d: int, eps: float) -> float:
    """Exact Haar measure of a state ball: eps^(2(d-1))."""
    if not 0.0 < eps <= 1.0:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    return float(eps) ** (2 * (d - 1))


def szarek_bounds(d: int, eps: float, clamp: bool = False) -> VolumeBounds:
    """Two-sided unitary ball volume bounds (c_o eps)^(d^2-1) <= Vol <= (c^o eps)^(d^2-1).

    Raw by default; clamp=True restricts both values to [0, 1].
    """
    if eps <= 0:
        raise ValueError(f"eps must be positive, got {eps}")
    power = d * d - 1
    lo = (C_LOWER * eps) ** power
    hi = (C_UPPER * eps) ** power
    if clamp:
        lo, hi = min(max(lo, 0.0), 1.0), min(max(hi, 0.0), 1.0)
    return VolumeBounds(lower=lo, upper=hi)


def mc_ball_volume(space: str, d: int, eps: float, n_samples: int, rng,
                   center=None, chunk: int = 200_000) -> MCVolume:
    """Haar measure of a ball of radius eps, estimated by counting samples.

    By invariance the center does not matter; the identity (resp. the first
    basis state) is used unless one is supplied.
    """
    if space not in ("unitary", "state"):
        raise ValueError(f"space must be 'unitary' or 'state', got {space!r}")
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    limit = 2.0 if space == "unitary" else 1.0
    if not 0.0 < eps <= limit:
        raise ValueError(f"eps must lie in (0, {limit}] for {space} space, got {eps}")

    hits = 0
    done = 0
    while done < n_samples:
        m = min(chunk, n_samples - done)
        if space == "unitary":
            mats = qmath.haar_unitary_matrices(d, m, rng)
            if center is None:
                dist = qmath.batched_distance_to_identity(mats)
            else:
                dist = qmath.batched_distance_unitary(mats, center)
        else:
            vecs = qmath.haar_state_vectors(d, m, rng)
            ref = center if center is not None else np.eye(d, dtype=complex)[0]
            dist = qmath.batched_distance_state(vecs, ref)
        hits += int(np.count_nonzero(dist <= eps))
        done += m
    lo, hi = clopper_pearson(hits, n_samples)
    return MCVolume(space=space, d=d, eps=eps, n_samples=n_samples, hits=hits,
                    estimate=hits / n_samples, ci_low=lo, ci_high=hi)


def overlap_pdf(d: int, x) -> float:
    """Density of the squared overlap of a Haar state with a fixed state."""
    if d < 2:
        raise ValueError(f"overlap density requires d >= 2, got {d}")
    return (d - 1) * (1.0 - np.asarray(x, dtype=float)) ** (d - 2)


def arc_cdf(d: int, r) -> float:
    """Pr[shortest covering arc <= r] for d independent uniform phases.

    The closed form d (r / 2 pi)^(d-1) is valid only for r <= pi; larger r
    is rejected rather than extrapolated.
    """
    r_arr = np.asarray(r, dtype=float)
    if np.any(r_arr < 0.0) or np.any(r_arr > np.pi + 1e-12):
        raise ValueError("arc law is valid only on 0 <= r <= pi")
    return d * (r_arr / (2.0 * np.pi)) ** (d - 1)


def annulus_bound(d: int, kappa: float, lam: float) -> float:
    """Upper bound (2 lam kappa)^(d^2-1) (lam - 1) on the volume of the
    annulus between radii kappa and lam kappa."""
    if lam < 1.0:
        raise ValueError(f"annulus ratio lam must be >= 1, got {lam}")
    if lam * kappa > np.sqrt(2.0) + 1e-12:
        raise ValueError(
            f"annulus bound requires lam * kappa <= sqrt(2), got {lam * kappa:.4f}")
    return (2.0 * lam * kappa) ** (d * d - 1) * (lam - 1.0)


def greedy_packing(points_sampler, radius: float, budget: int, rng,
                   metric=None) -> PackingResult:
    """Greedy lower bound on the packing number.

    Draws up to budget candidates from points_sampler(rng) and keeps each one
    whose distance to every kept center is at least radius.  Candidates are
    considered in sampler order, with no farthest-point refinement, so the
    count is an unbiased lower bound.
    """
    if budget < 1:
        raise ValueError("budget must be at least 1")
    kept = []
    for _ in range(budget):
        candidate = points_sampler(rng)
        m = metric if metric is not None else _default_metric(candidate)
        if all(m(candidate, c) >= radius for c in kept):
            kept.append(candidate)
    return PackingResult(centers=kept, radius=radius, count=len(kept))


def _default_metric(point):
    if isinstance(point, qmath.PureState):
        return qmath.distance_state
    return qmath.distance_unitary


def packing_number_exact(dist: np.ndarray, radius: float) -> int:
    """Exact maximum radius-separated subset of a finite point set.

    dist is the symmetric pairwise distance matrix.  Branch and bound over
    the conflict graph; exponential worst case, intended for <= 200 points.
    """
    n = dist.shape[0]
    if n > 200:
        raise ValueError("exact packing is limited to 200 points")
    conflict = [set(np.nonzero(dist[i] < radius)[0]) - {i} for i in range(n)]
    best = [0]

    def grow(count, candidates):
        if count + len(candidates) <= best[0]:
            return
        if not candidates:
            best[0] = max(best[0], count)
            return
        v = candidates[0]
        grow(count + 1, [u for u in candidates[1:] if u not in conflict[v]])
        grow(count, candidates[1:])

    grow(0, sorted(range(n), key=lambda i: len(conflict[i])))
    return best[0]


def covering_number_exact(dist: np.ndarray, radius: float) -> int:
    """Exact minimum number of closed radius-balls centered at the points
    that cover the whole finite set."""
    n = dist.shape[0]
    if n > 200:
        raise ValueError("exact covering is limited to 200 points")
    covers = [frozenset(np.nonzero(dist[i] <= radius)[0]) for i in range(n)]
    all_pts = frozenset(range(n))

    uncovered = set(all_pts)
    greedy = 0
    while uncovered:
        _, pick = max((len(covers[i] & uncovered), i) for i in range(n))
        uncovered -= covers[pick]
        greedy += 1
    best = [greedy]
    max_ball = max(len(c) for c in covers)

    def search(uncovered, used):
        if not uncovered:
            best[0] = min(best[0], used)
            return
        if used + math.ceil(len(uncovered) / max_ball) >= best[0]:
            return
        target = min(uncovered)
        for i in range(n):
            if target in covers[i]:
                search(uncovered - covers[i], used + 1)

    search(all_pts, 0)
    return best[0]


def state_kernel_eval(kern: StateKernel, psi: qmath.PureState) -> float:
    """overlap^k / I_k; averages to 1 over Haar states by construction."""
    if psi.dim != kern.d:
        raise qmath.DimensionMismatchError(f"state has dim {psi.dim}, kernel expects {kern.d}")
    overlap = abs(np.vdot(kern.center.amplitudes, psi.amplitudes)) ** 2
    return float(overlap ** kern.k / kern.normalizer)


def state_kernel_tail_bound(d: int, k: int, eps: float) -> float:
    """exp(-k eps^4 / 8), valid when k >= 4 d / eps^2."""
    if k < 4.0 * d / eps ** 2:
        raise ValueError(
            f"tail bound requires k >= 4 d / eps^2 = {4.0 * d / eps ** 2:.3f}, got k = {k}")
    return math.exp(-k * eps ** 4 / 8.0)


def mc_state_kernel_tail(d: int, k: int, eps: float, n_samples: int, rng,
                         chunk: int = 500_000) -> float:
    """Empirical tail mass J_k: average of F_k over states at distance >= eps."""
    normalizer = 1.0 / math.comb(d + k - 1, k)
    cutoff = 1.0 - eps ** 2  # distance >= eps means overlap <= 1 - eps^2
    total = 0.0
    done = 0
    while done < n_samples:
        m = min(chunk, n_samples - done)
        vecs = qmath.haar_state_vectors(d, m, rng)
        x = np.abs(vecs[:, 0]) ** 2
        total += float(np.sum(np.where(x <= cutoff, x ** k, 0.0)))
        done += m
    return total / n_samples / normalizer
