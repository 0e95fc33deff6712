"""Independent reference computations used to pin expected values in tests.

Everything here is written directly against numpy/scipy primitives and never
imports complexity_lab, so that a test comparing the package against this
module really compares two separate routes to the same quantity.
"""

import math
from itertools import permutations

import numpy as np


# ---------------------------------------------------------------------------
# Haar sampling (reference implementation, QR of Ginibre)

def haar_unitaries(d, size, rng):
    """Stack of Haar samples via the positive-diagonal QR factor."""
    z = (rng.standard_normal((size, d, d))
         + 1j * rng.standard_normal((size, d, d))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    lam = np.diagonal(r, axis1=-2, axis2=-1).copy()
    lam /= np.abs(lam)
    return q * lam[:, None, :]


def haar_states(d, size, rng):
    v = rng.standard_normal((size, d)) + 1j * rng.standard_normal((size, d))
    return v / np.linalg.norm(v, axis=1, keepdims=True)


# ---------------------------------------------------------------------------
# Phase-minimized distance, grid route

def eigenphases(m):
    return np.angle(np.linalg.eigvals(m)) % (2.0 * np.pi)


def grid_distance(a, b, coarse=10_000, refine=1_000, k_cells=8):
    """min over phi of ||a - e^{i phi} b||_inf by two-stage grid search.

    Uses ||a - e^{i phi} b|| = max_j |e^{i theta_j} - e^{i phi}| over the
    eigenphases theta_j of b^dagger a (a normal matrix), i.e. the largest
    chord from the grid phase to the relative spectrum.  The refine stage
    must cover every near-tied coarse cell, not just the argmin: with
    several competing local minima the global one may sit in a cell whose
    coarse sample is slightly worse.  Refining the k_cells best cells keeps
    the worst-case grid error near step/refine.
    """
    th = np.angle(np.linalg.eigvals(b.conj().T @ a))
    phis = np.linspace(0.0, 2.0 * np.pi, coarse, endpoint=False)
    vals = np.max(2.0 * np.abs(np.sin((th[None, :] - phis[:, None]) / 2.0)), axis=1)
    step = 2.0 * np.pi / coarse
    centers = phis[np.argpartition(vals, k_cells)[:k_cells]]
    offs = np.linspace(-step, step, refine)
    phis2 = (centers[:, None] + offs[None, :]).ravel()
    vals2 = np.max(2.0 * np.abs(np.sin((th[None, :] - phis2[:, None]) / 2.0)), axis=1)
    return float(np.min(vals2))


def grid_distances_batch(a_stack, b_stack, coarse=4_000, refine=600, chunk=256,
                         k_cells=12):
    """Vectorized grid_distance over pairs; used for the 1e4-pair oracle runs."""
    n, d = a_stack.shape[0], a_stack.shape[1]
    out = np.empty(n)
    phis = np.linspace(0.0, 2.0 * np.pi, coarse, endpoint=False)
    step = 2.0 * np.pi / coarse
    offs = np.linspace(-step, step, refine)
    for lo in range(0, n, chunk):
        hi = min(lo + chunk, n)
        w = np.einsum("nba,nbc->nac", b_stack[lo:hi].conj(), a_stack[lo:hi])
        th = np.angle(np.linalg.eigvals(w))
        # (m, coarse, d) chords, minimized over the coarse grid
        vals = np.max(2.0 * np.abs(np.sin((th[:, None, :] - phis[None, :, None]) / 2.0)), axis=2)
        idx = np.argpartition(vals, k_cells, axis=1)[:, :k_cells]
        cand = phis[idx][:, :, None] + offs[None, None, :]  # (m, k_cells, refine)
        vals2 = np.max(
            2.0 * np.abs(np.sin((th[:, None, None, :] - cand[:, :, :, None]) / 2.0)),
            axis=3)
        out[lo:hi] = np.min(vals2, axis=(1, 2))
    return out


def svd_grid_distance(a, b, n_phi=4096):
    """Slow fully-direct route: spectral norm per phase via SVD.

    Validates the chord identity used by grid_distance.  Grid-only accuracy,
    so compare with a matching tolerance (~ pi/n_phi).
    """
    best = np.inf
    for phi in np.linspace(0.0, 2.0 * np.pi, n_phi, endpoint=False):
        s = np.linalg.svd(a - np.exp(1j * phi) * b, compute_uv=False)[0]
        best = min(best, float(s))
    return best


# ---------------------------------------------------------------------------
# Distribution laws

def weyl_distance_cdf_d2(x):
    """CDF of D(U, I) for Haar U in U(2), from the Weyl eigenphase density.

    The eigenphase gap delta has density (1 - cos delta)/pi on [0, pi] and
    D = 2 sin(delta/4).
    """
    u = 4.0 * np.arcsin(np.clip(np.asarray(x, dtype=float) / 2.0, 0.0, 1.0))
    return (u - np.sin(u)) / np.pi


def independent_arc_cdf(d, r):
    """Pr[shortest covering arc <= r] for d i.i.d. uniform phases, r <= pi."""
    r = np.asarray(r, dtype=float)
    return d * (r / (2.0 * np.pi)) ** (d - 1)


def ks_statistic(samples, cdf):
    xs = np.sort(np.asarray(samples))
    f = cdf(xs)
    n = len(xs)
    d_plus = np.max(np.arange(1, n + 1) / n - f)
    d_minus = np.max(f - np.arange(0, n) / n)
    return float(max(d_plus, d_minus))


def shortest_arc_of_phases(ph):
    """2 pi minus the largest circular gap; plain loop-free reference."""
    ph = np.sort(np.asarray(ph) % (2.0 * np.pi))
    gaps = np.diff(np.concatenate([ph, [ph[0] + 2.0 * np.pi]]))
    return float(2.0 * np.pi - np.max(gaps))


# ---------------------------------------------------------------------------
# Exact packing and covering numbers on finite point sets

def packing_number_bruteforce(dist, radius):
    """Maximum subset with pairwise distances >= radius, by branch and bound.

    dist is a symmetric matrix of pairwise distances.  Exponential in the
    worst case; intended for <= 200 points.
    """
    n = dist.shape[0]
    conflict = [set(np.nonzero(dist[i] < radius)[0]) - {i} for i in range(n)]
    best = [0]

    def grow(chosen_count, candidates):
        if chosen_count + len(candidates) <= best[0]:
            return
        if not candidates:
            best[0] = max(best[0], chosen_count)
            return
        v = candidates[0]
        # branch 1: take v, drop its conflicts
        grow(chosen_count + 1, [u for u in candidates[1:] if u not in conflict[v]])
        # branch 2: skip v
        grow(chosen_count, candidates[1:])

    order = sorted(range(n), key=lambda i: len(conflict[i]))
    grow(0, order)
    return best[0]


def covering_number_bruteforce(dist, radius):
    """Minimum number of closed radius-balls centered at the points that
    cover all points; exact branch-and-bound set cover."""
    n = dist.shape[0]
    covers = [frozenset(np.nonzero(dist[i] <= radius)[0]) for i in range(n)]
    all_pts = frozenset(range(n))

    # greedy gives an upper bound and a feasibility check
    uncovered = set(all_pts)
    greedy = 0
    while uncovered:
        gain, pick = max((len(covers[i] & uncovered), i) for i in range(n))
        if gain == 0:
            raise ValueError("cannot cover: isolated point outside every ball")
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
        target = min(uncovered)  # cover the lowest-index uncovered point
        for i in range(n):
            if target in covers[i]:
                search(uncovered - covers[i], used + 1)

    search(all_pts, 0)
    return best[0]


# ---------------------------------------------------------------------------
# Naive word enumeration over a gate set (cross-check for the BFS)

def naive_words(gates, r_max):
    """All products of words of length 0..r_max with left-append composition.

    Returns a list of levels; level r is a list of (indices, matrix).  No
    deduplication at all, so level r has len(gates)**r entries.
    """
    d = gates[0].shape[0]
    levels = [[((), np.eye(d, dtype=complex))]]
    for _ in range(r_max):
        nxt = []
        for idx, m in levels[-1]:
            for g_i, g in enumerate(gates):
                nxt.append(((g_i,) + idx, g @ m))
        levels.append(nxt)
    return levels


def phase_distance_matrix(mats):
    """Pairwise phase-minimized distances via the arc of relative phases."""
    n = len(mats)
    out = np.zeros((n, n))
    for i in range(n):
        for j in range(i + 1, n):
            th = np.angle(np.linalg.eigvals(mats[j].conj().T @ mats[i]))
            out[i, j] = out[j, i] = 2.0 * np.sin(shortest_arc_of_phases(th) / 4.0)
    return out


def dedup_level_sizes(gates, r_max, tol=1e-9):
    """Distinct-word counts per level, deduplicating across earlier levels.

    A word is new if its phase-minimized distance to every previously kept
    word (any level) exceeds tol.  This mirrors the exact-dedup BFS contract
    and serves as its independent oracle.
    """
    kept = []
    sizes = []
    for level in naive_words(gates, r_max):
        count = 0
        for _, m in level:
            dup = False
            for other in kept:
                th = np.angle(np.linalg.eigvals(other.conj().T @ m))
                if 2.0 * np.sin(shortest_arc_of_phases(th) / 4.0) <= tol:
                    dup = True
                    break
            if not dup:
                kept.append(m)
                count += 1
        sizes.append(count)
    return sizes


def min_word_length_within(gates, target, eps, r_max):
    """Brute-force epsilon-complexity: scan all words by increasing length."""
    for r, level in enumerate(naive_words(gates, r_max)):
        for _, m in level:
            th = np.angle(np.linalg.eigvals(m.conj().T @ target))
            if 2.0 * np.sin(shortest_arc_of_phases(th) / 4.0) <= eps:
                return r
    return None


# ---------------------------------------------------------------------------
# Moment-operator references

def permutation_matrix(d, perm):
    """Tensor-slot permutation on (C^d)^{tensor k} in the row-major basis."""
    k = len(perm)
    src = np.arange(d ** k)
    digits = np.array(np.unravel_index(src, [d] * k))
    dst_digits = np.empty_like(digits)
    for a, pa in enumerate(perm):
        dst_digits[pa] = digits[a]
    dst = np.ravel_multi_index(list(dst_digits), [d] * k)
    p = np.zeros((d ** k, d ** k))
    p[dst, src] = 1.0
    return p


def permutation_gram(d, k):
    """Gram matrix of vectorized permutation operators, entries d^{#cycles}."""
    perms = list(permutations(range(k)))
    w = np.empty((len(perms), len(perms)))
    for i, p in enumerate(perms):
        inv = [0] * k
        for a, pa in enumerate(p):
            inv[pa] = a
        for j, s in enumerate(perms):
            comp = tuple(s[inv[a]] for a in range(k))
            w[i, j] = d ** _cycle_count(comp)
    return w


def _cycle_count(perm):
    seen = [False] * len(perm)
    c = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        c += 1
        a = start
        while not seen[a]:
            seen[a] = True
            a = perm[a]
    return c


def mc_moment_operator(d, k, n_samples, rng, chunk=2_000):
    """Monte Carlo estimate of E[U^{tensor k} (x) conj(U)^{tensor k}]."""
    dim = d ** (2 * k)
    acc = np.zeros((dim, dim), dtype=complex)
    done = 0
    while done < n_samples:
        m = min(chunk, n_samples - done)
        u = haar_unitaries(d, m, rng)
        uk = u
        for _ in range(k - 1):
            uk = np.einsum("nab,ncd->nacbd", uk, u).reshape(m, uk.shape[1] * d, -1)
        acc += np.einsum("nij,nkl->nikjl", uk, uk.conj()).reshape(m, dim, dim).sum(axis=0)
        done += m
    return acc / n_samples


def haar_projector_reference(d, k):
    """P_H from the permutation Gram pseudo-inverse; standalone construction."""
    perms = list(permutations(range(k)))
    v = np.stack([permutation_matrix(d, p).reshape(-1) for p in perms], axis=1)
    w = permutation_gram(d, k)
    return v @ np.linalg.pinv(w, rcond=1e-10) @ v.T


def design_hamiltonian_reference(n, q, k, edges):
    """Standalone dense build of sum over edges of (I - P_H) on q^{2kn}.

    Axis layout is replica-major: 2k replicas of the n sites, global axis
    index a = r*n + s.  The edge projector is the Haar projector of U(q^2)
    with each replica's pair of sites adjacent.
    """
    m = 2 * k
    p_loc = haar_projector_reference(q * q, k)  # dim q^(2m), axes (r,i),(r,j)
    dim = q ** (m * n)
    h = np.zeros((dim, dim))
    for (i, j) in edges:
        h += np.eye(dim) - embed_pair_operator(p_loc, n, q, m, i, j)
    return h


def embed_pair_operator(local, n, q, m, i, j):
    """Embed an operator acting on sites (i, j) of every replica."""
    rest = [s for s in range(n) if s not in (i, j)]
    full = np.kron(local, np.eye(q ** (m * (n - 2))))
    # current row-axis labels after the kron, replica-major within each block
    cur = [(r, s) for r in range(m) for s in (i, j)] + \
          [(r, s) for r in range(m) for s in rest]
    want = [(r, s) for r in range(m) for s in range(n)]
    perm = [cur.index(lbl) for lbl in want]
    t = full.reshape([q] * (2 * m * n))
    t = t.transpose(perm + [m * n + p for p in perm])
    return t.reshape(q ** (m * n), q ** (m * n)).copy()


# ---------------------------------------------------------------------------
# Statistics helpers

def clopper_pearson_closed_form_zero(n, confidence=0.99):
    """Exact CP upper limit when hits = 0: 1 - (alpha/2)^{1/n}."""
    return 1.0 - ((1.0 - confidence) / 2.0) ** (1.0 / n)


def clopper_pearson_closed_form_full(n, confidence=0.99):
    """Exact CP lower limit when hits = n: (alpha/2)^{1/n}."""
    return ((1.0 - confidence) / 2.0) ** (1.0 / n)


def geometric_mean_blocks(p):
    """Expected number of blocks until the first success."""
    return 1.0 / p
