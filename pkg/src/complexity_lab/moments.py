"""Moment operators, the frustration-free two-site-projector Hamiltonian,
spectral gaps, and the closed-form bound calculators.

Conventions used throughout:
- vec is row-major: vec(X)[a*D^k + b] = X[a, b], so U^(x)k (x) conj(U)^(x)k
  acts on vec(X) as X -> U^(x)k X (U^(x)k)^dagger.
- The 2kn tensor axes of the n-site Hamiltonian are replica-major: global
  axis index r*n + s addresses replica r of site s. Replicas 0..k-1 are the
  plain copies, k..2k-1 the conjugated ones.
- All logarithms in the calculators are natural.
"""

from __future__ import annotations

import dataclasses
import itertools
import math
import os
import struct
from pathlib import Path

import numpy as np
import scipy.sparse.linalg

from . import qmath
from .geometry import C_LOWER, C_UPPER
from .graphs import ArchitectureError, hamiltonian_path_exists, normalize_edges

DEFAULT_PROJECTOR_CAP = 4096
DEFAULT_DIM_CAP = 1 << 20
DENSE_CAP = 4096
KERNEL_TOL = 1e-8

CACHE_ENV_VAR = "COMPLEXITY_LAB_CACHE"
_CACHE_MAGIC = b"CLXM"
_CACHE_VERSION = 1

# constants of the gap-to-equidistribution theorem, computed from the
# absolute volume constants rather than stored as opaque numbers
EQUID_C1 = C_LOWER ** 1.5 / (4.0 * math.sqrt(C_UPPER)) * math.sqrt(2.0 / 3.0)
EQUID_C2 = 0.25 * math.sqrt(2.0 / 3.0)


class CapacityError(ValueError):
    """Raised when a requested operator exceeds the configured memory cap."""


def _pow(base: float, expo: float) -> float:
    """IEEE float power: saturates to inf instead of raising on overflow."""
    return float(np.power(np.float64(base), np.float64(expo)))


@dataclasses.dataclass(frozen=True)
class MomentOperator:
    """The D^2k x D^2k average of k-fold tensored unitaries.

    The norm invariant is only auto-checked at dimension <= 512; larger
    operators would force a full SVD on construction.
    """

    k: int
    base_dim: int
    matrix: np.ndarray

    def __post_init__(self):
        dim = self.base_dim ** (2 * self.k)
        if self.matrix.shape != (dim, dim):
            raise ValueError(
                f"matrix shape {self.matrix.shape} does not match D^2k = {dim}")
        if dim <= 512:
            norm = qmath.spectral_norm(self.matrix)
            if norm > 1.0 + 1e-9:
                raise ValueError(f"spectral norm {norm} exceeds 1 for an average of unitaries")

    @property
    def dim(self) -> int:
        return self.base_dim ** (2 * self.k)


@dataclasses.dataclass(frozen=True)
class MCMomentResult:
    operator: MomentOperator
    n_samples: int
    reference_distance: float | None = None


@dataclasses.dataclass(frozen=True)
class GapReport:
    """Spectral gap of a two-site-projector Hamiltonian.

    expander_norm uses the edge-count convention 1 - gap/|E| (the one that
    equals the one-step moment-operator norm); expander_norm_site records
    the per-site variant 1 - gap/n for comparison with chain-normalized
    statements. Only the edge convention is guaranteed to lie in [0, 1].
    """

    gap: float
    expander_norm: float
    expander_norm_site: float
    n_sites: int
    n_edges: int
    kernel_dim: int
    lambda_min: float
    method: str
    residual: float

    def __post_init__(self):
        if not -1e-9 <= self.expander_norm <= 1.0 + 1e-9:
            raise ValueError(f"expander norm {self.expander_norm} outside [0, 1]")
        if abs((1.0 - self.gap / self.n_edges) - self.expander_norm) > 1e-9:
            raise ValueError("expander norm inconsistent with gap/|E|")


def _perm_matrix(D: int, k: int, perm) -> np.ndarray:
    """Operator on (C^D)^(x)k permuting the tensor factors."""
    dk = D ** k
    src = np.arange(dk)
    digits = np.array(np.unravel_index(src, [D] * k))
    dst = np.ravel_multi_index([digits[p] for p in perm], [D] * k)
    mat = np.zeros((dk, dk))
    mat[dst, src] = 1.0
    return mat


def _perm_vec_columns(D: int, k: int) -> np.ndarray:
    """Stack vec(P_pi) over all pi in S_k as columns (lexicographic order)."""
    cols = [_perm_matrix(D, k, p).reshape(-1) for p in itertools.permutations(range(k))]
    return np.column_stack(cols)


def _cache_file(cache_dir, D: int, k: int) -> Path | None:
    root = cache_dir if cache_dir is not None else os.environ.get(CACHE_ENV_VAR)
    if not root:
        return None
    return Path(root) / f"haar_projector_D{D}_k{k}.bin"


def _cache_load(path: Path, D: int, k: int) -> np.ndarray | None:
    dim = D ** (2 * k)
    try:
        raw = path.read_bytes()
    except OSError:
        return None
    header = struct.calcsize("<4sIII")
    if len(raw) != header + dim * dim * 16:
        return None
    magic, version, d_stored, k_stored = struct.unpack_from("<4sIII", raw)
    if magic != _CACHE_MAGIC or version != _CACHE_VERSION or (d_stored, k_stored) != (D, k):
        return None
    mat = np.frombuffer(raw, dtype=np.complex128, offset=header).reshape(dim, dim)
    if np.any(mat.imag != 0.0):
        return None
    return mat.real.copy()


def _cache_store(path: Path, D: int, k: int, mat: np.ndarray):
    path.parent.mkdir(parents=True, exist_ok=True)
    header = struct.pack("<4sIII", _CACHE_MAGIC, _CACHE_VERSION, D, k)
    path.write_bytes(header + np.ascontiguousarray(mat, dtype=np.complex128).tobytes())


def haar_moment_projector(D: int, k: int, dim_cap: int = DEFAULT_PROJECTOR_CAP,
                          cache_dir=None) -> MomentOperator:
    """Orthogonal projector onto the span of vectorized permutation operators.

    Built as V pinv(V^T V) V^T with a singular-value cutoff of 1e-10; the
    cutoff handles the linear dependence of permutation operators at k > D.
    Results are memoized on disk when a cache directory is configured
    (argument or COMPLEXITY_LAB_CACHE).
    """
    if D < 1 or k < 1:
        raise qmath.InvalidDimensionError(f"need D >= 1 and k >= 1, got D={D}, k={k}")
    dim = D ** (2 * k)
    if dim > dim_cap:
        raise CapacityError(f"projector dimension {dim} exceeds cap {dim_cap}")

    path = _cache_file(cache_dir, D, k)
    if path is not None:
        cached = _cache_load(path, D, k)
        if cached is not None:
            return MomentOperator(k=k, base_dim=D, matrix=cached)

    v = _perm_vec_columns(D, k)
    gram = v.T @ v
    proj = v @ np.linalg.pinv(gram, rcond=1e-10) @ v.T
    if path is not None:
        _cache_store(path, D, k, proj)
    return MomentOperator(k=k, base_dim=D, matrix=proj)


def _axis_digit(idx: np.ndarray, axis: int, n_axes: int, q: int) -> np.ndarray:
    return (idx // q ** (n_axes - 1 - axis)) % q


def _gather_to_kron(n: int, q: int, k: int, i: int, j: int) -> np.ndarray:
    """Index map g with M_global[a, b] = M_kron[g[a], g[b]] for a local
    operator on sites (i, j) tensored with identity on the rest.

    Kron layout: the local factor's axes come first, interleaved as
    (replica 0: i, j), (replica 1: i, j), ...; the identity factor's axes
    follow, replica-major over the remaining sites.
    """
    n_axes = 2 * k * n
    rest = [s for s in range(n) if s not in (i, j)]
    axes_kron = [(r, x) for r in range(2 * k) for x in (i, j)]
    axes_kron += [(r, s) for r in range(2 * k) for s in rest]
    pos = {(r, s): r * n + s for r in range(2 * k) for s in range(n)}

    idx = np.arange(q ** n_axes)
    g = np.zeros_like(idx)
    for u, label in enumerate(axes_kron):
        g += _axis_digit(idx, pos[label], n_axes, q) * q ** (n_axes - 1 - u)
    return g


@dataclasses.dataclass
class DesignHamiltonian:
    """Sum over graph edges of (I - P) with P the two-site moment projector.

    Frustration free with ground energy zero; the kernel is spanned by
    site-factorized permutation states. The dense matrix is kept only up to
    `DENSE_CAP`; larger instances are matrix-free via apply().
    """

    n: int
    q: int
    k: int
    edges: list
    matrix: np.ndarray | None
    _local: np.ndarray
    _gathers: list
    _scatters: list

    @property
    def dim(self) -> int:
        return self.q ** (2 * self.k * self.n)

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Matrix-free H @ x for a vector or a stack of column vectors."""
        squeeze = x.ndim == 1
        xs = x[:, None] if squeeze else x
        local_dim = self._local.shape[0]
        rest = self.dim // local_dim
        out = np.zeros(xs.shape, dtype=np.result_type(xs.dtype, self._local.dtype))
        for g, h in zip(self._gathers, self._scatters):
            x_kron = xs[h].reshape(local_dim, rest, xs.shape[1])
            y_kron = np.tensordot(self._local, x_kron, axes=([1], [0]))
            out += y_kron.reshape(self.dim, xs.shape[1])[g]
        return out[:, 0] if squeeze else out

    def kernel_basis(self) -> np.ndarray:
        """Orthonormal basis of the analytic kernel (k! permutation states)."""
        n_axes = 2 * self.k * self.n
        idx = np.arange(self.dim)
        site_locals = []
        for s in range(self.n):
            loc = np.zeros_like(idx)
            for r in range(2 * self.k):
                loc += (_axis_digit(idx, r * self.n + s, n_axes, self.q)
                        * self.q ** (2 * self.k - 1 - r))
            site_locals.append(loc)

        v_local = _perm_vec_columns(self.q, self.k)
        cols = []
        for c in range(v_local.shape[1]):
            w = np.ones(self.dim)
            for loc in site_locals:
                w = w * v_local[:, c][loc]
            cols.append(w)
        basis = np.column_stack(cols)
        qmat, rmat = np.linalg.qr(basis)
        keep = np.abs(np.diag(rmat)) > 1e-10 * np.abs(rmat[0, 0])
        return qmat[:, keep]


def design_hamiltonian(n: int, q: int, k: int, graph, dim_cap: int = DEFAULT_DIM_CAP,
                       dense_cap: int = DENSE_CAP, cache_dir=None) -> DesignHamiltonian:
    if n < 2:
        raise ArchitectureError("the Hamiltonian needs at least two sites")
    edges = normalize_edges(n, graph)
    if not hamiltonian_path_exists(n, edges):
        raise ArchitectureError("graph does not contain a Hamiltonian path")
    dim = q ** (2 * k * n)
    if dim > dim_cap:
        raise CapacityError(f"total dimension {dim} exceeds cap {dim_cap}")

    proj = haar_moment_projector(q * q, k, dim_cap=max(DEFAULT_PROJECTOR_CAP, dim_cap),
                                 cache_dir=cache_dir)
    local = np.eye(proj.dim) - proj.matrix

    gathers = [_gather_to_kron(n, q, k, i, j) for i, j in edges]
    scatters = []
    for g in gathers:
        h = np.empty_like(g)
        h[g] = np.arange(dim)
        scatters.append(h)

    matrix = None
    if dim <= dense_cap:
        rest = np.eye(dim // local.shape[0])
        matrix = np.zeros((dim, dim))
        for g in gathers:
            kron = np.kron(local, rest)
            matrix += kron[np.ix_(g, g)]
        if not np.allclose(matrix, matrix.T, atol=1e-12):
            raise AssertionError("assembled Hamiltonian is not symmetric")

    return DesignHamiltonian(n=n, q=q, k=k, edges=edges, matrix=matrix,
                             _local=local, _gathers=gathers, _scatters=scatters)


def spectral_gap(ham: DesignHamiltonian, kernel_tol: float = KERNEL_TOL) -> GapReport:
    """Smallest eigenvalue above the zero-energy kernel.

    Dense diagonalization when the matrix is assembled; otherwise an
    iterative smallest-eigenvalue solve with the analytic kernel shifted
    out of the way (exact deflation, since the kernel is known).
    """
    n_edges = len(ham.edges)
    if ham.matrix is not None:
        evals = np.linalg.eigvalsh(ham.matrix)
        kernel_dim = int(np.count_nonzero(evals < kernel_tol))
        if kernel_dim == 0:
            raise ArithmeticError(f"no zero mode found; lowest eigenvalue {evals[0]}")
        gap = float(evals[kernel_dim])
        return GapReport(gap=gap, expander_norm=1.0 - gap / n_edges,
                         expander_norm_site=1.0 - gap / ham.n, n_sites=ham.n,
                         n_edges=n_edges, kernel_dim=kernel_dim,
                         lambda_min=float(evals[0]), method="dense", residual=0.0)

    kernel = ham.kernel_basis()
    shift = float(n_edges + 1)

    def matvec(x):
        return ham.apply(x) + shift * (kernel @ (kernel.T @ x))

    op = scipy.sparse.linalg.LinearOperator((ham.dim, ham.dim), matvec=matvec, dtype=float)
    try:
        vals, vecs = scipy.sparse.linalg.eigsh(op, k=1, which="SA")
    except scipy.sparse.linalg.ArpackNoConvergence as exc:
        raise ArithmeticError(
            f"iterative gap solve did not converge; partial eigenvalues {exc.eigenvalues}"
        ) from exc
    gap = float(vals[0])
    vec = vecs[:, 0]
    residual = float(np.linalg.norm(ham.apply(vec) - gap * vec))
    lambda_min = float(max(np.linalg.norm(ham.apply(kernel[:, c]))
                           for c in range(kernel.shape[1])))
    return GapReport(gap=gap, expander_norm=1.0 - gap / n_edges,
                     expander_norm_site=1.0 - gap / ham.n, n_sites=ham.n,
                     n_edges=n_edges, kernel_dim=kernel.shape[1],
                     lambda_min=lambda_min, method="iterative", residual=residual)


def rqc_step_moment_operator(n: int, q: int, k: int, graph,
                             cache_dir=None) -> MomentOperator:
    """Exact one-step moment operator of the edge-uniform local-gate walk:
    the edge average of embedded two-site projectors, i.e. I - H/|E|."""
    ham = design_hamiltonian(n, q, k, graph, dim_cap=DENSE_CAP, cache_dir=cache_dir)
    mat = np.eye(ham.dim) - ham.matrix / len(ham.edges)
    return MomentOperator(k=k, base_dim=q ** n, matrix=mat)


def _batch_kron(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    m, a, b = x.shape
    _, c, d = y.shape
    return np.einsum("nab,ncd->nacbd", x, y).reshape(m, a * c, b * d)


def mc_moment_operator(sample_batch, k: int, n_samples: int, rng,
                       reference: MomentOperator | None = None,
                       chunk: int = 2000, dim_cap: int = DEFAULT_PROJECTOR_CAP) -> MCMomentResult:
    """Sample mean of the k-fold tensored unitaries from a batch sampler.

    sample_batch(m, rng) must return an (m, D, D) stack of unitaries.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be at least 1")
    total = None
    done = 0
    base_dim = None
    while done < n_samples:
        m = min(chunk, n_samples - done)
        mats = np.asarray(sample_batch(m, rng))
        if base_dim is None:
            base_dim = mats.shape[1]
            if base_dim ** (2 * k) > dim_cap:
                raise CapacityError(
                    f"moment dimension {base_dim ** (2 * k)} exceeds cap {dim_cap}")
            total = np.zeros((base_dim ** (2 * k),) * 2, dtype=complex)
        power = mats
        for _ in range(k - 1):
            power = _batch_kron(power, mats)
        total += _batch_kron(power, power.conj()).sum(axis=0)
        done += m
    op = MomentOperator(k=k, base_dim=base_dim, matrix=total / n_samples)
    dist = None
    if reference is not None:
        dist = float(qmath.spectral_norm(op.matrix - reference.matrix))
    return MCMomentResult(operator=op, n_samples=n_samples, reference_distance=dist)


def spectral_distance(a: MomentOperator, b: MomentOperator) -> float:
    return float(qmath.spectral_norm(a.matrix - b.matrix))


def gap_lower_bound_path_coupling(n: int, q: int) -> float:
    """k-independent chain-gap lower bound 1/(n (e (q^2+1))^n)."""
    return 1.0 / (n * (math.e * (q * q + 1)) ** n)


def gap_lower_bound_poly(n: int, q: int, c2: float = 1e5) -> float:
    """k-independent chain-gap lower bound 1/(c2 n^4 d^2)."""
    d = q ** n
    return 1.0 / (c2 * n ** 4 * d * d)


def design_ball_bound_unitary(d: int, k: int, delta: float, eps: float) -> float:
    """(k! + d^2k delta) / (d^2k (1-eps^2)^k): ball-measure bound under a
    delta-approximate k-expander."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if delta < 0.0:
        raise ValueError(f"delta must be nonnegative, got {delta}")
    d2k = float(d) ** (2 * k)
    return (math.factorial(k) + d2k * delta) / (d2k * (1.0 - eps * eps) ** k)


def design_ball_bound_state(d: int, k: int, delta: float, eps: float) -> float:
    """(k! + d^k delta) / (d^k (1-eps^2)^k): state-space analog."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if delta < 0.0:
        raise ValueError(f"delta must be nonnegative, got {delta}")
    dk = float(d) ** k
    return (math.factorial(k) + dk * delta) / (dk * (1.0 - eps * eps) ** k)


@dataclasses.dataclass(frozen=True)
class BoundInputs:
    """Parameter bag for the closed-form calculators.

    Free constants the source formulas leave abstract have documented
    defaults: c_loc (per-gateset depth constant) 1, a_sk 1, gamma_sk 2.
    They feed calculators only, never empirical claims.
    """

    n: int | None = None
    q: int | None = None
    eps: float | None = None
    gamma: float | None = None
    alpha: float | None = None
    beta: float | None = None
    delta: float | None = None
    delta1: float | None = None
    delta2: float | None = None
    k: int | None = None
    gateset_size: int | None = None
    c_loc: float = 1.0
    c1: float = 4e7
    c2: float = 1e5
    gamma_sk: float = 2.0
    a_sk: float = 1.0
    m: float | None = None
    r: float | None = None
    r1: float | None = None
    r2: float | None = None
    tau: float | None = None
    tau_s: float | None = None
    tau_slh: float | None = None
    lam: float | None = None
    kappa: float | None = None
    t: float | None = None

    @property
    def d(self) -> int:
        if self.n is None or self.q is None:
            raise ValueError("d = q^n needs both n and q")
        return self.q ** self.n

    @property
    def C1(self) -> float:
        return EQUID_C1

    @property
    def C2(self) -> float:
        return EQUID_C2


def _need(inputs: BoundInputs, names, formula: str):
    missing = [nm for nm in names if getattr(inputs, nm) is None]
    if missing:
        raise ValueError(f"{formula} requires parameters: {', '.join(missing)}")


def equid_gap_threshold(d: int, eps: float, gamma: float, space: str) -> float:
    """Largest moment-operator distance from Haar that still forces
    (1-gamma, 1+gamma)-equidistribution at scale eps."""
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if not 0.0 < gamma < 1.0:
        raise ValueError(f"gamma must lie in (0, 1), got {gamma}")
    if space == "unitary":
        return _pow(EQUID_C1 * eps * gamma ** 1.5, d * d - 1)
    if space == "state":
        return _pow(EQUID_C2 * eps * gamma ** 1.5, 2 * (d - 1))
    raise ValueError(f"space must be 'unitary' or 'state', got {space!r}")


def equid_time_bounds(inputs: BoundInputs, model: str) -> dict:
    """Upper bounds on the walk depth/time after which every ball of radius
    >= eps carries close-to-Haar measure. The SLH state-walk bound is not
    available; it is reported as None rather than improvised."""
    _need(inputs, ("n", "q", "eps", "gamma"), f"equid_time_bounds[{model}]")
    if not 0.0 < inputs.eps < 0.25:
        raise ValueError(f"eps must lie in (0, 1/4), got {inputs.eps}")
    n, eps, gamma = inputs.n, inputs.eps, inputs.gamma
    d = float(inputs.d)
    log_u = math.log(1.0 / (EQUID_C1 * eps * gamma ** 1.5))
    log_s = math.log(1.0 / (EQUID_C2 * eps * gamma ** 1.5))
    if model == "rqc1d":
        return {"tau": inputs.c2 * n ** 6 * d ** 4 * log_u,
                "tau_S": inputs.c2 * n ** 6 * d ** 3 * log_s}
    if model == "slh":
        return {"tau": 4.0 * inputs.c2 * n ** 4 * d ** 4 * log_u, "tau_S": None}
    if model == "grqc":
        log_g = math.log(1.0 / (eps * gamma))
        return {"tau": inputs.c_loc * n ** 10 * d ** 4 * log_g ** 3,
                "tau_S": inputs.c_loc * n ** 9 * d ** 3 * log_g ** 3}
    raise ValueError(f"model must be rqc1d, slh or grqc, got {model!r}")


def sk_upper_bound(d: int, eps: float, a_sk: float = 1.0, gamma_sk: float = 2.0,
                   space: str = "unitary") -> float:
    """Compilation-based complexity upper bound A d^2 ln(d^2/eps)^gamma
    (state variant: A (2d-2) ln(d/eps)^gamma). A and gamma are user
    constants; gamma must lie in (1, 3)."""
    if not 1.0 < gamma_sk < 3.0:
        raise ValueError(f"gamma_sk must lie in (1, 3), got {gamma_sk}")
    if space == "unitary":
        return a_sk * d * d * math.log(d * d / eps) ** gamma_sk
    if space == "state":
        return a_sk * (2 * d - 2) * math.log(d / eps) ** gamma_sk
    raise ValueError(f"space must be 'unitary' or 'state', got {space!r}")


def _blocks_count(r2: float, n: int, c_loc: float) -> int:
    if r2 < 0:
        raise ValueError(f"r2 must be nonnegative, got {r2}")
    if r2 == 0:
        return 0
    return math.floor((r2 / (n * n * c_loc)) ** (1.0 / 11.0))


def _f_gap_rqc(p: BoundInputs) -> float:
    _need(p, ("n", "q", "delta"), "gap_rqc")
    return p.c2 * p.n ** 6 * float(p.d) ** 2 * math.log(1.0 / p.delta)


def _f_gap_slh(p: BoundInputs) -> float:
    _need(p, ("n", "q", "delta"), "gap_slh")
    return 4.0 * p.c2 * p.n ** 4 * float(p.d) ** 2 * math.log(1.0 / p.delta)


def _check_design_degree(p: BoundInputs, formula: str):
    if 4 * p.k > float(p.d) ** 0.4:
        raise ValueError(
            f"{formula} is stated for 4k <= d^(2/5); got 4k = {4 * p.k}, "
            f"d^(2/5) = {float(p.d) ** 0.4:.4g}")


def _f_designs_k(p: BoundInputs) -> float:
    _need(p, ("n", "q", "k", "delta"), "designs_k")
    _check_design_degree(p, "designs_k")
    return (p.c1 * p.n * math.ceil(math.log(4 * p.k)) ** 2 * p.k ** 9.5
            * math.log(1.0 / p.delta))


def _f_grqc_designs_k(p: BoundInputs) -> float:
    _need(p, ("n", "q", "k", "delta"), "grqc_designs_k")
    _check_design_degree(p, "grqc_designs_k")
    return (p.c_loc * p.n ** 3 * math.log(p.k) ** 4 * p.k ** 9.5
            * math.log(1.0 / p.delta))


def _f_grqc_designs_unbounded(p: BoundInputs) -> float:
    _need(p, ("n", "q", "k", "delta"), "grqc_designs_unbounded")
    return (p.c_loc * p.n ** 7 * math.log(p.k) ** 2 * float(p.d) ** 2
            * math.log(1.0 / p.delta))


def _f_linear_growth_lb(p: BoundInputs) -> float:
    _need(p, ("n", "q", "eps", "delta", "gateset_size", "t"), "linear_growth_lb")
    d = float(p.d)
    t_max = 2.0 * p.c2 * p.n ** 6 * d ** 4
    if p.t > t_max:
        raise ValueError(
            f"linear_growth_lb is valid for depth t <= 2 c2 n^6 d^4 = {t_max:.4g}, "
            f"got t = {p.t}")
    log_g = math.log(p.gateset_size)
    return (p.t / d ** 2 * math.log(2.0 * (1.0 - p.eps ** 2)) / (p.c2 * p.n ** 6 * log_g)
            - math.log(1.0 / p.delta) / log_g)


def _f_complexity_threshold_r(p: BoundInputs) -> dict:
    _need(p, ("n", "q", "eps", "beta", "delta", "gateset_size"), "complexity_threshold_r")
    d = float(p.d)
    log_g = math.log(p.gateset_size)
    log_inv_delta = math.log(1.0 / p.delta)
    unitary = ((d * d - 1) * math.log(1.0 / (C_UPPER * p.beta * p.eps))
               - log_inv_delta) / log_g
    state = ((2 * d - 2) * math.log(1.0 / (p.beta * p.eps)) - log_inv_delta) / log_g
    return {"unitary": unitary, "state": state}


def _f_recurrence_T1_T2(p: BoundInputs) -> dict:
    _need(p, ("n", "q", "eps", "alpha", "beta", "delta1", "delta2", "r1", "r2",
              "gateset_size", "tau", "tau_s", "tau_slh", "m"), "recurrence_T1_T2")
    d = float(p.d)
    a = _blocks_count(p.r2, p.n, p.c_loc)
    factor_u = 1.0 if a == 0 else _pow(2.0 * a / (d * d * (1.0 - p.eps ** 2)), a)
    factor_s = 1.0 if a == 0 else _pow(a / (d * (1.0 - p.eps ** 2)), a)
    log_inv_d2 = math.log(1.0 / p.delta2)

    t1 = (p.delta1 / p.gateset_size ** (p.r1 + 1)
          * _pow(1.0 / (p.beta * C_UPPER * p.eps), d * d - 1))
    t2 = (p.tau * log_inv_d2 * factor_u
          * _pow(1.0 / (p.alpha * C_LOWER * p.eps), d * d - 1))
    t1_slh = (p.delta1 / p.gateset_size ** (p.r1 + 2) / (64.0 * d * d * p.m)
              * _pow(1.0 / (2.0 * p.beta * C_UPPER * p.eps), d * d - 2))
    t2_slh = (p.tau_slh * log_inv_d2 * factor_u
              * _pow(1.0 / (p.alpha * C_LOWER * p.eps), d * d - 1))
    t1_state = (p.delta1 / p.gateset_size ** (p.r1 + 1)
                * _pow(1.0 / (p.beta * p.eps), 2 * d - 2))
    t2_state = (p.tau_s * log_inv_d2 * factor_s
                * _pow(1.0 / (p.alpha * p.eps), 2 * d - 2))
    return {"T1": t1, "T2": t2, "T1_slh": t1_slh, "T2_slh": t2_slh,
            "T1_state": t1_state, "T2_state": t2_state, "a_r2": a}


def _f_conditional_rec_params(p: BoundInputs) -> dict:
    _need(p, ("n", "q", "eps", "beta", "delta", "gateset_size"), "conditional_rec_params")
    d = float(p.d)
    log_g = math.log(p.gateset_size)
    log_2_delta = math.log(2.0 / p.delta)
    return {
        "gamma_max_unitary": p.delta / 6.0 * _pow(C_LOWER / 3.0, d * d - 1),
        "gamma_max_state": p.delta * math.log(2.0) / (16.0 * d),
        "r_unitary": ((d * d - 1) * math.log(1.0 / (C_UPPER * p.beta * p.eps))
                      - log_2_delta) / log_g,
        "r_state": ((2 * d - 2) * math.log(1.0 / (p.beta * p.eps)) - log_2_delta) / log_g,
    }


_FORMULAS = {
    "gap_rqc": _f_gap_rqc,
    "gap_slh": _f_gap_slh,
    "designs_k": _f_designs_k,
    "grqc_designs_k": _f_grqc_designs_k,
    "grqc_designs_unbounded": _f_grqc_designs_unbounded,
    "linear_growth_lb": _f_linear_growth_lb,
    "complexity_threshold_r": _f_complexity_threshold_r,
    "recurrence_T1_T2": _f_recurrence_T1_T2,
    "conditional_rec_params": _f_conditional_rec_params,
}

FORMULA_NAMES = tuple(sorted(_FORMULAS))


def design_depth_formulas(inputs: BoundInputs, which: str):
    """Evaluate one of the closed-form depth/threshold formulas by name."""
    try:
        fn = _FORMULAS[which]
    except KeyError:
        raise ValueError(
            f"unknown formula {which!r}; choose from {sorted(_FORMULAS)}") from None
    return fn(inputs)


def gap_sweep_rows(points, cache_dir=None) -> list:
    """Evaluate gaps over (n, q, k, graph_id, edges) points; returns rows
    matching the sweep CSV schema."""
    rows = []
    for n, q, k, graph_id, edges in points:
        ham = design_hamiltonian(n, q, k, edges, cache_dir=cache_dir)
        report = spectral_gap(ham)
        rows.append({
            "n": n, "q": q, "k": k, "graph_id": graph_id,
            "edges": ";".join(f"{i}-{j}" for i, j in ham.edges),
            "gap": report.gap, "expander_norm": report.expander_norm,
            "method": report.method,
        })
    return rows
