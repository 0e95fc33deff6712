"""Samplers for the random-evolution models: local circuits with Haar or
finite-gateset two-site gates on an interaction graph, and the continuous
stochastic-Hamiltonian walk, plus walk-trace recording.

Time integration of the continuous model uses exact exponentials of the
sampled Hermitian increments, so every emitted matrix is unitary by
construction. The increment basis is normalized so that the per-edge sum
of squared basis operators is exactly the identity; with i.i.d. N(0, 1/dt)
noise coefficients this makes the mean one-step drift of tr(U)/d equal to
-|E|/2 per unit time, the scale the deviation bound is stated at.
"""

from __future__ import annotations

import dataclasses
import json
import math
from pathlib import Path

import numpy as np

from . import qmath
from .graphs import ArchitectureError, chain_edges, hamiltonian_path_exists, normalize_edges

DEFAULT_SLH_DT = 1e-2
FULL_RECORD_CAP = 64


class GateSetError(ValueError):
    """Raised when a gate-set payload fails validation."""


@dataclasses.dataclass(frozen=True)
class GateSet:
    """A finite named set of 1- or 2-site gates on q-level sites.

    Universality is a declared property of the set, not a verified one.
    """

    name: str
    locality: int
    q: int
    gates: tuple

    def __post_init__(self):
        if self.locality not in (1, 2):
            raise GateSetError(f"locality must be 1 or 2, got {self.locality}")
        if len(self.gates) < 2:
            raise GateSetError("a gate set needs at least 2 gates")
        dim = self.q ** self.locality
        for idx, gate in enumerate(self.gates):
            if gate.shape != (dim, dim):
                raise GateSetError(
                    f"gate {idx} has shape {gate.shape}, expected {(dim, dim)}")
            defect = qmath.spectral_norm(gate.conj().T @ gate - np.eye(dim))
            if defect > qmath.UNITARY_TOL:
                raise GateSetError(f"gate {idx} fails unitarity by {defect:.2e}")

    @property
    def size(self) -> int:
        return len(self.gates)

    def stack(self) -> np.ndarray:
        return np.stack(self.gates)


def gateset_to_json(gs: GateSet) -> dict:
    return {
        "name": gs.name,
        "locality": gs.locality,
        "gates": [[[[float(z.real), float(z.imag)] for z in row] for row in gate]
                  for gate in gs.gates],
    }


def gateset_from_json(payload: dict) -> GateSet:
    try:
        name = payload["name"]
        locality = int(payload["locality"])
        raw_gates = payload["gates"]
    except (KeyError, TypeError) as exc:
        raise GateSetError(f"gate-set payload missing field: {exc}") from exc
    gates = []
    for raw in raw_gates:
        arr = np.asarray(raw, dtype=float)
        if arr.ndim != 3 or arr.shape[0] != arr.shape[1] or arr.shape[2] != 2:
            raise GateSetError(
                "each gate must be a square matrix of [re, im] pairs")
        gates.append(arr[..., 0] + 1j * arr[..., 1])
    dim = gates[0].shape[0]
    q = round(dim ** (1.0 / locality))
    if q ** locality != dim:
        raise GateSetError(
            f"gate dimension {dim} is not a perfect power of locality {locality}")
    return GateSet(name=name, locality=locality, q=q, gates=tuple(gates))


def load_gateset(path) -> GateSet:
    return gateset_from_json(json.loads(Path(path).read_text()))


def save_gateset(gs: GateSet, path):
    Path(path).write_text(json.dumps(gateset_to_json(gs), indent=1))


def _builtin_ht() -> GateSet:
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
    t = np.diag([1.0, np.exp(1j * math.pi / 4.0)])
    return GateSet(name="ht", locality=1, q=2, gates=(h + 0j, t))


def _builtin_ht_cnot() -> GateSet:
    h = np.array([[1.0, 1.0], [1.0, -1.0]]) / math.sqrt(2.0)
    t = np.diag([1.0, np.exp(1j * math.pi / 4.0)])
    eye = np.eye(2)
    cnot = np.eye(4)[[0, 1, 3, 2]]
    return GateSet(name="ht_cnot", locality=2, q=2,
                   gates=(np.kron(h, eye) + 0j, np.kron(t, eye), cnot + 0j))


GATESET_BUILTINS = {"ht": _builtin_ht, "ht_cnot": _builtin_ht_cnot}


def builtin_gateset(name: str) -> GateSet:
    try:
        return GATESET_BUILTINS[name]()
    except KeyError:
        raise GateSetError(
            f"unknown builtin gate set {name!r}; have {sorted(GATESET_BUILTINS)}") from None


@dataclasses.dataclass(frozen=True)
class SLHIncrementBasis:
    """Hermitian operator basis for the two-site noise increments.

    normalization records the inner-product convention and the deviation of
    the basis Casimir (sum of squares) from the identity.
    """

    q: int
    operators: np.ndarray
    normalization: dict

    def __post_init__(self):
        dim = self.q * self.q
        if self.operators.shape != (dim * dim, dim, dim):
            raise ValueError(f"expected {dim * dim} operators of shape {(dim, dim)}")


def slh_increment_basis(q: int) -> SLHIncrementBasis:
    """Generalized Gell-Mann matrices plus identity on the 2-site space,
    scaled so q^2 tr(A_mu A_nu) = delta_mu_nu (equivalently sum A_mu^2 = I)."""
    dim = q * q
    ops = [np.eye(dim, dtype=complex) / math.sqrt(dim)]
    for j in range(dim):
        for l in range(j + 1, dim):
            sym = np.zeros((dim, dim), dtype=complex)
            sym[j, l] = sym[l, j] = 1.0 / math.sqrt(2.0)
            ops.append(sym)
            anti = np.zeros((dim, dim), dtype=complex)
            anti[j, l] = -1j / math.sqrt(2.0)
            anti[l, j] = 1j / math.sqrt(2.0)
            ops.append(anti)
    for l in range(1, dim):
        diag = np.zeros(dim)
        diag[:l] = 1.0
        diag[l] = -l
        ops.append(np.diag(diag).astype(complex) / math.sqrt(l * (l + 1)))
    stack = np.stack(ops) / math.sqrt(dim)

    casimir = np.einsum("mab,mbc->ac", stack, stack)
    deviation = float(np.max(np.abs(casimir - np.eye(dim))))
    if deviation > 1e-10:
        raise AssertionError(f"increment basis Casimir off identity by {deviation:.2e}")
    return SLHIncrementBasis(q=q, operators=stack,
                             normalization={"inner_product": "q^2 tr(A B) = delta",
                                            "casimir_deviation": deviation})


def embed_gate(gate: np.ndarray, n: int, q: int, sites) -> np.ndarray:
    """Embed a gate acting on the given sites (in order) into the n-site
    space, identity elsewhere."""
    sites = list(sites)
    d = q ** n
    rest = [s for s in range(n) if s not in sites]
    order = sites + rest
    idx = np.arange(d)
    gather = np.zeros_like(idx)
    for u, s in enumerate(order):
        gather += (idx // q ** (n - 1 - s)) % q * q ** (n - 1 - u)
    full = np.kron(gate, np.eye(q ** len(rest), dtype=gate.dtype))
    return full[np.ix_(gather, gather)]


@dataclasses.dataclass(frozen=True)
class CircuitArchitecture:
    """A step sampler specification.

    kinds: rqc1d (chain, Haar 2-site gates), grqc_haar (arbitrary graph,
    Haar 2-site gates), grqc_gateset (arbitrary graph, uniform gate from a
    finite set), slh (continuous increments on a graph). n = 1 is allowed
    for the discrete kinds and means single-site steps.
    """

    kind: str
    n: int
    q: int
    graph: tuple = ()
    gateset: GateSet | None = None
    slh_dt: float = DEFAULT_SLH_DT
    slh_basis: SLHIncrementBasis | None = None

    def __post_init__(self):
        if self.kind not in ("rqc1d", "grqc_haar", "grqc_gateset", "slh"):
            raise ArchitectureError(f"unknown architecture kind {self.kind!r}")
        if self.n < 1 or self.q < 2:
            raise ArchitectureError(f"need n >= 1 and q >= 2, got n={self.n}, q={self.q}")

        if self.kind == "rqc1d":
            expected = chain_edges(self.n)
            edges = normalize_edges(self.n, self.graph) if self.graph else expected
            if edges != expected:
                raise ArchitectureError("rqc1d runs on the 1D chain; pass no graph")
            object.__setattr__(self, "graph", tuple(expected))
        else:
            edges = normalize_edges(self.n, self.graph)
            if not hamiltonian_path_exists(self.n, edges):
                raise ArchitectureError("graph does not contain a Hamiltonian path")
            object.__setattr__(self, "graph", tuple(edges))

        if self.n >= 2 and not self.graph and self.kind != "rqc1d":
            raise ArchitectureError("multi-site architectures need edges")

        if self.kind == "grqc_gateset":
            if self.gateset is None:
                raise ArchitectureError("grqc_gateset needs a gate set")
            want_locality = 1 if self.n == 1 else 2
            if self.gateset.locality != want_locality:
                raise ArchitectureError(
                    f"n={self.n} needs locality-{want_locality} gates, "
                    f"set {self.gateset.name!r} has locality {self.gateset.locality}")
            if self.gateset.q != self.q:
                raise ArchitectureError("gate-set local dimension differs from q")

        if self.kind == "slh":
            if self.n < 2:
                raise ArchitectureError("the continuous model needs at least one edge")
            if self.slh_dt <= 0:
                raise ArchitectureError(f"dt must be positive, got {self.slh_dt}")
            if self.slh_basis is None:
                object.__setattr__(self, "slh_basis", slh_increment_basis(self.q))

    @property
    def d(self) -> int:
        return self.q ** self.n


def choose_edge(arch: CircuitArchitecture, rng) -> tuple:
    edges = arch.graph
    return edges[int(rng.integers(len(edges)))]


def _embedded_gate_stack(arch: CircuitArchitecture) -> np.ndarray:
    """All gateset gates pre-embedded on every edge (or site), stacked.

    Picking uniformly from the stack equals picking an edge uniformly and
    then a gate uniformly.
    """
    if arch.n == 1:
        return arch.gateset.stack()
    mats = [embed_gate(g, arch.n, arch.q, e)
            for e in arch.graph for g in arch.gateset.gates]
    return np.stack(mats)


def sample_step(arch: CircuitArchitecture, rng) -> qmath.Unitary:
    """One step of a discrete walk: uniform edge, then a Haar or uniform
    gate embedded on it."""
    if arch.kind == "slh":
        raise ArchitectureError("continuous architectures step via slh_step")
    if arch.n == 1:
        if arch.kind == "grqc_gateset":
            gate = arch.gateset.gates[int(rng.integers(arch.gateset.size))]
            return qmath.Unitary(np.array(gate))
        return qmath.haar_unitary(arch.q, rng)
    i, j = choose_edge(arch, rng)
    if arch.kind == "grqc_gateset":
        gate = arch.gateset.gates[int(rng.integers(arch.gateset.size))]
    else:
        gate = qmath.haar_unitary(arch.q * arch.q, rng).entries
    return qmath.Unitary(embed_gate(gate, arch.n, arch.q, (i, j)))


def step_matrices(arch: CircuitArchitecture, m: int, rng) -> np.ndarray:
    """Batch of m independent single-step unitaries as an (m, d, d) stack."""
    if arch.kind == "slh":
        return slh_step_matrices(arch, m, rng)
    if arch.kind == "grqc_gateset":
        stack = _embedded_gate_stack(arch)
        return stack[rng.integers(len(stack), size=m)]
    if arch.n == 1:
        return qmath.haar_unitary_matrices(arch.q, m, rng)
    gates = qmath.haar_unitary_matrices(arch.q * arch.q, m, rng)
    edge_idx = rng.integers(len(arch.graph), size=m)
    out = np.empty((m, arch.d, arch.d), dtype=complex)
    for e, edge in enumerate(arch.graph):
        sel = np.nonzero(edge_idx == e)[0]
        for w in sel:
            out[w] = embed_gate(gates[w], arch.n, arch.q, edge)
    return out


def walk_endpoint_matrices(arch: CircuitArchitecture, t: int, n_walks: int, rng,
                           chunk: int = 20000) -> np.ndarray:
    """U_t for n_walks independent discrete walks, batched."""
    if arch.kind == "slh":
        raise ArchitectureError("use slh_paths for the continuous model")
    if t < 0:
        raise ValueError("t must be nonnegative")
    out = np.empty((n_walks, arch.d, arch.d), dtype=complex)
    done = 0
    while done < n_walks:
        m = min(chunk, n_walks - done)
        acc = np.broadcast_to(np.eye(arch.d, dtype=complex), (m, arch.d, arch.d)).copy()
        for _ in range(t):
            acc = step_matrices(arch, m, rng) @ acc
        out[done:done + m] = acc
        done += m
    return out


def _slh_hamiltonians(arch: CircuitArchitecture, m: int, rng, dt: float) -> np.ndarray:
    """Batch of m sampled increment Hamiltonians on the full space."""
    basis = arch.slh_basis.operators
    d = arch.d
    total = np.zeros((m, d, d), dtype=complex)
    scale = 1.0 / math.sqrt(dt)
    for edge in arch.graph:
        xi = rng.standard_normal((m, basis.shape[0])) * scale
        local = np.einsum("mk,kab->mab", xi, basis)
        if arch.n == 2:
            total += local
        else:
            rest = np.eye(arch.q ** (arch.n - 2))
            idx = np.arange(d)
            gather = np.zeros_like(idx)
            order = list(edge) + [s for s in range(arch.n) if s not in edge]
            for u, s in enumerate(order):
                gather += (idx // arch.q ** (arch.n - 1 - s)) % arch.q \
                    * arch.q ** (arch.n - 1 - u)
            full = np.einsum("mab,cd->macbd", local, rest).reshape(m, d, d)
            total += full[:, gather[:, None], gather[None, :]]
    return total


def slh_step_matrices(arch: CircuitArchitecture, m: int, rng,
                      dt: float | None = None) -> np.ndarray:
    """Batch of m one-increment unitaries exp(i H dt) via exact
    eigendecomposition of the sampled Hermitian increments."""
    if arch.kind != "slh":
        raise ArchitectureError("slh_step_matrices needs an slh architecture")
    step_dt = arch.slh_dt if dt is None else dt
    if step_dt <= 0:
        raise ValueError(f"dt must be positive, got {step_dt}")
    ham = _slh_hamiltonians(arch, m, rng, step_dt)
    evals, evecs = np.linalg.eigh(ham)
    phases = np.exp(1j * evals * step_dt)
    return np.einsum("mab,mb,mcb->mac", evecs, phases, evecs.conj())


def slh_step(arch: CircuitArchitecture, state, rng) -> qmath.Unitary:
    """Advance one continuous increment: returns exp(i H dt) @ state."""
    current = state.entries if isinstance(state, qmath.Unitary) else np.asarray(state)
    step = slh_step_matrices(arch, 1, rng)[0]
    return qmath.Unitary(step @ current)


def slh_paths(arch: CircuitArchitecture, horizon: float, n_paths: int, rng,
              return_final: bool = False):
    """Distance-to-identity along the discretized time grid for a batch of
    independent continuous walks. Returns (times, dists[, finals])."""
    if arch.kind != "slh":
        raise ArchitectureError("slh_paths needs an slh architecture")
    steps = int(round(horizon / arch.slh_dt))
    times = np.arange(steps + 1) * arch.slh_dt
    d = arch.d
    unitaries = np.broadcast_to(np.eye(d, dtype=complex), (n_paths, d, d)).copy()
    dists = np.zeros((n_paths, steps + 1))
    for j in range(1, steps + 1):
        unitaries = slh_step_matrices(arch, n_paths, rng) @ unitaries
        dists[:, j] = qmath.batched_distance_to_identity(unitaries)
    if return_final:
        return times, dists, unitaries
    return times, dists


@dataclasses.dataclass
class WalkTrace:
    """Record of one walk realization."""

    arch: CircuitArchitecture
    times: np.ndarray
    dist_to_id: np.ndarray
    eps_list: tuple = ()
    complexity: dict | None = None
    unitaries: list | None = None
    seed: int | None = None

    def __post_init__(self):
        if len(self.times) != len(self.dist_to_id):
            raise ValueError("times and distances differ in length")
        if len(self.times) > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")
        if abs(self.dist_to_id[0]) > 1e-12:
            raise ValueError("a walk starts at the identity, distance 0")


def walk(arch: CircuitArchitecture, t_max, rng, record: str = "summary",
         eps_list=(), complexity_fn=None, full_cap: int = FULL_RECORD_CAP,
         seed: int | None = None) -> WalkTrace:
    """Run one walk and record per-step distance to the identity.

    complexity_fn(channel_matrix, eps) -> int-or-None is evaluated at every
    step for every eps in eps_list when supplied. record="full" also keeps
    the channel matrices (small dimensions only).
    """
    if record not in ("summary", "full"):
        raise ValueError(f"record must be 'summary' or 'full', got {record!r}")
    if record == "full" and arch.d > full_cap:
        raise ValueError(
            f"full recording capped at dimension {full_cap}, architecture has {arch.d}")

    continuous = arch.kind == "slh"
    if continuous:
        steps = int(round(t_max / arch.slh_dt))
        times = np.arange(steps + 1) * arch.slh_dt
    else:
        steps = int(t_max)
        if steps < 0:
            raise ValueError("t_max must be nonnegative")
        times = np.arange(steps + 1)

    eps_list = tuple(eps_list)
    current = np.eye(arch.d, dtype=complex)
    dists = np.zeros(steps + 1)
    kept = [current.copy()] if record == "full" else None
    complexity = {eps: [] for eps in eps_list} if complexity_fn and eps_list else None
    if complexity is not None:
        for eps in eps_list:
            complexity[eps].append(complexity_fn(current, eps))

    for j in range(1, steps + 1):
        if continuous:
            step = slh_step_matrices(arch, 1, rng)[0]
        else:
            step = sample_step(arch, rng).entries
        current = step @ current
        dists[j] = qmath.batched_distance_to_identity(current[None, :, :])[0]
        if kept is not None:
            kept.append(current.copy())
        if complexity is not None:
            for eps in eps_list:
                complexity[eps].append(complexity_fn(current, eps))

    return WalkTrace(arch=arch, times=times, dist_to_id=dists, eps_list=eps_list,
                     complexity=complexity, unitaries=kept, seed=seed)


def trace_csv_rows(trace: WalkTrace) -> list:
    """Rows for the trace CSV: t, dist_to_id, one complexity column per eps."""
    rows = []
    for idx, t in enumerate(trace.times):
        row = {"t": float(t), "dist_to_id": float(trace.dist_to_id[idx])}
        for eps in trace.eps_list:
            value = trace.complexity[eps][idx] if trace.complexity else None
            row[f"complexity_eps_{eps:g}"] = "exceeds r_max" if value is None else value
        rows.append(row)
    return rows
