"""Brute-force epsilon-complexity of unitaries and states.

Words over a finite gate set are enumerated breadth-first by length; the
complexity of a target is the first level containing a word within eps in
the phase-invariant metric (state targets compare the word applied to a
reference vector). New gates compose on the left, matching walk order, and
ties break by gate index, so the enumeration is deterministic.

Deduplication modes:
  exact_dedup  drops only coincidences (distance < 1e-9), so values are
               exact within the explored depth.
  net_dedup    drops any word within a chosen radius rho of a kept one;
               the returned value then sandwiches the true complexity:
               C_{eps+rho} <= value <= C_{eps-rho}.
"""

from __future__ import annotations

import dataclasses

import numpy as np

from . import geometry, qmath
from .ensembles import GateSet

EXACT_DEDUP_TOL = 1e-9
DEFAULT_NODE_BUDGET = 2_000_000


@dataclasses.dataclass(frozen=True)
class GateWord:
    """A gate sequence and its composed channel.

    indices[0] is the first gate applied; the product therefore reads
    gates[indices[-1]] @ ... @ gates[indices[0]].
    """

    indices: tuple
    product: qmath.UnitaryChannel

    @property
    def length(self) -> int:
        return len(self.indices)

    @property
    def matrix(self) -> np.ndarray:
        return self.product.rep.entries


def make_word(gateset: GateSet, indices) -> GateWord:
    indices = tuple(int(i) for i in indices)
    dim = gateset.q ** gateset.locality
    mat = np.eye(dim, dtype=complex)
    for idx in indices:
        mat = gateset.gates[idx] @ mat
    return GateWord(indices=indices, product=qmath.UnitaryChannel(qmath.Unitary(mat)))


def word_is_consistent(word: GateWord, gateset: GateSet, tol: float = 1e-10) -> bool:
    """Re-derive the product from the indices and compare."""
    rebuilt = make_word(gateset, word.indices)
    return qmath.distance_unitary(rebuilt.matrix, word.matrix) <= tol


@dataclasses.dataclass(frozen=True)
class WordNet:
    """One BFS level after deduplication."""

    level: int
    representatives: tuple
    dedup_radius: float


@dataclasses.dataclass(frozen=True)
class Enumeration:
    levels: tuple
    truncated: bool
    mode: str
    dedup_radius: float
    dropped: tuple = ()

    def words(self):
        for net in self.levels:
            yield from net.representatives


@dataclasses.dataclass(frozen=True)
class ComplexityResult:
    """value None encodes the "exceeds r_max" sentinel."""

    value: int | None
    eps: float
    witness: GateWord | None
    r_max: int
    mode: str
    truncated: bool = False

    def __post_init__(self):
        if self.value is not None and self.witness is not None:
            if self.witness.length != self.value:
                raise ValueError("witness length must equal the complexity value")


def _resolve_mode(mode: str, radius: float | None) -> float:
    if mode == "exact_dedup":
        if radius is not None:
            raise ValueError("exact_dedup takes no radius")
        return EXACT_DEDUP_TOL
    if mode == "net_dedup":
        if radius is None or radius <= 0:
            raise ValueError("net_dedup needs a positive radius")
        return float(radius)
    raise ValueError(f"mode must be exact_dedup or net_dedup, got {mode!r}")


class _Search:
    """Breadth-first word enumeration with global dedup against every kept
    word (coincidences collapse across levels, e.g. HH back into level 0)."""

    def __init__(self, gateset: GateSet, r_max: int, mode: str,
                 radius: float | None, node_budget: int,
                 record_drops: bool = False):
        if r_max < 0:
            raise ValueError("r_max must be nonnegative")
        self.gateset = gateset
        self.r_max = r_max
        self.mode = mode
        self.radius = _resolve_mode(mode, radius)
        self.node_budget = int(node_budget)
        self.truncated = False
        self.dropped = [] if record_drops else None
        dim = gateset.q ** gateset.locality
        self._kept = np.empty((16, dim, dim), dtype=complex)
        self._n_kept = 0

    def _keep(self, mat: np.ndarray):
        if self._n_kept == len(self._kept):
            grown = np.empty((2 * len(self._kept),) + self._kept.shape[1:], dtype=complex)
            grown[:self._n_kept] = self._kept
            self._kept = grown
        self._kept[self._n_kept] = mat
        self._n_kept += 1

    def _is_new(self, mat: np.ndarray) -> bool:
        if self._n_kept == 0:
            return True
        kept = self._kept[:self._n_kept]
        if self.radius <= 1e-6:
            # Eigenphase routes lose half the digits near coincidence, so
            # tight dedup uses the phase-aligned Frobenius residual instead;
            # it upper-bounds the channel distance, keeping drops sound.
            tr = np.einsum("kab,ab->k", kept.conj(), mat)
            scale = np.abs(tr)
            phase = np.where(scale > 0, tr / np.where(scale > 0, scale, 1.0), 1.0)
            resid = mat[None, :, :] - phase[:, None, None] * kept
            dists = np.sqrt(np.einsum("kab,kab->k", resid, resid.conj()).real)
        else:
            dists = qmath.batched_distance_unitary(kept, mat)
        return bool(np.min(dists) >= self.radius)

    def levels(self):
        dim = self.gateset.q ** self.gateset.locality
        identity = GateWord(indices=(),
                            product=qmath.UnitaryChannel(qmath.Unitary(np.eye(dim))))
        budget_used = 1
        self._keep(identity.matrix)
        frontier = [identity]
        yield WordNet(level=0, representatives=(identity,), dedup_radius=self.radius)
        for r in range(1, self.r_max + 1):
            new_words = []
            for word in frontier:
                for g_idx, gate in enumerate(self.gateset.gates):
                    if budget_used >= self.node_budget:
                        self.truncated = True
                        yield WordNet(level=r, representatives=tuple(new_words),
                                      dedup_radius=self.radius)
                        return
                    budget_used += 1
                    mat = gate @ word.matrix
                    if self._is_new(mat):
                        self._keep(mat)
                        new_words.append(GateWord(
                            indices=word.indices + (g_idx,),
                            product=qmath.UnitaryChannel(qmath.Unitary(mat))))
                    elif self.dropped is not None:
                        self.dropped.append(GateWord(
                            indices=word.indices + (g_idx,),
                            product=qmath.UnitaryChannel(qmath.Unitary(mat))))
            yield WordNet(level=r, representatives=tuple(new_words),
                          dedup_radius=self.radius)
            frontier = new_words
            if not frontier:
                return


def enumerate_words(gateset: GateSet, r_max: int, mode: str = "exact_dedup",
                    radius: float | None = None,
                    node_budget: int = DEFAULT_NODE_BUDGET,
                    record_drops: bool = False) -> Enumeration:
    search = _Search(gateset, r_max, mode, radius, node_budget, record_drops)
    levels = tuple(search.levels())
    return Enumeration(levels=levels, truncated=search.truncated, mode=mode,
                       dedup_radius=search.radius,
                       dropped=tuple(search.dropped or ()))


def _first_within(level: WordNet, distances: np.ndarray, eps: float):
    hits = np.nonzero(distances <= eps)[0]
    if len(hits) == 0:
        return None
    return level.representatives[int(hits[0])]


def complexity_unitary(target, gateset: GateSet, eps: float, r_max: int,
                       mode: str = "exact_dedup", radius: float | None = None,
                       node_budget: int = DEFAULT_NODE_BUDGET) -> ComplexityResult:
    """Smallest word length within eps of the target channel, or the
    exceeds-r_max sentinel (value None)."""
    target_mat = np.asarray(
        target.rep.entries if isinstance(target, qmath.UnitaryChannel)
        else target.entries if isinstance(target, qmath.Unitary) else target,
        dtype=complex)
    dim = gateset.q ** gateset.locality
    if target_mat.shape != (dim, dim):
        raise qmath.DimensionMismatchError(
            f"target has shape {target_mat.shape}, gate words have {(dim, dim)}")
    search = _Search(gateset, r_max, mode, radius, node_budget)
    for net in search.levels():
        if not net.representatives:
            continue
        stack = np.stack([w.matrix for w in net.representatives])
        dists = qmath.batched_distance_unitary(stack, target_mat)
        witness = _first_within(net, dists, eps)
        if witness is not None:
            return ComplexityResult(value=net.level, eps=eps, witness=witness,
                                    r_max=r_max, mode=mode, truncated=False)
    return ComplexityResult(value=None, eps=eps, witness=None, r_max=r_max,
                            mode=mode, truncated=search.truncated)


def complexity_state(target, gateset: GateSet, psi0=None, eps: float = 0.1,
                     r_max: int = 8, mode: str = "exact_dedup",
                     radius: float | None = None,
                     node_budget: int = DEFAULT_NODE_BUDGET) -> ComplexityResult:
    """Smallest word length whose action on psi0 (default the first basis
    vector) is within eps of the target state."""
    dim = gateset.q ** gateset.locality
    target_vec = np.asarray(
        target.amplitudes if isinstance(target, qmath.PureState) else target,
        dtype=complex).reshape(-1)
    if target_vec.shape != (dim,):
        raise qmath.DimensionMismatchError(
            f"target has dimension {target_vec.shape[0]}, words act on {dim}")
    if psi0 is None:
        start = np.zeros(dim, dtype=complex)
        start[0] = 1.0
    else:
        start = np.asarray(
            psi0.amplitudes if isinstance(psi0, qmath.PureState) else psi0,
            dtype=complex).reshape(-1)
    search = _Search(gateset, r_max, mode, radius, node_budget)
    for net in search.levels():
        if not net.representatives:
            continue
        stack = np.stack([w.matrix for w in net.representatives])
        dists = qmath.batched_distance_state(stack @ start, target_vec)
        witness = _first_within(net, dists, eps)
        if witness is not None:
            return ComplexityResult(value=net.level, eps=eps, witness=witness,
                                    r_max=r_max, mode=mode, truncated=False)
    return ComplexityResult(value=None, eps=eps, witness=None, r_max=r_max,
                            mode=mode, truncated=search.truncated)


class WordTable:
    """Enumerate once, answer many complexity queries.

    Semantics match complexity_unitary/complexity_state with the same
    gateset, r_max and mode; only the repeated BFS work is shared.
    """

    def __init__(self, gateset: GateSet, r_max: int, mode: str = "exact_dedup",
                 radius: float | None = None,
                 node_budget: int = DEFAULT_NODE_BUDGET):
        self.gateset = gateset
        self.enumeration = enumerate_words(gateset, r_max, mode, radius, node_budget)
        self.r_max = r_max
        self.mode = mode
        self._stacks = [
            np.stack([w.matrix for w in net.representatives])
            if net.representatives else None
            for net in self.enumeration.levels]

    def complexity_unitary(self, target, eps: float) -> ComplexityResult:
        target_mat = np.asarray(
            target.rep.entries if isinstance(target, qmath.UnitaryChannel)
            else target.entries if isinstance(target, qmath.Unitary) else target,
            dtype=complex)
        for net, stack in zip(self.enumeration.levels, self._stacks):
            if stack is None:
                continue
            dists = qmath.batched_distance_unitary(stack, target_mat)
            witness = _first_within(net, dists, eps)
            if witness is not None:
                return ComplexityResult(value=net.level, eps=eps, witness=witness,
                                        r_max=self.r_max, mode=self.mode,
                                        truncated=False)
        return ComplexityResult(value=None, eps=eps, witness=None, r_max=self.r_max,
                                mode=self.mode, truncated=self.enumeration.truncated)

    def complexity_state(self, target, eps: float, psi0=None) -> ComplexityResult:
        dim = self.gateset.q ** self.gateset.locality
        target_vec = np.asarray(
            target.amplitudes if isinstance(target, qmath.PureState) else target,
            dtype=complex).reshape(-1)
        if psi0 is None:
            start = np.zeros(dim, dtype=complex)
            start[0] = 1.0
        else:
            start = np.asarray(
                psi0.amplitudes if isinstance(psi0, qmath.PureState) else psi0,
                dtype=complex).reshape(-1)
        for net, stack in zip(self.enumeration.levels, self._stacks):
            if stack is None:
                continue
            dists = qmath.batched_distance_state(stack @ start, target_vec)
            witness = _first_within(net, dists, eps)
            if witness is not None:
                return ComplexityResult(value=net.level, eps=eps, witness=witness,
                                        r_max=self.r_max, mode=self.mode,
                                        truncated=False)
        return ComplexityResult(value=None, eps=eps, witness=None, r_max=self.r_max,
                                mode=self.mode, truncated=self.enumeration.truncated)


@dataclasses.dataclass(frozen=True)
class LowComplexityPacking:
    """Greedy packing over the set of words of length <= r."""

    packing: geometry.PackingResult
    r: int
    eps: float
    exhaustive: bool
    partial: bool

    @property
    def count(self) -> int:
        return self.packing.count


def low_complexity_packing(gateset: GateSet, r: int, eps: float, budget: int,
                           rng) -> LowComplexityPacking:
    """Lower-bound the packing number of the length-<=r word set.

    Enumerates the words exactly when the node budget allows, otherwise
    falls back to uniformly sampled words (partial=True).
    """
    enum = enumerate_words(gateset, r, "exact_dedup", node_budget=budget)
    if not enum.truncated:
        mats = [w.matrix for w in enum.words()]
        it = iter(mats)
        packing = geometry.greedy_packing(lambda _rng: next(it), eps,
                                          budget=len(mats), rng=rng)
        return LowComplexityPacking(packing=packing, r=r, eps=eps,
                                    exhaustive=True, partial=False)

    def sample_word(rng_):
        length = int(rng_.integers(r + 1))
        return make_word(gateset, rng_.integers(gateset.size, size=length)).matrix

    packing = geometry.greedy_packing(sample_word, eps, budget=budget, rng=rng)
    return LowComplexityPacking(packing=packing, r=r, eps=eps,
                                exhaustive=False, partial=True)


@dataclasses.dataclass(frozen=True)
class StabilityReport:
    """Both sides of C_eps(word . u) <= C_eps(u) + length(word)."""

    lhs: ComplexityResult
    rhs: ComplexityResult
    word_length: int
    holds: bool | None

    @property
    def inconclusive(self) -> bool:
        return self.holds is None


def stability_check(u, gateset: GateSet, word: GateWord, eps: float,
                    r_max: int, mode: str = "exact_dedup",
                    radius: float | None = None,
                    node_budget: int = DEFAULT_NODE_BUDGET) -> StabilityReport:
    """BFS both sides of the gate-stability inequality at desk scale."""
    u_mat = np.asarray(
        u.rep.entries if isinstance(u, qmath.UnitaryChannel)
        else u.entries if isinstance(u, qmath.Unitary) else u, dtype=complex)
    lhs = complexity_unitary(word.matrix @ u_mat, gateset, eps, r_max, mode,
                             radius, node_budget)
    rhs = complexity_unitary(u_mat, gateset, eps, r_max, mode, radius, node_budget)
    if lhs.value is None or rhs.value is None:
        holds = None
    else:
        holds = lhs.value <= rhs.value + word.length
    return StabilityReport(lhs=lhs, rhs=rhs, word_length=word.length, holds=holds)


def complexity_csv_rows(entries) -> list:
    """Rows for the sweep CSV: target_id, eps, value, witness_length, mode,
    truncated. entries is a sequence of (target_id, ComplexityResult)."""
    rows = []
    for target_id, res in entries:
        rows.append({
            "target_id": target_id,
            "eps": res.eps,
            "value": "exceeds r_max" if res.value is None else res.value,
            "witness_length": "" if res.witness is None else res.witness.length,
            "mode": res.mode,
            "truncated": res.truncated,
        })
    return rows
