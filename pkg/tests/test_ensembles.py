"""Gate sets, walk architectures, discrete steps and the continuous model."""

import numpy as np
import pytest

import oracles
from complexity_lab import ensembles, qmath, seeding
from complexity_lab.ensembles import (CircuitArchitecture, GateSet, GateSetError,
                                      builtin_gateset)
from complexity_lab.graphs import ArchitectureError, chain_edges


# ---------------------------------------------------------------------------
# Gate sets

def test_builtin_ht_gates():
    gs = builtin_gateset("ht")
    assert gs.size == 2 and gs.locality == 1 and gs.q == 2
    h, t = gs.gates
    assert np.allclose(h @ h, np.eye(2), atol=1e-12)  # H is an involution
    assert np.allclose(np.diag(t), [1.0, np.exp(1j * np.pi / 4)], atol=1e-15)


def test_builtin_ht_cnot_gates():
    gs = builtin_gateset("ht_cnot")
    assert gs.size == 3 and gs.locality == 2 and gs.q == 2
    assert gs.stack().shape == (3, 4, 4)


def test_builtin_unknown_name():
    with pytest.raises(GateSetError, match="unknown builtin"):
        builtin_gateset("clifford")


def test_gateset_rejects_nonunitary():
    bad = np.array([[1.0, 0.2], [0.0, 1.0]], dtype=complex)
    with pytest.raises(GateSetError, match="unitarity"):
        GateSet(name="bad", locality=1, q=2, gates=(bad, np.eye(2, dtype=complex)))


def test_gateset_rejects_small_or_misshapen():
    with pytest.raises(GateSetError, match="at least 2"):
        GateSet(name="one", locality=1, q=2, gates=(np.eye(2, dtype=complex),))
    with pytest.raises(GateSetError, match="locality"):
        GateSet(name="three", locality=3, q=2,
                gates=(np.eye(8, dtype=complex),) * 2)
    with pytest.raises(GateSetError, match="shape"):
        GateSet(name="mix", locality=1, q=2,
                gates=(np.eye(2, dtype=complex), np.eye(4, dtype=complex)))


def test_gateset_json_round_trip(tmp_path):
    gs = builtin_gateset("ht_cnot")
    path = tmp_path / "gs.json"
    ensembles.save_gateset(gs, path)
    back = ensembles.load_gateset(path)
    assert back.name == gs.name and back.locality == gs.locality and back.q == gs.q
    for a, b in zip(gs.gates, back.gates):
        assert np.array_equal(a, b)  # json floats round-trip exactly


def test_gateset_from_json_validates():
    with pytest.raises(GateSetError, match="missing field"):
        ensembles.gateset_from_json({"name": "x"})
    with pytest.raises(GateSetError, match="perfect power"):
        ensembles.gateset_from_json({
            "name": "x", "locality": 2,
            "gates": [[[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [1.0, 0.0]]]] * 2})


# ---------------------------------------------------------------------------
# Increment basis for the continuous model

@pytest.mark.parametrize("q", [2, 3])
def test_increment_basis_invariants(q):
    basis = ensembles.slh_increment_basis(q)
    dim = q * q
    ops = basis.operators
    assert ops.shape == (dim * dim, dim, dim)
    # Hermitian
    assert np.max(np.abs(ops - ops.conj().transpose(0, 2, 1))) < 1e-12
    # q^2 tr(A_mu A_nu) = delta
    gram = dim * np.einsum("mab,nba->mn", ops, ops)
    assert np.max(np.abs(gram - np.eye(dim * dim))) < 1e-10
    # sum of squares is the identity
    casimir = np.einsum("mab,mbc->ac", ops, ops)
    assert np.max(np.abs(casimir - np.eye(dim))) < 1e-10
    assert basis.normalization["casimir_deviation"] < 1e-10


# ---------------------------------------------------------------------------
# Gate embedding

def test_embed_gate_matches_reference():
    rng = np.random.default_rng(5)
    gate = oracles.haar_unitaries(4, 1, rng)[0]
    for (i, j) in ((0, 1), (0, 2), (1, 2)):
        got = ensembles.embed_gate(gate, 3, 2, (i, j))
        want = oracles.embed_pair_operator(gate, 3, 2, 1, i, j)
        assert np.max(np.abs(got - want)) < 1e-14


def test_embed_gate_single_site_hand_case():
    x = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    got = ensembles.embed_gate(x, 2, 2, (1,))
    assert np.array_equal(got, np.kron(np.eye(2), x))
    got0 = ensembles.embed_gate(x, 2, 2, (0,))
    assert np.array_equal(got0, np.kron(x, np.eye(2)))


def test_embed_gate_site_order_matters():
    rng = np.random.default_rng(6)
    gate = oracles.haar_unitaries(4, 1, rng)[0]
    a = ensembles.embed_gate(gate, 2, 2, (0, 1))
    b = ensembles.embed_gate(gate, 2, 2, (1, 0))
    swap = oracles.permutation_matrix(2, (1, 0))
    assert np.max(np.abs(b - swap @ a @ swap)) < 1e-14


# ---------------------------------------------------------------------------
# Architectures

def test_arch_kinds_and_dimension():
    arch = CircuitArchitecture(kind="rqc1d", n=3, q=2)
    assert arch.d == 8
    assert arch.graph == tuple(chain_edges(3))
    slh = CircuitArchitecture(kind="slh", n=2, q=2, graph=[(0, 1)])
    assert slh.slh_basis is not None


def test_arch_validation_errors():
    with pytest.raises(ArchitectureError, match="unknown architecture"):
        CircuitArchitecture(kind="brownian", n=2, q=2)
    with pytest.raises(ArchitectureError, match="1D chain"):
        CircuitArchitecture(kind="rqc1d", n=3, q=2, graph=[(0, 1), (0, 2)])
    with pytest.raises(ArchitectureError, match="Hamiltonian path"):
        CircuitArchitecture(kind="grqc_haar", n=4, q=2,
                            graph=[(0, 1), (0, 2), (0, 3)])
    with pytest.raises(ArchitectureError, match="needs a gate set"):
        CircuitArchitecture(kind="grqc_gateset", n=1, q=2)
    with pytest.raises(ArchitectureError, match="locality"):
        CircuitArchitecture(kind="grqc_gateset", n=2, q=2, graph=[(0, 1)],
                            gateset=builtin_gateset("ht"))
    with pytest.raises(ArchitectureError, match="at least one edge"):
        CircuitArchitecture(kind="slh", n=1, q=2)
    with pytest.raises(ArchitectureError, match="dt must be positive"):
        CircuitArchitecture(kind="slh", n=2, q=2, graph=[(0, 1)], slh_dt=0.0)


def test_choose_edge_is_uniform():
    arch = CircuitArchitecture(kind="grqc_haar", n=3, q=2,
                               graph=[(0, 1), (1, 2), (0, 2)])
    rng = np.random.default_rng(11)
    counts = {e: 0 for e in arch.graph}
    for _ in range(3000):
        counts[ensembles.choose_edge(arch, rng)] += 1
    for c in counts.values():
        assert abs(c / 3000 - 1 / 3) < 0.05


# ---------------------------------------------------------------------------
# Discrete steps

def test_sample_step_is_unitary_and_embedded():
    arch = CircuitArchitecture(kind="rqc1d", n=2, q=2)
    rng = np.random.default_rng(3)
    step = ensembles.sample_step(arch, rng)
    assert isinstance(step, qmath.Unitary) and step.dim == 4


def test_sample_step_gateset_draws_from_the_set():
    gs = builtin_gateset("ht")
    arch = CircuitArchitecture(kind="grqc_gateset", n=1, q=2, gateset=gs)
    rng = np.random.default_rng(4)
    for _ in range(10):
        step = ensembles.sample_step(arch, rng).entries
        assert any(np.array_equal(step, g) for g in gs.gates)


def test_sample_step_rejects_continuous():
    arch = CircuitArchitecture(kind="slh", n=2, q=2, graph=[(0, 1)])
    with pytest.raises(ArchitectureError):
        ensembles.sample_step(arch, np.random.default_rng(0))


def test_step_matrices_gateset_slices_are_embedded_gates():
    gs = builtin_gateset("ht_cnot")
    arch = CircuitArchitecture(kind="grqc_gateset", n=3, q=2,
                               graph=chain_edges(3), gateset=gs)
    rng = np.random.default_rng(9)
    steps = ensembles.step_matrices(arch, 20, rng)
    embedded = [ensembles.embed_gate(g, 3, 2, e)
                for e in arch.graph for g in gs.gates]
    for s in steps:
        assert any(np.array_equal(s, e) for e in embedded)


def test_step_matrices_haar_acts_trivially_off_edge():
    # n=3 chain: every step leaves one site untouched, so the step commutes
    # with a single-site operator there
    arch = CircuitArchitecture(kind="rqc1d", n=3, q=2)
    rng = np.random.default_rng(12)
    steps = ensembles.step_matrices(arch, 40, rng)
    z = np.diag([1.0, -1.0]).astype(complex)
    z0 = ensembles.embed_gate(z, 3, 2, (0,))
    z2 = ensembles.embed_gate(z, 3, 2, (2,))
    for s in steps:
        comm0 = np.max(np.abs(s @ z0 - z0 @ s))
        comm2 = np.max(np.abs(s @ z2 - z2 @ s))
        assert min(comm0, comm2) < 1e-12


def test_step_matrices_deterministic_under_substream():
    arch = CircuitArchitecture(kind="rqc1d", n=2, q=2)
    a = ensembles.step_matrices(arch, 5, seeding.substream(99, "walk"))
    b = ensembles.step_matrices(arch, 5, seeding.substream(99, "walk"))
    assert np.array_equal(a, b)


def test_walk_endpoint_matrices_identity_at_t0():
    arch = CircuitArchitecture(kind="rqc1d", n=2, q=2)
    rng = np.random.default_rng(1)
    ends = ensembles.walk_endpoint_matrices(arch, 0, 7, rng)
    assert ends.shape == (7, 4, 4)
    assert np.array_equal(ends, np.broadcast_to(np.eye(4), (7, 4, 4)))
    ends = ensembles.walk_endpoint_matrices(arch, 5, 7, rng)
    gram = np.einsum("nba,nbc->nac", ends.conj(), ends)
    assert np.max(np.abs(gram - np.eye(4))) < 1e-12


# ---------------------------------------------------------------------------
# Walk traces

def test_walk_summary_trace():
    arch = CircuitArchitecture(kind="grqc_gateset", n=1, q=2,
                               gateset=builtin_gateset("ht"))
    trace = ensembles.walk(arch, 20, np.random.default_rng(8))
    assert np.array_equal(trace.times, np.arange(21))
    assert trace.dist_to_id[0] == 0.0
    assert trace.unitaries is None and trace.complexity is None


def test_walk_full_record_matches_distances():
    arch = CircuitArchitecture(kind="rqc1d", n=2, q=2)
    trace = ensembles.walk(arch, 10, np.random.default_rng(2), record="full")
    assert len(trace.unitaries) == 11
    for u, d in zip(trace.unitaries, trace.dist_to_id):
        assert qmath.distance_unitary(u, np.eye(4)) == pytest.approx(d, abs=1e-7)


def test_walk_complexity_hook():
    arch = CircuitArchitecture(kind="grqc_gateset", n=1, q=2,
                               gateset=builtin_gateset("ht"))
    seen = []

    def fn(mat, eps):
        seen.append(eps)
        return 0 if qmath.distance_unitary(mat, np.eye(2)) <= eps else None

    trace = ensembles.walk(arch, 5, np.random.default_rng(3), eps_list=(0.3, 0.5),
                           complexity_fn=fn)
    assert set(trace.complexity) == {0.3, 0.5}
    assert len(trace.complexity[0.3]) == 6
    assert trace.complexity[0.3][0] == 0  # starts at the identity
    assert set(seen) == {0.3, 0.5}


def test_walk_full_record_dimension_cap():
    arch = CircuitArchitecture(kind="rqc1d", n=7, q=2)
    with pytest.raises(ValueError, match="capped"):
        ensembles.walk(arch, 1, np.random.default_rng(0), record="full")
    with pytest.raises(ValueError, match="record must be"):
        ensembles.walk(arch, 1, np.random.default_rng(0), record="verbose")


def test_walk_trace_validation():
    arch = CircuitArchitecture(kind="rqc1d", n=2, q=2)
    with pytest.raises(ValueError, match="strictly increasing"):
        ensembles.WalkTrace(arch=arch, times=np.array([0.0, 0.0]),
                            dist_to_id=np.array([0.0, 0.1]))
    with pytest.raises(ValueError, match="starts at the identity"):
        ensembles.WalkTrace(arch=arch, times=np.array([0.0, 1.0]),
                            dist_to_id=np.array([0.5, 0.1]))


def test_trace_csv_rows_sentinel():
    arch = CircuitArchitecture(kind="grqc_gateset", n=1, q=2,
                               gateset=builtin_gateset("ht"))
    trace = ensembles.walk(arch, 3, np.random.default_rng(5), eps_list=(0.25,),
                           complexity_fn=lambda m, e: None)
    rows = ensembles.trace_csv_rows(trace)
    assert rows[0]["t"] == 0.0
    assert all(r["complexity_eps_0.25"] == "exceeds r_max" for r in rows)


# ---------------------------------------------------------------------------
# Continuous model

def test_slh_step_matrices_are_unitary():
    arch = CircuitArchitecture(kind="slh", n=2, q=2, graph=[(0, 1)])
    rng = np.random.default_rng(21)
    steps = ensembles.slh_step_matrices(arch, 50, rng)
    gram = np.einsum("nba,nbc->nac", steps.conj(), steps)
    assert np.max(np.abs(gram - np.eye(4))) < 1e-12


def test_slh_step_composes_on_state():
    arch = CircuitArchitecture(kind="slh", n=2, q=2, graph=[(0, 1)])
    rng = np.random.default_rng(22)
    u = qmath.Unitary(np.eye(4, dtype=complex))
    for _ in range(5):
        u = ensembles.slh_step(arch, u, rng)
    assert qmath.spectral_norm(u.entries.conj().T @ u.entries - np.eye(4)) < 1e-12


@pytest.mark.parametrize("n,edges", [(2, [(0, 1)]), (3, chain_edges(3))])
def test_slh_single_step_drift_tracks_edge_count(n, edges):
    # E[tr(exp(iH dt))]/d = 1 - m dt / 2 + O(dt^2) with m the edge count;
    # this pins the increment normalization (per-edge Casimir = identity)
    dt = 1e-3
    arch = CircuitArchitecture(kind="slh", n=n, q=2, graph=edges, slh_dt=dt)
    rng = np.random.default_rng(23)
    m = len(edges)
    steps = ensembles.slh_step_matrices(arch, 20_000, rng)
    traces = np.einsum("naa->n", steps).real / arch.d
    drift = (np.mean(traces) - 1.0) / dt
    assert drift == pytest.approx(-0.5 * m, rel=0.05)


def test_slh_paths_shape_and_grid():
    arch = CircuitArchitecture(kind="slh", n=2, q=2, graph=[(0, 1)], slh_dt=0.01)
    rng = np.random.default_rng(24)
    times, dists = ensembles.slh_paths(arch, 0.1, 30, rng)
    assert times.shape == (11,) and dists.shape == (30, 11)
    assert np.allclose(np.diff(times), 0.01)
    assert np.all(dists[:, 0] == 0.0)
    _, _, finals = ensembles.slh_paths(arch, 0.05, 4, rng, return_final=True)
    assert finals.shape == (4, 4, 4)


def test_slh_distance_grows_diffusively():
    # E[D^2] scales linearly in t at short times
    arch = CircuitArchitecture(kind="slh", n=2, q=2, graph=[(0, 1)], slh_dt=2e-3)
    rng = np.random.default_rng(25)
    times, dists = ensembles.slh_paths(arch, 0.05, 400, rng)
    i1 = np.searchsorted(times, 0.01)
    i2 = np.searchsorted(times, 0.04)
    r1 = np.mean(dists[:, i1] ** 2) / times[i1]
    r2 = np.mean(dists[:, i2] ** 2) / times[i2]
    assert 0.5 < r1 / r2 < 2.0


def test_walk_on_continuous_architecture_uses_dt_grid():
    arch = CircuitArchitecture(kind="slh", n=2, q=2, graph=[(0, 1)], slh_dt=0.05)
    trace = ensembles.walk(arch, 0.2, np.random.default_rng(26))
    assert np.allclose(trace.times, [0.0, 0.05, 0.1, 0.15, 0.2])


def test_slh_rejects_discrete_entry_points():
    arch = CircuitArchitecture(kind="slh", n=2, q=2, graph=[(0, 1)])
    rng = np.random.default_rng(27)
    with pytest.raises(ArchitectureError):
        ensembles.walk_endpoint_matrices(arch, 3, 5, rng)
    disc = CircuitArchitecture(kind="rqc1d", n=2, q=2)
    with pytest.raises(ArchitectureError):
        ensembles.slh_paths(disc, 0.1, 5, rng)
    with pytest.raises(ArchitectureError):
        ensembles.slh_step_matrices(disc, 5, rng)
