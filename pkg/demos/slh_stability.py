"""The continuous local-Hamiltonian walk: drift and maximal inequality.

Gaussian local increments with Killing-normalized covariance make the mean
trace decay like exp(-m t / 2), m the number of interacting edges. The
stability test checks the maximal inequality: the running deviation of the
distance-to-identity exceeds x with frequency at most 2 d exp(-x^2 / (2ms)).
"""

import numpy as np
from pathlib import Path

from complexity_lab import cli, ensembles, seeding
from complexity_lab.ensembles import CircuitArchitecture

OUT = Path(__file__).resolve().parent / "out" / "slh_stability"


def main():
    arch = CircuitArchitecture(kind="slh", n=2, q=2, graph=[(0, 1)],
                               slh_dt=0.01)
    rng = seeding.substream(7, "demo-slh")
    n_paths, steps = 2_000, 50
    unitaries = np.broadcast_to(np.eye(4, dtype=complex),
                                (n_paths, 4, 4)).copy()
    print("mean trace fidelity vs exp(-t/2) (m = 1 edge)")
    for j in range(1, steps + 1):
        unitaries = ensembles.slh_step_matrices(arch, n_paths, rng) @ unitaries
        if j % 10 == 0:
            t = j * arch.slh_dt
            f = np.mean(np.einsum("naa->n", unitaries).real) / 4.0
            print(f"  t={t:.2f}: {f:.4f} vs {np.exp(-t / 2):.4f}")

    print()
    code = cli.main(["slh-stability", "--n", "2", "--s", "0.5",
                     "--x-grid", "0,0.5,1,1.5,2,2.5,3",
                     "--n-realizations", "4000", "--master-seed", "7",
                     "--output-dir", str(OUT)])
    assert code == 0
    print(f"wrote {OUT / 'slh_stability.csv'} (exceedance vs bound per x)")


if __name__ == "__main__":
    main()
