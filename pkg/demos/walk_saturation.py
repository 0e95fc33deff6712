"""A single {H, T} walk and its complexity staircase.

The walk's distance to the identity equilibrates within a few steps, while
its epsilon-complexity climbs one unit per step until the BFS table is
exhausted. The saturation-window scan then checks, over many realizations,
that low-complexity windows are no more frequent than the union bound built
from the ball volume allows.
"""

from pathlib import Path

from complexity_lab import cli, experiments, seeding
from complexity_lab.ensembles import CircuitArchitecture, builtin_gateset

OUT = Path(__file__).resolve().parent / "out" / "walk_saturation"


def main():
    code = cli.main(["walk", "--kind", "grqc_gateset", "--n", "1",
                     "--gateset", "ht", "--t-max", "40", "--record", "full",
                     "--eps", "0.25", "--r-max", "8", "--master-seed", "7",
                     "--output-dir", str(OUT)])
    assert code == 0
    print(f"wrote {OUT / 'trace.csv'} (t, distance, complexity columns)")

    arch = CircuitArchitecture(kind="grqc_gateset", n=1, q=2,
                               gateset=builtin_gateset("ht"))
    rng = seeding.substream(7, "demo-saturation")
    scan = experiments.saturation_window_scan(
        arch, eps=0.25, r=[0, 2, 4, 6], window=(30, 8), rng=rng,
        gateset=builtin_gateset("ht"), n_realizations=150,
        vol_samples=100_000)
    print()
    print(f"{'r':>3} {'window freq':>12} {'union bound':>12} {'violated':>9}")
    for row in scan.rows:
        print(f"{row['r']:>3} {row['time_fraction']:>12.4f} "
              f"{row['bound']:>12.4g} {str(row['violated']):>9}")


if __name__ == "__main__":
    main()
