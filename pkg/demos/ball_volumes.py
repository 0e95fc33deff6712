"""Ball volumes on state space and the unitary group.

The uniform measure of a radius-eps ball around a pure state has the exact
closed form eps^(2(d-1)). On the unitary group no closed form exists beyond
d=2 (the Weyl CDF), so the library reports sandwich bounds plus Monte Carlo.
This script prints all three side by side.
"""

import numpy as np

from complexity_lab import geometry, seeding


def weyl_cdf_d2(x):
    """P[D(U, I) <= x] for Haar U(2): (u - sin u)/pi with u = 4 asin(x/2)."""
    u = 4.0 * np.arcsin(x / 2.0)
    return (u - np.sin(u)) / np.pi


def main():
    rng = seeding.substream(7, "demo-volumes")

    print("state-space balls: exact law vs 99% Monte Carlo interval")
    print(f"{'d':>3} {'eps':>5} {'exact':>12} {'mc':>12} {'ci':>26}")
    for d in (2, 3, 4):
        for eps in (0.3, 0.5, 0.8):
            exact = geometry.vol_state_ball(d, eps)
            mc = geometry.mc_ball_volume("state", d, eps, 200_000, rng)
            ci = f"[{mc.ci_low:.6f}, {mc.ci_high:.6f}]"
            print(f"{d:>3} {eps:>5.2f} {exact:>12.6f} {mc.estimate:>12.6f} {ci:>26}")

    print()
    print("unitary-group balls at d=2 (exact CDF) and d=4 (two-sided bounds)")
    for eps in (0.3, 0.5, 0.8):
        mc2 = geometry.mc_ball_volume("unitary", 2, eps, 200_000, rng)
        print(f"d=2 eps={eps:.1f}: mc {mc2.estimate:.6f} "
              f"(exact {weyl_cdf_d2(eps):.6f})")
    for eps in (0.3, 0.5):
        bounds = geometry.szarek_bounds(4, eps, clamp=True)
        mc4 = geometry.mc_ball_volume("unitary", 4, eps, 200_000, rng)
        print(f"d=4 eps={eps:.1f}: mc ci_high {mc4.ci_high:.2e}, analytic "
              f"sandwich [{bounds.lower:.3e}, {bounds.upper:.3e}] "
              f"(loose at this scale)")


if __name__ == "__main__":
    main()
