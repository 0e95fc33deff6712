"""The closed-form bound calculators at a glance.

These are arithmetic transcriptions of the analytic depth, threshold and
recurrence-window bounds. They never touch simulation data; the point of
printing them is to see how astronomically conservative the constants are
at desk scales.
"""

from complexity_lab import moments


def main():
    print("design-gap depths")
    for n in (2, 4):
        bag = moments.BoundInputs(n=n, q=2, delta=1e-3)
        print(f"  n={n}: rqc1d {moments.design_depth_formulas(bag, 'gap_rqc'):.3e}, "
              f"slh {moments.design_depth_formulas(bag, 'gap_slh'):.3e}")

    print("\nk-design depths (n=10 qubits)")
    for k in (2, 3):
        bag = moments.BoundInputs(n=10, q=2, k=k, delta=1e-3)
        print(f"  k={k}: {moments.design_depth_formulas(bag, 'designs_k'):.3e}")

    print("\nequidistribution times at eps=0.1, gamma=0.5 (n=2 qubits)")
    bag = moments.BoundInputs(n=2, q=2, eps=0.1, gamma=0.5)
    for model in ("rqc1d", "slh", "grqc"):
        vals = moments.equid_time_bounds(bag, model)
        tau_s = "n/a" if vals["tau_S"] is None else f"{vals['tau_S']:.3e}"
        print(f"  {model}: tau {vals['tau']:.3e}, tau_S {tau_s}")

    print("\nrecurrence window for a single-qubit gate-set walk")
    bag = moments.BoundInputs(n=1, q=2, eps=1e-3, alpha=0.9, beta=1.1,
                              delta1=0.1, delta2=0.1, r1=3, r2=0.0,
                              gateset_size=2, tau=1e6, tau_s=1e5,
                              tau_slh=2e6, m=1)
    win = moments.design_depth_formulas(bag, "recurrence_T1_T2")
    print(f"  unitary:  T1 {win['T1']:.3e} <= T_rec <= T2 {win['T2']:.3e}")
    print(f"  state:    T1 {win['T1_state']:.3e} <= T_rec <= "
          f"T2 {win['T2_state']:.3e}")

    print("\ncomplexity saturation thresholds (d=2, eps=1e-4)")
    thr = moments.design_depth_formulas(
        moments.BoundInputs(n=1, q=2, eps=1e-4, beta=1.1, delta=0.1,
                            gateset_size=2), "complexity_threshold_r")
    print(f"  r* unitary {thr['unitary']:.2f}, r* state {thr['state']:.2f}")


if __name__ == "__main__":
    main()
