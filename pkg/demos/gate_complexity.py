"""Brute-force epsilon-complexity over the {H, T} gate set.

Enumerates channel classes level by level (phase-aware dedup keeps the
frontier from exploding), then reads off complexities of named gates and the
size of a maximal low-complexity packing.
"""

import numpy as np

from complexity_lab import complexity as cx
from complexity_lab import qmath, seeding
from complexity_lab.ensembles import builtin_gateset

HT = builtin_gateset("ht")


def main():
    enum = cx.enumerate_words(HT, 8)
    sizes = [len(level.representatives) for level in enum.levels]
    print(f"distinct channel classes per word length: {sizes}")
    print(f"(words dropped as phase-duplicates: {enum.dropped})")

    print()
    h, t = HT.gates
    targets = [("I", np.eye(2, dtype=complex)), ("H", h), ("T", t),
               ("S = TT", t @ t), ("HTH", h @ t @ h),
               ("X", np.array([[0, 1], [1, 0]], dtype=complex))]
    for eps in (0.3, 0.1):
        print(f"complexities at eps = {eps}")
        for name, mat in targets:
            res = cx.complexity_unitary(mat, HT, eps, r_max=8)
            val = "> 8 (table exhausted)" if res.value is None else res.value
            wit = "" if not res.witness else f"  witness {res.witness.indices}"
            print(f"  C({name}) = {val}{wit}")

    rng = seeding.substream(7, "demo-packing")
    pack = cx.low_complexity_packing(HT, r=4, eps=0.3, budget=10_000, rng=rng)
    kind = "exhaustive" if pack.exhaustive else "sampled"
    print()
    print(f"maximal 0.3-separated set inside the r<=4 ball: "
          f"{len(pack.packing.centers)} channels ({kind})")


if __name__ == "__main__":
    main()
