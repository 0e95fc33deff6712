"""Tour of the phase-invariant distance.

D(U, V) minimizes ||U - e^{i phi} V|| over the global phase. The minimum is
2 sin(arc/4) where arc is the shortest closed arc containing the eigenphases
of U V^dagger, so the whole metric reduces to sorting phases.
"""

import numpy as np

from complexity_lab import qmath, seeding


def show(label, a, b):
    print(f"D({label}) = {qmath.distance_unitary(a, b):.6f}")


def main():
    ident = np.eye(2, dtype=complex)
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    z = np.diag([1.0, -1.0]).astype(complex)
    t = np.diag([1.0, np.exp(1j * np.pi / 4)])

    print("hand-checkable values")
    show("I, X", ident, x)           # sqrt(2): phases {0, pi}
    show("I, Z", ident, z)           # same spectrum, same distance
    show("I, T", ident, t)           # 2 sin(pi/16)
    show("X, iX", x, 1j * x)         # 0: global phase is invisible
    show("Z, XZX", z, x @ z @ x)     # sqrt(2): conjugation flips the sign

    rng = seeding.substream(7, "demo-metric")
    u = qmath.haar_unitary(3, rng)
    v = qmath.haar_unitary(3, rng)
    w = qmath.haar_unitary(3, rng)

    print()
    print("metric axioms on random d=3 triples")
    duv, dvw, duw = (qmath.distance_unitary(a, b)
                     for a, b in ((u, v), (v, w), (u, w)))
    print(f"D(u,v)={duv:.4f}  D(v,w)={dvw:.4f}  D(u,w)={duw:.4f}")
    print(f"triangle slack D(u,v)+D(v,w)-D(u,w) = {duv + dvw - duw:.4f} (>= 0)")
    print(f"bi-invariance check |D(u,v) - D(wu,wv)| = "
          f"{abs(duv - qmath.distance_unitary(w.entries @ u.entries, w.entries @ v.entries)):.2e}")

    print()
    phases = qmath.eigenphases(u.entries @ v.entries.conj().T)
    arc = qmath.shortest_arc(phases)
    print(f"relative eigenphases {np.round(phases.phases, 4)}")
    print(f"shortest covering arc {arc:.4f}, so D = 2 sin(arc/4) = "
          f"{2 * np.sin(arc / 4):.6f}")


if __name__ == "__main__":
    main()
