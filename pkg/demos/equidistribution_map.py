"""Equidistribution certificates across walk depth.

At each depth t the certifier samples walk endpoints, counts hits in balls
around fixed centers, and compares 99% confidence intervals against the
(alpha, beta)-scaled reference volumes. Depth 1 of the {H, T} walk fails
decisively; by depth 16 the state walk passes the (0.5, 1.5) window at
eps = 0.3. One certificate JSON per depth feeds the pass/fail map figure.
"""

import json
from pathlib import Path

from complexity_lab import cli

OUT = Path(__file__).resolve().parent / "out" / "equidistribution_map"


def main():
    print("{H,T} state walk, eps=0.3, window (0.5, 1.5), 20k samples/depth")
    for t in (1, 2, 4, 8, 16, 32):
        out = OUT / f"t_{t}"
        code = cli.main(["equid-cert", "--kind", "grqc_gateset", "--n", "1",
                         "--gateset", "ht", "--t", str(t), "--eps", "0.3",
                         "--alpha", "0.5", "--beta", "1.5", "--centers", "6",
                         "--samples", "20000", "--master-seed", "7",
                         "--output-dir", str(out)])
        verdict = json.loads(
            (out / "equid_certificate.json").read_text())["verdict"]
        print(f"  t={t:>2}: {verdict} (exit {code})")

    print(f"\ncertificates under {OUT}; exit codes: 0 pass, 2 fail, "
          f"3 inconclusive")


if __name__ == "__main__":
    main()
