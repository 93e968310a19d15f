# Functionals of a discrete Brownian excursion approximate the joint limit
# of the scaled counts. Psi_12 - 2 Psi_213 - Psi_231 - Psi_312 vanishes per path.
import math

import numpy as np

from perm132 import asymptotic_constant, psi, sample_excursion, sample_psi_stats

e = sample_excursion(2000, seed=1)
print("max height", e.values.max(), "area", e.step * e.values.sum())
vals = {p: psi(p, e) for p in ["12", "213", "231", "312"]}
print(vals, vals["12"] - 2 * vals["213"] - vals["231"] - vals["312"])

# time reversal swaps 231 and 312
r = e.reversed()
print(psi("231", e), psi("312", r))

st = sample_psi_stats(1000, ["12", "123", "213", "231", "312"], 2000, seed=5)
for p in st.patterns:
    print(f"{p:>4} {st.mean(p):.4f} +- {st.se(p):.4f}   limit {asymptotic_constant(p).value:.4f}")
print("E[213*231]", st.covariances["E[213*231]"], "vs 1/20")

sq = np.array([psi("12", sample_excursion(500, 9, r)) for r in range(500)])
print("second moment of Psi_12", (sq**2).mean(), "vs 5/6 =", 5 / 6, "; sqrt(pi)/2 =", math.sqrt(math.pi) / 2)
