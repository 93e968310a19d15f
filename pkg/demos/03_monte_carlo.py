# Sample uniform binary trees (Remy growth) and compare scaled counts with
# the limit constants. The finite-n bias is visible and shrinks like n^-1/2.
import time

from perm132 import asymptotic_constant, exact_moment, pattern_stats, sample_scaled_stats

pats = ["12", "123", "213", "231", "312"]
reps = 5000
for n in (250, 1000, 4000):
    t0 = time.perf_counter()
    st = sample_scaled_stats(n, pats, reps, seed=11)
    print(f"n={n}  ({time.perf_counter() - t0:.1f}s)")
    for p in pats:
        lam = pattern_stats(p).lam
        exact = float(exact_moment({p: 1}, n)) / n ** (lam / 2)
        limit = asymptotic_constant(p).value
        print(f"  {p:>4} mc {st.mean(p):.4f} +- {st.se(p):.4f}  exact_n {exact:.4f}  limit {limit:.4f}")

# same seed, same replicate streams, any thread count
a = sample_scaled_stats(300, ["213"], 200, seed=3, threads=1)
b = sample_scaled_stats(300, ["213"], 200, seed=3, threads=4)
print("thread-invariant:", a.mean("213") == b.mean("213"))
