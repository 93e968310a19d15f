# Expected pattern counts in a uniform 132-avoider: the Laurent polynomial
# in 1/delta, the finite-n means it generates, and the n -> oo constant.
from perm132 import asymptotic_constant, avoiders, catalan, ed_expectation, exact_means, gf_from_ed

for sigma in ["12", "21", "123", "213", "231", "312", "321"]:
    ed = ed_expectation(sigma)
    c = asymptotic_constant(sigma)
    print(f"{sigma:>4}  E_delta = {ed}")
    print(f"      mean ~ {c.format_value()}  ({c.value:.6f})")

# the series route and brute-force enumeration agree exactly
n = 8
pats = avoiders(4)
means = exact_means(pats, n)
for p in pats:
    via_series = gf_from_ed(ed_expectation(p), n + 1)[n] / catalan(n)
    assert via_series == means[p]
print(f"all {len(pats)} length-4 avoiders agree at n={n}")

# patterns with the same number of descents share the growth exponent,
# but not the constant
for p in pats:
    print(p, asymptotic_constant(p).format_value())
