# Limit mixed moments of the scaled counts. 213, 231 and 312 have equal
# means for every n, yet their variances differ already at n = 5.
import math

from perm132 import asymptotic_mixed, exact_means, exact_variance, skewness, tmom3_table

for n in range(3, 8):
    m = exact_means(["213", "231", "312"], n)
    print(n, {str(k): str(v) for k, v in m.items()}, exact_variance("213", n), exact_variance("231", n))

for mono in ["12^2", "213^2", "231^2", "213*231", "231*312", "213*312"]:
    print(f"E {mono:8} -> {asymptotic_mixed(mono).format_value()}")

var12 = asymptotic_mixed("12^2").value - math.pi / 4
print("Var of the 12 limit:", var12, "vs (10-3pi)/12 =", (10 - 3 * math.pi) / 12)
print("skewness of 312 limit:", skewness("312"))

# scalar recursion for E Lambda_213^k Lambda_12^l
tab = tmom3_table("beta", 3, 3)
print(tab)
