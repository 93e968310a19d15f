# Compare expected counts along the inversion-set order on S_4 avoiders.
# Almost every comparable pair is monotone; 3214 below 4213 is not.
from perm132 import asymptotic_constant, avoiders, exact_means, inversion_order_leq

ps = avoiders(4)
pairs = [(a, b) for a in ps for b in ps if a != b and inversion_order_leq(a, b)]
for n in range(4, 10):
    m = exact_means(ps, n)
    bad = [(str(a), str(b), str(m[a]), str(m[b])) for a, b in pairs if m[a] > m[b]]
    print(n, len(pairs), "pairs, violations:", bad)

print("limits:", asymptotic_constant("3214").format_value(), asymptotic_constant("4213").format_value())

# the increasing pattern is always the smallest mean and the decreasing the largest
m = exact_means(ps, 9)
print(min(m, key=m.get), max(m, key=m.get))
