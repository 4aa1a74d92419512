"""
The second moment of the bi-clique count
========================================

X counts ordered pairs of disjoint r-cliques.  E[X^2] / E[X]^2 splits into
overlap patterns alpha = (a, b, c, d); the pattern weights F sum to one and
the ratio tends to 1, which gives P(X > 0) -> 1.
"""

import math

from raagrand import f0_bound_check, second_moment_ratio, second_moment_terms, z_statistic
from raagrand.asymptotics import second_moment_ratio_exact

# The small case has an exact rational value
print("n=8, r=2:", second_moment_ratio_exact(8, 0.5, 2)[0], second_moment_ratio(8, 0.5, 2).ratio)

# The largest terms at n = 10^4 and the no-overlap weight
n, p = 10**4, 0.5
r = math.floor(z_statistic(n, p) - 0.25)
terms = sorted(second_moment_terms(n, p, r), key=lambda t: -t.logT)
for t in terms[:5]:
    print(f"  alpha={t.alpha}  L={t.L:>3}  T={math.exp(t.logT):.3e}")
print("F0 and its lower bound:", f0_bound_check(n, r)[:2])

# The trend towards 1
for n in (10**3, 10**4, 10**5, 10**6):
    r = math.floor(z_statistic(n, p) - 0.25)
    print(f"  n={n:>8}  r={r}  ratio={second_moment_ratio(n, p, r).ratio:.7f}")
