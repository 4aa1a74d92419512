"""
The clique number concentrates on two values
============================================

For fixed p the clique number of G(n, p) -- the cohomological dimension of
the group -- sits in [floor(z - eps), floor(z + eps)] with high
probability.  At n = 150 the window is already visible.
"""

from raagrand import ExperimentConfig, matula_window, run_experiment, z_statistic

n, p = 150, 0.5
print(f"z({n}, {p}) = {z_statistic(n, p):.4f}, window {matula_window(n, p, 0.5)}")

report = run_experiment(ExperimentConfig("dimension", n=n, p=p, epsilon=0.5, trials=40, seed=0))
print("clique number histogram:", report.empirical["pmf"])
print("share inside the window:", report.empirical["fractions"]["in_window"])

# The window grows like 2 log_q n
for n in (10**3, 10**4, 10**5, 10**6):
    print(f"  n={n:>8}  z={z_statistic(n, p):7.3f}  window={matula_window(n, p)}")
