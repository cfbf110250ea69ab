#!/usr/bin/env python
# How much of the signal lives in the top c fraction of eigenvectors?
#
# Below the transition the signal is spread over the whole spectrum, but
# unevenly: the sum of <v_i, u>^2 over the top cN eigenvectors converges to
# P(theta; c) = integral over [m(c), 2] of p(x; theta) d(mu_sc), which is >= c.
import numpy as np

from deformed_wigner import laws
from deformed_wigner.ensemble import EnsembleConfig
from deformed_wigner.montecarlo import ExperimentSpec, run_energy_experiment

c_grid = (0.1, 0.25, 0.5, 0.75, 0.9)

for theta in (0.0, 0.3, 0.5, 0.8):
    spec = ExperimentSpec(EnsembleConfig(n=400, theta=theta, master_seed=3), trials=50, c_grid=c_grid)
    print("theta = %.1f" % theta)
    print("     c   threshold m   empirical   P(theta; c)")
    for row in run_energy_experiment(spec):
        print("  %4.2f   %11.4f   %9.4f   %11.4f" % (row.c, laws.threshold_m(row.c), row.mean, row.reference))
    print()

# P(theta; 1) is 1 for every theta: the law integrates to one against the semicircle
print("P(0.9; 1) =", laws.energy_functional(0.9, 1.0))
print("P grid monotone in theta:", np.all(np.diff([laws.energy_functional(t, 0.5) for t in (0.1, 0.4, 0.7)]) > 0))
