#!/usr/bin/env python
# The top eigenvalue and its eigenvector as the spike strength crosses 1.
#
# Below theta=1 the top eigenvalue sticks to the bulk edge at 2 and the top
# eigenvector carries O(1/N) of the signal. Above it, lambda_1 -> theta + 1/theta
# and <v_1, u>^2 -> 1 - 1/theta^2.
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from deformed_wigner import laws
from deformed_wigner.ensemble import EnsembleConfig
from deformed_wigner.montecarlo import ExperimentSpec, run_transition_experiment

OUT = os.path.join(os.path.dirname(__file__), "output")
os.makedirs(OUT, exist_ok=True)

thetas = np.round(np.arange(0.25, 3.01, 0.25), 2)
reports = [
    run_transition_experiment(ExperimentSpec(EnsembleConfig(n=400, theta=t, master_seed=7), trials=30))
    for t in thetas
]

print(" theta  mean l1  limit   overlap  limit")
for r in reports:
    print("%6.2f  %7.4f  %5.3f  %7.4f  %5.3f" % (r.theta, r.mean_lambda1, r.reference_lambda1, r.mean_overlap1, r.reference_overlap1))

fine = np.linspace(0.05, 3, 300)
rho = np.where(fine > 1, fine + 1 / fine, 2.0)
sigma2 = np.where(fine > 1, 1 - 1 / np.maximum(fine, 1) ** 2, 0.0)

fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(10, 4))
ax1.plot(thetas, [r.mean_lambda1 for r in reports], "o")
ax1.plot(fine, rho, "k-")
ax1.set_xlabel("theta")
ax1.set_ylabel("top eigenvalue")
ax2.plot(thetas, [r.mean_overlap1 for r in reports], "o")
ax2.plot(fine, sigma2, "k-")
ax2.set_xlabel("theta")
ax2.set_ylabel("<v_1, u>^2")
fig.tight_layout()
fig.savefig(os.path.join(OUT, "phase_transition.png"), dpi=120)

assert laws.transition_constants(2.0).rho == 2.5
