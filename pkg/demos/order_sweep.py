"""
Partial sums over a generic basis
=================================

A smooth test function is decomposed over a made-up basis with five
harmonics, then rebuilt from the first n components for growing n.
"""

import numpy as np

import gdt
from gdt import harness

f = harness.fig1_signal()
b = harness.fig1_basis()
print(b, "ratio", gdt.convergence_report(b).ratio)

# %%
# The ratio is below one, so the basis converges and the full synthesis
# is exact. Intermediate orders show how fast the error falls.
report = gdt.reconstruct_experiment(f, b, range(0, f.N // 2, 7))
for n, err in zip(report.orders, report.rms_errors):
    print(f"order {n:3d}  rms error {err:.3e}")

# %%
# The coefficients themselves: a handful dominate.
ps = gdt.analyze(f, gdt.normalize(b))
top = np.argsort(-ps.moduli)[:6] + 1
for k in sorted(top):
    print(f"k={k:2d}  M={ps.moduli[k - 1]:.4f}  Phi={ps.phases[k - 1]:.4f}")
