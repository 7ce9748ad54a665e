"""
A sine wave built from square waves
===================================

Over the square basis a sine has a sparse spectrum: only odd squarefree
frequencies appear, with signs following a Moebius-like pattern.
"""

import numpy as np

import gdt
from gdt import harness

N = 128
f = gdt.sample_function(np.sin, N)
nb = gdt.normalize(gdt.builtin("square", 99))
ps = gdt.analyze(f, nb)

for k in ps.nonzero(1e-9)[:10]:
    print(f"k={k:2d}  M={ps.moduli[k - 1]:.5f}  Phi={ps.phases[k - 1]:.4f}")

# %%
# Keeping the first 21 components already gets close. The leftover error
# comes from the jumps of the square waves, a dual of the Gibbs effect.
rec, err, count = harness.fig3(N)
print(f"21 components: rms error {err:.4e}; {count} components with k <= 55")
