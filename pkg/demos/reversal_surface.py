"""The return-probability landscape P(t1, t2).

A time-reversal experiment is one path through a two-time landscape:
evolve forward for t1, backward for t2, and record the return
probability. The t2 = 0 edge is the survival probability of forward
evolution; the diagonal t2 = t1 is the fidelity between the two
evolutions. An experiment of period T walks up the t1 axis to T/2 and
then climbs in t2; where it peaks is the compensation time.

The script writes the grid to surface.csv in the long (t1, t2, p)
format together with the reference contour level P_LE(T/2), then draws
a coarse text rendering of the landscape. Cells above the contour level
are marked '#'.

Runs in a couple of seconds.
"""

import os

import numpy as np

from echosim.basis import build_basis, diagonalize_reference
from echosim.csvio import write_surface
from echosim.experiment import surface_with_level
from echosim.prepare import PreparationSpec

HBAR = 0.1
PERIOD = 0.4
EPS_EVOL = 0.4
N_GRID = 33
OUT = os.path.join(os.path.dirname(__file__), "out")

basis = build_basis(HBAR, e_cutoff=4.0)
model = diagonalize_reference(basis, e_center=2.2, half_width=0.5,
                              keep_vectors=False)
spec = PreparationSpec(kind="ergodic", epsilon_prep=0.8)

t1, t2, p, level = surface_with_level(model, spec, EPS_EVOL, PERIOD,
                                      n_grid=N_GRID)
os.makedirs(OUT, exist_ok=True)
path = os.path.join(OUT, "surface.csv")
write_surface(path, t1, t2, p, {"level": repr(level), "period": PERIOD,
                                "epsilon_evol": EPS_EVOL})
print(f"wrote {path} ({len(t1)}x{len(t2)} grid)")
print(f"contour level P_LE(T/2) = {level:.6f}\n")

print("t2 down, t1 across; '#' where P(t1, t2) > P_LE(T/2)")
for j in range(len(t2) - 1, -1, -1):
    row = "".join("#" if p[j, i] > level else "." for i in range(len(t1)))
    print(f"t2={t2[j]:5.3f} |{row}|")
half = np.argmin(np.abs(t1 - 0.5 * PERIOD))
print("         " + " " * (half + 1) + "^ t1 = T/2")
print("\nThe experiment follows the left edge up to t1 = T/2 and then")
print("the vertical line above it; the '#' region it re-enters near the")
print("top is the partial echo the compensation time points at.")
