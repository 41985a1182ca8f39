"""A first time-reversal experiment, end to end.

Quantize a small well, prepare an ergodic state within an energy shell,
evolve it forward under H1 = E + eps*B for half a period, then "reverse"
it by evolving under H2 = E - eps*B for the second half. With eps_evol
= 0 the state rebounds exactly at t = T. With a finite eps_evol the
maximum return probability arrives early, at the compensation time t_r:
the echo is only partial and the best compensation undershoots T.

Runs in about a second.
"""

import numpy as np

from echosim.analysis import find_tr
from echosim.basis import build_basis, diagonalize_reference
from echosim.prepare import PreparationSpec, prepare_state
from echosim.propagate import EvolutionPair, echo_trace

HBAR = 0.1
PERIOD = 0.4
N_SAMPLES = 64

basis = build_basis(HBAR, e_cutoff=4.0)
model = diagonalize_reference(basis, e_center=2.2, half_width=0.5,
                              keep_vectors=False)
print(f"model: {len(basis)} oscillator basis states, "
      f"{model.n_window} levels kept in the energy window")

spec = PreparationSpec(kind="ergodic", epsilon_prep=0.8)
psi = prepare_state(model, spec, realization=0)

for eps_evol in (0.0, 0.24, 1.2):
    pair = EvolutionPair(model, eps_evol)
    trace = echo_trace(pair, psi, PERIOD, N_SAMPLES)
    comp = find_tr(trace)
    lam = eps_evol / spec.epsilon_prep
    print(f"\neps_evol = {eps_evol:4.2f}  (lambda = {lam:.2f})")
    print(f"  t_r = {comp.t_r:.4f}  t_r/T = {comp.t_r_over_T:.4f}  "
          f"P(t_r) = {comp.p_max:.4f}")
    # print the second half of the trace: reversal starts at T/2
    second = slice(N_SAMPLES // 2, None, 4)
    ts = trace.times[second]
    ps = trace.p_values[second]
    print("  t:", " ".join(f"{t:6.3f}" for t in ts))
    print("  P:", " ".join(f"{p:6.3f}" for p in ps))

print("\nWith eps_evol = 0 the rebound is exact (P(T) = 1, t_r = T)."
      "\nA small mismatch moves the peak inward; a strong one pins it"
      "\nat T/2, the moment the reversal begins: no compensation at all.")
