"""Forward/backward evolution and echo traces.

The protocol runs a state forward for t1 under H1 = E + eps*B and then
applies the inverse of the H2 = E - eps*B propagator for t2:

    P(t1, t2) = |<psi| U2(t2)^{-1} U1(t1) |psi>|^2.

Since the propagators are unitary this equals the overlap of the two
forward branches, |<U2(t2) psi | U1(t1) psi>|^2, which is how it is
computed here. The echo trace follows the experiment schedule: forward
until T/2, then the compensating branch for the remaining time,

    P(t) = P(t, 0)           for t <= T/2,
    P(t) = P(T/2, t - T/2)   for t >  T/2.

All propagation is spectral: each Hamiltonian is diagonalized once and
time evolution is a phase rotation in its eigenbasis.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, NumericalError

DEFAULT_N_SAMPLES = 512


def evolve(psi, eigenvalues, eigenvectors, time, hbar, inverse=False):
    """Apply exp(-i H t / hbar) (or its inverse) given H's eigensystem."""
    sign = 1.0 if inverse else -1.0
    a = eigenvectors.conj().T @ psi
    return eigenvectors @ (a * np.exp(sign * 1j * eigenvalues * time / hbar))


class EvolutionPair:
    """Diagonalized pair H1 = E + eps*B, H2 = E - eps*B in the window frame."""

    def __init__(self, model, epsilon_evol):
        if epsilon_evol < 0:
            raise ConfigError("epsilon_evol must be nonnegative")
        self.model = model
        self.epsilon_evol = float(epsilon_evol)
        self.hbar = model.hbar
        ew = model.window_energies
        try:
            self.w1, self.v1 = np.linalg.eigh(np.diag(ew) + epsilon_evol * model.b_matrix)
            self.w2, self.v2 = np.linalg.eigh(np.diag(ew) - epsilon_evol * model.b_matrix)
        except np.linalg.LinAlgError as exc:
            raise NumericalError(f"evolution eigensolver failed: {exc}") from exc
        self._cross = None

    @property
    def cross_overlap(self):
        """V2^dagger V1, cached; couples the two eigenframes."""
        if self._cross is None:
            self._cross = self.v2.conj().T @ self.v1
        return self._cross

    def forward_1(self, psi, t):
        return evolve(psi, self.w1, self.v1, t, self.hbar)

    def forward_2(self, psi, t):
        return evolve(psi, self.w2, self.v2, t, self.hbar)

    def inverse_2(self, psi, t):
        return evolve(psi, self.w2, self.v2, t, self.hbar, inverse=True)


def return_probability(pair, psi, t1, t2):
    """P(t1, t2) for a single time pair."""
    chi = pair.inverse_2(pair.forward_1(psi, t1), t2)
    amp = np.vdot(psi, chi)
    return float(np.abs(amp) ** 2)


def survival_trace(pair, psi, times):
    """P_SR(t) = P(t, 0): survival probability under H1 alone."""
    a1 = pair.v1.conj().T @ psi
    weights = np.abs(a1) ** 2
    phases = np.exp(-1j * np.outer(np.asarray(times), pair.w1) / pair.hbar)
    amps = phases @ weights
    return np.abs(amps) ** 2


def fidelity_trace(pair, psi, times):
    """P_LE(t) = P(t, t): overlap of the two forward branches at equal times."""
    times = np.asarray(times, dtype=float)
    a1 = pair.v1.conj().T @ psi
    a2 = pair.v2.conj().T @ psi
    u = pair.cross_overlap
    out = np.empty(len(times))
    for i, t in enumerate(times):
        x = a1 * np.exp(-1j * pair.w1 * t / pair.hbar)
        y = a2 * np.exp(-1j * pair.w2 * t / pair.hbar)
        out[i] = np.abs(np.vdot(y, u @ x)) ** 2
    return out


@dataclass
class EchoTrace:
    """Sampled echo probability over one period of the protocol."""

    times: np.ndarray
    p_values: np.ndarray
    period: float
    epsilon_evol: float
    realization: int = 0

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.p_values = np.asarray(self.p_values, dtype=float)
        if self.times.shape != self.p_values.shape:
            raise ConfigError("times and p_values must have equal length")
        if self.times[0] != 0.0:
            raise ConfigError("echo trace must start at t = 0")
        half = 0.5 * self.period
        if not (np.any(np.isclose(self.times, half, rtol=0, atol=1e-12 * self.period))
                and np.isclose(self.times[-1], self.period, rtol=0,
                               atol=1e-12 * self.period)):
            raise ConfigError("echo trace grid must contain T/2 and T exactly")

    @property
    def reversal_index(self):
        return int(np.argmin(np.abs(self.times - 0.5 * self.period)))

    def second_half(self):
        """(times, p) restricted to t >= T/2, where the compensation acts."""
        i = self.reversal_index
        return self.times[i:], self.p_values[i:]


def echo_trace(pair, psi, period, n_samples=DEFAULT_N_SAMPLES, realization=0):
    """Echo probability on an even grid of n_samples steps over [0, T].

    ``n_samples`` must be even so the reversal time T/2 is an exact grid
    point; the grid has n_samples + 1 entries including both endpoints.
    """
    if period <= 0:
        raise ConfigError("echo period must be positive")
    if n_samples < 2 or n_samples % 2 != 0:
        raise ConfigError("n_samples must be even and >= 2")
    times = np.linspace(0.0, period, n_samples + 1)
    half_idx = n_samples // 2
    half = times[half_idx]

    p = np.empty(n_samples + 1)
    p[: half_idx + 1] = survival_trace(pair, psi, times[: half_idx + 1])

    # second branch: overlap of U2(s) psi with the frozen forward state chi
    chi = pair.forward_1(psi, half)
    b = pair.v2.conj().T @ chi
    a2 = pair.v2.conj().T @ psi
    s_times = times[half_idx:] - half
    phases = np.exp(1j * np.outer(s_times, pair.w2) / pair.hbar)
    amps = phases @ (np.conj(a2) * b)
    p[half_idx:] = np.abs(amps) ** 2
    return EchoTrace(times=times, p_values=p, period=float(period),
                     epsilon_evol=pair.epsilon_evol, realization=realization)


def surface(pair, psi, t1_grid, t2_grid):
    """P(t1, t2) on a product grid; rows index t2, columns index t1."""
    t1_grid = np.asarray(t1_grid, dtype=float)
    t2_grid = np.asarray(t2_grid, dtype=float)
    a1 = pair.v1.conj().T @ psi
    a2 = pair.v2.conj().T @ psi
    u = pair.cross_overlap
    x = np.exp(-1j * np.outer(pair.w1, t1_grid) / pair.hbar) * a1[:, None]
    y = np.exp(-1j * np.outer(pair.w2, t2_grid) / pair.hbar) * a2[:, None]
    amps = y.conj().T @ (u @ x)
    return np.abs(amps) ** 2
