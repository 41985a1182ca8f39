"""Initial-state preparations inside the energy window.

All preparations return unit-norm complex vectors indexed by the window
eigenstates of E. Four protocols are supported:

* ``coherent``: minimal-uncertainty Gaussian wavepacket at a phase-space
  point on the energy shell, expanded in the oscillator basis and
  projected onto the window.
* ``random-superposition``: complex Gaussian amplitudes under a Gaussian
  energy envelope of prescribed intensity width.
* ``ergodic``: a seed eigenstate of E evolved under H_prep = E + eps_prep*B
  until its participation ratio saturates ("ergodic-like steady state").
* ``eigenstate``: a bare eigenstate of E (the eps_prep = 0 limit).

Coherent and random-superposition states carry an effective lambda << 1
(no numeric epsilon_prep is fabricated for them); eigenstates carry
lambda = infinity. The ratio lambda = eps_evol/eps_prep is only defined
for ergodic preparations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .basis import TAU_CL_REFERENCE
from .errors import ConfigError, NumericalError

#: Default wavepacket center: symmetry-breaking point with H_cl = 3.
DEFAULT_COHERENT_Q = (1.2, 0.9)

PREPARATION_KINDS = ("coherent", "random-superposition", "ergodic", "eigenstate")


@dataclass(frozen=True)
class PreparationSpec:
    """Serializable description of a preparation protocol.

    ``seed`` enters differently per kind: RNG stream for
    random-superposition, center jitter stream for coherent, and seed
    level selector for ergodic/eigenstate kinds.
    """

    kind: str
    epsilon_prep: float = 0.0
    phase_space_center: tuple | None = None
    energy_width: float | None = None
    center_energy: float | None = None
    prep_time: float = 20.0 * TAU_CL_REFERENCE
    seed: int = 0

    def __post_init__(self):
        if self.kind not in PREPARATION_KINDS:
            raise ConfigError(
                f"unknown preparation kind {self.kind!r}; "
                f"expected one of {PREPARATION_KINDS}"
            )
        if self.epsilon_prep < 0:
            raise ConfigError("epsilon_prep must be nonnegative")
        if self.kind == "random-superposition":
            if self.energy_width is None or self.energy_width <= 0:
                raise ConfigError("random-superposition needs energy_width > 0")


def participation_ratio(psi):
    """PR = 1 / sum |psi_n|^4; the number of levels a state occupies."""
    inten = np.abs(psi) ** 2
    return 1.0 / float(np.sum(inten ** 2))


def classical_energy(q1, q2, p1, p2, x=1.0):
    return 0.5 * (p1 * p1 + p2 * p2 + q1 * q1 + q2 * q2) + x * q1 * q1 * q2 * q2


def solve_momentum(q1, q2, energy=3.0, x=1.0):
    """Momentum magnitude (split equally between modes) putting (q1,q2) on the shell."""
    p_sq = 2.0 * (energy - 0.5 * (q1 * q1 + q2 * q2) - x * q1 * q1 * q2 * q2)
    if p_sq <= 0:
        raise ConfigError(
            f"point Q=({q1}, {q2}) lies above the E={energy} shell; "
            f"no real momentum solves H_cl = {energy}"
        )
    p = math.sqrt(p_sq / 2.0)
    return p, p


def _coherent_mode_coefficients(alpha, n_max):
    """Stable Poisson amplitudes e^{-|a|^2/2} a^n / sqrt(n!) up to n_max."""
    n = np.arange(n_max + 1)
    log_fact = np.concatenate([[0.0], np.cumsum(np.log(np.arange(1, n_max + 1)))])
    mag = np.abs(alpha)
    if mag == 0.0:
        coeff = np.zeros(n_max + 1, dtype=complex)
        coeff[0] = 1.0
        return coeff
    log_mag = -0.5 * mag * mag + n * math.log(mag) - 0.5 * log_fact
    return np.exp(log_mag) * np.exp(1j * n * np.angle(alpha))


def coherent_state(model, center=None, max_window_loss=0.05,
                   max_truncation_loss=1e-6):
    """Wavepacket at phase-space ``center`` = (Q1, Q2, P1, P2), window frame.

    The product coherent state has per-mode parameter
    alpha_i = (Q_i + i P_i) / sqrt(2 hbar). It is expanded over the
    oscillator basis, projected onto the window and renormalized.
    Rejected if the basis truncation loses more than
    ``max_truncation_loss`` of the norm or the window projection more
    than ``max_window_loss``.
    """
    if model.window_vectors is None:
        raise ConfigError(
            "model was built without window eigenvectors; rebuild with "
            "keep_vectors=True to use wavepacket preparations"
        )
    if center is None:
        q1, q2 = DEFAULT_COHERENT_Q
        p1, p2 = solve_momentum(q1, q2)
        center = (q1, q2, p1, p2)
    q1, q2, p1, p2 = center
    basis = model.basis
    hbar = model.hbar
    alpha1 = (q1 + 1j * p1) / math.sqrt(2.0 * hbar)
    alpha2 = (q2 + 1j * p2) / math.sqrt(2.0 * hbar)
    c1 = _coherent_mode_coefficients(alpha1, basis.n_max_per_mode)
    c2 = _coherent_mode_coefficients(alpha2, basis.n_max_per_mode)
    n1_idx = np.array([s[0] for s in basis.states])
    n2_idx = np.array([s[1] for s in basis.states])
    psi_product = c1[n1_idx] * c2[n2_idx]
    trunc_loss = 1.0 - float(np.vdot(psi_product, psi_product).real)
    if trunc_loss > max_truncation_loss:
        raise ConfigError(
            f"coherent state at {center} loses {trunc_loss:.2e} of its norm "
            f"to basis truncation (limit {max_truncation_loss}); raise e_cutoff"
        )
    psi_window = model.window_vectors.T @ psi_product
    capture = float(np.vdot(psi_window, psi_window).real)
    if 1.0 - capture > max_window_loss:
        raise ConfigError(
            f"coherent state at {center} keeps only {capture:.3f} of its "
            f"weight inside the window (loss limit {max_window_loss}); "
            f"widen the window"
        )
    return psi_window / math.sqrt(capture)


def coherent_window_capture(model, center):
    """Window weight of the coherent state at ``center`` (diagnostic)."""
    psi = coherent_state(model, center, max_window_loss=1.0)
    del psi
    # recompute capture without the rejection path
    q1, q2, p1, p2 = center
    basis = model.basis
    c1 = _coherent_mode_coefficients(
        (q1 + 1j * p1) / math.sqrt(2.0 * model.hbar), basis.n_max_per_mode)
    c2 = _coherent_mode_coefficients(
        (q2 + 1j * p2) / math.sqrt(2.0 * model.hbar), basis.n_max_per_mode)
    n1_idx = np.array([s[0] for s in basis.states])
    n2_idx = np.array([s[1] for s in basis.states])
    psi_product = c1[n1_idx] * c2[n2_idx]
    psi_window = model.window_vectors.T @ psi_product
    return float(np.vdot(psi_window, psi_window).real)


def eigenstate_preparation(model, level_index):
    """Unit vector on one window eigenstate (window-relative index)."""
    n = model.n_window
    if not 0 <= level_index < n:
        raise ConfigError(
            f"level_index {level_index} outside window of {n} states"
        )
    psi = np.zeros(n, dtype=complex)
    psi[level_index] = 1.0
    return psi


def ergodic_preparation(model, epsilon_prep, seed_level_index, prep_time=None,
                        checkpoints=10, saturation_ratio=1.2):
    """Evolve a seed eigenstate under H_prep = E + eps_prep*B for prep_time.

    The steady state is certified through the energy-shell width (std of
    E over the time-averaged occupation profile mean_t |psi_n(t)|^2).
    Instantaneous participation keeps fluctuating by O(1) factors below
    the Heisenberg time even after full mixing, while the shell width of
    the occupation average converges once the state has stopped spreading
    in energy.  The width is evaluated at ``checkpoints`` times over the
    last half of the preparation and max/min must stay below
    ``saturation_ratio``.  Seed levels that never form a steady shell
    (regular states embedded in the chaotic spectrum) are rejected.
    """
    if prep_time is None:
        prep_time = 20.0 * TAU_CL_REFERENCE
    if prep_time < 10.0 * TAU_CL_REFERENCE:
        raise ConfigError(
            f"prep_time {prep_time} below 10*tau_cl={10.0 * TAU_CL_REFERENCE}"
        )
    psi0 = eigenstate_preparation(model, seed_level_index)
    if epsilon_prep == 0.0:
        return psi0
    ew = model.window_energies
    h_prep = np.diag(ew) + epsilon_prep * model.b_matrix
    try:
        w, v = np.linalg.eigh(h_prep)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"H_prep eigensolver failed: {exc}") from exc
    a = v.conj().T @ psi0
    n_dense = 8 * checkpoints
    sample_times = np.linspace(0.0, prep_time, n_dense + 1)[1:]
    phases = np.exp(-1j * np.outer(w, sample_times) / model.hbar)
    states = v @ (phases * a[:, None])
    occupation = np.cumsum(np.abs(states) ** 2, axis=1)
    occupation /= np.arange(1, n_dense + 1)
    check_idx = np.linspace(n_dense // 2, n_dense - 1, checkpoints).astype(int)
    rho = occupation[:, check_idx]
    means = ew @ rho
    widths = np.sqrt(np.einsum("nk,nk->k", (ew[:, None] - means) ** 2, rho))
    if widths.max() / widths.min() >= saturation_ratio:
        raise NumericalError(
            f"energy-shell width not saturated after prep_time={prep_time} "
            f"(time-averaged width range {widths.min():.4g}.."
            f"{widths.max():.4g}); increase prep_time or use a different "
            "seed level"
        )
    return v @ (a * np.exp(-1j * w * prep_time / model.hbar))


def random_superposition(model, energy_width, center_energy=None, seed=0):
    """Random state with a Gaussian energy envelope of intensity std ``energy_width``.

    Amplitudes are i.i.d. complex Gaussians times
    exp(-(E_n - center)^2 / (4 width^2)), so the intensity profile is a
    Gaussian of standard deviation ``width`` around the center.
    """
    ew = model.window_energies
    if center_energy is None:
        center_energy = float(0.5 * (ew[0] + ew[-1]))
    support = int(np.sum(np.abs(ew - center_energy) < 2.0 * energy_width))
    if support < 10:
        raise ConfigError(
            f"envelope of width {energy_width} around {center_energy} covers "
            f"only {support} levels; need >= 10"
        )
    rng = np.random.default_rng(seed)
    g = rng.standard_normal(len(ew)) + 1j * rng.standard_normal(len(ew))
    envelope = np.exp(-((ew - center_energy) ** 2) / (4.0 * energy_width ** 2))
    psi = g * envelope
    return psi / np.linalg.norm(psi)


def _seed_level(n_window, realization, band=0.6):
    """Deterministic seed-level placement: distinct levels around the window center."""
    half_band = int(band * n_window) // 2
    if half_band < 1:
        return n_window // 2
    step = max(1, (2 * half_band) // 64)
    offset = (realization * step) % (2 * half_band)
    return n_window // 2 - half_band + offset


def _coherent_realization(model, spec, realization, energy):
    """Coherent wavepacket for one realization: the spec center for
    realization 0, deterministic on-shell jitter around it otherwise.
    Jittered draws are retried until the wavepacket both sits on the
    shell and passes the window-capture contract."""
    if spec.phase_space_center is not None and len(spec.phase_space_center) == 4:
        base = spec.phase_space_center
        if realization == 0:
            return coherent_state(model, tuple(base))
        q1_0, q2_0 = base[0], base[1]
    elif spec.phase_space_center is not None:
        q1_0, q2_0 = spec.phase_space_center
    else:
        q1_0, q2_0 = DEFAULT_COHERENT_Q
    if realization == 0:
        p1, p2 = solve_momentum(q1_0, q2_0, energy)
        return coherent_state(model, (q1_0, q2_0, p1, p2))
    rng = np.random.default_rng([int(spec.seed), int(realization)])
    last_error = None
    for _ in range(32):
        q1 = q1_0 + rng.uniform(-0.06, 0.06)
        q2 = q2_0 + rng.uniform(-0.06, 0.06)
        try:
            p1, p2 = solve_momentum(q1, q2, energy)
            return coherent_state(model, (q1, q2, p1, p2))
        except ConfigError as exc:
            last_error = exc
    raise ConfigError(
        f"could not place a jittered wavepacket near ({q1_0}, {q2_0}) on "
        f"the E={energy} shell: {last_error}"
    )


def prepare_state(model, spec, realization=0):
    """Dispatch a PreparationSpec to the corresponding protocol.

    ``realization`` indexes independent initial conditions: distinct
    seed levels for ergodic/eigenstate kinds, jittered on-shell centers
    for coherent wavepackets, and independent RNG streams for random
    superpositions.
    """
    if spec.kind == "eigenstate":
        return eigenstate_preparation(
            model, _seed_level(model.n_window, spec.seed + realization))
    if spec.kind == "ergodic":
        base = _seed_level(model.n_window, spec.seed + realization)
        last_error = None
        for attempt in range(8):
            level = min(base + attempt, model.n_window - 1)
            try:
                return ergodic_preparation(
                    model, spec.epsilon_prep, level, spec.prep_time)
            except NumericalError as exc:
                # regular states embedded in the chaotic spectrum never
                # form a steady shell; step to the next level
                last_error = exc
        raise last_error
    if spec.kind == "random-superposition":
        return random_superposition(
            model, spec.energy_width, spec.center_energy,
            seed=[int(spec.seed), int(realization)])
    if spec.kind == "coherent":
        ew = model.window_energies
        shell = spec.center_energy
        if shell is None:
            shell = float(0.5 * (ew[0] + ew[-1]))
        return _coherent_realization(model, spec, realization, energy=shell)
    raise ConfigError(f"unknown preparation kind {spec.kind!r}")


def lambda_value(spec, epsilon_evol):
    """Scaling parameter lambda for an experiment; flag values for
    preparations without a numeric epsilon_prep (0 for wavepacket-like
    kinds, infinity for eigenstates)."""
    if spec.kind == "ergodic":
        if spec.epsilon_prep == 0.0:
            return math.inf
        return epsilon_evol / spec.epsilon_prep
    if spec.kind == "eigenstate":
        return math.inf
    return 0.0
