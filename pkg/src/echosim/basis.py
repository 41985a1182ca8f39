"""Quantized 2D-well Hamiltonian in a truncated oscillator product basis.

The model is a particle in a two-dimensional well,

    H(Q, P; x) = (P1^2 + P2^2 + Q1^2 + Q2^2) / 2 + x * Q1^2 Q2^2,

quantized with a dimensionless hbar. The reference Hamiltonian E is H at
x_ref = 1 and the coupling B = Q1^2 Q2^2 is the derivative of H with
respect to x, so that H(x_ref + eps) is linearized as E + eps * B. All
dynamics happen inside an energy window of the E spectrum, where B is
expressed in the E eigenbasis and is banded.

The harmonic part is exactly diagonal in the oscillator product basis
with energies hbar * (n1 + n2 + 1); the quartic coupling only connects
states with n_i differences in {0, +-2} per mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, NumericalError

# Full-scale study values, kept as metadata only. Desk-scale runs at
# hbar in [0.04, 0.08] recompute their own analogues; these numbers are
# not reproducible at desk scale and are never asserted quantitatively.
FULL_SCALE_REFERENCE = {
    "hbar": 0.012,
    "energy": 3.0,
    "tau_cl": 1.0,
    "mean_spacing_per_hbar2": 4.3,
    "delta_x_c_per_hbar15": 3.8,
    "lambda_star": 1.3,
}

#: Classical correlation time of the well at E ~ 3 (dimensionless units).
TAU_CL_REFERENCE = 1.0

#: Refuse bases larger than this (guards against accidental huge requests).
MAX_BASIS_STATES = 50_000


@dataclass(frozen=True)
class OscillatorBasis:
    """Truncated product basis |n1, n2> with hbar*(n1+n2+1) <= e_cutoff."""

    hbar: float
    e_cutoff: float
    n_max_per_mode: int
    states: tuple  # ordered (n1, n2) pairs

    def __len__(self):
        return len(self.states)

    def index(self):
        """Dict mapping (n1, n2) -> position in the state list."""
        return {s: i for i, s in enumerate(self.states)}


@dataclass
class QuantizedModel:
    """Windowed eigenrepresentation of the reference Hamiltonian.

    Attributes
    ----------
    energies : ndarray
        Full ascending E spectrum of the truncated basis.
    window : (int, int)
        Half-open index range [lo, hi) of the retained energy window.
    b_matrix : ndarray
        Coupling B in the E eigenbasis, dense within the window.
    hbar, e_cutoff, x_ref : float
        Build parameters.
    mean_spacing : float
        Mean nearest-neighbor spacing inside the window.
    kind : str
        "2DW" or "ERMT".
    window_vectors : ndarray or None
        Eigenvectors of the window levels in the product basis
        (basis_size x window_size), kept when preparations need to
        project product-basis states (coherent wavepackets).
    """

    energies: np.ndarray
    window: tuple
    b_matrix: np.ndarray
    hbar: float
    e_cutoff: float
    x_ref: float
    mean_spacing: float
    kind: str = "2DW"
    window_vectors: np.ndarray | None = None
    parent_hash: str | None = None
    seed: int | None = None
    basis: OscillatorBasis | None = field(default=None, repr=False)

    @property
    def window_energies(self):
        lo, hi = self.window
        return self.energies[lo:hi]

    @property
    def n_window(self):
        lo, hi = self.window
        return hi - lo


@dataclass(frozen=True)
class SpectralDiagnostics:
    """Window statistics of the model: Delta, sigma, delta_x_c, band profile."""

    mean_spacing: float
    sigma: float
    delta_x_c: float
    band_omega: np.ndarray   # bin centers of |E_n - E_m|
    band_profile: np.ndarray  # mean |B_nm|^2 per bin
    bandwidth_99: float       # omega containing 99% of off-diagonal weight
    tau_cl_reference: float = TAU_CL_REFERENCE
    sigma_convention: str = "first_offdiag"


def build_basis(hbar, e_cutoff, max_states=MAX_BASIS_STATES):
    """Enumerate all (n1, n2) with hbar*(n1+n2+1) <= e_cutoff.

    States are ordered lexicographically in (n1+n2, n1), which fixes the
    basis layout deterministically.
    """
    if hbar <= 0:
        raise ConfigError(f"hbar must be positive, got {hbar}")
    if e_cutoff <= 0:
        raise ConfigError(f"e_cutoff must be positive, got {e_cutoff}")
    n_shell_max = int(math.floor(e_cutoff / hbar - 1.0 + 1e-12))
    if n_shell_max < 0:
        raise ConfigError(
            f"e_cutoff={e_cutoff} below the ground-state energy hbar={hbar}"
        )
    count = (n_shell_max + 1) * (n_shell_max + 2) // 2
    if count > max_states:
        raise ConfigError(
            f"basis would have {count} states (> cap {max_states}); "
            f"raise max_states explicitly if intended"
        )
    states = tuple(
        (n1, s - n1) for s in range(n_shell_max + 1) for n1 in range(s + 1)
    )
    return OscillatorBasis(
        hbar=hbar, e_cutoff=e_cutoff, n_max_per_mode=n_shell_max, states=states
    )


def q_squared_elements(n, m, hbar):
    """Matrix element <n|Q^2|m> for a single oscillator mode.

    Nonzero only for m = n (hbar*(n+1/2)) and |n-m| = 2
    ((hbar/2)*sqrt((k+1)(k+2)) with k = min(n, m)).
    """
    if n < 0 or m < 0:
        raise ConfigError("oscillator quantum numbers must be nonnegative")
    if n == m:
        return hbar * (n + 0.5)
    k = min(n, m)
    if abs(n - m) == 2:
        return 0.5 * hbar * math.sqrt((k + 1) * (k + 2))
    return 0.0


def _mode_q2(n_max, hbar):
    q2 = np.zeros((n_max + 1, n_max + 1))
    n = np.arange(n_max + 1)
    q2[n, n] = hbar * (n + 0.5)
    if n_max >= 2:
        v = 0.5 * hbar * np.sqrt((n[:-2] + 1.0) * (n[:-2] + 2.0))
        q2[n[:-2], n[:-2] + 2] = v
        q2[n[:-2] + 2, n[:-2]] = v
    return q2


def build_coupling_matrix(basis):
    """Assemble B = Q1^2 Q2^2 in the product basis (sparse pattern, dense array)."""
    hbar = basis.hbar
    q2 = _mode_q2(basis.n_max_per_mode, hbar)
    idx = basis.index()
    n = len(basis)
    B = np.zeros((n, n))
    for i, (n1, n2) in enumerate(basis.states):
        for d1 in (-2, 0, 2):
            m1 = n1 + d1
            if m1 < 0:
                continue
            for d2 in (-2, 0, 2):
                m2 = n2 + d2
                if m2 < 0:
                    continue
                j = idx.get((m1, m2))
                if j is not None:
                    B[i, j] = q2[n1, m1] * q2[n2, m2]
    return B


def build_hamiltonian_matrix(basis, x):
    """H(x) = harmonic diagonal + x * Q1^2 Q2^2 in the product basis."""
    H = x * build_coupling_matrix(basis)
    diag = basis.hbar * (np.array([n1 + n2 for (n1, n2) in basis.states]) + 1.0)
    H[np.diag_indices_from(H)] += diag
    return H


def select_window(energies, e_center, half_width, edge_margin=0.2):
    """Contiguous index range of levels with |E - e_center| <= half_width.

    The window must stay clear of the truncation-corrupted top of the
    spectrum: it has to end at least ``edge_margin`` of the basis size
    below the last level.
    """
    energies = np.asarray(energies)
    n = len(energies)
    lo = int(np.searchsorted(energies, e_center - half_width, side="left"))
    hi = int(np.searchsorted(energies, e_center + half_width, side="right"))
    if hi <= lo:
        raise ConfigError(
            f"window [{e_center - half_width}, {e_center + half_width}] "
            f"contains no levels"
        )
    guard = int(math.ceil((1.0 - edge_margin) * n))
    if hi > guard:
        e_guard = energies[guard - 1]
        raise ConfigError(
            f"window reaches level {hi} of {n}, inside the truncation "
            f"margin (top {edge_margin:.0%}); raise e_cutoff so that "
            f"{e_center + half_width} stays below {e_guard:.3f}"
        )
    return lo, hi


def diagonalize_reference(basis, x_ref=1.0, e_center=3.0, half_width=0.2,
                          edge_margin=0.2, keep_vectors=False):
    """Diagonalize H(x_ref), returning the windowed model with B in the eigenbasis.

    Parameters
    ----------
    basis : OscillatorBasis
    x_ref : float
        Reference coupling defining E = H(x_ref). The physical runs use 1.
    e_center, half_width : float
        Energy window of retained eigenstates.
    keep_vectors : bool
        Keep the window eigenvectors (needed for wavepacket preparations).

    Returns
    -------
    QuantizedModel
    """
    B = build_coupling_matrix(basis)
    H = x_ref * B
    diag = basis.hbar * (np.array([n1 + n2 for (n1, n2) in basis.states]) + 1.0)
    H[np.diag_indices_from(H)] += diag
    try:
        energies, vectors = np.linalg.eigh(H)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(
            f"eigensolver failed on {H.shape[0]}x{H.shape[0]} matrix "
            f"(|H|_max={np.abs(H).max():.3e}): {exc}"
        ) from exc
    lo, hi = select_window(energies, e_center, half_width, edge_margin)
    vw = np.ascontiguousarray(vectors[:, lo:hi])
    # fix eigenvector sign so the build is bit-deterministic
    flip = np.sign(vw[np.argmax(np.abs(vw), axis=0), np.arange(vw.shape[1])])
    vw *= flip
    bw = vw.T @ (B @ vw)
    bw = 0.5 * (bw + bw.T)
    spacing = float(np.mean(np.diff(energies[lo:hi])))
    return QuantizedModel(
        energies=energies,
        window=(lo, hi),
        b_matrix=bw,
        hbar=basis.hbar,
        e_cutoff=basis.e_cutoff,
        x_ref=x_ref,
        mean_spacing=spacing,
        kind="2DW",
        window_vectors=vw if keep_vectors else None,
        basis=basis,
    )


def spectral_diagnostics(model, sigma_convention="first_offdiag", n_bins=48,
                         min_levels=8):
    """Window statistics: mean spacing, sigma, delta_x_c, band profile.

    sigma conventions
    -----------------
    ``first_offdiag``
        RMS of B_{n,n+1} over the window (default). Measures the typical
        coupling between adjacent levels, the scale that has to compete
        with the mean spacing for levels to mix.
    ``nearest_within_spacing``
        RMS over all pairs with |E_n - E_m| below the mean spacing.
    ``coupled_offdiag``
        RMS of B_{n,n+1} restricted to coupled pairs, excluding the exact
        zeros forced by the discrete symmetries of the well (parity per
        mode and mode exchange leave most adjacent pairs uncoupled).
    """
    ew = model.window_energies
    bw = model.b_matrix
    if len(ew) < min_levels:
        raise ConfigError(
            f"window has {len(ew)} levels; need >= {min_levels} for "
            f"meaningful statistics"
        )
    spacing = float(np.mean(np.diff(ew)))
    off1 = np.diagonal(bw, 1)
    if sigma_convention == "first_offdiag":
        sigma = float(np.sqrt(np.mean(off1 ** 2)))
    elif sigma_convention == "nearest_within_spacing":
        de = np.abs(ew[:, None] - ew[None, :])
        iu = np.triu_indices(len(ew), k=1)
        sel = de[iu] < spacing
        sigma = float(np.sqrt(np.mean(bw[iu][sel] ** 2)))
    elif sigma_convention == "coupled_offdiag":
        cut = 1e-8 * np.abs(off1).max()
        coupled = off1[np.abs(off1) > cut]
        if len(coupled) == 0:
            raise NumericalError("no coupled adjacent pairs in window")
        sigma = float(np.sqrt(np.mean(coupled ** 2)))
    else:
        raise ConfigError(f"unknown sigma convention {sigma_convention!r}")

    # band profile: mean |B_nm|^2 binned by omega = |E_n - E_m|
    iu = np.triu_indices(len(ew), k=1)
    omega = np.abs(ew[iu[0]] - ew[iu[1]])
    b2 = bw[iu] ** 2
    span = float(omega.max())
    edges = np.linspace(0.0, span, n_bins + 1)
    which = np.clip(np.digitize(omega, edges) - 1, 0, n_bins - 1)
    sums = np.bincount(which, weights=b2, minlength=n_bins)
    counts = np.bincount(which, minlength=n_bins)
    profile = np.where(counts > 0, sums / np.maximum(counts, 1), 0.0)
    centers = 0.5 * (edges[:-1] + edges[1:])

    order = np.argsort(omega)
    cum = np.cumsum(b2[order])
    k99 = int(np.searchsorted(cum, 0.99 * cum[-1]))
    bandwidth = float(omega[order][min(k99, len(order) - 1)])

    return SpectralDiagnostics(
        mean_spacing=spacing,
        sigma=sigma,
        delta_x_c=spacing / sigma,
        band_omega=centers,
        band_profile=profile,
        bandwidth_99=bandwidth,
        sigma_convention=sigma_convention,
    )
