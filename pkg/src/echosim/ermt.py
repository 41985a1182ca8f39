"""Effective random-matrix counterpart of the physical model.

The surrogate keeps the exact spectrum and the exact magnitudes |B_nm|
of the physical coupling and randomizes only the signs of the
off-diagonal elements. Everything that depends on |B_nm| and the
energies alone (mean spacing, sigma, delta_x_c, band profile) is
preserved element for element, so any difference in echo behavior
isolates the role of correlations between matrix-element signs.
"""

from __future__ import annotations

import numpy as np

from .basis import QuantizedModel
from .cache import model_hash
from .errors import ConfigError


def randomize_signs(model, seed):
    """Return an ERMT copy of ``model`` with sign-randomized off-diagonals.

    Signs are drawn i.i.d. fair for the strict upper triangle and
    mirrored; the diagonal is untouched (it carries the LDOS centroid).
    Deterministic for a fixed seed.
    """
    if model.kind != "2DW":
        raise ConfigError(f"expected a physical model, got kind={model.kind!r}")
    n = model.b_matrix.shape[0]
    rng = np.random.default_rng(seed)
    signs = np.where(rng.random((n, n)) < 0.5, -1.0, 1.0)
    upper = np.triu(signs, k=1)
    signs = upper + upper.T + np.eye(n)
    return QuantizedModel(
        energies=model.energies.copy(),
        window=model.window,
        b_matrix=model.b_matrix * signs,
        hbar=model.hbar,
        e_cutoff=model.e_cutoff,
        x_ref=model.x_ref,
        mean_spacing=model.mean_spacing,
        kind="ERMT",
        window_vectors=(None if model.window_vectors is None
                        else model.window_vectors.copy()),
        parent_hash=model_hash(model),
        seed=int(seed),
        basis=model.basis,
    )
