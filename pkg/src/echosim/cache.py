"""Model cache files.

Diagonalizing the well is the expensive step, so models are stored as
.npz archives and reloaded by the experiment commands. Archives are
written with fixed zip timestamps: rebuilding the same configuration
reproduces the cache byte for byte. ``model_hash`` fingerprints the
physical content (spectrum, coupling matrix, metadata) independently of
the container.
"""

from __future__ import annotations

import hashlib
import io
import json
import os
import zipfile

import numpy as np

from .basis import QuantizedModel, build_basis
from .errors import ConfigError

FORMAT_VERSION = 1

_ZIP_EPOCH = (1980, 1, 1, 0, 0, 0)


def model_hash(model):
    """16-hex content fingerprint of a model."""
    h = hashlib.sha256()
    h.update(np.ascontiguousarray(model.energies).tobytes())
    h.update(np.ascontiguousarray(model.b_matrix).tobytes())
    meta = {
        "hbar": float(model.hbar),
        "e_cutoff": float(model.e_cutoff),
        "x_ref": float(model.x_ref),
        "window": [int(model.window[0]), int(model.window[1])],
        "kind": model.kind,
        "parent_hash": model.parent_hash,
        "seed": model.seed,
    }
    h.update(json.dumps(meta, sort_keys=True).encode())
    return h.hexdigest()[:16]


def _write_deterministic_npz(path, arrays):
    with zipfile.ZipFile(path, "w", compression=zipfile.ZIP_DEFLATED) as zf:
        for name in sorted(arrays):
            buf = io.BytesIO()
            np.lib.format.write_array(buf, np.asanyarray(arrays[name]))
            info = zipfile.ZipInfo(name + ".npy", date_time=_ZIP_EPOCH)
            info.compress_type = zipfile.ZIP_DEFLATED
            info.external_attr = 0o600 << 16
            zf.writestr(info, buf.getvalue())


def save_model(path, model):
    meta = {
        "format_version": FORMAT_VERSION,
        "hbar": float(model.hbar),
        "e_cutoff": float(model.e_cutoff),
        "x_ref": float(model.x_ref),
        "window_lo": int(model.window[0]),
        "window_hi": int(model.window[1]),
        "kind": model.kind,
        "parent_hash": model.parent_hash or "",
        "seed": -1 if model.seed is None else int(model.seed),
    }
    arrays = {
        "energies": model.energies,
        "b_matrix": model.b_matrix,
        "meta": np.frombuffer(
            json.dumps(meta, sort_keys=True).encode(), dtype=np.uint8),
    }
    if model.window_vectors is not None:
        arrays["window_vectors"] = model.window_vectors
    _write_deterministic_npz(path, arrays)
    return path


def load_model(path):
    if not os.path.exists(path):
        raise ConfigError(f"model cache {path} does not exist")
    try:
        with np.load(path) as data:
            meta = json.loads(bytes(data["meta"]).decode())
            if meta.get("format_version") != FORMAT_VERSION:
                raise ConfigError(
                    f"cache {path} has format version "
                    f"{meta.get('format_version')}; this build reads "
                    f"{FORMAT_VERSION}"
                )
            energies = data["energies"]
            b_matrix = data["b_matrix"]
            vectors = data["window_vectors"] if "window_vectors" in data else None
    except (OSError, ValueError, KeyError) as exc:
        raise ConfigError(f"cannot load model cache {path}: {exc}") from exc
    basis = build_basis(meta["hbar"], meta["e_cutoff"])
    lo, hi = int(meta["window_lo"]), int(meta["window_hi"])
    seed = meta.get("seed", -1)
    return QuantizedModel(
        energies=energies,
        window=(lo, hi),
        b_matrix=b_matrix,
        hbar=meta["hbar"],
        e_cutoff=meta["e_cutoff"],
        x_ref=meta["x_ref"],
        mean_spacing=float(np.mean(np.diff(energies[lo:hi]))),
        kind=meta["kind"],
        window_vectors=vectors,
        parent_hash=meta.get("parent_hash") or None,
        seed=None if seed < 0 else seed,
        basis=basis,
    )
