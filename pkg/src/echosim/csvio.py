"""CSV serialization with reproducibility headers.

Every file starts with comment lines of the form ``# key=value``
carrying at least the config hash and code version, followed by a
regular CSV header and rows. Floats are written with a fixed general
format so identical inputs produce identical bytes.
"""

from __future__ import annotations

import csv
import math

from .errors import ConfigError

FLOAT_FORMAT = "%.12g"

RESULT_FIELDS = (
    "model", "hbar", "kind", "epsilon_prep", "epsilon_evol", "lambda",
    "T", "t_r", "t_r_over_T", "p_max", "gamma_sr", "gamma_le", "n_seeds",
    "error",
)

SCALING_FIELDS = ("lambda_bin", "f_mean", "f_std", "n")

SURFACE_FIELDS = ("t1", "t2", "p")


def format_value(x):
    if isinstance(x, bool):
        return "1" if x else "0"
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        if math.isinf(x):
            return "inf" if x > 0 else "-inf"
        return FLOAT_FORMAT % x
    return str(x)


def write_table(path, fieldnames, rows, meta):
    """Write rows (sequences or dicts) with a ``# key=value`` preamble."""
    with open(path, "w", newline="") as f:
        for key in sorted(meta):
            f.write(f"# {key}={meta[key]}\n")
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(fieldnames)
        for row in rows:
            if isinstance(row, dict):
                row = [row[k] for k in fieldnames]
            writer.writerow([format_value(v) for v in row])


def read_table(path):
    """Inverse of write_table: returns (meta dict, list of row dicts)."""
    meta = {}
    try:
        f = open(path, newline="")
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc}") from exc
    with f:
        pos = f.tell()
        line = f.readline()
        while line.startswith("#"):
            body = line[1:].strip()
            if "=" in body:
                key, _, value = body.partition("=")
                meta[key.strip()] = value.strip()
            pos = f.tell()
            line = f.readline()
        f.seek(pos)
        reader = csv.DictReader(f)
        rows = list(reader)
    return meta, rows


def record_to_row(record):
    """Map an ExperimentRecord onto the results schema."""
    return (
        record.model_id, record.hbar, record.prep_kind,
        record.epsilon_prep, record.epsilon_evol, record.lambda_value,
        record.period, record.t_r, record.t_r_over_T, record.p_max,
        record.gamma_sr, record.gamma_le, record.n_realizations,
        record.error,
    )


def write_results(path, records, meta):
    write_table(path, RESULT_FIELDS, [record_to_row(r) for r in records], meta)


def write_scaling(path, curve, meta):
    rows = zip(curve.lambda_values, curve.f_mean, curve.f_std, curve.counts)
    write_table(path, SCALING_FIELDS, rows, meta)


def write_traces(path, traces, meta):
    """Echo traces on a shared grid: time, mean, then one column each."""
    if not traces:
        raise ConfigError("no traces to write")
    times = traces[0].times
    cols = [t.p_values for t in traces]
    mean = sum(cols) / len(cols)
    fields = ["time", "p_mean"] + [f"p_{t.realization}" for t in traces]
    rows = [
        [times[i], mean[i]] + [c[i] for c in cols]
        for i in range(len(times))
    ]
    write_table(path, fields, rows, meta)


def write_surface(path, t1, t2, p, meta):
    rows = (
        (t1[j], t2[i], p[i, j])
        for i in range(len(t2))
        for j in range(len(t1))
    )
    write_table(path, SURFACE_FIELDS, rows, meta)
