"""CSV readers and writers for signals, bases, spectra and transfer functions.

Every reader skips blank lines and lines starting with ``#``.  Writers emit
numbers with 12 significant digits.
"""
from __future__ import annotations

import csv
import io
from pathlib import Path

import numpy as np

from .basis import Basis, Mode, from_harmonics
from .errors import GDTError
from .signal import Signal, from_samples
from .systems import TransferFunction
from .transform import PolarSpectrum


class FormatError(GDTError):
    """A CSV file does not follow the expected layout."""


def fmt(value) -> str:
    return format(float(value), ".12g")


def _rows(path):
    text = Path(path).read_text()
    comments, rows = [], []
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            comments.append(stripped.lstrip("#").strip())
            continue
        rows.append([cell.strip() for cell in next(csv.reader([stripped]))])
    return comments, rows


def _is_number(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True


def _numeric(rows, path, width):
    if rows and not all(_is_number(c) for c in rows[0]):
        rows = rows[1:]  # header
    out = []
    for row in rows:
        if len(row) != width or not all(_is_number(c) for c in row):
            raise FormatError(f"{path}: expected {width} numeric columns, got {row!r}")
        out.append([float(c) for c in row])
    return np.array(out, dtype=float).reshape(-1, width)


def _header_values(comments):
    """``key=value`` pairs found in comment lines."""
    values = {}
    for c in comments:
        key, sep, val = c.partition("=")
        if sep:
            values[key.strip()] = val.strip()
    return values


def _write(path, header_lines, rows):
    buf = io.StringIO()
    for line in header_lines:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerows(rows)
    Path(path).write_text(buf.getvalue())


# ---- signals ----------------------------------------------------------------

def read_signal(path) -> Signal:
    """Read a one-column ("value") or two-column ("index,value") signal file."""
    _, rows = _rows(path)
    if not rows:
        raise FormatError(f"{path}: no samples")
    width = len(rows[-1])
    if width == 1:
        return from_samples(_numeric(rows, path, 1)[:, 0])
    if width == 2:
        data = _numeric(rows, path, 2)
        if not np.array_equal(data[:, 0], np.arange(len(data))):
            raise FormatError(f"{path}: index column must run 0..N-1 in order")
        return from_samples(data[:, 1])
    raise FormatError(f"{path}: signal files have one or two columns")


def write_signal(path, s: Signal, comments=()):
    rows = [["index", "value"]] + [[str(n), fmt(v)] for n, v in enumerate(s.samples)]
    _write(path, comments, rows)


# ---- bases --------------------------------------------------------------------

def read_basis(path, name: str | None = None) -> Basis:
    """Read "m,amplitude,phase" lines; raises NoFundamental if m = 1 is missing."""
    _, rows = _rows(path)
    data = _numeric(rows, path, 3)
    return from_harmonics([(int(m), a, p) for m, a, p in data], name=name or Path(path).stem)


def write_basis(path, b: Basis):
    rows = [[str(m), fmt(a), fmt(p)] for m, a, p in b.harmonics]
    _write(path, [f"basis={b.name or 'custom'}", "m,amplitude,phase"], rows)


# ---- spectra ------------------------------------------------------------------

def read_spectrum(path) -> PolarSpectrum:
    comments, rows = _rows(path)
    data = _numeric(rows, path, 3)
    if len(data) == 0 or data[0, 0] != 0:
        raise FormatError(f"{path}: first line must be '0,<dc>,0'")
    ks = data[1:, 0].astype(int)
    if np.any(np.diff(ks) <= 0) or (len(ks) and ks[0] < 1):
        raise FormatError(f"{path}: frequencies must be ascending from 1")
    k_max = int(ks[-1]) if len(ks) else 0
    moduli, phases = np.zeros(k_max), np.zeros(k_max)
    moduli[ks - 1] = data[1:, 1]
    phases[ks - 1] = data[1:, 2]
    meta = _header_values(comments)
    return PolarSpectrum(data[0, 1], moduli, phases, meta.get("basis"), Mode.coerce(meta.get("mode", "band_limited")))


def write_spectrum(path, ps: PolarSpectrum, comments=()):
    header = [f"mode={ps.mode.value}", f"basis={ps.basis_label or 'custom'}", *comments]
    rows = [["0", fmt(ps.dc), "0"]] + [[str(k), fmt(m), fmt(p)] for k, m, p in ps.entries]
    _write(path, header, rows)


# ---- transfer functions -----------------------------------------------------

def read_transfer(path, k_max: int | None = None) -> TransferFunction:
    """Read "k,gain" lines (optional "0,dc_gain"); unlisted bins get gain 0."""
    _, rows = _rows(path)
    data = _numeric(rows, path, 2)
    ks = data[:, 0].astype(int)
    dc_gain = 1.0
    if np.any(ks == 0):
        dc_gain = float(data[ks == 0, 1][-1])
    positive = ks > 0
    top = k_max if k_max is not None else int(ks.max(initial=0))
    if np.any(ks[positive] > top) or np.any(ks < 0):
        raise FormatError(f"{path}: gain frequencies must lie in 0..{top}")
    gains = np.zeros(top)
    gains[ks[positive] - 1] = data[positive, 1]
    return TransferFunction(gains, dc_gain)


def write_transfer(path, g: TransferFunction):
    rows = [["0", fmt(g.dc_gain)]] + [[str(k + 1), fmt(v)] for k, v in enumerate(g.gains)]
    _write(path, ["k,gain"], rows)


# ---- reports --------------------------------------------------------------------

def write_reconstruction_report(path, report, N: int):
    header = [f"basis={report.basis_label}", f"mode={report.mode.value}", f"N={N}"]
    rows = [["order", "rms_error"]] + [[str(n), fmt(e)] for n, e in zip(report.orders, report.rms_errors)]
    _write(path, header, rows)


def write_separation_report(directory, report, basis_label: str, mode: Mode, cutoff: int):
    """Write ``kept.csv``, ``residual.csv`` and ``summary.csv`` into ``directory``."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    N = report.kept.N
    header = [f"basis={basis_label}", f"mode={Mode.coerce(mode).value}", f"N={N}", f"cutoff={cutoff}"]
    write_signal(directory / "kept.csv", report.kept, header)
    write_signal(directory / "residual.csv", report.residual, header)
    rows = [["key", "value"], ["kept_rms_error_vs_reference", fmt(report.kept_rms_error_vs_reference)]]
    _write(directory / "summary.csv", header, rows)
