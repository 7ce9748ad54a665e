"""Desk-scale experiments: order sweeps, a Haar comparison and noise separation.

Each ``figN_*`` function builds a frozen, seed-free scenario so reports are
bit-reproducible; the CLI ``demo`` subcommand maps onto them one to one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import Basis, Mode, builtin, from_harmonics, normalize, render
from .errors import BadCount, NotPowerOfTwo
from .signal import Signal, circular_shift, from_samples, rms_diff, sample_function
from .transform import analyze, synthesize


@dataclass(frozen=True)
class ReconstructionReport:
    orders: tuple
    rms_errors: tuple
    mode: Mode
    basis_label: str


@dataclass(frozen=True, eq=False)
class SeparationReport:
    kept: Signal
    residual: Signal
    kept_rms_error_vs_reference: float


def reconstruct_experiment(f: Signal, b: Basis, orders, mode=Mode.BAND_LIMITED) -> ReconstructionReport:
    """RMS error of the order-n partial synthesis, for each n in ``orders``."""
    mode = Mode.coerce(mode)
    orders = [int(n) for n in orders]
    k_max = f.N // 2 - 1
    if any(b2 <= a for a, b2 in zip(orders, orders[1:])):
        raise ValueError("orders must be strictly ascending")
    if orders and not (0 <= orders[0] and orders[-1] <= k_max):
        raise ValueError(f"orders must lie in 0..{k_max}")
    nb = normalize(b)
    ps = analyze(f, nb, mode)
    errors = [rms_diff(f, synthesize(ps.band(1, n), nb, f.N, mode)) for n in orders]
    return ReconstructionReport(tuple(orders), tuple(errors), mode, b.name or "custom")


def haar_forward(values) -> np.ndarray:
    """Full orthonormal Haar decomposition: ``[scaling, coarsest detail, ..., finest details]``."""
    out = np.array(values, dtype=float)
    n = len(out)
    while n > 1:
        even, odd = out[0:n:2].copy(), out[1:n:2].copy()
        out[: n // 2] = (even + odd) / np.sqrt(2)
        out[n // 2 : n] = (even - odd) / np.sqrt(2)
        n //= 2
    return out


def haar_inverse(coeffs) -> np.ndarray:
    out = np.array(coeffs, dtype=float)
    n = 1
    while n < len(out):
        approx, detail = out[:n].copy(), out[n : 2 * n].copy()
        out[0 : 2 * n : 2] = (approx + detail) / np.sqrt(2)
        out[1 : 2 * n : 2] = (approx - detail) / np.sqrt(2)
        n *= 2
    return out


def haar_reconstruct(f: Signal, coeff_count: int) -> Signal:
    """Best ``coeff_count``-term Haar approximation (largest magnitudes kept)."""
    N = f.N
    if N & (N - 1):
        raise NotPowerOfTwo(f"Haar decomposition needs a power-of-two length, got {N}")
    if not 1 <= coeff_count <= N:
        raise BadCount(f"coeff_count must be in 1..{N}, got {coeff_count}")
    coeffs = haar_forward(f.samples)
    order = np.argsort(-np.abs(coeffs), kind="stable")
    kept = np.zeros_like(coeffs)
    kept[order[:coeff_count]] = coeffs[order[:coeff_count]]
    return Signal(haar_inverse(kept))


def component_reconstruct(f: Signal, b: Basis, count: int, mode=Mode.BAND_LIMITED, rel: float = 1e-9) -> Signal:
    """Resynthesize ``f`` from its first ``count`` nonzero generic components."""
    nb = normalize(b)
    ps = analyze(f, nb, mode)
    ks = ps.nonzero(rel)[:count]
    return synthesize(ps.select(ks), nb, f.N, mode)


def count_components(f: Signal, b: Basis, k_limit: int | None = None, mode=Mode.BAND_LIMITED,
                     rel: float = 1e-9) -> int:
    ps = analyze(f, normalize(b), mode)
    ks = ps.nonzero(rel)
    if k_limit is not None:
        ks = ks[ks <= k_limit]
    return len(ks)


def noise_separation(f_noisy: Signal, b: Basis, cutoff: int, mode=Mode.BAND_LIMITED,
                     reference: Signal | None = None) -> SeparationReport:
    """Split ``f_noisy`` into generic components ``1..cutoff`` (plus DC) and the rest."""
    k_max = f_noisy.N // 2 - 1
    if not 1 <= cutoff <= k_max:
        raise ValueError(f"cutoff must be in 1..{k_max}, got {cutoff}")
    nb = normalize(b)
    ps = analyze(f_noisy, nb, mode)
    kept = synthesize(ps.band(1, cutoff), nb, f_noisy.N, mode)
    residual = synthesize(ps.band(cutoff + 1, k_max, keep_dc=False), nb, f_noisy.N, mode)
    error = rms_diff(kept, reference) if reference is not None else float("nan")
    return SeparationReport(kept, residual, error)


# ---- frozen scenarios -------------------------------------------------------

FIG1_BASIS = [(1, 1.0, 0.0), (2, 0.45, 1.1), (3, 0.3, 2.5), (4, 0.12, 0.4), (6, 0.08, 4.0)]
FIG1_N = 128
FIG1_ORDERS = (10, 30, FIG1_N // 2 - 1)

FIG3_N = 128
FIG3_COMPONENTS = 21
FIG3_K_LIMIT = 55

FIG5_HAAR_COUNT = 32

FIG6_N = 128
FIG6_SHIFT = 11
FIG6_NOISE_BINS = (9, 14, 19, 23, 28, 33, 37, 41)
FIG6_NOISE_AMPLITUDE = 0.3


def fig1_signal(N: int = FIG1_N) -> Signal:
    """A smooth, asymmetric, Nyquist-free test function."""
    def f(x):
        return np.exp(np.cos(x)) * np.sin(2 * x + 0.3) + 0.4 * np.cos(5 * x - 1.0) + 0.2

    raw = sample_function(f, N).samples
    spectrum = np.fft.rfft(raw)
    spectrum[N // 2] = 0.0
    return from_samples(np.fft.irfft(spectrum, n=N))


def fig1_basis() -> Basis:
    return from_harmonics(FIG1_BASIS, name="generic")


def fig1(N: int = FIG1_N, mode=Mode.BAND_LIMITED) -> ReconstructionReport:
    """Order sweep of a generic function over a generic converging basis."""
    return reconstruct_experiment(fig1_signal(N), fig1_basis(), FIG1_ORDERS, mode)


def fig3(N: int = FIG3_N, mode=Mode.BAND_LIMITED):
    """Sine rebuilt from square waves.

    Returns ``(reconstruction, rms_error, components_up_to_55)``.
    """
    f = sample_function(np.sin, N)
    sq = builtin("square", 99)
    rec = component_reconstruct(f, sq, FIG3_COMPONENTS, mode)
    return rec, rms_diff(rec, f), count_components(f, sq, FIG3_K_LIMIT, mode)


def fig5(N: int = 64) -> dict:
    """RMS errors of 21 square-wave components against 32 Haar coefficients, on a sine."""
    f = sample_function(np.sin, N)
    square = component_reconstruct(f, builtin("square", 99), FIG3_COMPONENTS)
    haar = haar_reconstruct(f, FIG5_HAAR_COUNT)
    return {"N": N, "square_rms": rms_diff(square, f), "haar_rms": rms_diff(haar, f)}


def fig6_scenario(N: int = FIG6_N):
    """Clean band-limited square wave (delayed by FIG6_SHIFT samples) and a noisy copy."""
    nb = normalize(builtin("square", 99))
    clean = circular_shift(render(nb, 1, 0.0, 1.0, N), FIG6_SHIFT)
    x = clean.x
    noise = sum(FIG6_NOISE_AMPLITUDE * np.cos(k * x + 0.7 * k) for k in FIG6_NOISE_BINS)
    return clean, clean + noise


def fig6(N: int = FIG6_N, mode=Mode.BAND_LIMITED) -> SeparationReport:
    clean, noisy = fig6_scenario(N)
    return noise_separation(noisy, builtin("square", 99), 1, mode, reference=clean)
