"""The generic discrete transform: residual-peeling analysis and resynthesis.

Given a normalized basis ``S'`` (unit zero-phase cosine fundamental), a
signal is written as

    f(x) = dc + sum_{k=1}^{N/2-1} M_k S'(k x + Phi_k)

Analysis walks k upward.  At each step the k-th Fourier bin of the current
residual is read off directly as ``(M_k, Phi_k)`` and the rendered basis
instance is subtracted; its harmonics land only on bins >= k, so in
band-limited mode bins already visited stay at zero.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import Basis, Mode, NormalizedBasis, render
from .errors import BinOverflow
from .signal import Signal, bin_polar, wrap_phase

# Phases of entries below this fraction of the largest modulus are set to 0.
PHASE_ZERO_REL = 1e-12


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PolarSpectrum:
    """DC term plus ``(M_k, Phi_k)`` for k = 1..K_max (index ``k-1``)."""

    dc: float
    moduli: np.ndarray
    phases: np.ndarray
    basis_label: str | None = None
    mode: Mode = Mode.BAND_LIMITED

    def __post_init__(self):
        object.__setattr__(self, "dc", float(self.dc))
        object.__setattr__(self, "moduli", _frozen(self.moduli))
        object.__setattr__(self, "phases", _frozen(self.phases))
        object.__setattr__(self, "mode", Mode.coerce(self.mode))
        if self.moduli.shape != self.phases.shape:
            raise ValueError("moduli and phases must have the same length")

    @property
    def k_max(self) -> int:
        return len(self.moduli)

    @property
    def entries(self):
        return [(k + 1, float(m), float(p)) for k, (m, p) in enumerate(zip(self.moduli, self.phases))]

    def nonzero(self, rel: float = 1e-12) -> np.ndarray:
        """Frequencies k whose modulus exceeds ``rel`` times the largest one."""
        if self.k_max == 0:
            return np.zeros(0, dtype=int)
        top = self.moduli.max()
        return np.flatnonzero(self.moduli > rel * top) + 1

    def select(self, ks, keep_dc: bool = True) -> "PolarSpectrum":
        """Copy keeping only the entries at frequencies ``ks``."""
        mask = np.zeros(self.k_max, dtype=bool)
        ks = np.asarray(ks, dtype=int)
        mask[ks - 1] = True
        return PolarSpectrum(
            self.dc if keep_dc else 0.0,
            np.where(mask, self.moduli, 0.0),
            np.where(mask, self.phases, 0.0),
            self.basis_label,
            self.mode,
        )

    def band(self, lo: int, hi: int, keep_dc: bool = True) -> "PolarSpectrum":
        """Entries with ``lo <= k <= hi``."""
        return self.select(np.arange(max(lo, 1), min(hi, self.k_max) + 1), keep_dc)


@dataclass(frozen=True, eq=False)
class ResidualProfile:
    """RMS of the residual after 0, 1, ..., K_max peeling steps."""

    norms: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "norms", _frozen(self.norms))

    @property
    def steps(self) -> np.ndarray:
        """Change in residual RMS at each step (positive means growth)."""
        return np.diff(self.norms)

    def is_monotone(self, tol: float = 0.0) -> bool:
        return bool(np.all(self.steps <= tol * self.norms[0]))


def _finish(dc, moduli, phases, nb, mode) -> PolarSpectrum:
    moduli = np.asarray(moduli)
    phases = np.asarray(phases)
    if len(moduli):
        phases = np.where(moduli < PHASE_ZERO_REL * moduli.max(), 0.0, phases)
    return PolarSpectrum(dc, moduli, phases, nb.name, mode)


def peel(f: Signal, nb: NormalizedBasis, mode=Mode.BAND_LIMITED):
    """Yield ``(k, M_k, Phi_k, residual)`` after each subtraction."""
    mode = Mode.coerce(mode)
    residual = f.samples - np.mean(f.samples)
    for k in range(1, f.N // 2):
        modulus, phase = bin_polar(residual, k)
        residual = residual - render(nb, k, phase, modulus, f.N, mode).samples
        yield k, modulus, phase, residual


def analyze(f: Signal, nb: NormalizedBasis, mode=Mode.BAND_LIMITED, method: str = "residual") -> PolarSpectrum:
    """Decompose ``f`` over the normalized basis ``nb``.

    ``method="residual"`` peels a time-domain residual one bin at a time;
    ``method="spectral"`` does the same bookkeeping on the residual's
    half-spectrum without ever leaving the frequency domain.
    """
    mode = Mode.coerce(mode)
    if method == "spectral":
        return _analyze_spectral(f, nb, mode)
    if method != "residual":
        raise ValueError(f"unknown method {method!r}")
    moduli, phases = [], []
    for _, modulus, phase, _ in peel(f, nb, mode):
        moduli.append(modulus)
        phases.append(phase)
    return _finish(np.mean(f.samples), moduli, phases, nb, mode)


def _analyze_spectral(f: Signal, nb: NormalizedBasis, mode: Mode) -> PolarSpectrum:
    N = f.N
    half = N // 2
    spec = np.fft.rfft(f.samples)
    dc = spec[0].real / N
    spec[0] = 0.0
    moduli = np.zeros(half - 1)
    phases = np.zeros(half - 1)
    for k in range(1, half):
        modulus = 2.0 * abs(spec[k]) / N
        phase = wrap_phase(np.angle(spec[k]))
        moduli[k - 1], phases[k - 1] = modulus, phase
        # every basis harmonic m lands on frequency m*k (possibly aliased)
        freqs = (nb.orders * k) % N if mode is Mode.SAMPLED else nb.orders * k
        angles = nb.orders * phase + nb.phases
        amps = modulus * nb.amplitudes
        for q, a, theta in zip(freqs, amps, angles):
            if mode is Mode.BAND_LIMITED and q >= half:
                continue
            if q == 0 or q == half:
                spec[q] -= N * a * np.cos(theta)
            elif q < half:
                spec[q] -= 0.5 * N * a * np.exp(1j * theta)
            else:
                spec[N - q] -= 0.5 * N * a * np.exp(-1j * theta)
    return _finish(dc, moduli, phases, nb, mode)


def synthesize(ps: PolarSpectrum, nb: Basis, N: int, mode=None) -> Signal:
    """Resum ``dc + sum_k M_k S(k x + Phi_k)`` on an N-point grid.

    ``mode`` defaults to the mode the spectrum was analyzed in.
    """
    mode = ps.mode if mode is None else Mode.coerce(mode)
    if ps.k_max > N // 2 - 1:
        raise BinOverflow(f"spectrum has {ps.k_max} entries; N = {N} allows {N // 2 - 1}")
    out = np.full(N, ps.dc)
    for k, modulus, phase in ps.entries:
        if modulus != 0.0:
            out += render(nb, k, phase, modulus, N, mode).samples
    return Signal(out)


def rescale_to_raw(ps: PolarSpectrum, origin) -> PolarSpectrum:
    """Express a spectrum over ``S'`` as one over the raw basis ``S``.

    Since ``S'(y) = S(y - phi_1) / s_1``, each term becomes
    ``(M_k / s_1) S(k x + Phi_k - phi_1)``.
    """
    s1, theta1 = origin
    phases = np.where(ps.moduli > 0, wrap_phase(ps.phases - theta1), 0.0)
    return PolarSpectrum(ps.dc, ps.moduli / s1, phases, ps.basis_label, ps.mode)


def residual_profile(f: Signal, nb: NormalizedBasis, mode=Mode.BAND_LIMITED) -> ResidualProfile:
    mode = Mode.coerce(mode)
    centered = f.samples - np.mean(f.samples)
    norms = [float(np.sqrt(np.mean(centered**2)))]
    for *_, residual in peel(f, nb, mode):
        norms.append(float(np.sqrt(np.mean(residual**2))))
    return ResidualProfile(norms)


def final_residual(f: Signal, nb: NormalizedBasis, mode=Mode.BAND_LIMITED) -> Signal:
    """What is left of ``f`` after a full analysis pass."""
    mode = Mode.coerce(mode)
    residual = f.samples - np.mean(f.samples)
    for *_, residual in peel(f, nb, mode):
        pass
    return Signal(residual)
