"""Periodic sampled signals and their polar Fourier representation.

A :class:`Signal` holds exactly one period of a real function sampled at
``x_n = 2*pi*n/N``.  :func:`dft_polar` expresses it as

    f(x_n) = dc + sum_k m_k cos(k x_n + theta_k) + nyquist * cos(N/2 x_n)

with ``m_k >= 0`` and ``theta_k`` in ``[0, 2*pi)``, i.e. a unit cosine has
``m_k == 1``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import BinOverflow, LengthMismatch, NonFiniteSample, OddLength, TooShort

TWO_PI = 2.0 * np.pi

# Bins whose modulus is below this fraction of the signal RMS get phase 0.
PHASE_ZERO_REL = 1e-12


def wrap_phase(phase):
    """Wrap phase(s) into ``[0, 2*pi)``."""
    wrapped = np.mod(phase, TWO_PI)
    # np.mod can return exactly 2*pi for tiny negative inputs
    wrapped = np.where(wrapped >= TWO_PI, 0.0, wrapped)
    if np.ndim(wrapped) == 0:
        return float(wrapped)
    return wrapped


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Signal:
    """One period of a uniformly sampled real signal (N even, N >= 4)."""

    samples: np.ndarray

    # numpy operands defer to the operators below instead of broadcasting
    __array_ufunc__ = None

    def __post_init__(self):
        object.__setattr__(self, "samples", _frozen(self.samples))

    @property
    def N(self) -> int:
        return self.samples.shape[0]

    @property
    def x(self) -> np.ndarray:
        """Sample abscissae ``2*pi*n/N``."""
        return TWO_PI * np.arange(self.N) / self.N

    def __len__(self):
        return self.N

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.samples, dtype=dtype)

    def _other(self, other):
        if isinstance(other, Signal):
            if other.N != self.N:
                raise LengthMismatch(f"signal lengths differ: {self.N} != {other.N}")
            return other.samples
        return other

    def __add__(self, other):
        return Signal(self.samples + self._other(other))

    __radd__ = __add__

    def __sub__(self, other):
        return Signal(self.samples - self._other(other))

    def __rsub__(self, other):
        return Signal(self._other(other) - self.samples)

    def __mul__(self, scalar):
        return Signal(self.samples * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return Signal(-self.samples)

    def __repr__(self):
        return f"Signal(N={self.N})"


@dataclass(frozen=True, eq=False)
class FourierPolar:
    """Polar Fourier coefficients of a :class:`Signal`.

    ``moduli[k-1]`` and ``phases[k-1]`` describe bin ``k`` for
    ``1 <= k < N/2``.  The Nyquist bin is a signed real amplitude.
    """

    dc: float
    moduli: np.ndarray
    phases: np.ndarray
    nyquist: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "dc", float(self.dc))
        object.__setattr__(self, "nyquist", float(self.nyquist))
        object.__setattr__(self, "moduli", _frozen(self.moduli))
        object.__setattr__(self, "phases", _frozen(self.phases))
        if self.moduli.shape != self.phases.shape:
            raise LengthMismatch("moduli and phases must have the same length")

    @property
    def bins(self):
        """List of ``(k, modulus, phase)`` tuples."""
        return [(k + 1, float(m), float(p)) for k, (m, p) in enumerate(zip(self.moduli, self.phases))]


def from_samples(values) -> Signal:
    """Validate ``values`` and wrap them as a :class:`Signal`."""
    arr = np.asarray(values, dtype=float)
    if arr.ndim != 1:
        raise ValueError("a signal must be one-dimensional")
    if arr.shape[0] % 2:
        raise OddLength(f"signal length must be even, got {arr.shape[0]}")
    if arr.shape[0] < 4:
        raise TooShort(f"signal needs at least 4 samples, got {arr.shape[0]}")
    if not np.all(np.isfinite(arr)):
        raise NonFiniteSample("signal contains NaN or infinite samples")
    return Signal(arr)


def sample_function(func, N: int) -> Signal:
    """Evaluate ``func`` on the N-point grid of one period."""
    x = TWO_PI * np.arange(N) / N
    return from_samples(func(x))


def rms(s: Signal) -> float:
    return float(np.sqrt(np.mean(np.square(s.samples))))


def rms_diff(a: Signal, b: Signal) -> float:
    if a.N != b.N:
        raise LengthMismatch(f"signal lengths differ: {a.N} != {b.N}")
    return float(np.sqrt(np.mean(np.square(a.samples - b.samples))))


def circular_shift(s: Signal, j: int) -> Signal:
    """Delay ``s`` by ``j`` samples, i.e. by ``x0 = 2*pi*j/N``."""
    return Signal(np.roll(s.samples, int(j) % s.N))


def dft_polar(s: Signal) -> FourierPolar:
    N = s.N
    spectrum = np.fft.rfft(s.samples)
    half = N // 2
    inner = spectrum[1:half]
    moduli = 2.0 * np.abs(inner) / N
    phases = wrap_phase(np.angle(inner))
    phases = np.where(moduli < PHASE_ZERO_REL * rms(s), 0.0, phases)
    return FourierPolar(
        dc=spectrum[0].real / N,
        moduli=moduli,
        phases=phases,
        nyquist=spectrum[half].real / N,
    )


def synth_polar(fp: FourierPolar, N: int) -> Signal:
    """Inverse of :func:`dft_polar` on an N-point grid."""
    half = N // 2
    if len(fp.moduli) > half - 1:
        raise BinOverflow(f"{len(fp.moduli)} bins do not fit under N/2 = {half}")
    spectrum = np.zeros(half + 1, dtype=complex)
    spectrum[0] = fp.dc * N
    count = len(fp.moduli)
    spectrum[1 : count + 1] = 0.5 * N * fp.moduli * np.exp(1j * fp.phases)
    spectrum[half] = fp.nyquist * N
    return Signal(np.fft.irfft(spectrum, n=N))


def bin_polar(samples: np.ndarray, k: int) -> tuple[float, float]:
    """Modulus and phase of a single DFT bin by direct projection, O(N)."""
    N = samples.shape[0]
    grid = (k * np.arange(N)) % N
    value = np.dot(samples, np.exp(-1j * TWO_PI * grid / N))
    return 2.0 * abs(value) / N, wrap_phase(np.angle(value))


def fractional_shift(s: Signal, x0: float) -> Signal:
    """Delay ``s`` by an arbitrary angle ``x0`` using its trigonometric interpolant."""
    fp = dft_polar(s)
    ks = np.arange(1, len(fp.moduli) + 1)
    shifted = FourierPolar(
        fp.dc,
        fp.moduli,
        wrap_phase(fp.phases - ks * x0),
        fp.nyquist * np.cos(s.N // 2 * x0),
    )
    return synth_polar(shifted, s.N)
