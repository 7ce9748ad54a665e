"""Basis functions described by their harmonic series.

A basis ``S(x) = sum_m s_m cos(m x + phi_m)`` is stored as three parallel
arrays (orders, amplitudes, phases).  Analysis always works with the
normalized form ``S'(x) = S(x - phi_1) / s_1`` whose fundamental is a unit,
zero-phase cosine.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DuplicateHarmonic, FrequencyOutOfRange, NoFundamental, UnknownName
from .signal import TWO_PI, Signal, dft_polar, rms, wrap_phase

# from_signal drops harmonics below this fraction of the fundamental.
DROP_REL = 1e-12


class Mode(str, enum.Enum):
    """How basis instances are rendered on the sample grid."""

    BAND_LIMITED = "band_limited"
    SAMPLED = "sampled"

    @classmethod
    def coerce(cls, value) -> "Mode":
        if isinstance(value, cls):
            return value
        return cls(str(value).replace("-", "_").lower())


class Classification(str, enum.Enum):
    ORTHOGONAL = "Orthogonal"
    CONVERGING = "Converging"
    NOT_CONVERGING = "NotConverging"


def _frozen(values, dtype=float) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class Basis:
    orders: np.ndarray
    amplitudes: np.ndarray
    phases: np.ndarray
    name: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "orders", _frozen(self.orders, int))
        object.__setattr__(self, "amplitudes", _frozen(self.amplitudes))
        object.__setattr__(self, "phases", _frozen(self.phases))

    @property
    def harmonics(self):
        return [(int(m), float(a), float(p)) for m, a, p in zip(self.orders, self.amplitudes, self.phases)]

    @property
    def fundamental(self) -> tuple[float, float]:
        """Amplitude and phase of the m = 1 harmonic."""
        return float(self.amplitudes[0]), float(self.phases[0])

    def __len__(self):
        return len(self.orders)

    def __repr__(self):
        label = f"{self.name!r}, " if self.name else ""
        return f"{type(self).__name__}({label}{len(self)} harmonics)"


@dataclass(frozen=True, eq=False, repr=False)
class NormalizedBasis(Basis):
    """Basis scaled and shifted so that its fundamental is ``cos(x)``.

    ``origin`` holds the ``(s_1, phi_1)`` that were divided out.
    """

    origin: tuple[float, float] = (1.0, 0.0)

    def denormalize(self) -> Basis:
        s1, theta1 = self.origin
        return Basis(
            self.orders,
            self.amplitudes * s1,
            wrap_phase(self.phases + self.orders * theta1),
            self.name,
        )


@dataclass(frozen=True)
class ConvergenceReport:
    ratio: float
    classification: Classification

    @property
    def converging(self) -> bool:
        return self.classification is not Classification.NOT_CONVERGING


def from_harmonics(entries, name: str | None = None) -> Basis:
    """Build a canonical :class:`Basis` from ``(m, amplitude, phase)`` triples.

    Negative amplitudes are folded into the phase, zero amplitudes dropped.
    """
    seen = {}
    for entry in entries:
        m, amplitude, phase = entry
        if int(m) != m or m < 1:
            raise ValueError(f"harmonic index must be a positive integer, got {m!r}")
        m = int(m)
        if m in seen:
            raise DuplicateHarmonic(f"harmonic {m} given more than once")
        amplitude, phase = float(amplitude), float(phase)
        if not (np.isfinite(amplitude) and np.isfinite(phase)):
            raise ValueError(f"harmonic {m} has a non-finite value")
        if amplitude < 0:
            amplitude, phase = -amplitude, phase + np.pi
        seen[m] = (amplitude, wrap_phase(phase))

    kept = sorted((m, a, p) for m, (a, p) in seen.items() if a > 0)
    if not kept or kept[0][0] != 1:
        raise NoFundamental("basis needs a nonzero fundamental (m = 1) harmonic")
    orders, amplitudes, phases = zip(*kept)
    return Basis(orders, amplitudes, phases, name)


def from_signal(s: Signal, name: str | None = None) -> Basis:
    """Basis from one sampled period; DC and Nyquist content are discarded."""
    fp = dft_polar(s)
    if len(fp.moduli) == 0 or not fp.moduli[0] > 1e-9 * rms(s):
        raise NoFundamental("sampled basis has no fundamental (m = 1) content")
    keep = fp.moduli >= DROP_REL * fp.moduli[0]
    orders = np.flatnonzero(keep) + 1
    return Basis(orders, fp.moduli[keep], fp.phases[keep], name)


def _square(m):
    odd = m[m % 2 == 1]
    # sign(cos x): +1 for m = 1 mod 4, -1 for m = 3 mod 4
    return odd, 4.0 / (np.pi * odd), np.where(odd % 4 == 1, 0.0, np.pi)


def _sawtooth(m):
    # x/pi on (-pi, pi): (2/pi) sum (-1)^(m+1) sin(m x)/m
    return m, 2.0 / (np.pi * m), np.where(m % 2 == 1, 1.5 * np.pi, 0.5 * np.pi)


def _triangle(m):
    # 1 - 2|x|/pi: every odd cosine enters with a plus sign
    odd = m[m % 2 == 1]
    return odd, 8.0 / (np.pi**2 * odd**2), np.zeros(len(odd))


def _cosine(m):
    return m[:1], np.ones(1), np.zeros(1)


BUILTINS = {
    "square": _square,
    "sawtooth": _sawtooth,
    "triangle": _triangle,
    "cosine": _cosine,
}


def builtin(name: str, max_harmonic: int) -> Basis:
    """Ideal Fourier series of a standard waveform, truncated at ``max_harmonic``.

    ``square`` is the two-level wave ``sign(cos x)``, ``sawtooth`` rises from
    -1 to 1 over ``(-pi, pi)`` and ``triangle`` peaks at ``x = 0``.
    """
    try:
        series = BUILTINS[name]
    except KeyError:
        raise UnknownName(f"unknown builtin basis {name!r}; choose from {sorted(BUILTINS)}") from None
    if int(max_harmonic) < 1:
        raise ValueError(f"max_harmonic must be >= 1, got {max_harmonic}")
    orders, amplitudes, phases = series(np.arange(1, int(max_harmonic) + 1))
    return Basis(orders, amplitudes, phases, name)


def normalize(b: Basis) -> NormalizedBasis:
    s1, theta1 = b.fundamental
    phases = wrap_phase(b.phases - b.orders * theta1)
    amplitudes = b.amplitudes / s1
    # exact by construction, not merely up to rounding
    phases[0] = 0.0
    amplitudes[0] = 1.0
    return NormalizedBasis(b.orders, amplitudes, phases, b.name, origin=(s1, theta1))


def convergence_report(b: Basis) -> ConvergenceReport:
    s1 = b.amplitudes[0]
    ratio = float(np.sum(np.square(b.amplitudes[1:] / s1)))
    if ratio == 0.0:
        cls = Classification.ORTHOGONAL
    elif ratio < 1.0:
        cls = Classification.CONVERGING
    else:
        cls = Classification.NOT_CONVERGING
    return ConvergenceReport(ratio, cls)


def render(nb: Basis, k: int, phi: float, amplitude: float, N: int, mode=Mode.BAND_LIMITED) -> Signal:
    """Sample ``amplitude * S(k x + phi)`` on an N-point grid.

    In band-limited mode harmonics with ``m*k >= N/2`` are omitted; in
    sampled mode every stored harmonic is evaluated and aliases freely.
    Works for raw and normalized bases alike.
    """
    mode = Mode.coerce(mode)
    if not 1 <= k < N // 2:
        raise FrequencyOutOfRange(f"frequency {k} outside 1..{N // 2 - 1}")
    freqs = nb.orders * k
    amps, phases = nb.amplitudes, nb.orders * phi + nb.phases
    if mode is Mode.BAND_LIMITED:
        keep = freqs < N // 2
        freqs, amps, phases = freqs[keep], amps[keep], phases[keep]
    # reduce m*k*n mod N in integers so high harmonics keep full precision
    grid = np.outer(freqs, np.arange(N)) % N
    values = amps @ np.cos(TWO_PI * grid / N + phases[:, None])
    return Signal(amplitude * values)
