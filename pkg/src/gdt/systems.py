"""Generalized filters, system-property checks and generalized convolution.

A generalized filter analyzes its input over a basis, scales every modulus
by a real gain and resynthesizes.  Such a system is always homogeneous and
time invariant, but additive only when the basis is a pure cosine or the
gains are all one.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .basis import Mode, NormalizedBasis, render
from .errors import GainLengthMismatch, LengthMismatch, ZeroCandidate
from .signal import Signal, circular_shift, dft_polar, fractional_shift, rms, rms_diff, wrap_phase
from .transform import PolarSpectrum, analyze, synthesize


@dataclass(frozen=True, eq=False)
class TransferFunction:
    """Real gain per generic frequency k = 1..K_max (``gains[k-1]``)."""

    gains: np.ndarray
    dc_gain: float = 1.0

    def __post_init__(self):
        gains = np.array(self.gains, dtype=float)
        if not (np.all(np.isfinite(gains)) and np.isfinite(self.dc_gain)):
            raise ValueError("transfer function gains must be finite")
        gains.setflags(write=False)
        object.__setattr__(self, "gains", gains)
        object.__setattr__(self, "dc_gain", float(self.dc_gain))

    @property
    def k_max(self) -> int:
        return len(self.gains)

    @classmethod
    def allpass(cls, k_max: int) -> "TransferFunction":
        return cls(np.ones(k_max), 1.0)

    @classmethod
    def lowpass(cls, k_max: int, cutoff: int) -> "TransferFunction":
        """Pass DC and ``k <= cutoff``."""
        return cls(np.arange(1, k_max + 1) <= cutoff, 1.0)

    @classmethod
    def highpass(cls, k_max: int, cutoff: int) -> "TransferFunction":
        """Pass ``k > cutoff``; DC is blocked."""
        return cls(np.arange(1, k_max + 1) > cutoff, 0.0)

    @classmethod
    def keep(cls, k_max: int, ks) -> "TransferFunction":
        """Pass only the listed frequencies; DC is blocked."""
        return cls(np.isin(np.arange(1, k_max + 1), list(ks)), 0.0)

    @classmethod
    def parse(cls, text: str, k_max: int) -> "TransferFunction":
        """Parse ``allpass``, ``lowpass:K``, ``highpass:K`` or ``keep:k1,k2,...``."""
        kind, _, arg = text.partition(":")
        kind = kind.strip().lower()
        if kind == "allpass" and not arg:
            return cls.allpass(k_max)
        if kind in ("lowpass", "highpass") and arg:
            return getattr(cls, kind)(k_max, int(arg))
        if kind == "keep" and arg:
            return cls.keep(k_max, [int(v) for v in arg.split(",") if v.strip()])
        raise ValueError(f"unrecognized gain shorthand {text!r}")


@dataclass(frozen=True)
class EigenReport:
    is_eigenfunction: bool
    eigen_modulus: float
    eigen_phase: float  # delay x0 of the candidate, radians in [-pi/k, pi/k)
    residual_rms: float


def filter_spectrum(ps: PolarSpectrum, g: TransferFunction) -> PolarSpectrum:
    if g.k_max != ps.k_max:
        raise GainLengthMismatch(f"transfer function covers {g.k_max} bins, spectrum has {ps.k_max}")
    flip = (g.gains < 0) & (ps.moduli > 0)
    dc_gain = g.dc_gain
    return PolarSpectrum(
        dc_gain * ps.dc,
        np.abs(g.gains) * ps.moduli,
        np.where(flip, wrap_phase(ps.phases + np.pi), ps.phases),
        ps.basis_label,
        ps.mode,
    )


def apply_filter(f: Signal, nb: NormalizedBasis, g: TransferFunction, mode=Mode.BAND_LIMITED) -> Signal:
    ps = analyze(f, nb, mode)
    return synthesize(filter_spectrum(ps, g), nb, f.N, mode)


def time_invariance_gap(f: Signal, j: int, nb, g, mode=Mode.BAND_LIMITED) -> float:
    shifted_in = apply_filter(circular_shift(f, j), nb, g, mode)
    shifted_out = circular_shift(apply_filter(f, nb, g, mode), j)
    return rms_diff(shifted_in, shifted_out)


def homogeneity_gap(f: Signal, alpha: float, nb, g, mode=Mode.BAND_LIMITED) -> float:
    if not alpha > 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    return rms_diff(apply_filter(alpha * f, nb, g, mode), alpha * apply_filter(f, nb, g, mode))


def superposition_gap(f1: Signal, f2: Signal, nb, g, mode=Mode.BAND_LIMITED) -> float:
    if f1.N != f2.N:
        raise LengthMismatch(f"signal lengths differ: {f1.N} != {f2.N}")
    joint = apply_filter(f1 + f2, nb, g, mode)
    separate = apply_filter(f1, nb, g, mode) + apply_filter(f2, nb, g, mode)
    return rms_diff(joint, separate)


def convolve(f: Signal, g_sig: Signal, nb: NormalizedBasis, mode=Mode.BAND_LIMITED) -> Signal:
    """Generalized convolution: multiply moduli and add phases, then resynthesize.

    For the cosine basis this is ``(2/N)`` times circular convolution on
    zero-mean, Nyquist-free inputs.
    """
    if f.N != g_sig.N:
        raise LengthMismatch(f"signal lengths differ: {f.N} != {g_sig.N}")
    a = analyze(f, nb, mode)
    b = analyze(g_sig, nb, mode)
    moduli = a.moduli * b.moduli
    phases = np.where(moduli > 0, wrap_phase(a.phases + b.phases), 0.0)
    product = PolarSpectrum(a.dc * b.dc, moduli, phases, nb.name, mode)
    return synthesize(product, nb, f.N, mode)


def eigen_check(candidate: Signal, nb: NormalizedBasis, g: TransferFunction, mode=Mode.BAND_LIMITED,
                tol: float = 1e-6) -> EigenReport:
    """Test whether ``candidate`` passes through the filter with only a gain and a delay.

    The gain and delay are fitted on the lowest nonzero frequency of the
    candidate's own generic spectrum.
    """
    size = rms(candidate)
    if size == 0:
        raise ZeroCandidate("eigen_check needs a nonzero candidate")
    out = apply_filter(candidate, nb, g, mode)
    ps_in = analyze(candidate, nb, mode)
    ks = ps_in.nonzero()
    if len(ks) == 0:
        # pure DC (and/or Nyquist) candidate
        ref = ps_in.dc if ps_in.dc != 0 else dft_polar(candidate).nyquist
        ref_out = analyze(out, nb, mode).dc if ps_in.dc != 0 else dft_polar(out).nyquist
        scale, shift = abs(ref_out / ref), 0.0
        predicted = candidate * (ref_out / ref)
    else:
        k = int(ks[0])
        ps_out = analyze(out, nb, mode)
        scale = ps_out.moduli[k - 1] / ps_in.moduli[k - 1]
        # centred in [-pi, pi) so an undelayed output reports shift 0, not 2*pi
        shift = (wrap_phase(ps_in.phases[k - 1] - ps_out.phases[k - 1] + np.pi) - np.pi) / k
        predicted = scale * fractional_shift(candidate, shift)
    residual = rms_diff(predicted, out)
    return EigenReport(bool(residual < tol * size), float(scale), float(shift), residual)


def one_bin_kernel(nb: NormalizedBasis, N: int, k: int = 1, mode=Mode.BAND_LIMITED) -> Signal:
    """Unit-modulus, zero-phase basis instance at frequency k (a band selector for convolve)."""
    return render(nb, k, 0.0, 1.0, N, mode)
