"""Generic discrete transform: polar analysis of periodic signals over arbitrary bases."""
from .basis import (
    Basis,
    Classification,
    ConvergenceReport,
    Mode,
    NormalizedBasis,
    builtin,
    convergence_report,
    from_harmonics,
    from_signal,
    normalize,
    render,
)
from .errors import *  # noqa: F401,F403
from .harness import (
    ReconstructionReport,
    SeparationReport,
    haar_reconstruct,
    noise_separation,
    reconstruct_experiment,
)
from .signal import (
    FourierPolar,
    Signal,
    circular_shift,
    dft_polar,
    fractional_shift,
    from_samples,
    rms,
    rms_diff,
    sample_function,
    synth_polar,
)
from .systems import (
    EigenReport,
    TransferFunction,
    apply_filter,
    convolve,
    eigen_check,
    filter_spectrum,
    homogeneity_gap,
    one_bin_kernel,
    superposition_gap,
    time_invariance_gap,
)
from .transform import (
    PolarSpectrum,
    ResidualProfile,
    analyze,
    final_residual,
    peel,
    rescale_to_raw,
    residual_profile,
    synthesize,
)

__version__ = "0.1.0"
