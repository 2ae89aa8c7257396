"""pulsatio: seismocardiography signal processing and per-beat feature analysis."""

from ._kernels import BACKEND as kernel_backend
from .beats import (
    BeatMatrix,
    FiducialSeries,
    TemplateReport,
    detect_fiducials,
    ensemble_average,
    make_template,
    read_fiducials,
    reject_noisy,
    segment_beats,
    waterfall,
)
from .core import (
    AnalysisConfig,
    Signal,
    detrend,
    load_signal,
    read_table,
    write_table,
)
from .features import (
    FeatureVector,
    beat_features,
    burg_reflection,
    detail_statistics,
    feature_matrix,
    feature_names,
    modwpt_shannon_entropy,
)
from .filtering import (
    FilterSpec,
    activity_index,
    gross_acceleration,
    respiration_rate,
    zero_phase_filter,
)
from .multifractal import (
    LeaderPyramid,
    MultifractalSummary,
    analyze,
    compute_leaders,
    cumulants,
    multifractality_spread,
    scaling_exponents,
    singularity_spectrum,
    structure_functions,
)
from .quality import (
    QualityReport,
    assess_signal,
    assess_window,
    composite_sqi,
    kurtosis_sqi,
    spectral_entropy_sqi,
    template_correlation_sqi,
)
from .spectral import (
    PowerSpectrum,
    Spectrogram,
    dominant_frequency,
    spectrogram,
    welch_psd,
)
from .synthetic import binomial_cascade, fractional_brownian_motion, synthesize_scg
from .wavelets import (
    DwtPyramid,
    PacketTable,
    dwt,
    idwt,
    max_dwt_levels,
    modwpt,
    node_bands_hz,
    node_energy_series,
)

__version__ = "0.1.0"
