"""OFDM amplify-and-forward relaying under carrier frequency offsets.

Closed-form SNR, sensitivities and a seeded Monte-Carlo sweep runner, backed
by the C++ core.
"""

from ._core import (
    CSV_HEADER,
    BranchStats,
    ConfigError,
    DirectLinkStats,
    ExperimentConfig,
    IsiConditionError,
    LinkStats,
    SensitivityPair,
    SnrBreakdown,
    TopologyStats,
    analytical_snr,
    analytical_snr_upa,
    cfo_spectrum,
    cfo_spectrum_all,
    dft,
    dirichlet_gain,
    dirichlet_gain_derivative,
    gain_factor,
    idft,
    load_config,
    multi_relay_snr,
    parse_config,
    preset_names,
    run_sweep,
    sensitivities,
    sensitivities_upa,
    sweep_csv,
    to_topology,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
