"""pvarlab: p-variation, mixed moduli of continuity and smoothness
integrals for periodic functions sampled on uniform grids."""

__version__ = "0.1.0"

from .grid import (  # noqa: E402
    Exponent,
    Grid1,
    Grid2,
    gen_cumulative,
    gen_gn,
    gen_product,
    gen_series_f,
    gen_sine,
    gen_staircase,
    gen_tent_scaled,
    gen_trigpoly,
    load_csv,
    make_grid1,
    make_grid2,
    save_csv,
    save_report_json,
)
from .pvar1d import CyclicPartition, omega_p_functional, pvar_cyclic, pvar_oracle, pvar_sum
from .vitali2d import (
    AscentResult,
    Net,
    hardy_section_check,
    staircase_net_bound,
    vitali_ascent,
    vitali_finest,
    vitali_oracle,
    vitali_sum,
)
from .modulus import (
    ModulusTable1D,
    ModulusTable2D,
    lp_norm,
    mixed_diff_norm,
    modulus_1d,
    modulus_iso_2d,
    modulus_mixed,
    shift_norm_1d,
)
from .smoothness import (
    Decomposition,
    Enclosure,
    chain_check,
    decompose_lp0,
    integral_I,
    integral_J,
    integral_K,
)
from .mixednorm import (
    SectionProfile,
    phi_profile,
    psi_profile,
    section_lipschitz_check,
    w_p,
    w_p_estimate_check,
)
from .harness import (
    CheckReport,
    SuiteConfig,
    embedding_1d_check,
    hardy_littlewood_check,
    main_estimate_check,
    run_suite,
    sharpness_sweep,
)

__all__ = [
    "__version__",
    "Exponent",
    "Grid1",
    "Grid2",
    "make_grid1",
    "make_grid2",
    "gen_tent_scaled",
    "gen_sine",
    "gen_gn",
    "gen_series_f",
    "gen_staircase",
    "gen_product",
    "gen_trigpoly",
    "gen_cumulative",
    "load_csv",
    "save_csv",
    "save_report_json",
    "CyclicPartition",
    "pvar_sum",
    "pvar_cyclic",
    "pvar_oracle",
    "omega_p_functional",
    "Net",
    "AscentResult",
    "vitali_sum",
    "vitali_finest",
    "vitali_oracle",
    "vitali_ascent",
    "staircase_net_bound",
    "hardy_section_check",
    "ModulusTable1D",
    "ModulusTable2D",
    "lp_norm",
    "shift_norm_1d",
    "mixed_diff_norm",
    "modulus_1d",
    "modulus_iso_2d",
    "modulus_mixed",
    "Enclosure",
    "Decomposition",
    "decompose_lp0",
    "integral_J",
    "integral_K",
    "integral_I",
    "chain_check",
    "SectionProfile",
    "phi_profile",
    "psi_profile",
    "w_p",
    "section_lipschitz_check",
    "w_p_estimate_check",
    "SuiteConfig",
    "CheckReport",
    "run_suite",
    "hardy_littlewood_check",
    "embedding_1d_check",
    "main_estimate_check",
    "sharpness_sweep",
]
