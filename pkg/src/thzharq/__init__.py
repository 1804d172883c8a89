"""Outage analysis of HARQ-aided terahertz links under generalised fading
with stochastic antenna misalignment.

Module map:

* :mod:`thzharq.channel`     deterministic link budget and pointing geometry
* :mod:`thzharq.fading`      composite envelope distribution and sampler
* :mod:`thzharq.special`     incomplete gamma, Mellin-Barnes kernel, Laplace inversion
* :mod:`thzharq.type1`       Type-I HARQ outage (exact / asymptotic / diversity)
* :mod:`thzharq.chase`       chase-combining outage (inversion / convolution / residues)
* :mod:`thzharq.montecarlo`  seeded simulation oracle
* :mod:`thzharq.cli`         sweep driver and parameter echo
"""

from .channel import (
    DEFAULT_S0,
    SPEED_OF_LIGHT,
    MisalignmentGeometry,
    PointingDerived,
    ThzLinkGeometry,
    db_to_linear,
    path_gain,
    pointing_from_direct,
    pointing_params,
)
from .chase import (
    ConvolutionGrid,
    ResidueTerms,
    cc_asymptotic_fullsum,
    diversity_order_cc,
    eta,
    mgf_single_round,
    mgf_single_round_foxh,
    outage_asymptotic_cc,
    outage_cc_convolution,
    outage_exact_cc,
    outage_exact_cc_detail,
    residue_terms,
)
from .errors import ConfigError, DomainError, NumericError
from .fading import FadingPointingParams, cdf, cdf_numeric, pdf, sample
from .montecarlo import McSpec, OutageEstimate, Provenance, simulate_outage, spawn_streams
from .special import (
    InversionConfig,
    MellinBarnesSpec,
    bromwich_invert,
    foxh,
    log_gamma_complex,
    upper_gamma,
)
from .type1 import (
    HarqConfig,
    Scheme,
    diversity_order_type1,
    outage_asymptotic_type1,
    outage_exact_type1,
)

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_S0",
    "SPEED_OF_LIGHT",
    "ThzLinkGeometry",
    "MisalignmentGeometry",
    "PointingDerived",
    "path_gain",
    "pointing_params",
    "pointing_from_direct",
    "db_to_linear",
    "FadingPointingParams",
    "pdf",
    "cdf",
    "cdf_numeric",
    "sample",
    "upper_gamma",
    "log_gamma_complex",
    "MellinBarnesSpec",
    "foxh",
    "InversionConfig",
    "bromwich_invert",
    "HarqConfig",
    "Scheme",
    "outage_exact_type1",
    "outage_asymptotic_type1",
    "diversity_order_type1",
    "mgf_single_round",
    "mgf_single_round_foxh",
    "outage_exact_cc",
    "outage_exact_cc_detail",
    "outage_cc_convolution",
    "ConvolutionGrid",
    "ResidueTerms",
    "residue_terms",
    "cc_asymptotic_fullsum",
    "outage_asymptotic_cc",
    "eta",
    "diversity_order_cc",
    "McSpec",
    "OutageEstimate",
    "Provenance",
    "simulate_outage",
    "spawn_streams",
    "DomainError",
    "NumericError",
    "ConfigError",
]
