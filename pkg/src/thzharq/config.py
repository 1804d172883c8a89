"""Run configuration: flat INI-style key-value file with sections.

dB is accepted only where the key name ends in ``_db``; everything else is
linear/SI.  Misalignment can be given three ways with the precedence
direct (s0, phi) > (w_e, jitter + optional s0) > aperture geometry; the
chosen route is recorded so parameter echoes can show provenance.
"""

from __future__ import annotations

import configparser
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import channel, fading
from .errors import ConfigError, DomainError
from .montecarlo import McSpec
from .type1 import Scheme

__all__ = ["SweepSpec", "RunSpec", "load_config", "VALID_METHODS"]

VALID_METHODS = ("exact", "asymptotic", "mc", "convolution")


@dataclass(frozen=True)
class SweepSpec:
    """One swept variable (rate or snr_db) over [start, stop] with a fixed
    partner value, a method subset and a scheme subset."""

    variable: str
    start: float
    stop: float
    step: float
    fixed: float
    methods: Tuple[str, ...]
    schemes: Tuple[Scheme, ...]
    mc: McSpec

    def __post_init__(self):
        if self.variable not in ("rate", "snr_db"):
            raise ConfigError(f"sweep variable must be rate|snr_db, got {self.variable}")
        if not self.start < self.stop:
            raise ConfigError("sweep start must be below stop")
        if not self.step > 0:
            raise ConfigError("sweep step must be positive")
        if not self.methods:
            raise ConfigError("methods list must not be empty")
        if not self.schemes:
            raise ConfigError("schemes list must not be empty")
        for m in self.methods:
            if m not in VALID_METHODS:
                raise ConfigError(f"unknown method {m!r}")

    def values(self) -> List[float]:
        out = []
        v = self.start
        k = 0
        while v <= self.stop + 1e-9 * max(1.0, abs(self.stop)):
            out.append(round(v, 12))
            k += 1
            v = self.start + k * self.step
        return out


@dataclass(frozen=True)
class RunSpec:
    """Everything needed to reproduce a run."""

    geometry: channel.ThzLinkGeometry
    pointing: channel.PointingDerived
    pointing_source: str  # "direct" | "beamwidth" | "geometry"
    fading_params: fading.FadingPointingParams
    h_l: float
    max_rounds: int
    rate: float
    snr_db: float
    sweep: SweepSpec
    raw: Dict[str, Dict[str, str]] = field(default_factory=dict)


def _get(parser: configparser.ConfigParser, section: str, key: str,
         cast=float, default=None, required: bool = False):
    if not parser.has_option(section, key):
        if required:
            raise ConfigError(f"[{section}] missing required key {key!r}")
        return default
    raw = parser.get(section, key)
    try:
        return cast(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[{section}] {key} = {raw!r}: {exc}") from exc


def _linear_or_db(parser, section: str, base_key: str, required: bool = True) -> Optional[float]:
    """Read either ``key`` (linear) or ``key_db`` (decibel), never both."""
    has_lin = parser.has_option(section, base_key)
    has_db = parser.has_option(section, base_key + "_db")
    if has_lin and has_db:
        raise ConfigError(f"[{section}] give {base_key} or {base_key}_db, not both")
    if has_db:
        return channel.db_to_linear(_get(parser, section, base_key + "_db"))
    if has_lin:
        return _get(parser, section, base_key)
    if required:
        raise ConfigError(f"[{section}] missing {base_key} (or {base_key}_db)")
    return None


def load_config(path: str) -> RunSpec:
    """Parse and validate a run configuration file."""
    parser = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    read = parser.read(path)
    if not read:
        raise ConfigError(f"cannot read config file {path!r}")

    for section in ("channel", "fading", "harq", "sweep"):
        if not parser.has_section(section):
            raise ConfigError(f"missing [{section}] section")

    try:
        geometry = channel.ThzLinkGeometry(
            f1_hz=_get(parser, "channel", "frequency_hz", required=True),
            d1_m=_get(parser, "channel", "distance_m", required=True),
            gain_tx=_linear_or_db(parser, "channel", "gain_tx"),
            gain_rx=_linear_or_db(parser, "channel", "gain_rx"),
            kappa=_get(parser, "channel", "absorption_coeff", default=0.0),
            temperature_k=_get(parser, "channel", "temperature_k"),
            humidity=_get(parser, "channel", "humidity"),
            pressure_pa=_get(parser, "channel", "pressure_pa"),
        )
        h_l = channel.path_gain(geometry)

        pointing, source = _load_pointing(parser)

        fp = fading.FadingPointingParams(
            alpha=_get(parser, "fading", "alpha", required=True),
            mu=_get(parser, "fading", "mu", required=True),
            h_f_hat=_get(parser, "fading", "h_f_hat", default=1.0),
            s0=pointing.s0,
            phi=pointing.phi,
        )

        max_rounds = _get(parser, "harq", "max_rounds", cast=int, required=True)
        rate = _get(parser, "harq", "rate", required=True)
        snr_db = _get(parser, "harq", "snr_db", required=True)

        sweep = _load_sweep(parser, rate, snr_db)
    except DomainError as exc:
        raise ConfigError(str(exc)) from exc

    raw = {s: dict(parser.items(s)) for s in parser.sections()}
    return RunSpec(
        geometry=geometry,
        pointing=pointing,
        pointing_source=source,
        fading_params=fp,
        h_l=h_l,
        max_rounds=max_rounds,
        rate=rate,
        snr_db=snr_db,
        sweep=sweep,
        raw=raw,
    )


def _load_pointing(parser) -> Tuple[channel.PointingDerived, str]:
    has_direct = parser.has_option("misalignment", "s0") and parser.has_option(
        "misalignment", "phi"
    )
    has_we = parser.has_option("misalignment", "w_e")
    has_geom = parser.has_option("misalignment", "beam_radius_m")
    if not parser.has_section("misalignment") or not (has_direct or has_we or has_geom):
        raise ConfigError(
            "need a [misalignment] section with (s0, phi), (w_e, jitter_sigma_m) "
            "or (beam_radius_m, aperture_radius_m, jitter_sigma_m)"
        )
    if has_direct:
        return (
            channel.pointing_from_direct(
                s0=_get(parser, "misalignment", "s0"),
                phi=_get(parser, "misalignment", "phi"),
            ),
            "direct",
        )
    if has_we:
        return (
            channel.pointing_from_direct(
                s0=_get(parser, "misalignment", "s0"),
                w_e=_get(parser, "misalignment", "w_e"),
                sigma_s=_get(parser, "misalignment", "jitter_sigma_m", required=True),
            ),
            "beamwidth",
        )
    geom = channel.MisalignmentGeometry(
        w_d1=_get(parser, "misalignment", "beam_radius_m", required=True),
        r1=_get(parser, "misalignment", "aperture_radius_m", required=True),
        sigma_s=_get(parser, "misalignment", "jitter_sigma_m", required=True),
    )
    return channel.pointing_params(geom), "geometry"


def _load_sweep(parser, rate: float, snr_db: float) -> SweepSpec:
    variable = _get(parser, "sweep", "variable", cast=str, required=True).strip()
    methods_raw = _get(parser, "sweep", "methods", cast=str, default="exact,asymptotic,mc")
    schemes_raw = _get(parser, "sweep", "schemes", cast=str, default="TypeI,CC")
    methods = tuple(m.strip() for m in methods_raw.split(",") if m.strip())
    try:
        schemes = tuple(
            Scheme(s.strip()) for s in schemes_raw.split(",") if s.strip()
        )
    except ValueError as exc:
        raise ConfigError(f"unknown scheme in {schemes_raw!r}") from exc

    if parser.has_section("mc"):
        mc = McSpec(
            trials=_get(parser, "mc", "trials", cast=int, default=1_000_000),
            seed=_get(parser, "mc", "seed", cast=int, default=1),
            streams=_get(parser, "mc", "streams", cast=int, default=1),
            confidence=_get(parser, "mc", "confidence", default=0.99),
        )
    else:
        mc = McSpec(trials=1_000_000, seed=1, streams=1, confidence=0.99)

    fixed = snr_db if variable == "rate" else rate
    return SweepSpec(
        variable=variable,
        start=_get(parser, "sweep", "start", required=True),
        stop=_get(parser, "sweep", "stop", required=True),
        step=_get(parser, "sweep", "step", required=True),
        fixed=fixed,
        methods=methods,
        schemes=schemes,
        mc=mc,
    )


def regime_flag(fp: fading.FadingPointingParams) -> str:
    """Sign of alpha*mu - phi as '+1' / '-1'."""
    return "+1" if fp.alpha * fp.mu - fp.phi > 0 else "-1"


def snr_db_to_linear(snr_db: float) -> float:
    return 10.0 ** (snr_db / 10.0)


def describe(spec: RunSpec) -> str:
    """Human-readable echo of all inputs and the derived quantities."""
    from .chase import diversity_order_cc
    from .type1 import HarqConfig, diversity_order_type1

    fp = spec.fading_params
    p = spec.pointing
    cfg = HarqConfig(
        scheme=Scheme.TYPE_I,
        max_rounds=spec.max_rounds,
        rate=spec.rate,
        snr=snr_db_to_linear(spec.snr_db),
    )
    lines = [
        "inputs:",
        f"  frequency_hz     = {spec.geometry.f1_hz:.6g}",
        f"  distance_m       = {spec.geometry.d1_m:.6g}",
        f"  gain_tx (linear) = {spec.geometry.gain_tx:.6g}",
        f"  gain_rx (linear) = {spec.geometry.gain_rx:.6g}",
        f"  absorption_coeff = {spec.geometry.kappa:.6g}",
        f"  alpha            = {fp.alpha:.6g}",
        f"  mu               = {fp.mu:.6g}",
        f"  h_f_hat          = {fp.h_f_hat:.6g}",
        f"  max_rounds       = {spec.max_rounds}",
        f"  rate             = {spec.rate:.6g}",
        f"  snr_db           = {spec.snr_db:.6g}",
        f"  pointing source  = {spec.pointing_source}"
        + (
            "  (s0, phi supplied directly; any geometry keys were ignored)"
            if spec.pointing_source == "direct"
            else ""
        ),
        "derived:",
        f"  zeta             = {'n/a' if p.zeta is None else format(p.zeta, '.10g')}",
        f"  s0               = {p.s0:.10g}"
        + ("  (default erf(1)**2)" if abs(p.s0 - channel.DEFAULT_S0) < 1e-15 else ""),
        f"  w_e              = {'n/a' if p.w_e is None else format(p.w_e, '.10g')}",
        f"  phi              = {p.phi:.10g}",
        f"  h_l              = {spec.h_l:.10g}",
        f"  regime (sign of alpha*mu - phi) = {regime_flag(fp)}",
        f"  diversity order TypeI = {diversity_order_type1(fp, cfg):.10g}",
        f"  diversity order CC    = {diversity_order_cc(fp, cfg):.10g}",
        "sweep:",
        f"  variable = {spec.sweep.variable}, start = {spec.sweep.start:.6g}, "
        f"stop = {spec.sweep.stop:.6g}, step = {spec.sweep.step:.6g}",
        f"  fixed    = {spec.sweep.fixed:.6g}",
        f"  methods  = {','.join(spec.sweep.methods)}",
        f"  schemes  = {','.join(s.value for s in spec.sweep.schemes)}",
        f"  mc: trials = {spec.sweep.mc.trials}, seed = {spec.sweep.mc.seed}, "
        f"streams = {spec.sweep.mc.streams}, confidence = {spec.sweep.mc.confidence:.6g}",
    ]
    return "\n".join(lines)
