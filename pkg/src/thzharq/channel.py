"""Deterministic link budget and misalignment geometry.

``path_gain`` is the free-space amplitude gain times molecular absorption;
``pointing_params`` turns beam/aperture/jitter geometry into the collected
power fraction s0 and the beamwidth-to-jitter ratio phi that parameterise
the stochastic envelope (module :mod:`thzharq.fading`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

from scipy.special import erf

from .errors import DomainError

__all__ = [
    "SPEED_OF_LIGHT",
    "DEFAULT_S0",
    "ThzLinkGeometry",
    "MisalignmentGeometry",
    "PointingDerived",
    "path_gain",
    "pointing_params",
    "pointing_from_direct",
    "db_to_linear",
]

SPEED_OF_LIGHT = 299_792_458.0  # m/s

# Collected-power fraction used whenever a run specifies the equivalent
# beamwidth directly without any aperture geometry: erf(1)**2.
DEFAULT_S0 = float(erf(1.0)) ** 2


def db_to_linear(value_db: float) -> float:
    """Convert a dB quantity to linear scale (CLI boundary only)."""
    return 10.0 ** (value_db / 10.0)


@dataclass(frozen=True)
class ThzLinkGeometry:
    """Carrier, distance, antenna gains and absorption of a terahertz link.

    Gains are linear (convert dBi at the boundary).  ``temperature_k``,
    ``humidity`` and ``pressure_pa`` are recorded for provenance only; the
    absorption coefficient ``kappa`` (1/m) is an input, not derived from
    them.
    """

    f1_hz: float
    d1_m: float
    gain_tx: float
    gain_rx: float
    kappa: float = 0.0
    temperature_k: Optional[float] = None
    humidity: Optional[float] = None
    pressure_pa: Optional[float] = None

    def __post_init__(self):
        for name in ("f1_hz", "d1_m", "gain_tx", "gain_rx"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be finite and positive, got {v}")
        if not (math.isfinite(self.kappa) and self.kappa >= 0):
            raise DomainError(f"kappa must be finite and nonnegative, got {self.kappa}")


def path_gain(geom: ThzLinkGeometry) -> float:
    """Deterministic amplitude path gain of the link.

    c * sqrt(Gt*Gr) / (4*pi*f1*d1) * exp(-kappa*d1/2): strictly positive and
    monotone decreasing in frequency, distance and absorption.
    """
    spread = SPEED_OF_LIGHT * math.sqrt(geom.gain_tx * geom.gain_rx) / (
        4.0 * math.pi * geom.f1_hz * geom.d1_m
    )
    return spread * math.exp(-0.5 * geom.kappa * geom.d1_m)


@dataclass(frozen=True)
class MisalignmentGeometry:
    """Beam footprint radius, receive-aperture radius and jitter deviation."""

    w_d1: float
    r1: float
    sigma_s: float

    def __post_init__(self):
        for name in ("w_d1", "r1", "sigma_s"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and v > 0):
                raise DomainError(f"{name} must be finite and positive, got {v}")


class PointingDerived(NamedTuple):
    """Derived misalignment quantities; ``zeta``/``w_e`` are None when the
    run supplies (s0, phi) directly and the geometry is unknown."""

    zeta: Optional[float]
    s0: float
    w_e: Optional[float]
    phi: float


def pointing_params(geom: MisalignmentGeometry) -> PointingDerived:
    """Collected-power fraction and beam shape ratio from the geometry.

    zeta = sqrt(pi)*w_d1/(sqrt(2)*r1), s0 = erf(zeta)**2,
    w_e**2 = w_d1**2*sqrt(pi)*erf(zeta)/(2*zeta*exp(-zeta**2)) and
    phi = w_e**2/(4*sigma_s**2).  w_e**2 is assembled in log space so large
    zeta saturates to s0 -> 1 and an infinite (never NaN) equivalent
    beamwidth instead of overflowing inside exp(-zeta**2).
    """
    zeta = math.sqrt(math.pi) * geom.w_d1 / (math.sqrt(2.0) * geom.r1)
    erf_z = float(erf(zeta))
    s0 = erf_z * erf_z
    # log(w_e**2); the + zeta**2 term is the reciprocal of exp(-zeta**2)
    log_we2 = (
        2.0 * math.log(geom.w_d1)
        + 0.5 * math.log(math.pi)
        + math.log(erf_z)
        - math.log(2.0 * zeta)
        + zeta * zeta
    )
    half = 0.5 * log_we2
    w_e = math.exp(half) if half < 709.0 else math.inf
    log_phi = log_we2 - math.log(4.0 * geom.sigma_s**2)
    phi = math.exp(log_phi) if log_phi < 709.0 else math.inf
    return PointingDerived(zeta=zeta, s0=s0, w_e=w_e, phi=phi)


def pointing_from_direct(
    *,
    s0: Optional[float] = None,
    phi: Optional[float] = None,
    w_e: Optional[float] = None,
    sigma_s: Optional[float] = None,
) -> PointingDerived:
    """Build pointing parameters without aperture geometry.

    Accepts either phi directly or (w_e, sigma_s) with phi = w_e**2 /
    (4*sigma_s**2).  s0 defaults to erf(1)**2 when unspecified; callers
    should surface that default in run provenance.
    """
    if phi is None:
        if w_e is None or sigma_s is None:
            raise DomainError("need either phi or both w_e and sigma_s")
        if not (w_e > 0 and sigma_s > 0):
            raise DomainError("w_e and sigma_s must be positive")
        phi = w_e**2 / (4.0 * sigma_s**2)
    elif not (math.isfinite(phi) and phi > 0):
        raise DomainError(f"phi must be finite and positive, got {phi}")
    if s0 is None:
        s0 = DEFAULT_S0
    if not (0.0 < s0 <= 1.0):
        raise DomainError(f"s0 must lie in (0, 1], got {s0}")
    return PointingDerived(zeta=None, s0=float(s0), w_e=w_e, phi=float(phi))
