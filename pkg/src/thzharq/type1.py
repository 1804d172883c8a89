"""Exact and asymptotic outage probability of Type-I HARQ.

With the receiver decoding each round on its own, outage happens only when
every one of the (i.i.d.) rounds individually fails, so the exact outage is
the per-round envelope CDF at the decoding threshold raised to the round
count.  Products are assembled in log space so diversity-order slope tests
survive down to ~1e-300.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import fading
from .errors import DomainError

__all__ = [
    "Scheme",
    "HarqConfig",
    "snr_threshold",
    "envelope_threshold",
    "outage_exact_type1",
    "outage_asymptotic_type1",
    "diversity_order_type1",
]


class Scheme(str, Enum):
    TYPE_I = "TypeI"
    CC = "CC"


@dataclass(frozen=True)
class HarqConfig:
    """Retransmission setup: scheme, round cap M, rate R and transmit SNR."""

    scheme: Scheme
    max_rounds: int
    rate: float
    snr: float

    def __post_init__(self):
        if not isinstance(self.scheme, Scheme):
            object.__setattr__(self, "scheme", Scheme(self.scheme))
        if not (isinstance(self.max_rounds, int) and self.max_rounds >= 1):
            raise DomainError(f"max_rounds must be an integer >= 1, got {self.max_rounds}")
        if not (math.isfinite(self.rate) and self.rate > 0):
            raise DomainError(f"rate must be finite and positive, got {self.rate}")
        if not (math.isfinite(self.snr) and self.snr > 0):
            raise DomainError(f"snr must be finite and positive (linear), got {self.snr}")


def snr_threshold(cfg: HarqConfig) -> float:
    """Accumulated-SNR decoding threshold 2**R - 1."""
    return math.expm1(cfg.rate * math.log(2.0))


def envelope_threshold(h_l: float, cfg: HarqConfig) -> float:
    """Envelope value below which a single round fails:
    sqrt((2**R - 1)/snr) / h_l."""
    if not (math.isfinite(h_l) and h_l > 0):
        raise DomainError(f"path gain must be finite and positive, got {h_l}")
    return math.sqrt(snr_threshold(cfg) / cfg.snr) / h_l


def outage_exact_type1(
    fp: fading.FadingPointingParams, h_l: float, cfg: HarqConfig
) -> float:
    """Exact Type-I outage: per-round envelope CDF at the threshold, to the
    power of the round count."""
    if cfg.scheme is not Scheme.TYPE_I:
        raise DomainError(f"config scheme is {cfg.scheme}, expected TypeI")
    per_round = fading.cdf(fp, envelope_threshold(h_l, cfg))
    if per_round <= 0.0:
        return 0.0
    return math.exp(cfg.max_rounds * math.log(per_round))


def _log_asymptotic_per_round(
    fp: fading.FadingPointingParams, h_l: float, cfg: HarqConfig
) -> float:
    """log of the leading-order per-round outage as snr -> infinity."""
    gap = fp.alpha * fp.mu - fp.phi
    if abs(gap) < 1e-9:
        raise DomainError("asymptotic regime undefined at alpha*mu == phi")
    log_gth = math.log(snr_threshold(cfg))
    if gap > 0:
        return (
            math.lgamma(gap / fp.alpha)
            + (fp.phi / fp.alpha) * math.log(fp.mu)
            + 0.5 * fp.phi * log_gth
            - math.lgamma(fp.mu)
            - fp.phi * math.log(fp.h_f_hat * fp.s0 * h_l)
            - 0.5 * fp.phi * math.log(cfg.snr)
        )
    am = fp.alpha * fp.mu
    return (
        math.log(fp.phi)
        + (fp.mu - 1.0) * math.log(fp.mu)
        + 0.5 * am * log_gth
        - math.lgamma(fp.mu)
        - math.log(fp.phi - am)
        - am * math.log(fp.h_f_hat * fp.s0 * h_l)
        - 0.5 * am * math.log(cfg.snr)
    )


def outage_asymptotic_type1(
    fp: fading.FadingPointingParams, h_l: float, cfg: HarqConfig
) -> float:
    """Leading-order high-SNR Type-I outage (regime set by sign of
    alpha*mu - phi); exact power law in snr with exponent
    -max_rounds*min(phi, alpha*mu)/2."""
    return math.exp(cfg.max_rounds * _log_asymptotic_per_round(fp, h_l, cfg))


def diversity_order_type1(fp: fading.FadingPointingParams, cfg: HarqConfig) -> float:
    """High-SNR log-log slope magnitude: M*phi/2 or M*alpha*mu/2."""
    gap = fp.alpha * fp.mu - fp.phi
    if abs(gap) < 1e-9:
        raise DomainError("diversity order undefined at alpha*mu == phi")
    per_round = fp.phi if gap > 0 else fp.alpha * fp.mu
    return 0.5 * per_round * cfg.max_rounds
