"""Seeded Monte-Carlo outage estimation; the ground-truth oracle for the
closed forms.

Reproducibility contract: the generator is Philox (counter-based), one
instance per stream obtained by ``Philox(key=seed).jumped(stream_index)``,
so streams are non-overlapping by construction and the estimate is
bit-reproducible given (seed, streams, trials).  Stream counts are summed in
stream order, which is an order-independent integer reduction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

import numpy as np
from scipy.special import ndtri

from . import fading
from .errors import DomainError
from .type1 import HarqConfig, Scheme, snr_threshold

__all__ = [
    "Provenance",
    "McSpec",
    "OutageEstimate",
    "spawn_streams",
    "stream_trials",
    "simulate_outage",
]

_CHUNK = 1 << 20


class Provenance(str, Enum):
    EXACT = "exact"
    ASYMPTOTIC = "asymptotic"
    MONTE_CARLO = "monte_carlo"
    CONVOLUTION = "convolution"


@dataclass(frozen=True)
class McSpec:
    """Trial budget, seed, parallel stream count and confidence level."""

    trials: int
    seed: int
    streams: int = 1
    confidence: float = 0.99

    def __post_init__(self):
        if not (isinstance(self.trials, int) and self.trials >= 1):
            raise DomainError(f"trials must be an integer >= 1, got {self.trials}")
        if not (isinstance(self.seed, int) and 0 <= self.seed < 2**64):
            raise DomainError(f"seed must be an unsigned 64-bit integer, got {self.seed}")
        if not (isinstance(self.streams, int) and self.streams >= 1):
            raise DomainError(f"streams must be an integer >= 1, got {self.streams}")
        if not 0.0 < self.confidence < 1.0:
            raise DomainError(f"confidence must lie in (0, 1), got {self.confidence}")


@dataclass(frozen=True)
class OutageEstimate:
    """A probability with provenance; ``half_width`` is zero for exact and
    asymptotic values."""

    p_hat: float
    half_width: float
    trials: int
    provenance: Provenance

    def __post_init__(self):
        if not 0.0 <= self.p_hat <= 1.0:
            raise DomainError(f"p_hat must lie in [0, 1], got {self.p_hat}")
        if self.half_width < 0.0:
            raise DomainError("half_width must be nonnegative")


def spawn_streams(seed: int, streams: int) -> List[np.random.Generator]:
    """Non-overlapping per-stream generators: Philox(seed) jumped k times."""
    return [
        np.random.Generator(np.random.Philox(key=seed).jumped(k))
        for k in range(streams)
    ]


def stream_trials(trials: int, streams: int) -> List[int]:
    """Trial counts per stream; the remainder goes to the last stream."""
    base = trials // streams
    counts = [base] * streams
    counts[-1] += trials - base * streams
    return counts


def _outage_count(
    fp: fading.FadingPointingParams,
    h_l: float,
    cfg: HarqConfig,
    rng: np.random.Generator,
    trials: int,
) -> int:
    """Outage events among ``trials`` draws of M per-round envelopes.

    The accumulated information is max_k log2(1 + snr_k) for Type-I and
    log2(1 + sum_k snr_k) for chase combining; comparing it with the rate is
    identical to comparing max/sum of the per-round SNRs with 2**R - 1,
    which is what is evaluated.
    """
    threshold = snr_threshold(cfg)
    scale = cfg.snr * h_l * h_l
    count = 0
    done = 0
    while done < trials:
        block = min(_CHUNK, trials - done)
        env = fading.sample(fp, rng, size=(block, cfg.max_rounds))
        snr = scale * env * env
        if cfg.scheme is Scheme.CC:
            failed = snr.sum(axis=1) < threshold
        else:
            failed = snr.max(axis=1) < threshold
        count += int(np.count_nonzero(failed))
        done += block
    return count


def confidence_half_width(p_hat: float, trials: int, confidence: float) -> float:
    """Normal-approximation half-width, Wilson fallback for sparse counts."""
    z = float(ndtri(0.5 * (1.0 + confidence)))
    if p_hat * trials >= 10.0:
        return z * math.sqrt(p_hat * (1.0 - p_hat) / trials)
    # Wilson interval: centre shifts, so report half its total width
    z2 = z * z
    denom = 1.0 + z2 / trials
    spread = (
        z
        * math.sqrt(p_hat * (1.0 - p_hat) / trials + z2 / (4.0 * trials * trials))
        / denom
    )
    return spread


def simulate_outage(
    fp: fading.FadingPointingParams,
    h_l: float,
    cfg: HarqConfig,
    mc: McSpec,
    streams: Optional[List[np.random.Generator]] = None,
) -> OutageEstimate:
    """Estimate the outage probability of either HARQ scheme by simulation.

    Pass ``streams`` to reuse generators across coupled runs (e.g. comparing
    schemes on identical draws); otherwise they are spawned from the spec.
    """
    if not (math.isfinite(h_l) and h_l > 0):
        raise DomainError(f"path gain must be finite and positive, got {h_l}")
    gens = streams if streams is not None else spawn_streams(mc.seed, mc.streams)
    if len(gens) != mc.streams:
        raise DomainError("number of generators must match mc.streams")
    count = 0
    for rng, n in zip(gens, stream_trials(mc.trials, mc.streams)):
        if n:
            count += _outage_count(fp, h_l, cfg, rng, n)
    p_hat = count / mc.trials
    return OutageEstimate(
        p_hat=p_hat,
        half_width=confidence_half_width(p_hat, mc.trials, mc.confidence),
        trials=mc.trials,
        provenance=Provenance.MONTE_CARLO,
    )
