"""Chase-combining HARQ outage.

With maximum-ratio combining the per-round SNRs add, so the outage is the
CDF of a sum of M i.i.d. SNR gains at the threshold 2**R - 1.  Three routes
are provided:

* production: numerically invert the Laplace transform (1/t) * m(t)**M where
  m(t) = E[exp(-t * snr * h_l**2 * |h|**2)] is computed by direct quadrature;
* verification: the same inversion with each factor evaluated through the
  Mellin-Barnes kernel m(t) = phi/(2*Gamma(mu)) * H(z(t)),
  z(t) = sqrt(snr * h_l**2 * t) * (mu/(h_f_hat*s0)**alpha)**(-1/alpha);
* oracle: discretise the per-round SNR distribution into cell masses and
  convolve on a uniform grid.

High-SNR behaviour comes from the two-term residue expansion of the kernel,
H(z) ~ b_coeff*(snr*t)**(-phi/2) + c_coeff*(snr*t)**(-alpha*mu/2), whose
term-by-term inversion yields the full 2**M combination sum and, keeping
only the dominant exponent, eta times the Type-I asymptote.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import List, Tuple

import numpy as np
from scipy.optimize import brentq

from . import fading
from .errors import DomainError, NumericError
from .quadrature import tanh_sinh
from .special import (
    InversionConfig,
    MellinBarnesSpec,
    bromwich_invert,
    foxh,
    upper_gamma,
)
from .type1 import (
    HarqConfig,
    Scheme,
    _log_asymptotic_per_round,
    diversity_order_type1,
    snr_threshold,
)

__all__ = [
    "LOW_CONFIDENCE_FLOOR",
    "ResidueTerms",
    "ConvolutionGrid",
    "mgf_single_round",
    "mgf_single_round_foxh",
    "outage_exact_cc",
    "CcExactDetail",
    "outage_exact_cc_detail",
    "outage_cc_convolution",
    "residue_terms",
    "omega_vectors",
    "cc_asymptotic_fullsum",
    "outage_asymptotic_cc",
    "eta",
    "diversity_order_cc",
]

# Euler-summed inversion loses relative accuracy in the deep tail; exact CC
# values below this are flagged and reported next to the asymptote.
LOW_CONFIDENCE_FLOOR = 1e-7

_MGF_REL_TOL = 1e-10


def _require_cc(cfg: HarqConfig) -> None:
    if cfg.scheme is not Scheme.CC:
        raise DomainError(f"config scheme is {cfg.scheme}, expected CC")


def _mgf_upper_cutoff(b_real: float, q: float, alpha: float) -> float:
    """x beyond which exp(-Re(b)*x**2) * exp(-q*x**alpha) < e^-60."""
    target = 60.0

    def excess(x: float) -> float:
        return b_real * x * x + q * x**alpha - target

    hi = 1.0
    while excess(hi) < 0:
        hi *= 4.0
        if hi > 1e12:
            raise NumericError("mgf integrand does not decay", b_real=b_real, q=q)
    return brentq(excess, 0.0, hi)


def mgf_single_round(
    fp: fading.FadingPointingParams, h_l: float, rho: float, t: complex
) -> complex:
    """E[exp(-t * gamma_1)] for the single-round SNR gain
    gamma_1 = rho * h_l**2 * |h|**2, Re t > 0, by adaptive quadrature.

    Relative tolerance 1e-10; at real positive t the value lies in (0, 1].
    """
    tc = complex(t)
    if tc.real <= 0.0:
        raise DomainError(f"mgf requires Re t > 0, got t={tc}")
    b = rho * h_l * h_l * tc
    pref = math.exp(fading._log_pdf_prefactor(fp))
    upper = _mgf_upper_cutoff(b.real, fp.gamma_rate, fp.alpha)

    def integrand(x: np.ndarray) -> np.ndarray:
        return fading._pdf_kernel(fp, x, damping=b)

    val = pref * tanh_sinh(integrand, upper, rel_tol=_MGF_REL_TOL)
    return complex(val)


def mgf_single_round_foxh(
    fp: fading.FadingPointingParams, h_l: float, rho: float, t: complex
) -> complex:
    """Same expectation through the Mellin-Barnes kernel (verification route)."""
    tc = complex(t)
    if tc.real <= 0.0:
        raise DomainError(f"mgf requires Re t > 0, got t={tc}")
    z = np.sqrt(rho * h_l * h_l * tc) * fp.gamma_rate ** (-1.0 / fp.alpha)
    spec = MellinBarnesSpec(phi=fp.phi, alpha=fp.alpha, mu=fp.mu)
    return fp.phi / (2.0 * math.gamma(fp.mu)) * foxh(complex(z), spec)


def outage_exact_cc(
    fp: fading.FadingPointingParams,
    h_l: float,
    cfg: HarqConfig,
    *,
    per_round: str = "quadrature",
    inversion: InversionConfig = InversionConfig(),
) -> float:
    """Exact chase-combining outage by Laplace inversion of (1/t)*m(t)**M.

    ``per_round`` selects how each transform factor is evaluated:
    "quadrature" (production) or "foxh" (verification).
    """
    _require_cc(cfg)
    if per_round == "quadrature":
        factor = mgf_single_round
    elif per_round == "foxh":
        factor = mgf_single_round_foxh
    else:
        raise ValueError(f"unknown per_round route {per_round!r}")

    def transform(t: complex) -> complex:
        return factor(fp, h_l, cfg.snr, t) ** cfg.max_rounds / t

    return bromwich_invert(transform, snr_threshold(cfg), inversion)


@dataclass(frozen=True)
class CcExactDetail:
    """Exact CC outage plus tail diagnostics for reporting layers."""

    value: float
    low_confidence: bool
    asymptotic: float


def outage_exact_cc_detail(
    fp: fading.FadingPointingParams, h_l: float, cfg: HarqConfig, **kwargs
) -> CcExactDetail:
    """Exact CC outage, flagged when below the inversion's trustworthy floor,
    with the asymptote reported alongside."""
    value = outage_exact_cc(fp, h_l, cfg, **kwargs)
    return CcExactDetail(
        value=value,
        low_confidence=value < LOW_CONFIDENCE_FLOOR,
        asymptotic=outage_asymptotic_cc(fp, h_l, cfg),
    )


@dataclass(frozen=True)
class ConvolutionGrid:
    """Uniform grid for the mass-convolution oracle.

    ``upper`` defaults to 20x the SNR threshold at the point of use; the
    discretisation error of the cell-centred masses is O(step**2).
    """

    n_cells: int = 1 << 15
    upper: float | None = None

    def __post_init__(self):
        if self.n_cells < (1 << 14):
            raise DomainError(f"n_cells must be >= 2**14, got {self.n_cells}")
        if self.upper is not None and not self.upper > 0:
            raise DomainError("grid upper bound must be positive")


def outage_cc_convolution(
    fp: fading.FadingPointingParams,
    h_l: float,
    cfg: HarqConfig,
    grid: ConvolutionGrid = ConvolutionGrid(),
) -> float:
    """Independent oracle: discrete convolution of per-round SNR-gain masses.

    The per-round CDF of gamma_1 = snr*h_l**2*|h|**2 is the envelope CDF at
    sqrt(g/(snr*h_l**2)).  Exact per-cell masses are deposited at each
    cell's conditional mean (obtained from the CDF by parts), split linearly
    between the two neighbouring grid centres so the first moment is
    preserved.  The M-fold sum is then an FFT power and the outage the
    accumulated mass below the threshold, linearly interpolated in the
    boundary cell.

    Discretisation error: O(step**2) when the per-round density is bounded,
    i.e. min(phi, alpha*mu) >= 2; an integrable endpoint singularity
    (p = min(phi, alpha*mu)/2 < 1) degrades the order to O(step**(1 + 2p)),
    which is intrinsic to any fixed-lattice mass scheme.  At the default
    grid both regimes sit orders of magnitude inside the 1e-3 oracle band.
    """
    _require_cc(cfg)
    threshold = snr_threshold(cfg)
    upper = grid.upper if grid.upper is not None else 20.0 * threshold
    if upper < 20.0 * threshold:
        raise DomainError(
            f"grid upper bound {upper} below 20x threshold {20.0 * threshold}"
        )
    n = grid.n_cells
    m_rounds = cfg.max_rounds
    scale = cfg.snr * h_l * h_l
    step = upper / n

    points = np.linspace(0.0, upper, 2 * n + 1)  # edges and midpoints
    cdf_pts = fading.cdf(fp, np.sqrt(points / scale), refine_tail=False)
    f_lo, f_mid, f_hi = cdf_pts[0:-1:2], cdf_pts[1::2], cdf_pts[2::2]
    e_lo, e_hi = points[0:-1:2], points[2::2]
    masses = f_hi - f_lo
    # per-cell first moment: int g dF = [g F] - int F dg, Simpson for int F
    int_f = (step / 6.0) * (f_lo + 4.0 * f_mid + f_hi)
    moment = e_hi * f_hi - e_lo * f_lo - int_f
    with np.errstate(invalid="ignore", divide="ignore"):
        pos = np.where(masses > 1e-300, moment / np.maximum(masses, 1e-300),
                       0.5 * (e_lo + e_hi))
    pos = np.clip(pos, e_lo, e_hi)

    # moment-preserving deposit onto centres c_j = (j + 1/2)*step
    lower = np.clip(np.floor(pos / step - 0.5).astype(int), 0, n - 2)
    frac = pos / step - 0.5 - lower
    deposited = np.zeros(n)
    np.add.at(deposited, lower, masses * (1.0 - frac))
    np.add.at(deposited, lower + 1, masses * frac)

    # distribution of the sum of M deposited rounds via FFT powers
    size = m_rounds * (n - 1) + 1
    nfft = 1 << (size - 1).bit_length()
    spectrum = np.fft.rfft(deposited, nfft) ** m_rounds
    summed = np.fft.irfft(spectrum, nfft)[:size]

    # sum atom j sits at (j + M/2)*step and represents a band of width step;
    # atoms are fully below the threshold once their band top clears it
    j_limit = threshold / step - 0.5 * (m_rounds - 1)
    if j_limit <= 0.0:
        return 0.0
    j_floor = int(math.floor(j_limit))
    cumulative = np.cumsum(summed)
    if j_floor >= size:
        return float(min(1.0, cumulative[-1]))
    below = cumulative[j_floor - 1] if j_floor >= 1 else 0.0
    frac_cell = j_limit - j_floor
    return float(min(1.0, max(0.0, below + frac_cell * summed[j_floor])))


@dataclass(frozen=True)
class ResidueTerms:
    """Coefficients of the two-term large-z expansion of the kernel:
    H(z(t)) ~ b_coeff*(rho*t)**(-phi/2) + c_coeff*(rho*t)**(-alpha*mu/2)."""

    b_coeff: float
    c_coeff: float


def residue_terms(fp: fading.FadingPointingParams, h_l: float) -> ResidueTerms:
    """Residues of the kernel's first right-pole pair (s = phi and
    s = alpha*mu); finite whenever the two regimes are separated."""
    gap = fp.alpha * fp.mu - fp.phi
    if abs(gap) < 1e-9:
        raise DomainError("residue expansion undefined at alpha*mu == phi")
    base = h_l * fp.gamma_rate ** (-1.0 / fp.alpha)
    b_coeff = (
        math.gamma(0.5 * fp.phi)
        * math.gamma(fp.mu - fp.phi / fp.alpha)
        * base**-fp.phi
    )
    am = fp.alpha * fp.mu
    c_coeff = fp.alpha / (fp.phi - am) * math.gamma(0.5 * am) * base**-am
    return ResidueTerms(b_coeff=b_coeff, c_coeff=c_coeff)


def omega_vectors(max_rounds: int) -> List[Tuple[int, ...]]:
    """All 2**M binary selection vectors over the rounds, enumerated
    exhaustively."""
    return list(itertools.product((0, 1), repeat=max_rounds))


def cc_asymptotic_fullsum(
    fp: fading.FadingPointingParams, h_l: float, cfg: HarqConfig
) -> float:
    """High-SNR CC outage keeping all 2**M residue cross terms.

    sum over selection vectors a of
      (phi/(2*Gamma(mu)))**M * prod_k b**a_k * c**(1-a_k)
      * ((2**R - 1)/snr)**E(a) / Gamma(E(a) + 1),
    E(a) = M*alpha*mu/2 + (phi - alpha*mu)/2 * sum(a).
    """
    _require_cc(cfg)
    rt = residue_terms(fp, h_l)
    m_rounds = cfg.max_rounds
    ratio = snr_threshold(cfg) / cfg.snr
    front = (fp.phi / (2.0 * math.gamma(fp.mu))) ** m_rounds
    am = fp.alpha * fp.mu
    total = 0.0
    for a_vec in omega_vectors(m_rounds):
        ones = sum(a_vec)
        coeff = rt.b_coeff**ones * rt.c_coeff ** (m_rounds - ones)
        exponent = 0.5 * am * m_rounds + 0.5 * (fp.phi - am) * ones
        total += coeff * ratio**exponent / math.gamma(exponent + 1.0)
    return front * total


def eta(fp: fading.FadingPointingParams, max_rounds: int) -> float:
    """Combining-gain constant: ratio of the CC to the Type-I asymptote.

    Gamma(p/2 + 1)**M / Gamma(p*M/2 + 1) with p = min(phi, alpha*mu);
    equals 1 only for M = 1 and is < 1 for M > 1.
    """
    gap = fp.alpha * fp.mu - fp.phi
    if abs(gap) < 1e-9:
        raise DomainError("eta undefined at alpha*mu == phi")
    if max_rounds < 1:
        raise DomainError("max_rounds must be >= 1")
    p = fp.phi if gap > 0 else fp.alpha * fp.mu
    return math.exp(
        max_rounds * math.lgamma(0.5 * p + 1.0) - math.lgamma(0.5 * p * max_rounds + 1.0)
    )


def outage_asymptotic_cc(
    fp: fading.FadingPointingParams, h_l: float, cfg: HarqConfig
) -> float:
    """Dominant-exponent high-SNR CC outage: eta times the Type-I asymptote."""
    _require_cc(cfg)
    log_t1 = cfg.max_rounds * _log_asymptotic_per_round(fp, h_l, cfg)
    return eta(fp, cfg.max_rounds) * math.exp(log_t1)


def diversity_order_cc(fp: fading.FadingPointingParams, cfg: HarqConfig) -> float:
    """Identical to the Type-I diversity order."""
    return diversity_order_type1(fp, cfg)
