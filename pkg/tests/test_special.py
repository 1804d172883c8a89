import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import special as sc

from thzharq.errors import DomainError
from thzharq.quadrature import tanh_sinh
from thzharq.special import (
    InversionConfig,
    MellinBarnesSpec,
    bromwich_invert,
    foxh,
    log_gamma_complex,
    upper_gamma,
)


class TestUpperGamma:
    def test_a_one_is_plain_exponential(self):
        for t in (0.01, 0.5, 1.0, 7.0, 40.0):
            assert upper_gamma(1.0, t) == pytest.approx(math.exp(-t), rel=1e-14)

    def test_half_at_one_matches_erfc(self):
        # sqrt(pi)*erfc(1), checked against a 50-digit evaluation
        assert upper_gamma(0.5, 1.0) == pytest.approx(0.27880558528066198, rel=1e-13)
        assert upper_gamma(0.5, 1.0) == pytest.approx(
            math.sqrt(math.pi) * sc.erfc(1.0), rel=1e-13
        )

    def test_negative_half_consistent_with_recurrence(self):
        # Gamma(-1/2, 1) = (Gamma(1/2, 1) - e^-1) / (-1/2)
        up = upper_gamma(0.5, 1.0)
        expected = (up - math.exp(-1.0)) / (-0.5)
        assert upper_gamma(-0.5, 1.0) == pytest.approx(expected, rel=1e-12)

    def test_negative_integer_parameter_limit(self):
        # Gamma(0, x) = E1(x); one recurrence step below:
        # Gamma(-1, x) = (E1(x) - e^-x/x) / (-1)
        x = 0.7
        expected = (sc.exp1(x) - math.exp(-x) / x) / (-1.0)
        assert upper_gamma(-1.0, x) == pytest.approx(expected, rel=1e-12)

    def test_against_mpmath_grid(self):
        mpmath = pytest.importorskip("mpmath")
        mpmath.mp.dps = 30
        rng = np.random.default_rng(42)
        checked = 0
        for _ in range(250):
            a = rng.uniform(-50.0, 50.0)
            x = 10.0 ** rng.uniform(-3.0, math.log10(700.0))
            ref = mpmath.gammainc(mpmath.mpf(a), mpmath.mpf(x), mpmath.inf)
            if not mpmath.isfinite(ref) or abs(ref) < mpmath.mpf("1e-280"):
                continue  # not representable in double precision
            got = upper_gamma(a, x)
            assert got == pytest.approx(float(ref), rel=1e-12), (a, x)
            checked += 1
        assert checked > 150

    def test_vectorised_matches_scalar(self):
        xs = np.array([0.05, 0.7, 1.4, 2.0, 13.0])
        vec = upper_gamma(-1.125, xs)
        for x, v in zip(xs, vec):
            assert v == pytest.approx(upper_gamma(-1.125, float(x)), rel=1e-14)

    def test_rejects_nonpositive_x(self):
        with pytest.raises(DomainError):
            upper_gamma(0.5, 0.0)
        with pytest.raises(DomainError):
            upper_gamma(0.5, -1.0)


class TestLogGammaComplex:
    def test_known_real_points(self):
        assert log_gamma_complex(1.0) == pytest.approx(0.0, abs=1e-15)
        assert log_gamma_complex(0.5).real == pytest.approx(
            math.log(math.sqrt(math.pi)), rel=1e-14
        )

    def test_reference_point(self):
        # mpmath.loggamma(2+3j) at 50 digits
        ref = -2.0928517530927334999 + 2.3023965434668676043j
        got = log_gamma_complex(2 + 3j)
        assert abs(got - ref) <= 1e-12 * abs(ref)

    def test_pole_raises(self):
        for z in (0.0, -1.0, -7.0):
            with pytest.raises(DomainError):
                log_gamma_complex(z)


def _kernel_spec(phi, alpha=2.0, mu=1.0, **kw):
    return MellinBarnesSpec(phi=phi, alpha=alpha, mu=mu, **kw)


class TestFoxH:
    def test_real_argument_is_real(self):
        for phi in (0.25, 2.25):
            v = foxh(5.0, _kernel_spec(phi))
            assert abs(v.imag) <= 1e-9 * abs(v)

    def test_node_doubling_stability(self):
        spec_a = _kernel_spec(2.25, min_nodes=257)
        spec_b = _kernel_spec(2.25, min_nodes=513)
        va = foxh(3.0 + 1.0j, spec_a)
        vb = foxh(3.0 + 1.0j, spec_b)
        assert abs(va - vb) <= 1e-9 * abs(va)

    def test_contour_placement_independence(self):
        for phi in (0.25, 2.25):
            lim = min(phi, 2.0)
            va = foxh(12.0, _kernel_spec(phi, abscissa=lim / 2))
            vb = foxh(12.0, _kernel_spec(phi, abscissa=lim / 3))
            assert abs(va - vb) <= 1e-8 * abs(va)

    def test_conjugate_symmetry(self):
        z = 4.0 + 2.5j
        for phi in (0.25, 2.25):
            spec = _kernel_spec(phi)
            assert foxh(np.conj(z), spec) == pytest.approx(
                np.conj(foxh(z, spec)), rel=1e-12
            )

    def test_large_argument_matches_residue_pair(self, h_l):
        # two right-most poles: s = phi and s = alpha*mu
        for phi in (0.25, 2.25):
            spec = _kernel_spec(phi)
            q = 1.0 / 0.71014462643807821**2  # mu/(s0*h_f_hat)^alpha, s0=erf(1)^2
            rho = 1e6
            z = math.sqrt(rho * h_l * h_l) * q**-0.5
            b = math.gamma(phi / 2) * math.gamma(1.0 - phi / 2.0) * (h_l * q**-0.5) ** -phi
            c = 2.0 / (phi - 2.0) * math.gamma(1.0) * (h_l * q**-0.5) ** -2.0
            two_term = b * rho ** (-phi / 2) + c / rho
            got = foxh(z, spec)
            assert abs(got - two_term) <= 0.01 * abs(got)

    def test_rejects_left_half_plane(self):
        with pytest.raises(DomainError):
            foxh(-1.0 + 0.5j, _kernel_spec(2.25))

    def test_spec_validation(self):
        with pytest.raises(DomainError):
            _kernel_spec(2.25, abscissa=2.5)  # beyond min(phi, alpha*mu)
        with pytest.raises(DomainError):
            _kernel_spec(2.25, min_nodes=32)
        with pytest.raises(DomainError):
            _kernel_spec(2.25, half_length=-1.0)


class TestMellinIdentities:
    """Quadrature checks of the two transform pairs behind the kernel."""

    def test_gaussian_pair(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            s = complex(rng.uniform(0.2, 3.8), rng.uniform(-1.5, 1.5))
            b = rng.uniform(0.2, 5.0)
            t = complex(rng.uniform(0.3, 4.0), rng.uniform(-2.0, 2.0))
            bt = b * t
            upper = math.sqrt(80.0 / bt.real)

            def f(x, s=s, bt=bt):
                return x ** (s - 1.0) * np.exp(-bt * x * x)

            got = tanh_sinh(f, upper, rel_tol=1e-12)
            expected = 0.5 * bt ** (-s / 2.0) * np.exp(sc.loggamma(s / 2.0))
            assert abs(got - expected) <= 1e-8 * abs(expected), (s, b, t)

    def test_incomplete_gamma_pair(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            alpha = rng.uniform(1.0, 3.0)
            mu = float(rng.integers(1, 4))
            phi = rng.uniform(0.3, 3.0)
            if abs(alpha * mu - phi) < 5e-2:
                continue
            q = rng.uniform(0.5, 3.0)
            lo = max(0.0, phi - alpha * mu)
            re_s = rng.uniform(lo + 0.08 * (phi - lo), phi - 0.08 * (phi - lo))
            s = complex(re_s, rng.uniform(-1.0, 1.0))
            a0 = (alpha * mu - phi) / alpha
            upper = (80.0 / q) ** (1.0 / alpha)

            def f(x, s=s, a0=a0, q=q, alpha=alpha):
                u = np.maximum(q * x**alpha, 1e-300)
                return x ** (s - 1.0) * upper_gamma(a0, u)

            got = tanh_sinh(f, upper, rel_tol=1e-12)
            expected = (
                (1.0 / s)
                * q ** (-s / alpha)
                * np.exp(sc.loggamma((alpha * mu + s - phi) / alpha))
            )
            assert abs(got - expected) <= 1e-8 * abs(expected), (alpha, mu, phi, s)


class TestBromwichInvert:
    def test_exponential_cdf(self):
        # transform of 1 - e^-g is 1/(t(t+1))
        got = bromwich_invert(lambda t: 1.0 / (t * (t + 1.0)), 1.0)
        assert got == pytest.approx(1.0 - math.exp(-1.0), abs=1e-9)

    @pytest.mark.parametrize("m", [1, 2, 3, 5])
    def test_erlang_cdf(self, m):
        # (1/t)(1+t)^-m inverts to the regularised lower gamma P(m, x)
        for x in (0.5, 2.0, 6.0):
            got = bromwich_invert(lambda t: (1.0 + t) ** -m / t, x)
            assert got == pytest.approx(float(sc.gammainc(m, x)), abs=1e-8)

    def test_origin_limit(self):
        got = bromwich_invert(lambda t: 1.0 / (t * (t + 1.0)), 1e-12)
        assert abs(got) <= 1e-8
        assert bromwich_invert(lambda t: 1.0 / (t * (t + 1.0)), 0.0) == 0.0

    def test_clamps_to_unit_interval(self):
        # transform of the constant 1 (CDF of a point mass at 0) is 1/t;
        # roundoff could nudge the series past 1
        got = bromwich_invert(lambda t: 1.0 / t, 2.0)
        assert 0.0 <= got <= 1.0
        assert got == pytest.approx(1.0, abs=1e-9)

    def test_rejects_negative_point(self):
        with pytest.raises(DomainError):
            bromwich_invert(lambda t: 1.0 / t, -1.0)

    def test_config_validation(self):
        with pytest.raises(DomainError):
            InversionConfig(decay=-1.0)
        with pytest.raises(DomainError):
            InversionConfig(terms=2)


@given(
    a=st.floats(min_value=-8.0, max_value=8.0).filter(lambda v: abs(v) > 1e-3),
    x=st.floats(min_value=1e-2, max_value=50.0),
)
def test_upper_gamma_recurrence_property(a, x):
    """Gamma(a+1, x) = a*Gamma(a, x) + x**a * e**-x for any real a."""
    lhs = upper_gamma(a + 1.0, x)
    rhs = a * upper_gamma(a, x) + x**a * math.exp(-x)
    assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-280)
