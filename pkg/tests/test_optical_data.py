"""Tabulated loss data and the causality integral."""

import math

import numpy as np
import pytest
from scipy import integrate

from lifshitz import optical_data as od
from lifshitz.constants import EV_TO_RAD_S

EV = EV_TO_RAD_S


def drude_loss_table(points_per_decade=100):
    omega_p, gamma = 9.0 * EV, 0.035 * EV
    x = np.logspace(11, 19, 8 * points_per_decade + 1)
    eps2 = omega_p**2 * gamma / (x * (x * x + gamma * gamma))
    return od.OpticalTable(x=x, eps2=eps2), omega_p, gamma


def lorentz_loss_table(points_per_decade=200):
    s, w0, width = 2.0, 2.0 * EV, 0.4
    gt = width * w0
    x = np.logspace(math.log10(w0) - 4, math.log10(w0) + 4, 8 * points_per_decade + 1)
    eps2 = s * w0**2 * gt * x / ((w0**2 - x * x) ** 2 + gt**2 * x * x)
    return od.OpticalTable(x=x, eps2=eps2), (s, w0, width)


class TestTableConstruction:
    def test_from_nk_identity(self):
        table = od.table_from_nk([(1e13, 2.0, 3.0), (1e14, 1.0, 0.0)])
        assert table.eps2[0] == pytest.approx(12.0)
        assert table.eps2[1] == 0.0

    def test_transparent_medium(self):
        table = od.table_from_nk([(1e13, 1.0, 0.0), (1e14, 1.0, 0.0)])
        assert np.all(table.eps2 == 0.0)

    def test_three_rows_parse_in_order(self):
        text = "# columns: ev n k\n1.0 1.5 0.1\n2.0 1.4 0.2\n3.0 1.3 0.3\n"
        table = od.read_table(text)
        assert table.x == pytest.approx([EV, 2 * EV, 3 * EV])
        assert table.eps2 == pytest.approx([0.3, 0.56, 0.78])

    def test_eps2_layout(self):
        table = od.read_table("# columns: ev eps2\n0.5 1.25\n1.5 0.75\n")
        assert table.eps2 == pytest.approx([1.25, 0.75])

    def test_non_ascending_rejected(self):
        with pytest.raises(ValueError, match="increasing"):
            od.OpticalTable(x=np.array([1e13, 1e13]), eps2=np.array([1.0, 1.0]))

    def test_negative_nk_rejected(self):
        with pytest.raises(ValueError, match="n, k"):
            od.table_from_nk([(1e13, -1.0, 0.5), (1e14, 1.0, 0.5)])

    def test_too_few_samples_rejected(self):
        with pytest.raises(ValueError, match="2 samples"):
            od.OpticalTable(x=np.array([1e13]), eps2=np.array([1.0]))

    def test_bad_layout_directive(self):
        with pytest.raises(ValueError, match="layout"):
            od.read_table("# columns: hz eps2\n1 2\n")

    def test_loss_interpolation_diagnostic(self):
        table = od.OpticalTable(x=np.array([1e13, 1e15]), eps2=np.array([4.0, 1.0]))
        # log-log midpoint of a power law is the geometric mean of the values
        assert table.loss(1e14) == pytest.approx(2.0, rel=1e-12)
        with pytest.raises(ValueError, match="inside"):
            table.loss(1e16)


class TestClosedFormRoundTrips:
    def test_drude_pair(self):
        table, omega_p, gamma = drude_loss_table()
        omega = np.logspace(13, 17, 41)
        exact = 1.0 + omega_p**2 / (omega * (omega + gamma))
        got = od.kk_epsilon(table, omega)
        assert np.max(np.abs(got / exact - 1.0)) < 1e-3

    def test_lorentz_pair(self):
        table, (s, w0, width) = lorentz_loss_table()
        omega = np.logspace(13, 17, 41)
        exact = 1.0 + s / (1.0 + (omega / w0) ** 2 + width * omega / w0)
        got = od.kk_epsilon(table, omega)
        assert np.max(np.abs(got / exact - 1.0)) < 1e-3

    def test_zero_loss_gives_exactly_one(self):
        table = od.OpticalTable(x=np.array([1e12, 1e13, 1e14]), eps2=np.zeros(3))
        assert od.kk_epsilon(table, 1e13) == 1.0


class TestPiecewiseExactContract:
    def test_matches_independent_quadrature_of_the_same_law(self, rng):
        """Segment-by-segment scipy integration of the declared power law."""
        xs = np.sort(10 ** rng.uniform(12, 16, 9))
        es = 10 ** rng.uniform(-2, 1, 9)
        table = od.OpticalTable(x=xs, eps2=es)
        for w in (3e12, 4.3e14, 9e15, 3e16):
            main = 0.0
            for i in range(xs.size - 1):
                p = math.log(es[i + 1] / es[i]) / math.log(xs[i + 1] / xs[i])
                val, _ = integrate.quad(
                    lambda x: x * es[i] * (x / xs[i]) ** p / (x * x + w * w),
                    xs[i], xs[i + 1],
                    points=[min(max(w, xs[i]), xs[i + 1])],
                    limit=200, epsrel=1e-13, epsabs=1e-300,
                )
                main += val
            low = es[0] * xs[0] * math.atan(xs[0] / w) / w
            # substitute t = x_N/x so the tail integral lives on (0, 1];
            # scipy's own infinite-interval mapping cannot see features at
            # x ~ 1e16
            high, _ = integrate.quad(
                lambda t: es[-1] * xs[-1] ** 2 * t * t / (xs[-1] ** 2 + (w * t) ** 2),
                0.0, 1.0, epsrel=1e-13,
            )
            oracle = 1.0 + 2.0 / math.pi * (main + low + high)
            assert od.kk_epsilon(table, w) == pytest.approx(oracle, rel=1e-6)

    def test_linear_policy_matches_independent_quadrature(self, rng):
        xs = np.sort(10 ** rng.uniform(13, 15, 7))
        es = rng.uniform(0.0, 4.0, 7)
        table = od.OpticalTable(
            x=xs, eps2=es, interp="linear", extrap_low="zero", extrap_high="zero"
        )
        loss = lambda x: np.interp(x, xs, es)
        for w in (1e13, 1e14, 1e15):
            oracle, _ = integrate.quad(
                lambda x: x * loss(x) / (x * x + w * w),
                xs[0], xs[-1], points=list(xs), limit=200, epsrel=1e-12,
            )
            assert od.kk_epsilon(table, w) == pytest.approx(
                1.0 + 2.0 / math.pi * oracle, rel=1e-6
            )


class TestInvariants:
    def test_output_bounds_and_monotonicity(self, rng):
        xs = np.sort(10 ** rng.uniform(12, 16, 12))
        es = 10 ** rng.uniform(-2, 1, 12)
        table = od.OpticalTable(x=xs, eps2=es)
        omega = np.logspace(11, 18, 120)
        values = od.kk_epsilon(table, omega)
        assert np.all(values >= 1.0)
        assert np.all(np.diff(values) <= 1e-12)

    def test_linearity_on_common_grid(self, rng):
        xs = np.logspace(12, 15, 40)
        ea = rng.uniform(0.1, 2.0, 40)
        eb = rng.uniform(0.1, 2.0, 40)
        kwargs = dict(interp="linear", extrap_low="zero", extrap_high="zero")
        ta = od.OpticalTable(x=xs, eps2=ea, **kwargs)
        tb = od.OpticalTable(x=xs, eps2=eb, **kwargs)
        tsum = od.OpticalTable(x=xs, eps2=ea + eb, **kwargs)
        omega = np.logspace(12.5, 14.5, 9)
        lhs = od.kk_epsilon(tsum, omega)
        rhs = od.kk_epsilon(ta, omega) + od.kk_epsilon(tb, omega) - 1.0
        assert lhs == pytest.approx(rhs, rel=1e-12)

    def test_pure_power_law_invariant_under_refinement(self):
        omega = np.logspace(13, 15, 7)
        coarse_x = np.logspace(12, 16, 41)
        fine_x = np.logspace(12, 16, 161)
        coarse = od.OpticalTable(x=coarse_x, eps2=3.0 * (coarse_x / 1e12) ** -1.3)
        fine = od.OpticalTable(x=fine_x, eps2=3.0 * (fine_x / 1e12) ** -1.3)
        assert od.kk_epsilon(coarse, omega) == pytest.approx(
            od.kk_epsilon(fine, omega), rel=1e-12
        )

    def test_refinement_converges_at_second_order(self):
        # smooth loss curves: doubling the sampling density cuts the
        # interpolation error of the declared law by ~4x
        omega = np.logspace(13.2, 16.4, 9)
        changes = []
        prev = None
        for per_decade in (25, 50, 100, 200):
            table, _ = lorentz_loss_table(per_decade)
            values = od.kk_epsilon(table, omega)
            if prev is not None:
                changes.append(np.max(np.abs(values - prev)))
            prev = values
        assert changes[1] < 0.4 * changes[0]
        assert changes[2] < 0.4 * changes[1]

    def test_omega_validation(self):
        table, _, _ = drude_loss_table(25)
        with pytest.raises(ValueError):
            od.kk_epsilon(table, 0.0)
        with pytest.raises(ValueError):
            od.kk_epsilon(table, np.array([1e13, -1.0]))


class TestExtrapolationPolicies:
    def test_error_policy_trips_on_truncated_metal_table(self):
        omega_p, gamma = 9.0 * EV, 0.035 * EV
        x = np.logspace(15, 17, 60)  # low-frequency loss mass missing
        eps2 = omega_p**2 * gamma / (x * (x * x + gamma * gamma))
        table = od.OpticalTable(x=x, eps2=eps2, extrap_low="error")
        with pytest.raises(od.ExtrapolationError, match="low-frequency"):
            od.kk_epsilon(table, 1e14)

    def test_error_policy_passes_when_tails_negligible(self):
        table, _ = lorentz_loss_table(50)
        trimmed = od.OpticalTable(
            x=table.x, eps2=table.eps2, extrap_low="error", extrap_high="error"
        )
        value = od.kk_epsilon(trimmed, 1e15)
        assert value > 1.0

    def test_zero_tails_bracket_default_tails(self):
        table, omega_p, gamma = drude_loss_table(50)
        bare = od.OpticalTable(
            x=table.x, eps2=table.eps2, extrap_low="zero", extrap_high="zero"
        )
        w = 1e14
        assert od.kk_epsilon(bare, w) < od.kk_epsilon(table, w)

    def test_default_tails_exact_for_drude(self):
        # the 1/x and 1/x^3 default tail laws continue a free-carrier loss
        # spectrum asymptotically, so truncating a table that still reaches
        # well past gamma and omega_p barely matters
        omega_p, gamma = 9.0 * EV, 0.035 * EV
        full = np.logspace(10, 20, 401)
        short = np.logspace(12, 17, 201)
        loss = lambda x: omega_p**2 * gamma / (x * (x * x + gamma * gamma))
        t_full = od.OpticalTable(x=full, eps2=loss(full))
        t_short = od.OpticalTable(x=short, eps2=loss(short))
        w = 1e15
        assert od.kk_epsilon(t_short, w) == pytest.approx(
            od.kk_epsilon(t_full, w), rel=1e-3
        )
