"""Dielectric model catalog: static values, parameters, invariants."""

import dataclasses

import numpy as np
import pytest
from hypothesis import given, strategies as st

from lifshitz import dielectric as dl
from lifshitz.constants import EV_TO_RAD_S, ev_to_rad_s, rad_s_to_ev

from conftest import catalog_models

EV = EV_TO_RAD_S


class TestSilicon:
    def test_static_value(self):
        assert dl.silicon_intrinsic().epsilon(0.0) == pytest.approx(11.87, abs=1e-12)

    def test_high_frequency_value(self):
        si = dl.silicon_intrinsic()
        assert si.epsilon(1e6 * dl.SI_OMEGA0) == pytest.approx(1.035, abs=1e-6)

    def test_half_width_point(self):
        si = dl.silicon_intrinsic()
        assert si.epsilon(dl.SI_OMEGA0) == pytest.approx(6.4525, abs=1e-12)

    def test_doped_adds_carrier_term_at_omega_p(self):
        omega_p, gamma = 0.636 * EV, 0.06529 * EV
        base = dl.silicon_intrinsic()
        doped = dl.silicon_doped(base, omega_p, gamma)
        increment = doped.epsilon(omega_p) - base.epsilon(omega_p)
        assert increment == pytest.approx(0.9069, abs=1e-4)

    def test_doped_asymptote_matches_base(self):
        base = dl.silicon_intrinsic()
        doped = dl.silicon_doped(base, 0.636 * EV, 0.06529 * EV)
        w = 1e8 * dl.SI_OMEGA0
        assert doped.epsilon(w) == pytest.approx(base.epsilon(w), rel=1e-12)

    def test_catalog_doping_parameters(self):
        model = dl.resolve_model("si-doped:N=1.1e15")
        ((omega_p, gamma),) = model.drude_parameters()
        assert omega_p == pytest.approx(0.0021 * EV)
        assert gamma == pytest.approx(0.0078 * EV)

    def test_unknown_doping_rejected(self):
        with pytest.raises(ValueError, match="cataloged"):
            dl.silicon_doped_catalog(3.3e17)


class TestCarrierConversion:
    def test_highest_doping_row(self):
        omega_p, _ = dl.carrier_to_drude(dl.CarrierSpec(1e20, 0.34, 1.2e-3))
        assert omega_p == pytest.approx(0.636 * EV, rel=0.02)

    def test_relaxation_rate_row(self):
        _, gamma = dl.carrier_to_drude(dl.CarrierSpec(1.4e19, 0.34, 6.8e-3))
        assert gamma == pytest.approx(0.0518 * EV, rel=0.02)

    def test_square_root_density_scaling(self):
        w1, _ = dl.carrier_to_drude(dl.CarrierSpec(2.5e18, 0.34, 1e-2))
        w4, _ = dl.carrier_to_drude(dl.CarrierSpec(1e19, 0.34, 1e-2))
        assert w4 == pytest.approx(2.0 * w1, rel=1e-12)

    def test_invalid_spec(self):
        with pytest.raises(ValueError):
            dl.CarrierSpec(-1e19, 0.34, 1e-2)


class TestLaserExcited:
    def test_drude_increment_at_1ev(self):
        si = dl.silicon_intrinsic()
        excited = dl.silicon_laser_excited()
        assert excited.epsilon(EV) - si.epsilon(EV) == pytest.approx(0.2420, abs=1e-4)

    def test_plasma_increment_at_1ev(self):
        si = dl.silicon_intrinsic()
        excited = dl.silicon_laser_excited(use_plasma=True)
        assert excited.epsilon(EV) - si.epsilon(EV) == pytest.approx(0.2437, abs=1e-4)

    def test_variants_agree_at_high_frequency(self):
        drude = dl.silicon_laser_excited()
        plasma = dl.silicon_laser_excited(use_plasma=True)
        w = 1e6 * EV
        assert drude.epsilon(w) == pytest.approx(plasma.epsilon(w), rel=1e-7)


class TestVO2:
    def test_insulating_static_sum(self):
        assert dl.vo2_insulating().epsilon(0.0) == pytest.approx(9.909, abs=1e-12)

    def test_insulating_high_frequency(self):
        assert dl.vo2_insulating().epsilon(1e8 * EV) == pytest.approx(1.0, abs=1e-9)

    def test_insulating_oracle_at_resonance(self):
        # independent termwise re-evaluation with plain floats
        w_ev = 1.02
        expected = 1.0 + (4.26 - 1.0) / (1.0 + (w_ev / 15.0) ** 2)
        for s, w0, g in dl.VO2_OSC_INSULATING:
            expected += s / (1.0 + (w_ev / w0) ** 2 + g * w_ev / w0)
        assert dl.vo2_insulating().epsilon(w_ev * EV) == pytest.approx(expected, rel=1e-12)

    def test_metallic_oracle_at_plasma_frequency(self):
        w_ev = 3.33
        expected = 1.0 + 3.33**2 / (w_ev * (w_ev + 0.66))
        expected += (3.95 - 1.0) / (1.0 + (w_ev / 15.0) ** 2)
        for s, w0, g in dl.VO2_OSC_METALLIC:
            expected += s / (1.0 + (w_ev / w0) ** 2 + g * w_ev / w0)
        assert dl.vo2_metallic().epsilon(w_ev * EV) == pytest.approx(expected, rel=1e-12)

    def test_metallic_diverges_like_drude(self):
        met = dl.vo2_metallic()
        w = 1e-8 * EV
        omega_p, gamma = 3.33 * EV, 0.66 * EV
        assert met.epsilon(w) * w == pytest.approx(omega_p**2 / gamma, rel=1e-6)

    def test_metallic_exceeds_insulating_at_low_frequency(self):
        ins, met = dl.vo2_insulating(), dl.vo2_metallic()
        for w in (1e12, 1e13, 1e14):
            assert met.epsilon(w) > ins.epsilon(w)


class TestSapphire:
    def test_static_value(self):
        assert dl.sapphire().epsilon(0.0) == pytest.approx(8.362056, abs=1e-12)

    def test_value_at_lowest_pole(self):
        w_ev = 0.07
        expected = (
            1.0
            + 5.280792 / 2.0
            + 1.023 / (1.0 + (w_ev / 20.19) ** 2)
            + 1.058264 / (1.0 + (w_ev / 11.21) ** 2)
        )
        assert dl.sapphire().epsilon(w_ev * EV) == pytest.approx(expected, rel=1e-12)
        assert expected == pytest.approx(5.722, abs=1e-3)

    def test_high_frequency_limit(self):
        assert dl.sapphire().epsilon(1e8 * EV) == pytest.approx(1.0, abs=1e-9)


class TestGold:
    def test_drude_at_plasma_frequency(self):
        assert dl.gold_drude().epsilon(9.0 * EV) == pytest.approx(1.9961, abs=1e-4)

    def test_plasma_at_plasma_frequency(self):
        assert dl.gold_plasma().epsilon(9.0 * EV) == pytest.approx(2.0, rel=1e-14)

    def test_drude_below_plasma_everywhere(self, rng):
        drude, plasma = dl.gold_drude(), dl.gold_plasma()
        for w in 10 ** rng.uniform(10, 18, 200):
            assert drude.epsilon(w) < plasma.epsilon(w)


class TestInvariants:
    def test_bounds_and_monotonicity_across_catalog(self, rng):
        for model in catalog_models():
            lo = 10 ** rng.uniform(9, 17, 300)
            hi = lo * 10 ** rng.uniform(0.001, 3, 300)
            eps_lo = model.epsilon(lo)
            eps_hi = model.epsilon(hi)
            assert np.all(eps_hi >= 1.0)
            assert np.all(eps_lo >= eps_hi * (1 - 1e-14))

    @given(
        omega=st.floats(min_value=1e9, max_value=1e17),
        factor=st.floats(min_value=1.0 + 1e-9, max_value=1e6),
    )
    def test_monotone_nonincreasing_property(self, omega, factor):
        model = dl.vo2_metallic()
        assert model.epsilon(omega) >= model.epsilon(omega * factor) * (1 - 1e-14)

    @given(st.floats(min_value=1e-6, max_value=1e3))
    def test_unit_round_trip(self, value_ev):
        assert rad_s_to_ev(ev_to_rad_s(value_ev)) == pytest.approx(value_ev, rel=1e-14)

    def test_zero_frequency_rejected_for_conductors(self):
        with pytest.raises(ValueError, match="diverges"):
            dl.gold_drude().epsilon(0.0)
        with pytest.raises(ValueError, match="diverges"):
            dl.vo2_metallic().epsilon(np.array([1e12, 0.0]))

    def test_models_are_immutable(self):
        si = dl.silicon_intrinsic()
        with pytest.raises(dataclasses.FrozenInstanceError):
            si.label = "other"

    def test_composition_does_not_mutate(self):
        si = dl.silicon_intrinsic()
        n_terms = len(si.terms)
        dl.silicon_doped(si, 1e14, 1e13)
        assert len(si.terms) == n_terms

    def test_negative_frequency_rejected(self):
        with pytest.raises(ValueError):
            dl.silicon_intrinsic().epsilon(-1.0)


class TestRegistry:
    def test_known_ids_resolve(self):
        for mid in dl.list_model_ids():
            model = dl.resolve_model(mid)
            assert model.epsilon(1e15) >= 1.0

    def test_unknown_id_lists_catalog(self):
        with pytest.raises(ValueError, match="known ids"):
            dl.resolve_model("unobtainium")

    def test_doped_id_spelling_variants(self):
        a = dl.resolve_model("si-doped:N=1e20")
        b = dl.resolve_model("si-doped:N=1.0e+20")
        assert a.drude_parameters() == b.drude_parameters()

    def test_extra_models_take_priority(self):
        custom = dl.DielectricModel(terms=(dl.ConstantOffset(3.0),), label="x")
        assert dl.resolve_model("x", {"x": custom}).epsilon(1e15) == pytest.approx(4.0)
