"""Continuation model: closed-form fit, resonance evaluation, tail fits."""

import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from starkdim import (
    EnergySeries,
    HypModel,
    ResonancePoint,
    energy_series,
    fit_model,
    fit_round_trip_residual,
    linear_tail_fit,
    model_coefficients,
    resonance,
    slope_exponent,
    standard_model,
    sweep,
)
from starkdim.errors import (
    DegenerateSeries,
    InsufficientData,
    InvalidL,
    NoIonization,
    NonlinearTail,
    NonPositiveSlope,
    OutOfRange,
)

ALPHAS = (3.0, 2.5, 2.0, 1.5)


def fake_points(fields, gammas, delta=-1.0):
    """ResonancePoint sequence with prescribed decay rates."""
    return [
        ResonancePoint(field=float(f), energy=complex(delta, -0.5 * g))
        for f, g in zip(fields, gammas)
    ]


# ---------------------------------------------------------------------------
# fit


def test_fit_round_trip_all_dimensions(models, series_map):
    for alpha in ALPHAS:
        res = fit_round_trip_residual(models[alpha], series_map[alpha])
        assert res < 1e-10


def test_synthetic_forward_fit_recovers_parameters():
    """Coefficients generated from planted parameters are fitted back to
    the same parameters."""
    planted = HypModel(
        h1=0.45 - 0.21j, h2=0.45 + 0.21j, h3=complex(1200.0),
        h4=complex(3.7e-28), l=30.0, e0=-0.5, alpha=3.0,
    )
    coeffs = model_coefficients(planted, 4)
    for value in coeffs:
        assert abs(value.imag) <= 1e-13 * abs(value)
    series = EnergySeries(
        alpha=3.0, order=4,
        e_coeffs=(planted.e0,) + tuple(v.real for v in coeffs),
    )
    fitted = fit_model(series, l=30.0)
    assert fitted.h1 == pytest.approx(planted.h1, rel=1e-9)
    assert fitted.h2 == pytest.approx(planted.h2, rel=1e-9)
    assert fitted.h3 == pytest.approx(planted.h3, rel=1e-9)
    assert fitted.h4 == pytest.approx(planted.h4, rel=1e-9)


def test_fit_canonical_root_order(models):
    for model in models.values():
        assert (model.h1.real, model.h1.imag) <= (model.h2.real, model.h2.imag)
        assert model.h2 == model.h1.conjugate()


def test_fit_validation():
    series = energy_series(3.0, 4)
    with pytest.raises(InvalidL):
        fit_model(series, l=4.0)
    with pytest.raises(InsufficientData):
        fit_model(energy_series(3.0, 3))
    broken = EnergySeries(alpha=3.0, order=4,
                          e_coeffs=(-0.5, 0.0, -1.0, -2.0, -3.0))
    with pytest.raises(DegenerateSeries):
        fit_model(broken)


# ---------------------------------------------------------------------------
# resonance evaluation


def test_zero_field_is_unperturbed_energy(models):
    for alpha, model in models.items():
        pt = resonance(model, 0.0)
        assert pt.energy == complex(model.e0)
        assert pt.gamma == 0.0


def test_resonance_against_mpmath():
    """Full model evaluation cross-checked with a 40-digit reference."""
    mp.mp.dps = 40

    def mp_energy(model, field, side=-1):
        h1, h2 = mp.mpc(model.h1), mp.mpc(model.h2)
        l = mp.mpf(model.l)
        z = (mp.mpf(field) / 4) ** 2
        w = 1 + mp.mpc(model.h3) * z
        if mp.im(w) == 0 and mp.re(w) > 1:
            w = mp.mpc(mp.re(w), side * mp.mpf(10) ** -30)
        pref = mp.gamma(l + h1) * mp.gamma(l + h2) / mp.gamma(l + h1 + h2)
        f = mp.hyp2f1(h1, h2, l + h1 + h2, w)
        energy = mp.mpc(model.e0) * (1 + mp.mpc(model.h4) * z * pref * f)
        # mirror the library's branch policy: keep the decaying side
        if side < 0 and mp.im(energy) > 0:
            return mp_energy(model, field, side=+1)
        return energy

    for alpha, fields in ((3.0, (0.12, 1.0)), (2.5, (2.0,)),
                          (2.0, (5.0,)), (1.5, (10.2, 20.0))):
        model = standard_model(alpha)
        for field in fields:
            mine = resonance(model, field)
            ref = mp_energy(model, field)
            delta_ref = float(mp.re(ref))
            gamma_ref = float(-2 * mp.im(ref))
            assert mine.delta == pytest.approx(delta_ref, rel=1e-10)
            assert mine.gamma == pytest.approx(gamma_ref, rel=1e-10)


def test_weak_field_matches_perturbation_theory(models, series_map):
    """Where the quartic term is negligible the resonance shift reduces to
    E0 + E2 eps^2."""
    for alpha in ALPHAS:
        e = [float(x) for x in series_map[alpha].e_coeffs]
        field = 0.01 * (alpha - 1.0) ** 3
        pt = resonance(models[alpha], field)
        quadratic = e[0] + e[1] * field**2
        quartic_scale = abs(e[2]) * field**4
        assert abs(pt.delta - quadratic) <= 10.0 * quartic_scale


def test_decaying_branch_selected(models):
    rng = np.random.default_rng(11)
    for alpha, model in models.items():
        top = {3.0: 1.0, 2.5: 2.0, 2.0: 5.0, 1.5: 20.0}[alpha]
        for field in rng.uniform(1e-3, top, size=12):
            assert resonance(model, float(field)).energy.imag <= 0.0


def test_sweep_grid_validation(models):
    model = models[3.0]
    with pytest.raises(OutOfRange):
        sweep(model, [])
    with pytest.raises(OutOfRange):
        sweep(model, [-0.1, 0.5])
    with pytest.raises(OutOfRange):
        sweep(model, [0.5, 0.5])
    with pytest.raises(OutOfRange):
        resonance(model, -1.0)


# ---------------------------------------------------------------------------
# tail analysis


def test_linear_tail_fit_recovers_affine_rate():
    fields = np.linspace(0.0, 12.0, 101)
    gammas = np.where(fields > 2.0, 0.6 * (fields - 2.0), 0.0)
    fit = linear_tail_fit(fake_points(fields, gammas))
    assert fit.window_fraction == 0.3
    assert fit.slope == pytest.approx(0.6, rel=1e-12)
    assert fit.intercept == pytest.approx(-1.2, rel=1e-12)
    assert fit.r_squared == pytest.approx(1.0, abs=1e-12)
    assert fit.critical_field == pytest.approx(2.0, rel=1e-12)


def test_tail_fit_requires_ionization():
    fields = np.linspace(0.0, 10.0, 50)
    with pytest.raises(NoIonization):
        linear_tail_fit(fake_points(fields, np.zeros_like(fields)))


def test_tail_fit_rejects_oscillation():
    fields = np.linspace(0.0, 10.0, 101)
    gammas = 2.0 + np.sin(5.0 * fields)
    with pytest.raises(NonlinearTail):
        linear_tail_fit(fake_points(fields, gammas))


def test_tail_fit_needs_points():
    with pytest.raises(InsufficientData):
        linear_tail_fit(fake_points([1.0], [1.0]))


def test_slope_exponent_validation():
    with pytest.raises(InsufficientData):
        slope_exponent([(1.0, 1.0), (0.5, 0.4)])
    with pytest.raises(NonPositiveSlope):
        slope_exponent([(1.0, 1.0), (0.75, 0.5), (0.5, -0.4)])
    with pytest.raises(OutOfRange):
        slope_exponent([(1.0, 1.0), (-0.75, 0.5), (0.5, 0.4)])


def test_slope_exponent_exact_power_law():
    pairs = [(p, 2.0 * p**1.4) for p in (1.0, 0.75, 0.5, 0.25)]
    assert slope_exponent(pairs) == pytest.approx(1.4, rel=1e-12)


@given(
    h3=st.floats(min_value=5.0, max_value=5e4),
    h4=st.floats(min_value=1e-32, max_value=1e-26),
    re_h=st.floats(min_value=0.2, max_value=0.9),
    im_h=st.floats(min_value=0.05, max_value=0.5),
)
@settings(max_examples=25, deadline=None)
def test_fit_inverts_arbitrary_conjugate_models(h3, h4, re_h, im_h):
    """Fitting is the exact inverse of coefficient generation for any model
    with a conjugate parameter pair."""
    planted = HypModel(
        h1=complex(re_h, -im_h), h2=complex(re_h, im_h),
        h3=complex(h3), h4=complex(h4), l=30.0, e0=-0.5, alpha=3.0,
    )
    coeffs = [v.real for v in model_coefficients(planted, 4)]
    series = EnergySeries(alpha=3.0, order=4,
                          e_coeffs=(planted.e0,) + tuple(coeffs))
    fitted = fit_model(series, l=30.0)
    assert fitted.h3.real == pytest.approx(h3, rel=1e-8)
    assert fitted.h1.real == pytest.approx(re_h, rel=1e-6, abs=1e-9)
    assert abs(fitted.h1.imag) == pytest.approx(im_h, rel=1e-6, abs=1e-9)
