"""Dispersion moments: the rate integral must reproduce the series."""

import pytest

from starkdim import (
    DispersionEntry,
    DispersionReport,
    dispersion_coefficient,
    dispersion_report,
    energy_series,
)
from starkdim.errors import DomainError, NotValid, OutOfRange


def entry(n, rel=0.01):
    return DispersionEntry(n=n, series_value=-1.0, integral_value=-1.0,
                           relative_error=rel, upper_cutoff=100.0,
                           node_count=200)


def test_moment_index_validation(models):
    with pytest.raises(NotValid):
        dispersion_coefficient(models[3.0], 1)
    with pytest.raises(NotValid):
        dispersion_coefficient(models[3.0], 2.5)


def test_report_input_validation(models, series_map):
    with pytest.raises(OutOfRange):
        dispersion_report(models[3.0], energy_series(3.0, 3))
    with pytest.raises(DomainError):
        dispersion_report(models[3.0], series_map[2.5])


def test_report_shape_validation():
    with pytest.raises(ValueError):
        DispersionReport(alpha=3.0, entries=(entry(2), entry(3)))
    DispersionReport(alpha=3.0, entries=(entry(2), entry(3), entry(4)))


def test_three_dimensional_report(models, series_map):
    """The resummed rate integral reproduces the exact coefficients for
    alpha = 3; explicit bounds match the contract on each moment."""
    report = dispersion_report(models[3.0], series_map[3.0])
    assert report.alpha == 3.0
    assert [e.n for e in report.entries] == [2, 3, 4]
    by_n = {e.n: e for e in report.entries}
    assert by_n[2].series_value == pytest.approx(-3555.0 / 64.0, rel=1e-12)
    limits = {2: 0.05, 3: 0.05, 4: 0.10}
    for n, e in by_n.items():
        assert e.integral_value < 0.0
        assert e.relative_error < limits[n]
        assert e.upper_cutoff > 0.0
        assert e.node_count > 0


def test_moment_matches_series_directly(models, series_map):
    value = dispersion_coefficient(models[3.0], 2)
    exact = float(series_map[3.0].e_coeffs[2])
    assert value == pytest.approx(exact, rel=0.05)
