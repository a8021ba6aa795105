"""Hypergeometric continuation of the weak-field energy series.

The divergent even-order series is matched to a four-parameter model whose
argument is shifted by one: the resonance energy is

    E(field) = e0 * (1 + h4 z G 2F1(h1, h2; h1+h2+l; 1 + h3 z)),

with z = (field/4)^2, G the Gamma-prefactor ratio at the branch power l,
and (h1..h4) fixed in closed form by the coefficient ratios of the series
through its fourth nonzero order.  Because the model's argument sits past
the cut for every positive field, the continuation acquires an imaginary
part at all field strengths; its physical branch (decaying states) is the
one with Im E <= 0.

Also here: field sweeps, the linear high-field tail fit that defines the
ionization onset (critical field), and the power-law exponent of tail
slopes across dimensions.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .coeffs import EnergySeries, energy_series
from .errors import (
    DegenerateSeries,
    InsufficientData,
    InvalidL,
    NoIonization,
    NonlinearTail,
    NonPositiveSlope,
    NumericalError,
    OutOfRange,
)
from .specfun import complex_gamma, gauss_2f1, rising_factorial

DEFAULT_L = 30.0

# sweep ranges (alpha, highest field) bracketing each ionization onset;
# the alpha=1.5 tail is still curving at 12, the linear regime needs ~20
STANDARD_SWEEP_RANGES = (
    (3.0, 1.0),
    (2.5, 2.0),
    (2.0, 5.0),
    (1.5, 20.0),
)


@dataclass(frozen=True)
class HypModel:
    """Fitted continuation parameters plus the series context they encode."""

    h1: complex
    h2: complex
    h3: complex
    h4: complex
    l: float
    e0: float
    alpha: float

    def __post_init__(self):
        if not self.l > 4:
            raise InvalidL("branch power l must exceed 4")


@dataclass(frozen=True)
class ResonancePoint:
    """Complex resonance energy at one field strength."""

    field: float
    energy: complex

    @property
    def delta(self) -> float:
        """Stark-shifted level position."""
        return self.energy.real

    @property
    def gamma(self) -> float:
        """Ionization decay rate (nonnegative; zero at zero field)."""
        return -2.0 * self.energy.imag + 0.0


def model_coefficients(model: HypModel, count: int = 4):
    """Even-order energy coefficients implied by the model.

    Returns [E_2, E_4, ...] (length ``count``) from the Taylor data of the
    analytic part of the continuation; used for fit round-trips.
    """
    out = []
    for k in range(count):
        tk = (
            model.h4
            * model.h3 ** k
            * rising_factorial(model.h1, k)
            * rising_factorial(model.h2, k)
            * complex_gamma(model.l - k)
            / math.factorial(k)
        )
        out.append(model.e0 * tk / 16.0 ** (k + 1))
    return out


def fit_model(series: EnergySeries, l: float = DEFAULT_L) -> HypModel:
    """Fix the four model parameters from E_2..E_8 in closed form.

    Scaled coefficients t_k = E_{2(k+1)} 16^(k+1) / E_0 obey
    t_{k+1}/t_k * (k+1)(l-k-1) = h3 (P + k S + k^2) with S = h1 + h2 and
    P = h1 h2, so three consecutive ratios determine (h3, S, P) linearly;
    h1, h2 are the roots of x^2 - S x + P and h4 = t_0 / Gamma(l).  The
    result is verified by re-expansion before it is returned.
    """
    if not l > 4:
        raise InvalidL("branch power l must exceed 4")
    if series.order < 4:
        raise InsufficientData("fit needs series coefficients through order 4")
    e = [float(x) for x in series.e_coeffs[:5]]
    e0 = e[0]
    if e0 == 0:
        raise DegenerateSeries("zero leading coefficient")
    t = [e[k + 1] * 16.0 ** (k + 1) / e0 for k in range(4)]
    if any(tk == 0 for tk in t):
        raise DegenerateSeries("vanishing series coefficient: ratios undefined")
    rho = [t[k + 1] / t[k] for k in range(3)]
    r = [(k + 1) * rho[k] * (l - k - 1) for k in range(3)]
    h3 = 0.5 * (r[0] - 2.0 * r[1] + r[2])
    scale = max(abs(x) for x in r)
    if abs(h3) <= 1e-14 * max(scale, 1.0):
        raise DegenerateSeries("ratio system is singular (h3 ~ 0)")
    s_sum = (r[1] - r[0] - h3) / h3
    prod = r[0] / h3
    root = cmath.sqrt(complex(s_sum * s_sum - 4.0 * prod))
    h1 = 0.5 * (s_sum - root)
    h2 = 0.5 * (s_sum + root)
    if (h1.real, h1.imag) > (h2.real, h2.imag):
        h1, h2 = h2, h1
    h4 = t[0] / complex_gamma(l)
    model = HypModel(
        h1=h1,
        h2=h2,
        h3=complex(h3),
        h4=h4,
        l=float(l),
        e0=e0,
        alpha=float(series.alpha),
    )
    back = model_coefficients(model, 4)
    for k in range(4):
        if abs(back[k] - e[k + 1]) > 1e-10 * abs(e[k + 1]):
            raise DegenerateSeries(
                f"fit round-trip failed at order {2 * (k + 1)}:"
                f" {back[k]} vs {e[k + 1]}"
            )
    return model


def fit_round_trip_residual(model: HypModel, series: EnergySeries) -> float:
    """Largest relative mismatch between the model's re-expansion and the
    series coefficients E_2..E_8."""
    back = model_coefficients(model, 4)
    worst = 0.0
    for k in range(4):
        target = float(series.e_coeffs[k + 1])
        worst = max(worst, abs(back[k] - target) / abs(target))
    return worst


def _model_energy(model: HypModel, field: float, cut_side: int) -> complex:
    z = (field / 4.0) ** 2
    w = model.h3 * z + 1.0
    c = model.h1 + model.h2 + model.l
    pref = (
        complex_gamma(model.l + model.h1)
        * complex_gamma(model.l + model.h2)
        / complex_gamma(model.l + model.h1 + model.h2)
    )
    if w.imag == 0.0:
        f = gauss_2f1(model.h1, model.h2, c, w.real, cut_side=cut_side)
    else:
        f = gauss_2f1(model.h1, model.h2, c, w)
    return model.e0 * (1.0 + model.h4 * z * pref * f)


def resonance(model: HypModel, field: float) -> ResonancePoint:
    """Complex resonance energy at one field strength (field >= 0).

    Zero field returns e0 exactly.  On the cut the decaying side
    (Im E <= 0) is selected automatically.
    """
    field = float(field)
    if not field >= 0.0:
        raise OutOfRange("field must be nonnegative")
    if field == 0.0:
        return ResonancePoint(field=0.0, energy=complex(model.e0))
    energy = _model_energy(model, field, cut_side=-1)
    if energy.imag > 0.0:
        energy = _model_energy(model, field, cut_side=+1)
    if energy.imag > 0.0:
        if energy.imag <= 1e-15 * abs(energy):
            energy = complex(energy.real, 0.0)
        else:
            raise NumericalError(
                f"no decaying branch at field {field}: Im E = {energy.imag}"
            )
    return ResonancePoint(field=field, energy=energy)


def sweep(model: HypModel, fields) -> list:
    """Pointwise :func:`resonance` over a strictly increasing nonnegative
    field grid, order preserved."""
    grid = [float(x) for x in fields]
    if not grid:
        raise OutOfRange("field grid is empty")
    if grid[0] < 0.0:
        raise OutOfRange("field grid must be nonnegative")
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise OutOfRange("field grid must be strictly increasing")
    return [resonance(model, x) for x in grid]


# ---------------------------------------------------------------------------
# derived quantities


@dataclass(frozen=True)
class LinearTailFit:
    """Linear fit of the decay rate over a trailing window of the sweep."""

    window_fraction: float
    field_lo: float
    field_hi: float
    slope: float
    intercept: float
    r_squared: float
    n_points: int

    @property
    def critical_field(self) -> float:
        """Field-axis intercept: the effective ionization onset."""
        return -self.intercept / self.slope


_WINDOW_FRACTIONS = (0.3, 0.2, 0.4, 0.5)
_GAMMA_FLOOR = 1e-15
_R2_PREFERRED = 0.99
_R2_MINIMUM = 0.95


def _fit_window(points, fraction: float):
    lo = points[-1].field - fraction * (points[-1].field - points[0].field)
    sel = [pt for pt in points if pt.field >= lo and pt.gamma > 0.0]
    if len(sel) < 8:
        return None
    x = np.array([pt.field for pt in sel])
    y = np.array([pt.gamma for pt in sel])
    slope, intercept = np.polyfit(x, y, 1)
    resid = y - (slope * x + intercept)
    total = y - y.mean()
    ss_tot = float(total @ total)
    if ss_tot == 0.0:
        return None
    r2 = 1.0 - float(resid @ resid) / ss_tot
    return LinearTailFit(
        window_fraction=fraction,
        field_lo=float(sel[0].field),
        field_hi=float(sel[-1].field),
        slope=float(slope),
        intercept=float(intercept),
        r_squared=r2,
        n_points=len(sel),
    )


def linear_tail_fit(points) -> LinearTailFit:
    """Best linear description of the high-field decay-rate tail.

    Tries a trailing window of 30% of the swept range first and keeps it if
    its coefficient of determination reaches 0.99; otherwise the 20/40/50%
    windows are also fitted and the best one wins.  Windows need at least 8
    points with positive rate.
    """
    pts = sorted(points, key=lambda pt: pt.field)
    if len(pts) < 2:
        raise InsufficientData("tail fit needs a swept grid")
    if all(pt.gamma < _GAMMA_FLOOR for pt in pts):
        raise NoIonization("no decay rate above threshold anywhere on the grid")
    fits = []
    for fraction in _WINDOW_FRACTIONS:
        fit = _fit_window(pts, fraction)
        if fit is None:
            continue
        if fraction == _WINDOW_FRACTIONS[0] and fit.r_squared >= _R2_PREFERRED:
            fits = [fit]
            break
        fits.append(fit)
    if not fits:
        raise InsufficientData(
            "fewer than 8 usable points in every candidate window"
        )
    best = max(fits, key=lambda f: f.r_squared)
    if best.slope <= 0.0 or best.r_squared < _R2_MINIMUM:
        raise NonlinearTail(
            f"tail is not acceptably linear (R^2 = {best.r_squared:.4f},"
            f" slope = {best.slope:.3e})"
        )
    return best


def critical_field(points) -> float:
    """Ionization onset: field-axis intercept of the linear tail fit."""
    return linear_tail_fit(points).critical_field


def slope_exponent(pairs) -> float:
    """Power-law exponent relating high-field tail slopes to the channel
    scale p: least-squares fit of log(slope) against log(p)."""
    data = [(float(p), float(s)) for p, s in pairs]
    if len(data) < 3 or len({p for p, _ in data}) < 3:
        raise InsufficientData("need at least 3 pairs with distinct p")
    if any(p <= 0.0 for p, _ in data):
        raise OutOfRange("channel scale p must be positive")
    if any(s <= 0.0 for _, s in data):
        raise NonPositiveSlope("tail slopes must be positive")
    x = np.log([p for p, _ in data])
    y = np.log([s for _, s in data])
    exponent, _ = np.polyfit(x, y, 1)
    return float(exponent)


def standard_model(alpha, order: int = 4, l: float = DEFAULT_L) -> HypModel:
    """Exact series at ``alpha`` fitted to the default continuation model."""
    return fit_model(energy_series(alpha, order), l)
