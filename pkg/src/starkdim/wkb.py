"""Semiclassical barrier analysis for field ionization.

The separated equation along the downhill parabolic coordinate sees an
effective potential with a classically forbidden region between the
Coulomb well and the field-lowered continuum.  This module locates the
classical turning points, evaluates the tunneling exponent by quadrature,
and provides the closed-form low-field transmittance estimate together
with a calibrated ionization-rate curve for comparison against the
resummed model.

Sign convention: the potential returned by ``barrier_potential`` is
positive inside the forbidden region, so the transmittance reads
T = exp(-2 * integral of sqrt(U) between the turning points).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.optimize import brentq

from .errors import DomainError, IntegrationFailure, NoBarrier, NoReference

# Gamma values below this are too weak to anchor a calibration
CALIBRATION_FLOOR = 1e-30

# log-spaced (alpha, low field, high field) grids for rate comparisons;
# each bracket spans roughly a quarter of the critical field up to three
# times it, so the calibration anchor sits where the resummed rate still
# tracks the tunneling exponential
LANDAU_COMPARISON_RANGES = (
    (3.0, 0.03, 0.4),
    (2.5, 0.1, 1.2),
    (2.0, 0.4, 5.0),
    (1.5, 3.0, 30.0),
)

_EXPONENT_ABS_TOL = 1e-10
_QUAD_NODE_COUNTS = (64, 128, 256, 512, 1024, 2048, 4096)
_LEGENDRE_CACHE: dict = {}


def _check_p(p: float) -> float:
    p = float(p)
    if not 0.0 < p < 2.0:
        raise DomainError(f"barrier shape requires 0 < p < 2, got p={p}")
    return p


def _check_field(field: float) -> float:
    field = float(field)
    if field <= 0.0:
        raise DomainError(f"field must be positive, got {field}")
    return field


@dataclass(frozen=True)
class BarrierModel:
    """Turning points and transmittance of the ionization barrier."""

    p: float
    field: float
    y1: float
    y2: float
    transmittance: float

    def __post_init__(self):
        _check_p(self.p)
        _check_field(self.field)
        if not 0.0 < self.y1 < self.y2:
            raise ValueError(f"turning points must satisfy 0 < y1 < y2, "
                             f"got ({self.y1}, {self.y2})")
        # deep barriers underflow exp() to 0.0, so 0 is admitted
        if not 0.0 <= self.transmittance <= 1.0:
            raise ValueError(f"transmittance out of [0, 1]: {self.transmittance}")


def barrier_potential(p: float, field: float, y: float) -> float:
    """Effective potential along the downhill coordinate, positive inside
    the forbidden region."""
    p = _check_p(p)
    field = _check_field(field)
    y = float(y)
    if y <= 0.0:
        raise DomainError(f"coordinate must be positive, got y={y}")
    return -0.25 * (2.0 / y + field * y - 1.0 / p**2 + p * (2.0 - p) / y**2)


def _cubic(p: float, field: float):
    """U(y) = -f(y) / (4 y^2) with f the returned cubic; U > 0 iff f < 0."""

    def f(y):
        return field * y**3 - y**2 / p**2 + 2.0 * y + p * (2.0 - p)

    def fprime(y):
        return 3.0 * field * y**2 - 2.0 * y / p**2 + 2.0

    return f, fprime


def _polish(y: float, f, fprime) -> float:
    for _ in range(3):
        d = fprime(y)
        if d == 0.0:
            break
        y -= f(y) / d
    return y


def turning_points(p: float, field: float) -> tuple:
    """Both positive zeros of the barrier potential, inner first."""
    p = _check_p(p)
    field = _check_field(field)
    f, fprime = _cubic(p, field)
    # f has a local minimum at the larger root of f'; the barrier exists
    # iff that minimum is negative
    disc = 4.0 / p**4 - 24.0 * field
    if disc <= 0.0:
        raise NoBarrier(f"no forbidden region at p={p}, field={field}")
    y_min = (2.0 / p**2 + math.sqrt(disc)) / (6.0 * field)
    if f(y_min) >= 0.0:
        raise NoBarrier(f"field {field} is above the over-barrier "
                        f"threshold for p={p}")
    y1 = brentq(f, 0.0, y_min, xtol=1e-13)
    hi = 2.0 * y_min
    while f(hi) <= 0.0:
        hi *= 2.0
    y2 = brentq(f, y_min, hi, xtol=1e-13)
    return _polish(y1, f, fprime), _polish(y2, f, fprime)


def _gauss_nodes(n: int):
    if n not in _LEGENDRE_CACHE:
        _LEGENDRE_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _LEGENDRE_CACHE[n]


def wkb_exponent(p: float, field: float) -> float:
    """The positive exponent 2 * integral of sqrt(U) across the barrier.

    The integrand has inverse-square-root singularities at both turning
    points; the substitution y = mid + half*sin(theta) absorbs them, and
    Gauss-Legendre quadrature with doubling node counts converges the
    result to 1e-10 absolute.
    """
    p = _check_p(p)
    field = _check_field(field)
    y1, y2 = turning_points(p, field)
    # third (negative) root of the cubic from the root sum
    y3 = 1.0 / (field * p**2) - y1 - y2
    mid = 0.5 * (y1 + y2)
    half = 0.5 * (y2 - y1)
    scale = math.sqrt(field) * half**2

    def integral(n: int) -> float:
        x, w = _gauss_nodes(n)
        theta = 0.5 * math.pi * x
        y = mid + half * np.sin(theta)
        vals = np.cos(theta) ** 2 * np.sqrt(y - y3) / y
        return scale * 0.5 * math.pi * float(w @ vals)

    prev = integral(_QUAD_NODE_COUNTS[0])
    for n in _QUAD_NODE_COUNTS[1:]:
        cur = integral(n)
        if abs(cur - prev) <= _EXPONENT_ABS_TOL:
            return cur
        prev = cur
    raise IntegrationFailure(
        f"barrier integral did not converge to {_EXPONENT_ABS_TOL} "
        f"at p={p}, field={field}")


def wkb_transmittance(p: float, field: float) -> float:
    """Numeric barrier transmittance; underflows to 0.0 for deep barriers."""
    return math.exp(-wkb_exponent(p, field))


def barrier_model(p: float, field: float) -> BarrierModel:
    y1, y2 = turning_points(p, field)
    return BarrierModel(p=float(p), field=float(field), y1=y1, y2=y2,
                        transmittance=wkb_transmittance(p, field))


def zero_field_inner_turning_point(p: float) -> float:
    """Inner turning point in the zero-field limit, p^2 + p*sqrt(2p)."""
    p = _check_p(p)
    return p**2 + p * math.sqrt(2.0 * p)


def landau_log_transmittance(p: float, field: float) -> float:
    """Logarithm of the closed-form low-field transmittance estimate."""
    p = _check_p(p)
    field = _check_field(field)
    y1 = zero_field_inner_turning_point(p)
    return (p * math.log(4.0 / (p**2 * field * y1))
            - 2.0 / (3.0 * p**3 * field) + y1 / p)


def landau_closed_form(p: float, field: float) -> float:
    """Closed-form low-field transmittance; underflows to 0.0 when tiny."""
    return math.exp(landau_log_transmittance(p, field))


def keldysh_exponent(p: float) -> float:
    """Universal tunneling exponent coefficient from the ionization
    potential 1/(2 p^2); algebraically equal to 2/(3 p^3)."""
    p = _check_p(p)
    ip = 1.0 / (2.0 * p**2)
    return 2.0 * (2.0 * ip) ** 1.5 / 3.0


def pick_calibration_reference(reference: Sequence) -> object:
    """Lowest-field reference point strong enough to calibrate against."""
    usable = [pt for pt in reference if pt.gamma > CALIBRATION_FLOOR]
    if not usable:
        raise NoReference(
            f"no reference point with gamma above {CALIBRATION_FLOOR}")
    return min(usable, key=lambda pt: pt.field)


def landau_calibrated_rate(p: float, fields: Sequence[float],
                           reference: Sequence) -> list:
    """Closed-form rate curve scaled by one constant fixed at the lowest
    usable reference point; returns (field, rate) pairs."""
    p = _check_p(p)
    ref = pick_calibration_reference(reference)
    log_c = math.log(ref.gamma) - landau_log_transmittance(p, ref.field)
    out = []
    for field in fields:
        log_rate = log_c + landau_log_transmittance(p, field)
        out.append((float(field), math.exp(log_rate)))
    return out
