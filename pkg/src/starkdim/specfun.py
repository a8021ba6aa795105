"""Complex special functions for the resummation layer.

Provides a complex Gamma function, rising factorials, the principal-branch
Gauss hypergeometric function 2F1 for complex parameters with the cut on
[1, inf), and the near-unit-argument expansion whose truncated form the
model fit consumes.

The 2F1 evaluator picks among the defining series and the standard argument
transformations (w/(w-1), 1-w, 1/w) by smallest mapped modulus.  Degenerate
parameter differences (third parameter minus the upper pair an integer; the
upper parameters separated by an integer) are handled by dedicated
logarithmic connection series or, as a last resort, by a symmetric
parameter-perturbation average.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from scipy.special import digamma as _digamma

from .errors import (
    InvalidL,
    NonConvergent,
    OnBranchCut,
    OutOfRange,
    ParameterPole,
    PoleError,
    TruncationBeyondPole,
)

MAX_TERMS = 500
SERIES_RTOL = 1e-16

_RHO_MAX = 0.90           # largest mapped modulus any series region accepts
_CUT_IMAG = 1e-300        # branch-side nudge for arguments on [1, inf)
_NEAR_INT_AB = 1e-8       # a-b this close to an integer blocks the 1/w path
_NEAR_INT_MU = 1e-9       # c-a-b this close to an integer uses the log series
_EULER_GAMMA = 0.5772156649015328606


# ---------------------------------------------------------------------------
# Gamma machinery

# Lanczos approximation, g = 607/128 with 15 coefficients: relative accuracy
# around 1e-13 on the right half-plane, reflection handles the rest.
_LANCZOS_G = 607.0 / 128.0
_LANCZOS_COEFFS = (
    0.99999999999999709182,
    57.156235665862923517,
    -59.597960355475491248,
    14.136097974741747174,
    -0.49191381609762019978,
    0.33994649984811888699e-4,
    0.46523628927048575665e-4,
    -0.98374475304879564677e-4,
    0.15808870322491248884e-3,
    -0.21026444172410488319e-3,
    0.21743961811521264320e-3,
    -0.16431810653676389022e-3,
    0.84418223983852743293e-4,
    -0.26190838401581408670e-4,
    0.36899182659531622704e-5,
)


def _nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == round(z.real)


def complex_gamma(z) -> complex:
    """Gamma function for complex argument.

    Lanczos approximation on Re z >= 1/2, reflection elsewhere; relative
    accuracy ~1e-13 for |z| <= 100 away from the poles.
    """
    z = complex(z)
    if _nonpositive_integer(z):
        raise PoleError(f"gamma pole at {z.real:g}")
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * complex_gamma(1.0 - z))
    zz = z - 1.0
    acc = _LANCZOS_COEFFS[0]
    for k in range(1, len(_LANCZOS_COEFFS)):
        acc += _LANCZOS_COEFFS[k] / (zz + k)
    t = zz + _LANCZOS_G + 0.5
    return math.sqrt(2.0 * math.pi) * t ** (zz + 0.5) * cmath.exp(-t) * acc


def _rgamma(z) -> complex:
    """Reciprocal Gamma, zero at the poles."""
    z = complex(z)
    if _nonpositive_integer(z):
        return complex(0.0)
    return 1.0 / complex_gamma(z)


def rising_factorial(x, n: int):
    """Product x (x+1) ... (x+n-1); preserves the input's arithmetic type."""
    if not isinstance(n, int) or n < 0:
        raise OutOfRange("rising factorial length must be a nonnegative integer")
    out = x * 0 + 1
    for k in range(n):
        out = out * (x + k)
    return out


# ---------------------------------------------------------------------------
# near-unit-argument expansion


@dataclass(frozen=True)
class HypParams:
    """Parameter bundle for one resummation-style 2F1 evaluation:
    upper parameters h1, h2, branch power l (> 4), argument w; the third
    hypergeometric parameter is c = h1 + h2 + l."""

    h1: complex
    h2: complex
    l: float
    w: complex

    def __post_init__(self):
        if not self.l > 4:
            raise InvalidL("branch power l must exceed 4")

    @property
    def c(self) -> complex:
        return complex(self.h1) + complex(self.h2) + self.l

    def evaluate(self, cut_side=None) -> complex:
        return gauss_2f1(self.h1, self.h2, self.c, self.w, cut_side=cut_side)


@dataclass(frozen=True)
class NearUnitExpansion:
    """Taylor data of the analytic part around w = 1 (z = w - 1): the
    coefficients of F0(z) up to the truncation order, and the leading power
    l of the non-analytic companion piece."""

    f0_coeffs: tuple
    fl_leading_power: float
    truncation_order: int


def _check_f0_order(l: float, order: int) -> None:
    if not isinstance(order, int) or order < 0:
        raise OutOfRange("order must be a nonnegative integer")
    if float(l).is_integer() and order >= l:
        raise TruncationBeyondPole(
            f"order {order} runs past the coefficient pole at k = {int(l)}"
        )


def near_unit_expansion(h1, h2, l, order: int) -> NearUnitExpansion:
    """Coefficient view of :func:`near_unit_f0`."""
    _check_f0_order(l, order)
    h1 = complex(h1)
    h2 = complex(h2)
    l = float(l)
    coeffs = []
    term = complex_gamma(l)
    coeffs.append(term)
    for k in range(order):
        term = term * (h1 + k) * (h2 + k) / ((k + 1) * (l - 1 - k))
        coeffs.append(term)
    return NearUnitExpansion(
        f0_coeffs=tuple(coeffs), fl_leading_power=float(l), truncation_order=order
    )


def near_unit_f0(h1, h2, l, z, order: int) -> complex:
    """Truncated analytic part around w = 1:
    sum_{k<=order} (h1)_k (h2)_k Gamma(l-k) z^k / k!.

    The companion non-analytic part starts at z^l and is therefore absent
    from every Taylor order below l; this partial sum is what the model fit
    matches.  For integer l the coefficients hit a Gamma pole at k = l, so
    the truncation must stay below it.
    """
    _check_f0_order(l, order)
    h1 = complex(h1)
    h2 = complex(h2)
    l = float(l)
    z = complex(z)
    term = complex_gamma(l)
    total = term
    for k in range(order):
        term = term * (h1 + k) * (h2 + k) * z / ((k + 1) * (l - 1 - k))
        total += term
    return total


# ---------------------------------------------------------------------------
# Gauss hypergeometric


class _Inapplicable(Exception):
    """Internal: the attempted connection formula is degenerate here."""


def _near_integer(z: complex, tol: float) -> bool:
    return abs(z - round(z.real)) <= tol


def _series_2f1(a, b, c, w) -> complex:
    """Defining series with term recurrence; requires |w| in the accepted
    region (or termination), else errors out after MAX_TERMS."""
    term = complex(1.0)
    total = complex(1.0)
    small = 0
    for k in range(MAX_TERMS):
        term = term * (a + k) * (b + k) * w / ((c + k) * (k + 1))
        total += term
        if abs(term) <= SERIES_RTOL * abs(total):
            small += 1
            if small >= 2:
                return total
        else:
            small = 0
    raise NonConvergent(f"hypergeometric series exhausted {MAX_TERMS} terms")


def _terminating_2f1(degree: int, a, b, c, w) -> complex:
    term = complex(1.0)
    total = complex(1.0)
    for k in range(degree):
        term = term * (a + k) * (b + k) * w / ((c + k) * (k + 1))
        total += term
    return total


def _direct(a, b, c, w) -> complex:
    return _series_2f1(a, b, c, w)


def _pfaff(a, b, c, w) -> complex:
    return (1.0 - w) ** (-a) * _series_2f1(a, c - b, c, w / (w - 1.0))


def _inf_connection(a, b, c, w) -> complex:
    if _near_integer(b - a, _NEAR_INT_AB):
        raise _Inapplicable
    iw = 1.0 / w
    t1 = (
        complex_gamma(c)
        * complex_gamma(b - a)
        * _rgamma(b)
        * _rgamma(c - a)
        * (-w) ** (-a)
        * _series_2f1(a, a - c + 1.0, a - b + 1.0, iw)
    )
    t2 = (
        complex_gamma(c)
        * complex_gamma(a - b)
        * _rgamma(a)
        * _rgamma(c - b)
        * (-w) ** (-b)
        * _series_2f1(b, b - c + 1.0, b - a + 1.0, iw)
    )
    return t1 + t2


def _unit_log_positive(a, b, m: int, w) -> complex:
    """Connection at w -> 1 when c - a - b is the integer m >= 1.

    Finite analytic head plus a logarithmic tail starting at (w-1)^m.
    """
    c = a + b + m
    xi = 1.0 - w
    v = w - 1.0
    head = (
        complex_gamma(c)
        * _rgamma(a + m)
        * _rgamma(b + m)
        * near_unit_f0(a, b, float(m), v, m - 1)
    )
    log_xi = cmath.log(xi)
    psi_a = complex(_digamma(complex(a + m)))
    psi_b = complex(_digamma(complex(b + m)))
    psi_k = -_EULER_GAMMA
    psi_km = -_EULER_GAMMA + sum(1.0 / j for j in range(1, m + 1))
    coeff = complex(1.0 / math.factorial(m))
    pow_xi = complex(1.0)
    total = complex(0.0)
    small = 0
    for k in range(MAX_TERMS):
        contrib = coeff * pow_xi * (log_xi - psi_k - psi_km + psi_a + psi_b)
        total += contrib
        if abs(contrib) <= SERIES_RTOL * abs(total):
            small += 1
            if small >= 2:
                break
        else:
            small = 0
        coeff = coeff * (a + m + k) * (b + m + k) / ((k + 1) * (k + m + 1))
        pow_xi = pow_xi * xi
        psi_a += 1.0 / (a + m + k)
        psi_b += 1.0 / (b + m + k)
        psi_k += 1.0 / (k + 1)
        psi_km += 1.0 / (k + m + 1)
    else:
        raise NonConvergent(f"logarithmic tail exhausted {MAX_TERMS} terms")
    tail = -complex_gamma(c) * _rgamma(a) * _rgamma(b) * v ** m * total
    return head + tail


def _unit_log_zero(a, b, w) -> complex:
    """Connection at w -> 1 when c - a - b = 0 (fully logarithmic)."""
    xi = 1.0 - w
    log_xi = cmath.log(xi)
    psi_a = complex(_digamma(complex(a)))
    psi_b = complex(_digamma(complex(b)))
    psi_k = -_EULER_GAMMA
    coeff = complex(1.0)
    pow_xi = complex(1.0)
    total = complex(0.0)
    small = 0
    for k in range(MAX_TERMS):
        contrib = coeff * pow_xi * (2.0 * psi_k - psi_a - psi_b - log_xi)
        total += contrib
        if abs(contrib) <= SERIES_RTOL * abs(total):
            small += 1
            if small >= 2:
                break
        else:
            small = 0
        coeff = coeff * (a + k) * (b + k) / ((k + 1) * (k + 1))
        pow_xi = pow_xi * xi
        psi_a += 1.0 / (a + k)
        psi_b += 1.0 / (b + k)
        psi_k += 1.0 / (k + 1)
    else:
        raise NonConvergent(f"logarithmic series exhausted {MAX_TERMS} terms")
    return complex_gamma(a + b) * _rgamma(a) * _rgamma(b) * total


def _unit_connection(a, b, c, w) -> complex:
    mu = c - a - b
    xi = 1.0 - w
    if _near_integer(mu, _NEAR_INT_MU):
        m = int(round(mu.real))
        if m < 0:
            # Euler transformation flips the sign of the integer difference
            return xi ** mu * _unit_connection(c - a, c - b, c, w)
        if m == 0:
            return _unit_log_zero(a, b, w)
        return _unit_log_positive(a, b, m, w)
    t1 = (
        complex_gamma(c)
        * complex_gamma(mu)
        * _rgamma(c - a)
        * _rgamma(c - b)
        * _series_2f1(a, b, 1.0 - mu, xi)
    )
    t2 = (
        complex_gamma(c)
        * complex_gamma(-mu)
        * _rgamma(a)
        * _rgamma(b)
        * xi ** mu
        * _series_2f1(c - a, c - b, 1.0 + mu, xi)
    )
    return t1 + t2


_REGIONS = (_direct, _pfaff, _unit_connection, _inf_connection)

# the reflection series may need many terms near its convergence edge
_REFLECTION_MAX_TERMS = 4000


def _reflection_series(a, b, c, x):
    """2F1(c-a, c-b; mu+1; 1-x) for real x > 1, with mu = c - a - b.

    None when the series does not converge within the term budget (the
    far regime where the caller's generic value is already accurate).
    """
    big_a = c - a
    big_c = c - a - b + 1.0
    # the Pfaff form: its argument stays in (0, 1) for every x > 1 and the
    # prefactor absorbs the near-total cancellation the raw series suffers
    # for moderate x
    t = complex((x - 1.0) / x)
    pa, pb = big_a, 1.0 - a
    prefactor = complex(x) ** (-big_a)
    term = complex(1.0)
    total = complex(1.0)
    small_streak = 0
    for k in range(_REFLECTION_MAX_TERMS):
        term *= (pa + k) * (pb + k) / ((big_c + k) * (k + 1.0)) * t
        total += term
        if abs(term) <= SERIES_RTOL * abs(total):
            small_streak += 1
            if small_streak >= 2:
                return prefactor * total
        else:
            small_streak = 0
    return None


def _cut_imag_part(a, b, c, x):
    """Im 2F1(a, b; c; x + i0) on the cut, in closed form.

    Applies when the function is real below the cut (real c with the
    upper parameters real or a conjugate pair), so the two cut sides are
    complex conjugates.  Returns None when inapplicable or when the
    reflection series does not converge.
    """
    if c.imag != 0.0:
        return None
    if not (a == b.conjugate() or (a.imag == 0.0 and b.imag == 0.0)):
        return None
    mu = (c - a - b).real
    if _nonpositive_integer(complex(mu + 1.0)):
        return None
    series = _reflection_series(a, b, c, x)
    if series is None:
        return None
    scale = (
        math.pi
        * (x - 1.0) ** mu
        * complex_gamma(c)
        * _rgamma(mu + 1.0)
        / (complex_gamma(a) * complex_gamma(b))
    )
    return (scale * series).real


def gauss_2f1(a, b, c, w, cut_side=None) -> complex:
    """Principal-branch Gauss hypergeometric function 2F1(a, b; c; w).

    The branch cut runs along [1, inf).  For real w > 1 the caller must pick
    a side: ``cut_side=+1`` evaluates the limit from Im w > 0, ``-1`` from
    Im w < 0.  Values off the cut need no side.  Accuracy degrades when
    c - a - b sits within about 1e-6 of a nonzero integer without being
    within 1e-9 of it; the evaluation regions used by the resummation layer
    never do that.
    """
    a = complex(a)
    b = complex(b)
    c = complex(c)
    w = complex(w)
    if _nonpositive_integer(c):
        raise ParameterPole(f"third parameter {c} is a non-positive integer")
    if (a.real, a.imag) > (b.real, b.imag):
        a, b = b, a
    # a polynomial case is exact for every argument, cut included
    if _nonpositive_integer(b):
        return _terminating_2f1(int(-b.real), a, b, c, w)
    if _nonpositive_integer(a):
        return _terminating_2f1(int(-a.real), a, b, c, w)
    if w == 0:
        return complex(1.0)
    if w.imag == 0.0:
        x = w.real
        if x == 1.0:
            mu = c - a - b
            if mu.real <= 0:
                raise NonConvergent("2F1 diverges at w = 1 for Re(c-a-b) <= 0")
            return (
                complex_gamma(c)
                * complex_gamma(mu)
                * _rgamma(c - a)
                * _rgamma(c - b)
            )
        if x > 1.0:
            if cut_side not in (1, -1):
                raise OnBranchCut(
                    "argument on the cut [1, inf): pass cut_side=+1 or -1"
                )
            w = complex(x, cut_side * _CUT_IMAG)
            on_cut = True
        else:
            on_cut = False
    else:
        on_cut = False
    candidates = sorted(
        (
            (abs(w), 0),
            (abs(w / (w - 1.0)), 1),
            (abs(1.0 - w), 2),
            (abs(1.0 / w), 3),
        )
    )
    value = None
    blocked = False
    for rho, region in candidates:
        if rho > _RHO_MAX:
            continue
        try:
            value = _REGIONS[region](a, b, c, w)
            break
        except _Inapplicable:
            blocked = True
    if value is None:
        if not blocked:
            raise NonConvergent(f"no series region applies at w = {w}")
        # every usable region is parameter-degenerate: symmetric nudge of
        # the upper parameters cancels the first-order perturbation error
        d1, d2 = 4e-6, 3e-6
        va = gauss_2f1(a + d1, b - d2, c, w)
        vb = gauss_2f1(a - d1, b + d2, c, w)
        value = 0.5 * (va + vb)
    if on_cut:
        # every connection formula builds Im F on the cut from cancelling
        # O(|F|) complex pieces; the reflection formula gives it directly
        # and keeps tiny imaginary parts at full relative accuracy
        im = _cut_imag_part(a, b, c, w.real)
        if im is not None:
            value = complex(value.real, cut_side * im)
    return value
