"""Rational realizations of the four fractional-order controller families.

Each builder accepts exact numeric parameters or leaves them symbolic
(pass None) and produces a normalized TransferFunction. Irrational scalar
prefactors (Kp^mu, Kc*x^alpha) are carried as opaque gain tags, never
expanded into coefficients.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import polys
from .approx import GainTag, TransferFunction, make_tf, pade
from .errors import ValidationError
from .exact import ParamPoly
from .series import PowerSeries, binomial_series, leadlag_kernel_series

_SIGNS = ("integrator", "differentiator")
_RANGES = ("low", "high")


def _rat(value, name: str) -> Fraction:
    """Exact scalar from user input; floats are read as printed decimals."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(str(value))
    if isinstance(value, str):
        return Fraction(value)
    raise ValidationError(f"{name} must be a number, got {type(value).__name__}")


def _rat_or_none(value, name: str) -> Fraction | None:
    return None if value is None else _rat(value, name)


@dataclass(frozen=True)
class Differintegrator:
    """s^(-lam) (integrator) or s^(+lam) (differentiator) to approximate.

    freq_range picks the generating function: "low" expands (1 + 1/s)^lam
    about s = infinity, "high" expands (1 + sT)^(-lam) about s = 0.
    """

    lam: Fraction | None
    sign: str = "integrator"
    freq_range: str = "low"
    T: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "lam", _rat_or_none(self.lam, "lam"))
        object.__setattr__(self, "T", _rat(self.T, "T"))
        if self.sign not in _SIGNS:
            raise ValidationError(f"sign must be one of {_SIGNS}")
        if self.freq_range not in _RANGES:
            raise ValidationError(f"freq_range must be one of {_RANGES}")
        if self.T <= 0:
            raise ValidationError("T must be positive")
        if self.lam is not None and not 0 < self.lam <= 1:
            raise ValidationError("lam must lie in (0, 1]")


@dataclass(frozen=True)
class FOPID:
    """Kp + Ki/s^lam + Kd*s^mu with fractional integro-differential orders."""

    Kp: Fraction | None
    Ki: Fraction | None
    Kd: Fraction | None
    lam: Fraction | None
    mu: Fraction | None

    def __post_init__(self):
        for name in ("Kp", "Ki", "Kd", "lam", "mu"):
            object.__setattr__(self, name, _rat_or_none(getattr(self, name), name))
        for name in ("Kp", "Ki", "Kd"):
            value = getattr(self, name)
            if value is not None and value < 0:
                raise ValidationError(f"{name} must be non-negative")
        for name in ("lam", "mu"):
            value = getattr(self, name)
            if value is not None and not 0 < value < 2:
                raise ValidationError(f"{name} must lie in (0, 2)")


@dataclass(frozen=True)
class FOPDBracket:
    """(Kp + Kd*s)^mu, the bracketed fractional-order PD structure."""

    Kp: Fraction | None
    Kd: Fraction | None
    mu: Fraction | None

    def __post_init__(self):
        for name in ("Kp", "Kd", "mu"):
            object.__setattr__(self, name, _rat_or_none(getattr(self, name), name))
        if self.Kp is not None and self.Kp == 0:
            raise ValidationError("not expandable about s=0")
        for name in ("Kp", "Kd"):
            value = getattr(self, name)
            if value is not None and value <= 0:
                raise ValidationError(f"{name} must be positive")
        if self.mu is not None and not 0 < self.mu < 2:
            raise ValidationError("mu must lie in (0, 2)")


@dataclass(frozen=True)
class LeadLag:
    """Kc*x^alpha*((1 + lam*s)/(1 + x*lam*s))^alpha with 0 < x < 1."""

    Kc: Fraction | None
    lam: Fraction | None
    x: Fraction | None
    alpha: Fraction | None

    def __post_init__(self):
        for name in ("Kc", "lam", "x", "alpha"):
            object.__setattr__(self, name, _rat_or_none(getattr(self, name), name))
        if self.Kc is not None and self.Kc <= 0:
            raise ValidationError("Kc must be positive")
        if self.lam is not None and self.lam <= 0:
            raise ValidationError("lam must be positive")
        if self.x is not None and not 0 < self.x <= 1:
            raise ValidationError("x must lie in (0, 1]")
        if self.alpha is not None and not 0 <= self.alpha <= 1:
            raise ValidationError("alpha must lie in [0, 1]")


def _check_order(order: int):
    if not isinstance(order, int) or order < 1:
        raise ValidationError("order must be a positive integer")


def _integrator_tf(lam, freq_range: str, T, order: int) -> TransferFunction:
    """[order/order] realization of s^(-lam); lam exact or a symbol name.

    Shared by the public differintegrator entry point (lam in (0,1]) and
    the FOPID assembly (lam in (0,2)); no range check here.
    """
    n = order
    if freq_range == "low":
        # expand (1 + v)^lam in v = 1/s, then clear s^n from both sides
        approx_v = pade(binomial_series(lam, 2 * n), n, n)
        width = max(len(approx_v.num), len(approx_v.den))
        num = polys.reverse(approx_v.num, width)
        den = polys.reverse(approx_v.den, width)
        return make_tf(num, den, notes=approx_v.notes)
    exponent = -ParamPoly.var(lam) if isinstance(lam, str) else -lam
    base = binomial_series(exponent, 2 * n)
    scaled = PowerSeries(tuple(c * T**k for k, c in enumerate(base.coeffs)))
    return pade(scaled, n, n)


def realize_differintegrator(spec: Differintegrator, order: int) -> TransferFunction:
    """Numeric [n/n] realization of the differintegrator."""
    _check_order(order)
    if spec.lam is None:
        raise ValidationError("lam must be numeric here; see symbolic_differintegrator")
    tf = _integrator_tf(spec.lam, spec.freq_range, spec.T, order)
    if spec.sign == "differentiator":
        tf = tf.reciprocal()
    return tf


def symbolic_differintegrator(
    freq_range: str, order: int, sign: str = "integrator"
) -> TransferFunction:
    """[n/n] realization with the fractional order kept as the symbol lam.

    The high-range form is produced at T = 1. Orders beyond 5 work but are
    marked as exceeding the validated range.
    """
    _check_order(order)
    if freq_range not in _RANGES:
        raise ValidationError(f"freq_range must be one of {_RANGES}")
    if sign not in _SIGNS:
        raise ValidationError(f"sign must be one of {_SIGNS}")
    tf = _integrator_tf("lam", freq_range, Fraction(1), order)
    if sign == "differentiator":
        tf = tf.reciprocal()
    if order > 5:
        tf = tf.with_notes("beyond-validated-order")
    return tf


def _gain_sym(value, name: str):
    """The exact value when numeric, else the named symbol."""
    return ParamPoly.var(name) if value is None else value


def realize_fopid(spec: FOPID, freq_range: str, order: int) -> TransferFunction:
    """Kp + Ki*Q_int(lam) + Kd*Q_diff(mu) over the common denominator.

    Q_int is the [n/n] integrator realization at lam, Q_diff the exact
    reciprocal construction at mu; the result has degree 2n (less when a
    zero gain drops a branch).
    """
    _check_order(order)
    if freq_range not in _RANGES:
        raise ValidationError(f"freq_range must be one of {_RANGES}")
    kp = _gain_sym(spec.Kp, "Kp")
    ki = _gain_sym(spec.Ki, "Ki")
    kd = _gain_sym(spec.Kd, "Kd")
    with_i = spec.Ki is None or spec.Ki != 0
    with_d = spec.Kd is None or spec.Kd != 0
    if not with_i and not with_d:
        return make_tf((kp,), (1,))
    lam = "lam" if spec.lam is None else spec.lam
    mu = "mu" if spec.mu is None else spec.mu
    num: tuple = ()
    den: tuple = (Fraction(1),)
    if with_i:
        q_int = _integrator_tf(lam, freq_range, Fraction(1), order)
        num = polys.scale(q_int.num, ki)
        den = q_int.den
    if with_d:
        q_diff = _integrator_tf(mu, freq_range, Fraction(1), order).reciprocal()
        num = polys.add(polys.mul(num, q_diff.den), polys.scale(polys.mul(q_diff.num, den), kd))
        den = polys.mul(den, q_diff.den)
    num = polys.add(num, polys.scale(den, kp))
    return make_tf(num, den)


def realize_fopd_bracket(spec: FOPDBracket, order: int) -> TransferFunction:
    """[n/n]-based realization of (Kp + Kd*s)^mu.

    mu splits into integer and fractional parts; the fractional part is
    the Pade approximant of (1 + (Kd/Kp)s)^frac and the integer part an
    exact polynomial factor. The scalar Kp^mu stays rational only for
    integer mu; otherwise it rides along as a gain tag.
    """
    _check_order(order)
    numeric = spec.Kp is not None and spec.Kd is not None and spec.mu is not None
    if numeric:
        mu_int = int(spec.mu)  # mu in (0,2): floor is 0 or 1
        mu_frac = spec.mu - mu_int
        ratio = spec.Kd / spec.Kp
        if mu_frac == 0:
            num: tuple = (Fraction(1),)
            for _ in range(mu_int):
                num = polys.mul(num, (spec.Kp, spec.Kd))
            return make_tf(num, (1,))
        core = pade(_scaled_binomial(mu_frac, ratio, order), order, order)
        num = core.num
        for _ in range(mu_int):
            num = polys.mul(num, (Fraction(1), ratio))
        gain = GainTag("Kp^mu", float(spec.Kp) ** float(spec.mu))
        return make_tf(num, core.den, gain=gain, notes=core.notes)
    if spec.mu is not None:
        mu_int = int(spec.mu)
        mu_frac = spec.mu - mu_int
        if mu_frac == 0:
            # integer power: plain polynomial, no irrational prefactor
            kp = _gain_sym(spec.Kp, "Kp")
            kd = _gain_sym(spec.Kd, "Kd")
            poly: tuple = (Fraction(1),)
            for _ in range(mu_int):
                poly = polys.mul(poly, (kp, kd))
            return make_tf(poly, (1,))
        exponent = mu_frac
    else:
        # symbolic mu is treated as purely fractional; an integer split
        # needs a numeric value
        exponent = "mu"
        mu_int = 0
    core = pade(binomial_series(exponent, 2 * order), order, order)
    kp = _gain_sym(spec.Kp, "Kp")
    kd = _gain_sym(spec.Kd, "Kd")
    num = _homogenize(core.num, kp, kd, order)
    den = _homogenize(core.den, kp, kd, order)
    for _ in range(mu_int):
        num = polys.mul(num, (kp, kd))
        den = polys.scale(den, kp)
    value = None
    if spec.Kp is not None and spec.mu is not None:
        value = float(spec.Kp) ** float(spec.mu)
    return make_tf(num, den, gain=GainTag("Kp^mu", value), notes=core.notes)


def _scaled_binomial(exponent, ratio, order: int) -> PowerSeries:
    base = binomial_series(exponent, 2 * order)
    return PowerSeries(tuple(c * ratio**k for k, c in enumerate(base.coeffs)))


def _homogenize(coeffs, kp, kd, order: int):
    """Substitute t = (Kd/Kp)s and clear Kp^order from num and den alike."""
    out = []
    for j, c in enumerate(coeffs):
        out.append(c * kd**j * kp ** (order - j))
    return polys.trim(out)


def realize_leadlag(spec: LeadLag, order: int) -> TransferFunction:
    """[n/n] realization of the fractional lead-lag compensator.

    The kernel ((1+w)/(1+x*w))^alpha is expanded in w and Pade-fitted,
    then w = lam*s is substituted. The value at s = 0 is Kc*x^alpha,
    carried as a gain tag unless it is exactly rational.
    """
    _check_order(order)
    alpha = _gain_sym(spec.alpha, "alpha")
    x = _gain_sym(spec.x, "x")
    lam = _gain_sym(spec.lam, "lam")
    kc = _gain_sym(spec.Kc, "Kc")
    degenerate = (spec.alpha is not None and spec.alpha == 0) or (
        spec.x is not None and spec.x == 1
    )
    if degenerate:
        return make_tf((kc,), (1,))
    series = leadlag_kernel_series(alpha, x, 2 * order)
    core = pade(series, order, order)
    num = tuple(c * lam**j for j, c in enumerate(core.num))
    den = tuple(c * lam**j for j, c in enumerate(core.den))
    value = None
    if spec.Kc is not None and spec.x is not None and spec.alpha is not None:
        value = float(spec.Kc) * float(spec.x) ** float(spec.alpha)
    gain = GainTag("Kc*x^alpha", value)
    return make_tf(num, den, gain=gain, notes=core.notes)
