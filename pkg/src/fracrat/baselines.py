"""Reference analog approximations of s^lambda for comparison sweeps.

Three classical constructions, frozen here so results are reproducible:

* Oustaloup: 2N+1 zero/pole pairs placed geometrically over [omega_b,
  omega_h] with exponents (k+N+(1-lam)/2)/(2N+1) for zeros and
  (k+N+(1+lam)/2)/(2N+1) for poles, k = -N..N; gain fixed so the
  magnitude is exact at the geometric band center omega_u.
* Modified Oustaloup: the same core multiplied by a boundary
  correction biquad that continues the recursion one half-step past
  each band edge, (s + z_lo)(s + z_hi) / ((s + p_lo)(s + p_hi)) with
  the extra zeros and poles placed at the k = -(N+1) and k = N+1 rungs
  of the same geometric pattern. The classical shelf constants b and d
  stay in the config for interface compatibility but the correction
  derives from the recursion itself; the gain anchor at omega_u plays
  the role of the classical leading factor.
* Carlson: the Newton-type fixed-point iteration on H^q = s^m,
  H_{k+1} = H_k * ((q-1)H_k^q + (q+1)s^m) / ((q+1)H_k^q + (q-1)s^m),
  starting from H_0 = 1, carried out in exact rational arithmetic.

All three build the differentiator s^{+lambda}; take reciprocal() for
the integrator. The two Oustaloup variants are numeric (float ring);
Carlson is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import polys
from .approx import TransferFunction, make_tf
from .controllers import _rat
from .errors import ValidationError


@dataclass(frozen=True)
class BaselineConfig:
    """Band and depth settings shared by the Oustaloup variants."""

    lam: float
    omega_b: float
    omega_h: float
    N: int
    b: float = 10.0
    d: float = 9.0

    def __post_init__(self):
        lam = float(self.lam)
        if not 0 < lam < 1:
            raise ValidationError("lam must lie in (0, 1)")
        wb = float(self.omega_b)
        wh = float(self.omega_h)
        if not 0 < wb < wh:
            raise ValidationError("need 0 < omega_b < omega_h")
        if self.N < 1:
            raise ValidationError("N must be at least 1")
        if self.b <= 0 or self.d <= 0:
            raise ValidationError("shaping constants must be positive")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "omega_b", wb)
        object.__setattr__(self, "omega_h", wh)


def _poly_from_roots(roots) -> tuple:
    """Ascending coefficients of prod (s + r)."""
    out = (1.0,)
    for r in roots:
        out = polys.mul(out, (float(r), 1.0))
    return out


def _rung(cfg: BaselineConfig, k: int):
    """Zero/pole frequencies of the k-th recursion rung."""
    ratio = cfg.omega_h / cfg.omega_b
    span = 2 * cfg.N + 1
    zero = cfg.omega_b * ratio ** ((k + cfg.N + (1 - cfg.lam) / 2) / span)
    pole = cfg.omega_b * ratio ** ((k + cfg.N + (1 + cfg.lam) / 2) / span)
    return zero, pole


def _core(cfg: BaselineConfig, extend: bool = False):
    """Oustaloup zero/pole polynomials without gain.

    With extend=True the rungs k = -(N+1) and k = N+1 are included,
    which is the modified variant's boundary-correction biquad.
    """
    lo = -cfg.N - 1 if extend else -cfg.N
    hi = cfg.N + 1 if extend else cfg.N
    zeros = []
    poles = []
    for k in range(lo, hi + 1):
        zero, pole = _rung(cfg, k)
        zeros.append(zero)
        poles.append(pole)
    return _poly_from_roots(zeros), _poly_from_roots(poles)


def _polyval(coeffs, s):
    value = 0j
    for c in reversed(coeffs):
        value = value * s + c
    return value


def _anchored(num, den, cfg: BaselineConfig) -> TransferFunction:
    wu = math.sqrt(cfg.omega_b * cfg.omega_h)
    raw = abs(_polyval(num, 1j * wu) / _polyval(den, 1j * wu))
    gain = wu**cfg.lam / raw
    return make_tf(tuple(gain * c for c in num), den, ring="float")


def oustaloup(cfg: BaselineConfig) -> TransferFunction:
    """Recursive zero/pole approximation of s^lam, order 2N+1."""
    num, den = _core(cfg)
    return _anchored(num, den, cfg)


def modified_oustaloup(cfg: BaselineConfig) -> TransferFunction:
    """Oustaloup core with boundary-correction biquad, order 2N+3.

    The correction pins the phase near both band edges, where the plain
    recursion droops toward zero; inside the band the extra rungs are
    far enough out to leave the fit unchanged.
    """
    num, den = _core(cfg, extend=True)
    return _anchored(num, den, cfg)


def carlson(lam, iterations: int) -> TransferFunction:
    """Fixed-point iterate for s^lam with lam = m/q, q in {2, 3, 4}.

    Exact over rationals; the degree grows as d' = (q+1)*d + m, so
    q = 2 gives degrees 1, 4, 13, ...
    """
    lam = _rat(lam, "lam")
    if lam <= 0:
        raise ValidationError("lam must be positive")
    if iterations < 1:
        raise ValidationError("iterations must be at least 1")
    m = lam.numerator
    q = lam.denominator
    if q == 1:
        return make_tf((Fraction(0),) * m + (Fraction(1),), (Fraction(1),))
    if q not in (2, 3, 4):
        raise ValidationError("Carlson requires rational order")
    g = (Fraction(0),) * m + (Fraction(1),)
    num = (Fraction(1),)
    den = (Fraction(1),)
    for _ in range(iterations):
        num_q = _pow(num, q)
        den_q = _pow(den, q)
        gd = polys.mul(g, den_q)
        keep = polys.add(polys.scale(num_q, q - 1), polys.scale(gd, q + 1))
        move = polys.add(polys.scale(num_q, q + 1), polys.scale(gd, q - 1))
        num = polys.mul(num, keep)
        den = polys.mul(den, move)
    return make_tf(num, den)


def _pow(coeffs, n: int):
    out = (Fraction(1),)
    for _ in range(n):
        out = polys.mul(out, coeffs)
    return out
