"""Frequency-response evaluation, ideal references, and fit metrics.

Everything numeric here runs in double precision; exact coefficients are
converted at evaluation time. Grids carry an explicit unit (hertz or
rad/s) and the 2*pi conversion is applied exactly once, on entry.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .approx import TransferFunction
from .controllers import FOPID, Differintegrator, FOPDBracket, LeadLag
from .errors import ValidationError

_UNITS = ("hz", "rad")


@dataclass(frozen=True)
class FrequencyGrid:
    """Strictly increasing evaluation frequencies in a stated unit."""

    values: tuple
    unit: str = "hz"

    def __post_init__(self):
        if self.unit not in _UNITS:
            raise ValidationError(f"unit must be one of {_UNITS}")
        values = tuple(float(v) for v in self.values)
        if not values:
            raise ValidationError("empty frequency grid")
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValidationError("grid must be strictly increasing")
        if values[0] <= 0:
            raise ValidationError("frequencies must be positive")
        object.__setattr__(self, "values", values)

    def omega(self) -> np.ndarray:
        """Angular frequencies in rad/s."""
        scale = 2 * math.pi if self.unit == "hz" else 1.0
        return np.asarray(self.values) * scale

    def __len__(self):
        return len(self.values)


def log_grid(fmin, fmax, points_per_decade: int = 50, unit: str = "hz") -> FrequencyGrid:
    """Logarithmic grid over [fmin, fmax] at the given density."""
    fmin = float(fmin)
    fmax = float(fmax)
    if fmin <= 0 or fmax <= fmin:
        raise ValidationError("need 0 < fmin < fmax")
    if points_per_decade < 1:
        raise ValidationError("points_per_decade must be at least 1")
    decades = math.log10(fmax / fmin)
    count = max(2, int(round(decades * points_per_decade)) + 1)
    values = np.logspace(math.log10(fmin), math.log10(fmax), count)
    values[0] = fmin
    values[-1] = fmax
    return FrequencyGrid(tuple(float(v) for v in values), unit)


@dataclass(frozen=True)
class BodeSweep:
    """Magnitude (dB) and phase (degrees) over a grid.

    Points where the evaluation hit a pole are non-finite rather than
    dropped, so indices always line up with the grid.
    """

    grid: FrequencyGrid
    mag_db: tuple
    phase_deg: tuple

    def __post_init__(self):
        if not (len(self.grid) == len(self.mag_db) == len(self.phase_deg)):
            raise ValidationError("sweep arrays must match the grid length")


def _tf_gain_value(tf: TransferFunction) -> float:
    if tf.gain is None:
        return 1.0
    if tf.gain.value is None:
        raise ValidationError("symbolic gain has no numeric value")
    return tf.gain.value


def evaluate(tf: TransferFunction, s):
    """H(s) at one complex point (gain folded in)."""
    if tf.ring == "symbolic":
        raise ValidationError("substitute symbols before evaluating")
    num = np.polyval([float(c) for c in reversed(tf.num)], s)
    den = np.polyval([float(c) for c in reversed(tf.den)], s)
    return _tf_gain_value(tf) * num / den


def _unwrap_deg(phases: np.ndarray) -> np.ndarray:
    """Unwrap in degrees, starting at the lowest frequency, skipping
    non-finite entries so a single pole does not poison the tail."""
    out = phases.copy()
    last = None
    offset = 0.0
    for i, p in enumerate(phases):
        if not np.isfinite(p):
            continue
        if last is not None:
            delta = p + offset - last
            while delta > 180.0:
                offset -= 360.0
                delta -= 360.0
            while delta < -180.0:
                offset += 360.0
                delta += 360.0
        out[i] = p + offset
        last = out[i]
    return out


def bode(tf: TransferFunction, grid: FrequencyGrid) -> BodeSweep:
    """Sweep H(j*omega) over the grid with unwrapped phase."""
    w = grid.omega()
    s = 1j * w
    num = np.polyval([float(c) for c in reversed(tf.num)], s)
    den = np.polyval([float(c) for c in reversed(tf.den)], s)
    gain = _tf_gain_value(tf)
    with np.errstate(divide="ignore", invalid="ignore"):
        h = gain * num / den
        mag = 20.0 * np.log10(np.abs(h))
    pole = den == 0
    phase = np.degrees(np.angle(h))
    mag[pole] = np.inf
    phase[pole] = np.nan
    phase = _unwrap_deg(phase)
    return BodeSweep(grid, tuple(float(m) for m in mag), tuple(float(p) for p in phase))


def ideal_response(spec, grid: FrequencyGrid) -> BodeSweep:
    """Analytic sweep of the ideal (irrational) controller.

    Uses principal-branch closed forms; no unwrapping is involved.
    """
    w = grid.omega()
    if isinstance(spec, Differintegrator):
        if spec.lam is None:
            raise ValidationError("ideal response needs numeric parameters")
        lam = float(spec.lam)
        sign = -1.0 if spec.sign == "integrator" else 1.0
        mag = sign * 20.0 * lam * np.log10(w)
        phase = np.full_like(w, sign * 90.0 * lam)
    elif isinstance(spec, FOPDBracket):
        _need_numeric(spec, ("Kp", "Kd", "mu"))
        h = (float(spec.Kp) + 1j * w * float(spec.Kd)) ** float(spec.mu)
        mag = 20.0 * np.log10(np.abs(h))
        phase = np.degrees(np.angle(h))
    elif isinstance(spec, LeadLag):
        _need_numeric(spec, ("Kc", "lam", "x", "alpha"))
        lam = float(spec.lam)
        x = float(spec.x)
        core = (1 + 1j * w * lam) / (1 + 1j * w * x * lam)
        h = float(spec.Kc) * x ** float(spec.alpha) * core ** float(spec.alpha)
        mag = 20.0 * np.log10(np.abs(h))
        phase = np.degrees(np.angle(h))
    elif isinstance(spec, FOPID):
        _need_numeric(spec, ("Kp", "Ki", "Kd", "lam", "mu"))
        jw = 1j * w
        h = (
            float(spec.Kp)
            + float(spec.Ki) * jw ** -float(spec.lam)
            + float(spec.Kd) * jw ** float(spec.mu)
        )
        mag = 20.0 * np.log10(np.abs(h))
        phase = np.degrees(np.angle(h))
    else:
        raise ValidationError(f"no ideal response for {type(spec).__name__}")
    return BodeSweep(grid, tuple(float(m) for m in mag), tuple(float(p) for p in phase))


def _need_numeric(spec, names):
    for name in names:
        if getattr(spec, name) is None:
            raise ValidationError("ideal response needs numeric parameters")


@dataclass(frozen=True)
class FitReport:
    """Error summary of an approximation against its ideal over a band."""

    max_phase_err_deg: float
    mean_phase_err_deg: float
    max_mag_err_db: float
    mean_mag_err_db: float
    band: tuple
    constant_phase_band: tuple | None


def constant_phase_band(sweep: BodeSweep, target_deg: float, tol_deg: float):
    """Widest contiguous frequency run with |phase - target| <= tol.

    Returns (f_lo, f_hi) in the sweep's grid unit, or None when no point
    qualifies. Ties go to the lowest-frequency run.
    """
    if tol_deg <= 0:
        raise ValidationError("tol_deg must be positive")
    phases = np.asarray(sweep.phase_deg)
    ok = np.isfinite(phases) & (np.abs(phases - target_deg) <= tol_deg)
    best = None
    best_len = 0
    start = None
    for i, good in enumerate(list(ok) + [False]):
        if good and start is None:
            start = i
        elif not good and start is not None:
            if i - start > best_len:
                best_len = i - start
                best = (start, i - 1)
            start = None
    if best is None:
        return None
    return (sweep.grid.values[best[0]], sweep.grid.values[best[1]])


def fit_report(
    approx: BodeSweep,
    ideal: BodeSweep,
    band: tuple,
    phase_tol_deg: float = 5.0,
) -> FitReport:
    """Compare two sweeps over a band of the shared grid.

    The constant-phase band is measured on the approximation against the
    ideal sweep's phase at the band's low edge (the ideal phase of every
    controller in scope is flat wherever it is used as a target).
    """
    if approx.grid != ideal.grid:
        raise ValidationError("sweeps must share one grid")
    lo, hi = float(band[0]), float(band[1])
    values = np.asarray(approx.grid.values)
    if lo < values[0] or hi > values[-1] or lo >= hi:
        raise ValidationError("band outside the evaluated grid")
    mask = (values >= lo) & (values <= hi)
    if not mask.any():
        raise ValidationError("band contains no grid points")
    dphase = np.abs(np.asarray(approx.phase_deg) - np.asarray(ideal.phase_deg))[mask]
    dmag = np.abs(np.asarray(approx.mag_db) - np.asarray(ideal.mag_db))[mask]
    target = float(np.asarray(ideal.phase_deg)[mask][0])
    cpb = constant_phase_band(approx, target, phase_tol_deg)
    return FitReport(
        max_phase_err_deg=float(np.max(dphase)),
        mean_phase_err_deg=float(np.mean(dphase)),
        max_mag_err_db=float(np.max(dmag)),
        mean_mag_err_db=float(np.mean(dmag)),
        band=(lo, hi),
        constant_phase_band=cpb,
    )
