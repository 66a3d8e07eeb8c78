"""Pade approximants and continued-fraction expansions of rational functions.

The Pade direction turns a truncated power series into an [m/k] rational
approximant by solving the Toeplitz coefficient system exactly; the inverse
direction expands a rational function into a simple continued fraction by
repeated Euclidean division, which is what ladder synthesis consumes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import polys
from .errors import (
    DegenerateMathError,
    ExactDivisionError,
    InconsistentSystemError,
    RankDeficiencyError,
    ValidationError,
)
from .exact import (
    ParamFraction,
    ParamPoly,
    poly_normalize,
    solve_fraction_free,
    solve_particular,
)
from .series import PowerSeries

_RINGS = ("rational", "symbolic", "float")


@dataclass(frozen=True)
class GainTag:
    """Scalar prefactor that is not rational in the tuning parameters.

    `label` is the closed form (e.g. "Kp^mu"); `value` its numeric value
    when the parameters are numeric, None when they stay symbolic.
    """

    label: str
    value: float | None = None


@dataclass(frozen=True)
class TransferFunction:
    """Rational function of s with exact or float coefficients.

    num and den hold ascending-power coefficient tuples. The ring tag says
    how to interpret them: "rational" (BigRat), "symbolic" (ParamPoly in
    the tuning parameters), or "float" (doubles, baselines only). An
    optional GainTag carries an irrational scalar prefactor. Notes record
    construction caveats (Pade defects and the like) and do not take part
    in equality.
    """

    num: tuple
    den: tuple
    ring: str
    gain: GainTag | None = None
    notes: tuple = field(default=(), compare=False)

    @property
    def num_degree(self) -> int:
        return len(self.num) - 1

    @property
    def den_degree(self) -> int:
        return len(self.den) - 1

    def num_poly(self) -> ParamPoly:
        if self.ring == "float":
            raise ValidationError("float coefficients have no exact polynomial form")
        return _spoly(self.num)

    def den_poly(self) -> ParamPoly:
        if self.ring == "float":
            raise ValidationError("float coefficients have no exact polynomial form")
        return _spoly(self.den)

    def reciprocal(self) -> "TransferFunction":
        if self.gain is not None:
            raise ValidationError("cannot invert past an opaque gain tag")
        return make_tf(self.den, self.num, ring=self.ring, notes=self.notes)

    def substitute(self, mapping: dict) -> "TransferFunction":
        """Substitute symbols in every coefficient and renormalize."""
        if self.ring == "float":
            raise ValidationError("float coefficients have no symbols")

        def sub(c):
            if isinstance(c, ParamPoly):
                c = c.substitute(mapping)
                if c.is_constant():
                    return c.constant_value()
            return c

        return make_tf(
            tuple(sub(c) for c in self.num),
            tuple(sub(c) for c in self.den),
            gain=self.gain,
            notes=self.notes,
        )

    def with_notes(self, *extra: str) -> "TransferFunction":
        return TransferFunction(
            self.num, self.den, self.ring, self.gain, self.notes + tuple(extra)
        )

    def __str__(self):
        def side(coeffs):
            parts = []
            for p in range(len(coeffs) - 1, -1, -1):
                c = coeffs[p]
                if (isinstance(c, ParamPoly) and c.is_zero()) or (
                    not isinstance(c, ParamPoly) and not c
                ):
                    continue
                body = f"({c})" if isinstance(c, ParamPoly) else str(c)
                if p == 0:
                    parts.append(body)
                elif p == 1:
                    parts.append(f"{body}*s")
                else:
                    parts.append(f"{body}*s^{p}")
            return " + ".join(parts) if parts else "0"

        text = f"({side(self.num)}) / ({side(self.den)})"
        if self.gain is not None:
            text = f"{self.gain.label} * {text}"
        return text


def _coerce_exact(c):
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, (Fraction, float)):
        return c
    if isinstance(c, ParamPoly):
        return c.constant_value() if c.is_constant() else c
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def _detect_ring(coeffs) -> str:
    if any(isinstance(c, float) for c in coeffs):
        return "float"
    if any(isinstance(c, ParamPoly) for c in coeffs):
        return "symbolic"
    return "rational"


def make_tf(num, den, ring=None, gain=None, notes=()) -> TransferFunction:
    """Build a normalized TransferFunction.

    Exact rings are scaled to collectively integer-primitive coefficients
    with a positive leading denominator coefficient; the float ring is only
    trimmed. A zero denominator is rejected.
    """
    num = [_coerce_exact(c) for c in num]
    den = [_coerce_exact(c) for c in den]
    den = list(polys.trim(den))
    if not den:
        raise DegenerateMathError("zero denominator")
    num = list(polys.trim(num))
    detected = _detect_ring(num + den)
    if ring is None:
        ring = detected
    if ring not in _RINGS:
        raise ValidationError(f"unknown ring {ring!r}")
    if detected == "float" and ring != "float":
        raise ValidationError("float coefficients cannot join an exact ring")
    if ring == "float":
        return TransferFunction(
            tuple(float(c) for c in num) or (0.0,),
            tuple(float(c) for c in den),
            "float",
            gain,
            tuple(notes),
        )
    if not num:
        return TransferFunction((Fraction(0),), (Fraction(1),), ring, gain, tuple(notes))
    content = polys.sequence_content([num, den])
    inv = Fraction(1) / content
    num = [c * inv for c in num]
    den = [c * inv for c in den]
    lead = den[-1]
    negative = (
        poly_normalize(lead)[0] < 0 if isinstance(lead, ParamPoly) else lead < 0
    )
    if negative:
        num = [-c for c in num]
        den = [-c for c in den]
    return TransferFunction(tuple(num), tuple(den), ring, gain, tuple(notes))


def _spoly(coeffs) -> ParamPoly:
    total = ParamPoly.zero()
    for p, c in enumerate(coeffs):
        total = total + ParamPoly._lift(c) * ParamPoly.var("s", p)
    return total


def tf_equal(a: TransferFunction, b: TransferFunction) -> bool:
    """Rational-function equality by cross-multiplication (exact rings).

    Gain tags are ignored; compare them separately when they matter.
    """
    if a.ring == "float" or b.ring == "float":
        raise ValidationError("float coefficients have no exact equality")
    return a.num_poly() * b.den_poly() == b.num_poly() * a.den_poly()


def cfe_order_to_pade(order: int) -> tuple[int, int]:
    """Degree pair of the realization at a given order.

    An order-n realization keeps the continued fraction through its 2n-th
    convergent, which is the [n/n] Pade approximant.
    """
    if order < 0:
        raise ValidationError("order must be non-negative")
    return order, order


def pade(series: PowerSeries, m: int, k: int) -> TransferFunction:
    """[m/k] Pade approximant of a truncated series.

    Solves the Toeplitz system for the denominator with q0 = 1 (exact
    fraction-free elimination when coefficients are symbolic, exact
    rational elimination when numeric), then reads the numerator off the
    series product. A singular system falls back to a particular solution
    with free variables zeroed and reports the defect in the notes; the
    reduced approximant is returned after cancelling any shared factor.
    """
    if m < 0 or k < 0:
        raise ValidationError("Pade degrees must be non-negative")
    if series.truncation_order < m + k:
        raise ValidationError(
            f"series order {series.truncation_order} is below m+k = {m + k}"
        )
    c = list(series.coeffs)
    symbolic = any(isinstance(v, ParamPoly) and not v.is_constant() for v in c)
    defect = 0
    if k == 0:
        q = [Fraction(1)]
    else:
        rows = []
        rhs = []
        for r in range(k):
            rows.append([_series_at(c, m + r - j) for j in range(k)])
            rhs.append(-_series_at(c, m + 1 + r))
        if symbolic:
            try:
                sol = solve_fraction_free(rows, rhs)
            except RankDeficiencyError:
                try:
                    sol, defect = solve_particular(rows, rhs)
                except InconsistentSystemError:
                    raise DegenerateMathError(
                        "no valid denominator at this degree"
                    ) from None
            q = [_one_like(sol)] + list(sol)
        else:
            try:
                sol, defect = solve_particular(rows, rhs)
                q = [Fraction(1)] + list(sol)
            except InconsistentSystemError:
                # q0 = 1 is unreachable; look for any nonzero denominator
                full = [[-rhs[r]] + rows[r] for r in range(k)]
                q, defect = _kernel_denominator(full)
    num = []
    for i in range(m + 1):
        acc = None
        for j in range(0, min(i, k) + 1):
            term = q[j] * _series_at(c, i - j)
            acc = term if acc is None else acc + term
        num.append(acc)
    num, den = _clear_common_denominator(num, q)
    notes = ()
    if defect:
        notes = (f"pade-defect={defect}",)
        if not symbolic:
            num, den = _cancel_common_factor(num, den)
            matched = _match_order(c, num, den, m + k)
            if matched < m + k:
                notes = notes + (f"match-through={matched}",)
    return make_tf(num, den, notes=notes)


def _series_at(c, idx):
    if idx < 0 or idx >= len(c):
        return Fraction(0)
    return c[idx]


def _one_like(solution):
    if solution and isinstance(solution[0], ParamFraction):
        return ParamFraction.from_scalar(1)
    return Fraction(1)


def _kernel_denominator(matrix):
    """Nonzero null vector of a k x (k+1) BigRat matrix, scaled to q0 = 1.

    Used when the inhomogeneous Pade system has no solution, which means
    every admissible denominator has leading gaps; a vanishing q0 leaves no
    approximant about the expansion point.
    """
    rows = [list(r) for r in matrix]
    n = len(rows[0])
    m = len(rows)
    pivot_cols = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Fraction(1) / rows[r][col]
        rows[r] = [e * inv for e in rows[r]]
        for i in range(m):
            if i != r and rows[i][col]:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(col)
        r += 1
        if r == m:
            break
    free = next(c for c in range(n) if c not in pivot_cols)
    vec = [Fraction(0)] * n
    vec[free] = Fraction(1)
    for i, col in enumerate(pivot_cols):
        vec[col] = -rows[i][free]
    if not vec[0]:
        raise DegenerateMathError("denominator vanishes at the expansion point")
    inv = Fraction(1) / vec[0]
    return [v * inv for v in vec], n - 1 - len(pivot_cols)


def _clear_common_denominator(num, den):
    """Turn ParamFraction coefficient lists into ParamPoly/BigRat lists.

    Multiplies numerator and denominator by the least product of the
    distinct fraction denominators; for everything in scope the fractions
    reduce to constant denominators, so this is usually a no-op.
    """
    if not any(isinstance(v, ParamFraction) for v in num + den):
        return polys.trim(num), polys.trim(den)
    num = [v if isinstance(v, ParamFraction) else ParamFraction._lift(v) for v in num]
    den = [v if isinstance(v, ParamFraction) else ParamFraction._lift(v) for v in den]
    common = ParamPoly.one()
    for f in num + den:
        if f.den.is_constant():
            continue
        try:
            common.exact_div(f.den)
        except ExactDivisionError:
            common = common * f.den

    def clear(f: ParamFraction):
        # reduced fractions carry den == 1 or a non-constant primitive
        if f.den.is_constant():
            scaled = f.num * common / f.den.constant_value()
        else:
            scaled = f.num * common.exact_div(f.den)
        return scaled.constant_value() if scaled.is_constant() else scaled

    return (
        polys.trim([clear(f) for f in num]),
        polys.trim([clear(f) for f in den]),
    )


def _cancel_common_factor(num, den):
    """Divide out the field GCD of two BigRat coefficient lists."""
    if polys.degree(num) < 1 or polys.degree(den) < 1:
        return num, den
    g = polys.gcd_field(num, den)
    if polys.degree(g) < 1:
        return num, den
    return polys.divmod_field(num, g)[0], polys.divmod_field(den, g)[0]


def _match_order(c, num, den, through: int) -> int:
    """Highest order through which num/den reproduces the series c."""
    inv_den = [Fraction(1) / den[0]]
    for i in range(1, through + 1):
        acc = Fraction(0)
        for j in range(1, min(i, len(den) - 1) + 1):
            acc += den[j] * inv_den[i - j]
        inv_den.append(-acc / den[0])
    matched = -1
    for i in range(through + 1):
        total = Fraction(0)
        for j in range(0, min(i, len(num) - 1) + 1):
            total += num[j] * inv_den[i - j]
        if total != _series_at(c, i):
            break
        matched = i
    return matched


@dataclass(frozen=True)
class ContinuedFraction:
    """Simple continued fraction q0 + 1/(q1 + 1/(q2 + ...)).

    Quotients are ascending-power coefficient tuples; all partial
    numerators are 1 (the only shape produced here).
    """

    quotients: tuple
    simple: bool = True

    def __len__(self):
        return len(self.quotients)


def rational_to_cfe(tf: TransferFunction) -> ContinuedFraction:
    """Expand a numeric TF into Euclidean quotients.

    Repeatedly divides, keeps the quotient, and inverts the remainder
    fraction; terminates when the remainder vanishes. Exact by
    construction: cfe_to_tf on the result reproduces the input.
    """
    if tf.ring != "rational":
        raise ValidationError("continued-fraction expansion needs exact numeric coefficients")
    if tf.gain is not None:
        raise ValidationError("fold the gain into the numerator before expanding")
    a = polys.trim(tf.num)
    b = polys.trim(tf.den)
    if not a or not b:
        raise DegenerateMathError("degenerate expansion")
    quotients = []
    while True:
        q, r = polys.divmod_field(a, b)
        quotients.append(q if q else (Fraction(0),))
        if not r:
            break
        a, b = b, r
    return ContinuedFraction(tuple(quotients))


def cfe_to_tf(cf: ContinuedFraction) -> TransferFunction:
    """Fold the nested fraction back into a single rational function."""
    if not cf.quotients:
        raise DegenerateMathError("empty continued fraction")
    num = polys.trim(cf.quotients[-1])
    den: tuple = (Fraction(1),)
    if not num:
        raise DegenerateMathError("zero trailing quotient")
    for q in reversed(cf.quotients[:-1]):
        num, den = polys.add(polys.mul(polys.trim(q), num), den), num
    return make_tf(num, den, ring="rational")
