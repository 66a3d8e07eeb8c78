"""Exact arithmetic substrate.

Arbitrary-precision rationals (`BigRat`, backed by `fractions.Fraction`),
sparse multivariate polynomials over the controller-parameter symbols
(`ParamPoly`), quotients of those (`ParamFraction`), and a fraction-free
linear solver used by the Pade machinery.

Everything here is immutable after construction and safe to share between
threads; all operations return new objects.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import (
    ExactDivisionError,
    InconsistentSystemError,
    RankDeficiencyError,
    ValidationError,
)

#: Exact rational scalar type used for every coefficient in the package.
BigRat = Fraction

#: Recognized symbols: controller tuning parameters plus the Laplace
#: indeterminate (useful for normalization of plain s-polynomials).
SYMBOLS = ("lam", "mu", "alpha", "x", "Kp", "Ki", "Kd", "Kc", "T", "s")

_INDEX = {name: i for i, name in enumerate(SYMBOLS)}
_NVARS = len(SYMBOLS)
_ZERO_KEY = (0,) * _NVARS


def _coerce_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"expected an exact scalar, got {type(value).__name__}")


def _grlex_key(exponents):
    # graded lexicographic: total degree first, then the exponent tuple
    return (sum(exponents), exponents)


class ParamPoly:
    """Sparse multivariate polynomial with BigRat coefficients.

    Terms map exponent tuples (one slot per entry of SYMBOLS) to nonzero
    coefficients. The zero polynomial has no terms.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        cleaned: dict[tuple, Fraction] = {}
        if terms:
            for key, coeff in terms.items():
                c = _coerce_rat(coeff)
                if c:
                    key = tuple(key)
                    if len(key) != _NVARS:
                        raise ValueError("exponent tuple has wrong length")
                    cleaned[key] = c
        self.terms = cleaned

    # -- constructors -----------------------------------------------------

    @classmethod
    def constant(cls, value) -> "ParamPoly":
        return cls({_ZERO_KEY: _coerce_rat(value)})

    @classmethod
    def var(cls, name: str, power: int = 1) -> "ParamPoly":
        if name not in _INDEX:
            raise ValidationError(f"unknown symbol {name!r}; choose from {SYMBOLS}")
        if power < 0:
            raise ValidationError("negative powers are not polynomial")
        key = [0] * _NVARS
        key[_INDEX[name]] = power
        return cls({tuple(key): Fraction(1)})

    @classmethod
    def zero(cls) -> "ParamPoly":
        return cls()

    @classmethod
    def one(cls) -> "ParamPoly":
        return cls.constant(1)

    # -- basic queries -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or set(self.terms) == {_ZERO_KEY}

    def constant_value(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if set(self.terms) != {_ZERO_KEY}:
            raise ValidationError("polynomial is not constant")
        return self.terms[_ZERO_KEY]

    def symbols(self) -> tuple[str, ...]:
        used = [False] * _NVARS
        for key in self.terms:
            for i, e in enumerate(key):
                if e:
                    used[i] = True
        return tuple(SYMBOLS[i] for i in range(_NVARS) if used[i])

    def degree(self, symbol: str | None = None) -> int:
        """Total degree, or the degree in one symbol. Zero polynomial: -1."""
        if not self.terms:
            return -1
        if symbol is None:
            return max(sum(key) for key in self.terms)
        i = _INDEX[symbol]
        return max(key[i] for key in self.terms)

    def leading_key(self) -> tuple:
        if not self.terms:
            raise ValidationError("zero polynomial has no leading term")
        return max(self.terms, key=_grlex_key)

    def leading_coeff(self) -> Fraction:
        return self.terms[self.leading_key()]

    def coefficient(self, symbol: str, power: int) -> "ParamPoly":
        """Polynomial coefficient of symbol**power (remaining symbols kept)."""
        i = _INDEX[symbol]
        out = {}
        for key, c in self.terms.items():
            if key[i] == power:
                new = list(key)
                new[i] = 0
                out[tuple(new)] = c
        return ParamPoly(out)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _lift(other):
        if isinstance(other, ParamPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return ParamPoly.constant(other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key, Fraction(0)) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        out = ParamPoly.__new__(ParamPoly)
        out.terms = terms
        return out

    __radd__ = __add__

    def __neg__(self):
        out = ParamPoly.__new__(ParamPoly)
        out.terms = {key: -c for key, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        terms: dict[tuple, Fraction] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                s = terms.get(key, Fraction(0)) + c1 * c2
                if s:
                    terms[key] = s
                else:
                    terms.pop(key, None)
        out = ParamPoly.__new__(ParamPoly)
        out.terms = terms
        return out

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int) or exponent < 0:
            raise ValidationError("polynomial powers must be non-negative integers")
        result = ParamPoly.one()
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __truediv__(self, other):
        # division by an exact scalar only; use exact_div for polynomials
        if isinstance(other, (int, Fraction)):
            c = _coerce_rat(other)
            if not c:
                raise ZeroDivisionError("division by zero scalar")
            return self * (Fraction(1) / c)
        return NotImplemented

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    # -- structure ---------------------------------------------------------

    def substitute(self, mapping: dict) -> "ParamPoly":
        """Substitute symbols by exact scalars or polynomials.

        Unmentioned symbols stay symbolic.
        """
        values = {}
        for name, val in mapping.items():
            if name not in _INDEX:
                raise ValidationError(f"unknown symbol {name!r}")
            lifted = self._lift(val)
            if lifted is None:
                raise TypeError(f"cannot substitute {type(val).__name__}")
            values[_INDEX[name]] = lifted
        total = ParamPoly.zero()
        for key, c in self.terms.items():
            factor = ParamPoly.constant(c)
            for i, e in enumerate(key):
                if not e:
                    continue
                if i in values:
                    factor = factor * values[i] ** e
                else:
                    factor = factor * ParamPoly.var(SYMBOLS[i], e)
            total = total + factor
        return total

    def evaluate(self, mapping: dict) -> Fraction:
        """Full substitution down to an exact scalar."""
        return self.substitute(mapping).constant_value()

    def exact_div(self, divisor: "ParamPoly") -> "ParamPoly":
        """Exact multivariate division; raises ExactDivisionError otherwise."""
        divisor = self._lift(divisor)
        if divisor is None or divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        if divisor.is_constant():
            return self / divisor.constant_value()
        rem = self
        div_key = divisor.leading_key()
        div_coeff = divisor.terms[div_key]
        quot_terms: dict[tuple, Fraction] = {}
        while rem.terms:
            lead = rem.leading_key()
            qkey = tuple(a - b for a, b in zip(lead, div_key))
            if any(e < 0 for e in qkey):
                raise ExactDivisionError("divisor does not divide dividend")
            qc = rem.terms[lead] / div_coeff
            quot_terms[qkey] = quot_terms.get(qkey, Fraction(0)) + qc
            mono = ParamPoly({qkey: qc})
            rem = rem - mono * divisor
        return ParamPoly(quot_terms)

    def univariate_symbol(self) -> str | None:
        """The single symbol appearing, or None for constants.

        Raises ValidationError when more than one symbol is present.
        """
        used = self.symbols()
        if len(used) > 1:
            raise ValidationError("polynomial is multivariate")
        return used[0] if used else None

    def coeff_list(self, symbol: str) -> list[Fraction]:
        """Ascending scalar coefficients; requires univariate in `symbol`."""
        used = self.symbols()
        if used and used != (symbol,):
            raise ValidationError(f"polynomial is not univariate in {symbol!r}")
        i = _INDEX[symbol]
        out = [Fraction(0)] * (self.degree(symbol) + 1 if self.terms else 1)
        for key, c in self.terms.items():
            out[key[i]] = c
        return out

    @classmethod
    def from_coeff_list(cls, symbol: str, coeffs) -> "ParamPoly":
        terms = {}
        i = _INDEX[symbol]
        for power, c in enumerate(coeffs):
            c = _coerce_rat(c)
            if c:
                key = [0] * _NVARS
                key[i] = power
                terms[tuple(key)] = c
        return cls(terms)

    # -- printing ----------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for key in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[key]
            factors = []
            for i, e in enumerate(key):
                if e == 1:
                    factors.append(SYMBOLS[i])
                elif e > 1:
                    factors.append(f"{SYMBOLS[i]}^{e}")
            mag = abs(c)
            if factors and mag == 1:
                body = "*".join(factors)
            elif factors:
                body = "*".join([str(mag)] + factors)
            else:
                body = str(mag)
            parts.append(("-" if c < 0 else "+", body))
        sign, body = parts[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self):
        return f"ParamPoly({self})"


def as_param_poly(value) -> ParamPoly:
    lifted = ParamPoly._lift(value)
    if lifted is None:
        raise TypeError(f"cannot interpret {type(value).__name__} as ParamPoly")
    return lifted


# -- normalization and GCD ---------------------------------------------------


def poly_normalize(p: ParamPoly) -> tuple[Fraction, ParamPoly]:
    """Split `p` into (content, primitive) with content * primitive == p.

    The primitive part has integer coefficients with collective GCD 1 and a
    positive coefficient on its graded-lex greatest term. Zero maps to
    (0, zero polynomial).
    """
    p = as_param_poly(p)
    if p.is_zero():
        return Fraction(0), ParamPoly.zero()
    num_gcd = 0
    den_lcm = 1
    for c in p.terms.values():
        num_gcd = math.gcd(num_gcd, abs(c.numerator))
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    content = Fraction(num_gcd, den_lcm)
    if p.leading_coeff() < 0:
        content = -content
    primitive = p * (Fraction(1) / content)
    return content, primitive


def _frac_list_trim(coeffs):
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return coeffs


def _frac_list_mod(a, b):
    """Remainder of univariate coefficient-list division over the rationals."""
    a = list(a)
    while len(a) >= len(b) and a:
        factor = a[-1] / b[-1]
        shift = len(a) - len(b)
        for i, c in enumerate(b):
            a[shift + i] -= factor * c
        _frac_list_trim(a)
    return a


def poly_gcd(a: ParamPoly, b: ParamPoly) -> ParamPoly:
    """Monic GCD of two univariate polynomials in the same symbol.

    Constants count as univariate in any symbol; gcd(0, 0) is undefined.
    """
    a = as_param_poly(a)
    b = as_param_poly(b)
    if a.is_zero() and b.is_zero():
        raise ValidationError("gcd undefined for two zero polynomials")
    sym_a = a.univariate_symbol()
    sym_b = b.univariate_symbol()
    if sym_a and sym_b and sym_a != sym_b:
        raise ValidationError("gcd inputs use different symbols")
    symbol = sym_a or sym_b
    if symbol is None:
        return ParamPoly.one()
    ca = _frac_list_trim(a.coeff_list(symbol)) if not a.is_zero() else []
    cb = _frac_list_trim(b.coeff_list(symbol)) if not b.is_zero() else []
    while cb:
        ca, cb = cb, _frac_list_mod(ca, cb)
    monic = [c / ca[-1] for c in ca]
    return ParamPoly.from_coeff_list(symbol, monic)


# -- fractions of polynomials -------------------------------------------------


class ParamFraction:
    """Quotient of two ParamPoly values, denominator nonzero.

    Kept reduced where the package's GCD machinery allows: rational content
    is always extracted, a denominator that divides the numerator exactly is
    cancelled, and univariate pairs are reduced by the Euclidean GCD.
    Equality is decided by cross-multiplication, so unreduced values still
    compare correctly.
    """

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num = as_param_poly(num)
        den = as_param_poly(den)
        if den.is_zero():
            raise ZeroDivisionError("ParamFraction denominator is zero")
        if num.is_zero():
            self.num = ParamPoly.zero()
            self.den = ParamPoly.one()
            return
        cn, pn = poly_normalize(num)
        cd, pd = poly_normalize(den)
        scale = cn / cd
        if pd.is_constant():
            self.num = pn * scale
            self.den = ParamPoly.one()
            return
        try:
            self.num = pn.exact_div(pd) * scale
            self.den = ParamPoly.one()
            return
        except ExactDivisionError:
            pass
        try:
            sn = pn.univariate_symbol()
            sd = pd.univariate_symbol()
        except ValidationError:
            sn = sd = False  # multivariate; skip the univariate reduction
        if sn is not False and sd == sn and sn is not None:
            g = poly_gcd(pn, pd)
            if g.degree() > 0:
                pn = pn.exact_div(g)
                pd = pd.exact_div(g)
                cd2, pd = poly_normalize(pd)
                scale = scale / cd2
        self.num = pn * scale
        self.den = pd

    @classmethod
    def from_scalar(cls, value) -> "ParamFraction":
        return cls(ParamPoly.constant(value))

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def constant_value(self) -> Fraction:
        return self.num.constant_value() / self.den.constant_value()

    def as_poly(self) -> ParamPoly:
        """The numerator when the denominator reduced to a constant."""
        if not self.den.is_constant():
            raise ValidationError("fraction did not reduce to a polynomial")
        return self.num / self.den.constant_value()

    @staticmethod
    def _lift(other):
        if isinstance(other, ParamFraction):
            return other
        if isinstance(other, (int, Fraction, ParamPoly)):
            return ParamFraction(as_param_poly(other))
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return ParamFraction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    __radd__ = __add__

    def __neg__(self):
        out = ParamFraction.__new__(ParamFraction)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return ParamFraction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("division by zero fraction")
        return ParamFraction(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other / self

    def __eq__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("ParamFraction is not hashable")

    def __str__(self):
        if self.den == ParamPoly.one():
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"ParamFraction({self})"


# -- linear solving -----------------------------------------------------------


def _rref_particular(rows, rhs, zero, one):
    """Reduced row echelon over a field; returns (solution, defect).

    Free variables are set to zero. Raises InconsistentSystemError when the
    right-hand side is not in the column space. Entries must support field
    arithmetic and truthiness.
    """
    m = len(rows)
    n = len(rows[0]) if m else 0
    mat = [list(rows[i]) + [rhs[i]] for i in range(m)]
    pivot_cols = []
    r = 0
    for c in range(n):
        pivot = next((i for i in range(r, m) if mat[i][c]), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = one / mat[r][c]
        mat[r] = [entry * inv for entry in mat[r]]
        for i in range(m):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if mat[i][n]:
            raise InconsistentSystemError("no solution")
    solution = [zero] * n
    for i, c in enumerate(pivot_cols):
        solution[c] = mat[i][n]
    return solution, n - len(pivot_cols)


def solve_fraction_free(matrix, rhs) -> list[ParamFraction]:
    """Solve A x = b exactly by fraction-free (Bareiss) elimination.

    A is square with ParamPoly (or scalar) entries. Full rank gives the
    exact solution as ParamFractions with zero residual. A rank-deficient
    consistent system raises RankDeficiencyError naming the defect; an
    inconsistent one raises InconsistentSystemError.
    """
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValidationError("matrix must be square")
    if len(rhs) != n:
        raise ValidationError("right-hand side length mismatch")
    if n == 0:
        return []
    mat = [[as_param_poly(entry) for entry in row] + [as_param_poly(rhs[i])]
           for i, row in enumerate(matrix)]
    prev = ParamPoly.one()
    for col in range(n):
        pivot = next((r for r in range(col, n) if mat[r][col]), None)
        if pivot is None:
            _classify_deficiency(matrix, rhs)
        mat[col], mat[pivot] = mat[pivot], mat[col]
        for r in range(col + 1, n):
            for c in range(col + 1, n + 1):
                cross = mat[col][col] * mat[r][c] - mat[r][col] * mat[col][c]
                mat[r][c] = cross.exact_div(prev)
            mat[r][col] = ParamPoly.zero()
        prev = mat[col][col]
    solution: list[ParamFraction] = [ParamFraction.from_scalar(0)] * n
    for i in range(n - 1, -1, -1):
        acc = ParamFraction(mat[i][n])
        for j in range(i + 1, n):
            acc = acc - ParamFraction(mat[i][j]) * solution[j]
        solution[i] = acc / ParamFraction(mat[i][i])
    return solution


def _classify_deficiency(matrix, rhs):
    """Diagnose a singular system over the fraction field and raise."""
    rows = [[ParamFraction(as_param_poly(e)) for e in row] for row in matrix]
    vec = [ParamFraction(as_param_poly(e)) for e in rhs]
    zero = ParamFraction.from_scalar(0)
    one = ParamFraction.from_scalar(1)
    _, defect = _rref_particular(rows, vec, zero, one)  # may raise Inconsistent
    raise RankDeficiencyError(defect)


def solve_particular(matrix, rhs):
    """Particular solution of a possibly singular square system.

    Entries may be Fractions (numeric path) or ParamPoly/ParamFraction
    (symbolic path). Free variables are set to zero. Returns
    (solution, defect); raises InconsistentSystemError when unsolvable.
    """
    n = len(matrix)
    if n == 0:
        return [], 0
    numeric = all(
        isinstance(e, (int, Fraction)) for row in matrix for e in row
    ) and all(isinstance(e, (int, Fraction)) for e in rhs)
    if numeric:
        rows = [[_coerce_rat(e) for e in row] for row in matrix]
        vec = [_coerce_rat(e) for e in rhs]
        return _rref_particular(rows, vec, Fraction(0), Fraction(1))
    rows = [[ParamFraction._lift(e) for e in row] for row in matrix]
    vec = [ParamFraction._lift(e) for e in rhs]
    zero = ParamFraction.from_scalar(0)
    one = ParamFraction.from_scalar(1)
    return _rref_particular(rows, vec, zero, one)
