"""Controller realizations: differintegrators, FOPID assembly, the
bracketed FO[PD] structure, and the lead-lag compensator."""

import random
from fractions import Fraction

import pytest

from fracrat import (
    Differintegrator,
    FOPDBracket,
    FOPID,
    LeadLag,
    ParamPoly,
    ValidationError,
    make_tf,
    realize_differintegrator,
    realize_fopd_bracket,
    realize_fopid,
    realize_leadlag,
    symbolic_differintegrator,
    tf_equal,
)
from fracrat import polys


HALF = Fraction(1, 2)


def test_half_integrator_low_range_order_3():
    tf = realize_differintegrator(Differintegrator(HALF), 3)
    assert tf.num == (7, 56, 112, 64)
    assert tf.den == (1, 24, 80, 64)


def test_half_differentiator_low_range_order_3():
    tf = realize_differintegrator(Differintegrator(HALF, sign="differentiator"), 3)
    assert tf.num == (1, 24, 80, 64)
    assert tf.den == (7, 56, 112, 64)


def test_half_integrator_high_range_order_3():
    tf = realize_differintegrator(Differintegrator(HALF, freq_range="high"), 3)
    assert tf.num == (64, 80, 24, 1)
    assert tf.den == (64, 112, 56, 7)


def test_differentiator_is_exact_reciprocal():
    for freq_range in ("low", "high"):
        for order in (2, 4):
            integ = realize_differintegrator(
                Differintegrator(Fraction(3, 10), freq_range=freq_range), order
            )
            diff = realize_differintegrator(
                Differintegrator(Fraction(3, 10), sign="differentiator", freq_range=freq_range),
                order,
            )
            assert tf_equal(diff, integ.reciprocal())


def test_high_range_time_constant_scales_s():
    base = realize_differintegrator(Differintegrator(HALF, freq_range="high"), 4)
    T = Fraction(1, 250)
    scaled = realize_differintegrator(
        Differintegrator(HALF, freq_range="high", T=T), 4
    )
    want = make_tf(
        tuple(c * T**j for j, c in enumerate(base.num)),
        tuple(c * T**j for j, c in enumerate(base.den)),
    )
    assert tf_equal(scaled, want)


def test_differintegrator_validation():
    with pytest.raises(ValidationError):
        Differintegrator(Fraction(0))
    with pytest.raises(ValidationError):
        Differintegrator(Fraction(3, 2))
    with pytest.raises(ValidationError):
        Differintegrator(HALF, sign="inverse")
    with pytest.raises(ValidationError):
        Differintegrator(HALF, freq_range="mid")
    with pytest.raises(ValidationError):
        Differintegrator(HALF, T=0)
    with pytest.raises(ValidationError):
        realize_differintegrator(Differintegrator(HALF), 0)
    with pytest.raises(ValidationError):
        realize_differintegrator(Differintegrator(None), 3)


def test_symbolic_low_integrator_specializes_to_numeric():
    sym = symbolic_differintegrator("low", 3)
    num = realize_differintegrator(Differintegrator(HALF), 3)
    assert tf_equal(sym.substitute({"lam": HALF}), num)


def test_symbolic_order_4_closed_form():
    lam = ParamPoly.var("lam")
    plus = [
        ParamPoly.constant(1680),
        840 * lam + 3360,
        180 * lam**2 + 1260 * lam + 2160,
        20 * lam**3 + 180 * lam**2 + 520 * lam + 480,
        lam**4 + 10 * lam**3 + 35 * lam**2 + 50 * lam + 24,
    ]
    minus = [p.substitute({"lam": -lam}) for p in plus]
    sym = symbolic_differintegrator("low", 4)
    # low-range: ascending powers of s carry the pattern end-to-start
    assert list(sym.num) == list(reversed(plus))
    assert list(sym.den) == list(reversed(minus))
    high = symbolic_differintegrator("high", 4)
    assert list(high.num) == minus
    assert list(high.den) == plus


def test_symbolic_order_5_closed_form():
    lam = ParamPoly.var("lam")
    plus = [
        ParamPoly.constant(30240),
        15120 * lam + 75600,
        3360 * lam**2 + 30240 * lam + 67200,
        420 * lam**3 + 5040 * lam**2 + 19740 * lam + 25200,
        30 * lam**4 + 420 * lam**3 + 2130 * lam**2 + 4620 * lam + 3600,
        lam**5 + 15 * lam**4 + 85 * lam**3 + 225 * lam**2 + 274 * lam + 120,
    ]
    minus = [p.substitute({"lam": -lam}) for p in plus]
    sym = symbolic_differintegrator("low", 5)
    assert list(sym.num) == list(reversed(plus))
    assert list(sym.den) == list(reversed(minus))


def test_symbolic_beyond_validated_order_is_flagged():
    assert "beyond-validated-order" in symbolic_differintegrator("low", 6).notes
    assert "beyond-validated-order" not in symbolic_differintegrator("low", 5).notes


def test_symbolic_differintegrator_validation():
    with pytest.raises(ValidationError):
        symbolic_differintegrator("mid", 3)
    with pytest.raises(ValidationError):
        symbolic_differintegrator("low", 3, sign="inverse")


def test_fopid_assembles_three_branches():
    spec = FOPID(Fraction(2), HALF, Fraction(1, 3), HALF, HALF)
    got = realize_fopid(spec, "low", 2)
    integ = realize_differintegrator(Differintegrator(HALF), 2)
    diff = integ.reciprocal()
    num = polys.add(
        polys.add(
            polys.scale(polys.mul(integ.num, diff.den), spec.Ki),
            polys.scale(polys.mul(diff.num, integ.den), spec.Kd),
        ),
        polys.scale(polys.mul(integ.den, diff.den), spec.Kp),
    )
    den = polys.mul(integ.den, diff.den)
    assert tf_equal(got, make_tf(num, den))


def test_fopid_zero_gains_drop_branches():
    p_only = realize_fopid(FOPID(Fraction(3), 0, 0, HALF, HALF), "low", 3)
    assert p_only.num == (3,)
    assert p_only.den == (1,)
    pi = realize_fopid(FOPID(Fraction(1), Fraction(2), 0, HALF, None), "low", 2)
    integ = realize_differintegrator(Differintegrator(HALF), 2)
    want = make_tf(
        polys.add(polys.scale(integ.num, 2), integ.den), integ.den
    )
    assert tf_equal(pi, want)


def test_fopid_symbolic_gains_specialize():
    sym = realize_fopid(FOPID(None, None, None, HALF, HALF), "low", 2)
    assert sym.ring == "symbolic"
    spec = {"Kp": Fraction(2), "Ki": HALF, "Kd": Fraction(1, 3)}
    numeric = realize_fopid(FOPID(spec["Kp"], spec["Ki"], spec["Kd"], HALF, HALF), "low", 2)
    assert tf_equal(sym.substitute(spec), numeric)


def test_fopid_orders_may_exceed_one():
    # integro-differential orders live in (0, 2), wider than the plain
    # differintegrator's (0, 1]
    spec = FOPID(Fraction(1), Fraction(1), Fraction(1), Fraction(3, 2), Fraction(6, 5))
    got = realize_fopid(spec, "low", 2)
    assert got.ring == "rational"
    with pytest.raises(ValidationError):
        FOPID(Fraction(1), Fraction(1), Fraction(1), Fraction(5, 2), Fraction(1))
    with pytest.raises(ValidationError):
        FOPID(Fraction(-1), Fraction(1), Fraction(1), Fraction(1), Fraction(1))


def test_fopd_bracket_numeric_fractional():
    spec = FOPDBracket(Fraction(2), Fraction(3), Fraction(6, 5))
    tf = realize_fopd_bracket(spec, 3)
    assert tf.ring == "rational"
    assert tf.gain.label == "Kp^mu"
    assert tf.gain.value == pytest.approx(2.0**1.2)
    # integer part of mu raises the numerator degree above [3/3]
    assert tf.num_degree == 4
    assert tf.den_degree == 3
    # value at s = 0 is Kp^mu: the rational part contributes exactly 1
    assert Fraction(tf.num[0], tf.den[0]) == 1


def test_fopd_bracket_integer_power_is_polynomial():
    tf = realize_fopd_bracket(FOPDBracket(Fraction(2), Fraction(3), Fraction(1)), 4)
    assert tf.gain is None
    assert tf.num == (2, 3)
    assert tf.den == (1,)


def test_fopd_bracket_symbolic_homogenizes():
    sym = realize_fopd_bracket(FOPDBracket(None, None, None), 2)
    assert sym.ring == "symbolic"
    mu = ParamPoly.var("mu")
    kp = ParamPoly.var("Kp")
    kd = ParamPoly.var("Kd")
    base = [
        ParamPoly.constant(12),
        6 * mu + 12,
        mu**2 + 3 * mu + 2,
    ]
    want_num = [c * kd**j * kp ** (2 - j) for j, c in enumerate(base)]
    want_den = [
        c.substitute({"mu": -mu}) * kd**j * kp ** (2 - j) for j, c in enumerate(base)
    ]
    # [2/2] of (1+t)^mu over the mirrored denominator, homogenized in Kp, Kd
    assert tf_equal(sym, make_tf(want_num, want_den))
    assert sym.gain.label == "Kp^mu"
    assert sym.gain.value is None


def test_fopd_bracket_symbolic_specializes_to_numeric():
    sym = realize_fopd_bracket(FOPDBracket(None, None, HALF), 3)
    numeric = realize_fopd_bracket(FOPDBracket(Fraction(2), Fraction(3), HALF), 3)
    assert tf_equal(sym.substitute({"Kp": 2, "Kd": 3}), numeric)


def test_fopd_bracket_validation():
    with pytest.raises(ValidationError):
        FOPDBracket(Fraction(0), Fraction(1), Fraction(1))
    with pytest.raises(ValidationError):
        FOPDBracket(Fraction(1), Fraction(-1), Fraction(1))
    with pytest.raises(ValidationError):
        FOPDBracket(Fraction(1), Fraction(1), Fraction(2))


def test_leadlag_numeric_realization():
    spec = LeadLag(Fraction(2), HALF, Fraction(1, 4), HALF)
    tf = realize_leadlag(spec, 2)
    assert tf.ring == "rational"
    assert tf.gain.label == "Kc*x^alpha"
    assert tf.gain.value == pytest.approx(2.0 * 0.25**0.5)
    # kernel equals 1 at w = 0, so the rational part is 1 at s = 0
    assert Fraction(tf.num[0], tf.den[0]) == 1


def test_leadlag_kernel_scaling_in_lam():
    # changing lam only rescales s: coefficients pick up lam^j
    a = realize_leadlag(LeadLag(Fraction(1), Fraction(1), Fraction(1, 4), HALF), 2)
    b = realize_leadlag(LeadLag(Fraction(1), Fraction(3), Fraction(1, 4), HALF), 2)
    want = make_tf(
        tuple(c * Fraction(3) ** j for j, c in enumerate(a.num)),
        tuple(c * Fraction(3) ** j for j, c in enumerate(a.den)),
    )
    assert tf_equal(b, want)


def test_leadlag_degenerate_cases_flatten():
    flat_alpha = realize_leadlag(LeadLag(Fraction(5), Fraction(2), HALF, Fraction(0)), 3)
    assert flat_alpha.num == (5,)
    assert flat_alpha.den == (1,)
    flat_x = realize_leadlag(LeadLag(Fraction(5), Fraction(2), Fraction(1), HALF), 3)
    assert flat_x.num == (5,)
    assert flat_x.den == (1,)


def test_leadlag_symbolic_specializes_to_numeric():
    sym = realize_leadlag(LeadLag(None, None, None, None), 2)
    assert sym.ring == "symbolic"
    assert sym.gain.value is None
    values = {"lam": HALF, "x": Fraction(1, 4), "alpha": HALF}
    numeric = realize_leadlag(LeadLag(Fraction(2), HALF, Fraction(1, 4), HALF), 2)
    assert tf_equal(sym.substitute(values), numeric)


def test_leadlag_validation():
    with pytest.raises(ValidationError):
        LeadLag(Fraction(0), Fraction(1), HALF, HALF)
    with pytest.raises(ValidationError):
        LeadLag(Fraction(1), Fraction(0), HALF, HALF)
    with pytest.raises(ValidationError):
        LeadLag(Fraction(1), Fraction(1), Fraction(2), HALF)
    with pytest.raises(ValidationError):
        LeadLag(Fraction(1), Fraction(1), HALF, Fraction(3, 2))


def test_float_parameters_are_read_as_decimals():
    # 0.5 means exactly 1/2, not the nearest binary double
    spec = Differintegrator(0.5)
    assert spec.lam == HALF
    tf = realize_differintegrator(spec, 3)
    assert tf.num == (7, 56, 112, 64)


def test_random_cross_paths_symbolic_vs_numeric():
    rng = random.Random(5)
    sym_low = symbolic_differintegrator("low", 3)
    sym_high = symbolic_differintegrator("high", 3)
    for _ in range(20):
        lam = Fraction(rng.randint(1, 9), 10)
        low = realize_differintegrator(Differintegrator(lam), 3)
        high = realize_differintegrator(Differintegrator(lam, freq_range="high"), 3)
        assert tf_equal(sym_low.substitute({"lam": lam}), low)
        assert tf_equal(sym_high.substitute({"lam": lam}), high)
