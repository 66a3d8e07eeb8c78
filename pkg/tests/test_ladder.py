"""Domino ladder synthesis, the negative-admittance cascade trick,
component mapping, and netlist export."""

import random
from fractions import Fraction

import pytest

from fracrat import (
    DegenerateMathError,
    LadderElement,
    LadderNetwork,
    ValidationError,
    export_netlist,
    factor_negative_admittance,
    ladder_to_tf,
    make_tf,
    map_elements,
    synthesize_ladder,
    tf_equal,
)
from fracrat import polys


def _ladder(*pairs) -> LadderNetwork:
    elements = []
    for i, (g, h) in enumerate(pairs):
        role = "Z" if i % 2 == 0 else "Y"
        elements.append(LadderElement(role, Fraction(g), Fraction(h), i + 1))
    return LadderNetwork(tuple(elements))


def test_half_integrator_ladder_elements():
    tf = make_tf((7, 56, 112, 64), (1, 24, 80, 64))
    net = synthesize_ladder(tf)
    got = [(el.role, el.g, el.h) for el in net.elements]
    assert got == [
        ("Z", Fraction(1), Fraction(0)),
        ("Y", Fraction(1, 2), Fraction(2)),
        ("Z", Fraction(-4), Fraction(-8)),
        ("Y", Fraction(1), Fraction(2)),
    ]


def test_half_integrator_high_range_ladder_elements():
    tf = make_tf((64, 80, 24, 1), (64, 112, 56, 7))
    net = synthesize_ladder(tf)
    got = [(el.role, el.g, el.h) for el in net.elements]
    assert got == [
        ("Z", Fraction(1, 7), Fraction(0)),
        ("Y", Fraction(7, 4), Fraction(7, 16)),
        ("Z", Fraction(-16, 9), Fraction(-2, 3)),
        ("Y", Fraction(63, 4), Fraction(189, 16)),
    ]


def test_ladder_round_trip_on_random_networks():
    rng = random.Random(97)
    for _ in range(40):
        pairs = []
        for _ in range(rng.randint(1, 5)):
            g = Fraction(rng.randint(-6, 6), rng.randint(1, 3))
            h = Fraction(rng.randint(1, 6), rng.randint(1, 3))
            pairs.append((g, h))
        net = _ladder(*pairs)
        back = synthesize_ladder(ladder_to_tf(net))
        assert [(e.g, e.h) for e in back.elements] == [
            (e.g, e.h) for e in net.elements
        ]


def test_non_affine_quotient_is_rejected():
    with pytest.raises(DegenerateMathError):
        synthesize_ladder(make_tf((1, 0, 1), (1,)))


def test_network_validates_roles_and_positions():
    with pytest.raises(ValidationError):
        LadderNetwork((LadderElement("Y", Fraction(1), Fraction(0), 1),))
    with pytest.raises(ValidationError):
        LadderNetwork((LadderElement("Z", Fraction(1), Fraction(0), 2),))
    with pytest.raises(ValidationError):
        ladder_to_tf(LadderNetwork(()))


def test_element_rendering():
    assert str(LadderElement("Y", Fraction(1, 2), Fraction(2), 2)) == "Y2(s) = 2*s + 1/2"
    assert str(LadderElement("Z", Fraction(-4), Fraction(-8), 3)) == "Z3(s) = -8*s - 4"
    assert str(LadderElement("Z", Fraction(1), Fraction(0), 1)) == "Z1(s) = 1"


def test_negative_admittance_cascade_recomposes():
    for g, h in [(Fraction(-2), Fraction(-3)), (Fraction(2), Fraction(-3)), (Fraction(1, 2), Fraction(4))]:
        blocks = factor_negative_admittance(g, h)
        product = make_tf(
            polys.mul(blocks.first.num, blocks.second.num),
            polys.mul(blocks.first.den, blocks.second.den),
        )
        assert tf_equal(product, make_tf((1,), (g, h)))
        assert blocks.unstable == (g * h > 0)


def test_negative_admittance_degenerate_cases():
    flat = factor_negative_admittance(Fraction(3), Fraction(0))
    assert flat.note == "plain resistor"
    assert flat.second.num == (1,) and flat.second.den == (1,)
    assert not flat.unstable
    with pytest.raises(DegenerateMathError):
        factor_negative_admittance(Fraction(0), Fraction(0))


def test_map_elements_on_mixed_network():
    net = _ladder((1, 0), (Fraction(1, 2), 2), (-4, -8), (1, 2))
    parts = map_elements(net)
    assert [(p.role, p.position) for p in parts] == [
        ("Z", 1),
        ("Y", 2),
        ("Z", 3),
        ("Y", 4),
    ]
    z1, y2, z3, y4 = parts
    assert (z1.resistance, z1.inductance, z1.nic_wrapped) == (1, None, False)
    # shunt resistance is the reciprocal of the admittance constant
    assert (y2.resistance, y2.capacitance) == (2, 2)
    assert (z3.resistance, z3.inductance, z3.nic_wrapped) == (4, 8, True)
    assert z3.cascade is None  # the cascade annotation is for shunt rungs
    assert (y4.resistance, y4.capacitance) == (1, 2)


def test_map_elements_annotates_negative_shunt():
    net = _ladder((1, 1), (Fraction(-1, 2), -2))
    parts = map_elements(net)
    y = parts[-1]
    assert y.nic_wrapped
    assert y.cascade is not None
    assert y.cascade.unstable  # g*h > 0 puts the mirror pole in the RHP
    assert tf_equal(
        make_tf(
            polys.mul(y.cascade.first.num, y.cascade.second.num),
            polys.mul(y.cascade.first.den, y.cascade.second.den),
        ),
        make_tf((1,), (Fraction(-1, 2), -2)),
    )


def test_map_elements_splits_mixed_signs_and_skips_zeros():
    net = _ladder((1, -2), (0, 0), (0, 3))
    parts = map_elements(net)
    # rung 1 splits into a positive resistor and a wrapped inductor,
    # rung 2 vanishes, rung 3 keeps only its inductive series part
    assert [(p.role, p.position, p.nic_wrapped) for p in parts] == [
        ("Z", 1, False),
        ("Z", 1, True),
        ("Z", 3, False),
    ]
    assert parts[0].resistance == 1 and parts[0].inductance is None
    assert parts[1].inductance == 2 and parts[1].resistance is None
    assert parts[2].inductance == 3


def test_netlist_single_resistor_golden():
    netlist = export_netlist(map_elements(synthesize_ladder(make_tf((1,), (1,)))))
    assert netlist == "R1 n0 0 1\n* port n0 0\n"


def test_netlist_structure_and_determinism():
    tf = make_tf((7, 56, 112, 64), (1, 24, 80, 64))
    parts = map_elements(synthesize_ladder(tf))
    netlist = export_netlist(parts)
    assert netlist == export_netlist(parts)  # same input, same text
    lines = netlist.splitlines()
    assert "X1 n1 n2 ladder_nic1" in lines
    assert lines.count(".subckt ladder_nic1 p t") == 1
    assert sum(1 for l in lines if l.startswith(".subckt")) == 1
    assert lines[-1] == "* port n0 0"
    # series rungs advance the chain: the shunt pair lands on the new node
    assert any(l.startswith("R3 n2 0") for l in lines)
    assert any(l.startswith("C2 n2 0") for l in lines)
