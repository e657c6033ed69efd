import math

import pytest

from cpgraphene.crossover import CrossoverQuery, deviation, find_crossover
from cpgraphene.exceptions import NoStraddleError
from cpgraphene.kinematics import GrapheneParams, Scenario
from cpgraphene.materials import IdealMetal, OscillatorModel

SIO2 = OscillatorModel.sio2()
TEMPLATE = Scenario.from_um(6.0)


def test_query_validation():
    with pytest.raises(ValueError):
        CrossoverQuery("nonsense", 0.01, (1e-6, 1e-5))
    for t in (0.0, 1.0, -0.1):
        with pytest.raises(ValueError):
            CrossoverQuery("delta-vs-ideal", t, (1e-6, 1e-5))
    with pytest.raises(ValueError):
        CrossoverQuery("delta-vs-ideal", 0.01, (1e-5, 1e-6))


def test_crossing_is_accurate():
    g = GrapheneParams(0.2, 0.0)
    q = CrossoverQuery("delta-vs-ideal", 0.01, (1e-6, 1e-4))
    a = find_crossover(q, TEMPLATE, g, SIO2)
    lo = deviation(q.quantity, TEMPLATE.with_separation(a / 1.001), g, SIO2)
    hi = deviation(q.quantity, TEMPLATE.with_separation(a * 1.001), g, SIO2)
    assert lo > 0.01 > hi


def test_l0_vs_full_crossing():
    q = CrossoverQuery("l0-vs-full", 0.01, (3e-6, 1e-5))
    a = find_crossover(q, TEMPLATE, GrapheneParams(0.2, 0.1), SIO2)
    assert 4.5e-6 <= a <= 7e-6


def test_no_straddle_sides():
    q = CrossoverQuery("delta-vs-ideal", 0.01, (5.6e-6, 1e-4))
    with pytest.raises(NoStraddleError) as info:
        find_crossover(q, TEMPLATE, GrapheneParams(0.2, 0.1), SIO2)
    assert info.value.side == "below"
    with pytest.raises(NoStraddleError) as info:
        find_crossover(q, TEMPLATE, None, SIO2)
    assert info.value.side == "above"
    lo, hi = info.value.values
    assert lo == pytest.approx(1 - 2.81 / 4.81, rel=1e-8)


def test_ideal_metal_is_always_below():
    q = CrossoverQuery("delta-vs-ideal", 0.001, (1e-6, 1e-3))
    with pytest.raises(NoStraddleError) as info:
        find_crossover(q, TEMPLATE, GrapheneParams(0.3, 0.0), IdealMetal())
    assert info.value.side == "below"


def test_asym_needs_graphene():
    with pytest.raises(ValueError):
        deviation("asym-vs-numeric", TEMPLATE, None, SIO2)
