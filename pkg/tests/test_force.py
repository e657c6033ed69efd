import math

import numpy as np
import pytest

from cpgraphene.exceptions import TruncationError
from cpgraphene.force import (
    DEFAULT_CONFIG,
    NumericsConfig,
    asymptotic_factor,
    delta_vs_ideal,
    force_asymptotic,
    force_full,
    force_ideal_metal_classical,
    force_l0,
    force_unit,
    l0_vs_full,
    ratio_to_asymptotic,
)
from cpgraphene.kinematics import CONSTANTS, GrapheneParams, Particle, Scenario
from cpgraphene.materials import IdealMetal, OscillatorModel, Vacuum

SIO2 = OscillatorModel.sio2()
BARE_R = 2.81 / 4.81


def test_numerics_config_validation():
    with pytest.raises(ValueError):
        NumericsConfig(rel_tol=0.0)
    with pytest.raises(ValueError):
        NumericsConfig(max_l=0)
    tight = DEFAULT_CONFIG.tightened(10)
    assert tight.rel_tol == pytest.approx(1e-9)


def test_classical_examples():
    s = Scenario.from_um(10.0)
    kT = CONSTANTS.boltzmann_constant * 300
    assert force_ideal_metal_classical(s) == pytest.approx(-0.75 * kT * 1e-6 / 1e-20, rel=1e-14)
    assert force_ideal_metal_classical(s) == pytest.approx(-3.106e-7, rel=1e-3)
    assert force_ideal_metal_classical(Scenario.from_um(20.0)) == pytest.approx(
        force_ideal_metal_classical(s) / 16, rel=1e-14)
    assert force_ideal_metal_classical(Scenario.from_um(10.0, 600.0)) == pytest.approx(
        2 * force_ideal_metal_classical(s), rel=1e-14)


@pytest.mark.parametrize("a_um,temp", [(1.0, 300.0), (6.0, 77.0), (250.0, 1000.0)])
def test_l0_ideal_metal_is_classical(a_um, temp):
    s = Scenario.from_um(a_um, temp, 2.5)
    res = force_l0(s, None, IdealMetal())
    assert res.total == pytest.approx(force_ideal_metal_classical(s), rel=1e-10)
    assert res.mode == "l0-only"


def test_l0_bare_sio2_closed_form():
    s = Scenario.from_um(7.0)
    res = force_l0(s, None, SIO2)
    assert res.total == pytest.approx(BARE_R * force_ideal_metal_classical(s), rel=1e-8)
    assert force_ideal_metal_classical(s) / res.total == pytest.approx(4.81 / 2.81, rel=1e-8)
    assert 4.81 / 2.81 == pytest.approx(1.7117, abs=1e-4)


def test_ideal_metal_full_at_30um():
    s = Scenario.from_um(30.0)
    res = force_full(s, None, IdealMetal())
    classical = force_ideal_metal_classical(s)
    # the l >= 1 tail is bounded by a multiple of e^{-zeta_1}, zeta_1 ~ 49
    assert abs(res.total / classical - 1) < 1e-3
    assert abs(res.total / classical - 1) < 10 * 49 ** 3 * math.exp(-49) + 1e-10


def test_bookkeeping_and_sign():
    g = GrapheneParams(0.2, 0.1)
    for a in (3.0, 6.0, 15.0):
        res = force_full(Scenario.from_um(a), g, SIO2)
        assert res.total == res.l0_term + res.tail_l_ge_1
        assert res.total < 0 and res.l0_term < 0
        assert res.l_max_used >= 1
        assert res.quad_error_estimate < 1e-6 * abs(res.total)


def test_tail_decreases_with_separation():
    g = GrapheneParams(0.3, 0.25)
    tails = [abs(force_full(Scenario.from_um(a), g, SIO2).tail_l_ge_1) for a in (3, 5, 8, 12)]
    assert all(t1 > t2 for t1, t2 in zip(tails, tails[1:]))


def test_near_ideal_metal_coating():
    s = Scenario.from_um(6.0)
    res = force_l0(s, GrapheneParams(0.1, 0.25), SIO2)
    assert abs(res.total / force_ideal_metal_classical(s) - 1) < 0.03


def test_matsubara_cutoff_doubling():
    s = Scenario.from_um(10.0)
    g = GrapheneParams(0.2, 0.05)
    base = force_full(s, g, SIO2).total
    loose = force_full(s, g, SIO2, NumericsConfig(matsubara_rel_cutoff=2e-10)).total
    assert abs(loose - base) < 1e-8 * abs(base)


@pytest.mark.parametrize("func", [force_l0, force_full])
@pytest.mark.parametrize("a_um,delta,mu", [(6.0, 0.2, 0.05), (4.0, 0.3, 0.25), (20.0, 0.0, 0.0)])
def test_tightening_tolerances(func, a_um, delta, mu):
    s = Scenario.from_um(a_um)
    g = GrapheneParams(delta, mu)
    base = func(s, g, SIO2)
    tight = func(s, g, SIO2, DEFAULT_CONFIG.tightened(10))
    assert abs(tight.total - base.total) < DEFAULT_CONFIG.rel_tol * abs(base.total)


def test_force_ordering_grid():
    for a in (5.6, 20.0):
        s = Scenario.from_um(a)
        bare = abs(force_l0(s, None, SIO2).total)
        ideal = abs(force_ideal_metal_classical(s))
        for delta in (0.0, 0.15, 0.3):
            for mu in (0.0, 0.125, 0.25):
                coated = abs(force_l0(s, GrapheneParams(delta, mu), SIO2).total)
                assert bare <= coated <= ideal


def test_coating_monotonicity():
    s = Scenario.from_um(6.0)
    bare = force_l0(s, None, SIO2).reduced
    mus = (0.0, 0.05, 0.1, 0.15, 0.2, 0.25)
    deltas = np.linspace(0.0, 0.5, 11)
    table = np.array([[force_l0(s, GrapheneParams(d, mu), SIO2).reduced / bare for d in deltas]
                      for mu in mus])
    slack = 1e-9
    assert np.all(np.diff(table, axis=1) <= slack)
    assert np.all(np.diff(table, axis=0) >= -slack)


def test_asymptotic_examples():
    s = Scenario.from_um(5.6)
    g = GrapheneParams(0.0, 0.0)
    assert asymptotic_factor(s, g) == pytest.approx(0.99925, abs=2e-5)
    assert force_asymptotic(s, g) == pytest.approx(
        force_ideal_metal_classical(s) * asymptotic_factor(s, g), rel=1e-15)
    # substrate independent by construction
    assert force_asymptotic(s, GrapheneParams(0.2, 0.1)) < 0


def test_ratio_to_asymptotic_within_one_percent():
    g = GrapheneParams(0.2, 0.075)
    for a in np.geomspace(5.6, 200.0, 8):
        assert 0.99 <= ratio_to_asymptotic(Scenario.from_um(a), g, SIO2) <= 1.01


@pytest.mark.parametrize("delta,mu", [(0.15, 0.0), (0.2, 0.025), (0.3, 0.1)])
def test_asymptotic_convergence(delta, mu):
    g = GrapheneParams(delta, mu)
    dev = [abs(ratio_to_asymptotic(Scenario.from_um(a), g, SIO2) - 1)
           for a in (10.0, 20.0, 40.0, 80.0, 160.0)]
    assert all(d1 >= d2 for d1, d2 in zip(dev, dev[1:]))
    assert dev[-1] < 1e-4


@pytest.mark.parametrize("mu", [0.025, 0.05, 0.075])
def test_coated_vs_freestanding(mu):
    g = GrapheneParams(0.2, mu)
    for a in np.geomspace(5.6, 40.0, 5):
        s = Scenario.from_um(a)
        coated = ratio_to_asymptotic(s, g, SIO2)
        free = ratio_to_asymptotic(s, g, Vacuum())
        assert coated >= free - 1e-3


def test_delta_vs_ideal_examples():
    s = Scenario.from_um(8.0)
    assert delta_vs_ideal(s, GrapheneParams(0.2, 0.1), IdealMetal()) == 0.0
    for a in (5.6, 30.0, 300.0):
        assert delta_vs_ideal(Scenario.from_um(a), None, SIO2) == pytest.approx(BARE_R - 1, rel=1e-8)
        assert abs(delta_vs_ideal(Scenario.from_um(a), GrapheneParams(0.2, 0.1), SIO2)) < 0.01


def test_l0_vs_full_small_at_large_separation():
    assert l0_vs_full(Scenario.from_um(10.0), GrapheneParams(0.2, 0.1), SIO2) < 1e-3


def test_ratios_independent_of_alpha0():
    g = GrapheneParams(0.2, 0.05)
    r1 = delta_vs_ideal(Scenario.from_um(6.0, 300.0, 1.0), g, SIO2)
    r2 = delta_vs_ideal(Scenario.from_um(6.0, 300.0, 37.0), g, SIO2)
    assert r1 == r2


def test_constant_dynamic_table_matches_default():
    g = GrapheneParams(0.2, 0.05)
    flat = Particle(1.0, ((1e-3, 1.0), (1e3, 1.0)))
    s1 = Scenario.from_um(4.0)
    s2 = Scenario(4e-6, 300.0, flat)
    assert force_full(s2, g, SIO2).total == pytest.approx(force_full(s1, g, SIO2).total, rel=1e-14)
    falling = Particle(1.0, ((1e-3, 1.0), (0.1, 0.9), (1.0, 0.3)))
    res = force_full(Scenario(4e-6, 300.0, falling), g, SIO2)
    assert abs(res.tail_l_ge_1) < abs(force_full(s1, g, SIO2).tail_l_ge_1)


def test_truncation_error():
    with pytest.raises(TruncationError):
        force_full(Scenario.from_um(0.2), GrapheneParams(0.1, 0.1), SIO2, NumericsConfig(max_l=2))


def test_force_unit():
    s = Scenario.from_um(2.0, 300.0, 3.0)
    assert force_unit(s) == pytest.approx(CONSTANTS.boltzmann_constant * 300 * 3e-6 / 16e-24, rel=1e-14)
