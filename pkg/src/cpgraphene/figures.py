"""Curve presets for the published figures.

Each preset fixes the temperature (300 K), the SiO2 substrate, the curve
parameters and the abscissa range.  ``figure_table`` evaluates every curve
on a common grid and returns plain columns ready for CSV output.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np

from .force import DEFAULT_CONFIG, NumericsConfig, delta_vs_ideal, force_l0, ratio_to_asymptotic
from .kinematics import GrapheneParams, Scenario
from .materials import OscillatorModel, Vacuum

FIG1_DELTA_RANGE = (0.0, 0.5)
FIG1_SEPARATION_UM = 6.0


@dataclass(frozen=True)
class Curve:
    label: str
    delta: float
    mu: float
    freestanding: bool = False


@dataclass(frozen=True)
class FigurePreset:
    """``kind`` is ``ratio-to-bare`` (abscissa: gap in eV), ``delta-f`` or
    ``ratio-to-asymptotic`` (abscissa: separation in um)."""

    name: str
    kind: str
    x_range: Tuple[float, float]
    curves: Tuple[Curve, ...]
    log_x: bool = True
    description: str = ""


def _mu_curves(delta, mus, freestanding=False):
    out = [Curve(f"mu={mu:g}", delta, mu) for mu in mus]
    if freestanding:
        out += [Curve(f"mu={mu:g} freestanding", delta, mu, True) for mu in mus]
    return tuple(out)


def _fig1(name, mus):
    curves = tuple(Curve(f"mu={mu:g}", None, mu) for mu in mus)
    return FigurePreset(name, "ratio-to-bare", FIG1_DELTA_RANGE, curves, log_x=False,
                        description="F_sub,0/F_SiO2 at a = 6 um versus the gap")


PRESETS: Dict[str, FigurePreset] = {
    "fig1a": _fig1("fig1a", (0.0, 0.05, 0.1, 0.15)),
    "fig1b": _fig1("fig1b", (0.15, 0.2, 0.25)),
    "fig2": FigurePreset("fig2", "delta-f", (5.6, 60.0),
                         _mu_curves(0.2, (0.0, 0.025, 0.05, 0.075, 0.1)),
                         description="delta F versus separation, gap 0.2 eV"),
    "fig3a": FigurePreset("fig3a", "delta-f", (5.6, 60.0),
                          _mu_curves(0.3, (0.0, 0.025, 0.05, 0.075, 0.1)),
                          description="delta F versus separation, gap 0.3 eV"),
    "fig3b": FigurePreset("fig3b", "delta-f", (60.0, 200.0),
                          _mu_curves(0.3, (0.0, 0.025, 0.05, 0.075)),
                          description="delta F versus separation, gap 0.3 eV"),
    "fig4": FigurePreset("fig4", "ratio-to-asymptotic", (5.6, 60.0),
                         (Curve("delta=0.15", 0.15, 0.0), Curve("delta=0.2", 0.2, 0.0),
                          Curve("delta=0.15 freestanding", 0.15, 0.0, True),
                          Curve("delta=0.2 freestanding", 0.2, 0.0, True)),
                         description="F_sub,0/F_as at zero chemical potential"),
    "fig5": FigurePreset("fig5", "ratio-to-asymptotic", (5.6, 60.0),
                         _mu_curves(0.2, (0.025, 0.05, 0.075), freestanding=True),
                         description="F_sub,0/F_as, gap 0.2 eV"),
    "fig6a": FigurePreset("fig6a", "ratio-to-asymptotic", (5.6, 100.0),
                          _mu_curves(0.3, (0.0, 0.025, 0.05, 0.075, 0.1)),
                          description="F_sub,0/F_as, gap 0.3 eV"),
    "fig6b": FigurePreset("fig6b", "ratio-to-asymptotic", (5.6, 30.0),
                          _mu_curves(0.3, (0.15, 0.2, 0.25)),
                          description="F_sub,0/F_as, gap 0.3 eV"),
}


def grid(preset: FigurePreset, points):
    lo, hi = preset.x_range
    if preset.log_x:
        return np.geomspace(lo, hi, points)
    return np.linspace(lo, hi, points)


def _value(preset, curve, x, temp_k, config):
    substrate = Vacuum() if curve.freestanding else OscillatorModel.sio2()
    if preset.kind == "ratio-to-bare":
        scenario = Scenario.from_um(FIG1_SEPARATION_UM, temp_k)
        coated = force_l0(scenario, GrapheneParams(x, curve.mu), substrate, config)
        bare = force_l0(scenario, None, substrate, config)
        return coated.reduced / bare.reduced
    scenario = Scenario.from_um(x, temp_k)
    graphene = GrapheneParams(curve.delta, curve.mu)
    if preset.kind == "delta-f":
        return delta_vs_ideal(scenario, graphene, substrate, config)
    return ratio_to_asymptotic(scenario, graphene, substrate, config)


def figure_table(name, points=40, temp_k=300.0,
                 config: NumericsConfig = DEFAULT_CONFIG) -> Tuple[List[str], np.ndarray]:
    """Column names and an array of shape ``(points, 1 + n_curves)``.

    For the gap figures an extra constant column holds the ideal-metal to
    bare-substrate ratio (the dashed line).
    """
    if name not in PRESETS:
        raise KeyError(f"unknown figure {name!r}; choose from {sorted(PRESETS)}")
    preset = PRESETS[name]
    xs = grid(preset, points)
    x_name = "delta_ev" if preset.kind == "ratio-to-bare" else "a_um"
    columns = [x_name] + [c.label for c in preset.curves]
    data = np.empty((points, len(columns)))
    data[:, 0] = xs
    for j, curve in enumerate(preset.curves, start=1):
        data[:, j] = [_value(preset, curve, float(x), temp_k, config) for x in xs]
    if preset.kind == "ratio-to-bare":
        scenario = Scenario.from_um(FIG1_SEPARATION_UM, temp_k)
        bare = force_l0(scenario, None, OscillatorModel.sio2(), config).reduced
        columns.append("ideal-metal")
        data = np.column_stack([data, np.full(points, -0.75 / bare)])
    return columns, data


def preset_names():
    return sorted(PRESETS)


def describe(name) -> Optional[str]:
    preset = PRESETS.get(name)
    return None if preset is None else preset.description
