"""Substrate permittivity along the imaginary frequency axis."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Tuple

import numpy as np
from scipy.interpolate import PchipInterpolator

from ._validation import check_integer, check_positive
from .exceptions import PermittivityTableError
from .kinematics import CONSTANTS, Scenario, matsubara_zeta


class _IdealMetalMarker:
    """Stands in for an infinite permittivity; never a float."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "IDEAL_METAL"

    def __reduce__(self):
        return (_IdealMetalMarker, ())


IDEAL_METAL = _IdealMetalMarker()


class SubstrateModel:
    """Base class.  ``epsilon(xi)`` takes an angular frequency in rad/s."""

    name = "substrate"

    def epsilon(self, xi):
        raise NotImplementedError

    @property
    def static(self):
        return self.epsilon(0.0)


class Vacuum(SubstrateModel):
    name = "vacuum"

    def epsilon(self, xi):
        return 1.0

    def __eq__(self, other):
        return isinstance(other, Vacuum)

    def __hash__(self):
        return hash(Vacuum)

    def __repr__(self):
        return "Vacuum()"


class IdealMetal(SubstrateModel):
    name = "ideal-metal"

    def epsilon(self, xi):
        return IDEAL_METAL

    def __eq__(self, other):
        return isinstance(other, IdealMetal)

    def __hash__(self):
        return hash(IdealMetal)

    def __repr__(self):
        return "IdealMetal()"


@dataclass(frozen=True)
class OscillatorModel(SubstrateModel):
    """Sum of undamped oscillators, ``1 + sum C_j w_j^2 / (w_j^2 + xi^2)``.

    ``terms`` holds ``(C_j, omega_j)`` pairs with omega in rad/s.
    """

    terms: Tuple[Tuple[float, float], ...]
    name: str = "oscillator"

    def __post_init__(self):
        terms = tuple((check_positive(c, "oscillator strength"),
                       check_positive(w, "oscillator frequency")) for c, w in self.terms)
        if not terms:
            raise ValueError("OscillatorModel needs at least one term")
        object.__setattr__(self, "terms", terms)

    def epsilon(self, xi):
        xi2 = xi * xi
        return 1.0 + sum(c * w * w / (w * w + xi2) for c, w in self.terms)

    @property
    def static(self):
        return 1.0 + sum(c for c, _ in self.terms)

    @classmethod
    def sio2(cls):
        """Two-oscillator fused silica: one ionic (IR) and one electronic (UV) step.

        The IR strength is set so that the static value is exactly 3.81.
        """
        return cls(((SIO2_C_IR, SIO2_OMEGA_IR), (SIO2_C_UV, SIO2_OMEGA_UV)), name="sio2")


SIO2_STATIC = 3.81
SIO2_C_UV = 1.098
SIO2_OMEGA_UV = 2.033e16
SIO2_C_IR = SIO2_STATIC - 1.0 - SIO2_C_UV
SIO2_OMEGA_IR = 1.88e14


class TabulatedPermittivity(SubstrateModel):
    """Permittivity given at photon energies ``hbar xi`` (eV).

    Interpolated with a monotone cubic in ``log(xi)``; values outside the
    table are clamped to the end points.
    """

    name = "table"

    def __init__(self, energies_ev, epsilons, source=None):
        energies = np.asarray(energies_ev, dtype=float)
        eps = np.asarray(epsilons, dtype=float)
        if energies.ndim != 1 or energies.shape != eps.shape:
            raise PermittivityTableError("energies and permittivities must be 1-D and equal length")
        if energies.size < 2:
            raise PermittivityTableError("at least two records are required", path=source)
        _validate_rows(energies, eps, source, lines=None)
        self.energies = energies
        self.epsilons = eps
        self.source = source
        self._interp = PchipInterpolator(np.log(energies), eps)

    def epsilon(self, xi):
        energy = CONSTANTS.hbar * xi / CONSTANTS.electronvolt
        if energy <= self.energies[0]:
            return float(self.epsilons[0])
        if energy >= self.energies[-1]:
            return float(self.epsilons[-1])
        return float(self._interp(math.log(energy)))

    def __repr__(self):
        return f"TabulatedPermittivity({self.energies.size} rows, source={self.source!r})"


def _validate_rows(energies, eps, source, lines):
    def where(i):
        return lines[i] if lines is not None else i + 1

    for i in range(energies.size):
        if not (math.isfinite(energies[i]) and math.isfinite(eps[i])):
            raise PermittivityTableError("non-finite value", where(i), source)
        if energies[i] <= 0:
            raise PermittivityTableError("photon energy must be > 0", where(i), source)
        if eps[i] < 1.0:
            raise PermittivityTableError(f"permittivity {eps[i]} < 1", where(i), source)
        if i and energies[i] <= energies[i - 1]:
            raise PermittivityTableError("photon energies must be strictly increasing",
                                         where(i), source)
        if i and eps[i] > eps[i - 1]:
            raise PermittivityTableError("permittivity must not increase with energy",
                                         where(i), source)


def load_permittivity_table(path):
    """Read a two-column ``energy_eV epsilon`` text file.

    ``#`` starts a comment, blank lines are skipped, at least two records are
    required.  Raises ``OSError`` on I/O problems and
    :class:`PermittivityTableError` (with the line number) otherwise.
    """
    energies, eps, lines = [], [], []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            text = raw.split("#", 1)[0].strip()
            if not text:
                continue
            fields = text.split()
            if len(fields) != 2:
                raise PermittivityTableError(f"expected 2 fields, found {len(fields)}",
                                             lineno, path)
            try:
                e, v = float(fields[0]), float(fields[1])
            except ValueError:
                raise PermittivityTableError(f"cannot parse {text!r}", lineno, path) from None
            energies.append(e)
            eps.append(v)
            lines.append(lineno)
    if len(energies) < 2:
        raise PermittivityTableError("at least two records are required", path=path)
    energies, eps = np.array(energies), np.array(eps)
    _validate_rows(energies, eps, path, lines)
    return TabulatedPermittivity(energies, eps, source=str(path))


def write_permittivity_table(model: SubstrateModel, path, energies_ev):
    """Sample ``model`` at the given photon energies and write a table file."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"# hbar*xi [eV]  epsilon(i xi)   sampled from {model.name}\n")
        for e in energies_ev:
            xi = e * CONSTANTS.electronvolt / CONSTANTS.hbar
            fh.write(f"{e:.17g} {model.epsilon(xi):.17g}\n")


def permittivity(model: SubstrateModel, l, scenario: Scenario):
    """``epsilon(i xi_l)`` with ``xi_l = zeta_l c / 2a``, or ``IDEAL_METAL``."""
    l = check_integer(l, "l")
    zeta = matsubara_zeta(l, scenario)
    xi = zeta * CONSTANTS.speed_of_light / (2.0 * scenario.separation_a)
    return model.epsilon(xi)


def static_permittivity(model: SubstrateModel):
    if isinstance(model, IdealMetal):
        raise ValueError("the ideal metal has no finite static permittivity")
    return model.static


def substrate_from_name(name: str) -> SubstrateModel:
    """Resolve ``sio2``, ``vacuum``, ``ideal-metal`` or ``table:PATH``."""
    if name == "sio2":
        return OscillatorModel.sio2()
    if name == "vacuum":
        return Vacuum()
    if name in ("ideal-metal", "ideal_metal"):
        return IdealMetal()
    if name.startswith("table:"):
        return load_permittivity_table(name[len("table:"):])
    raise ValueError(f"unknown substrate {name!r}")
