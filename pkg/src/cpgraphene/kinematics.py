"""Physical constants, input records and the dimensionless variables.

Everything downstream works with the reduced quantities defined here:

* Matsubara frequencies ``zeta_l = 4 pi a kB T l / (hbar c)``,
* ``p_l = sqrt(vF^2 y^2 + (1 - vF^2) zeta_l^2)``,
* gap parameter ``D_l = 2 a Delta / (hbar c p_l)``,
* thermal parameter ``B_l = hbar c p_l / (4 a kB T)``.

User-facing units are eV (gap, chemical potential, photon energies), K,
metres for the separation stored on :class:`Scenario` and cm^3 for the
particle polarizability.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

import numpy as np
import scipy.constants as sc
from scipy.interpolate import PchipInterpolator

from ._validation import (
    check_integer,
    check_nonnegative,
    check_open_unit,
    check_positive,
    check_strictly_increasing,
)

CM3 = 1e-6  # m^3 per cm^3
DEFAULT_VF_RATIO = 1.0 / 300.0


@dataclass(frozen=True)
class PhysicalConstants:
    """CODATA 2018 constants in SI units."""

    boltzmann_constant: float = sc.k
    hbar_c: float = sc.hbar * sc.c
    fine_structure_alpha: float = sc.fine_structure
    electronvolt: float = sc.e
    speed_of_light: float = sc.c
    hbar: float = sc.hbar

    def __post_init__(self):
        for name in ("boltzmann_constant", "hbar_c", "fine_structure_alpha",
                     "electronvolt", "speed_of_light", "hbar"):
            check_positive(getattr(self, name), name)
        if not 7.29e-3 <= self.fine_structure_alpha <= 7.30e-3:
            raise ValueError("fine_structure_alpha must be close to 1/137")


CONSTANTS = PhysicalConstants()


@dataclass(frozen=True)
class GrapheneParams:
    """Energy gap and chemical potential (eV) of the sheet, and v_F / c."""

    delta: float = 0.0
    mu: float = 0.0
    vf_ratio: float = DEFAULT_VF_RATIO

    def __post_init__(self):
        object.__setattr__(self, "delta", check_nonnegative(self.delta, "delta"))
        object.__setattr__(self, "mu", check_nonnegative(self.mu, "mu"))
        object.__setattr__(self, "vf_ratio", check_open_unit(self.vf_ratio, "vf_ratio"))


@dataclass(frozen=True)
class Particle:
    """Polarizable particle.

    Parameters
    ----------
    alpha0 : float
        Static polarizability in cm^3.
    dynamic_table : sequence of (energy_eV, alpha_cm3), optional
        Polarizability along the imaginary frequency axis, energies strictly
        increasing and positive.  The first entry must carry ``alpha0``.
        Values between nodes are interpolated monotonically in log-energy;
        outside the table the end values are used.
    """

    alpha0: float = 1.0
    dynamic_table: Optional[Tuple[Tuple[float, float], ...]] = None
    _interp: Optional[PchipInterpolator] = field(default=None, init=False,
                                                 repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alpha0", check_positive(self.alpha0, "alpha0"))
        if self.dynamic_table is None:
            return
        table = tuple((float(e), float(v)) for e, v in self.dynamic_table)
        if len(table) < 2:
            raise ValueError("dynamic_table needs at least two entries")
        energies = check_strictly_increasing([e for e, _ in table], "dynamic_table energies")
        values = np.array([v for _, v in table])
        if energies[0] <= 0 or np.any(values <= 0):
            raise ValueError("dynamic_table needs positive energies and polarizabilities")
        if abs(values[0] - self.alpha0) > 1e-9 * self.alpha0:
            raise ValueError("first dynamic_table entry must equal alpha0")
        object.__setattr__(self, "dynamic_table", table)
        object.__setattr__(self, "_interp", PchipInterpolator(np.log(energies), values))

    def polarizability(self, energy_ev):
        """Polarizability (cm^3) at imaginary frequency ``energy_ev / hbar``."""
        if self._interp is None:
            return self.alpha0
        lo, hi = self.dynamic_table[0], self.dynamic_table[-1]
        if energy_ev <= lo[0]:
            return lo[1]
        if energy_ev >= hi[0]:
            return hi[1]
        return float(self._interp(math.log(energy_ev)))


@dataclass(frozen=True)
class Scenario:
    """Evaluation point: separation (m), temperature (K) and particle."""

    separation_a: float
    temperature_t: float = 300.0
    particle: Particle = field(default_factory=Particle)

    def __post_init__(self):
        object.__setattr__(self, "separation_a",
                           check_positive(self.separation_a, "separation_a"))
        object.__setattr__(self, "temperature_t",
                           check_positive(self.temperature_t, "temperature_t"))

    @classmethod
    def from_um(cls, a_um, temp_k=300.0, alpha0_cm3=1.0):
        return cls(a_um * 1e-6, temp_k, Particle(alpha0_cm3))

    def with_separation(self, separation_a):
        return Scenario(separation_a, self.temperature_t, self.particle)

    @property
    def kT(self):
        return CONSTANTS.boltzmann_constant * self.temperature_t


@dataclass(frozen=True)
class KinematicFactors:
    zeta_l: float
    y: float
    p_l: float
    d_l: float
    b_l: float


@dataclass(frozen=True)
class ReducedParams:
    """All dimensionless numbers needed for one (scenario, graphene) pair.

    ``zeta1`` is the first Matsubara frequency, ``x = Delta / 2kT``,
    ``m = mu / kT``, ``d_scale * (1/p) = D`` and ``b_scale * p = B``.
    ``log_prefactor`` is ``16 alpha a kT / (vF^2 hbar c)``.
    """

    zeta1: float
    x: float
    m: float
    d_scale: float
    b_scale: float
    vf: float
    fine_alpha: float
    log_prefactor: float
    asymptotic_parameter: float

    @classmethod
    def build(cls, scenario: Scenario, graphene: Optional[GrapheneParams] = None,
              constants: PhysicalConstants = CONSTANTS):
        g = graphene if graphene is not None else GrapheneParams()
        a = scenario.separation_a
        kT = constants.boltzmann_constant * scenario.temperature_t
        hc = constants.hbar_c
        # scale factors first, gap and chemical potential last, so tiny
        # energies never pass through subnormal joules
        ev_over_kt = constants.electronvolt / kT
        akt = a * kT / hc
        return cls(
            zeta1=4.0 * math.pi * akt,
            x=(0.5 * ev_over_kt) * g.delta,
            m=ev_over_kt * g.mu,
            d_scale=(2.0 * a * constants.electronvolt / hc) * g.delta,
            b_scale=1.0 / (4.0 * akt),
            vf=g.vf_ratio,
            fine_alpha=constants.fine_structure_alpha,
            log_prefactor=16.0 * constants.fine_structure_alpha * akt / g.vf_ratio**2,
            asymptotic_parameter=2.0 * akt / g.vf_ratio,
        )

    def zeta(self, l):
        return l * self.zeta1

    def p(self, zeta, y):
        vf2 = self.vf * self.vf
        return math.sqrt(vf2 * y * y + (1.0 - vf2) * zeta * zeta)


def matsubara_zeta(l, scenario: Scenario, constants: PhysicalConstants = CONSTANTS):
    """Dimensionless Matsubara frequency ``4 pi a kB T l / (hbar c)``."""
    l = check_integer(l, "l")
    kT = constants.boltzmann_constant * scenario.temperature_t
    return 4.0 * math.pi * scenario.separation_a * kT * l / constants.hbar_c


def matsubara_energy_ev(zeta, scenario: Scenario, constants: PhysicalConstants = CONSTANTS):
    """Photon energy ``hbar xi`` in eV of the frequency ``xi = zeta c / 2a``."""
    xi = zeta * constants.speed_of_light / (2.0 * scenario.separation_a)
    return constants.hbar * xi / constants.electronvolt


def kinematic_factors(l, y, scenario: Scenario, graphene: GrapheneParams,
                      constants: PhysicalConstants = CONSTANTS) -> KinematicFactors:
    zeta = matsubara_zeta(l, scenario, constants)
    if y < zeta:
        raise ValueError(f"y={y!r} lies below zeta_l={zeta!r}")
    if y <= 0:
        raise ValueError("y must be > 0")
    r = ReducedParams.build(scenario, graphene, constants)
    if l == 0:
        p = graphene.vf_ratio * y
    else:
        p = r.p(zeta, y)
    return KinematicFactors(zeta_l=zeta, y=float(y), p_l=p,
                            d_l=r.d_scale / p if r.d_scale else 0.0,
                            b_l=r.b_scale * p)
