"""Casimir-Polder force between a microparticle and a graphene-coated plate.

The zero-frequency (classical) Lifshitz term, the full Matsubara sum and the
large-separation asymptotics, with the graphene response given by the
polarization tensor of a gapped, doped Dirac sheet at finite temperature.
"""
__version__ = "0.1.0"

from .crossover import CrossoverQuery, find_crossover
from .estimator import CasimirPolderForce
from .exceptions import (
    AsymptoticRegimeWarning,
    CasimirError,
    NoStraddleError,
    PermittivityTableError,
    QuadratureError,
    TruncationError,
)
from .force import (
    DEFAULT_CONFIG,
    ForceResult,
    NumericsConfig,
    delta_vs_ideal,
    force_asymptotic,
    force_full,
    force_ideal_metal_classical,
    force_l0,
    l0_vs_full,
    ratio_to_asymptotic,
)
from .graphene import pi00, pi00_asymptotic, pi_te, psi
from .kinematics import (
    CONSTANTS,
    GrapheneParams,
    Particle,
    PhysicalConstants,
    Scenario,
    kinematic_factors,
    matsubara_zeta,
)
from .materials import (
    IDEAL_METAL,
    IdealMetal,
    OscillatorModel,
    TabulatedPermittivity,
    Vacuum,
    load_permittivity_table,
    permittivity,
    substrate_from_name,
)
from .reflection import ReflectionPair, r_tm_zero, r_tm_zero_approx, reflection_coeffs
